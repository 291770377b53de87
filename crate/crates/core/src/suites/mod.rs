//! Self-checking suites over every construction, model kernel and lattice
//! level. Each check recomputes its property with a direct oracle rather than
//! trusting the witness it is given.

mod constructions;
mod lattice;
mod models;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Report;

pub use constructions::{
    cantor_bernstein_check, construction_checks, diagonal_check, fold_check, lex_order_check,
    pairpairs_check, s2_count_check, tuple_coder_check, union_mov_check, CONSTRUCTION_CHECKS,
    SIZE_CAP,
};
pub use lattice::{join_check, lattice_automorphism_check, level_check};
pub use models::{
    mostowski_check, n23_check, shelah_check, shelah_fixture, transitivity_check, SHELAH_FIXTURES,
};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for the check `name` under `seed`.
pub fn stream(seed: u64, name: &str) -> Rng {
    // FNV-1a keeps the stream stable across builds and platforms.
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    rng(seed ^ h)
}

/// Wraps a fallible check so that errors become failing reports.
pub(crate) fn guard(check: &str, f: impl FnOnce() -> Result<Report, String>) -> Report {
    f().unwrap_or_else(|e| Report::fail(check, json!({ "error": e })))
}

/// Uniform random permutation of `0..n` as an image vector.
pub(crate) fn shuffle(rng: &mut Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
