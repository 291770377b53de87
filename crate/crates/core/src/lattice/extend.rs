use std::sync::OnceLock;

use serde_json::json;

use super::frame::BlockFrame;
use super::level::{ElemId, LatticeLevel, Tower};
use super::LatticeError;
use crate::perm::Perm;
use crate::report::Report;

/// A tower together with its verified levels and tag-labelled frames, built
/// on first use.
#[derive(Debug)]
pub struct LatticeModel {
    tower: Tower,
    levels: Vec<OnceLock<LatticeLevel>>,
    frames: Vec<OnceLock<BlockFrame>>,
}

impl LatticeModel {
    pub fn new(top: usize) -> Result<Self, LatticeError> {
        Self::from_tower(Tower::build(top)?)
    }

    pub fn from_tower(tower: Tower) -> Result<Self, LatticeError> {
        let n = tower.top() + 1;
        Ok(LatticeModel {
            tower,
            levels: (0..n).map(|_| OnceLock::new()).collect(),
            frames: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn top(&self) -> usize {
        self.tower.top()
    }

    pub fn level(&self, n: usize) -> Result<&LatticeLevel, LatticeError> {
        let cell = self
            .levels
            .get(n)
            .ok_or(LatticeError::LevelCap { n, cap: self.top() })?;
        if let Some(l) = cell.get() {
            return Ok(l);
        }
        let l = self.tower.level(n)?;
        Ok(cell.get_or_init(|| l))
    }

    /// The frame of `A_n` with `Q = A_{n-2}`.
    pub fn frame(&self, n: usize) -> Result<&BlockFrame, LatticeError> {
        let cell = self
            .frames
            .get(n)
            .ok_or(LatticeError::LevelCap { n, cap: self.top() })?;
        if let Some(f) = cell.get() {
            return Ok(f);
        }
        let f = BlockFrame::for_level(self.level(n)?)?;
        Ok(cell.get_or_init(|| f))
    }

    /// Level `n` for `a ∈ A_{n+1} ∖ A_n`; `o` has none.
    fn stamp(&self, a: ElemId) -> Option<usize> {
        self.tower.proj0(a).map(|n| n as usize)
    }
}

fn lift(g: &Perm, len: usize) -> Perm {
    let images = (0..g.len())
        .map(|x| g.apply(x))
        .chain(g.len()..len)
        .collect();
    Perm::from_images(images).expect("identity beyond the prefix")
}

/// Extends an automorphism of `A_m` to `A_N` by repeated `psi_extend` on the
/// frames of `A_{m+2}, A_{m+4}, …, A_N`.
pub fn extend_to_level(
    model: &LatticeModel,
    m: usize,
    g: &Perm,
    n: usize,
) -> Result<Perm, LatticeError> {
    if n > model.top() {
        return Err(LatticeError::LevelCap {
            n,
            cap: model.top(),
        });
    }
    if n < m || !(n - m).is_multiple_of(2) {
        return Err(LatticeError::Parity { m, n });
    }
    let base = model.level(m)?;
    if g.len() != base.len() || !base.poset.is_automorphism(g) {
        return Err(LatticeError::NotAnAutomorphism(
            "g is not an automorphism of the base level",
        ));
    }
    let mut h = g.clone();
    for l in (m + 2..=n).step_by(2) {
        let frame = model.frame(l)?;
        h = frame.psi_extend(&lift(&h, frame.len()))?;
    }
    Ok(h)
}

/// For every `a ∈ A_N ∖ A_k` and every other `b ∈ A_N` whose levels leave room
/// for the two-level frame inside the model, produces the automorphism that separates them:
/// one fixing `A_n ∪ {b}` and moving `a` when `b ∈ A_n` or `b` sits in `a`'s
/// block no lower than `a`, and otherwise one fixing `A_m ∪ {a}` and moving `b`,
/// where `a ∈ A_{n+1} ∖ A_n` and `b ∈ A_{m+1} ∖ A_m`.
pub fn separation_suite(model: &LatticeModel, k: usize, n: usize) -> Result<Report, LatticeError> {
    const CHECK: &str = "separation";
    if n > model.top() {
        return Err(LatticeError::LevelCap {
            n,
            cap: model.top(),
        });
    }
    if k >= n {
        return Ok(Report::pass(CHECK).with_detail(json!({ "k": k, "N": n, "vacuous": true })));
    }
    if k + 2 > n {
        return Err(LatticeError::MarginInsufficient { k, n });
    }
    let t = model.tower();
    let size = |l: usize| t.size(l);
    let mut table = Vec::new();
    let mut beyond_margin = 0u64;
    let limit = model.top();
    for a in size(k)..size(n) {
        let na = model.stamp(a).expect("a ≠ o");
        if na + 2 > limit {
            beyond_margin += size(n) as u64 - 1;
            continue;
        }
        for b in (0..size(n)).filter(|&b| b != a) {
            let same_block_above = model.stamp(b) == Some(na) && t.proj1(b) >= t.proj1(a);
            let (case, level, moved, fixed) = if b < size(na) || same_block_above {
                (1, na + 2, a, b)
            } else {
                let nb = model.stamp(b).expect("b ∉ A_n");
                if nb + 2 > limit {
                    beyond_margin += 1;
                    continue;
                }
                (2, nb + 2, b, a)
            };
            let frame = model.frame(level)?;
            let g = frame.move_witness(moved, fixed)?;
            let q = size(level - 2);
            let ok = frame.poset().is_automorphism(&g)
                && (0..q).all(|x| g.apply(x) == x)
                && g.apply(fixed) == fixed
                && g.apply(moved) != moved;
            // Carry the witness up to the highest level of matching parity.
            let top = limit - (limit - level) % 2;
            let lifted = extend_to_level(model, level, &g, top)?;
            let carried = (0..g.len()).all(|x| lifted.apply(x) == g.apply(x));
            if !(ok && carried) {
                return Ok(Report::fail(
                    CHECK,
                    json!({ "k": k, "N": n, "a": a, "b": b, "case": case, "images": g }),
                ));
            }
            table.push([a, b, case]);
        }
    }
    let case_count = |c: usize| table.iter().filter(|r| r[2] == c).count();
    let detail = json!({
        "k": k,
        "N": n,
        "moves_a": case_count(1),
        "moves_b": case_count(2),
        "beyond_margin": beyond_margin,
        "cases": table,
    });
    Ok(Report::pass(CHECK)
        .with_cases(table.len() as u64)
        .with_detail(detail))
}
