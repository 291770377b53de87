use serde::Serialize;

use super::SymError;
use crate::constructions::{MapKind, MapWitness};
use crate::perm::enumerate::Permutations;
use crate::perm::Perm;

/// Largest number of blocks for which every block-internal permutation is
/// checked, `6³` permutations in all.
pub const N23_EXHAUSTIVE_BLOCKS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct N23Projection {
    pub witness: MapWitness<usize, u32>,
    /// Block-internal permutations checked against the projection.
    pub checked: usize,
}

/// The three-to-one map sending every atom to the index of its block.
///
/// `blocks` must partition `0..n` into 3-element sets. For at most
/// [`N23_EXHAUSTIVE_BLOCKS`] blocks every permutation that maps each block to
/// itself is also checked to commute with the projection.
pub fn n23_projection(blocks: &[Vec<usize>], w: u32) -> Result<N23Projection, SymError> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    if blocks.len() as u64 > w as u64 {
        return Err(SymError::Perm(crate::perm::PermError::TruncationBound {
            value: blocks.len() as u64,
            w,
        }));
    }
    let mut owner = vec![None; n];
    for (i, blk) in blocks.iter().enumerate() {
        if blk.len() != 3 {
            return Err(SymError::MalformedBlocks(format!(
                "block {i} has {} atoms",
                blk.len()
            )));
        }
        for &a in blk {
            match owner.get_mut(a) {
                Some(slot @ None) => *slot = Some(i as u32),
                Some(Some(_)) => {
                    return Err(SymError::MalformedBlocks(format!(
                        "atom {a} is in two blocks"
                    )))
                }
                None => {
                    return Err(SymError::MalformedBlocks(format!(
                        "atom {a} is outside 0..{n}"
                    )))
                }
            }
        }
    }
    let proj: Vec<u32> = owner
        .into_iter()
        .map(|o| o.expect("blocks cover 0..n"))
        .collect();
    let witness = MapWitness::new(MapKind::FiniteToOne, "A", "ω_W")
        .with_graph(proj.iter().copied().enumerate().collect())
        .with_codomain((0..blocks.len() as u32).collect())
        .with_fiber_bound(3);

    let mut checked = 0;
    if blocks.len() <= N23_EXHAUSTIVE_BLOCKS {
        let local: Vec<Perm> = Permutations::new(3).collect();
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let mut image: Vec<usize> = (0..n).collect();
            for (blk, &c) in blocks.iter().zip(&choice) {
                for (j, &a) in blk.iter().enumerate() {
                    image[a] = blk[local[c].apply(j)];
                }
            }
            let pi = Perm::from_images(image)?;
            if let Some(a) = (0..n).find(|&a| proj[pi.apply(a)] != proj[a]) {
                return Err(SymError::MalformedBlocks(format!(
                    "{pi} moves atom {a} out of its block"
                )));
            }
            checked += 1;
            let Some(i) = choice.iter().position(|&c| c + 1 < local.len()) else {
                break;
            };
            choice[i] += 1;
            choice[..i].iter_mut().for_each(|c| *c = 0);
        }
    }
    Ok(N23Projection { witness, checked })
}
