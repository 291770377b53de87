use rand::seq::SliceRandom;
use rand::Rng;

use super::{ShelahAtom, ShelahError, ShelahPerm};

pub const DEFAULT_BASE: u32 = 6;

/// A finite sample of base atoms standing in for `A₀`, with demand-driven
/// generators for atoms and permutations above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Universe {
    pub base: u32,
}

impl Default for Universe {
    fn default() -> Self {
        Universe { base: DEFAULT_BASE }
    }
}

impl Universe {
    pub fn new(base: u32) -> Self {
        Universe { base }
    }

    pub fn base_atoms(&self) -> Vec<ShelahAtom> {
        (0..self.base).map(ShelahAtom::Base).collect()
    }

    pub fn contains(&self, x: &ShelahAtom) -> bool {
        x.max_base().is_none_or(|b| b < self.base)
    }

    pub fn check(&self, x: &ShelahAtom) -> Result<(), ShelahError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(ShelahError::ForeignBase {
                atom: x.to_string(),
                base: self.base,
            })
        }
    }

    /// Every permutation of the base sample, as level-0 permutations.
    pub fn base_perms(&self) -> Vec<ShelahPerm> {
        crate::perm::enumerate::Permutations::new(self.base as usize)
            .map(|p| {
                let pairs = (0..self.base)
                    .map(|i| {
                        (
                            ShelahAtom::Base(i),
                            ShelahAtom::Base(p.apply(i as usize) as u32),
                        )
                    })
                    .collect();
                ShelahPerm::new(0, pairs).expect("a permutation of the base sample")
            })
            .collect()
    }

    /// All level-1 atoms `(0, u, i)` over the base sample.
    pub fn level_one(&self) -> Vec<ShelahAtom> {
        self.base_perms()
            .into_iter()
            .flat_map(|u| {
                (0..3).map(move |i| ShelahAtom::Node {
                    perm: u.clone(),
                    tag: i,
                })
            })
            .collect()
    }

    /// A random atom of level at most `max_level`.
    pub fn random_atom<R: Rng>(&self, rng: &mut R, max_level: u32) -> ShelahAtom {
        let level = rng.gen_range(0..=max_level);
        self.random_atom_at(rng, level)
    }

    pub fn random_atom_at<R: Rng>(&self, rng: &mut R, level: u32) -> ShelahAtom {
        if level == 0 {
            return ShelahAtom::Base(rng.gen_range(0..self.base));
        }
        let n = level - 1;
        let perm = self.random_perm(rng, n, 3);
        ShelahAtom::Node {
            perm,
            tag: rng.gen_range(0..3),
        }
    }

    /// A random cycle on at most `size` atoms of level at most `level`, one
    /// of them of level exactly `level` when `level > 0` and there is room.
    pub fn random_perm<R: Rng>(&self, rng: &mut R, level: u32, size: usize) -> ShelahPerm {
        let k = rng.gen_range(0..=size);
        let mut pool: Vec<ShelahAtom> = (0..k)
            .map(|i| {
                let l = if i == 0 {
                    level
                } else {
                    rng.gen_range(0..=level)
                };
                self.random_atom_at(rng, l)
            })
            .collect();
        pool.sort();
        pool.dedup();
        pool.shuffle(rng);
        if pool.len() < 2 {
            return ShelahPerm::identity(level);
        }
        ShelahPerm::cycle(level, &pool).expect("distinct atoms of bounded level")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn level_one_size() {
        let u = Universe::new(4);
        assert_eq!(u.base_perms().len(), 24);
        assert_eq!(u.level_one().len(), 72);
    }

    #[test]
    fn random_atoms_respect_levels() {
        let u = Universe::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = u.random_atom(&mut rng, 3);
            assert!(x.level() <= 3);
            assert!(u.contains(&x));
            assert_eq!(x.to_string().parse::<ShelahAtom>().unwrap(), x);
        }
        assert!(!Universe::new(2).contains(&ShelahAtom::Base(5)));
    }
}
