use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A bijection of `{0, .., n-1}` onto itself, stored as its image vector.
///
/// Ordering is the lexicographic order of image vectors, which is the order
/// the enumerators emit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(PermError::NotBijection { len: n });
            }
            seen[v] = true;
        }
        Ok(Perm { image })
    }

    /// Caller guarantees `image` is a bijection of `0..image.len()`.
    pub(crate) fn from_images_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(image.clone()).is_ok());
        Perm { image }
    }

    /// The cycle `t(0) -> t(1) -> .. -> t(k-1) -> t(0)` on a carrier of size
    /// `n`; sequences of length 0 or 1 give the identity.
    pub fn cycle(n: usize, t: &[usize]) -> Result<Self, PermError> {
        let mut seen = vec![false; n];
        for &z in t {
            if z >= n {
                return Err(PermError::OutOfCarrier { elem: z, len: n });
            }
            if seen[z] {
                return Err(PermError::DuplicateEntry(z));
            }
            seen[z] = true;
        }
        let mut image: Vec<usize> = (0..n).collect();
        for (i, &z) in t.iter().enumerate() {
            image[z] = t[(i + 1) % t.len()];
        }
        Ok(Perm { image })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermError> {
        Perm::cycle(n, &[a, b])
    }

    /// Product of disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut p = Perm::identity(n);
        for c in cycles {
            p = p.compose(&Perm::cycle(n, c)?)?;
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn into_images(self) -> Vec<usize> {
        self.image
    }

    #[inline]
    pub fn apply(&self, z: usize) -> usize {
        self.image[z]
    }

    pub fn try_apply(&self, z: usize) -> Result<usize, PermError> {
        self.image.get(z).copied().ok_or(PermError::OutOfCarrier {
            elem: z,
            len: self.len(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (z, &v) in self.image.iter().enumerate() {
            inv[v] = z;
        }
        Perm { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        self.same_carrier(other)?;
        Ok(Perm {
            image: other.image.iter().map(|&z| self.image[z]).collect(),
        })
    }

    pub fn same_carrier(&self, other: &Perm) -> Result<(), PermError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(PermError::CarrierMismatch {
                left: self.len(),
                right: other.len(),
            })
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(z, &v)| z == v)
    }

    /// `mov(p)`, ascending.
    pub fn mov(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|(z, v)| z != *v)
            .map(|(z, _)| z)
            .collect()
    }

    pub fn mov_len(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|(z, v)| z != *v)
            .count()
    }

    pub fn moves(&self, z: usize) -> bool {
        self.image[z] != z
    }

    /// The orbit of `z`, ascending.
    pub fn orbit(&self, z: usize) -> Result<Vec<usize>, PermError> {
        self.try_apply(z)?;
        let mut orbit = vec![z];
        let mut cur = self.image[z];
        while cur != z {
            orbit.push(cur);
            cur = self.image[cur];
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, each ascending, ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for z in 0..self.len() {
            if seen[z] {
                continue;
            }
            let orbit = self.orbit(z).expect("z is in range");
            for &v in &orbit {
                seen[v] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn nontrivial_orbits(&self) -> Vec<Vec<usize>> {
        self.orbits().into_iter().filter(|o| o.len() > 1).collect()
    }

    /// Cycles in traversal order, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for z in 0..self.len() {
            if seen[z] || !self.moves(z) {
                continue;
            }
            let mut c = vec![z];
            seen[z] = true;
            let mut cur = self.image[z];
            while cur != z {
                seen[cur] = true;
                c.push(cur);
                cur = self.image[cur];
            }
            out.push(c);
        }
        out
    }

    /// The permutation of `y` induced by first return: each `z ∈ y` goes to
    /// the first iterate `p^(k+1)(z)` lying in `y`.
    pub fn induce(&self, y: &[usize]) -> Result<SubPerm, PermError> {
        let n = self.len();
        let mut in_y = vec![false; n];
        for &z in y {
            if z >= n {
                return Err(PermError::OutOfCarrier { elem: z, len: n });
            }
            in_y[z] = true;
        }
        let mut support: Vec<usize> = y.to_vec();
        support.sort_unstable();
        support.dedup();
        let map = support
            .iter()
            .map(|&z| {
                let mut cur = self.image[z];
                while !in_y[cur] {
                    cur = self.image[cur];
                }
                (z, cur)
            })
            .collect();
        Ok(SubPerm { map })
    }

    /// Restriction to a set the permutation maps onto itself.
    pub fn restrict(&self, y: &[usize]) -> Option<SubPerm> {
        let map: BTreeMap<usize, usize> = y.iter().map(|&z| (z, self.image[z])).collect();
        let closed = map.values().all(|v| map.contains_key(v));
        closed.then_some(SubPerm { map })
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.image
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, z) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{z}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}{}", self.len(), self)
    }
}

/// A permutation of a subset of some carrier, keyed by the original element
/// ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubPerm {
    map: BTreeMap<usize, usize>,
}

impl SubPerm {
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn apply(&self, z: usize) -> Option<usize> {
        self.map.get(&z).copied()
    }

    pub fn is_bijection(&self) -> bool {
        let mut images: Vec<usize> = self.map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        images.len() == self.map.len() && images.iter().all(|v| self.map.contains_key(v))
    }

    pub fn mov(&self) -> Vec<usize> {
        self.map
            .iter()
            .filter(|(z, v)| z != v)
            .map(|(&z, _)| z)
            .collect()
    }

    pub fn orbit(&self, z: usize) -> Option<Vec<usize>> {
        let mut orbit = vec![z];
        let mut cur = self.apply(z)?;
        while cur != z {
            orbit.push(cur);
            cur = self.apply(cur)?;
        }
        orbit.sort_unstable();
        Some(orbit)
    }

    /// Extend to the whole carrier of size `n`, fixing everything outside
    /// the domain.
    pub fn lift(&self, n: usize) -> Perm {
        let mut image: Vec<usize> = (0..n).collect();
        for (&z, &v) in &self.map {
            image[z] = v;
        }
        Perm::from_images_unchecked(image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_examples() {
        let swap = Perm::cycle(3, &[0, 1]).unwrap();
        assert_eq!(swap.images(), &[1, 0, 2]);
        assert!(Perm::cycle(3, &[]).unwrap().is_identity());
        assert!(Perm::cycle(3, &[2]).unwrap().is_identity());
        let c3 = Perm::cycle(4, &[0, 1, 2]).unwrap();
        // pointwise: 0->1, 1->2, 2->0, 3 fixed
        assert_eq!(
            (0..4).map(|z| c3.apply(z)).collect::<Vec<_>>(),
            vec![1, 2, 0, 3]
        );
    }

    #[test]
    fn cycle_errors() {
        assert_eq!(
            Perm::cycle(3, &[0, 1, 0]),
            Err(PermError::DuplicateEntry(0))
        );
        assert_eq!(
            Perm::cycle(3, &[0, 3]),
            Err(PermError::OutOfCarrier { elem: 3, len: 3 })
        );
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_images(vec![]).is_ok());
    }

    #[test]
    fn mov_examples() {
        assert!(Perm::identity(4).mov().is_empty());
        assert_eq!(Perm::cycle(3, &[0, 1]).unwrap().mov(), vec![0, 1]);
        assert_eq!(Perm::cycle(4, &[0, 1, 2]).unwrap().mov(), vec![0, 1, 2]);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(Perm::identity(3).orbit(0).unwrap(), vec![0]);
        assert_eq!(
            Perm::cycle(3, &[0, 1]).unwrap().orbit(0).unwrap(),
            vec![0, 1]
        );
        let p = Perm::cycle(5, &[0, 1, 2])
            .unwrap()
            .compose(&Perm::cycle(5, &[3, 4]).unwrap())
            .unwrap();
        assert_eq!(p.orbit(3).unwrap(), vec![3, 4]);
        assert!(p.orbit(5).is_err());
    }

    #[test]
    fn induce_examples() {
        let c4 = Perm::cycle(4, &[0, 1, 2, 3]).unwrap();
        let ind = c4.induce(&[0, 2]).unwrap();
        assert_eq!(ind.apply(0), Some(2));
        assert_eq!(ind.apply(2), Some(0));

        let all: Vec<usize> = (0..4).collect();
        assert_eq!(c4.induce(&all).unwrap().lift(4), c4);

        let id = Perm::identity(4).induce(&[1, 3]).unwrap();
        assert!(id.mov().is_empty());
        assert!(Perm::identity(4).induce(&[4]).is_err());
    }

    #[test]
    fn compose_order() {
        let a = Perm::cycle(3, &[0, 1]).unwrap();
        let b = Perm::cycle(3, &[1, 2]).unwrap();
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).unwrap().apply(1), 2);
        assert!(a.compose(&Perm::identity(4)).is_err());
    }

    #[test]
    fn display_cycle_notation() {
        let p = Perm::from_cycles(5, &[vec![0, 2], vec![1, 3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(1 3 4)");
        assert_eq!(Perm::identity(2).to_string(), "()");
    }
}
