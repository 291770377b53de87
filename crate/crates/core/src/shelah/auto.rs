use std::collections::BTreeSet;

use super::{ShelahAtom, ShelahError, ShelahPerm};

/// The least closed superset of `b`: every node brings its siblings and the
/// support of its permutation.
pub fn closure<'a>(b: impl IntoIterator<Item = &'a ShelahAtom>) -> BTreeSet<ShelahAtom> {
    let mut out = BTreeSet::new();
    let mut work: Vec<ShelahAtom> = b.into_iter().cloned().collect();
    while let Some(x) = work.pop() {
        if out.contains(&x) {
            continue;
        }
        if let ShelahAtom::Node { perm, .. } = &x {
            work.extend(x.siblings().into_iter().filter(|s| !out.contains(s)));
            work.extend(perm.mov().filter(|a| !out.contains(*a)).cloned());
        }
        out.insert(x);
    }
    out
}

pub fn is_closed(c: &BTreeSet<ShelahAtom>) -> bool {
    c.iter().all(|x| match x {
        ShelahAtom::Base(_) => true,
        ShelahAtom::Node { perm, .. } => {
            x.siblings().iter().all(|s| c.contains(s)) && perm.mov().all(|a| c.contains(a))
        }
    })
}

/// An automorphism of the whole hierarchy given by `g ∈ 𝒢_m` and extended
/// upward by `(k, u, i) ↦ (k, π∘u∘π⁻¹, i)` for `k ≥ m`.
///
/// Images are computed on demand along the structure of the argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAuto {
    m: u32,
    g: ShelahPerm,
}

impl LevelAuto {
    /// Checks that `g` lives on `A_m` and satisfies the group condition at
    /// every node it moves.
    pub fn new(m: u32, g: ShelahPerm) -> Result<Self, ShelahError> {
        if let Some(a) = g.mov().find(|a| a.level() > m) {
            return Err(ShelahError::LevelTooHigh {
                atom: a.to_string(),
                level: m,
            });
        }
        let auto = LevelAuto { m, g };
        for a in auto.g.mov() {
            auto.apply(a)?;
        }
        Ok(auto)
    }

    pub fn identity() -> Self {
        LevelAuto {
            m: 0,
            g: ShelahPerm::identity(0),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn base(&self) -> &ShelahPerm {
        &self.g
    }

    fn conjugate(&self, u: &ShelahPerm) -> Result<ShelahPerm, ShelahError> {
        let pairs = u
            .pairs()
            .iter()
            .map(|(a, b)| Ok((self.apply(a)?, self.apply(b)?)))
            .collect::<Result<Vec<_>, ShelahError>>()?;
        ShelahPerm::new(u.level(), pairs)
    }

    pub fn apply(&self, x: &ShelahAtom) -> Result<ShelahAtom, ShelahError> {
        match x {
            ShelahAtom::Base(_) => Ok(self.g.apply(x)),
            ShelahAtom::Node { perm, tag } => {
                let conj = self.conjugate(perm)?;
                if x.level() > self.m {
                    return Ok(ShelahAtom::Node {
                        perm: conj,
                        tag: *tag,
                    });
                }
                let y = self.g.apply(x);
                match &y {
                    ShelahAtom::Node { perm: v, .. } if *v == conj => Ok(y),
                    _ => Err(ShelahError::NotInGroup(x.to_string())),
                }
            }
        }
    }

    /// `self ∘ other`, both lifted to the larger base level.
    pub fn compose(&self, other: &LevelAuto) -> Result<LevelAuto, ShelahError> {
        let m = self.m.max(other.m);
        let support: BTreeSet<&ShelahAtom> = self.g.mov().chain(other.g.mov()).collect();
        let pairs = support
            .into_iter()
            .map(|a| Ok((a.clone(), self.apply(&other.apply(a)?)?)))
            .collect::<Result<Vec<_>, ShelahError>>()?;
        LevelAuto::new(m, ShelahPerm::new(m, pairs)?)
    }

    /// The first member of `c` that is moved, if any.
    pub fn first_moved<'a>(
        &self,
        c: impl IntoIterator<Item = &'a ShelahAtom>,
    ) -> Result<Option<&'a ShelahAtom>, ShelahError> {
        for x in c {
            if self.apply(x)? != *x {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

fn check_extension(auto: &LevelAuto, c: &BTreeSet<ShelahAtom>) -> Result<(), ShelahError> {
    if !is_closed(c) {
        return Err(ShelahError::NotClosed);
    }
    if let Some(x) = c
        .iter()
        .find(|x| x.level() <= auto.m && auto.g.apply(x) != **x)
    {
        return Err(ShelahError::MovesClosed(x.to_string()));
    }
    Ok(())
}

/// `π(target)` for the extension `π ∈ fix(C)` of `g ∈ 𝒢_m`.
pub fn extend_automorphism(
    m: u32,
    g: &ShelahPerm,
    c: &BTreeSet<ShelahAtom>,
    target: &ShelahAtom,
) -> Result<ShelahAtom, ShelahError> {
    let auto = LevelAuto::new(m, g.clone())?;
    check_extension(&auto, c)?;
    auto.apply(target)
}

/// A witness that `a = (n, t, j)` is moved by some `π ∈ fix(C ∪ A_n ∪ {b})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiblingSwap {
    /// The tag `a` is sent to.
    pub l: u8,
    pub pi: LevelAuto,
    pub image: ShelahAtom,
}

pub fn sibling_swap_witness(
    c: &BTreeSet<ShelahAtom>,
    a: &ShelahAtom,
    b: &ShelahAtom,
) -> Result<SiblingSwap, ShelahError> {
    let ShelahAtom::Node { perm, tag: j } = a else {
        return Err(ShelahError::NotANode(a.to_string()));
    };
    if c.contains(a) {
        return Err(ShelahError::InClosed(a.to_string()));
    }
    if a == b {
        return Err(ShelahError::SameAtom);
    }
    let n1 = a.level();
    if b.level() > n1 && !c.contains(b) {
        return Err(ShelahError::LevelTooHigh {
            atom: b.to_string(),
            level: n1,
        });
    }
    if !is_closed(c) {
        return Err(ShelahError::NotClosed);
    }
    let l = (0..3u8)
        .find(|&l| {
            let s = a.with_tag(l).expect("a is a node");
            s != *a && s != *b
        })
        .expect("two atoms exclude at most two of three tags");
    let target = a.with_tag(l).expect("a is a node");
    let g = ShelahPerm::new(
        n1,
        vec![(a.clone(), target.clone()), (target.clone(), a.clone())],
    )?;
    let pi = LevelAuto::new(n1, g)?;
    check_extension(&pi, c)?;

    let image = pi.apply(a)?;
    if image == *a {
        return Err(ShelahError::ClauseViolated(format!("π fixes {a}")));
    }
    if pi.apply(b)? != *b {
        return Err(ShelahError::ClauseViolated(format!("π moves b = {b}")));
    }
    if let Some(x) = pi.first_moved(c)? {
        return Err(ShelahError::ClauseViolated(format!("π moves {x} ∈ C")));
    }
    debug_assert_eq!(perm.level() + 1, n1);
    debug_assert_ne!(*j, l);
    Ok(SiblingSwap { l, pi, image })
}

/// `{(k, u↾A_k, i) | i < 3}` where `A_k` is the least level containing
/// `mov(u)`.
pub fn triple_injection(u: &ShelahPerm) -> Result<[ShelahAtom; 3], ShelahError> {
    let k = u.mov().map(ShelahAtom::level).max().unwrap_or(0);
    let restricted = ShelahPerm::new(k, u.pairs().to_vec())?;
    Ok([0, 1, 2].map(|tag| ShelahAtom::Node {
        perm: restricted.clone(),
        tag,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(i: u32) -> ShelahAtom {
        ShelahAtom::Base(i)
    }

    fn swap(level: u32, a: &ShelahAtom, b: &ShelahAtom) -> ShelahPerm {
        ShelahPerm::cycle(level, &[a.clone(), b.clone()]).unwrap()
    }

    fn node(perm: ShelahPerm, tag: u8) -> ShelahAtom {
        ShelahAtom::node(perm, tag).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&[base(0)]), BTreeSet::from([base(0)]));
        let u = swap(0, &base(0), &base(1));
        let c = closure(&[node(u.clone(), 0)]);
        let expect: BTreeSet<_> = (0..3)
            .map(|i| node(u.clone(), i))
            .chain([base(0), base(1)])
            .collect();
        assert_eq!(c, expect);
        assert!(is_closed(&c));
        assert_eq!(closure(&c), c);
    }

    #[test]
    fn conjugation_by_base_swap() {
        let (a, b, c) = (base(0), base(1), base(2));
        let g = swap(0, &a, &b);
        let target = node(swap(0, &a, &c), 1);
        let img = extend_automorphism(0, &g, &BTreeSet::new(), &target).unwrap();
        assert_eq!(img, node(swap(0, &b, &c), 1));
        let id =
            extend_automorphism(0, &ShelahPerm::identity(0), &BTreeSet::new(), &target).unwrap();
        assert_eq!(id, target);
    }

    #[test]
    fn extension_fixes_closure() {
        let (a, b) = (base(0), base(1));
        let c = closure(&[node(swap(0, &a, &b), 0)]);
        let g = swap(0, &base(2), &base(3));
        let auto = LevelAuto::new(0, g.clone()).unwrap();
        assert_eq!(auto.first_moved(&c).unwrap(), None);
        assert!(matches!(
            extend_automorphism(0, &swap(0, &a, &base(2)), &c, &a),
            Err(ShelahError::MovesClosed(_))
        ));
    }

    #[test]
    fn group_condition_is_checked() {
        // Swapping two level-1 nodes with different underlying perms is not in 𝒢₁.
        let x = node(swap(0, &base(0), &base(1)), 0);
        let y = node(swap(0, &base(0), &base(2)), 0);
        assert!(matches!(
            LevelAuto::new(1, swap(1, &x, &y)),
            Err(ShelahError::NotInGroup(_))
        ));
        // Swapping tags of one triple is.
        let x1 = node(swap(0, &base(0), &base(1)), 1);
        assert!(LevelAuto::new(1, swap(1, &x, &x1)).is_ok());
    }

    #[test]
    fn sibling_swap_examples() {
        let t = swap(0, &base(0), &base(1));
        let (a, b) = (node(t.clone(), 0), node(t.clone(), 1));
        let w = sibling_swap_witness(&BTreeSet::new(), &a, &b).unwrap();
        assert_eq!(w.l, 2);
        assert_eq!(w.image, node(t.clone(), 2));

        let w = sibling_swap_witness(&BTreeSet::new(), &b, &base(0)).unwrap();
        assert_eq!(w.l, 0);
        for i in 0..4 {
            assert_eq!(w.pi.apply(&base(i)).unwrap(), base(i));
        }
        let other = swap(0, &base(2), &base(3));
        for i in 0..3 {
            let s = node(other.clone(), i);
            assert_eq!(w.pi.apply(&s).unwrap(), s);
        }
    }

    #[test]
    fn sibling_swap_errors() {
        let t = swap(0, &base(0), &base(1));
        let a = node(t.clone(), 0);
        let c = closure(std::slice::from_ref(&a));
        assert!(matches!(
            sibling_swap_witness(&c, &a, &base(0)),
            Err(ShelahError::InClosed(_))
        ));
        assert!(sibling_swap_witness(&BTreeSet::new(), &base(0), &a).is_err());
        assert!(sibling_swap_witness(&BTreeSet::new(), &a, &a).is_err());
    }

    #[test]
    fn triples() {
        let id = triple_injection(&ShelahPerm::identity(3)).unwrap();
        assert_eq!(id[0], node(ShelahPerm::identity(0), 0));
        let s = swap(0, &base(0), &base(1));
        let t = triple_injection(&s).unwrap();
        assert!(t.iter().all(|x| x.level() == 1));
        assert!(t.iter().all(|x| !id.contains(x)));
        let lifted = ShelahPerm::new(2, s.pairs().to_vec()).unwrap();
        assert_eq!(triple_injection(&lifted).unwrap(), t);
    }
}
