use std::collections::{BTreeMap, BTreeSet};

use super::{ConstructionError, MapKind, MapWitness};
use crate::perm::{enumerate, enumerate::perms_moving_at_most, Kind, Perm, Value, DEFAULT_CAP};

/// `u ↦ f` on `⋃u`, identity elsewhere, for `u` ranging over sets of
/// non-trivial orbits of `f`. Domain values are index sets into
/// `f.nontrivial_orbits()`.
pub fn powerset_of_orbits_injection(
    f: &Perm,
) -> Result<MapWitness<Vec<usize>, Perm>, ConstructionError> {
    let orbits = f.nontrivial_orbits();
    let mut graph = Vec::new();
    for v in enumerate(
        Kind::Fin,
        orbits.len(),
        0,
        crate::perm::DEFAULT_W,
        DEFAULT_CAP,
    )? {
        let Value::Set(u) = v else { unreachable!() };
        let mut image: Vec<usize> = (0..f.len()).collect();
        for &i in &u {
            for &z in &orbits[i] {
                image[z] = f.apply(z);
            }
        }
        graph.push((u, Perm::from_images(image)?));
    }
    Ok(MapWitness::new(MapKind::Injection, "℘(non-trivial orbits of f)", "S(x)").with_graph(graph))
}

/// `0` for the identity, `|mov(t)| − 1` otherwise.
pub fn sfin_rank_surjection(t: &Perm) -> usize {
    t.mov_len().saturating_sub(1)
}

pub fn mov_map(t: &Perm) -> Vec<usize> {
    t.mov()
}

/// `t ↦ mov(t)` from `S₂(x)` onto `[x]² ∪ {∅}`.
pub fn s2_bijection(n: usize) -> Result<MapWitness<Perm, Vec<usize>>, ConstructionError> {
    let graph = perms_moving_at_most(n, 2)
        .into_iter()
        .map(|t| {
            let m = t.mov();
            (t, m)
        })
        .collect();
    let codomain = std::iter::once(Vec::new())
        .chain(
            enumerate(Kind::Subsets(2), n, 0, crate::perm::DEFAULT_W, DEFAULT_CAP)?.map(
                |v| match v {
                    Value::Set(s) => s,
                    _ => unreachable!(),
                },
            ),
        )
        .collect();
    Ok(MapWitness::new(MapKind::Bijection, "S₂(x)", "[x]² ∪ {∅}")
        .with_graph(graph)
        .with_codomain(codomain))
}

/// A permutation `h` with `mov(h) = mov(f) ∪ mov(g)`.
///
/// With `y = mov f ∩ mov g`, `u` the points of `mov g ∖ y` whose `g`-orbit
/// meets `mov g ∖ y` only in themselves, and `w = mov g ∖ (y ∪ u)`:
///
/// ```text
/// h(z) = f(z)          z ∈ mov f ∖ g[u]
///        g⁻¹(z)        z ∈ g[u]
///        f(g(z))       z ∈ u
///        (g ▷ w)(z)    z ∈ w
///        z             otherwise
/// ```
pub fn union_mov(f: &Perm, g: &Perm) -> Result<Perm, ConstructionError> {
    f.same_carrier(g)?;
    let n = f.len();
    let mov_f: BTreeSet<usize> = f.mov().into_iter().collect();
    let mov_g: BTreeSet<usize> = g.mov().into_iter().collect();
    let y: BTreeSet<usize> = mov_f.intersection(&mov_g).copied().collect();
    let mut u = BTreeSet::new();
    for &z in mov_g.difference(&y) {
        let orbit = g.orbit(z)?;
        if orbit.iter().all(|v| *v == z || y.contains(v)) {
            u.insert(z);
        }
    }
    let w: Vec<usize> = mov_g
        .iter()
        .copied()
        .filter(|z| !y.contains(z) && !u.contains(z))
        .collect();
    let g_on_w = g.induce(&w)?;
    let g_u: BTreeSet<usize> = u.iter().map(|&z| g.apply(z)).collect();
    let g_inv = g.inverse();

    let image = (0..n)
        .map(|z| {
            if g_u.contains(&z) {
                g_inv.apply(z)
            } else if mov_f.contains(&z) {
                f.apply(z)
            } else if u.contains(&z) {
                f.apply(g.apply(z))
            } else if let Some(v) = g_on_w.apply(z) {
                v
            } else {
                z
            }
        })
        .collect();
    Ok(Perm::from_images(image)?)
}

/// `Φ(∅) = id`, `Φ(t⌢s) = union_mov(Φ(t), s)`.
pub fn fold_union_mov(n: usize, ts: &[Perm]) -> Result<Perm, ConstructionError> {
    let mut seen = BTreeSet::new();
    for (i, t) in ts.iter().enumerate() {
        if !seen.insert(t) {
            return Err(ConstructionError::Precondition {
                t: t.to_string(),
                reason: format!("entry {i} repeats an earlier entry"),
            });
        }
    }
    ts.iter()
        .try_fold(Perm::identity(n), |acc, t| union_mov(&acc, t))
}

/// Cantor's diagonal argument for `S(x)`.
///
/// `f[z]` is `f(z)`; `g` must map every `t ∈ ran f` to a non-identity
/// permutation moving only points of the fiber `f⁻¹[{t}]`. The result agrees
/// with `g(t)` on a fiber unless `t` and `g(t)` agree there, in which case it
/// is the identity on that fiber.
pub fn diagonal_escape(f: &[Perm], g: &BTreeMap<Perm, Perm>) -> Result<Perm, ConstructionError> {
    let n = f.len();
    let mut fibers: BTreeMap<&Perm, Vec<usize>> = BTreeMap::new();
    for (z, t) in f.iter().enumerate() {
        if t.len() != n {
            return Err(crate::perm::PermError::CarrierMismatch {
                left: t.len(),
                right: n,
            }
            .into());
        }
        fibers.entry(t).or_default().push(z);
    }
    let mut image: Vec<usize> = (0..n).collect();
    for (t, fiber) in &fibers {
        let gt = g.get(*t).ok_or_else(|| ConstructionError::Precondition {
            t: t.to_string(),
            reason: "g is not defined at t".into(),
        })?;
        gt.same_carrier(t)?;
        let mov = gt.mov();
        if mov.is_empty() || mov.iter().any(|z| fiber.binary_search(z).is_err()) {
            return Err(ConstructionError::Precondition {
                t: t.to_string(),
                reason: format!("mov(g(t)) = {mov:?} must be non-empty and inside {fiber:?}"),
            });
        }
        let agree = fiber.iter().all(|&z| t.apply(z) == gt.apply(z));
        if !agree {
            for &z in fiber {
                image[z] = gt.apply(z);
            }
        }
    }
    Ok(Perm::from_images(image)?)
}
