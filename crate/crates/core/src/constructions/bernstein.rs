use serde::Serialize;

use super::{ConstructionError, MapKind, MapWitness};
use crate::perm::{PermError, Tagged};

fn check_injection(f: &[usize], cod: usize) -> Result<Vec<Option<usize>>, ConstructionError> {
    let mut inv = vec![None; cod];
    for (a, &b) in f.iter().enumerate() {
        if b >= cod {
            return Err(PermError::OutOfCarrier { elem: b, len: cod }.into());
        }
        if let Some(prev) = inv[b].replace(a) {
            return Err(ConstructionError::NotInjective(
                prev.to_string(),
                a.to_string(),
            ));
        }
    }
    Ok(inv)
}

/// Bijection `h: x -> y` from injections `f: x -> y` and `g: y -> x`.
///
/// Each `a` in `x` is traced back through `g⁻¹` and `f⁻¹` alternately. If the
/// ancestry stops in `y`, `h(a) = g⁻¹(a)`; if it stops in `x` or closes into a
/// cycle, `h(a) = f(a)`.
pub fn cantor_bernstein(f: &[usize], g: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    let (nx, ny) = (f.len(), g.len());
    let f_inv = check_injection(f, ny)?;
    let g_inv = check_injection(g, nx)?;

    let mut h = Vec::with_capacity(nx);
    for a in 0..nx {
        // Walk a -> g⁻¹(a) -> f⁻¹(g⁻¹(a)) -> ... ; at most nx + ny steps.
        let mut in_x = true;
        let mut cur = a;
        let mut stops_in_y = false;
        for _ in 0..=(nx + ny) {
            let prev = if in_x { g_inv[cur] } else { f_inv[cur] };
            match prev {
                None => {
                    stops_in_y = !in_x;
                    break;
                }
                Some(p) => {
                    in_x = !in_x;
                    cur = p;
                    if in_x && cur == a {
                        break;
                    }
                }
            }
        }
        h.push(if stops_in_y {
            g_inv[a].expect("a has a g-preimage when its ancestry stops in y")
        } else {
            f[a]
        });
    }
    Ok(h)
}

/// The absorption map `x ∪ ω_W′ -> x` built from an injection `f: ω_W -> x`.
///
/// `g` fixes `x ∖ ran f`, sends `f(n)` to `f(2n)` and `Nat(n)` to `f(2n+1)`.
/// Atoms `f(n)` with `2n ≥ W` have no image inside the truncation and are
/// listed in `frontier` instead of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Absorption {
    pub w: u32,
    pub w_prime: u32,
    pub graph: Vec<(Tagged, usize)>,
    pub frontier: Vec<usize>,
}

impl Absorption {
    pub fn apply(&self, v: Tagged) -> Option<usize> {
        self.graph.iter().find(|(d, _)| *d == v).map(|&(_, c)| c)
    }

    pub fn witness(&self) -> MapWitness<Tagged, usize> {
        MapWitness::new(MapKind::Injection, "x ∪ ω_W′ (minus frontier)", "x")
            .with_graph(self.graph.clone())
    }
}

pub fn absorb_omega(
    n: usize,
    f: &[usize],
    w: u32,
    w_prime: u32,
) -> Result<Absorption, ConstructionError> {
    if 2 * w_prime as u64 + 1 >= w as u64 {
        return Err(ConstructionError::Truncation {
            need: 2 * w_prime as u64 + 2,
            w,
        });
    }
    if f.len() != w as usize {
        return Err(ConstructionError::Precondition {
            t: format!("{f:?}"),
            reason: format!("f must be defined on all naturals below W={w}"),
        });
    }
    let inv = check_injection(f, n)?;
    let mut graph = Vec::new();
    let mut frontier = Vec::new();
    for (z, pre) in inv.into_iter().enumerate() {
        match pre {
            None => graph.push((Tagged::Atom(z), z)),
            Some(k) if 2 * k < f.len() => graph.push((Tagged::Atom(z), f[2 * k])),
            Some(_) => frontier.push(z),
        }
    }
    for k in 0..w_prime {
        graph.push((Tagged::Nat(k), f[2 * k as usize + 1]));
    }
    Ok(Absorption {
        w,
        w_prime,
        graph,
        frontier,
    })
}
