use super::pairing::{triple, untriple};
use super::ConstructionError;
use crate::perm::{check_injective, Perm, PermError, Tagged, TaggedSeq};

/// Replaces every repeated entry by the position of its previous occurrence.
pub fn seq_collapse(t: &[usize], w: u32) -> Result<TaggedSeq, ConstructionError> {
    if t.len() as u64 > w as u64 {
        return Err(ConstructionError::Truncation {
            need: t.len() as u64,
            w,
        });
    }
    let entries = t
        .iter()
        .enumerate()
        .map(|(n, &z)| match t[..n].iter().rposition(|&y| y == z) {
            Some(k) => Tagged::Nat(k as u32),
            None => Tagged::Atom(z),
        })
        .collect();
    Ok(TaggedSeq::new(w, entries)?)
}

/// Inverse of [`seq_collapse`].
pub fn seq_expand(s: &TaggedSeq) -> Result<Vec<usize>, ConstructionError> {
    let mut t: Vec<usize> = Vec::with_capacity(s.len());
    for (n, e) in s.entries.iter().enumerate() {
        match *e {
            Tagged::Atom(z) => t.push(z),
            Tagged::Nat(k) if (k as usize) < n => t.push(t[k as usize]),
            Tagged::Nat(k) => {
                return Err(ConstructionError::Decode(format!(
                    "back-reference {k} at position {n}"
                )))
            }
        }
    }
    Ok(t)
}

/// `t ↦ (p(t∘h(t), g(t), h(t)), t∘g(t))` where `g(t)` and `h(t)` enumerate the
/// positions holding carrier elements and naturals respectively.
pub fn seqinj_split(t: &TaggedSeq) -> Result<(u128, Vec<usize>), ConstructionError> {
    if !t.is_injective() {
        return Err(ConstructionError::Precondition {
            t: format!("{:?}", t.entries),
            reason: "sequence is not injective".into(),
        });
    }
    let mut atoms = Vec::new();
    let (mut g, mut h, mut nats) = (Vec::new(), Vec::new(), Vec::new());
    for (i, e) in t.entries.iter().enumerate() {
        match *e {
            Tagged::Atom(z) => {
                g.push(i as u128);
                atoms.push(z);
            }
            Tagged::Nat(k) => {
                h.push(i as u128);
                nats.push(k as u128);
            }
        }
    }
    Ok((triple(&nats, &g, &h)?, atoms))
}

/// Inverse of [`seqinj_split`].
pub fn seqinj_join(code: u128, atoms: &[usize], w: u32) -> Result<TaggedSeq, ConstructionError> {
    let (nats, g, h) = untriple(code);
    let bad = || ConstructionError::Decode(format!("pairing code {code}"));
    if nats.len() != h.len() || g.len() != atoms.len() {
        return Err(bad());
    }
    let len = g.len() + h.len();
    let mut slots: Vec<Option<Tagged>> = vec![None; len];
    for (&pos, &z) in g.iter().zip(atoms) {
        let slot = slots.get_mut(pos as usize).ok_or_else(bad)?;
        if slot.replace(Tagged::Atom(z)).is_some() {
            return Err(bad());
        }
    }
    for (&pos, &k) in h.iter().zip(&nats) {
        let k = u32::try_from(k).map_err(|_| bad())?;
        let slot = slots.get_mut(pos as usize).ok_or_else(bad)?;
        if slot.replace(Tagged::Nat(k)).is_some() {
            return Err(bad());
        }
    }
    let entries = slots
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    Ok(TaggedSeq::new(w, entries)?)
}

fn check_seq(n: usize, t: &[usize]) -> Result<(), ConstructionError> {
    check_injective(t)?;
    if let Some(&z) = t.iter().find(|&&z| z >= n) {
        return Err(PermError::OutOfCarrier { elem: z, len: n }.into());
    }
    Ok(())
}

/// `(t(0);…;t(n−1))` when the anchor occurs in `t`, else `(t(0);…;t(n−1);z)`.
pub fn seqinj_to_sfin(n: usize, t: &[usize], z: usize) -> Result<Perm, ConstructionError> {
    check_seq(n, t)?;
    if t.contains(&z) {
        Ok(Perm::cycle(n, t)?)
    } else {
        let mut c = t.to_vec();
        c.push(z);
        Ok(Perm::cycle(n, &c)?)
    }
}

/// `(t⁻¹(z), f(t))` when the anchor occurs in `t`, else `(dom(t)+1, f(t))`.
pub fn seqinj_to_nat_sfin(
    n: usize,
    t: &[usize],
    z: usize,
) -> Result<(usize, Perm), ConstructionError> {
    let p = seqinj_to_sfin(n, t, z)?;
    let k = t.iter().position(|&y| y == z).unwrap_or(t.len() + 1);
    Ok((k, p))
}

/// `(n, z) ↦ (n+1) × {z}`.
pub fn constant_seq_injection(k: u32, z: usize, w: u32) -> Result<Vec<usize>, ConstructionError> {
    if k >= w {
        return Err(PermError::TruncationBound { value: k as u64, w }.into());
    }
    Ok(vec![z; k as usize + 1])
}

fn rank_of(order: &[usize], n: usize) -> Result<Vec<usize>, ConstructionError> {
    let mut rank = vec![usize::MAX; n];
    if order.len() != n {
        return Err(ConstructionError::OrderNotTotal);
    }
    for (i, &z) in order.iter().enumerate() {
        if z >= n || rank[z] != usize::MAX {
            return Err(ConstructionError::OrderNotTotal);
        }
        rank[z] = i;
    }
    Ok(rank)
}

/// Lists `t`'s values on `mov(t)` in the order given by `order` (least first).
pub fn sfin_to_seqinj_ordered(t: &Perm, order: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    let rank = rank_of(order, t.len())?;
    let mut mov = t.mov();
    mov.sort_by_key(|&z| rank[z]);
    Ok(mov.into_iter().map(|z| t.apply(z)).collect())
}

/// Inverse of [`sfin_to_seqinj_ordered`] on its range.
pub fn sfin_from_seqinj_ordered(
    s: &[usize],
    order: &[usize],
    n: usize,
) -> Result<Perm, ConstructionError> {
    let rank = rank_of(order, n)?;
    check_seq(n, s)?;
    let mut dom = s.to_vec();
    dom.sort_by_key(|&z| rank[z]);
    let mut image: Vec<usize> = (0..n).collect();
    for (&z, &v) in dom.iter().zip(s) {
        image[z] = v;
    }
    let p = Perm::from_images(image)?;
    if p.mov_len() != s.len() {
        return Err(ConstructionError::Decode(format!(
            "{s:?} is not in the range"
        )));
    }
    Ok(p)
}
