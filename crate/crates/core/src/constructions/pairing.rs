//! The injection `p: seq(ω)³ -> ω`.
//!
//! Bit-exact definition, all arithmetic in `u128` with overflow reported:
//!
//! ```text
//! pair(a, b)     = (a + b)(a + b + 1)/2 + b          Cantor pairing
//! E([])          = 0
//! E([s0, s1..])  = 1 + pair(s0, E([s1..]))           length-prefixed list code
//! p(a, b, c)     = pair(E(a), pair(E(b), E(c)))
//! ```
//!
//! Every function here has an exact inverse.

use super::ConstructionError;

pub fn cantor_pair(a: u128, b: u128) -> Result<u128, ConstructionError> {
    let s = a.checked_add(b).ok_or(ConstructionError::PairingOverflow)?;
    let t = s
        .checked_add(1)
        .and_then(|s1| {
            // Halve whichever factor is even before multiplying.
            if s % 2 == 0 {
                (s / 2).checked_mul(s1)
            } else {
                s.checked_mul(s1 / 2)
            }
        })
        .ok_or(ConstructionError::PairingOverflow)?;
    t.checked_add(b).ok_or(ConstructionError::PairingOverflow)
}

pub fn cantor_unpair(z: u128) -> (u128, u128) {
    // Largest s with s(s+1)/2 <= z, found by integer square root then nudged.
    let mut s = isqrt(z.saturating_mul(2).max(z));
    while s > 0 && tri(s) > z {
        s -= 1;
    }
    while tri(s + 1) <= z {
        s += 1;
    }
    let b = z - tri(s);
    (s - b, b)
}

fn tri(s: u128) -> u128 {
    if s.is_multiple_of(2) {
        (s / 2).saturating_mul(s + 1)
    } else {
        s.saturating_mul(s.div_ceil(2))
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

pub fn encode_seq(s: &[u128]) -> Result<u128, ConstructionError> {
    s.iter().rev().try_fold(0u128, |acc, &v| {
        cantor_pair(v, acc)?
            .checked_add(1)
            .ok_or(ConstructionError::PairingOverflow)
    })
}

pub fn decode_seq(mut code: u128) -> Vec<u128> {
    let mut out = Vec::new();
    while code > 0 {
        let (head, rest) = cantor_unpair(code - 1);
        out.push(head);
        code = rest;
    }
    out
}

pub fn triple(a: &[u128], b: &[u128], c: &[u128]) -> Result<u128, ConstructionError> {
    cantor_pair(encode_seq(a)?, cantor_pair(encode_seq(b)?, encode_seq(c)?)?)
}

pub fn untriple(z: u128) -> (Vec<u128>, Vec<u128>, Vec<u128>) {
    let (ea, bc) = cantor_unpair(z);
    let (eb, ec) = cantor_unpair(bc);
    (decode_seq(ea), decode_seq(eb), decode_seq(ec))
}
