//! Closed-form cardinalities used to pre-check enumeration caps. All
//! functions return `None` on `u128` overflow.

pub fn factorial(n: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of fixed-point-free permutations of a `k`-set (subfactorial).
pub fn derangements(k: u64) -> Option<u128> {
    let (mut prev, mut cur): (u128, u128) = (1, 0);
    if k == 0 {
        return Some(1);
    }
    for i in 2..=k as u128 {
        let next = (i - 1).checked_mul(cur.checked_add(prev)?)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// `|S_k(x)|` for `|x| = n`: permutations moving at most `k` points.
pub fn perms_moving_at_most(n: u64, k: u64) -> Option<u128> {
    (0..=k.min(n)).try_fold(0u128, |acc, j| {
        acc.checked_add(binomial(n, j)?.checked_mul(derangements(j)?)?)
    })
}

/// Sequences of length `<= max_len` over an `n`-set.
pub fn sequences(n: u64, max_len: u64) -> Option<u128> {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=max_len {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(n as u128)?;
    }
    Some(total)
}

/// Injective sequences of length `<= max_len` over an `n`-set.
pub fn injective_sequences(n: u64, max_len: u64) -> Option<u128> {
    let mut total: u128 = 0;
    let mut falling: u128 = 1;
    for l in 0..=max_len.min(n) {
        total = total.checked_add(falling)?;
        falling = falling.checked_mul((n - l) as u128)?;
    }
    Some(total)
}

pub fn subsets(n: u64) -> Option<u128> {
    1u128.checked_shl(n as u32).filter(|_| n < 128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), Some(120));
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(28, 2), Some(378));
        assert_eq!(
            (0..7).map(|k| derangements(k).unwrap()).collect::<Vec<_>>(),
            vec![1, 0, 1, 2, 9, 44, 265]
        );
        assert_eq!(perms_moving_at_most(4, 2), Some(7));
        assert_eq!(sequences(2, 2), Some(7));
        assert_eq!(injective_sequences(3, 5), Some(1 + 3 + 6 + 6));
        assert_eq!(subsets(6), Some(64));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(factorial(40), None);
        assert_eq!(subsets(200), None);
    }
}
