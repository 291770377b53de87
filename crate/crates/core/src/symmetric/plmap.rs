use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SymError;

pub type Q = Ratio<i64>;

/// A strictly increasing piecewise-linear bijection of the rationals.
///
/// Between consecutive knots the map interpolates linearly; outside the knot
/// range it continues with the end slopes.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct PLMap {
    knots: Vec<(Q, Q)>,
    left_slope: Q,
    right_slope: Q,
}

impl PLMap {
    pub fn new(knots: Vec<(Q, Q)>, left_slope: Q, right_slope: Q) -> Result<Self, SymError> {
        if knots.is_empty() {
            return Err(SymError::NotIncreasing("no knots".into()));
        }
        if !left_slope.is_positive() || !right_slope.is_positive() {
            return Err(SymError::NotIncreasing(
                "end slopes must be positive".into(),
            ));
        }
        if let Some(w) = knots
            .windows(2)
            .find(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1)
        {
            return Err(SymError::NotIncreasing(format!(
                "knots {:?} and {:?}",
                w[0], w[1]
            )));
        }
        Ok(PLMap {
            knots,
            left_slope,
            right_slope,
        })
    }

    pub fn identity() -> Self {
        Self::translation(Q::zero())
    }

    pub fn translation(by: Q) -> Self {
        PLMap {
            knots: vec![(Q::zero(), by)],
            left_slope: Q::one(),
            right_slope: Q::one(),
        }
    }

    pub fn knots(&self) -> &[(Q, Q)] {
        &self.knots
    }

    pub fn end_slopes(&self) -> (Q, Q) {
        (self.left_slope, self.right_slope)
    }

    pub fn eval(&self, x: Q) -> Q {
        let (x0, y0) = self.knots[0];
        if x <= x0 {
            return y0 - (x0 - x) * self.left_slope;
        }
        for w in self.knots.windows(2) {
            let ((a, fa), (b, fb)) = (w[0], w[1]);
            if x <= b {
                return fa + (x - a) * (fb - fa) / (b - a);
            }
        }
        let (xn, yn) = *self.knots.last().expect("knots are non-empty");
        yn + (x - xn) * self.right_slope
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            knots: self.knots.iter().map(|&(x, y)| (y, x)).collect(),
            left_slope: self.left_slope.recip(),
            right_slope: self.right_slope.recip(),
        }
    }

    /// Slopes of every piece from left to right, end pieces included.
    pub fn slopes(&self) -> Vec<Q> {
        let inner = self
            .knots
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0));
        std::iter::once(self.left_slope)
            .chain(inner)
            .chain(std::iter::once(self.right_slope))
            .collect()
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[slope {} |", self.left_slope)?;
        for (x, y) in &self.knots {
            write!(f, " {x}↦{y}")?;
        }
        write!(f, " | slope {}]", self.right_slope)
    }
}

/// An order automorphism of the rationals that fixes `b ∪ {forbid}` pointwise
/// and moves `a`.
///
/// Only the open interval `(lo, hi)` of fixed points around `a` is disturbed:
/// `a` goes to `(2a + hi)/3`, or to `a + 1` when there is no fixed point above.
pub fn mostowski_witness(b: &[Q], a: Q, forbid: Option<Q>) -> Result<PLMap, SymError> {
    let fixed: Vec<Q> = b.iter().copied().chain(forbid).collect();
    if fixed.contains(&a) {
        return Err(SymError::FixedPoint(a.to_string()));
    }
    let lo = fixed.iter().copied().filter(|&q| q < a).max();
    let hi = fixed.iter().copied().filter(|&q| q > a).min();
    let target = match hi {
        Some(h) => (a * 2 + h) / 3,
        None => a + 1,
    };
    // End pieces have slope 1: the identity past a fixed point, a
    // translation where no fixed point bounds that side.
    let knots: Vec<(Q, Q)> = lo
        .map(|l| (l, l))
        .into_iter()
        .chain(std::iter::once((a, target)))
        .chain(hi.map(|h| (h, h)))
        .collect();
    PLMap::new(knots, Q::one(), Q::one())
}
