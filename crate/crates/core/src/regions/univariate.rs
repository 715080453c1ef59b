use crate::error::{Error, Result};
use crate::exactmath::{ceil, floor, isolate_roots, Rat, Sign, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Outcome of minimizing a univariate polynomial over an integer range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivariateOutcome {
    Optimal { x: BigInt, value: Rat },
    /// `p(x + t * dir) -> -infinity` as integer `t -> +infinity`; `dir` is `1` or `-1`.
    Unbounded { x: BigInt, dir: i8 },
}

impl UnivariateOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            UnivariateOutcome::Optimal { value, .. } => Some(value),
            UnivariateOutcome::Unbounded { .. } => None,
        }
    }
}

/// Sign of `p` as `x -> +infinity` (`dir = 1`) or `x -> -infinity` (`dir = -1`).
pub fn sign_at_infinity(p: &UniPoly, dir: i8) -> Sign {
    match (p.leading(), p.degree()) {
        (None, _) => Sign::Zero,
        (Some(lc), Some(d)) => {
            let s = Sign::of_rat(lc);
            if dir < 0 && d % 2 == 1 {
                s.neg()
            } else {
                s
            }
        }
        _ => unreachable!(),
    }
}

/// Minimum of `p` over the integers of `[lo, hi]`, either end possibly infinite.
/// Ties go to the smallest minimizer.
pub fn minimize_univariate(p: &UniPoly, lo: Option<&BigInt>, hi: Option<&BigInt>) -> Result<UnivariateOutcome> {
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return Err(Error::EmptyInterval);
        }
    }
    let anchor = lo.or(hi).cloned().unwrap_or_else(BigInt::zero);
    let nonconstant = p.degree().unwrap_or(0) > 0;
    if nonconstant {
        if hi.is_none() && sign_at_infinity(p, 1) == Sign::Negative {
            return Ok(UnivariateOutcome::Unbounded { x: anchor, dir: 1 });
        }
        if lo.is_none() && sign_at_infinity(p, -1) == Sign::Negative {
            return Ok(UnivariateOutcome::Unbounded { x: hi.cloned().unwrap_or(anchor), dir: -1 });
        }
    }
    let mut cands: Vec<BigInt> = lo.into_iter().chain(hi).cloned().collect();
    let dp = p.derivative();
    if !dp.is_zero() && dp.degree().unwrap_or(0) > 0 {
        for r in isolate_roots(&dp, &Rat::one())? {
            let mut y = floor(&r.lo);
            let end = ceil(&r.hi);
            while y <= end {
                if lo.is_none_or(|l| &y >= l) && hi.is_none_or(|h| &y <= h) {
                    cands.push(y.clone());
                }
                y += 1;
            }
        }
    }
    if cands.is_empty() {
        cands.push(anchor);
    }
    let mut best: Option<(Rat, BigInt)> = None;
    for x in cands {
        let v = p.eval_int(&x);
        if best.as_ref().is_none_or(|(bv, bx)| v < *bv || (v == *bv && x < *bx)) {
            best = Some((v, x));
        }
    }
    let (value, x) = best.unwrap();
    Ok(UnivariateOutcome::Optimal { x, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn quadratic_with_tie() {
        let p = UniPoly::from_i64(&[0, -3, 1]);
        let r = minimize_univariate(&p, Some(&b(0)), Some(&b(10))).unwrap();
        assert_eq!(r, UnivariateOutcome::Optimal { x: b(1), value: rat(-2, 1) });
    }

    #[test]
    fn decreasing_line_unbounded() {
        let p = UniPoly::from_i64(&[0, -1]);
        let r = minimize_univariate(&p, Some(&b(0)), None).unwrap();
        assert_eq!(r, UnivariateOutcome::Unbounded { x: b(0), dir: 1 });
    }

    #[test]
    fn cubic_on_range() {
        let p = UniPoly::from_i64(&[0, -6, 0, 1]);
        let r = minimize_univariate(&p, Some(&b(-4)), Some(&b(4))).unwrap();
        assert_eq!(r, UnivariateOutcome::Optimal { x: b(-4), value: rat(-40, 1) });
    }

    #[test]
    fn empty_range_rejected() {
        let p = UniPoly::from_i64(&[1]);
        assert_eq!(minimize_univariate(&p, Some(&b(2)), Some(&b(1))), Err(Error::EmptyInterval));
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_scan(
            c in prop::collection::vec(-9i64..=9, 1..6),
            lo in -15i64..=15, len in 0i64..20,
        ) {
            let p = UniPoly::from_i64(&c);
            let hi = lo + len;
            let brute = (lo..=hi)
                .map(|x| (p.eval_int(&b(x)), b(x)))
                .min()
                .unwrap();
            let got = minimize_univariate(&p, Some(&b(lo)), Some(&b(hi))).unwrap();
            prop_assert_eq!(got, UnivariateOutcome::Optimal { x: brute.1, value: brute.0 });
        }
    }
}
