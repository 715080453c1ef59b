//! Exact scalars, polynomials, real-root isolation and root bounds.

mod bipoly;
mod roots;
mod unipoly;

pub use bipoly::{substitute_affine, BiPoly, IntEvaluator};
pub use roots::{
    approx_sqrt, isolate_roots, isolate_roots_in, rational_root, refine_root, root_bounds, sign_on_interval,
    simplest_between, RootInterval,
};
pub use unipoly::{is_zero_poly, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rat(r: &Rat) -> Sign {
        Self::of_int(r.numer())
    }

    pub fn of_int(i: &BigInt) -> Sign {
        match i.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match self.as_i8() * other.as_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn neg(self) -> Sign {
        self.mul(Sign::Negative)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rat) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// True when `r` lies in Z + 1/2.
pub fn is_half_integer(r: &Rat) -> bool {
    *r.denom() == BigInt::from(2)
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

pub fn max_rat(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_rat(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Sign of `a + b*sqrt(d)` for `d >= 0`, decided without irrationals.
pub fn sign_surd(a: &Rat, b: &Rat, d: &Rat) -> Sign {
    let sa = Sign::of_rat(a);
    let sb = if d.is_zero() { Sign::Zero } else { Sign::of_rat(b) };
    match (sa, sb) {
        (Sign::Zero, s) | (s, Sign::Zero) => s,
        (x, y) if x == y => x,
        _ => {
            let lhs = a * a;
            let rhs = b * b * d;
            let c = Sign::from_ordering(lhs.cmp(&rhs));
            c.mul(sa)
        }
    }
}

/// Least common multiple of the denominators.
pub fn lcm_denoms<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l
}

pub fn gcd_ints<'a, I: IntoIterator<Item = &'a BigInt>>(it: I) -> BigInt {
    let mut g = BigInt::zero();
    for v in it {
        g = g.gcd(v);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_of_negative_fraction() {
        assert_eq!(floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(ceil(&rat(6, 3)), BigInt::from(2));
    }

    #[test]
    fn surd_sign_cases() {
        // 1 - sqrt(2) < 0, 2 - sqrt(2) > 0, -3 + 2 sqrt(2) < 0
        assert_eq!(sign_surd(&rat(1, 1), &rat(-1, 1), &rat(2, 1)), Sign::Negative);
        assert_eq!(sign_surd(&rat(2, 1), &rat(-1, 1), &rat(2, 1)), Sign::Positive);
        assert_eq!(sign_surd(&rat(-3, 1), &rat(2, 1), &rat(2, 1)), Sign::Negative);
        assert_eq!(sign_surd(&rat(-2, 1), &rat(1, 1), &rat(4, 1)), Sign::Zero);
    }

    #[test]
    fn half_integer_detection() {
        assert!(is_half_integer(&rat(-3, 2)));
        assert!(!is_half_integer(&rat(1, 1)));
    }
}
