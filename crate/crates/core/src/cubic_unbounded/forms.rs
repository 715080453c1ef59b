use crate::error::{Error, Result};
use crate::exactmath::{isolate_roots_in, rat_abs, refine_root, BiPoly, Rat, RootInterval, Sign, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Real factorization shape of a binary cubic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicFormType {
    /// Three distinct real linear factors.
    ThreeLines,
    /// `h = (a1 x + b1 y)^2 (a2 x + b2 y)` with distinct factors.
    DoubleLine { a1: Rat, b1: Rat, a2: Rat, b2: Rat },
    /// `h = d (a1 x + b1 y)^3`.
    TripleLine { a1: Rat, b1: Rat, d: Rat },
    /// One real linear factor times an irreducible quadratic.
    LineTimesIrreducible,
}

fn cubic_discriminant(c: &[Rat; 4]) -> Rat {
    let [c0, c1, c2, c3] = c;
    let k = |n: i64| Rat::from_integer(BigInt::from(n));
    c1 * c1 * c2 * c2 - k(4) * c1 * c1 * c1 * c3 - k(4) * c0 * c2 * c2 * c2 - k(27) * c0 * c0 * c3 * c3
        + k(18) * c0 * c1 * c2 * c3
}

fn by_sign(d: &Rat, zero: impl FnOnce() -> CubicFormType) -> CubicFormType {
    match Sign::of_rat(d) {
        Sign::Positive => CubicFormType::ThreeLines,
        Sign::Negative => CubicFormType::LineTimesIrreducible,
        Sign::Zero => zero(),
    }
}

/// Classifies `h = c0 x^3 + c1 x^2 y + c2 x y^2 + c3 y^3` by discriminants, recovering the
/// rational repeated factor when there is one.
pub fn classify_cubic_form(h: &BiPoly) -> Result<CubicFormType> {
    if h.is_zero() || !h.is_homogeneous() || h.degree() != 3 {
        return Err(Error::NotCubicForm);
    }
    let c: [Rat; 4] = std::array::from_fn(|j| h.coeff(3 - j as u32, j as u32));
    let [c0, c1, c2, c3] = c.clone();
    let two = Rat::from_integer(2.into());
    let (one, zero) = (Rat::one(), Rat::zero());
    if c3.is_zero() {
        // h = x (c0 x^2 + c1 x y + c2 y^2)
        if c2.is_zero() {
            return Ok(if c1.is_zero() {
                CubicFormType::TripleLine { a1: one, b1: zero, d: c0 }
            } else {
                CubicFormType::DoubleLine { a1: one, b1: zero, a2: c0, b2: c1 }
            });
        }
        let d2 = &c1 * &c1 - Rat::from_integer(4.into()) * &c0 * &c2;
        return Ok(by_sign(&d2, || CubicFormType::DoubleLine {
            a1: &c1 / (&two * &c2),
            b1: one,
            a2: c2.clone(),
            b2: zero,
        }));
    }
    let d3 = cubic_discriminant(&c);
    Ok(by_sign(&d3, || {
        if c0.is_zero() {
            // h = y (c1 x^2 + c2 x y + c3 y^2)
            if c1.is_zero() {
                return if c2.is_zero() {
                    CubicFormType::TripleLine { a1: zero, b1: one, d: c3 }
                } else {
                    CubicFormType::DoubleLine { a1: zero, b1: one, a2: c2, b2: c3 }
                };
            }
            return CubicFormType::DoubleLine { a1: one, b1: &c2 / (&two * &c1), a2: zero, b2: c1 };
        }
        let g = UniPoly::new(vec![c3.clone(), c2.clone(), c1.clone(), c0.clone()]);
        let t0 = -&c1 / (Rat::from_integer(3.into()) * &c0);
        if g.eval(&t0).is_zero() {
            return CubicFormType::TripleLine { a1: one, b1: -t0, d: c0 };
        }
        let common = UniPoly::gcd(&g, &g.derivative());
        let r = -common.coeff(0) / common.coeff(1);
        let square = UniPoly::new(vec![-r.clone(), one.clone()]).pow(2);
        let co = g.div_rem(&square).0;
        CubicFormType::DoubleLine { a1: one, b1: -r, a2: co.coeff(1), b2: co.coeff(0) }
    }))
}

/// Coefficients of `f(x + lambda r) = h(r) lambda^3 + g2(x) lambda^2 + g1(x) lambda + f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDecomposition {
    pub h_of_r: Rat,
    pub g2: BiPoly,
    pub g1: BiPoly,
    pub base: BiPoly,
}

/// Expansion of a cubic along a fixed direction, by repeated directional derivatives.
pub fn ray_decompose(f: &BiPoly, r: &(BigInt, BigInt)) -> RayDecomposition {
    let (rx, ry) = (Rat::from_integer(r.0.clone()), Rat::from_integer(r.1.clone()));
    let along = |p: &BiPoly| &p.dx().scale(&rx) + &p.dy().scale(&ry);
    let d1 = along(f);
    let d2 = along(&d1);
    let d3 = along(&d2);
    RayDecomposition {
        h_of_r: d3.coeff(0, 0) / Rat::from_integer(6.into()),
        g2: d2.scale(&Rat::new(1.into(), 2.into())),
        g1: d1,
        base: f.clone(),
    }
}

/// Lower bound of `p` on `|x - c| <= w` from the Taylor expansion at `c`.
fn taylor_floor(p: &UniPoly, c: &Rat, w: &Rat) -> Rat {
    let shifted = p.compose_affine(&Rat::one(), c);
    let mut bound = shifted.coeff(0);
    let mut wk = Rat::one();
    for k in 1..shifted.coeffs().len() {
        wk *= w;
        bound -= rat_abs(&shifted.coeff(k)) * &wk;
    }
    bound
}

/// Positive `m <= min p` on `[0, 1]` for a polynomial positive there.
pub fn positive_floor_on_segment(p: &UniPoly) -> Result<Rat> {
    let (zero, one) = (Rat::zero(), Rat::one());
    if p.is_zero() {
        return Err(Error::NotPositive);
    }
    let eps = Rat::new(BigInt::one(), BigInt::from(64));
    if !isolate_roots_in(p, &zero, &one, &eps)?.is_empty() || !p.eval(&zero).is_positive() {
        return Err(Error::NotPositive);
    }
    let mut m = std::cmp::min(p.eval(&zero), p.eval(&one));
    let dp = p.derivative();
    if dp.degree().unwrap_or(0) == 0 {
        return Ok(m);
    }
    for iv in isolate_roots_in(&dp, &zero, &one, &eps)? {
        let mut iv: RootInterval = iv;
        loop {
            let lo = std::cmp::max(iv.lo.clone(), zero.clone());
            let hi = std::cmp::min(iv.hi.clone(), one.clone());
            let c = (&lo + &hi) / Rat::from_integer(2.into());
            let w = (&hi - &lo) / Rat::from_integer(2.into());
            let b = taylor_floor(p, &c, &w);
            if b.is_positive() {
                m = std::cmp::min(m, b);
                break;
            }
            let target = iv.width() / Rat::from_integer(4.into());
            if target.is_zero() {
                m = std::cmp::min(m, p.eval(&c));
                break;
            }
            iv = refine_root(&dp, &iv, &target);
        }
    }
    Ok(m)
}
