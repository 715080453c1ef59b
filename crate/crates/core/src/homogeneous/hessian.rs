use crate::error::{Error, Result};
use crate::exactmath::{substitute_affine, BiPoly, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of the Hessian bordered by the gradient:
/// `-fx^2 fyy + 2 fx fy fxy - fy^2 fxx`.
pub fn bordered_hessian_det(f: &BiPoly) -> BiPoly {
    let (fx, fy) = (f.dx(), f.dy());
    let (fxx, fyy, fxy) = (fx.dx(), fy.dy(), fx.dy());
    let a = &(&fx * &fx) * &fyy;
    let b = &(&(&fx * &fy) * &fxy).scale(&Rat::from_integer(2.into()));
    let c = &(&fy * &fy) * &fxx;
    &(b - &a) - &c
}

/// Whether `D_h = -d/(d-1) * h * det(Hessian h)` holds exactly for homogeneous `h` of degree `d >= 2`.
pub fn euler_identity_check(h: &BiPoly) -> Result<bool> {
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = h.degree();
    if d < 2 {
        return Err(Error::DegenerateShape("degree below 2".into()));
    }
    let (hx, hy) = (h.dx(), h.dy());
    let det = &(&hx.dx() * &hy.dy()) - &(&hx.dy() * &hx.dy());
    let k = Rat::new(BigInt::from(-i64::from(d)), BigInt::from(i64::from(d) - 1));
    let rhs = (h * &det).scale(&k);
    Ok(bordered_hessian_det(h) == rhs)
}

/// `f(x + t) = image(x)` with `image` homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationWitness {
    pub t: (Rat, Rat),
    pub homogeneous_image: BiPoly,
}

/// Translation making `f` homogeneous, if one exists.
///
/// The image must be the top-degree part `h`; the next-degree part of `f` then equals
/// `-(t1 hx + t2 hy)`, a linear system in `t`. Any solution is checked by full expansion.
pub fn detect_translatable(f: &BiPoly) -> Option<TranslationWitness> {
    let d = f.degree();
    let h = f.homogeneous_part(d);
    if d == 0 || f.is_homogeneous() {
        return Some(TranslationWitness { t: (Rat::zero(), Rat::zero()), homogeneous_image: h });
    }
    let next = f.homogeneous_part(d - 1);
    let (hx, hy) = (h.dx(), h.dy());
    // Row i: coefficient of x^i y^(d-1-i).
    let rows: Vec<(Rat, Rat, Rat)> = (0..d)
        .map(|i| (hx.coeff(i, d - 1 - i), hy.coeff(i, d - 1 - i), -next.coeff(i, d - 1 - i)))
        .collect();
    let t = solve_rows(&rows)?;
    let one = Rat::one();
    let zero = Rat::zero();
    let moved = substitute_affine(f, &one, &zero, &zero, &one, &t.0, &t.1);
    (moved == h).then_some(TranslationWitness { t, homogeneous_image: h })
}

/// A solution of `a t1 + b t2 = c` for all rows, when the first consistent pivot gives one.
fn solve_rows(rows: &[(Rat, Rat, Rat)]) -> Option<(Rat, Rat)> {
    for (i, (a1, b1, c1)) in rows.iter().enumerate() {
        for (a2, b2, c2) in &rows[i + 1..] {
            let det = a1 * b2 - a2 * b1;
            if !det.is_zero() {
                return Some(((c1 * b2 - c2 * b1) / &det, (a1 * c2 - a2 * c1) / &det));
            }
        }
    }
    for (a, b, c) in rows {
        if !a.is_zero() {
            return Some((c / a, Rat::zero()));
        }
        if !b.is_zero() {
            return Some((Rat::zero(), c / b));
        }
    }
    rows.iter().all(|r| r.2.is_zero()).then(|| (Rat::zero(), Rat::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_i64(t)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(bordered_hessian_det(&bp(&[(1, 2, 0), (1, 0, 2)])), bp(&[(-8, 2, 0), (-8, 0, 2)]));
        assert_eq!(bordered_hessian_det(&bp(&[(1, 3, 0), (1, 0, 3)])), bp(&[(-54, 4, 1), (-54, 1, 4)]));
        let cube = bp(&[(1, 3, 0), (3, 2, 1), (3, 1, 2), (1, 0, 3)]);
        assert!(bordered_hessian_det(&cube).is_zero());
    }

    #[test]
    fn euler_examples() {
        assert!(euler_identity_check(&bp(&[(1, 2, 0), (1, 0, 2)])).unwrap());
        assert!(euler_identity_check(&bp(&[(1, 3, 0), (1, 0, 3)])).unwrap());
        assert!(euler_identity_check(&bp(&[(1, 4, 0), (1, 0, 4)])).unwrap());
        assert_eq!(euler_identity_check(&bp(&[(1, 2, 0), (1, 0, 0)])), Err(Error::NotHomogeneous));
    }

    #[test]
    fn translation_examples() {
        // (x-1)^2 + (y-2)^2
        let f = bp(&[(1, 2, 0), (-2, 1, 0), (1, 0, 2), (-4, 0, 1), (5, 0, 0)]);
        let w = detect_translatable(&f).unwrap();
        assert_eq!(w.t, (rat(1, 1), rat(2, 1)));
        assert_eq!(w.homogeneous_image, bp(&[(1, 2, 0), (1, 0, 2)]));
        let w = detect_translatable(&bp(&[(1, 2, 1)])).unwrap();
        assert_eq!(w.t, (Rat::zero(), Rat::zero()));
        assert_eq!(detect_translatable(&bp(&[(1, 3, 0), (1, 0, 3), (1, 0, 0)])), None);
    }

    fn shifted(h: &BiPoly, t: (i64, i64), s: i64) -> BiPoly {
        // h(x - t/s)
        let (one, zero) = (Rat::one(), Rat::zero());
        substitute_affine(h, &one, &zero, &zero, &one, &rat(-t.0, s), &rat(-t.1, s))
    }

    fn homog(c: &[i64]) -> BiPoly {
        let d = c.len() as u32 - 1;
        BiPoly::from_i64(&c.iter().enumerate().map(|(i, &c)| (c, d - i as u32, i as u32)).collect::<Vec<_>>())
    }

    proptest! {
        #[test]
        fn euler_identity_random(c in prop::collection::vec(-9i64..=9, 3..8)) {
            let h = homog(&c);
            prop_assume!(!h.is_zero() && h.degree() >= 2);
            prop_assert!(euler_identity_check(&h).unwrap());
        }

        #[test]
        fn translation_recovered_and_degree_law(
            c in prop::collection::vec(-5i64..=5, 3..6), t in (-4i64..=4, -4i64..=4), s in 1i64..4,
        ) {
            let h = homog(&c);
            prop_assume!(h.degree() as usize == c.len() - 1);
            let f = shifted(&h, t, s);
            let w = detect_translatable(&f).unwrap();
            prop_assert_eq!(&w.homogeneous_image, &h);
            let d = h.degree();
            let df = bordered_hessian_det(&f);
            if !df.is_zero() {
                let wd = detect_translatable(&df).unwrap();
                prop_assert_eq!(wd.homogeneous_image.degree(), 3 * d - 4);
                prop_assert!(wd.homogeneous_image.is_homogeneous());
            }
        }

        #[test]
        fn powers_of_linear_forms_have_zero_determinant(a in -4i64..=4, b in -4i64..=4, d in 1u32..6) {
            let l = bp(&[(a, 1, 0), (b, 0, 1)]);
            prop_assert!(bordered_hessian_det(&l.pow(d)).is_zero());
        }
    }
}
