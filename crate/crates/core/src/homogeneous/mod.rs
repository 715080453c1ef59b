//! Minimization of homogeneous-translatable polynomials over bounded polygons, via the sign of
//! the bordered Hessian determinant.

mod hessian;
mod partition;

pub use hessian::{bordered_hessian_det, detect_translatable, euler_identity_check, TranslationWitness};
pub use partition::{sign_partition, SignPartition};

use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, Rat};
use crate::lattice2d::{ilp_min_linear, Polyhedron2};
use crate::outcome::SolveOutcome;
use crate::regions::{box_radius, minimize_by_bisection, DivisionDescription};
use num_bigint::BigInt;

/// Division description of `[-R, R]^2` valid at every level: quasiconvex pieces where the
/// bordered Hessian determinant is negative, quasiconcave pieces where it is positive.
pub fn quasi_division(f: &BiPoly, radius: &BigInt) -> Result<DivisionDescription> {
    let witness = detect_translatable(f).ok_or(Error::NotTranslatable)?;
    if f.degree() < 2 {
        return Err(Error::DegenerateShape("degree below 2".into()));
    }
    let det = bordered_hessian_det(f);
    let mut dd = DivisionDescription::new(Polyhedron2::square(radius));
    if det.is_zero() {
        // f is a power of an affine form: every piece off its zero line is a monotone slab.
        let sp = sign_partition(f, radius, Some(&witness))?;
        for p in sp.positive.into_iter().chain(sp.negative) {
            dd.push_convex(p);
        }
        for l in sp.lines {
            dd.push_line(l);
        }
        return Ok(dd);
    }
    let sp = sign_partition(&det, radius, None)?;
    for p in sp.negative {
        dd.push_convex(p);
    }
    for p in sp.positive {
        dd.push_concave(p);
    }
    for l in sp.lines {
        dd.push_line(l);
    }
    Ok(dd)
}

/// Exact minimum of an integer homogeneous-translatable polynomial over a bounded polygon.
pub fn solve_homogeneous_bounded(f: &BiPoly, p: &Polyhedron2) -> Result<SolveOutcome> {
    if !f.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    detect_translatable(f).ok_or(Error::NotTranslatable)?;
    if f.degree() <= 1 {
        let c = (f.coeff(1, 0), f.coeff(0, 1));
        return Ok(match ilp_min_linear(p, &c) {
            SolveOutcome::Optimal { point, .. } => {
                let v = Rat::from_integer(f.int_evaluator().eval(&point.0, &point.1));
                SolveOutcome::optimal(point, v)
            }
            other => other,
        });
    }
    let dd = quasi_division(f, &box_radius(p)?)?;
    minimize_by_bisection(p, f, |_| Ok(dd.clone()))
}

#[cfg(test)]
mod tests;
