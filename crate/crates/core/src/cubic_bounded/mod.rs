//! Exact minimization of cubic polynomials over the lattice points of a bounded polygon.

mod branches;
mod builder;
mod frame;

pub use branches::{branch_analysis, BranchInterval, BranchReport, Curvature};

use crate::error::{Error, Result};
use crate::exactmath::{
    isolate_roots, rat_abs, rational_root, refine_root, simplest_between, substitute_affine, BiPoly, Rat, UniPoly,
};
use crate::lattice2d::{ilp_min_linear, Polyhedron2, Row};
use crate::outcome::SolveOutcome;
use crate::regions::{box_radius, lex_first_at_or_below, minimize_by_bisection, DivisionDescription, SublevelOracle};
use frame::Frame;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `f(x, y) = sum_i slices[i](x) y^i`, possibly after swapping the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSlices {
    pub slices: [UniPoly; 4],
    pub deg_y: u32,
    pub deg_x: u32,
    pub swapped: bool,
    pub poly: BiPoly,
}

impl YSlices {
    /// Slices of `f` as given, without reorienting.
    pub fn new(f: &BiPoly) -> Result<YSlices> {
        if f.degree() > 3 {
            return Err(Error::DegreeTooHigh(f.degree()));
        }
        let mut v = f.y_slices();
        v.resize(4, UniPoly::zero());
        let slices = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()];
        Ok(YSlices { slices, deg_y: f.deg_y(), deg_x: f.deg_x(), swapped: false, poly: f.clone() })
    }

    pub fn f(&self, i: usize) -> &UniPoly {
        &self.slices[i]
    }
}

/// Slices of `f`, or of `f` with the variables swapped when that makes `deg_x >= deg_y`.
pub fn slice_and_orient(f: &BiPoly) -> Result<YSlices> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh(f.degree()));
    }
    if f.deg_y() > f.deg_x() {
        let mut s = YSlices::new(&f.swap_xy())?;
        s.swapped = true;
        Ok(s)
    } else {
        YSlices::new(f)
    }
}

fn require_deg(s: &YSlices, d: u32) -> Result<()> {
    if s.deg_y == d {
        Ok(())
    } else {
        Err(Error::DegenerateShape(format!("expected degree {d} in y, found {}", s.deg_y)))
    }
}

/// Division description for `deg_y = 1` on `[-R, R]^2`.
pub fn dd_degy1(s: &YSlices, omega: &Rat, radius: &BigInt) -> Result<DivisionDescription> {
    require_deg(s, 1)?;
    builder::build(&s.slices, omega, &Frame::identity(radius))
}

/// Division description for `deg_y = 2` on `[-R, R]^2`.
pub fn dd_degy2(s: &YSlices, omega: &Rat, radius: &BigInt) -> Result<DivisionDescription> {
    require_deg(s, 2)?;
    builder::build(&s.slices, omega, &Frame::identity(radius))
}

/// Sheared approximation of a polynomial with a `y^3` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shear {
    /// Slope of the shear `(x, y) -> (x, y - slope * x)`.
    pub slope: Rat,
    /// Whether `slope` is an exact root of the cubic direction polynomial.
    pub exact: bool,
    /// `f - C(slope) x^3`, which differs from `f` by at most `1/4` on the box.
    pub approx: BiPoly,
    /// `approx(u, slope * u + v)`, of degree at most 2 in `u`.
    pub sheared: BiPoly,
}

/// Shear making the cubic part vanish along the first axis, accurate to `1/4` on `[-R, R]^2`.
pub fn shear_for(f: &BiPoly, radius: &BigInt) -> Result<Shear> {
    if f.deg_y() != 3 || f.degree() != 3 {
        return Err(Error::DegenerateShape("expected a y^3 term".into()));
    }
    let dir = UniPoly::new((0..4).map(|j| f.coeff(3 - j, j)).collect());
    let ivs = isolate_roots(&dir, &Rat::one())?;
    let exact = ivs.iter().find_map(|iv| rational_root(&dir, iv));
    let (slope, is_exact) = match exact {
        Some(a) => (a, true),
        None => {
            let r3 = Rat::from_integer(num_traits::pow(radius.clone(), 3));
            let quarter = Rat::new(BigInt::one(), BigInt::from(4));
            let mut iv = ivs[0].clone();
            loop {
                let a = simplest_between(&iv.lo, &iv.hi);
                if rat_abs(&dir.eval(&a)) * &r3 <= quarter {
                    break (a, false);
                }
                let w = iv.width() / Rat::from_integer(2.into());
                iv = refine_root(&dir, &iv, &w);
            }
        }
    };
    let lead = dir.eval(&slope);
    let mut approx = f.clone();
    approx.add_term(3, 0, &-lead);
    let (one, zero) = (Rat::one(), Rat::zero());
    let sheared = substitute_affine(&approx, &one, &zero, &slope, &one, &zero, &zero);
    Ok(Shear { slope, exact: is_exact, approx, sheared })
}

/// Division description for `deg_y = 3` on `[-R, R]^2`, built on a sheared approximation.
pub fn dd_degy3(s: &YSlices, omega: &Rat, radius: &BigInt) -> Result<DivisionDescription> {
    require_deg(s, 3)?;
    let sh = shear_for(&s.poly, radius)?;
    // In the frame s = y - slope x, t = x the sheared polynomial has slices in t.
    let slices = sh.sheared.swap_xy().y_slices();
    builder::build(&slices, omega, &Frame::shear(&sh.slope, radius))
}

/// Division description of `f` at level `omega` on `[-R, R]^2`, in the coordinates of `f`.
pub fn cubic_division(f: &BiPoly, omega: &Rat, radius: &BigInt) -> Result<DivisionDescription> {
    let s = slice_and_orient(f)?;
    let dd = dd_for(&s, omega, radius)?;
    Ok(if s.swapped { dd.swapped() } else { dd })
}

fn dd_for(s: &YSlices, omega: &Rat, radius: &BigInt) -> Result<DivisionDescription> {
    match s.deg_y {
        1 => dd_degy1(s, omega, radius),
        2 => dd_degy2(s, omega, radius),
        3 => dd_degy3(s, omega, radius),
        d => Err(Error::DegenerateShape(format!("no division description for degree {d} in y"))),
    }
}

/// Exact minimum when the objective depends on `x` only.
pub fn solve_degy0(s: &YSlices, p: &Polyhedron2) -> Result<SolveOutcome> {
    require_deg(s, 0)?;
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    let f0 = s.f(0);
    let lex_first = ilp_min_linear(p, &(Rat::one(), Rat::zero()));
    let Some((xmin, _)) = lex_first.point().cloned() else {
        return Ok(SolveOutcome::Infeasible);
    };
    let (xmax, _) = ilp_min_linear(p, &(-Rat::one(), Rat::zero())).point().cloned().expect("nonempty");
    let mut cands: Vec<BigInt> = vec![xmin.clone(), xmax.clone()];
    let d = f0.derivative();
    let mut blocked: Vec<BigInt> = Vec::new();
    if !d.is_zero() && !d.is_constant() {
        for iv in isolate_roots(&d, &Rat::new(BigInt::one(), BigInt::from(4)))? {
            let mut k = crate::exactmath::floor(&iv.lo);
            while Rat::from_integer(k.clone()) <= iv.hi {
                if k >= xmin && k <= xmax {
                    blocked.push(k.clone());
                }
                k += 1;
            }
        }
    }
    blocked.sort();
    blocked.dedup();
    cands.extend(blocked.iter().cloned());
    let mut gaps: Vec<(BigInt, BigInt)> = Vec::new();
    let mut start = xmin.clone();
    for k in &blocked {
        if k > &start {
            gaps.push((start.clone(), k - 1));
        }
        start = k + 1;
    }
    if start <= xmax {
        gaps.push((start, xmax.clone()));
    }
    for (a, b) in gaps {
        let strip = p.with_rows([
            Row::new(Rat::one(), Rat::zero(), Rat::from_integer(b)),
            Row::new(-Rat::one(), Rat::zero(), -Rat::from_integer(a)),
        ]);
        for dir in [Rat::one(), -Rat::one()] {
            if let Some((x, _)) = ilp_min_linear(&strip, &(dir, Rat::zero())).point() {
                cands.push(x.clone());
            }
        }
    }
    let mut best = SolveOutcome::Infeasible;
    for x in cands {
        if let Some((ylo, _)) = p.int_column(&x) {
            let v = f0.eval_int(&x);
            best = best.merge(SolveOutcome::optimal((x, ylo), v));
        }
    }
    Ok(best)
}

/// Exact minimum of an integer cubic over the lattice points of a bounded polygon.
pub fn solve_cubic_bounded(f: &BiPoly, p: &Polyhedron2) -> Result<SolveOutcome> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh(f.degree()));
    }
    if !f.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    let s = slice_and_orient(f)?;
    let q = if s.swapped { p.swapped() } else { p.clone() };
    let out = if s.deg_y == 0 {
        solve_degy0(&s, &q)?
    } else {
        let radius = box_radius(&q)?;
        minimize_by_bisection(&q, &s.poly, |omega| dd_for(&s, omega, &radius))?
    };
    let out = if s.swapped { out.swapped() } else { out };
    match out {
        SolveOutcome::Optimal { value, .. } => {
            let oracle = SublevelOracle::new(f, value.clone())?;
            match lex_first_at_or_below(p, &oracle, &value)? {
                Some(pt) => Ok(SolveOutcome::optimal(pt, value)),
                None => Err(Error::Verification("optimal value has no witness".into())),
            }
        }
        other => Ok(other),
    }
}

#[cfg(test)]
mod tests;
