//! Division descriptions of sublevel sets, lattice feasibility inside them, and the bisection
//! driver that turns sublevel feasibility into exact minimization.

mod oracle;
mod stats;
mod univariate;

pub use oracle::{ColumnOracle, SublevelOracle};
pub use stats::{current_stats, reset_stats, SolveStats};
pub(crate) use stats::note_pieces;
pub use univariate::{minimize_univariate, sign_at_infinity, UnivariateOutcome};

use crate::error::{Error, Result};
use crate::exactmath::{half, BiPoly, Rat};
use crate::lattice2d::{double_area, integer_hull_bounded, LatticeLine, Polyhedron2};
use crate::outcome::{IntPoint, SolveOutcome};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Cover of a box by pieces on which the sublevel set (convex side) or the strict superlevel
/// set (concave side) is convex, plus lines holding the remaining lattice points.
#[derive(Clone, Debug, Default)]
pub struct DivisionDescription {
    pub convex_side: Vec<Polyhedron2>,
    pub concave_side: Vec<Polyhedron2>,
    pub lines: Vec<LatticeLine>,
    pub bounds: Polyhedron2,
}

impl DivisionDescription {
    pub fn new(bounds: Polyhedron2) -> Self {
        DivisionDescription { bounds, ..Default::default() }
    }

    /// Adds a piece unless it has no lattice point worth visiting.
    pub fn push_convex(&mut self, p: Polyhedron2) {
        if !p.is_empty() {
            self.convex_side.push(p);
        }
    }

    pub fn push_concave(&mut self, p: Polyhedron2) {
        if !p.is_empty() {
            self.concave_side.push(p);
        }
    }

    pub fn push_line(&mut self, l: LatticeLine) {
        if !self.lines.contains(&l) {
            self.lines.push(l);
        }
    }

    pub fn extend(&mut self, other: DivisionDescription) {
        self.convex_side.extend(other.convex_side);
        self.concave_side.extend(other.concave_side);
        for l in other.lines {
            self.push_line(l);
        }
    }

    /// Whether some piece or line holds the lattice point.
    pub fn covers(&self, x: &BigInt, y: &BigInt) -> bool {
        self.convex_side.iter().chain(&self.concave_side).any(|p| p.contains_int(x, y))
            || self.lines.iter().any(|l| l.contains_int(x, y))
    }

    /// Image under `(x, y) -> (y, x)`.
    pub fn swapped(&self) -> DivisionDescription {
        DivisionDescription {
            convex_side: self.convex_side.iter().map(Polyhedron2::swapped).collect(),
            concave_side: self.concave_side.iter().map(Polyhedron2::swapped).collect(),
            lines: self.lines.iter().map(|l| LatticeLine { a: l.b.clone(), b: l.a.clone(), c: l.c.clone() }).collect(),
            bounds: self.bounds.swapped(),
        }
    }

    /// Image under an invertible affine map whose inverse is `(x, y) -> minv * (x, y) + oinv`.
    pub fn map_affine(
        &self,
        minv: &[[Rat; 2]; 2],
        oinv: &[Rat; 2],
        bounds: Polyhedron2,
    ) -> Result<DivisionDescription> {
        let mut dd = DivisionDescription::new(bounds);
        for p in &self.convex_side {
            dd.push_convex(p.pullback(minv, oinv));
        }
        for p in &self.concave_side {
            dd.push_concave(p.pullback(minv, oinv));
        }
        for l in &self.lines {
            let (a, b, c) = (Rat::from_integer(l.a.clone()), Rat::from_integer(l.b.clone()), Rat::from_integer(l.c.clone()));
            let na = &a * &minv[0][0] + &b * &minv[1][0];
            let nb = &a * &minv[0][1] + &b * &minv[1][1];
            let nc = &c - &a * &oinv[0] - &b * &oinv[1];
            dd.push_line(LatticeLine::from_rat(&na, &nb, &nc)?);
        }
        Ok(dd)
    }
}

fn int_x_range(p: &Polyhedron2) -> Result<Option<(BigInt, BigInt)>> {
    let Some((lo, hi)) = p.x_range() else {
        return Ok(None);
    };
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::UnboundedRegion);
    };
    let (lo, hi) = (crate::exactmath::ceil(&lo), crate::exactmath::floor(&hi));
    Ok(if lo <= hi { Some((lo, hi)) } else { None })
}

/// Lattice point of `p` outside the convex set given by `member`, found among the vertices of
/// the integer hull in decreasing lexicographic order.
pub fn point_outside_convex<F>(p: &Polyhedron2, member: F) -> Result<Option<IntPoint>>
where
    F: Fn(&BigInt, &BigInt) -> bool,
{
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    let mut hull = integer_hull_bounded(p)?;
    hull.sort();
    Ok(hull.into_iter().rev().find(|(x, y)| !member(x, y)))
}

/// Lattice point of `p` with `f <= omega`, the lexicographically smallest one.
pub fn point_inside_convex_sublevel(p: &Polyhedron2, oracle: &SublevelOracle) -> Result<Option<IntPoint>> {
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    let Some((lo, hi)) = int_x_range(p)? else {
        return Ok(None);
    };
    let mut k = lo;
    while k <= hi {
        if let Some((ylo, yhi)) = p.int_column(&k) {
            if let Some(y) = oracle.first_in_column(&k, &ylo, &yhi) {
                return Ok(Some((k, y)));
            }
        }
        k += 1;
    }
    Ok(None)
}

/// Minimum of `f` along the lattice points of `line` inside `p`.
pub fn solve_on_line(f: &BiPoly, line: &LatticeLine, p: &Polyhedron2) -> Result<SolveOutcome> {
    let Some((base, dir, lo, hi)) = line.lattice_range(p) else {
        return Ok(SolveOutcome::Infeasible);
    };
    let g = f.along_line(
        &Rat::from_integer(base.0.clone()),
        &Rat::from_integer(base.1.clone()),
        &Rat::from_integer(dir.0.clone()),
        &Rat::from_integer(dir.1.clone()),
    );
    let at = |t: &BigInt| (&base.0 + t * &dir.0, &base.1 + t * &dir.1);
    Ok(match minimize_univariate(&g, lo.as_ref(), hi.as_ref())? {
        UnivariateOutcome::Optimal { x, value } => SolveOutcome::optimal(at(&x), value),
        UnivariateOutcome::Unbounded { x, dir: s } => {
            let ray = if s > 0 { dir.clone() } else { (-&dir.0, -&dir.1) };
            SolveOutcome::Unbounded { point: at(&x), ray }
        }
    })
}

/// Lattice point of the box (intersected with `within`) lying in the sublevel set, or None.
pub fn feasible_in_division_within(
    dd: &DivisionDescription,
    oracle: &SublevelOracle,
    within: &Polyhedron2,
) -> Result<Option<IntPoint>> {
    let clip = dd.bounds.intersect(within);
    for piece in &dd.convex_side {
        if let Some(pt) = point_inside_convex_sublevel(&piece.intersect(&clip), oracle)? {
            return Ok(Some(pt));
        }
    }
    for piece in &dd.concave_side {
        let q = piece.intersect(&clip);
        if let Some(pt) = point_outside_convex(&q, |x, y| !oracle.contains(x, y))? {
            return Ok(Some(pt));
        }
    }
    for line in &dd.lines {
        if let SolveOutcome::Optimal { point, value } = solve_on_line(oracle.f(), line, &clip)? {
            if value <= oracle.omega {
                return Ok(Some(point));
            }
        }
    }
    Ok(None)
}

/// Lattice point of the box lying in the sublevel set, or None.
pub fn feasible_in_division(dd: &DivisionDescription, oracle: &SublevelOracle) -> Result<Option<IntPoint>> {
    feasible_in_division_within(dd, oracle, &Polyhedron2::whole_plane())
}

/// Lexicographically smallest lattice point of bounded `p` with `f <= level`.
pub fn lex_first_at_or_below(p: &Polyhedron2, oracle: &SublevelOracle, level: &Rat) -> Result<Option<IntPoint>> {
    point_inside_convex_sublevel(p, &oracle.at_level(level.clone()))
}

/// Smallest integer radius `R >= 1` with `p` inside `[-R, R]^2`.
pub fn box_radius(p: &Polyhedron2) -> Result<BigInt> {
    let r = p.bounding_radius().ok_or(Error::UnboundedRegion)?;
    Ok(if r.is_zero() { BigInt::one() } else { r })
}

fn degenerate_line(p: &Polyhedron2) -> Option<Result<LatticeLine>> {
    let v = p.vertices();
    if v.len() >= 3 && !double_area(&v).is_zero() {
        return None;
    }
    match v.len() {
        0 => None,
        1 => Some(LatticeLine::from_rat(&Rat::one(), &Rat::zero(), &v[0].0)),
        _ => Some(LatticeLine::through(&v[0], &v[1])),
    }
}

/// Exact minimum of integer-coefficient `f` over the lattice points of bounded `p`, by bisection
/// on half-integer levels using division descriptions from `dd_builder`.
pub fn minimize_by_bisection<B>(p: &Polyhedron2, f: &BiPoly, dd_builder: B) -> Result<SolveOutcome>
where
    B: Fn(&Rat) -> Result<DivisionDescription>,
{
    if !f.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    if !p.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    if p.is_empty() {
        return Ok(SolveOutcome::Infeasible);
    }
    if let Some(line) = degenerate_line(p) {
        return solve_on_line(f, &line?, p);
    }
    let r = box_radius(p)?;
    let bound = f.coeff_norm1() * Rat::from_integer(num_traits::pow(r, f.degree() as usize));
    let oracle = SublevelOracle::new(f, Rat::zero())?;
    let mut lo = -&bound - half();
    let mut hi = &bound + half();
    let mut found = false;
    while &hi - &lo > Rat::one() {
        let steps = ((&hi - &lo) * half()).floor();
        let mid = &lo + steps;
        let level = oracle.at_level(mid.clone());
        let dd = dd_builder(&mid)?;
        stats::note_step();
        stats::note_division(&dd);
        match feasible_in_division_within(&dd, &level, p)? {
            Some((x, y)) => {
                debug_assert!(level.contains(&x, &y) && p.contains_int(&x, &y));
                let v = Rat::from_integer(oracle.value(&x, &y)) + half();
                hi = if v < mid { v } else { mid };
                found = true;
            }
            None => lo = mid,
        }
    }
    if !found {
        let level = oracle.at_level(hi.clone());
        let dd = dd_builder(&hi)?;
        stats::note_step();
        stats::note_division(&dd);
        if feasible_in_division_within(&dd, &level, p)?.is_none() {
            return Ok(SolveOutcome::Infeasible);
        }
    }
    let value = &hi - half();
    match lex_first_at_or_below(p, &oracle, &value)? {
        Some(pt) => Ok(SolveOutcome::optimal(pt, value)),
        None => Err(Error::Verification("optimal level has no witness".into())),
    }
}

/// Reference minimizer used by tests: scans every lattice point of bounded `p`.
#[cfg(test)]
pub(crate) fn brute_minimum(f: &BiPoly, p: &Polyhedron2) -> SolveOutcome {
    let (lo, hi) = match int_x_range(p).unwrap() {
        Some(r) => r,
        None => return SolveOutcome::Infeasible,
    };
    let ev = f.int_evaluator();
    let mut best = SolveOutcome::Infeasible;
    let mut k = lo;
    while k <= hi {
        if let Some((a, b)) = p.int_column(&k) {
            let mut y = a;
            while y <= b {
                let v = Rat::from_integer(ev.eval(&k, &y));
                best = best.merge(SolveOutcome::optimal((k.clone(), y.clone()), v));
                y += 1;
            }
        }
        k += 1;
    }
    best
}

#[cfg(test)]
/// Test helper: every lattice point of the box is covered, pieces look convex on sampled pairs, and
/// feasibility through the description matches enumeration.
pub(crate) fn assert_division_valid(f: &BiPoly, omega: &Rat, r: i64, dd: &DivisionDescription) {
    let ev = f.int_evaluator();
    let inside = |x: i64, y: i64| Rat::from_integer(ev.eval_i64(x, y)) <= *omega;
    let mut any = false;
    for x in -r..=r {
        for y in -r..=r {
            assert!(dd.covers(&BigInt::from(x), &BigInt::from(y)), "({x},{y}) uncovered for {f} at {omega}");
            any |= inside(x, y);
        }
    }
    for (pieces, want) in [(&dd.convex_side, true), (&dd.concave_side, false)] {
        for p in pieces {
            let pts: Vec<(i64, i64)> = (-r..=r)
                .flat_map(|x| (-r..=r).map(move |y| (x, y)))
                .filter(|(x, y)| p.contains_int(&BigInt::from(*x), &BigInt::from(*y)) && inside(*x, *y) == want)
                .collect();
            for (i, a) in pts.iter().enumerate().step_by(3) {
                for c in pts.iter().skip(i).step_by(5) {
                    if (a.0 + c.0) % 2 == 0 && (a.1 + c.1) % 2 == 0 {
                        let m = ((a.0 + c.0) / 2, (a.1 + c.1) / 2);
                        assert_eq!(inside(m.0, m.1), want, "midpoint of {a:?},{c:?} in {f} at {omega}");
                    }
                }
            }
        }
    }
    let oracle = SublevelOracle::new(f, omega.clone()).unwrap();
    let got = feasible_in_division(dd, &oracle).unwrap();
    assert_eq!(got.is_some(), any, "feasibility of {f} at {omega}");
    if let Some((x, y)) = got {
        assert!(oracle.contains(&x, &y));
    }
}
