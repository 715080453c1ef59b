//! Minimization of integer cubics over unbounded polygons: an unboundedness certificate, or an
//! exact reduction to bounded boxes and one-dimensional columns.

mod columns;
mod forms;

pub use forms::{classify_cubic_form, positive_floor_on_segment, ray_decompose, CubicFormType, RayDecomposition};

use crate::cubic_bounded::solve_cubic_bounded;
use crate::error::{Error, Result};
use crate::exactmath::{ceil, isolate_roots, rat_abs, rational_root, refine_root, substitute_affine, BiPoly, Rat, UniPoly};
use crate::lattice2d::{ilp_point, orthant_pieces, primitive_dir, Polyhedron2, RecessionCone, Row};
use crate::outcome::{IntPoint, SolveOutcome};
use crate::regions::{box_radius, lex_first_at_or_below, SublevelOracle};
use columns::{column_piece, ColumnSpan};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Outcome together with the radius of a square `[-R, R]^2` holding every optimal point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicReport {
    pub outcome: SolveOutcome,
    pub radius: Option<BigInt>,
}

/// Exact minimum of an integer cubic over the lattice points of a rational polyhedron.
pub fn solve_cubic(f: &BiPoly, p: &Polyhedron2) -> Result<SolveOutcome> {
    Ok(solve_cubic_certified(f, p)?.outcome)
}

/// [`solve_cubic`] plus the radius of a square known to contain all optimal points.
pub fn solve_cubic_certified(f: &BiPoly, p: &Polyhedron2) -> Result<CubicReport> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh(f.degree()));
    }
    if !f.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    if p.is_empty() {
        return Ok(CubicReport { outcome: SolveOutcome::Infeasible, radius: None });
    }
    if p.is_bounded() {
        let outcome = solve_cubic_bounded(f, p)?;
        return Ok(CubicReport { outcome, radius: Some(box_radius(p)?) });
    }
    if f.degree() < 3 {
        return Err(Error::Unsupported("unbounded region with an objective of degree at most 2".into()));
    }
    let h = f.homogeneous_part(3);
    let mut best = SolveOutcome::Infeasible;
    let mut radii = Vec::new();
    for piece in orthant_pieces(p) {
        if piece.is_empty() {
            continue;
        }
        for part in solve_pointed(f, &h, &piece)? {
            if matches!(part.outcome, SolveOutcome::Unbounded { .. }) {
                return Ok(CubicReport { outcome: part.outcome, radius: None });
            }
            best = best.merge(part.outcome);
            radii.push(part.radius);
        }
    }
    crate::regions::note_pieces(radii.len());
    let SolveOutcome::Optimal { value, .. } = &best else {
        return Ok(CubicReport { outcome: best, radius: None });
    };
    let mut r = BigInt::zero();
    for span in &radii {
        r = std::cmp::max(r, span.at_level(value)?);
    }
    let oracle = SublevelOracle::new(f, value.clone())?;
    let window = p.intersect(&Polyhedron2::square(&r));
    let point = lex_first_at_or_below(&window, &oracle, value)?
        .ok_or_else(|| Error::Verification("optimal value has no witness in the certified box".into()))?;
    Ok(CubicReport { outcome: SolveOutcome::optimal(point, value.clone()), radius: Some(r) })
}

enum Span {
    Fixed(BigInt),
    Columns(ColumnSpan),
}

impl Span {
    fn at_level(&self, level: &Rat) -> Result<BigInt> {
        match self {
            Span::Fixed(r) => Ok(r.clone()),
            Span::Columns(c) => c.radius(level),
        }
    }
}

struct Part {
    outcome: SolveOutcome,
    radius: Span,
}

/// Largest real root, or None for constants.
pub(crate) fn largest_root(p: &UniPoly) -> Result<Option<Rat>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    Ok(isolate_roots(p, &Rat::one())?.pop().map(|iv| iv.hi))
}

/// Unboundedness certificate from `point` along `ray`, moved along the ray to where `f` starts
/// decreasing strictly.
pub(crate) fn certify(f: &BiPoly, point: &IntPoint, ray: &IntPoint) -> Result<SolveOutcome> {
    let r = |v: &BigInt| Rat::from_integer(v.clone());
    let phi = f.along_line(&r(&point.0), &r(&point.1), &r(&ray.0), &r(&ray.1));
    if !phi.leading().is_some_and(|l| l.is_negative()) || phi.degree().unwrap_or(0) == 0 {
        return Err(Error::Verification("ray is not a descent direction".into()));
    }
    let slope = phi.derivative();
    let roots = if slope.degree().unwrap_or(0) == 0 { vec![] } else { isolate_roots(&slope, &Rat::one())? };
    let mut probes = vec![Rat::zero()];
    for iv in &roots {
        probes.extend([iv.lo.clone(), iv.hi.clone(), &iv.hi + Rat::one()]);
    }
    let rises = probes.iter().any(|t| !t.is_negative() && slope.eval(t).is_positive());
    let k = match roots.last() {
        Some(iv) if rises => std::cmp::max(ceil(&iv.hi), BigInt::zero()),
        _ => BigInt::zero(),
    };
    let point = (&point.0 + &k * &ray.0, &point.1 + &k * &ray.1);
    Ok(SolveOutcome::Unbounded { point, ray: ray.clone() })
}

fn cross(a: &IntPoint, b: &IntPoint) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn solve_pointed(f: &BiPoly, h: &BiPoly, piece: &Polyhedron2) -> Result<Vec<Part>> {
    let (r1, r2) = match piece.recession_cone() {
        RecessionCone::Zero => {
            let outcome = solve_cubic_bounded(f, piece)?;
            return Ok(vec![Part { outcome, radius: Span::Fixed(box_radius(piece)?) }]);
        }
        RecessionCone::Ray(a, b) => {
            let (outcome, span) = column_piece(f, piece, &(a, b), None)?;
            return Ok(vec![Part { outcome, radius: Span::Columns(span) }]);
        }
        RecessionCone::Cone { first, second } => (first, second),
        RecessionCone::NotPointed => return Err(Error::Verification("orthant piece is not pointed".into())),
    };
    let Some(anchor) = ilp_point(piece) else {
        return Ok(vec![]);
    };
    let sectors = match cone_signs(h, &r1, &r2)? {
        ConeSigns::Negative(dir) => {
            return Ok(vec![Part { outcome: certify(f, &anchor, &dir)?, radius: Span::Fixed(BigInt::zero()) }]);
        }
        ConeSigns::Sectors(s) => s,
    };
    let apex = apex(piece, &r1, &r2);
    let mut parts = Vec::new();
    for sector in &sectors {
        let mut sub = piece.clone();
        if sectors.len() > 1 {
            sub = sub.with_rows([left_of(&sector.lo, &apex), left_of(&neg(&sector.hi), &apex)]);
        }
        if sub.is_empty() {
            continue;
        }
        let part = match (sector.lo_zero, sector.hi_zero) {
            (false, false) => positive_sector(f, &sub, &apex, &sector.lo, &sector.hi)?,
            (true, false) => columns_part(f, &sub, &sector.lo, &sector.hi)?,
            (false, true) => columns_part(f, &sub, &sector.hi, &sector.lo)?,
            (true, true) => return Err(Error::Verification("sector with two zero rays".into())),
        };
        if matches!(part.outcome, SolveOutcome::Unbounded { .. }) {
            return Ok(vec![part]);
        }
        parts.push(part);
    }
    Ok(parts)
}

fn columns_part(f: &BiPoly, sub: &Polyhedron2, zero: &IntPoint, other: &IntPoint) -> Result<Part> {
    let (outcome, span) = column_piece(f, sub, zero, Some(other))?;
    Ok(Part { outcome, radius: Span::Columns(span) })
}

fn neg(d: &IntPoint) -> IntPoint {
    (-d.0.clone(), -d.1.clone())
}

type RatPoint = (Rat, Rat);

/// Row of `cross(d, z - apex) >= 0`.
fn left_of(d: &IntPoint, apex: &RatPoint) -> Row {
    let (dx, dy) = (Rat::from_integer(d.0.clone()), Rat::from_integer(d.1.clone()));
    Row::new(dy.clone(), -dx.clone(), &dy * &apex.0 - &dx * &apex.1)
}

/// A point `z0` with `piece` inside `z0 + cone(r1, r2)`.
fn apex(piece: &Polyhedron2, r1: &IntPoint, r2: &IntPoint) -> RatPoint {
    let v = piece.vertices();
    let base = v[0].clone();
    let c = Rat::from_integer(cross(r1, r2));
    let rr = |p: &IntPoint| (Rat::from_integer(p.0.clone()), Rat::from_integer(p.1.clone()));
    let (a, b) = (rr(r1), rr(r2));
    let crs = |p: &RatPoint, q: &RatPoint| &p.0 * &q.1 - &p.1 * &q.0;
    let mut k = Rat::zero();
    for q in &v {
        let d = (&q.0 - &base.0, &q.1 - &base.1);
        for need in [-crs(&a, &d), -crs(&d, &b)] {
            let t = need / &c;
            if t > k {
                k = t;
            }
        }
    }
    (&base.0 - &k * (&a.0 + &b.0), &base.1 - &k * (&a.1 + &b.1))
}

struct Sector {
    lo: IntPoint,
    hi: IntPoint,
    lo_zero: bool,
    hi_zero: bool,
}

enum ConeSigns {
    /// A direction of the cone along which the cubic part is negative.
    Negative(IntPoint),
    /// Counterclockwise sectors on whose interiors the cubic part is positive.
    Sectors(Vec<Sector>),
}

/// Sign pattern of the cubic part `h` on `cone(r1, r2)` (counterclockwise from `r1`).
fn cone_signs(h: &BiPoly, r1: &IntPoint, r2: &IntPoint) -> Result<ConeSigns> {
    let ev = h.int_evaluator();
    let (v1, v2) = (ev.eval(&r1.0, &r1.1), ev.eval(&r2.0, &r2.1));
    if v1.is_negative() {
        return Ok(ConeSigns::Negative(r1.clone()));
    }
    if v2.is_negative() {
        return Ok(ConeSigns::Negative(r2.clone()));
    }
    let r = |v: &BigInt| Rat::from_integer(v.clone());
    // H(mu) = h(r1 + mu r2), mu > 0 sweeps the open cone.
    let big_h = h.along_line(&r(&r1.0), &r(&r1.1), &r(&r2.0), &r(&r2.1));
    if big_h.is_zero() {
        return Err(Error::Verification("cubic part vanishes on the cone".into()));
    }
    let dir_at = |mu: &Rat| -> IntPoint {
        let (n, d) = (r(mu.numer()), r(mu.denom()));
        primitive_dir(&(&d * r(&r1.0) + &n * r(&r2.0)), &(&d * r(&r1.1) + &n * r(&r2.1)))
    };
    let mut zeros: Vec<Rat> = Vec::new();
    let mut gaps: Vec<(Rat, Rat)> = Vec::new();
    let mut prev = Rat::zero();
    let mut irrational = false;
    if big_h.degree().unwrap_or(0) > 0 {
        for iv in isolate_roots(&big_h, &Rat::new(1.into(), 4.into()))? {
            let (left, right) = match rational_root(&big_h, &iv) {
                Some(q) => {
                    if !q.is_positive() {
                        continue;
                    }
                    zeros.push(q.clone());
                    (q.clone(), q)
                }
                None => {
                    let mut iv = iv;
                    while iv.lo.is_negative() && iv.hi.is_positive() {
                        iv = refine_root(&big_h, &iv, &(iv.width() / Rat::from_integer(4.into())));
                    }
                    if !iv.lo.is_positive() {
                        continue;
                    }
                    irrational = true;
                    (iv.lo, iv.hi)
                }
            };
            gaps.push((prev.clone(), left));
            prev = right;
        }
    }
    let mut samples: Vec<Rat> = gaps.iter().map(|(a, b)| (a + b) / Rat::from_integer(2.into())).collect();
    samples.push(&prev + Rat::one());
    for mu in &samples {
        if big_h.eval(mu).is_negative() {
            return Ok(ConeSigns::Negative(dir_at(mu)));
        }
    }
    if irrational {
        return Err(Error::Verification("irrational tangent zero ray".into()));
    }
    if !zeros.is_empty() && !matches!(classify_cubic_form(h)?, CubicFormType::DoubleLine { .. }) {
        return Err(Error::Verification("interior zero ray of a form without a double line".into()));
    }
    let mut rays: Vec<(IntPoint, bool)> = vec![(r1.clone(), v1.is_zero())];
    rays.extend(zeros.iter().map(|mu| (dir_at(mu), true)));
    rays.push((r2.clone(), v2.is_zero()));
    let mut sectors = Vec::new();
    for w in rays.windows(2) {
        let ((lo, lz), (hi, hz)) = (&w[0], &w[1]);
        if *lz && *hz {
            let mid = primitive_dir(&r(&(&lo.0 + &hi.0)), &r(&(&lo.1 + &hi.1)));
            sectors.push(Sector { lo: lo.clone(), hi: mid.clone(), lo_zero: true, hi_zero: false });
            sectors.push(Sector { lo: mid, hi: hi.clone(), lo_zero: false, hi_zero: true });
        } else {
            sectors.push(Sector { lo: lo.clone(), hi: hi.clone(), lo_zero: *lz, hi_zero: *hz });
        }
    }
    Ok(ConeSigns::Sectors(sectors))
}

/// Box radius around `apex` outside of which `f` exceeds `reference` on `apex + cone(lo, hi)`,
/// where the cubic part is positive.
///
/// With `x = apex + v` and `L = |v|_inf`, along each boundary segment of the unit square inside
/// the cone `f(x) - reference >= m3 L^3 + m2 L^2 + m1 L + (f(apex) - reference)` where `m_k`
/// bound the degree-k parts from below; past its largest root every point is worse.
pub(crate) fn sector_reach(f: &BiPoly, apex: &RatPoint, lo: &IntPoint, hi: &IntPoint, reference: &Rat) -> Result<Rat> {
    let moved = substitute_affine(f, &Rat::one(), &Rat::zero(), &Rat::zero(), &Rat::one(), &apex.0, &apex.1);
    let parts: Vec<BiPoly> = (0..=3).map(|d| moved.homogeneous_part(d)).collect();
    let unit = |d: &IntPoint| {
        let m = Rat::from_integer(std::cmp::max(d.0.abs(), d.1.abs()));
        (Rat::from_integer(d.0.clone()) / &m, Rat::from_integer(d.1.clone()) / &m)
    };
    let (ea, eb) = (unit(lo), unit(hi));
    let sx = if lo.0.is_zero() { hi.0.signum() } else { lo.0.signum() };
    let sy = if lo.1.is_zero() { hi.1.signum() } else { lo.1.signum() };
    let corner: IntPoint = (sx, sy);
    let segments = if cross(lo, &corner).is_positive() && cross(&corner, hi).is_positive() {
        let c = (Rat::from_integer(corner.0.clone()), Rat::from_integer(corner.1.clone()));
        vec![(ea, c.clone()), (c, eb)]
    } else {
        vec![(ea, eb)]
    };
    let mut reach = Rat::zero();
    for (a, b) in segments {
        let (dx, dy) = (&b.0 - &a.0, &b.1 - &a.1);
        let along = |p: &BiPoly| p.along_line(&a.0, &a.1, &dx, &dy);
        let m3 = positive_floor_on_segment(&along(&parts[3]))?;
        let m2 = segment_min(&along(&parts[2]));
        let m1 = segment_min(&along(&parts[1]));
        let lower = UniPoly::new(vec![
            parts[0].coeff(0, 0) - reference,
            std::cmp::min(m1, Rat::zero()),
            std::cmp::min(m2, Rat::zero()),
            m3,
        ]);
        if let Some(root) = largest_root(&lower)? {
            if root > reach {
                reach = root;
            }
        }
    }
    Ok(reach)
}

/// Exact minimum on `[0, 1]` of a polynomial of degree at most 2.
fn segment_min(q: &UniPoly) -> Rat {
    let (zero, one) = (Rat::zero(), Rat::one());
    let mut m = std::cmp::min(q.eval(&zero), q.eval(&one));
    let a = q.coeff(2);
    if a.is_positive() {
        let s = -q.coeff(1) / (Rat::from_integer(2.into()) * &a);
        if s > zero && s < one {
            m = std::cmp::min(m, q.eval(&s));
        }
    }
    m
}

/// Lattice points of `sub` within distance `k` of `apex`, for a cheap reference value.
fn nearby_best(f: &BiPoly, sub: &Polyhedron2, apex: &RatPoint, k: i64) -> Option<Rat> {
    let ev = f.int_evaluator();
    let (cx, cy) = (ceil(&apex.0), ceil(&apex.1));
    let mut best: Option<BigInt> = None;
    for dx in -k..=k {
        for dy in -k..=k {
            let (x, y) = (&cx + dx, &cy + dy);
            if sub.contains_int(&x, &y) {
                let v = ev.eval(&x, &y);
                if best.as_ref().is_none_or(|b| &v < b) {
                    best = Some(v);
                }
            }
        }
    }
    best.map(Rat::from_integer)
}

/// Exact minimum over a piece inside `apex + cone(lo, hi)` on which the cubic part is positive.
fn positive_sector(f: &BiPoly, sub: &Polyhedron2, apex: &RatPoint, lo: &IntPoint, hi: &IntPoint) -> Result<Part> {
    let Some(anchor) = ilp_point(sub) else {
        return Ok(Part { outcome: SolveOutcome::Infeasible, radius: Span::Fixed(BigInt::zero()) });
    };
    let mut reference = f.eval_int(&anchor.0, &anchor.1);
    if let Some(v) = nearby_best(f, sub, apex, 6) {
        reference = std::cmp::min(reference, v);
    }
    let reach = sector_reach(f, apex, lo, hi, &reference)?;
    let window = Polyhedron2::rect(&(&apex.0 - &reach), &(&apex.0 + &reach), &(&apex.1 - &reach), &(&apex.1 + &reach));
    let outcome = solve_cubic_bounded(f, &sub.intersect(&window))?;
    let radius = ceil(&(std::cmp::max(rat_abs(&apex.0), rat_abs(&apex.1)) + reach));
    Ok(Part { outcome, radius: Span::Fixed(radius) })
}

#[cfg(test)]
mod tests;
