use super::branches::{Curvature, Quadratic};
use super::frame::Frame;
use crate::error::{Error, Result};
use crate::exactmath::{isolate_roots, isolate_roots_in, Rat, RootInterval, Sign, UniPoly};
use crate::lattice2d::{line_in_thin_polytope, Row};
use crate::regions::DivisionDescription;
use num_bigint::BigInt;
use num_traits::One;

fn two() -> Rat {
    Rat::from_integer(2.into())
}

fn eps(frame: &Frame, k: i64) -> Rat {
    Rat::new(BigInt::one(), &frame.grid * k)
}

fn roots_or_none(p: &UniPoly, e: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() || p.is_constant() {
        Ok(vec![])
    } else {
        isolate_roots(p, e)
    }
}

struct Builder<'a> {
    frame: &'a Frame,
    dd: DivisionDescription,
}

impl<'a> Builder<'a> {
    fn new(frame: &'a Frame) -> Self {
        Builder { frame, dd: DivisionDescription::new(frame.bounds.clone()) }
    }

    fn piece(&self, rows: Vec<Row>) -> crate::lattice2d::Polyhedron2 {
        self.frame.region(rows).intersect(&self.frame.bounds)
    }

    fn convex(&mut self, rows: Vec<Row>) {
        let p = self.piece(rows);
        self.dd.push_convex(p);
    }

    fn concave(&mut self, rows: Vec<Row>) {
        let p = self.piece(rows);
        self.dd.push_concave(p);
    }

    fn side(&mut self, rows: Vec<Row>, convex: bool) {
        if convex {
            self.convex(rows)
        } else {
            self.concave(rows)
        }
    }

    fn columns(&mut self, cols: &[Rat]) -> Result<()> {
        for g in cols {
            let l = self.frame.column(g)?;
            self.dd.push_line(l);
        }
        Ok(())
    }

    /// Columns and strips over the whole s-range for the given breakpoint intervals.
    fn split(&mut self, ivs: &[RootInterval]) -> Result<Vec<(Rat, Rat)>> {
        let (cols, strips) = self.frame.decompose(ivs, &self.frame.s_lo, &self.frame.s_hi);
        self.columns(&cols)?;
        Ok(strips)
    }
}

/// Rows of `t >= c + m (s - e)` (`above`) or `t <= c + m (s - e)`.
fn beside_line(c: &Rat, m: &Rat, e: &Rat, above: bool) -> Row {
    // t - m s >= c - m e
    let k = c - m * e;
    if above {
        Row::new(m.clone(), -Rat::one(), -k)
    } else {
        Row::new(-m.clone(), Rat::one(), k)
    }
}

/// Division description of `{sum_i slices[i](s) t^i <= omega}` in the frame.
pub(crate) fn build(slices: &[UniPoly], omega: &Rat, frame: &Frame) -> Result<DivisionDescription> {
    let mut slices: Vec<UniPoly> = slices.to_vec();
    while slices.last().is_some_and(|p| p.is_zero()) {
        slices.pop();
    }
    let g = match slices.first() {
        Some(s0) => s0 - &UniPoly::constant(omega.clone()),
        None => UniPoly::constant(-omega.clone()),
    };
    let mut b = Builder::new(frame);
    match slices.len() {
        0 | 1 => level_in_s(&mut b, &g)?,
        2 => level_linear(&mut b, &g, &slices[1])?,
        3 => level_quadratic(&mut b, &g, &slices[1], &slices[2])?,
        n => return Err(Error::DegreeTooHigh(n as u32 - 1)),
    }
    Ok(b.dd)
}

fn level_in_s(b: &mut Builder, g: &UniPoly) -> Result<()> {
    let ivs = roots_or_none(g, &eps(b.frame, 4))?;
    for (lo, hi) in b.split(&ivs)? {
        b.convex(Frame::strip_rows(&lo, &hi));
    }
    Ok(())
}

fn level_linear(b: &mut Builder, g: &UniPoly, f1: &UniPoly) -> Result<()> {
    // Numerator of the second derivative of t = -g / f1, up to the sign of f1.
    let (g1, g2) = (g.derivative(), g.derivative().derivative());
    let (h1, h2) = (f1.derivative(), f1.derivative().derivative());
    let n = &(&(f1 * &(&(g * &h2) + &(&g1 * &h1).scale(&two()))) - &(&(g * &h1) * &h1).scale(&two()))
        - &(&(f1 * f1) * &g2);
    let e = eps(b.frame, 4);
    let mut ivs = roots_or_none(f1, &e)?;
    ivs.extend(roots_or_none(&n, &e)?);
    for (lo, hi) in b.split(&ivs)? {
        let mid = (&lo + &hi) / two();
        let convex = n.sign_at(&mid) != Sign::Positive;
        b.side(Frame::strip_rows(&lo, &hi), convex);
    }
    Ok(())
}

fn level_quadratic(b: &mut Builder, g: &UniPoly, f1: &UniPoly, f2: &UniPoly) -> Result<()> {
    let quad = Quadratic::new(g, f1, f2)?;
    if quad.disc.is_zero() {
        return double_line(b, &quad);
    }
    let ivs = quad.breakpoint_intervals(&b.frame.grid)?;
    for (lo, hi) in b.split(&ivs)? {
        let mid = (&lo + &hi) / two();
        if quad.disc.sign_at(&mid) != Sign::Positive {
            b.convex(Frame::strip_rows(&lo, &hi));
            continue;
        }
        strip_with_branches(b, &quad, &lo, &hi, &mid)?;
    }
    Ok(())
}

/// `f - omega = f2 (t - r(s))^2` with `r` affine: the level set lies on one line.
fn double_line(b: &mut Builder, quad: &Quadratic) -> Result<()> {
    let ivs = roots_or_none(&quad.f2, &eps(b.frame, 8))?;
    let strips = b.split(&ivs)?;
    let Some((lo, hi)) = strips.first() else {
        return Ok(());
    };
    let e = (lo + hi) / two();
    let (c, m) = center_and_slope(quad, &e);
    let check = &(&quad.f1 + &(&quad.f2 * &UniPoly::new(vec![&c - &m * &e, m.clone()])).scale(&two()));
    if !check.is_zero() {
        return Err(Error::Verification("double root curve is not a line".into()));
    }
    let line = b.frame.line(&-m.clone(), &Rat::one(), &(&c - &m * &e))?;
    b.dd.push_line(line.clone());
    let (la, lb) = (Rat::from_integer(line.a.clone()), Rat::from_integer(line.b.clone()));
    let lc = Rat::from_integer(line.c.clone());
    let above = Row::new(-la.clone(), -lb.clone(), -(&lc + Rat::one()));
    let below = Row::new(la, lb, &lc - Rat::one());
    for (lo, hi) in strips {
        for side in [&above, &below] {
            let p = b.frame.region(Frame::strip_rows(&lo, &hi)).with_row(side.clone()).intersect(&b.frame.bounds);
            b.dd.push_convex(p);
        }
    }
    Ok(())
}

/// Midpoint `-f1 / (2 f2)` of the two branches at `e` and its derivative.
fn center_and_slope(quad: &Quadratic, e: &Rat) -> (Rat, Rat) {
    let (f1, f2) = (quad.f1.eval(e), quad.f2.eval(e));
    let (d1, d2) = (quad.f1.derivative().eval(e), quad.f2.derivative().eval(e));
    let c = -&f1 / (two() * &f2);
    let m = -(&d1 * &f2 - &f1 * &d2) / (two() * &f2 * &f2);
    (c, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum StripCase {
    /// Upper branch concave, lower convex.
    ConcaveOverConvex,
    /// Upper branch convex, lower concave.
    ConvexOverConcave,
    BothConcave,
    BothConvex,
}

pub(crate) fn classify(upper: Curvature, lower: Curvature) -> StripCase {
    if upper.is_concave() && lower.is_convex() {
        StripCase::ConcaveOverConvex
    } else if upper.is_convex() && lower.is_concave() {
        StripCase::ConvexOverConcave
    } else if upper == Curvature::Concave {
        StripCase::BothConcave
    } else {
        StripCase::BothConvex
    }
}

struct Sides {
    f2_positive: bool,
    upper: Curvature,
    lower: Curvature,
}

impl Sides {
    /// Whether the part above the separator is a convex-side piece.
    fn upper_convex(&self) -> bool {
        if self.f2_positive {
            self.upper.is_concave()
        } else {
            self.upper.is_convex()
        }
    }

    fn lower_convex(&self) -> bool {
        if self.f2_positive {
            self.lower.is_convex()
        } else {
            self.lower.is_concave()
        }
    }
}

fn strip_with_branches(b: &mut Builder, quad: &Quadratic, lo: &Rat, hi: &Rat, mid: &Rat) -> Result<()> {
    let f2_positive = quad.f2.sign_at(mid) == Sign::Positive;
    let (plus, minus) = quad.curvature_at(mid);
    let (upper, lower) = if f2_positive { (plus, minus) } else { (minus, plus) };
    let sides = Sides { f2_positive, upper, lower };
    let strip = Frame::strip_rows(lo, hi);
    match classify(upper, lower) {
        StripCase::ConcaveOverConvex => {
            let one = Rat::one();
            let at_lo = branch_roots(quad, lo, &one)?;
            let at_hi = branch_roots(quad, hi, &one)?;
            let yl = (&at_lo[0].hi + &at_lo[1].lo) / two();
            let yh = (&at_hi[0].hi + &at_hi[1].lo) / two();
            let m = (&yh - &yl) / (hi - lo);
            verify_separator(quad, &yl, &m, lo, lo, hi)?;
            split_by_line(b, &strip, &sides, &yl, &m, lo);
        }
        StripCase::ConvexOverConcave => {
            let g = &(&quad.disc.derivative() * &quad.f2) - &(&quad.f2.derivative() * &quad.disc).scale(&two());
            let ivs = if g.is_zero() { vec![] } else { isolate_roots_in(&g, lo, hi, &eps(b.frame, 4))? };
            let (cols, subs) = b.frame.decompose(&ivs, lo, hi);
            b.columns(&cols)?;
            for (sl, sh) in subs {
                let gap = |s: &Rat| quad.disc.eval(s) / (quad.f2.eval(s) * quad.f2.eval(s));
                let e = if gap(&sl) < gap(&sh) { sl.clone() } else { sh.clone() };
                let (c, m) = center_and_slope(quad, &e);
                verify_separator(quad, &c, &m, &e, &sl, &sh)?;
                split_by_line(b, &Frame::strip_rows(&sl, &sh), &sides, &c, &m, &e);
            }
        }
        case => {
            let idx = if case == StripCase::BothConcave { 1 } else { 0 };
            let width = Rat::one() / (two() * (hi - lo));
            let il = branch_roots(quad, lo, &width)?[idx].clone();
            let ih = branch_roots(quad, hi, &width)?[idx].clone();
            let corners = [(lo, &il.lo), (lo, &il.hi), (hi, &ih.hi), (hi, &ih.lo)];
            let pts: Vec<(Rat, Rat)> = corners.iter().map(|(s, t)| b.frame.point_xy(s, t)).collect();
            let line = line_in_thin_polytope(&pts)?;
            b.dd.push_line(line);
            let m_top = (&ih.hi - &il.hi) / (hi - lo);
            let m_bot = (&ih.lo - &il.lo) / (hi - lo);
            let mut up = strip.clone();
            up.push(beside_line(&il.hi, &m_top, lo, true));
            b.side(up, sides.upper_convex());
            let mut down = strip;
            down.push(beside_line(&il.lo, &m_bot, lo, false));
            b.side(down, sides.lower_convex());
        }
    }
    Ok(())
}

fn split_by_line(b: &mut Builder, strip: &[Row], sides: &Sides, c: &Rat, m: &Rat, e: &Rat) {
    let mut up = strip.to_vec();
    up.push(beside_line(c, m, e, true));
    b.side(up, sides.upper_convex());
    let mut down = strip.to_vec();
    down.push(beside_line(c, m, e, false));
    b.side(down, sides.lower_convex());
}

/// The two isolating intervals of the level curve over column `s`, lower first.
fn branch_roots(quad: &Quadratic, s: &Rat, width: &Rat) -> Result<Vec<RootInterval>> {
    let ivs = isolate_roots(&quad.column(s), width)?;
    if ivs.len() != 2 {
        return Err(Error::Verification("expected two branches over a column".into()));
    }
    Ok(ivs)
}

/// Checks that the line stays strictly between the branches over `[lo, hi]`.
fn verify_separator(quad: &Quadratic, c: &Rat, m: &Rat, e: &Rat, lo: &Rat, hi: &Rat) -> Result<()> {
    let h = quad.along(c, m, e);
    let between = quad.f2.sign_at(lo).neg();
    let ok = !h.is_zero()
        && h.sign_at(lo) == between
        && (h.is_constant() || isolate_roots_in(&h, lo, hi, &Rat::one())?.is_empty());
    if ok {
        Ok(())
    } else {
        Err(Error::Verification("separator meets the level curve".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_priority() {
        use Curvature::*;
        assert_eq!(classify(Concave, Convex), StripCase::ConcaveOverConvex);
        assert_eq!(classify(Both, Both), StripCase::ConcaveOverConvex);
        assert_eq!(classify(Convex, Concave), StripCase::ConvexOverConcave);
        assert_eq!(classify(Concave, Concave), StripCase::BothConcave);
        assert_eq!(classify(Convex, Convex), StripCase::BothConvex);
        assert_eq!(classify(Convex, Both), StripCase::ConvexOverConcave);
    }
}
