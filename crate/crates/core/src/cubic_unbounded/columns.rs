use super::{certify, largest_root};
use crate::error::{Error, Result};
use crate::exactmath::{ceil, floor, substitute_affine, BiPoly, Rat, Sign, UniPoly};
use crate::lattice2d::Polyhedron2;
use crate::outcome::{IntPoint, SolveOutcome};
use crate::regions::{minimize_univariate, sign_at_infinity, UnivariateOutcome};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Columns scanned before the first cutoff estimate.
const WARMUP: i64 = 16;
/// Largest number of columns scanned in one piece.
const MAX_COLUMNS: i64 = 2_000_000;

/// Unimodular coordinates `(w, u)` with `u` running along a chosen lattice ray:
/// `x = -sigma t w + a u`, `y = sigma s w + b u` where `s a + t b = 1`.
#[derive(Clone, Debug)]
pub(crate) struct RayFrame {
    m: [[Rat; 2]; 2],
    ray: IntPoint,
}

impl RayFrame {
    /// Frame for primitive `ray`; `other`, if given, gets a positive `w` component.
    pub(crate) fn new(ray: &IntPoint, other: Option<&IntPoint>) -> RayFrame {
        let (a, b) = ray;
        let e = a.extended_gcd(b);
        let (s, t) = if e.gcd.is_negative() { (-e.x, -e.y) } else { (e.x, e.y) };
        let flip = other.is_some_and(|o| (a * &o.1 - b * &o.0).is_negative());
        let sigma = if flip { -BigInt::one() } else { BigInt::one() };
        let r = |v: BigInt| Rat::from_integer(v);
        RayFrame {
            m: [[r(-&sigma * &t), r(a.clone())], [r(&sigma * &s), r(b.clone())]],
            ray: ray.clone(),
        }
    }

    pub(crate) fn to_xy(&self, w: &BigInt, u: &BigInt) -> IntPoint {
        let (w, u) = (Rat::from_integer(w.clone()), Rat::from_integer(u.clone()));
        let x = &self.m[0][0] * &w + &self.m[0][1] * &u;
        let y = &self.m[1][0] * &w + &self.m[1][1] * &u;
        (x.to_integer(), y.to_integer())
    }

    fn poly(&self, f: &BiPoly) -> BiPoly {
        let z = Rat::zero();
        substitute_affine(f, &self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1], &z, &z)
    }

    fn region(&self, p: &Polyhedron2) -> Polyhedron2 {
        p.pullback(&self.m, &[Rat::zero(), Rat::zero()])
    }
}

/// Columns of one piece whose minimum reaches the piece's reference value.
#[derive(Clone, Debug)]
pub(crate) struct ColumnSpan {
    frame: RayFrame,
    columns: Vec<ColumnRecord>,
}

#[derive(Clone, Debug)]
struct ColumnRecord {
    w: BigInt,
    u0: BigInt,
    phi: UniPoly,
    min: Rat,
}

impl ColumnSpan {
    /// Radius of a square holding every lattice point of the piece with value `level`,
    /// except the unbounded runs of constant columns, represented by their first point.
    pub(crate) fn radius(&self, level: &Rat) -> Result<BigInt> {
        let mut r = BigInt::zero();
        let mut include = |p: IntPoint| {
            r = std::cmp::max(r.clone(), std::cmp::max(p.0.abs(), p.1.abs()));
        };
        for c in self.columns.iter().filter(|c| &c.min <= level) {
            include(self.frame.to_xy(&c.w, &c.u0));
            let shifted = &c.phi - &UniPoly::constant(level.clone());
            if let Some(top) = largest_root(&shifted)? {
                let top = ceil(&top);
                if top > c.u0 {
                    include(self.frame.to_xy(&c.w, &top));
                }
            }
        }
        Ok(r)
    }
}

struct Scan<'a> {
    f: &'a BiPoly,
    g: BiPoly,
    region: Polyhedron2,
    frame: &'a RayFrame,
    best: SolveOutcome,
    reference: Option<Rat>,
    kept: Vec<ColumnRecord>,
}

impl Scan<'_> {
    /// Minimizes one column; returns a certificate when the column is unbounded below.
    fn column(&mut self, w: &BigInt) -> Result<Option<SolveOutcome>> {
        let wr = Rat::from_integer(w.clone());
        let Some((Some(lo), hi)) = self.region.column(&wr) else {
            return Ok(None);
        };
        let u0 = ceil(&lo);
        let u1 = hi.map(|h| floor(&h));
        if u1.as_ref().is_some_and(|h| h < &u0) {
            return Ok(None);
        }
        let phi = self.g.at_x(&wr);
        match minimize_univariate(&phi, Some(&u0), u1.as_ref())? {
            UnivariateOutcome::Unbounded { x, .. } => {
                Ok(Some(certify(self.f, &self.frame.to_xy(w, &x), &self.frame.ray)?))
            }
            UnivariateOutcome::Optimal { x, value } => {
                let point = self.frame.to_xy(w, &x);
                self.best = std::mem::replace(&mut self.best, SolveOutcome::Infeasible)
                    .merge(SolveOutcome::optimal(point, value.clone()));
                if self.reference.as_ref().is_none_or(|r| &value < r) {
                    self.reference = Some(value.clone());
                }
                self.kept.push(ColumnRecord { w: w.clone(), u0, phi, min: value });
                Ok(None)
            }
        }
    }

    fn run(&mut self, from: &BigInt, to: &BigInt) -> Result<Option<SolveOutcome>> {
        if to - from > BigInt::from(MAX_COLUMNS) {
            return Err(Error::TooLarge);
        }
        let mut w = from.clone();
        while &w <= to {
            if let Some(cert) = self.column(&w)? {
                return Ok(Some(cert));
            }
            w += 1;
        }
        Ok(None)
    }
}

/// Exact minimization over a pointed piece whose recession cone has `ray` as an extreme ray,
/// `f` being at most quadratic along `ray` unless the cone is that single ray.
///
/// Every column parallel to `ray` is a univariate problem. For a two-dimensional cone the scan
/// stops at a cutoff past which the column minima provably exceed a value already attained.
pub(crate) fn column_piece(
    f: &BiPoly,
    piece: &Polyhedron2,
    ray: &IntPoint,
    other: Option<&IntPoint>,
) -> Result<(SolveOutcome, ColumnSpan)> {
    let frame = RayFrame::new(ray, other);
    let region = frame.region(piece);
    let mut scan = Scan {
        f,
        g: frame.poly(f),
        region: region.clone(),
        frame: &frame,
        best: SolveOutcome::Infeasible,
        reference: None,
        kept: Vec::new(),
    };
    let done = |scan: Scan, cert: Option<SolveOutcome>| -> Result<(SolveOutcome, ColumnSpan)> {
        let span = ColumnSpan { frame: frame.clone(), columns: scan.kept };
        Ok((cert.unwrap_or(scan.best), span))
    };
    let Some((Some(wlo), whi)) = region.x_range() else {
        return done(scan, None);
    };
    let start = ceil(&wlo);
    if let Some(whi) = whi {
        let cert = scan.run(&start, &floor(&whi))?;
        return done(scan, cert);
    }
    let other = other.ok_or_else(|| Error::Verification("unbounded columns without a second ray".into()))?;
    let warm_end = &start + WARMUP;
    if let Some(cert) = scan.run(&start, &warm_end)? {
        return done(scan, Some(cert));
    }
    let reference = scan
        .reference
        .clone()
        .ok_or_else(|| Error::Verification("no lattice point in the leading columns".into()))?;
    let cutoff = match cutoff(&scan.g, &region, &reference)? {
        Cutoff::At(w) => w,
        Cutoff::AlongOther => {
            let x = scan.best.point().cloned().expect("reference point exists");
            let cert = certify(f, &x, other)?;
            return done(scan, Some(cert));
        }
    };
    let cert = scan.run(&(&warm_end + 1), &std::cmp::max(cutoff, warm_end.clone()))?;
    done(scan, cert)
}

enum Cutoff {
    /// Past this column every column minimum exceeds the reference, or an unbounded column
    /// appears at or before it.
    At(BigInt),
    /// `f` depends only on the transverse coordinate and decreases without bound.
    AlongOther,
}

/// Column index past which the column minima stay above `reference`, from the signs at
/// infinity of the column coefficients and of the minimum along the lower boundary line.
fn cutoff(g: &BiPoly, region: &Polyhedron2, reference: &Rat) -> Result<Cutoff> {
    let slices = g.y_slices();
    let slice = |k: usize| slices.get(k).cloned().unwrap_or_else(UniPoly::zero);
    let (c, b, a) = (slice(0), slice(1), slice(2));
    if !slice(3).is_zero() {
        return Err(Error::Verification("cubic along the zero ray".into()));
    }
    let top_vertex = region
        .vertices()
        .into_iter()
        .map(|v| v.0)
        .max()
        .ok_or_else(|| Error::Verification("pointed piece without a vertex".into()))?;
    let w1 = Rat::from_integer(ceil(&top_vertex) + 1);
    let w2 = &w1 + Rat::one();
    let low = |w: &Rat| match region.column(w) {
        Some((Some(l), _)) => Ok(l),
        _ => Err(Error::Verification("column without lower end".into())),
    };
    let (l1, l2) = (low(&w1)?, low(&w2)?);
    let slope = &l2 - &l1;
    let lower = UniPoly::new(vec![&l1 - &w1 * &slope, slope]);
    let level = UniPoly::constant(reference.clone());
    let two = UniPoly::constant(Rat::from_integer(2.into()));
    let four = UniPoly::constant(Rat::from_integer(4.into()));
    // Column value at the lower boundary, boundary slope test, and vertex value times 4a.
    let at_boundary = &(&(&(&a * &lower) * &lower) + &(&b * &lower)) + &(&c - &level);
    let slope_test = &(&(&two * &a) * &lower) + &b;
    let vertex = &(&(&four * &a) * &(&c - &level)) - &(&b * &b);
    let mut w = top_vertex;
    for p in [&a, &b, &at_boundary, &slope_test, &vertex] {
        if let Some(r) = largest_root(p)? {
            w = std::cmp::max(w, r);
        }
    }
    let w = ceil(&w) + 1;
    let sig = |p: &UniPoly| sign_at_infinity(p, 1);
    let ok = match (sig(&a), sig(&b)) {
        (Sign::Negative, _) | (Sign::Zero, Sign::Negative) => true,
        (Sign::Zero, Sign::Zero) => match sig(&at_boundary) {
            Sign::Negative => return Ok(Cutoff::AlongOther),
            s => s == Sign::Positive,
        },
        (Sign::Zero, Sign::Positive) => sig(&at_boundary) == Sign::Positive,
        (Sign::Positive, _) => {
            if sig(&slope_test) != Sign::Negative {
                sig(&at_boundary) == Sign::Positive
            } else {
                sig(&vertex) == Sign::Positive
            }
        }
    };
    if !ok {
        return Err(Error::Verification("no column cutoff".into()));
    }
    Ok(Cutoff::At(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> IntPoint {
        (x.into(), y.into())
    }

    #[test]
    fn frames_are_unimodular_and_orient_the_second_ray() {
        for (ray, other) in [(p(1, 0), p(0, 1)), (p(2, 3), p(-1, 1)), (p(0, 1), p(1, 0)), (p(-3, 5), p(1, 1))] {
            let fr = RayFrame::new(&ray, Some(&other));
            let det = &fr.m[0][0] * &fr.m[1][1] - &fr.m[0][1] * &fr.m[1][0];
            assert_eq!(crate::exactmath::rat_abs(&det), Rat::one());
            assert_eq!(fr.to_xy(&0.into(), &1.into()), ray);
            // w component of `other` is positive: other = w e_w + u e_u with w > 0.
            let inv_w = (&fr.m[1][1] * Rat::from_integer(other.0.clone()) - &fr.m[0][1] * Rat::from_integer(other.1.clone())) / &det;
            assert!(inv_w.is_positive());
        }
    }
}
