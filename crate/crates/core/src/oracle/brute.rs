use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, Rat};
use crate::lattice2d::Polyhedron2;
use crate::outcome::{IntPoint, SolveOutcome};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest number of lattice points the exhaustive minimizer will visit.
pub const MAX_POINTS: u64 = 10_000_000;

/// `a x + b y <= c` with integer coefficients.
#[derive(Clone, Debug)]
struct IntRow {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    small: Option<(i128, i128, i128)>,
}

impl IntRow {
    fn from_rats(a: &Rat, b: &Rat, c: &Rat) -> IntRow {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |v: &Rat| (v * Rat::from_integer(l.clone())).to_integer();
        let (a, b, c) = (scale(a), scale(b), scale(c));
        let small = match (a.to_i128(), b.to_i128(), c.to_i128()) {
            (Some(a), Some(b), Some(c)) if a.abs() < 1 << 40 && b.abs() < 1 << 40 && c.abs() < 1 << 80 => Some((a, b, c)),
            _ => None,
        };
        IntRow { a, b, c, small }
    }

    fn holds(&self, x: &BigInt, y: &BigInt, xs: Option<i64>, ys: Option<i64>) -> bool {
        if let (Some((a, b, c)), Some(x), Some(y)) = (self.small, xs, ys) {
            return a * i128::from(x) + b * i128::from(y) <= c;
        }
        &self.a * x + &self.b * y <= self.c
    }
}

fn int_rows(p: &Polyhedron2) -> Vec<IntRow> {
    p.rows().iter().map(|r| IntRow::from_rats(&r.a, &r.b, &r.c)).collect()
}

/// Whether some nonzero direction `d` has `a d <= 0` for every row.
fn has_recession_direction(rows: &[IntRow]) -> bool {
    let normals: Vec<&IntRow> = rows.iter().filter(|r| !(r.a.is_zero() && r.b.is_zero())).collect();
    if normals.is_empty() {
        return true;
    }
    normals.iter().any(|n| {
        [(-&n.b, n.a.clone()), (n.b.clone(), -&n.a)]
            .iter()
            .any(|(dx, dy)| normals.iter().all(|m| !(&m.a * dx + &m.b * dy).is_positive()))
    })
}

/// Corners of the bounded polygon `{z : rows}`, from pairwise line intersections.
fn corners(rows: &[IntRow]) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    for (i, p) in rows.iter().enumerate() {
        for q in &rows[i + 1..] {
            let det = &p.a * &q.b - &p.b * &q.a;
            if det.is_zero() {
                continue;
            }
            let x = Rat::new(&p.c * &q.b - &p.b * &q.c, det.clone());
            let y = Rat::new(&p.a * &q.c - &p.c * &q.a, det);
            let ok = rows.iter().all(|r| {
                Rat::from_integer(r.a.clone()) * &x + Rat::from_integer(r.b.clone()) * &y <= Rat::from_integer(r.c.clone())
            });
            if ok {
                out.push((x, y));
            }
        }
    }
    out
}

/// Exact minimum of `f` over the lattice points of `p` inside the bounded `bx`, by visiting every
/// lattice point of the bounding rectangle of `bx` in lexicographic order.
pub fn brute_force_min(f: &BiPoly, p: &Polyhedron2, bx: &Polyhedron2) -> Result<SolveOutcome> {
    if p.is_flagged_empty() || bx.is_flagged_empty() {
        return Ok(SolveOutcome::Infeasible);
    }
    let box_rows = int_rows(bx);
    if has_recession_direction(&box_rows) {
        return Err(Error::UnboundedRegion);
    }
    let mut rows = int_rows(p);
    rows.extend(box_rows.iter().cloned());
    let box_corners = corners(&box_rows);
    if box_corners.is_empty() {
        return Ok(SolveOutcome::Infeasible);
    }
    let lo = |k: fn(&(Rat, Rat)) -> &Rat| box_corners.iter().map(k).min().expect("corners").ceil().to_integer();
    let hi = |k: fn(&(Rat, Rat)) -> &Rat| box_corners.iter().map(k).max().expect("corners").floor().to_integer();
    let (x0, x1, y0, y1) = (lo(|c| &c.0), hi(|c| &c.0), lo(|c| &c.1), hi(|c| &c.1));
    if x1 < x0 || y1 < y0 {
        return Ok(SolveOutcome::Infeasible);
    }
    let count = (&x1 - &x0 + 1u32) * (&y1 - &y0 + 1u32);
    if count > BigInt::from(MAX_POINTS) {
        return Err(Error::TooLarge);
    }
    let integral = f.has_integer_coeffs();
    let ev = f.int_evaluator();
    let value = |x: &BigInt, y: &BigInt, xs: Option<i64>, ys: Option<i64>| -> Rat {
        if integral {
            if let (Some(xs), Some(ys)) = (xs, ys) {
                if let Some(v) = ev.try_eval_i128(xs, ys) {
                    return Rat::from_integer(v.into());
                }
            }
            Rat::from_integer(ev.eval(x, y))
        } else {
            f.eval(&Rat::from_integer(x.clone()), &Rat::from_integer(y.clone()))
        }
    };
    let mut best: Option<(IntPoint, Rat)> = None;
    let mut x = x0;
    while x <= x1 {
        let xs = x.to_i64();
        let mut y = y0.clone();
        while y <= y1 {
            let ys = y.to_i64();
            if rows.iter().all(|r| r.holds(&x, &y, xs, ys)) {
                let v = value(&x, &y, xs, ys);
                if best.as_ref().is_none_or(|(_, b)| &v < b) {
                    best = Some(((x.clone(), y.clone()), v));
                }
            }
            y += BigInt::one();
        }
        x += BigInt::one();
    }
    Ok(match best {
        Some((point, value)) => SolveOutcome::optimal(point, value),
        None => SolveOutcome::Infeasible,
    })
}

/// Checks an unboundedness certificate: the start point and one ray step are feasible, the ray is
/// a nonzero integral recession direction of `p`, the leading coefficient of `f` along the ray is
/// negative, and `f` strictly decreases across the steps `10^k`, `k = 0..=6`.
pub fn check_certificate(f: &BiPoly, p: &Polyhedron2, point: &IntPoint, ray: &IntPoint) -> std::result::Result<(), String> {
    let rows = int_rows(p);
    if p.is_flagged_empty() || !rows.iter().all(|r| r.holds(&point.0, &point.1, None, None)) {
        return Err(format!("start ({}, {}) is infeasible", point.0, point.1));
    }
    if ray.0.is_zero() && ray.1.is_zero() {
        return Err("zero ray".into());
    }
    if rows.iter().any(|r| (&r.a * &ray.0 + &r.b * &ray.1).is_positive()) {
        return Err(format!("ray ({}, {}) is not a recession direction", ray.0, ray.1));
    }
    let (rx, ry) = (Rat::from_integer(ray.0.clone()), Rat::from_integer(ray.1.clone()));
    let (px, py) = (Rat::from_integer(point.0.clone()), Rat::from_integer(point.1.clone()));
    let along = f.along_line(&px, &py, &rx, &ry);
    match along.degree() {
        Some(d) if d > 0 && along.leading().is_some_and(|c| c.is_negative()) => {}
        Some(d) if d > 0 => return Err(format!("leading coefficient {} along the ray is not negative", along.coeff(d))),
        _ => return Err("objective is constant along the ray".into()),
    }
    let at = |k: u32| {
        let s = Rat::from_integer(num_traits::pow(BigInt::from(10), k as usize));
        f.eval(&(Rat::from_integer(point.0.clone()) + &s * &rx), &(Rat::from_integer(point.1.clone()) + &s * &ry))
    };
    let mut last = f.eval(&Rat::from_integer(point.0.clone()), &Rat::from_integer(point.1.clone()));
    for k in 0..=6 {
        let v = at(k);
        if v >= last {
            return Err(format!("objective does not decrease at step 10^{k}"));
        }
        last = v;
    }
    Ok(())
}
