use super::polyhedron::{Polyhedron2, Row};
use crate::error::{Error, Result};
use crate::exactmath::{ceil, floor, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer line `a*x + b*y = c` with `gcd(a, b, c) = 1` and `(a, b)` lexicographically positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeLine {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl LatticeLine {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<LatticeLine> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateShape("line with zero normal".into()));
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(LatticeLine { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<LatticeLine> {
        Self::new(a.into(), b.into(), c.into())
    }

    /// Line with rational coefficients, scaled to integers.
    pub fn from_rat(a: &Rat, b: &Rat, c: &Rat) -> Result<LatticeLine> {
        let l = crate::exactmath::lcm_denoms([a, b, c]);
        let s = Rat::from_integer(l);
        Self::new((a * &s).to_integer(), (b * &s).to_integer(), (c * &s).to_integer())
    }

    /// Line through two distinct rational points.
    pub fn through(p: &(Rat, Rat), q: &(Rat, Rat)) -> Result<LatticeLine> {
        let a = &q.1 - &p.1;
        let b = &p.0 - &q.0;
        let c = &a * &p.0 + &b * &p.1;
        Self::from_rat(&a, &b, &c)
    }

    pub fn value(&self, x: &Rat, y: &Rat) -> Rat {
        Rat::from_integer(self.a.clone()) * x + Rat::from_integer(self.b.clone()) * y
            - Rat::from_integer(self.c.clone())
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        self.value(x, y).is_zero()
    }

    pub fn contains_int(&self, x: &BigInt, y: &BigInt) -> bool {
        (&self.a * x + &self.b * y) == self.c
    }

    /// Primitive integer direction, lexicographically positive.
    pub fn direction(&self) -> (BigInt, BigInt) {
        let g = self.a.gcd(&self.b);
        let (dx, dy) = (&self.b / &g, -(&self.a / &g));
        if dx.is_negative() || (dx.is_zero() && dy.is_negative()) {
            (-dx, -dy)
        } else {
            (dx, dy)
        }
    }

    /// Some integer point of the line, or None when it carries no lattice point.
    pub fn base_point(&self) -> Option<(BigInt, BigInt)> {
        let e = self.a.extended_gcd(&self.b);
        let (q, r) = self.c.div_rem(&e.gcd);
        if !r.is_zero() {
            return None;
        }
        Some((e.x * &q, e.y * q))
    }

    /// Lattice parametrization `t -> base + t * direction` restricted to `p`: the base point,
    /// the direction and the integer range of `t` (None when no lattice point of the line lies in `p`).
    pub fn lattice_range(
        &self,
        p: &Polyhedron2,
    ) -> Option<((BigInt, BigInt), (BigInt, BigInt), Option<BigInt>, Option<BigInt>)> {
        if p.is_flagged_empty() {
            return None;
        }
        let base = self.base_point()?;
        let dir = self.direction();
        let (bx, by) = to_rat_point(&base);
        let (dx, dy) = to_rat_point(&dir);
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for r in p.rows() {
            let slope = &r.a * &dx + &r.b * &dy;
            let rhs = &r.c - &r.a * &bx - &r.b * &by;
            if slope.is_zero() {
                if rhs.is_negative() {
                    return None;
                }
            } else if slope.is_positive() {
                let t = floor(&(rhs / slope));
                if hi.as_ref().is_none_or(|h| &t < h) {
                    hi = Some(t);
                }
            } else {
                let t = ceil(&(rhs / slope));
                if lo.as_ref().is_none_or(|l| &t > l) {
                    lo = Some(t);
                }
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        Some((base, dir, lo, hi))
    }

    /// Rows `a x + b y <= c` and `-a x - b y <= -c`.
    pub fn as_rows(&self) -> [Row; 2] {
        let (a, b, c) = (
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(self.b.clone()),
            Rat::from_integer(self.c.clone()),
        );
        [Row::new(a.clone(), b.clone(), c.clone()), Row::new(-a, -b, -c)]
    }
}

fn cross3(o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Convex hull (counterclockwise, starting at the lexicographic minimum, no collinear points).
pub fn convex_hull(points: &[(Rat, Rat)]) -> Vec<(Rat, Rat)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(Rat, Rat)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross3(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Rat, Rat)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross3(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Polyhedron equal to the convex hull of the given points.
pub fn polygon_polyhedron(points: &[(Rat, Rat)]) -> Polyhedron2 {
    let h = convex_hull(points);
    match h.len() {
        0 => Polyhedron2::empty_set(),
        1 => Polyhedron2::rect(&h[0].0, &h[0].0, &h[0].1, &h[0].1),
        2 => {
            let (p, q) = (&h[0], &h[1]);
            let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
            let a = dy.clone();
            let b = -dx.clone();
            let c = &a * &p.0 + &b * &p.1;
            let lo = &dx * &p.0 + &dy * &p.1;
            let hi = &dx * &q.0 + &dy * &q.1;
            Polyhedron2::new(vec![
                Row::new(a.clone(), b.clone(), c.clone()),
                Row::new(-a, -b, -c),
                Row::new(dx.clone(), dy.clone(), hi),
                Row::new(-dx, -dy, -lo),
            ])
        }
        n => {
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let (p, q) = (&h[i], &h[(i + 1) % n]);
                let a = &q.1 - &p.1;
                let b = &p.0 - &q.0;
                let c = &a * &p.0 + &b * &p.1;
                rows.push(Row::new(a, b, c));
            }
            Polyhedron2::new(rows)
        }
    }
}

fn int_count(lo: &Rat, hi: &Rat) -> BigInt {
    let c = floor(hi) - ceil(lo) + BigInt::one();
    if c.is_negative() {
        BigInt::zero()
    } else {
        c
    }
}

/// Extreme lattice points of each integer column of a bounded polyhedron.
fn column_extremes(q: &Polyhedron2, xlo: &Rat, xhi: &Rat) -> Vec<(Rat, Rat)> {
    let mut pts = Vec::new();
    let mut x = ceil(xlo);
    let end = floor(xhi);
    while x <= end {
        if let Some((lo, hi)) = q.int_column(&x) {
            let xr = Rat::from_integer(x.clone());
            pts.push((xr.clone(), Rat::from_integer(lo.clone())));
            if hi != lo {
                pts.push((xr, Rat::from_integer(hi)));
            }
        }
        x += 1;
    }
    pts
}

/// Vertices (counterclockwise, starting at the lexicographic minimum) of the convex hull of the
/// lattice points of `p` inside `bounds`.
pub fn integer_hull(p: &Polyhedron2, bounds: &Polyhedron2) -> Result<Vec<(BigInt, BigInt)>> {
    let q = p.intersect(bounds);
    let Some((xlo, xhi)) = q.x_range() else {
        return Ok(vec![]);
    };
    let (Some(xlo), Some(xhi)) = (xlo, xhi) else {
        return Err(Error::UnboundedRegion);
    };
    let sw = q.swapped();
    let Some((Some(ylo), Some(yhi))) = sw.x_range() else {
        return Err(Error::UnboundedRegion);
    };
    let pts = if int_count(&ylo, &yhi) < int_count(&xlo, &xhi) {
        column_extremes(&sw, &ylo, &yhi).into_iter().map(|(a, b)| (b, a)).collect()
    } else {
        column_extremes(&q, &xlo, &xhi)
    };
    Ok(convex_hull(&pts).into_iter().map(|(x, y)| (x.to_integer(), y.to_integer())).collect())
}

/// Integer hull of a bounded polyhedron.
pub fn integer_hull_bounded(p: &Polyhedron2) -> Result<Vec<(BigInt, BigInt)>> {
    integer_hull(p, &Polyhedron2::whole_plane())
}

pub(crate) fn to_rat_point(p: &(BigInt, BigInt)) -> (Rat, Rat) {
    (Rat::from_integer(p.0.clone()), Rat::from_integer(p.1.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn hull_of_rounded_box() {
        let p = Polyhedron2::rect(&rat(1, 2), &rat(5, 2), &rat(1, 2), &rat(5, 2));
        let h = integer_hull_bounded(&p).unwrap();
        assert_eq!(h, pts(&[(1, 1), (2, 1), (2, 2), (1, 2)]));
    }

    #[test]
    fn hull_of_triangle() {
        let t = polygon_polyhedron(&[
            (rat(0, 1), rat(0, 1)),
            (rat(7, 2), rat(0, 1)),
            (rat(0, 1), rat(7, 2)),
        ]);
        assert_eq!(integer_hull_bounded(&t).unwrap(), pts(&[(0, 0), (3, 0), (0, 3)]));
    }

    #[test]
    fn hull_of_latticeless_strip() {
        let p = Polyhedron2::rect(&rat(2, 5), &rat(3, 5), &rat(0, 1), &rat(1, 1));
        assert!(integer_hull_bounded(&p).unwrap().is_empty());
    }

    #[test]
    fn hull_rejects_unbounded() {
        let p = Polyhedron2::from_i64(&[(-1, 0, 0)]);
        assert_eq!(integer_hull_bounded(&p), Err(Error::UnboundedRegion));
    }

    #[test]
    fn lattice_line_normalization() {
        let l = LatticeLine::from_i64(-2, 4, -6).unwrap();
        assert_eq!((l.a.clone(), l.b.clone(), l.c.clone()), (1.into(), (-2).into(), 3.into()));
        let (x, y) = l.base_point().unwrap();
        assert!(l.contains_int(&x, &y));
        assert_eq!(l.direction(), (2.into(), 1.into()));
        assert!(LatticeLine::from_i64(2, 4, 1).unwrap().base_point().is_none());
    }

    fn brute_hull(p: &Polyhedron2, r: i64) -> Vec<(Rat, Rat)> {
        let mut v = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if p.contains(&rat(x, 1), &rat(y, 1)) {
                    v.push((rat(x, 1), rat(y, 1)));
                }
            }
        }
        convex_hull(&v)
    }

    proptest! {
        #[test]
        fn hull_matches_enumeration(
            rows in prop::collection::vec((-7i64..=7, -7i64..=7, -60i64..=60), 1..5),
            den in 1i64..5,
        ) {
            let mut p = Polyhedron2::square(&BigInt::from(30));
            for (a, b, c) in rows {
                p = p.with_row(Row::new(rat(a, 1), rat(b, 1), rat(c, den)));
            }
            let h: Vec<(Rat, Rat)> = integer_hull_bounded(&p).unwrap().iter().map(to_rat_point).collect();
            prop_assert_eq!(h, brute_hull(&p, 30));
        }
    }
}
