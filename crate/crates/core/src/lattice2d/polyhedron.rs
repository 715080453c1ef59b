use crate::exactmath::{lcm_denoms, Rat, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Half-plane `a*x + b*y <= c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Row {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Row {
        Row { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Row {
        Row::new(
            Rat::from_integer(a.into()),
            Rat::from_integer(b.into()),
            Rat::from_integer(c.into()),
        )
    }

    pub fn slack(&self, x: &Rat, y: &Rat) -> Rat {
        &self.c - &self.a * x - &self.b * y
    }

    pub fn holds(&self, x: &Rat, y: &Rat) -> bool {
        !self.slack(x, y).is_negative()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Rational polyhedron `{(x, y) : rows hold}`, possibly unbounded or empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polyhedron2 {
    rows: Vec<Row>,
    empty: bool,
}

/// Recession cone description with integral primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecessionCone {
    Zero,
    Ray(BigInt, BigInt),
    /// Pointed two-dimensional cone: `first` is clockwise of `second`.
    Cone { first: (BigInt, BigInt), second: (BigInt, BigInt) },
    /// Contains a line.
    NotPointed,
}

pub(crate) fn primitive_dir(x: &Rat, y: &Rat) -> (BigInt, BigInt) {
    let l = lcm_denoms([x, y]);
    let xi = (x * Rat::from_integer(l.clone())).to_integer();
    let yi = (y * Rat::from_integer(l)).to_integer();
    let g = xi.gcd(&yi);
    (xi / &g, yi / &g)
}

fn cross(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * by - ay * bx
}

impl Polyhedron2 {
    pub fn new(rows: Vec<Row>) -> Self {
        let mut p = Polyhedron2 { rows: Vec::with_capacity(rows.len()), empty: false };
        for r in rows {
            p.push_row(r);
        }
        p
    }

    /// Rows given as `(a, b, c)` meaning `a*x + b*y <= c`.
    pub fn from_i64(rows: &[(i64, i64, i64)]) -> Self {
        Self::new(rows.iter().map(|&(a, b, c)| Row::from_i64(a, b, c)).collect())
    }

    pub fn whole_plane() -> Self {
        Polyhedron2::default()
    }

    pub fn empty_set() -> Self {
        Polyhedron2 { rows: vec![], empty: true }
    }

    /// The box `[-r, r]^2`.
    pub fn square(r: &BigInt) -> Self {
        let rr = Rat::from_integer(r.clone());
        Self::rect(&-rr.clone(), &rr, &-rr.clone(), &rr)
    }

    pub fn rect(xlo: &Rat, xhi: &Rat, ylo: &Rat, yhi: &Rat) -> Self {
        let one = Rat::one();
        let zero = Rat::zero();
        Self::new(vec![
            Row::new(one.clone(), zero.clone(), xhi.clone()),
            Row::new(-one.clone(), zero.clone(), -xlo.clone()),
            Row::new(zero.clone(), one.clone(), yhi.clone()),
            Row::new(zero, -one, -ylo.clone()),
        ])
    }

    fn push_row(&mut self, r: Row) {
        if r.is_trivial() {
            if r.c.is_negative() {
                self.empty = true;
            }
            return;
        }
        if !self.rows.contains(&r) {
            self.rows.push(r);
        }
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_flagged_empty(&self) -> bool {
        self.empty
    }

    pub fn with_row(&self, r: Row) -> Self {
        let mut p = self.clone();
        p.push_row(r);
        p
    }

    pub fn with_rows<I: IntoIterator<Item = Row>>(&self, rows: I) -> Self {
        let mut p = self.clone();
        for r in rows {
            p.push_row(r);
        }
        p
    }

    pub fn intersect(&self, other: &Polyhedron2) -> Self {
        let mut p = self.with_rows(other.rows.iter().cloned());
        p.empty |= other.empty;
        p
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        !self.empty && self.rows.iter().all(|r| r.holds(x, y))
    }

    pub fn contains_int(&self, x: &BigInt, y: &BigInt) -> bool {
        self.contains(&Rat::from_integer(x.clone()), &Rat::from_integer(y.clone()))
    }

    /// Interior test (strict in every row).
    pub fn contains_strictly(&self, x: &Rat, y: &Rat) -> bool {
        !self.empty && self.rows.iter().all(|r| r.slack(x, y).is_positive())
    }

    /// Constraints on x alone after eliminating y (Fourier-Motzkin).
    fn x_constraints(&self) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for r in &self.rows {
            match Sign::of_rat(&r.b) {
                Sign::Zero => out.push((r.a.clone(), r.c.clone())),
                Sign::Positive => up.push(r),
                Sign::Negative => down.push(r),
            }
        }
        // y <= (c1 - a1 x)/b1 and y >= (c2 - a2 x)/b2 with b2 < 0
        for u in &up {
            for d in &down {
                let bu = &u.b;
                let bd = -&d.b;
                // (c2 - a2 x)/b2 <= (c1 - a1 x)/b1  <=>  bd*a1 x + bu*a2 x <= bd*c1 + bu*c2
                let a = &bd * &u.a + bu * &d.a;
                let c = &bd * &u.c + bu * &d.c;
                out.push((a, c));
            }
        }
        out
    }

    /// Range of x over the polyhedron; None when the polyhedron is empty.
    pub fn x_range(&self) -> Option<(Option<Rat>, Option<Rat>)> {
        if self.empty {
            return None;
        }
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (a, c) in self.x_constraints() {
            match Sign::of_rat(&a) {
                Sign::Zero => {
                    if c.is_negative() {
                        return None;
                    }
                }
                Sign::Positive => {
                    let v = &c / &a;
                    if hi.as_ref().is_none_or(|h| &v < h) {
                        hi = Some(v);
                    }
                }
                Sign::Negative => {
                    let v = &c / &a;
                    if lo.as_ref().is_none_or(|l| &v > l) {
                        lo = Some(v);
                    }
                }
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        Some((lo, hi))
    }

    pub fn is_empty(&self) -> bool {
        self.x_range().is_none()
    }

    /// y-range of the vertical section at `x`; None when the section is empty.
    pub fn column(&self, x: &Rat) -> Option<(Option<Rat>, Option<Rat>)> {
        if self.empty {
            return None;
        }
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for r in &self.rows {
            let rhs = &r.c - &r.a * x;
            match Sign::of_rat(&r.b) {
                Sign::Zero => {
                    if rhs.is_negative() {
                        return None;
                    }
                }
                Sign::Positive => {
                    let v = rhs / &r.b;
                    if hi.as_ref().is_none_or(|h| &v < h) {
                        hi = Some(v);
                    }
                }
                Sign::Negative => {
                    let v = rhs / &r.b;
                    if lo.as_ref().is_none_or(|l| &v > l) {
                        lo = Some(v);
                    }
                }
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Integer y-range of the column at integer `x`.
    pub fn int_column(&self, x: &BigInt) -> Option<(BigInt, BigInt)> {
        let (lo, hi) = self.column(&Rat::from_integer(x.clone()))?;
        let lo = crate::exactmath::ceil(&lo?);
        let hi = crate::exactmath::floor(&hi?);
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    pub fn recession_cone(&self) -> RecessionCone {
        if self.rows.is_empty() {
            return RecessionCone::NotPointed;
        }
        let mut cands: Vec<(Rat, Rat)> = Vec::new();
        for r in &self.rows {
            for d in [(-r.b.clone(), r.a.clone()), (r.b.clone(), -r.a.clone())] {
                let ok = self.rows.iter().all(|s| !(&s.a * &d.0 + &s.b * &d.1).is_positive());
                if ok {
                    cands.push(d);
                }
            }
        }
        if cands.is_empty() {
            return RecessionCone::Zero;
        }
        for (i, u) in cands.iter().enumerate() {
            for v in &cands[i + 1..] {
                if cross(&u.0, &u.1, &v.0, &v.1).is_zero() && (&u.0 * &v.0 + &u.1 * &v.1).is_negative() {
                    return RecessionCone::NotPointed;
                }
            }
        }
        let first = cands
            .iter()
            .find(|u| cands.iter().all(|v| !cross(&u.0, &u.1, &v.0, &v.1).is_negative()))
            .expect("pointed cone has a clockwise extreme ray");
        let second = cands
            .iter()
            .find(|u| cands.iter().all(|v| !cross(&u.0, &u.1, &v.0, &v.1).is_positive()))
            .expect("pointed cone has a counterclockwise extreme ray");
        let f = primitive_dir(&first.0, &first.1);
        let s = primitive_dir(&second.0, &second.1);
        if f == s {
            RecessionCone::Ray(f.0, f.1)
        } else {
            RecessionCone::Cone { first: f, second: s }
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.empty || self.is_empty() || self.recession_cone() == RecessionCone::Zero
    }

    /// Vertices in counterclockwise order (empty for line-containing or empty sets).
    pub fn vertices(&self) -> Vec<(Rat, Rat)> {
        if self.empty {
            return vec![];
        }
        let mut pts: Vec<(Rat, Rat)> = Vec::new();
        let n = self.rows.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let (r, s) = (&self.rows[i], &self.rows[j]);
                let det = &r.a * &s.b - &r.b * &s.a;
                if det.is_zero() {
                    continue;
                }
                let x = (&r.c * &s.b - &r.b * &s.c) / &det;
                let y = (&r.a * &s.c - &r.c * &s.a) / &det;
                if self.contains(&x, &y) && !pts.iter().any(|p| p.0 == x && p.1 == y) {
                    pts.push((x, y));
                }
            }
        }
        sort_ccw(&mut pts);
        pts
    }

    /// Smallest integer radius `r` with the (bounded) polyhedron inside `[-r, r]^2`.
    pub fn bounding_radius(&self) -> Option<BigInt> {
        if !self.is_bounded() {
            return None;
        }
        let mut r = BigInt::zero();
        for (x, y) in self.vertices() {
            for v in [x, y] {
                let c = crate::exactmath::ceil(&v.abs());
                if c > r {
                    r = c;
                }
            }
        }
        Some(r)
    }

    /// Image of the polyhedron under `(s, t) -> (x, y)` given by the inverse map `(x, y) -> (s, t)`.
    /// Each row `a s + b t <= c` with `s = m11 x + m12 y + o1`, `t = m21 x + m22 y + o2`.
    pub fn pullback(&self, m: &[[Rat; 2]; 2], o: &[Rat; 2]) -> Polyhedron2 {
        let mut out = Polyhedron2 { rows: vec![], empty: self.empty };
        for r in &self.rows {
            let a = &r.a * &m[0][0] + &r.b * &m[1][0];
            let b = &r.a * &m[0][1] + &r.b * &m[1][1];
            let c = &r.c - &r.a * &o[0] - &r.b * &o[1];
            out.push_row(Row::new(a, b, c));
        }
        out
    }

    pub fn swapped(&self) -> Polyhedron2 {
        Polyhedron2 {
            rows: self.rows.iter().map(|r| Row::new(r.b.clone(), r.a.clone(), r.c.clone())).collect(),
            empty: self.empty,
        }
    }
}

/// Sorts points counterclockwise around their centroid, starting from the lexicographic minimum.
pub(crate) fn sort_ccw(pts: &mut [(Rat, Rat)]) {
    if pts.len() < 3 {
        pts.sort();
        return;
    }
    let n = Rat::from_integer(BigInt::from(pts.len()));
    let cx = pts.iter().fold(Rat::zero(), |a, p| a + &p.0) / &n;
    let cy = pts.iter().fold(Rat::zero(), |a, p| a + &p.1) / &n;
    let half = |p: &(Rat, Rat)| -> u8 {
        let dx = &p.0 - &cx;
        let dy = &p.1 - &cy;
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|p, q| {
        let (hp, hq) = (half(p), half(q));
        if hp != hq {
            return hp.cmp(&hq);
        }
        let c = cross(&(&p.0 - &cx), &(&p.1 - &cy), &(&q.0 - &cx), &(&q.1 - &cy));
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let start = (0..pts.len()).min_by(|&i, &j| pts[i].cmp(&pts[j])).unwrap();
    pts.rotate_left(start);
}

/// Twice the signed area of a polygon given in order.
pub fn double_area(pts: &[(Rat, Rat)]) -> Rat {
    let n = pts.len();
    let mut s = Rat::zero();
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        s += &a.0 * &b.1 - &a.1 * &b.0;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn square_vertices_ccw() {
        let p = Polyhedron2::square(&BigInt::from(2));
        let v = p.vertices();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], (rat(-2, 1), rat(-2, 1)));
        assert!(double_area(&v) == rat(32, 1));
    }

    #[test]
    fn recession_cone_kinds() {
        let quadrant = Polyhedron2::from_i64(&[(-1, 0, 0), (0, -1, 0)]);
        match quadrant.recession_cone() {
            RecessionCone::Cone { first, second } => {
                assert_eq!(first, (BigInt::from(1), BigInt::from(0)));
                assert_eq!(second, (BigInt::from(0), BigInt::from(1)));
            }
            other => panic!("unexpected {:?}", other),
        }
        let strip = Polyhedron2::from_i64(&[(-1, 0, 0), (0, -1, 0), (0, 1, 1)]);
        assert_eq!(strip.recession_cone(), RecessionCone::Ray(1.into(), 0.into()));
        let half = Polyhedron2::from_i64(&[(0, 1, 0)]);
        assert_eq!(half.recession_cone(), RecessionCone::NotPointed);
        assert_eq!(Polyhedron2::square(&BigInt::from(1)).recession_cone(), RecessionCone::Zero);
    }

    #[test]
    fn emptiness_by_projection() {
        let p = Polyhedron2::from_i64(&[(1, 1, 1), (-1, 0, -1), (0, -1, -1)]);
        assert!(p.is_empty());
        let q = Polyhedron2::from_i64(&[(1, 1, 2), (-1, 0, -1), (0, -1, -1)]);
        assert!(!q.is_empty());
    }

    #[test]
    fn integer_column_range() {
        let p = Polyhedron2::rect(&rat(1, 2), &rat(5, 2), &rat(-3, 2), &rat(7, 3));
        assert_eq!(p.int_column(&BigInt::from(1)), Some((BigInt::from(-1), BigInt::from(2))));
        assert_eq!(p.int_column(&BigInt::from(3)), None);
    }
}
