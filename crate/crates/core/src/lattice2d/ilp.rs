use super::hull::integer_hull_bounded;
use super::polyhedron::{Polyhedron2, RecessionCone, Row};
use crate::exactmath::{ceil, floor, Rat};
use crate::outcome::{IntPoint, SolveOutcome};
use num_bigint::BigInt;
use num_traits::Signed;

/// Closed quadrants; their union is the plane and each piece has a pointed recession cone.
pub fn orthant_pieces(p: &Polyhedron2) -> Vec<Polyhedron2> {
    let mut out = Vec::with_capacity(4);
    for sx in [-1i64, 1] {
        for sy in [-1i64, 1] {
            out.push(p.with_rows([Row::from_i64(-sx, 0, 0), Row::from_i64(0, -sy, 0)]));
        }
    }
    out
}

pub(crate) fn cone_generators(cone: &RecessionCone) -> Vec<IntPoint> {
    match cone {
        RecessionCone::Zero | RecessionCone::NotPointed => vec![],
        RecessionCone::Ray(a, b) => vec![(a.clone(), b.clone())],
        RecessionCone::Cone { first, second } => vec![first.clone(), second.clone()],
    }
}

/// Bounding box of `conv(vertices) + {sum of mu_i r_i : 0 <= mu_i <= 1}`, which meets every
/// residue class of lattice points of a pointed polyhedron modulo its rays.
pub(crate) fn fundamental_box(p: &Polyhedron2, rays: &[IntPoint]) -> Polyhedron2 {
    let v = p.vertices();
    let mut xlo = v.iter().map(|q| q.0.clone()).min().expect("pointed polyhedron has a vertex");
    let mut xhi = v.iter().map(|q| q.0.clone()).max().unwrap();
    let mut ylo = v.iter().map(|q| q.1.clone()).min().unwrap();
    let mut yhi = v.iter().map(|q| q.1.clone()).max().unwrap();
    for (rx, ry) in rays {
        let (rx, ry) = (Rat::from_integer(rx.clone()), Rat::from_integer(ry.clone()));
        if rx.is_negative() {
            xlo += &rx;
        } else {
            xhi += &rx;
        }
        if ry.is_negative() {
            ylo += &ry;
        } else {
            yhi += &ry;
        }
    }
    let xlo = Rat::from_integer(floor(&xlo));
    let xhi = Rat::from_integer(ceil(&xhi));
    let ylo = Rat::from_integer(floor(&ylo));
    let yhi = Rat::from_integer(ceil(&yhi));
    p.intersect(&Polyhedron2::rect(&xlo, &xhi, &ylo, &yhi))
}

fn l1_key(p: &IntPoint) -> (BigInt, IntPoint) {
    (p.0.abs() + p.1.abs(), p.clone())
}

/// Some lattice point of `p` (the integer-hull vertex nearest the origin in the 1-norm), or None.
pub fn ilp_point(p: &Polyhedron2) -> Option<IntPoint> {
    if p.is_empty() {
        return None;
    }
    match p.recession_cone() {
        RecessionCone::NotPointed => orthant_pieces(p)
            .iter()
            .filter_map(ilp_point)
            .min_by_key(l1_key),
        RecessionCone::Zero => {
            let h = integer_hull_bounded(p).expect("bounded polyhedron");
            h.into_iter().min_by_key(l1_key)
        }
        cone => {
            let b = fundamental_box(p, &cone_generators(&cone));
            let h = integer_hull_bounded(&b).expect("bounded polyhedron");
            h.into_iter().min_by_key(l1_key)
        }
    }
}

fn lin_value(c: &(Rat, Rat), p: &IntPoint) -> Rat {
    &c.0 * Rat::from_integer(p.0.clone()) + &c.1 * Rat::from_integer(p.1.clone())
}

fn best_on_hull(hull: Vec<IntPoint>, c: &(Rat, Rat)) -> SolveOutcome {
    hull.into_iter()
        .map(|q| {
            let v = lin_value(c, &q);
            SolveOutcome::optimal(q, v)
        })
        .fold(SolveOutcome::Infeasible, SolveOutcome::merge)
}

/// Minimizes `c.0 * x + c.1 * y` over the lattice points of `p`.
/// Ties go to the lexicographically smallest point among those examined.
pub fn ilp_min_linear(p: &Polyhedron2, c: &(Rat, Rat)) -> SolveOutcome {
    if p.is_empty() {
        return SolveOutcome::Infeasible;
    }
    match p.recession_cone() {
        RecessionCone::NotPointed => orthant_pieces(p)
            .iter()
            .map(|q| ilp_min_linear(q, c))
            .fold(SolveOutcome::Infeasible, SolveOutcome::merge),
        RecessionCone::Zero => best_on_hull(integer_hull_bounded(p).expect("bounded polyhedron"), c),
        cone => {
            let rays = cone_generators(&cone);
            let down = rays.iter().find(|r| lin_value(c, r).is_negative());
            let b = fundamental_box(p, &rays);
            let hull = integer_hull_bounded(&b).expect("bounded polyhedron");
            match down {
                Some(r) => match hull.into_iter().min_by_key(l1_key) {
                    Some(point) => SolveOutcome::Unbounded { point, ray: r.clone() },
                    None => SolveOutcome::Infeasible,
                },
                None => best_on_hull(hull, c),
            }
        }
    }
}

/// Every lattice point of `p` reachable by a bounded enumeration, for tests.
#[cfg(test)]
pub(crate) fn enumerate_box(p: &Polyhedron2, r: i64) -> Vec<IntPoint> {
    let mut v = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            if p.contains_int(&x, &y) {
                v.push((x, y));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn ip(a: i64, b: i64) -> IntPoint {
        (a.into(), b.into())
    }

    #[test]
    fn point_in_unbounded_triangle_region() {
        let p = Polyhedron2::from_i64(&[(-1, 0, -10), (0, -1, 3), (1, 1, 100)]);
        let q = ilp_point(&p).unwrap();
        assert!(p.contains_int(&q.0, &q.1));
    }

    #[test]
    fn parity_obstruction() {
        let p = Polyhedron2::from_i64(&[(2, 0, 1), (-2, 0, -1), (0, 1, 1), (0, -1, 0)]);
        assert_eq!(ilp_point(&p), None);
    }

    #[test]
    fn point_on_rational_segment() {
        let p = Polyhedron2::from_i64(&[(3, -2, 0), (-3, 2, 0), (1, 0, 9), (-1, 0, -1)]);
        let q = ilp_point(&p).unwrap();
        assert!(p.contains_int(&q.0, &q.1));
        assert!([ip(2, 3), ip(4, 6), ip(6, 9), ip(8, 12)].contains(&q));
    }

    #[test]
    fn linear_min_over_box() {
        let p = Polyhedron2::rect(&rat(1, 2), &rat(5, 2), &rat(1, 2), &rat(5, 2));
        assert_eq!(ilp_min_linear(&p, &(rat(1, 1), rat(0, 1))), SolveOutcome::optimal(ip(1, 1), rat(1, 1)));
    }

    #[test]
    fn linear_min_unbounded_ray() {
        let p = Polyhedron2::from_i64(&[(1, 0, 0), (0, 1, 0), (0, -1, 0)]);
        assert_eq!(
            ilp_min_linear(&p, &(rat(1, 1), rat(0, 1))),
            SolveOutcome::Unbounded { point: ip(0, 0), ray: ip(-1, 0) }
        );
    }

    #[test]
    fn linear_min_latticeless_triangle() {
        let p = Polyhedron2::new(vec![
            Row::new(rat(-1, 1), rat(0, 1), rat(-1, 5)),
            Row::new(rat(0, 1), rat(-1, 1), rat(-7, 10)),
            Row::new(rat(1, 1), rat(1, 1), rat(7, 5)),
        ]);
        assert_eq!(ilp_min_linear(&p, &(rat(1, 1), rat(1, 1))), SolveOutcome::Infeasible);
    }

    proptest! {
        #[test]
        fn ilp_point_agrees_with_enumeration(
            rows in prop::collection::vec((-6i64..=6, -6i64..=6, -40i64..=40), 1..5),
            den in 1i64..4,
        ) {
            let mut p = Polyhedron2::square(&BigInt::from(12));
            for (a, b, c) in rows {
                p = p.with_row(Row::new(rat(a, 1), rat(b, 1), rat(c, den)));
            }
            let brute = enumerate_box(&p, 12);
            match ilp_point(&p) {
                Some(q) => prop_assert!(p.contains_int(&q.0, &q.1)),
                None => prop_assert!(brute.is_empty()),
            }
        }

        #[test]
        fn linear_min_agrees_with_enumeration(
            rows in prop::collection::vec((-6i64..=6, -6i64..=6, -40i64..=40), 1..5),
            cx in -4i64..=4, cy in -4i64..=4,
        ) {
            let mut p = Polyhedron2::square(&BigInt::from(10));
            for (a, b, c) in rows {
                p = p.with_row(Row::from_i64(a, b, c));
            }
            let c = (rat(cx, 1), rat(cy, 1));
            let brute = enumerate_box(&p, 10)
                .into_iter()
                .map(|q| { let v = lin_value(&c, &q); SolveOutcome::optimal(q, v) })
                .fold(SolveOutcome::Infeasible, SolveOutcome::merge);
            prop_assert_eq!(ilp_min_linear(&p, &c), brute);
        }

        #[test]
        fn unbounded_linear_min_is_certified(
            rows in prop::collection::vec((-5i64..=5, -5i64..=5, -20i64..=20), 1..4),
            cx in -3i64..=3, cy in -3i64..=3,
        ) {
            let p = Polyhedron2::from_i64(&rows.iter().map(|&(a, b, c)| (a, b, c)).collect::<Vec<_>>());
            let c = (rat(cx, 1), rat(cy, 1));
            match ilp_min_linear(&p, &c) {
                SolveOutcome::Unbounded { point, ray } => {
                    prop_assert!(p.contains_int(&point.0, &point.1));
                    prop_assert!(lin_value(&c, &ray).is_negative());
                    for r in p.rows() {
                        let d = &r.a * Rat::from_integer(ray.0.clone()) + &r.b * Rat::from_integer(ray.1.clone());
                        prop_assert!(!d.is_positive());
                    }
                }
                SolveOutcome::Optimal { point, value } => {
                    prop_assert!(p.contains_int(&point.0, &point.1));
                    prop_assert_eq!(value.clone(), lin_value(&c, &point));
                    for q in enumerate_box(&p, 15) {
                        prop_assert!(lin_value(&c, &q) >= value);
                    }
                }
                SolveOutcome::Infeasible => prop_assert!(enumerate_box(&p, 15).is_empty()),
            }
        }
    }
}
