use super::*;
use crate::exactmath::rat;
use crate::regions::{assert_division_valid as check_dd, brute_minimum};
use proptest::prelude::*;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bp(terms: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_i64(terms)
}

fn sq(r: i64) -> Polyhedron2 {
    Polyhedron2::square(&b(r))
}

fn half_int(k: i64) -> Rat {
    rat(2 * k + 1, 2)
}

#[test]
fn orientation_examples() {
    let s = slice_and_orient(&bp(&[(1, 0, 3), (1, 1, 0)])).unwrap();
    assert!(s.swapped);
    assert_eq!((s.deg_y, s.deg_x), (1, 3));
    assert_eq!(s.f(0), &UniPoly::from_i64(&[0, 0, 0, 1]));
    assert_eq!(s.f(1), &UniPoly::from_i64(&[1]));
    let s = slice_and_orient(&bp(&[(1, 3, 0)])).unwrap();
    assert_eq!((s.deg_y, s.swapped), (0, false));
    let s = slice_and_orient(&bp(&[(1, 2, 1), (1, 0, 2)])).unwrap();
    assert_eq!((s.deg_y, s.deg_x), (2, 2));
    assert_eq!(s.f(0), &UniPoly::zero());
    assert_eq!(s.f(1), &UniPoly::from_i64(&[0, 0, 1]));
    assert_eq!(s.f(2), &UniPoly::from_i64(&[1]));
    assert_eq!(slice_and_orient(&bp(&[(1, 4, 0)])), Err(Error::DegreeTooHigh(4)));
}

#[test]
fn single_variable_examples() {
    let s = slice_and_orient(&bp(&[(1, 2, 0)])).unwrap();
    assert_eq!(solve_degy0(&s, &sq(3)).unwrap(), SolveOutcome::optimal((b(0), b(-3)), rat(0, 1)));
    let tri = Polyhedron2::from_i64(&[(-1, 0, 0), (0, -1, 0), (1, 1, 5)]);
    let s = slice_and_orient(&bp(&[(-1, 1, 0)])).unwrap();
    assert_eq!(solve_degy0(&s, &tri).unwrap(), SolveOutcome::optimal((b(5), b(0)), rat(-5, 1)));
    let s = slice_and_orient(&bp(&[(1, 3, 0), (-3, 1, 0)])).unwrap();
    assert_eq!(solve_degy0(&s, &sq(2)).unwrap(), SolveOutcome::optimal((b(-2), b(-2)), rat(-2, 1)));
}

#[test]
fn linear_in_y_examples() {
    let r = 6;
    let f = bp(&[(1, 0, 1), (1, 2, 0)]);
    let s = slice_and_orient(&f).unwrap();
    let dd = dd_degy1(&s, &half_int(0), &b(r)).unwrap();
    check_dd(&f, &half_int(0), r, &dd);
    let f = bp(&[(1, 1, 1), (1, 0, 0)]);
    let s = YSlices::new(&f).unwrap();
    for k in [-3, 0, 2] {
        let dd = dd_degy1(&s, &half_int(k), &b(5)).unwrap();
        check_dd(&f, &half_int(k), 5, &dd);
    }
    let f = bp(&[(1, 0, 1)]);
    let s = YSlices::new(&f).unwrap();
    let dd = dd_degy1(&s, &half_int(-1), &b(4)).unwrap();
    assert_eq!(dd.convex_side.len(), 1);
    assert!(dd.concave_side.is_empty() && dd.lines.is_empty());
    check_dd(&f, &half_int(-1), 4, &dd);
}

#[test]
fn quadratic_in_y_examples() {
    // Concave upper branch over convex lower branch.
    let f = bp(&[(8, 0, 2), (4, 1, 2), (-32, 0, 1), (1, 3, 0), (-4, 2, 0), (-16, 1, 0), (32, 0, 0)]);
    let s = YSlices::new(&f).unwrap();
    for k in [-1, 0, 5] {
        let dd = dd_degy2(&s, &half_int(k), &b(6)).unwrap();
        check_dd(&f, &half_int(k), 6, &dd);
    }
    // Both branches concave where 4x - 1 > 0.
    let f = bp(&[(4, 1, 2), (-1, 0, 2), (32, 0, 1), (2, 2, 0), (-16, 1, 0), (-32, 0, 0)]);
    let s = YSlices::new(&f).unwrap();
    let rep = branch_analysis(s.f(0), s.f(1), s.f(2), &Rat::zero()).unwrap();
    let iv = rep.interval_at(&rat(5, 1)).unwrap();
    assert_eq!((iv.plus, iv.minus), (Some(Curvature::Concave), Some(Curvature::Concave)));
    for k in [-1, 0, 3] {
        let dd = dd_degy2(&s, &half_int(k), &b(8)).unwrap();
        check_dd(&f, &half_int(k), 8, &dd);
    }
    // Sideways parabola x = omega - y^2.
    let f = bp(&[(1, 0, 2), (1, 1, 0)]);
    let s = YSlices::new(&f).unwrap();
    for k in [-4, 0, 3] {
        let dd = dd_degy2(&s, &half_int(k), &b(10)).unwrap();
        check_dd(&f, &half_int(k), 10, &dd);
    }
    // Perfect square: the level set is a line.
    let f = bp(&[(1, 0, 2), (2, 1, 1), (1, 2, 0)]);
    let s = YSlices::new(&f).unwrap();
    let dd = dd_degy2(&s, &half_int(2), &b(5)).unwrap();
    check_dd(&f, &half_int(2), 5, &dd);
}

#[test]
fn shear_examples() {
    let f = bp(&[(1, 3, 0), (3, 2, 1), (3, 1, 2), (1, 0, 3), (1, 1, 0)]);
    let sh = shear_for(&f, &b(8)).unwrap();
    assert_eq!((sh.slope.clone(), sh.exact), (rat(-1, 1), true));
    assert_eq!(sh.sheared, bp(&[(1, 0, 3), (1, 1, 0)]));
    let s = YSlices::new(&f).unwrap();
    for k in [-2, 0, 7] {
        let dd = dd_degy3(&s, &half_int(k), &b(8)).unwrap();
        check_dd(&f, &half_int(k), 8, &dd);
    }
    let g = bp(&[(1, 0, 3), (1, 1, 0)]);
    let sh = shear_for(&g, &b(5)).unwrap();
    assert_eq!((sh.slope.clone(), sh.exact), (Rat::zero(), true));
    assert_eq!(sh.approx, g);
}

#[test]
fn shear_error_is_at_most_a_quarter() {
    let f = bp(&[(2, 3, 0), (1, 0, 3)]);
    let r = 10;
    let sh = shear_for(&f, &b(r)).unwrap();
    assert!(!sh.exact);
    let quarter = rat(1, 4);
    for x in -r..=r {
        for y in -r..=r {
            let (xr, yr) = (rat(x, 1), rat(y, 1));
            assert!(rat_abs(&(f.eval(&xr, &yr) - sh.approx.eval(&xr, &yr))) <= quarter);
        }
    }
    let s = YSlices::new(&f).unwrap();
    for k in [-30, 0, 11] {
        let dd = dd_degy3(&s, &half_int(k), &b(r)).unwrap();
        check_dd(&f, &half_int(k), r, &dd);
    }
}

#[test]
fn bounded_solver_examples() {
    let f = bp(&[(1, 3, 0), (1, 0, 3)]);
    assert_eq!(solve_cubic_bounded(&f, &sq(3)).unwrap(), SolveOutcome::optimal((b(-3), b(-3)), rat(-54, 1)));
    let f = bp(&[(1, 1, 1)]);
    assert_eq!(solve_cubic_bounded(&f, &sq(4)).unwrap(), SolveOutcome::optimal((b(-4), b(4)), rat(-16, 1)));
    let f = bp(&[(1, 3, 0), (-3, 1, 2), (-2, 0, 3), (1, 1, 0), (1, 0, 1)]);
    assert_eq!(solve_cubic_bounded(&f, &sq(6)).unwrap(), brute_minimum(&f, &sq(6)));
    let tri = Polyhedron2::from_i64(&[(-1, 0, 0), (0, -1, 0), (1, 1, 5)]);
    let f = bp(&[(1, 0, 3), (-7, 1, 1), (2, 1, 0)]);
    assert_eq!(solve_cubic_bounded(&f, &tri).unwrap(), brute_minimum(&f, &tri));
    let thin = Polyhedron2::from_i64(&[(1, -1, 0), (-1, 1, 0), (1, 0, 4), (-1, 0, 4)]);
    assert_eq!(solve_cubic_bounded(&f, &thin).unwrap(), brute_minimum(&f, &thin));
    assert_eq!(solve_cubic_bounded(&bp(&[(1, 4, 0)]), &sq(1)), Err(Error::DegreeTooHigh(4)));
}

fn cubic_terms() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
    let monos: Vec<(u32, u32)> = (0..=3u32).flat_map(|d| (0..=d).map(move |j| (d - j, j))).collect();
    prop::collection::vec(-9i64..=9, monos.len())
        .prop_map(move |c| c.into_iter().zip(monos.iter()).map(|(c, (i, j))| (c, *i, *j)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn descriptions_cover_and_decide(terms in cubic_terms(), r in 2i64..=6, k in -40i64..=40) {
        let f = bp(&terms);
        let s = slice_and_orient(&f).unwrap();
        prop_assume!(s.deg_y > 0);
        let g = &s.poly;
        let omega = half_int(k);
        let dd = dd_for(&s, &omega, &b(r)).unwrap();
        check_dd(g, &omega, r, &dd);
    }

    #[test]
    fn solver_matches_enumeration(
        terms in cubic_terms(),
        rows in prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=8), 0..3),
        r in 1i64..=5,
    ) {
        let f = bp(&terms);
        let mut p = sq(r);
        for (a, bb, c) in rows {
            p = p.with_row(Row::from_i64(a, bb, c));
        }
        prop_assert_eq!(solve_cubic_bounded(&f, &p).unwrap(), brute_minimum(&f, &p));
    }
}
