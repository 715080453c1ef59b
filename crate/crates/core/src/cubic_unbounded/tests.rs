use super::*;
use crate::exactmath::rat;
use crate::regions::brute_minimum;
use proptest::prelude::*;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_i64(t)
}

fn poly(rows: &[(i64, i64, i64)]) -> Polyhedron2 {
    Polyhedron2::from_i64(rows)
}

/// Exact certificate check: feasible start, integral ray of the recession cone, negative leading
/// coefficient along the ray and strict decrease at `10^k` steps.
fn assert_certificate(f: &BiPoly, p: &Polyhedron2, point: &IntPoint, ray: &IntPoint) {
    assert!(p.contains_int(&point.0, &point.1), "start {point:?} infeasible");
    assert!(p.contains_int(&(&point.0 + &ray.0), &(&point.1 + &ray.1)));
    let (rx, ry) = (Rat::from_integer(ray.0.clone()), Rat::from_integer(ray.1.clone()));
    assert!(p.rows().iter().all(|r| !(&r.a * &rx + &r.b * &ry).is_positive()), "ray {ray:?} leaves P");
    let phi = f.along_line(&Rat::from_integer(point.0.clone()), &Rat::from_integer(point.1.clone()), &rx, &ry);
    assert!(phi.leading().unwrap().is_negative() && phi.degree().unwrap() > 0);
    let mut last: Option<Rat> = None;
    for k in 0..=4u32 {
        let v = phi.eval(&Rat::from_integer(num_traits::pow(b(10), k as usize)));
        if let Some(l) = &last {
            assert!(&v < l, "not decreasing at 10^{k}");
        }
        last = Some(v);
    }
}

#[test]
fn spec_examples() {
    let strip = poly(&[(-1, 0, 0), (0, -1, 0), (0, 1, 1)]);
    assert_eq!(
        solve_cubic(&bp(&[(-1, 3, 0)]), &strip).unwrap(),
        SolveOutcome::Unbounded { point: (b(0), b(0)), ray: (b(1), b(0)) }
    );
    let quadrant = poly(&[(-1, 0, 0), (0, -1, 0)]);
    assert_eq!(
        solve_cubic(&bp(&[(1, 3, 0), (1, 0, 3)]), &quadrant).unwrap(),
        SolveOutcome::optimal((b(0), b(0)), rat(0, 1))
    );
    let lower = poly(&[(-1, 0, 0), (0, -1, 1), (0, 1, 0)]);
    assert_eq!(
        solve_cubic(&bp(&[(1, 2, 1)]), &lower).unwrap(),
        SolveOutcome::Unbounded { point: (b(0), b(-1)), ray: (b(1), b(0)) }
    );
    assert_eq!(solve_cubic(&bp(&[(1, 0, 3)]), &quadrant).unwrap(), SolveOutcome::optimal((b(0), b(0)), rat(0, 1)));
}

#[test]
fn low_degree_unbounded_is_unsupported() {
    let quadrant = poly(&[(-1, 0, 0), (0, -1, 0)]);
    assert!(matches!(solve_cubic(&bp(&[(1, 2, 0)]), &quadrant), Err(Error::Unsupported(_))));
    let f = bp(&[(1, 2, 0), (1, 0, 0)]);
    let boxed = Polyhedron2::square(&b(2));
    assert_eq!(solve_cubic(&f, &boxed).unwrap(), SolveOutcome::optimal((b(0), b(-2)), rat(1, 1)));
}

#[test]
fn interior_double_line() {
    let quadrant = poly(&[(-1, 0, 0), (0, -1, 0)]);
    // (x - y)^2 (x + y) - 2x descends along the diagonal.
    let f = &bp(&[(1, 1, 0), (-1, 0, 1)]).pow(2) * &bp(&[(1, 1, 0), (1, 0, 1)]);
    let down = &f + &bp(&[(-2, 1, 0)]);
    match solve_cubic(&down, &quadrant).unwrap() {
        SolveOutcome::Unbounded { point, ray } => {
            assert_eq!(ray, (b(1), b(1)));
            assert_certificate(&down, &quadrant, &point, &ray);
        }
        other => panic!("expected unbounded, got {other:?}"),
    }
    let up = &f + &bp(&[(1, 1, 0), (1, 0, 1), (-3, 0, 0)]);
    let rep = solve_cubic_certified(&up, &quadrant).unwrap();
    let r = rep.radius.unwrap();
    let window = quadrant.intersect(&Polyhedron2::square(&(&r * 4 + 4)));
    assert_eq!(rep.outcome, brute_minimum(&up, &window));
}

#[test]
fn shifted_cone_with_positive_cubic() {
    // Cone with apex (2, -1) between directions (1, 0) and (1, 2).
    let cone = poly(&[(0, -1, 1), (-2, 1, -5)]);
    let f = bp(&[(1, 3, 0), (1, 0, 3), (2, 1, 2), (-40, 1, 0), (-15, 0, 1)]);
    let rep = solve_cubic_certified(&f, &cone).unwrap();
    let r = rep.radius.clone().unwrap();
    let window = cone.intersect(&Polyhedron2::square(&(&r * 4)));
    assert_eq!(rep.outcome, brute_minimum(&f, &window));
}

#[test]
fn reach_bounds_the_sector() {
    let f = bp(&[(1, 3, 0), (1, 0, 3), (-9, 1, 1), (-5, 0, 0)]);
    let apex = (Rat::zero(), Rat::zero());
    let reach = sector_reach(&f, &apex, &(b(1), b(0)), &(b(0), b(1)), &rat(-5, 1)).unwrap();
    let ev = f.int_evaluator();
    let lim = ceil(&reach);
    for x in 0..40i64 {
        for y in 0..40i64 {
            if BigInt::from(std::cmp::max(x, y)) > lim {
                assert!(Rat::from_integer(ev.eval_i64(x, y)) > rat(-5, 1));
            }
        }
    }
}

fn cubic_terms() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
    let monos: Vec<(u32, u32)> = (0..=3u32).flat_map(|d| (0..=d).map(move |j| (d - j, j))).collect();
    prop::collection::vec(-9i64..=9, monos.len())
        .prop_map(move |c| c.into_iter().zip(monos.iter()).map(|(c, (i, j))| (c, *i, *j)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn certificates_and_optima(
        terms in cubic_terms(),
        rows in prop::collection::vec((-3i64..=3, -3i64..=3, -6i64..=6), 1..4),
    ) {
        let f = bp(&terms);
        prop_assume!(f.degree() == 3);
        let p = poly(&rows);
        prop_assume!(!p.is_empty() && !p.is_bounded());
        let rep = solve_cubic_certified(&f, &p).unwrap();
        match &rep.outcome {
            SolveOutcome::Unbounded { point, ray } => assert_certificate(&f, &p, point, ray),
            SolveOutcome::Optimal { .. } => {
                let r = rep.radius.clone().unwrap();
                prop_assume!(r <= b(60));
                let window = p.intersect(&Polyhedron2::square(&std::cmp::max(&r * 4, b(8))));
                prop_assert_eq!(&rep.outcome, &brute_minimum(&f, &window));
            }
            SolveOutcome::Infeasible => {
                let window = p.intersect(&Polyhedron2::square(&b(30)));
                prop_assert!(brute_minimum(&f, &window).is_infeasible());
            }
        }
    }
}
