use super::*;
use crate::exactmath::{rat, substitute_affine};
use crate::regions::{assert_division_valid, brute_minimum};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_i64(t)
}

fn rect(a: i64, bb: i64, c: i64, d: i64) -> Polyhedron2 {
    Polyhedron2::rect(&rat(a, 1), &rat(bb, 1), &rat(c, 1), &rat(d, 1))
}

#[test]
fn division_examples() {
    for f in [bp(&[(1, 3, 0), (1, 0, 3)]), bp(&[(1, 2, 0), (1, 0, 2)]), bp(&[(1, 3, 0), (3, 2, 1), (3, 1, 2), (1, 0, 3)])] {
        let dd = quasi_division(&f, &b(6)).unwrap();
        for k in [-20i64, -3, 0, 4, 30] {
            assert_division_valid(&f, &rat(2 * k + 1, 2), 6, &dd);
        }
    }
    let cube = quasi_division(&bp(&[(1, 3, 0), (3, 2, 1), (3, 1, 2), (1, 0, 3)]), &b(4)).unwrap();
    assert!(cube.concave_side.is_empty());
    assert!(cube.lines.contains(&crate::lattice2d::LatticeLine::from_i64(1, 1, 0).unwrap()));
}

#[test]
fn solver_examples() {
    let pell = bp(&[(1, 4, 0), (-10, 2, 2), (25, 0, 4)]);
    let out = solve_homogeneous_bounded(&pell, &rect(1, 100, 1, 100)).unwrap();
    assert_eq!(out.value(), Some(&rat(1, 1)));
    let (x, y) = out.point().unwrap().clone();
    assert_eq!(pell.eval_int(&x, &y), rat(1, 1));
    let disk = bp(&[(1, 2, 0), (1, 0, 2)]);
    let p = rect(-5, 5, -5, 5).with_row(crate::lattice2d::Row::from_i64(-1, -1, -3));
    assert_eq!(solve_homogeneous_bounded(&disk, &p).unwrap(), SolveOutcome::optimal((b(1), b(2)), rat(5, 1)));
    let quartic = bp(&[(1, 4, 0), (1, 0, 4)]);
    assert_eq!(
        solve_homogeneous_bounded(&quartic, &rect(-3, 3, -3, 3)).unwrap(),
        SolveOutcome::optimal((b(0), b(0)), rat(0, 1))
    );
    assert_eq!(
        solve_homogeneous_bounded(&bp(&[(1, 2, 0), (1, 0, 1)]), &rect(0, 1, 0, 1)),
        Err(Error::NotTranslatable)
    );
}

fn homog(c: &[i64]) -> BiPoly {
    let d = c.len() as u32 - 1;
    BiPoly::from_i64(&c.iter().enumerate().map(|(i, &c)| (c, d - i as u32, i as u32)).collect::<Vec<_>>())
}

fn translated(c: &[i64], t: (i64, i64)) -> BiPoly {
    let (one, zero) = (Rat::one(), Rat::zero());
    substitute_affine(&homog(c), &one, &zero, &zero, &one, &rat(-t.0, 1), &rat(-t.1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn divisions_valid_at_every_level(
        c in prop::collection::vec(-4i64..=4, 3..5), t in (-3i64..=3, -3i64..=3),
        ks in prop::collection::vec(-60i64..=60, 5), r in 3i64..=6,
    ) {
        let f = translated(&c, t);
        prop_assume!(f.degree() as usize == c.len() - 1);
        let dd = quasi_division(&f, &b(r)).unwrap();
        for k in ks {
            assert_division_valid(&f, &rat(2 * k + 1, 2), r, &dd);
        }
    }

    #[test]
    fn solver_matches_enumeration(
        c in prop::collection::vec(-4i64..=4, 2..5), t in (-3i64..=3, -3i64..=3),
        lo in (-5i64..=0, -5i64..=0), size in (0i64..=6, 0i64..=6),
    ) {
        let f = translated(&c, t);
        prop_assume!(!f.is_zero());
        let p = rect(lo.0, lo.0 + size.0, lo.1, lo.1 + size.1);
        prop_assert_eq!(solve_homogeneous_bounded(&f, &p).unwrap(), brute_minimum(&f, &p));
    }
}
