use super::hull::{convex_hull, integer_hull_bounded, polygon_polyhedron, to_rat_point, LatticeLine};
use super::polyhedron::double_area;
use crate::error::{Error, Result};
use crate::exactmath::Rat;
use num_bigint::BigInt;
use num_traits::One;

/// A line through every lattice point of the polygon `conv(points)`, whose area must be below 1/2.
/// Returns `y = 0` when the polygon has no lattice point.
pub fn line_in_thin_polytope(points: &[(Rat, Rat)]) -> Result<LatticeLine> {
    let hull = convex_hull(points);
    if double_area(&hull) >= Rat::one() {
        return Err(Error::TooFat);
    }
    let lattice = integer_hull_bounded(&polygon_polyhedron(&hull))?;
    match lattice.len() {
        0 => LatticeLine::new(BigInt::from(0), BigInt::from(1), BigInt::from(0)),
        1 => LatticeLine::new(BigInt::from(1), BigInt::from(0), lattice[0].0.clone()),
        2 => LatticeLine::through(&to_rat_point(&lattice[0]), &to_rat_point(&lattice[1])),
        _ => unreachable!("three non-collinear lattice points span area at least 1/2"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::lattice2d::ilp::enumerate_box;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    #[test]
    fn flat_rectangle_gives_axis() {
        let k = [(r(0, 1), r(0, 1)), (r(2, 1), r(0, 1)), (r(2, 1), r(1, 5)), (r(0, 1), r(1, 5))];
        let l = line_in_thin_polytope(&k).unwrap();
        assert_eq!(l, LatticeLine::from_i64(0, 1, 0).unwrap());
    }

    #[test]
    fn symmetric_sliver_gives_axis() {
        let k = [(r(-1, 1), r(-1, 10)), (r(1, 1), r(-1, 10)), (r(1, 1), r(1, 10)), (r(-1, 1), r(1, 10))];
        assert_eq!(line_in_thin_polytope(&k).unwrap(), LatticeLine::from_i64(0, 1, 0).unwrap());
    }

    #[test]
    fn latticeless_square_gives_some_line() {
        let k = [(r(3, 10), r(3, 10)), (r(7, 10), r(3, 10)), (r(7, 10), r(7, 10)), (r(3, 10), r(7, 10))];
        assert!(line_in_thin_polytope(&k).is_ok());
    }

    #[test]
    fn fat_polygon_rejected() {
        let k = [(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(0, 1), r(1, 1))];
        assert_eq!(line_in_thin_polytope(&k), Err(Error::TooFat));
    }

    proptest! {
        #[test]
        fn thin_line_covers_lattice_points(
            x0 in -8i64..8, y0 in -8i64..8, dx in -6i64..6, dy in -6i64..6,
            w in 1i64..6, den in 8i64..40,
        ) {
            let p = (r(x0, 1), r(y0, 1));
            let q = (r(x0 + dx, 1), r(y0 + dy, 1));
            let off = (r(-dy * w, den * 4), r(dx * w, den * 4));
            let k = vec![
                p.clone(),
                q.clone(),
                (&q.0 + &off.0, &q.1 + &off.1),
                (&p.0 + &off.0, &p.1 + &off.1),
            ];
            match line_in_thin_polytope(&k) {
                Ok(l) => {
                    let poly = polygon_polyhedron(&k);
                    for (x, y) in enumerate_box(&poly, 20) {
                        prop_assert!(l.contains_int(&x, &y));
                    }
                }
                Err(e) => prop_assert_eq!(e, Error::TooFat),
            }
        }
    }
}
