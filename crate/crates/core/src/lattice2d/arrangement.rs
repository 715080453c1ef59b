use super::hull::LatticeLine;
use super::polyhedron::{Polyhedron2, Row};
use crate::error::{Error, Result};
use crate::exactmath::{half, Rat, Sign};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Open full-dimensional cell of a line arrangement inside a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Sign of `a*x + b*y - c` for each line.
    pub sign_vector: Vec<Sign>,
    pub interior_point: (Rat, Rat),
    /// Closure of the cell.
    pub region: Polyhedron2,
}

fn rat_of(i: &num_bigint::BigInt) -> Rat {
    Rat::from_integer(i.clone())
}

fn box_edge_lines(bounds: &Polyhedron2) -> Vec<(Rat, Rat, Rat)> {
    bounds.rows().iter().map(|r| (r.a.clone(), r.b.clone(), r.c.clone())).collect()
}

fn intersection_x(p: &(Rat, Rat, Rat), q: &(Rat, Rat, Rat)) -> Option<Rat> {
    let det = &p.0 * &q.1 - &p.1 * &q.0;
    if det.is_zero() {
        None
    } else {
        Some((&p.2 * &q.1 - &p.1 * &q.2) / det)
    }
}

/// Cells of the arrangement of `lines` restricted to the bounded polyhedron `bounds`.
pub fn arrangement_cells(lines: &[LatticeLine], bounds: &Polyhedron2) -> Result<Vec<Cell>> {
    if !bounds.is_bounded() {
        return Err(Error::UnboundedRegion);
    }
    let Some((Some(xlo), Some(xhi))) = bounds.x_range() else {
        return Ok(vec![]);
    };
    let rows: Vec<(Rat, Rat, Rat)> = lines.iter().map(|l| (rat_of(&l.a), rat_of(&l.b), rat_of(&l.c))).collect();
    let mut all = rows.clone();
    all.extend(box_edge_lines(bounds));
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    xs.insert(xlo.clone());
    xs.insert(xhi.clone());
    for (i, p) in all.iter().enumerate() {
        if p.1.is_zero() && !p.0.is_zero() {
            xs.insert(&p.2 / &p.0);
        }
        for q in &all[i + 1..] {
            if let Some(x) = intersection_x(p, q) {
                xs.insert(x);
            }
        }
    }
    let xs: Vec<Rat> = xs.into_iter().filter(|x| *x >= xlo && *x <= xhi).collect();
    let mut seen: BTreeSet<Vec<Sign>> = BTreeSet::new();
    let mut cells = Vec::new();
    for w in xs.windows(2) {
        let xm = (&w[0] + &w[1]) * half();
        let Some((Some(ylo), Some(yhi))) = bounds.column(&xm) else {
            continue;
        };
        let mut ys: Vec<Rat> = rows
            .iter()
            .filter(|r| !r.1.is_zero())
            .map(|r| (&r.2 - &r.0 * &xm) / &r.1)
            .filter(|y| *y > ylo && *y < yhi)
            .collect();
        ys.push(ylo.clone());
        ys.push(yhi.clone());
        ys.sort();
        ys.dedup();
        for pair in ys.windows(2) {
            let ym = (&pair[0] + &pair[1]) * half();
            let sv: Vec<Sign> = rows.iter().map(|r| Sign::of_rat(&(&r.0 * &xm + &r.1 * &ym - &r.2))).collect();
            if !seen.insert(sv.clone()) {
                continue;
            }
            let mut region = bounds.clone();
            for (r, s) in rows.iter().zip(&sv) {
                let row = match s {
                    Sign::Negative => Row::new(r.0.clone(), r.1.clone(), r.2.clone()),
                    _ => Row::new(-&r.0, -&r.1, -&r.2),
                };
                region = region.with_row(row);
            }
            cells.push(Cell { sign_vector: sv, interior_point: (xm.clone(), ym), region });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::lattice2d::double_area;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn sq(r: i64) -> Polyhedron2 {
        Polyhedron2::square(&BigInt::from(r))
    }

    #[test]
    fn quadrants() {
        let lines = [LatticeLine::from_i64(1, 0, 0).unwrap(), LatticeLine::from_i64(0, 1, 0).unwrap()];
        let cells = arrangement_cells(&lines, &sq(2)).unwrap();
        let svs: BTreeSet<Vec<Sign>> = cells.iter().map(|c| c.sign_vector.clone()).collect();
        use Sign::*;
        let expect: BTreeSet<Vec<Sign>> =
            [vec![Positive, Positive], vec![Positive, Negative], vec![Negative, Positive], vec![Negative, Negative]]
                .into_iter()
                .collect();
        assert_eq!(svs, expect);
    }

    #[test]
    fn single_line_two_cells() {
        let lines = [LatticeLine::from_i64(1, 0, 0).unwrap()];
        assert_eq!(arrangement_cells(&lines, &sq(1)).unwrap().len(), 2);
    }

    #[test]
    fn three_concurrent_lines_six_sectors() {
        let lines = [
            LatticeLine::from_i64(1, 0, 0).unwrap(),
            LatticeLine::from_i64(0, 1, 0).unwrap(),
            LatticeLine::from_i64(1, -1, 0).unwrap(),
        ];
        assert_eq!(arrangement_cells(&lines, &sq(2)).unwrap().len(), 6);
    }

    proptest! {
        #[test]
        fn cells_tile_the_box(
            raw in prop::collection::btree_set((-3i64..=3, -3i64..=3, -5i64..=5), 0..5),
        ) {
            let lines: BTreeSet<LatticeLine> = raw
                .into_iter()
                .filter(|&(a, b, _)| a != 0 || b != 0)
                .map(|(a, b, c)| LatticeLine::from_i64(a, b, c).unwrap())
                .collect();
            let lines: Vec<LatticeLine> = lines.into_iter().collect();
            let b = sq(4);
            let cells = arrangement_cells(&lines, &b).unwrap();
            let mut total = Rat::zero();
            for c in &cells {
                let (x, y) = &c.interior_point;
                prop_assert!(b.contains_strictly(x, y));
                for (l, s) in lines.iter().zip(&c.sign_vector) {
                    prop_assert_ne!(*s, Sign::Zero);
                    prop_assert_eq!(Sign::of_rat(&l.value(x, y)), *s);
                }
                total += double_area(&c.region.vertices());
            }
            prop_assert_eq!(total, rat(128, 1));
        }
    }
}
