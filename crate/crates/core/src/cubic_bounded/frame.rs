use crate::error::Result;
use crate::exactmath::{ceil, floor, Rat, RootInterval};
use crate::lattice2d::{LatticeLine, Polyhedron2, Row};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Affine coordinates `(s, t)` in which a division description is built. Lattice points have
/// `s` on the grid `(1/grid) Z`; the box is `[-R, R]^2` in the original coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    to_st: [[Rat; 2]; 2],
    to_xy: [[Rat; 2]; 2],
    pub grid: BigInt,
    pub s_lo: Rat,
    pub s_hi: Rat,
    pub bounds: Polyhedron2,
}

fn r(i: i64) -> Rat {
    Rat::from_integer(i.into())
}

impl Frame {
    /// `s = x`, `t = y`.
    pub fn identity(radius: &BigInt) -> Frame {
        let rr = Rat::from_integer(radius.clone());
        Frame {
            to_st: [[r(1), r(0)], [r(0), r(1)]],
            to_xy: [[r(1), r(0)], [r(0), r(1)]],
            grid: BigInt::one(),
            s_lo: -rr.clone(),
            s_hi: rr,
            bounds: Polyhedron2::square(radius),
        }
    }

    /// `s = y - a x`, `t = x`.
    pub fn shear(a: &Rat, radius: &BigInt) -> Frame {
        let rr = Rat::from_integer(radius.clone());
        let grid = a.denom().clone();
        let reach = &rr * (Rat::one() + a.abs());
        let mut f = Frame {
            to_st: [[-a.clone(), r(1)], [r(1), r(0)]],
            to_xy: [[r(0), r(1)], [r(1), a.clone()]],
            grid,
            s_lo: Rat::zero(),
            s_hi: Rat::zero(),
            bounds: Polyhedron2::square(radius),
        };
        f.s_lo = f.grid_floor(&-reach.clone());
        f.s_hi = f.grid_ceil(&reach);
        f
    }

    pub fn step(&self) -> Rat {
        Rat::new(BigInt::one(), self.grid.clone())
    }

    pub fn grid_floor(&self, v: &Rat) -> Rat {
        let g = Rat::from_integer(self.grid.clone());
        Rat::new(floor(&(v * &g)), self.grid.clone())
    }

    pub fn grid_ceil(&self, v: &Rat) -> Rat {
        let g = Rat::from_integer(self.grid.clone());
        Rat::new(ceil(&(v * &g)), self.grid.clone())
    }

    pub fn point_xy(&self, s: &Rat, t: &Rat) -> (Rat, Rat) {
        let m = &self.to_xy;
        (&m[0][0] * s + &m[0][1] * t, &m[1][0] * s + &m[1][1] * t)
    }

    /// The line `a s + b t = c` in original coordinates.
    pub fn line(&self, a: &Rat, b: &Rat, c: &Rat) -> Result<LatticeLine> {
        let m = &self.to_st;
        let na = a * &m[0][0] + b * &m[1][0];
        let nb = a * &m[0][1] + b * &m[1][1];
        LatticeLine::from_rat(&na, &nb, c)
    }

    pub fn column(&self, s: &Rat) -> Result<LatticeLine> {
        self.line(&Rat::one(), &Rat::zero(), s)
    }

    /// Region given by rows in `(s, t)`, expressed in original coordinates.
    pub fn region(&self, rows: Vec<Row>) -> Polyhedron2 {
        Polyhedron2::new(rows).pullback(&self.to_st, &[Rat::zero(), Rat::zero()])
    }

    pub fn strip_rows(lo: &Rat, hi: &Rat) -> Vec<Row> {
        vec![Row::new(r(1), r(0), hi.clone()), Row::new(r(-1), r(0), -lo.clone())]
    }

    /// Grid columns covering every interval, and the maximal root-free strips `[lo, hi]` between
    /// them (grid endpoints, `lo < hi`), all within the box's s-range.
    pub fn decompose(&self, intervals: &[RootInterval], lo: &Rat, hi: &Rat) -> (Vec<Rat>, Vec<(Rat, Rat)>) {
        let step = self.step();
        let mut blocked: Vec<(Rat, Rat)> = intervals
            .iter()
            .map(|iv| (self.grid_floor(&iv.lo), self.grid_ceil(&iv.hi)))
            .filter(|(a, b)| b >= lo && a <= hi)
            .map(|(a, b)| (if &a < lo { lo.clone() } else { a }, if &b > hi { hi.clone() } else { b }))
            .collect();
        blocked.sort();
        let mut merged: Vec<(Rat, Rat)> = Vec::new();
        for (a, b) in blocked {
            match merged.last_mut() {
                Some(last) if a <= &last.1 + &step => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let mut columns = Vec::new();
        for (a, b) in &merged {
            let mut g = a.clone();
            while &g <= b {
                columns.push(g.clone());
                g += &step;
            }
        }
        let mut strips = Vec::new();
        let mut start = lo.clone();
        for (a, b) in &merged {
            let end = a - &step;
            if end >= start {
                strips.push((start.clone(), end));
            }
            start = b + &step;
        }
        if hi >= &start {
            strips.push((start, hi.clone()));
        }
        let mut out_strips = Vec::new();
        for (a, b) in strips {
            if a == b {
                columns.push(a);
            } else {
                out_strips.push((a, b));
            }
        }
        columns.sort();
        (columns, out_strips)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn decomposition_blocks_roots() {
        let f = Frame::identity(&BigInt::from(5));
        let ivs = vec![
            RootInterval { lo: rat(7, 4), hi: rat(9, 4), multiplicity_hint: 1 },
            RootInterval { lo: rat(-1, 8), hi: rat(1, 8), multiplicity_hint: 1 },
        ];
        let (cols, strips) = f.decompose(&ivs, &f.s_lo.clone(), &f.s_hi.clone());
        assert_eq!(cols, vec![rat(-1, 1), rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1)]);
        assert_eq!(strips, vec![(rat(-5, 1), rat(-2, 1)), (rat(4, 1), rat(5, 1))]);
    }

    #[test]
    fn shear_maps_columns_to_lattice_lines() {
        let f = Frame::shear(&rat(1, 3), &BigInt::from(4));
        let l = f.column(&rat(2, 3)).unwrap();
        // y - x/3 = 2/3  <=>  -x + 3y = 2
        assert_eq!(l, LatticeLine::from_i64(-1, 3, 2).unwrap());
        assert_eq!(f.point_xy(&rat(2, 3), &rat(1, 1)), (rat(1, 1), rat(1, 1)));
    }
}
