use super::hessian::{detect_translatable, TranslationWitness};
use crate::error::{Error, Result};
use crate::exactmath::{is_integer, isolate_roots, rational_root, refine_root, BiPoly, Rat, RootInterval, Sign, UniPoly};
use crate::lattice2d::{line_in_thin_polytope, LatticeLine, Polyhedron2, Row};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Lattice points of a box split into pieces where `F > 0`, pieces where `F < 0`, and lines.
#[derive(Clone, Debug, Default)]
pub struct SignPartition {
    pub positive: Vec<Polyhedron2>,
    pub negative: Vec<Polyhedron2>,
    pub lines: Vec<LatticeLine>,
    pub bounds: Polyhedron2,
}

impl SignPartition {
    pub fn covers(&self, x: &BigInt, y: &BigInt) -> bool {
        self.positive.iter().chain(&self.negative).any(|p| p.contains_int(x, y))
            || self.lines.iter().any(|l| l.contains_int(x, y))
    }

    fn push_line(&mut self, l: LatticeLine) {
        if !self.lines.contains(&l) {
            self.lines.push(l);
        }
    }
}

type Dir = (Rat, Rat);

fn cross(a: &Dir, b: &Dir) -> Rat {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn neg(d: &Dir) -> Dir {
    (-d.0.clone(), -d.1.clone())
}

fn half_plane(d: &Dir) -> u8 {
    if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &Dir, b: &Dir) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| Rat::zero().cmp(&cross(a, b)))
}

/// A zero direction of the homogeneous image: exact, or bracketed by a thin wedge.
#[derive(Clone, Debug)]
enum Ray {
    Exact(Dir),
    Wedge(Dir, Dir),
}

impl Ray {
    fn start(&self) -> &Dir {
        match self {
            Ray::Exact(d) | Ray::Wedge(d, _) => d,
        }
    }

    fn end(&self) -> &Dir {
        match self {
            Ray::Exact(d) | Ray::Wedge(_, d) => d,
        }
    }

    fn opposite(&self) -> Ray {
        match self {
            Ray::Exact(d) => Ray::Exact(neg(d)),
            Ray::Wedge(a, b) => Ray::Wedge(neg(a), neg(b)),
        }
    }
}

/// Rows of `cross(a, z - t) >= 0`.
fn left_of(a: &Dir, t: &Dir) -> Row {
    Row::new(a.1.clone(), -a.0.clone(), &a.1 * &t.0 - &a.0 * &t.1)
}

fn line_through(t: &Dir, d: &Dir) -> Result<LatticeLine> {
    // d.1 (x - t1) - d.0 (y - t2) = 0
    LatticeLine::from_rat(&d.1, &-d.0.clone(), &(&d.1 * &t.0 - &d.0 * &t.1))
}

/// Partition of `[-R, R]^2` by the sign of a homogeneous-translatable `F`.
///
/// Every zero line of `F` passes through the translation point; rational zero directions give
/// exact lines, irrational ones thin wedges whose lattice points lie on one line, and the convex
/// sectors between them carry a constant sign.
pub fn sign_partition(f: &BiPoly, radius: &BigInt, hint: Option<&TranslationWitness>) -> Result<SignPartition> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let witness = match hint {
        Some(w) => w.clone(),
        None => detect_translatable(f).ok_or(Error::NotTranslatable)?,
    };
    let bounds = Polyhedron2::square(radius);
    let mut out = SignPartition { bounds: bounds.clone(), ..Default::default() };
    let t = witness.t.clone();
    let h = &witness.homogeneous_image;
    let d = h.degree();
    let mut rays: Vec<Ray> = Vec::new();
    if d > 0 {
        // Zero directions (1, m) with h(1, m) = 0, plus (0, 1) when h(0, 1) = 0.
        let slopes = UniPoly::new((0..=d).map(|j| h.coeff(d - j, j)).collect());
        if h.coeff(0, d).is_zero() {
            rays.push(Ray::Exact((Rat::zero(), Rat::one())));
        }
        if !slopes.is_constant() {
            let width = Rat::new(BigInt::one(), radius * 4);
            for iv in isolate_roots(&slopes, &width)? {
                rays.push(slope_ray(&slopes, &iv, &t, &bounds, &mut out)?);
            }
        }
    }
    let mut all: Vec<Ray> = rays.iter().flat_map(|r| [r.clone(), r.opposite()]).collect();
    all.sort_by(|a, b| angle_cmp(a.start(), b.start()));
    for r in &all {
        if let Ray::Exact(dir) = r {
            out.push_line(line_through(&t, dir)?);
        }
    }
    let apex_split = is_integer(&t.0) && is_integer(&t.1);
    if apex_split {
        out.push_line(LatticeLine::from_rat(&Rat::one(), &Rat::zero(), &t.0)?);
    }
    let mut sectors: Vec<(Vec<Row>, Dir)> = Vec::new();
    if all.is_empty() {
        sectors.push((vec![], (&t.0 + Rat::one(), &t.1 + Rat::one())));
    }
    for i in 0..all.len() {
        let (ra, rb) = (&all[i], &all[(i + 1) % all.len()]);
        let (a, b) = (ra.end(), rb.start());
        let turn = cross(a, b);
        let mut rows = vec![left_of(a, &t)];
        let inner = if turn.is_positive() {
            rows.push(left_of(&neg(b), &t));
            (&t.0 + &a.0 + &b.0, &t.1 + &a.1 + &b.1)
        } else if turn.is_zero() && all.len() == 2 {
            (&t.0 - &a.1, &t.1 + &a.0)
        } else {
            return Err(Error::Verification("sector wider than a half-plane".into()));
        };
        for (r, dir) in [(ra, a), (rb, b)] {
            if let Ray::Exact(_) = r {
                rows.push(offset_row(&line_through(&t, dir)?, &inner));
            }
        }
        sectors.push((rows, inner));
    }
    for (rows, inner) in sectors {
        let base = bounds.with_rows(rows);
        let pieces = if apex_split {
            vec![
                base.with_row(Row::new(Rat::one(), Rat::zero(), &t.0 - Rat::one())),
                base.with_row(Row::new(-Rat::one(), Rat::zero(), -(&t.0 + Rat::one()))),
            ]
        } else {
            vec![base]
        };
        let sign = Sign::of_rat(&f.eval(&inner.0, &inner.1));
        for p in pieces {
            if p.is_empty() {
                continue;
            }
            match sign {
                Sign::Positive => out.positive.push(p),
                Sign::Negative => out.negative.push(p),
                Sign::Zero => return Err(Error::Verification("zero inside a sign sector".into())),
            }
        }
    }
    Ok(out)
}

/// Row keeping the side of `line` holding `inner`, one lattice step away from the line.
fn offset_row(line: &LatticeLine, inner: &Dir) -> Row {
    let (a, b, c) = (Rat::from_integer(line.a.clone()), Rat::from_integer(line.b.clone()), Rat::from_integer(line.c.clone()));
    if line.value(&inner.0, &inner.1).is_positive() {
        Row::new(-a, -b, -(c + Rat::one()))
    } else {
        Row::new(a, b, c - Rat::one())
    }
}

/// Direction for an isolated root of `h(1, m)`, adding the wedge lines to the partition.
fn slope_ray(
    slopes: &UniPoly,
    iv: &RootInterval,
    t: &Dir,
    bounds: &Polyhedron2,
    out: &mut SignPartition,
) -> Result<Ray> {
    if let Some(m) = rational_root(slopes, iv) {
        return Ok(Ray::Exact((Rat::one(), m)));
    }
    let mut iv = iv.clone();
    loop {
        let (lo, hi) = ((Rat::one(), iv.lo.clone()), (Rat::one(), iv.hi.clone()));
        let mut lines = Vec::new();
        let mut fat = false;
        for (a, b) in [(lo.clone(), hi.clone()), (neg(&lo), neg(&hi))] {
            let wedge = bounds.with_rows([left_of(&a, t), left_of(&neg(&b), t)]);
            let v = wedge.vertices();
            if v.is_empty() {
                continue;
            }
            match line_in_thin_polytope(&v) {
                Ok(l) => lines.push(l),
                Err(Error::TooFat) => {
                    fat = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !fat {
            for l in lines {
                out.push_line(l);
            }
            return Ok(Ray::Wedge(lo, hi));
        }
        let w = iv.width() / Rat::from_integer(4.into());
        iv = refine_root(slopes, &iv, &w);
    }
}
