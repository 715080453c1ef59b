use crate::error::{Error, Result};
use crate::exactmath::{isolate_roots, sign_surd, Rat, RootInterval, Sign, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Shape of a branch of the level curve over an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
    /// Affine, so both convex and concave.
    Both,
}

impl Curvature {
    fn from_sign(s: Sign) -> Curvature {
        match s {
            Sign::Positive => Curvature::Convex,
            Sign::Negative => Curvature::Concave,
            Sign::Zero => Curvature::Both,
        }
    }

    pub fn is_convex(self) -> bool {
        self != Curvature::Concave
    }

    pub fn is_concave(self) -> bool {
        self != Curvature::Convex
    }
}

/// Flags of one open interval between consecutive breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchInterval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
    pub f2_sign: Sign,
    pub disc_sign: Sign,
    /// Curvature of `(-f1 + sqrt(disc)) / (2 f2)`, when the discriminant is positive.
    pub plus: Option<Curvature>,
    /// Curvature of `(-f1 - sqrt(disc)) / (2 f2)`, when the discriminant is positive.
    pub minus: Option<Curvature>,
    /// Whether the plus branch lies above the minus branch.
    pub plus_above: Option<bool>,
}

/// Breakpoints of the two branches of `f2 y^2 + f1 y + f0 - omega = 0` and the flags of each
/// interval between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub breakpoints: Vec<Rat>,
    pub intervals: Vec<BranchInterval>,
    clusters: Vec<(Rat, Rat)>,
}

impl BranchReport {
    /// Interval holding `s`, or None when `s` is within a breakpoint's isolating range.
    pub fn interval_at(&self, s: &Rat) -> Option<&BranchInterval> {
        if self.clusters.iter().any(|(a, b)| a <= s && s <= b) {
            return None;
        }
        self.intervals
            .iter()
            .find(|iv| iv.lo.as_ref().is_none_or(|l| l < s) && iv.hi.as_ref().is_none_or(|h| s < h))
    }
}

/// Coefficient data of a quadratic-in-`t` level curve `f2 t^2 + f1 t + g = 0`.
#[derive(Clone, Debug)]
pub(crate) struct Quadratic {
    pub f2: UniPoly,
    pub f1: UniPoly,
    pub g: UniPoly,
    pub disc: UniPoly,
    p: UniPoly,
    q: UniPoly,
}

fn c(i: i64) -> Rat {
    Rat::from_integer(i.into())
}

impl Quadratic {
    pub fn new(g: &UniPoly, f1: &UniPoly, f2: &UniPoly) -> Result<Quadratic> {
        if f2.is_zero() {
            return Err(Error::ZeroLeadingSlice);
        }
        let disc = &(f1 * f1) - &(f2 * g).scale(&c(4));
        let (d1, d2) = (disc.derivative(), disc.derivative().derivative());
        let (a1, a2) = (f2.derivative(), f2.derivative().derivative());
        let (b1, b2) = (f1.derivative(), f1.derivative().derivative());
        let f2sq = f2 * f2;
        // -p = disc (2 f2^2 disc'' - 4 f2 f2' disc') + disc^2 (8 f2'^2 - 4 f2 f2'') - f2^2 disc'^2
        let t1 = &disc * &(&(&f2sq * &d2).scale(&c(2)) - &(&(f2 * &a1) * &d1).scale(&c(4)));
        let t2 = &(&disc * &disc) * &(&(&a1 * &a1).scale(&c(8)) - &(f2 * &a2).scale(&c(4)));
        let t3 = &f2sq * &(&d1 * &d1);
        let p = -&(&(&t1 + &t2) - &t3);
        // q = disc (4 f2 f1 f2'' + 8 f2 f2' f1' - 8 f1 f2'^2 - 4 f2^2 f1'')
        let inner = &(&(&(f2 * f1) * &a2).scale(&c(4)) + &(&(f2 * &a1) * &b1).scale(&c(8)))
            - &(&(&(f1 * &a1) * &a1).scale(&c(8)) + &(&f2sq * &b2).scale(&c(4)));
        let q = &disc * &inner;
        Ok(Quadratic { f2: f2.clone(), f1: f1.clone(), g: g.clone(), disc, p, q })
    }

    /// Isolating intervals of every breakpoint; `grid` sets the accuracy.
    pub fn breakpoint_intervals(&self, grid: &BigInt) -> Result<Vec<RootInterval>> {
        let fine = Rat::new(BigInt::one(), grid * 8);
        let coarse = Rat::new(BigInt::one(), grid * 4);
        let mut out = isolate_roots(&self.f2, &fine)?;
        if self.disc.is_zero() {
            return Ok(out);
        }
        out.extend(isolate_roots(&self.disc, &fine)?);
        let inflect = &(&self.p * &self.p) - &(&(&self.q * &self.q) * &self.disc);
        for poly in [&self.p, &self.q, &inflect] {
            if !poly.is_zero() {
                out.extend(isolate_roots(poly, &coarse)?);
            }
        }
        Ok(out)
    }

    /// Curvatures of the plus and minus branches at `s`, where `disc(s) > 0` and `f2(s) != 0`.
    pub fn curvature_at(&self, s: &Rat) -> (Curvature, Curvature) {
        let (p, q, d) = (self.p.eval(s), self.q.eval(s), self.disc.eval(s));
        let sf = self.f2.sign_at(s);
        let plus = sign_surd(&-p.clone(), &q, &d).mul(sf);
        let minus = sign_surd(&p, &q, &d).mul(sf);
        (Curvature::from_sign(plus), Curvature::from_sign(minus))
    }

    /// `t -> f2(s) t^2 + f1(s) t + g(s)`.
    pub fn column(&self, s: &Rat) -> UniPoly {
        UniPoly::new(vec![self.g.eval(s), self.f1.eval(s), self.f2.eval(s)])
    }

    /// `s -> f2(s) L(s)^2 + f1(s) L(s) + g(s)` for a line `L(s) = c + m (s - e)`.
    pub fn along(&self, c0: &Rat, m: &Rat, e: &Rat) -> UniPoly {
        let line = UniPoly::new(vec![c0 - m * e, m.clone()]);
        &(&self.g + &(&self.f1 * &line)) + &(&(&self.f2 * &line) * &line)
    }
}

/// Merges overlapping isolating intervals into sorted disjoint clusters.
pub(crate) fn clusters(mut ivs: Vec<RootInterval>) -> Vec<(Rat, Rat)> {
    ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    for iv in ivs {
        match out.last_mut() {
            Some(last) if iv.lo <= last.1 => {
                if iv.hi > last.1 {
                    last.1 = iv.hi;
                }
            }
            _ => out.push((iv.lo, iv.hi)),
        }
    }
    out
}

/// Breakpoints and per-interval branch flags for `f2 y^2 + f1 y + f0 - omega`.
pub fn branch_analysis(f0: &UniPoly, f1: &UniPoly, f2: &UniPoly, omega: &Rat) -> Result<BranchReport> {
    let g = f0 - &UniPoly::constant(omega.clone());
    let quad = Quadratic::new(&g, f1, f2)?;
    let ivs = quad.breakpoint_intervals(&BigInt::one())?;
    let breakpoints = {
        let mut b: Vec<Rat> = ivs.iter().map(|iv| iv.mid()).collect();
        b.sort();
        b
    };
    let cl = clusters(ivs);
    let mut bounds: Vec<(Option<Rat>, Option<Rat>)> = Vec::new();
    let mut prev: Option<Rat> = None;
    for (a, b) in &cl {
        bounds.push((prev.clone(), Some(a.clone())));
        prev = Some(b.clone());
    }
    bounds.push((prev, None));
    let intervals = bounds
        .into_iter()
        .map(|(lo, hi)| {
            let s = match (&lo, &hi) {
                (Some(a), Some(b)) => (a + b) / c(2),
                (Some(a), None) => a + Rat::one(),
                (None, Some(b)) => b - Rat::one(),
                (None, None) => Rat::zero(),
            };
            let f2_sign = quad.f2.sign_at(&s);
            let disc_sign = quad.disc.sign_at(&s);
            let (plus, minus, plus_above) = if disc_sign == Sign::Positive && f2_sign != Sign::Zero {
                let (p, m) = quad.curvature_at(&s);
                (Some(p), Some(m), Some(f2_sign == Sign::Positive))
            } else {
                (None, None, None)
            };
            BranchInterval { lo, hi, f2_sign, disc_sign, plus, minus, plus_above }
        })
        .collect();
    Ok(BranchReport { breakpoints, intervals, clusters: cl })
}
