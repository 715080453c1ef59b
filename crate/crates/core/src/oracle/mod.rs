//! Reference implementations for differential testing: seeded instance generation, exhaustive
//! minimization, certificate checking, and a harness comparing the solver against them.

mod brute;
mod differential;

pub use brute::{brute_force_min, check_certificate, MAX_POINTS};
pub use differential::{
    default_solver, describe, differential_run, differential_run_with, judge_solution, Record, RecordStatus, Report,
    Solver,
};

use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, Rat};
use crate::lattice2d::{Polyhedron2, Row};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Shape of the generated objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceDegree {
    /// Every monomial of total degree at most `d`, with `d <= 3`.
    Total(u32),
    /// Every monomial of total degree exactly `d`.
    Homogeneous(u32),
    /// A degree-`d` homogeneous form translated by a rational point with denominator at most 4,
    /// scaled to integer coefficients.
    Translatable(u32),
}

/// Parameters of one seeded random instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub degree: InstanceDegree,
    pub coeff_bound: u32,
    pub box_radius: u32,
    pub constraint_count: u32,
    pub unbounded: bool,
}

impl InstanceSpec {
    pub fn new(
        seed: u64,
        degree: InstanceDegree,
        coeff_bound: u32,
        box_radius: u32,
        constraint_count: u32,
        unbounded: bool,
    ) -> Result<InstanceSpec> {
        if coeff_bound == 0 || box_radius == 0 {
            return Err(Error::Unsupported("coeff_bound and box_radius must be at least 1".into()));
        }
        if matches!(degree, InstanceDegree::Total(d) if d > 3) {
            return Err(Error::Unsupported("total degree must be at most 3".into()));
        }
        Ok(InstanceSpec { seed, degree, coeff_bound, box_radius, constraint_count, unbounded })
    }

    /// Bounded cubic spec with the given seed and sizes.
    pub fn cubic(seed: u64, coeff_bound: u32, box_radius: u32, constraint_count: u32) -> InstanceSpec {
        InstanceSpec { seed, degree: InstanceDegree::Total(3), coeff_bound, box_radius, constraint_count, unbounded: false }
    }

    /// The box `[-R, R]^2` bounding generated regions.
    pub fn bounding_box(&self) -> Polyhedron2 {
        Polyhedron2::square(&BigInt::from(self.box_radius.max(1)))
    }
}

/// Deterministic instance for `spec`.
///
/// The generator is ChaCha8 seeded through `seed_from_u64(spec.seed)`, with draws made by
/// `gen_range` over inclusive integer ranges in a fixed order: objective coefficients by
/// increasing total degree then increasing power of `y`, the translation (if any), the anchor
/// point, then for each constraint its normal, anchor and slack. With probability 3/4 all
/// constraints share one anchor in the box, so the region meets the box at least that often.
pub fn gen_instance(spec: &InstanceSpec) -> (BiPoly, Polyhedron2) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let bound = i64::from(spec.coeff_bound.max(1));
    let r = i64::from(spec.box_radius.max(1));
    let f = match spec.degree {
        InstanceDegree::Total(d) => random_poly(&mut rng, d.min(3), bound, false),
        InstanceDegree::Homogeneous(d) => random_poly(&mut rng, d, bound, true),
        InstanceDegree::Translatable(d) => {
            let h = random_poly(&mut rng, d, bound, true);
            let q = rng.gen_range(1..=4i64);
            let half = (q * r / 2).max(1);
            let t = (Rat::new(rng.gen_range(-half..=half).into(), q.into()), Rat::new(rng.gen_range(-half..=half).into(), q.into()));
            let (one, zero) = (Rat::one(), Rat::zero());
            let moved = crate::exactmath::substitute_affine(&h, &one, &zero, &zero, &one, &-t.0, &-t.1);
            moved.scale(&moved.integer_scale())
        }
    };
    let anchor = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
    let shared = rng.gen_bool(0.75);
    let mut rows = Vec::new();
    for _ in 0..spec.constraint_count {
        let (a, b) = loop {
            let n = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
            if n != (0, 0) {
                break n;
            }
        };
        let own = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        let z = if shared { anchor } else { own };
        let slack = rng.gen_range(0..=r);
        rows.push(Row::from_i64(a, b, a * z.0 + b * z.1 + slack));
    }
    let p = Polyhedron2::new(rows);
    let p = if spec.unbounded { p } else { p.intersect(&spec.bounding_box()) };
    (f, p)
}

fn random_poly(rng: &mut ChaCha8Rng, d: u32, bound: i64, homogeneous: bool) -> BiPoly {
    let low = if homogeneous { d } else { 0 };
    let mut terms: Vec<(i64, u32, u32)> = Vec::new();
    for total in low..=d {
        for j in 0..=total {
            terms.push((rng.gen_range(-bound..=bound), total - j, j));
        }
    }
    if d > 0 && terms.iter().all(|&(c, i, j)| c == 0 || i + j < d) {
        let k = rng.gen_range(0..=d);
        let c = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=bound);
        terms.push((c, d - k, k));
    }
    BiPoly::from_i64(&terms)
}
