use super::{brute_force_min, check_certificate, gen_instance, InstanceSpec};
use crate::error::{Error, Result};
use crate::exactmath::BiPoly;
use crate::lattice2d::Polyhedron2;
use crate::outcome::SolveOutcome;
use crate::solve::{solve, Mode, Solution};
use serde::Serialize;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Solver under test.
pub type Solver = dyn Fn(&BiPoly, &Polyhedron2) -> Result<Solution> + Sync;

/// The dispatched solver in automatic mode.
pub fn default_solver(f: &BiPoly, p: &Polyhedron2) -> Result<Solution> {
    solve(f, p, Mode::Auto, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Match,
    Mismatch,
    /// The solver failed.
    Error,
    /// The reference could not be computed within the enumeration cap.
    Skipped,
}

/// One instance of a differential run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub seed: u64,
    pub status: RecordStatus,
    pub expected: String,
    pub got: String,
    pub spec: InstanceSpec,
}

/// Records in input order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    /// Records whose solver outcome disagrees with the reference or failed.
    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| matches!(r.status, RecordStatus::Mismatch | RecordStatus::Error))
    }

    pub fn count(&self, status: RecordStatus) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}

/// One JSON object per line, fields in the order seed, status, expected, got, spec.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{}", serde_json::to_string(r).map_err(|_| fmt::Error)?)?;
        }
        Ok(())
    }
}

/// One-line text form of an outcome.
pub fn describe(o: &SolveOutcome) -> String {
    match o {
        SolveOutcome::Infeasible => "infeasible".into(),
        SolveOutcome::Optimal { point, value } => format!("optimal ({}, {}) {}", point.0, point.1, value),
        SolveOutcome::Unbounded { point, ray } => {
            format!("unbounded ({}, {}) ray ({}, {})", point.0, point.1, ray.0, ray.1)
        }
    }
}

/// Verdict on one solver outcome: the certificate check for unbounded outcomes, otherwise a
/// comparison with exhaustive minimization over `p` inside `window`, or inside the square of
/// four times the certified radius (at least `window`) when `p` is unbounded.
pub fn judge_solution(f: &BiPoly, p: &Polyhedron2, solved: &Solution, window: &Polyhedron2) -> (RecordStatus, String) {
    if let SolveOutcome::Unbounded { point, ray } = &solved.outcome {
        return match check_certificate(f, p, point, ray) {
            Ok(()) => (RecordStatus::Match, "valid certificate".into()),
            Err(why) => (RecordStatus::Mismatch, format!("valid certificate ({why})")),
        };
    }
    let window = match &solved.certified_radius {
        Some(r) if !p.is_bounded() && !p.is_empty() => {
            let inflated = Polyhedron2::square(&(r * 4));
            match window.bounding_radius() {
                Some(w) if w > r * 4 => window.clone(),
                _ => inflated,
            }
        }
        _ => window.clone(),
    };
    match brute_force_min(f, p, &window) {
        Ok(expected) => {
            let status = if expected == solved.outcome { RecordStatus::Match } else { RecordStatus::Mismatch };
            (status, describe(&expected))
        }
        Err(Error::TooLarge) => (RecordStatus::Skipped, "too many lattice points".into()),
        Err(e) => (RecordStatus::Skipped, format!("reference failed: {e}")),
    }
}

fn judge(spec: &InstanceSpec, solver: &Solver) -> Record {
    let (f, p) = gen_instance(spec);
    let record = |status, expected: String, got: String| Record { seed: spec.seed, status, expected, got, spec: spec.clone() };
    match solver(&f, &p) {
        Ok(solved) => {
            let (status, expected) = judge_solution(&f, &p, &solved, &spec.bounding_box());
            record(status, expected, describe(&solved.outcome))
        }
        Err(e) => record(RecordStatus::Error, String::new(), format!("error: {e}")),
    }
}

/// Differential run of the default solver; see [`differential_run_with`].
pub fn differential_run(specs: &[InstanceSpec]) -> Report {
    differential_run_with(specs, &default_solver)
}

/// Solves every generated instance and compares with exhaustive minimization on the instance box,
/// or on four times the certified radius for optimal outcomes on unbounded regions; unbounded
/// outcomes are judged by their certificate. Instances run on all available threads and the
/// report keeps input order.
pub fn differential_run_with(specs: &[InstanceSpec], solver: &Solver) -> Report {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(specs.len()).max(1);
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Record>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                let rec = judge(spec, solver);
                *slots[i].lock().expect("slot lock") = Some(rec);
            });
        }
    });
    let records = slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot filled")).collect();
    Report { records }
}
