use super::DivisionDescription;
use std::cell::Cell;

/// Work counters of the solves run on the current thread since the last reset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Sublevel feasibility queries made by bisection.
    pub bisection_steps: u64,
    /// Largest number of pieces and lines in one division description or decomposition.
    pub pieces: usize,
}

thread_local! {
    static STATS: Cell<SolveStats> = Cell::new(SolveStats::default());
}

pub fn reset_stats() {
    STATS.with(|s| s.set(SolveStats::default()));
}

pub fn current_stats() -> SolveStats {
    STATS.with(|s| s.get())
}

pub(crate) fn note_step() {
    STATS.with(|s| {
        let mut v = s.get();
        v.bisection_steps += 1;
        s.set(v);
    });
}

pub(crate) fn note_pieces(n: usize) {
    STATS.with(|s| {
        let mut v = s.get();
        v.pieces = v.pieces.max(n);
        s.set(v);
    });
}

pub(crate) fn note_division(dd: &DivisionDescription) {
    note_pieces(dd.convex_side.len() + dd.concave_side.len() + dd.lines.len());
}
