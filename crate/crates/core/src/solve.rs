//! Solver dispatch by objective shape and region.

use crate::cubic_unbounded::solve_cubic_certified;
use crate::error::{Error, Result};
use crate::exactmath::BiPoly;
use crate::homogeneous::{detect_translatable, solve_homogeneous_bounded};
use crate::lattice2d::Polyhedron2;
use crate::outcome::SolveOutcome;
use crate::regions::{current_stats, reset_stats, SolveStats};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// Requested solver family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Auto,
    Cubic,
    Homogeneous,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "cubic" => Ok(Mode::Cubic),
            "homogeneous" => Ok(Mode::Homogeneous),
            other => Err(format!("unknown mode `{other}`, expected auto, cubic or homogeneous")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Auto => "auto",
            Mode::Cubic => "cubic",
            Mode::Homogeneous => "homogeneous",
        })
    }
}

/// Solver family actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeUsed {
    Cubic,
    CubicUnbounded,
    Homogeneous,
}

impl ModeUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeUsed::Cubic => "cubic",
            ModeUsed::CubicUnbounded => "cubic_unbounded",
            ModeUsed::Homogeneous => "homogeneous",
        }
    }
}

/// Outcome of a dispatched solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub outcome: SolveOutcome,
    pub mode_used: ModeUsed,
    pub stats: SolveStats,
    /// Radius of a square holding every optimal point, for optimal outcomes on unbounded regions.
    pub certified_radius: Option<BigInt>,
}

/// Resolves `mode` for `f` over `p` without solving.
pub fn resolve_mode(f: &BiPoly, p: &Polyhedron2, mode: Mode) -> Result<ModeUsed> {
    let cubic = |f: &BiPoly| {
        if f.degree() > 3 {
            Err(Error::Unsupported(format!("degree {} objective is not homogeneous translatable", f.degree())))
        } else if p.is_bounded() {
            Ok(ModeUsed::Cubic)
        } else {
            Ok(ModeUsed::CubicUnbounded)
        }
    };
    match mode {
        Mode::Cubic => cubic(f),
        Mode::Homogeneous => {
            if detect_translatable(f).is_none() {
                Err(Error::Unsupported("objective is not homogeneous translatable".into()))
            } else if !p.is_bounded() && !p.is_empty() {
                Err(Error::Unsupported("homogeneous mode needs a bounded region".into()))
            } else {
                Ok(ModeUsed::Homogeneous)
            }
        }
        Mode::Auto => {
            if detect_translatable(f).is_some() && (p.is_bounded() || p.is_empty()) {
                Ok(ModeUsed::Homogeneous)
            } else {
                cubic(f)
            }
        }
    }
}

/// Exact minimum of integer `f` over the lattice points of `p`, restricted to `[-R, R]^2` when a
/// box radius is given.
pub fn solve(f: &BiPoly, p: &Polyhedron2, mode: Mode, box_radius: Option<&BigInt>) -> Result<Solution> {
    if !f.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    let p = match box_radius {
        Some(r) => p.intersect(&Polyhedron2::square(r)),
        None => p.clone(),
    };
    let mode_used = resolve_mode(f, &p, mode)?;
    reset_stats();
    let (outcome, certified_radius) = match mode_used {
        ModeUsed::Homogeneous => (solve_homogeneous_bounded(f, &p)?, None),
        ModeUsed::Cubic => (crate::cubic_bounded::solve_cubic_bounded(f, &p)?, None),
        ModeUsed::CubicUnbounded => {
            let rep = solve_cubic_certified(f, &p)?;
            (rep.outcome, rep.radius)
        }
    };
    Ok(Solution { outcome, mode_used, stats: current_stats(), certified_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_i64(t)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn auto_mode_dispatch() {
        let boxed = Polyhedron2::square(&b(3));
        let s = solve(&bp(&[(1, 3, 0), (1, 0, 3)]), &boxed, Mode::Auto, None).unwrap();
        assert_eq!(s.mode_used, ModeUsed::Homogeneous);
        assert_eq!(s.outcome, SolveOutcome::optimal((b(-3), b(-3)), rat(-54, 1)));
        let s = solve(&bp(&[(1, 3, 0), (1, 0, 3), (1, 1, 1)]), &boxed, Mode::Auto, None).unwrap();
        assert_eq!(s.mode_used, ModeUsed::Cubic);
        assert!(s.stats.bisection_steps > 0);
        let quartic = bp(&[(1, 4, 0), (1, 0, 1)]);
        assert!(matches!(solve(&quartic, &boxed, Mode::Auto, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn explicit_modes_agree() {
        let boxed = Polyhedron2::square(&b(4));
        let f = bp(&[(1, 2, 1), (-2, 0, 3), (3, 1, 0)]);
        let c = solve(&f, &boxed, Mode::Cubic, None).unwrap();
        assert_eq!(c.mode_used, ModeUsed::Cubic);
        assert!(matches!(solve(&f, &boxed, Mode::Homogeneous, None), Err(Error::Unsupported(_))));
        let h = bp(&[(1, 2, 1), (-2, 0, 3)]);
        let hc = solve(&h, &boxed, Mode::Cubic, None).unwrap().outcome;
        let hh = solve(&h, &boxed, Mode::Homogeneous, None).unwrap().outcome;
        assert_eq!(hc, hh);
    }

    #[test]
    fn box_radius_override_bounds_the_region() {
        let half_plane = Polyhedron2::from_i64(&[(-1, 0, 0)]);
        let f = bp(&[(-1, 3, 0)]);
        let s = solve(&f, &half_plane, Mode::Auto, None).unwrap();
        assert_eq!(s.mode_used, ModeUsed::CubicUnbounded);
        assert!(matches!(s.outcome, SolveOutcome::Unbounded { .. }));
        let s = solve(&f, &half_plane, Mode::Auto, Some(&b(5))).unwrap();
        assert_eq!(s.outcome, SolveOutcome::optimal((b(5), b(-5)), rat(-125, 1)));
    }
}
