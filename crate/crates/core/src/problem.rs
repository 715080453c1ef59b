//! Line-oriented problem files.
//!
//! ```text
//! # minimize x^3 + y^3 over [-3, 3]^2
//! mode = auto
//! monomial 3 0 1        # c * x^i * y^j as: i j c
//! monomial 0 3 1
//! constraint 1 0 3      # a * x + b * y <= c as: a b c
//! constraint -1 0 3
//! constraint 0 1 3
//! constraint 0 -1 3
//! ```
//!
//! Blank lines and `#` comments are ignored. `mode` is optional (default `auto`) and may appear
//! once. At least one `monomial` line is required; repeated exponents add up. Exponents are
//! non-negative with `i + j <= 64`; coefficients are arbitrary-precision decimal integers with an
//! optional sign.

use crate::error::{Error, Result};
use crate::exactmath::{BiPoly, Rat};
use crate::lattice2d::{Polyhedron2, Row};
use crate::solve::Mode;
use num_bigint::BigInt;
use std::fmt;

/// Largest total degree accepted in a problem file.
pub const MAX_DEGREE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub c: BigInt,
}

/// `a x + b y <= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub objective: Vec<Monomial>,
    pub constraints: Vec<Constraint>,
    pub mode: Mode,
}

impl ProblemFile {
    pub fn objective_poly(&self) -> BiPoly {
        let mut f = BiPoly::zero();
        for m in &self.objective {
            f.add_term(m.i, m.j, &Rat::from_integer(m.c.clone()));
        }
        f
    }

    pub fn region(&self) -> Polyhedron2 {
        Polyhedron2::new(
            self.constraints
                .iter()
                .map(|k| Row::new(Rat::from_integer(k.a.clone()), Rat::from_integer(k.b.clone()), Rat::from_integer(k.c.clone())))
                .collect(),
        )
    }
}

/// Canonical text form, parsed back to an equal value.
impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode = {}", self.mode)?;
        for m in &self.objective {
            writeln!(f, "monomial {} {} {}", m.i, m.j, m.c)?;
        }
        for k in &self.constraints {
            writeln!(f, "constraint {} {} {}", k.a, k.b, k.c)?;
        }
        Ok(())
    }
}

fn integer(tok: &str, line: usize) -> Result<BigInt> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { line, message: format!("`{tok}` is not an integer") });
    }
    let v: BigInt = digits.parse().expect("decimal digits");
    Ok(if tok.starts_with('-') { -v } else { v })
}

fn exponent(tok: &str, line: usize) -> Result<u32> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { line, message: format!("`{tok}` is not an exponent") });
    }
    tok.parse::<u32>()
        .ok()
        .filter(|&e| e <= MAX_DEGREE)
        .ok_or_else(|| Error::Parse { line, message: format!("exponent `{tok}` exceeds {MAX_DEGREE}") })
}

fn three<'a>(rest: &[&'a str], what: &str, line: usize) -> Result<[&'a str; 3]> {
    <[&str; 3]>::try_from(rest)
        .map_err(|_| Error::Parse { line, message: format!("`{what}` takes 3 fields, found {}", rest.len()) })
}

/// Parses a problem file.
pub fn parse(text: &str) -> Result<ProblemFile> {
    let mut objective = Vec::new();
    let mut constraints = Vec::new();
    let mut mode: Option<Mode> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((key, value)) = body.split_once('=') {
            if key.trim() != "mode" {
                return Err(Error::Parse { line, message: format!("unknown key `{}`", key.trim()) });
            }
            if mode.is_some() {
                return Err(Error::Parse { line, message: "mode given twice".into() });
            }
            mode = Some(value.trim().parse().map_err(|message| Error::Parse { line, message })?);
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "monomial" => {
                let [i, j, c] = three(&toks[1..], "monomial", line)?;
                let (i, j) = (exponent(i, line)?, exponent(j, line)?);
                if i + j > MAX_DEGREE {
                    return Err(Error::Parse { line, message: format!("total degree exceeds {MAX_DEGREE}") });
                }
                objective.push(Monomial { i, j, c: integer(c, line)? });
            }
            "constraint" => {
                let [a, b, c] = three(&toks[1..], "constraint", line)?;
                constraints.push(Constraint { a: integer(a, line)?, b: integer(b, line)?, c: integer(c, line)? });
            }
            other => return Err(Error::Parse { line, message: format!("unknown record `{other}`") }),
        }
    }
    if objective.is_empty() {
        return Err(Error::Parse { line: text.lines().count().max(1), message: "objective has no monomial".into() });
    }
    Ok(ProblemFile { objective, constraints, mode: mode.unwrap_or_default() })
}
