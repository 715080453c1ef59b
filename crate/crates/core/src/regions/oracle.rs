use crate::error::{Error, Result};
use crate::exactmath::{floor, isolate_roots, BiPoly, IntEvaluator, Rat, UniPoly};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Per-column data of a fixed integer polynomial: where `y -> f(k, y)` may change monotonicity.
#[derive(Debug)]
pub struct ColumnOracle {
    f: BiPoly,
    eval: IntEvaluator,
    slices_dy: Vec<UniPoly>,
    turns: Mutex<HashMap<BigInt, Arc<Vec<BigInt>>>>,
}

impl ColumnOracle {
    pub fn new(f: &BiPoly) -> Result<ColumnOracle> {
        if !f.has_integer_coeffs() {
            return Err(Error::NonIntegerCoefficients);
        }
        Ok(ColumnOracle {
            f: f.clone(),
            eval: f.int_evaluator(),
            slices_dy: f.dy().y_slices(),
            turns: Mutex::new(HashMap::new()),
        })
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn value(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.eval.eval(x, y)
    }

    /// Sorted integers such that `f(k, .)` is monotone on the integers between consecutive entries.
    fn turning_points(&self, k: &BigInt) -> Arc<Vec<BigInt>> {
        if let Some(v) = self.turns.lock().unwrap().get(k) {
            return v.clone();
        }
        let kr = Rat::from_integer(k.clone());
        let g = UniPoly::new(self.slices_dy.iter().map(|s| s.eval(&kr)).collect());
        let mut out = Vec::new();
        if g.degree().unwrap_or(0) > 0 {
            for r in isolate_roots(&g, &Rat::one()).expect("nonzero derivative") {
                let mut y = floor(&r.lo);
                let end = crate::exactmath::ceil(&r.hi);
                while y <= end {
                    out.push(y.clone());
                    y += 1;
                }
            }
        }
        out.sort();
        out.dedup();
        let v = Arc::new(out);
        self.turns.lock().unwrap().insert(k.clone(), v.clone());
        v
    }

    /// Monotone runs `[s, e]` covering the integer range `[lo, hi]` of column `k`.
    fn segments(&self, k: &BigInt, lo: &BigInt, hi: &BigInt) -> Vec<(BigInt, BigInt)> {
        let turns = self.turning_points(k);
        let mut cuts = vec![lo.clone()];
        for t in turns.iter() {
            if t > lo && t < hi {
                cuts.push(t.clone());
            }
        }
        cuts.push(hi.clone());
        cuts.dedup();
        if cuts.len() == 1 {
            return vec![(lo.clone(), hi.clone())];
        }
        cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }

    /// Minimum of `f(k, y)` over integers `y` in `[lo, hi]`, with the smallest minimizer.
    pub fn column_min(&self, k: &BigInt, lo: &BigInt, hi: &BigInt) -> (BigInt, BigInt) {
        let mut best: Option<(BigInt, BigInt)> = None;
        let mut consider = |y: &BigInt| {
            let v = self.value(k, y);
            if best.as_ref().is_none_or(|(bv, by)| v < *bv || (v == *bv && y < by)) {
                best = Some((v, y.clone()));
            }
        };
        consider(lo);
        consider(hi);
        for t in self.turning_points(k).iter() {
            if t > lo && t < hi {
                consider(t);
            }
        }
        best.unwrap()
    }

    /// Smallest integer `y` in `[lo, hi]` with `f(k, y) <= level`.
    pub fn first_at_or_below(&self, k: &BigInt, lo: &BigInt, hi: &BigInt, level: &Rat) -> Option<BigInt> {
        let ok = |y: &BigInt| Rat::from_integer(self.value(k, y)) <= *level;
        for (s, e) in self.segments(k, lo, hi) {
            if ok(&s) {
                return Some(s);
            }
            if !ok(&e) {
                continue;
            }
            // f(k, .) decreases across the run: bisect for the first point at or below the level.
            let (mut bad, mut good) = (s, e);
            while &good - &bad > BigInt::one() {
                let mid: BigInt = (&bad + &good) >> 1;
                if ok(&mid) {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
            return Some(good);
        }
        None
    }
}

/// Membership oracle for the integer points of `{f <= omega}` with `omega` a half-integer.
#[derive(Clone, Debug)]
pub struct SublevelOracle {
    pub omega: Rat,
    columns: Arc<ColumnOracle>,
}

impl SublevelOracle {
    pub fn new(f: &BiPoly, omega: Rat) -> Result<SublevelOracle> {
        Ok(SublevelOracle { omega, columns: Arc::new(ColumnOracle::new(f)?) })
    }

    /// Same polynomial and column cache at another level.
    pub fn at_level(&self, omega: Rat) -> SublevelOracle {
        SublevelOracle { omega, columns: self.columns.clone() }
    }

    pub fn f(&self) -> &BiPoly {
        self.columns.f()
    }

    pub fn columns(&self) -> &ColumnOracle {
        &self.columns
    }

    pub fn value(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.columns.value(x, y)
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        Rat::from_integer(self.value(x, y)) <= self.omega
    }

    /// Smallest `y` in `[lo, hi]` with `(k, y)` in the sublevel set.
    pub fn first_in_column(&self, k: &BigInt, lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
        let (v, _) = self.columns.column_min(k, lo, hi);
        if Rat::from_integer(v) > self.omega {
            return None;
        }
        self.columns.first_at_or_below(k, lo, hi, &self.omega)
    }
}
