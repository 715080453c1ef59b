use super::{lcm_denoms, Rat, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse bivariate polynomial: `(i, j) -> c` stands for `c * x^i * y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), Rat::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), Rat::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k.0, k.1, &c);
        }
        p
    }

    /// Terms given as `(coefficient, i, j)` with small integers.
    pub fn from_i64(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, i, j)| ((i, j), Rat::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|(i, j)| i + j == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0 + k.1 == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Sum of absolute values of the coefficients.
    pub fn coeff_norm1(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).fold(Rat::zero(), |a, b| a + b)
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let dx = self.deg_x() as usize;
        let dy = self.deg_y() as usize;
        let mut xp = vec![Rat::one(); dx + 1];
        for i in 1..=dx {
            xp[i] = &xp[i - 1] * x;
        }
        let mut yp = vec![Rat::one(); dy + 1];
        for j in 1..=dy {
            yp[j] = &yp[j - 1] * y;
        }
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.terms {
            acc += c * &xp[*i as usize] * &yp[*j as usize];
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> Rat {
        self.eval(&Rat::from_integer(x.clone()), &Rat::from_integer(y.clone()))
    }

    pub fn scale(&self, s: &Rat) -> BiPoly {
        if s.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut r = Self::constant(Rat::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn dx(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(k, c)| ((k.0 - 1, k.1), c * Rat::from_integer(k.0.into()))),
        )
    }

    pub fn dy(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(k, c)| ((k.0, k.1 - 1), c * Rat::from_integer(k.1.into()))),
        )
    }

    pub fn swap_xy(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| ((k.1, k.0), c.clone())).collect() }
    }

    /// Coefficients of powers of y: `self = sum_j slices[j](x) * y^j`.
    pub fn y_slices(&self) -> Vec<UniPoly> {
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        let mut rows = vec![vec![Rat::zero(); dx + 1]; dy + 1];
        for ((i, j), c) in &self.terms {
            rows[*j as usize][*i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_slices(slices: &[UniPoly]) -> BiPoly {
        let mut p = Self::zero();
        for (j, s) in slices.iter().enumerate() {
            for (i, c) in s.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c);
            }
        }
        p
    }

    /// Restriction to the column `x = x0` as a polynomial in y.
    pub fn at_x(&self, x0: &Rat) -> UniPoly {
        let s = self.y_slices();
        UniPoly::new(s.iter().map(|p| p.eval(x0)).collect())
    }

    /// Restriction to the row `y = y0` as a polynomial in x.
    pub fn at_y(&self, y0: &Rat) -> UniPoly {
        self.swap_xy().at_x(y0)
    }

    /// `t -> self(x0 + dx*t, y0 + dy*t)`.
    pub fn along_line(&self, x0: &Rat, y0: &Rat, dx: &Rat, dy: &Rat) -> UniPoly {
        let px = UniPoly::new(vec![x0.clone(), dx.clone()]);
        let py = UniPoly::new(vec![y0.clone(), dy.clone()]);
        let d = self.degree();
        let mut xp = vec![UniPoly::constant(Rat::one())];
        let mut yp = vec![UniPoly::constant(Rat::one())];
        for k in 1..=d as usize {
            xp.push(&xp[k - 1] * &px);
            yp.push(&yp[k - 1] * &py);
        }
        let mut acc = UniPoly::zero();
        for ((i, j), c) in &self.terms {
            let t = (&xp[*i as usize] * &yp[*j as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Positive rational `s` with `s * self` having coprime integer coefficients.
    pub fn integer_scale(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let l = lcm_denoms(self.terms.values());
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * Rat::from_integer(l.clone())).to_integer();
            g = num_integer::Integer::gcd(&g, &v);
        }
        Rat::new(l, g)
    }

    /// Fast evaluator at lattice points; requires integer coefficients.
    pub fn int_evaluator(&self) -> IntEvaluator {
        IntEvaluator::new(self)
    }
}

/// Evaluates an integer-coefficient polynomial at integer points, in i128 when possible.
#[derive(Clone, Debug)]
pub struct IntEvaluator {
    small: Option<Vec<(u32, u32, i128)>>,
    big: Vec<(u32, u32, BigInt)>,
}

impl IntEvaluator {
    fn new(p: &BiPoly) -> Self {
        assert!(p.has_integer_coeffs(), "integer coefficients required");
        let big: Vec<(u32, u32, BigInt)> =
            p.terms.iter().map(|((i, j), c)| (*i, *j, c.to_integer())).collect();
        let small = big
            .iter()
            .map(|(i, j, c)| c.to_i128().map(|v| (*i, *j, v)))
            .collect::<Option<Vec<_>>>();
        IntEvaluator { small, big }
    }

    fn eval_small(terms: &[(u32, u32, i128)], x: i128, y: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for &(i, j, c) in terms {
            let mut t = c;
            for _ in 0..i {
                t = t.checked_mul(x)?;
            }
            for _ in 0..j {
                t = t.checked_mul(y)?;
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> BigInt {
        if let Some(s) = &self.small {
            if let Some(v) = Self::eval_small(s, x as i128, y as i128) {
                return BigInt::from(v);
            }
        }
        self.eval_big(&BigInt::from(x), &BigInt::from(y))
    }

    /// Small-value fast path returning None on overflow.
    pub fn try_eval_i128(&self, x: i64, y: i64) -> Option<i128> {
        Self::eval_small(self.small.as_ref()?, x as i128, y as i128)
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        if let (Some(xs), Some(ys)) = (x.to_i64(), y.to_i64()) {
            return self.eval_i64(xs, ys);
        }
        self.eval_big(x, y)
    }

    fn eval_big(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, j, c) in &self.big {
            acc += c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize);
        }
        acc
    }
}

/// `g(u, v) = f(m11*u + m12*v + t1, m21*u + m22*v + t2)`.
pub fn substitute_affine(
    f: &BiPoly,
    m11: &Rat,
    m12: &Rat,
    m21: &Rat,
    m22: &Rat,
    t1: &Rat,
    t2: &Rat,
) -> BiPoly {
    let xs = BiPoly::from_terms([((1, 0), m11.clone()), ((0, 1), m12.clone()), ((0, 0), t1.clone())]);
    let ys = BiPoly::from_terms([((1, 0), m21.clone()), ((0, 1), m22.clone()), ((0, 0), t2.clone())]);
    let d = f.degree() as usize;
    let mut xp = vec![BiPoly::constant(Rat::one())];
    let mut yp = vec![BiPoly::constant(Rat::one())];
    for k in 1..=d {
        xp.push(&xp[k - 1] * &xs);
        yp.push(&yp[k - 1] * &ys);
    }
    let mut acc = BiPoly::zero();
    for ((i, j), c) in &f.terms {
        let t = (&xp[*i as usize] * &yp[*j as usize]).scale(c);
        acc = &acc + &t;
    }
    acc
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for ((i, j), c) in &o.terms {
            r.add_term(*i, *j, c);
        }
        r
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for ((i, j), c) in &o.terms {
            r.add_term(*i, *j, &-c);
        }
        r
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            for ((k, l), d) in &o.terms {
                r.add_term(i + k, j + l, &(c * d));
            }
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (*i == 0 && *j == 0) {
                parts.push(format!("{}", mag));
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{}", i)),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{}", j)),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    #[test]
    fn identity_shear_keeps_polynomial() {
        let f = BiPoly::from_i64(&[(1, 0, 3), (1, 1, 0)]);
        let one = rat_int(1);
        let zero = rat_int(0);
        assert_eq!(substitute_affine(&f, &one, &zero, &zero, &one, &zero, &zero), f);
    }

    #[test]
    fn shear_of_cube_of_sum() {
        // (x+y)^3 + x with x = u, y = -u + v  ->  v^3 + u
        let f = &BiPoly::from_i64(&[(1, 1, 0), (1, 0, 1)]).pow(3) + &BiPoly::x();
        let g = substitute_affine(
            &f,
            &rat_int(1),
            &rat_int(0),
            &rat_int(-1),
            &rat_int(1),
            &rat_int(0),
            &rat_int(0),
        );
        assert_eq!(g, BiPoly::from_i64(&[(1, 0, 3), (1, 1, 0)]));
    }

    #[test]
    fn translation_of_circle() {
        let f = BiPoly::from_i64(&[(1, 2, 0), (1, 0, 2)]);
        let one = rat_int(1);
        let zero = rat_int(0);
        let g = substitute_affine(&f, &one, &zero, &zero, &one, &rat_int(1), &rat_int(2));
        assert_eq!(g, BiPoly::from_i64(&[(1, 2, 0), (1, 0, 2), (2, 1, 0), (4, 0, 1), (5, 0, 0)]));
    }

    #[test]
    fn slices_round_trip() {
        let f = BiPoly::from_i64(&[(1, 2, 1), (1, 0, 2), (-4, 3, 0)]);
        let s = f.y_slices();
        assert_eq!(s.len(), 3);
        assert_eq!(BiPoly::from_y_slices(&s), f);
    }

    #[test]
    fn line_restriction_matches_pointwise() {
        let f = BiPoly::from_i64(&[(1, 3, 0), (-2, 1, 1), (5, 0, 0)]);
        let g = f.along_line(&rat(1, 2), &rat(-1, 1), &rat(2, 1), &rat(3, 1));
        for t in -3..4 {
            let tr = rat_int(t);
            let x = rat(1, 2) + rat_int(2) * &tr;
            let y = rat_int(-1) + rat_int(3) * &tr;
            assert_eq!(g.eval(&tr), f.eval(&x, &y));
        }
    }

    #[test]
    fn int_evaluator_agrees_with_exact() {
        let f = BiPoly::from_i64(&[(7, 3, 0), (-9, 1, 2), (4, 0, 0)]);
        let ev = f.int_evaluator();
        for (x, y) in [(3i64, -5i64), (1 << 40, 7), (-(1 << 50), 1 << 45)] {
            let exact = f.eval_int(&BigInt::from(x), &BigInt::from(y));
            assert_eq!(Rat::from_integer(ev.eval_i64(x, y)), exact);
        }
    }

    #[test]
    fn display_is_readable() {
        let f = BiPoly::from_i64(&[(1, 3, 0), (-2, 1, 1), (5, 0, 0)]);
        assert_eq!(f.to_string(), "x^3 - 2*x*y + 5");
    }
}
