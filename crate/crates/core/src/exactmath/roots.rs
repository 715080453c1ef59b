use super::{floor, Rat, Sign, UniPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Open interval `(lo, hi)` holding exactly one distinct real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity_hint: u32,
}

impl RootInterval {
    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Sign of an integer polynomial at a rational point, without normalising fractions.
pub(crate) fn sign_int_poly(c: &[BigInt], x: &Rat) -> Sign {
    if c.is_empty() {
        return Sign::Zero;
    }
    let n = x.numer();
    let d = x.denom();
    if d.is_one() {
        let mut acc = BigInt::zero();
        for v in c.iter().rev() {
            acc = acc * n + v;
        }
        return Sign::of_int(&acc);
    }
    let deg = c.len() - 1;
    let mut acc = c[deg].clone();
    let mut dp = BigInt::one();
    for i in (0..deg).rev() {
        dp *= d;
        acc = acc * n + &c[i] * &dp;
    }
    Sign::of_int(&acc)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in v.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Pseudo-remainder with the sign of the true remainder.
fn signed_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut steps = 0u32;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        trim(&mut r);
        steps += 1;
    }
    if lb.is_negative() && steps % 2 == 1 {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    r
}

fn int_derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Sturm machinery for a square-free integer polynomial.
pub(crate) struct Isolator {
    pub(crate) p: Vec<BigInt>,
    sturm: Vec<Vec<BigInt>>,
}

impl Isolator {
    /// Builds the isolator for the square-free part of `poly`; None for constants.
    pub(crate) fn new(poly: &UniPoly) -> Option<Isolator> {
        if poly.degree().unwrap_or(0) == 0 {
            return None;
        }
        let sq = poly.square_free_part();
        let p = sq.integer_primitive();
        Some(Self::from_square_free(p))
    }

    fn from_square_free(p: Vec<BigInt>) -> Isolator {
        let mut sturm = vec![p.clone()];
        let mut d = int_derivative(&p);
        make_primitive(&mut d);
        sturm.push(d);
        loop {
            let k = sturm.len();
            if sturm[k - 1].len() <= 1 {
                break;
            }
            let mut r = signed_prem(&sturm[k - 2], &sturm[k - 1]);
            if r.is_empty() {
                break;
            }
            for c in r.iter_mut() {
                *c = -&*c;
            }
            make_primitive(&mut r);
            sturm.push(r);
        }
        Isolator { p, sturm }
    }

    pub(crate) fn sign(&self, x: &Rat) -> Sign {
        sign_int_poly(&self.p, x)
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for s in &self.sturm {
            let v = sign_int_poly(s, x);
            if v == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && v != last {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub(crate) fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn cauchy_bound(&self) -> Rat {
        let n = self.p.len() - 1;
        let lead = self.p[n].abs();
        let mut m = BigInt::zero();
        for c in &self.p[..n] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        Rat::one() + Rat::new(m, lead)
    }

    fn split_point(&self, lo: &Rat, hi: &Rat) -> Rat {
        let w = hi - lo;
        let mut den = 2i64;
        loop {
            for num in 1..den {
                if num.gcd(&den) != 1 {
                    continue;
                }
                let m = lo + &w * Rat::new(num.into(), den.into());
                if self.sign(&m) != Sign::Zero {
                    return m;
                }
            }
            den += 1;
        }
    }

    fn refine(&self, mut lo: Rat, mut hi: Rat, eps: &Rat) -> (Rat, Rat) {
        let slo = self.sign(&lo);
        let two = Rat::from_integer(2.into());
        while &(&hi - &lo) >= eps {
            let m = (&lo + &hi) / &two;
            let s = self.sign(&m);
            if s == Sign::Zero {
                let w = (&hi - &lo) / Rat::from_integer(4.into());
                let w = if &w < eps { w } else { eps / Rat::from_integer(4.into()) };
                return (&m - &w, &m + &w);
            }
            if s == slo {
                lo = m;
            } else {
                hi = m;
            }
        }
        (lo, hi)
    }

    /// Pushes `a` down until it is not a root and `(a, orig]` holds at most `orig` itself.
    fn clean_lower(&self, a: &Rat) -> Rat {
        if self.sign(a) != Sign::Zero {
            return a.clone();
        }
        let mut d = Rat::one();
        loop {
            let c = a - &d;
            if self.sign(&c) != Sign::Zero && self.count(&c, a) == 1 {
                return c;
            }
            d /= Rat::from_integer(2.into());
        }
    }

    fn clean_upper(&self, b: &Rat) -> Rat {
        if self.sign(b) != Sign::Zero {
            return b.clone();
        }
        let mut d = Rat::one();
        loop {
            let c = b + &d;
            if self.sign(&c) != Sign::Zero && self.count(b, &c) == 0 {
                return c;
            }
            d /= Rat::from_integer(2.into());
        }
    }

    /// Isolating intervals (sorted) for every root in the closed range `[a, b]`.
    pub(crate) fn isolate_closed(&self, a: &Rat, b: &Rat, eps: &Rat) -> Vec<(Rat, Rat)> {
        let lo = self.clean_lower(a);
        let hi = self.clean_upper(b);
        self.isolate_open(lo, hi, eps)
    }

    /// Requires both endpoints to be non-roots.
    fn isolate_open(&self, lo: Rat, hi: Rat, eps: &Rat) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        let vlo = self.variations(&lo);
        let vhi = self.variations(&hi);
        let mut stack = vec![(lo, hi, vlo, vhi)];
        while let Some((a, b, va, vb)) = stack.pop() {
            let n = va.saturating_sub(vb);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(self.refine(a, b, eps));
                continue;
            }
            let m = self.split_point(&a, &b);
            let vm = self.variations(&m);
            stack.push((m.clone(), b, vm, vb));
            stack.push((a, m, va, vm));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub(crate) fn isolate_all(&self, eps: &Rat) -> Vec<(Rat, Rat)> {
        let b = self.cauchy_bound();
        self.isolate_open(-b.clone(), b, eps)
    }

    /// The root in `(lo, hi)` when it is rational.
    pub(crate) fn rational_root(&self, lo: &Rat, hi: &Rat) -> Option<Rat> {
        let lead = self.p.last().unwrap().abs();
        let tol = Rat::new(BigInt::one(), &lead * &lead * BigInt::from(2));
        let (a, b) = self.refine(lo.clone(), hi.clone(), &tol);
        let s = simplest_between(&a, &b);
        if self.sign(&s) == Sign::Zero {
            Some(s)
        } else {
            None
        }
    }
}

fn multiplicity_chain(p: &UniPoly) -> Vec<Vec<BigInt>> {
    let mut chain = Vec::new();
    let mut g = UniPoly::gcd(p, &p.derivative());
    while g.degree().unwrap_or(0) > 0 {
        chain.push(g.square_free_part().integer_primitive());
        g = UniPoly::gcd(&g, &g.derivative());
    }
    chain
}

fn with_multiplicity(p: &UniPoly, raw: Vec<(Rat, Rat)>) -> Vec<RootInterval> {
    let chain = multiplicity_chain(p);
    raw.into_iter()
        .map(|(lo, hi)| {
            let extra = chain
                .iter()
                .filter(|g| {
                    let a = sign_int_poly(g, &lo);
                    let b = sign_int_poly(g, &hi);
                    a != b
                })
                .count() as u32;
            RootInterval { lo, hi, multiplicity_hint: 1 + extra }
        })
        .collect()
}

/// Disjoint sorted isolating intervals of width < eps, one per distinct real root.
pub fn isolate_roots(p: &UniPoly, eps: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match Isolator::new(p) {
        None => Ok(vec![]),
        Some(iso) => Ok(with_multiplicity(p, iso.isolate_all(eps))),
    }
}

/// Like [`isolate_roots`] but only for roots in the closed range `[lo, hi]`.
pub fn isolate_roots_in(p: &UniPoly, lo: &Rat, hi: &Rat, eps: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::EmptyInterval);
    }
    match Isolator::new(p) {
        None => Ok(vec![]),
        Some(iso) => Ok(with_multiplicity(p, iso.isolate_closed(lo, hi, eps))),
    }
}

/// The root isolated by `iv` when it is rational.
pub fn rational_root(p: &UniPoly, iv: &RootInterval) -> Option<Rat> {
    Isolator::new(p)?.rational_root(&iv.lo, &iv.hi)
}

/// Shrinks an isolating interval of `p` below width `eps`.
pub fn refine_root(p: &UniPoly, iv: &RootInterval, eps: &Rat) -> RootInterval {
    match Isolator::new(p) {
        Some(iso) => {
            let (lo, hi) = iso.refine(iv.lo.clone(), iv.hi.clone(), eps);
            RootInterval { lo, hi, multiplicity_hint: iv.multiplicity_hint }
        }
        None => iv.clone(),
    }
}

/// Bounds `lower < |x| < upper` on the nonzero real roots.
pub fn root_bounds(p: &UniPoly) -> Result<(Rat, Rat)> {
    let c = p.coeffs();
    let nonzero: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    if nonzero.len() < 2 {
        return Err(Error::DegenerateShape("monomial or zero polynomial".into()));
    }
    let m = nonzero[0];
    let n = *nonzero.last().unwrap();
    let am = c[m].abs();
    let an = c[n].abs();
    let lower = ((m + 1)..=n)
        .map(|i| &am / (&am + c[i].abs()))
        .min()
        .unwrap();
    let upper = Rat::one() + (m..n).map(|i| c[i].abs() / &an).max().unwrap();
    Ok((lower, upper))
}

/// Non-negative `s` with `|s - sqrt(r)| < eps`.
pub fn approx_sqrt(r: &Rat, eps: &Rat) -> Result<Rat> {
    if r.is_negative() {
        return Err(Error::NegativeRadicand);
    }
    if r.is_zero() {
        return Ok(Rat::zero());
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        return Ok(Rat::new(sn, sd));
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale so the truncation error is below eps.
    let k = floor(&(Rat::one() / (eps * Rat::from_integer(d.clone())))) + BigInt::one();
    let big = n * d * &k * &k;
    Ok(Rat::new(big.sqrt(), d * &k))
}

/// Sign of `p` at the midpoint of the integer interval `[lo, hi]`.
pub fn sign_on_interval(p: &UniPoly, lo: &BigInt, hi: &BigInt) -> Result<Sign> {
    if lo > hi {
        return Err(Error::EmptyInterval);
    }
    let mid = Rat::new(lo + hi, BigInt::from(2));
    Ok(p.sign_at(&mid))
}

/// The rational with the smallest denominator (then smallest magnitude) in the open interval.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo.clone(), Some(hi.clone()))
}

fn simplest_positive(lo: Rat, hi: Option<Rat>) -> Rat {
    let fl = floor(&lo);
    let next = Rat::from_integer(&fl + BigInt::one());
    match &hi {
        None => return next,
        Some(h) if &next < h => return next,
        _ => {}
    }
    let h = hi.unwrap();
    let base = Rat::from_integer(fl);
    let lo_f = &lo - &base;
    let hi_f = &h - &base;
    // recurse on reciprocals: 1/hi_f < t < 1/lo_f
    let inner_lo = Rat::one() / &hi_f;
    let inner_hi = if lo_f.is_zero() { None } else { Some(Rat::one() / &lo_f) };
    let t = simplest_positive(inner_lo, inner_hi);
    base + Rat::one() / t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn count_sign_changes(p: &UniPoly, iv: &RootInterval) -> bool {
        p.sign_at(&iv.lo).mul(p.sign_at(&iv.hi)) == Sign::Negative
    }

    #[test]
    fn sqrt_two_pair() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_roots(&p, &rat(1, 4)).unwrap();
        assert_eq!(r.len(), 2);
        for iv in &r {
            assert!(iv.width() < rat(1, 4));
            assert!(count_sign_changes(&p, iv));
        }
        assert!(r[0].hi < r[1].lo);
    }

    #[test]
    fn rational_roots_are_bracketed() {
        let p = UniPoly::from_i64(&[0, -1, 1]);
        let r = isolate_roots(&p, &rat(1, 4)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].lo < rat(0, 1) && rat(0, 1) < r[0].hi);
        assert!(r[1].lo < rat(1, 1) && rat(1, 1) < r[1].hi);
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_i64(&[1, 0, 1]);
        assert!(isolate_roots(&p, &rat(1, 4)).unwrap().is_empty());
        assert_eq!(isolate_roots(&UniPoly::zero(), &rat(1, 4)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_hint_counts_repeats() {
        // (x-1)^3 (x+2)
        let p = &UniPoly::from_i64(&[-1, 1]).pow(3) * &UniPoly::from_i64(&[2, 1]);
        let r = isolate_roots(&p, &rat(1, 8)).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].multiplicity_hint, 1);
        assert_eq!(r[1].multiplicity_hint, 3);
    }

    #[test]
    fn closed_range_includes_endpoint_roots() {
        let p = UniPoly::from_i64(&[0, -1, 1]);
        let r = isolate_roots_in(&p, &rat(1, 1), &rat(3, 1), &rat(1, 4)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo < rat(1, 1) && rat(1, 1) < r[0].hi);
    }

    #[test]
    fn root_bound_examples() {
        let (lo, hi) = root_bounds(&UniPoly::from_i64(&[2, -3, 1])).unwrap();
        assert_eq!((lo, hi), (rat(2, 5), rat(4, 1)));
        let (lo, hi) = root_bounds(&UniPoly::from_i64(&[0, -1, 0, 1])).unwrap();
        assert_eq!((lo, hi), (rat(1, 2), rat(2, 1)));
        assert!(matches!(
            root_bounds(&UniPoly::from_i64(&[0, 0, 0, 0, 5])),
            Err(Error::DegenerateShape(_))
        ));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(approx_sqrt(&rat(4, 1), &rat(1, 100)).unwrap(), rat(2, 1));
        assert_eq!(approx_sqrt(&rat(0, 1), &rat(1, 1)).unwrap(), rat(0, 1));
        let s = approx_sqrt(&rat(2, 1), &rat(1, 100)).unwrap();
        let lo = rat(141421, 100000) - rat(1, 100);
        let hi = rat(141422, 100000) + rat(1, 100);
        assert!(lo < s && s < hi);
        assert_eq!(approx_sqrt(&rat(-1, 1), &rat(1, 2)), Err(Error::NegativeRadicand));
    }

    #[test]
    fn interval_sign_examples() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(sign_on_interval(&p, &2.into(), &5.into()).unwrap(), Sign::Positive);
        assert_eq!(sign_on_interval(&p, &(-1).into(), &1.into()).unwrap(), Sign::Negative);
        let x = UniPoly::x();
        assert_eq!(sign_on_interval(&x, &3.into(), &3.into()).unwrap(), Sign::Positive);
        assert_eq!(sign_on_interval(&x, &3.into(), &2.into()), Err(Error::EmptyInterval));
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), rat(0, 1));
        assert_eq!(simplest_between(&rat(-7, 3), &rat(-2, 1)), rat(-9, 4));
        assert_eq!(simplest_between(&rat(2, 1), &rat(7, 2)), rat(3, 1));
    }

    #[test]
    fn rational_root_detection() {
        // (3x - 2)(x^2 - 2)
        let p = &UniPoly::from_i64(&[-2, 3]) * &UniPoly::from_i64(&[-2, 0, 1]);
        let iso = Isolator::new(&p).unwrap();
        let ivs = iso.isolate_all(&rat(1, 4));
        let found: Vec<Option<Rat>> = ivs.iter().map(|(a, b)| iso.rational_root(a, b)).collect();
        assert_eq!(found.iter().filter(|r| r.is_some()).count(), 1);
        assert!(found.contains(&Some(rat(2, 3))));
    }
}
