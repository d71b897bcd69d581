use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Exp, Gen, Monomial};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Finite sum of monomials with nonzero exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn var(g: Gen) -> Self {
        Self::monomial(Monomial::var(g))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Removes and returns the largest term.
    pub fn pop_last(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k.clone())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }

    pub fn pow_u32(&self, k: u32) -> LaurentPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Rational power. Non-negative integer powers work for any polynomial;
    /// negative or fractional powers need a single term whose coefficient is a
    /// perfect power of the right order.
    pub fn pow_exp(&self, e: Exp) -> Result<LaurentPoly> {
        if e.is_integer() && *e.numer() >= 0 {
            let k = u32::try_from(*e.numer()).map_err(|_| Error::Power {
                base: format!("{self:?}"),
                exponent: e.to_string(),
                reason: "exponent too large".into(),
            })?;
            return Ok(self.pow_u32(k));
        }
        let Some((m, c)) = self.as_single_term() else {
            return Err(Error::Power {
                base: format!("{self:?}"),
                exponent: e.to_string(),
                reason: "negative or fractional powers need a single-term base".into(),
            });
        };
        let c = rational_pow(c, e).ok_or_else(|| Error::Power {
            base: format!("{self:?}"),
            exponent: e.to_string(),
            reason: "coefficient is not a perfect power".into(),
        })?;
        Ok(LaurentPoly::term(c, m.pow(e)))
    }

    /// Formal partial derivative with respect to `g` (power rule, any rational exponent).
    pub fn partial(&self, g: Gen) -> LaurentPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e.is_zero() {
                continue;
            }
            let factor = Rational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()));
            out.add_term(m.shift(g, -Exp::one()), c * factor);
        }
        out
    }

    /// Generators occurring with nonzero exponent somewhere in the polynomial.
    pub fn generators(&self) -> Vec<Gen> {
        let mut gens: Vec<Gen> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(g, _)| g))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Largest total degree among the terms (zero for the zero polynomial).
    pub fn total_degree(&self) -> Exp {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .unwrap_or_else(Exp::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Replaces generators by polynomials. Unbound generators are kept.
    ///
    /// Fractional exponents of a bound generator need a single-term image that
    /// is a perfect power; negative exponents need a single-term image.
    pub fn substitute(&self, bind: &HashMap<Gen, LaurentPoly>) -> Result<LaurentPoly> {
        let mut cache: HashMap<(Gen, Exp), LaurentPoly> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = LaurentPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (g, e) in m.iter() {
                match bind.get(&g) {
                    None => kept.push((g, e)),
                    Some(img) => {
                        let factor = match cache.get(&(g, e)) {
                            Some(f) => f.clone(),
                            None => {
                                let f = img.pow_exp(e)?;
                                cache.insert((g, e), f.clone());
                                f
                            }
                        };
                        acc = acc.mul_ref(&factor);
                    }
                }
            }
            out.add_assign_ref(&acc.mul_monomial(&Monomial::from_pairs(kept)));
        }
        Ok(out)
    }

    /// Sum of absolute values of the coefficients.
    pub fn coeff_abs_sum(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, deg: Exp) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Numeric evaluation with real generator values (principal real roots).
    pub fn eval_f64(&self, value: impl Fn(Gen) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mv: f64 = m
                    .iter()
                    .map(|(g, e)| value(g).powf(exp_to_f64(e)))
                    .product();
                rational_to_f64(c) * mv
            })
            .sum()
    }
}

pub fn exp_to_f64(e: Exp) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

pub fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn exp_to_rational(e: Exp) -> Rational {
    Rational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

/// Exact `c^e` when it is rational, `None` otherwise.
pub fn rational_pow(c: &Rational, e: Exp) -> Option<Rational> {
    if c.is_zero() {
        return if *e.numer() > 0 { Some(Rational::zero()) } else { None };
    }
    let q = u32::try_from(*e.denom()).ok()?;
    let p = *e.numer();
    let root = if q == 1 {
        c.clone()
    } else {
        let num = exact_root(c.numer(), q)?;
        let den = exact_root(c.denom(), q)?;
        Rational::new(num, den)
    };
    let k = u32::try_from(p.unsigned_abs()).ok()?;
    let powered = num_traits::pow(root, k as usize);
    if p < 0 {
        Some(powered.recip())
    } else {
        Some(powered)
    }
}

fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    let negative = n.sign() == Sign::Minus;
    if negative && q % 2 == 0 {
        return None;
    }
    let r = n.abs().nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == n.abs() {
        Some(if negative { -r } else { r })
    } else {
        None
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    #[test]
    fn sqrt_times_sqrt() {
        let r = LaurentPoly::monomial(Monomial::power(0, e(1, 2)));
        assert_eq!(&r * &r, LaurentPoly::var(0));
    }

    #[test]
    fn times_zero_is_zero() {
        let p = LaurentPoly::var(0) + LaurentPoly::one();
        assert!((&p * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let (s1, s3) = (LaurentPoly::var(0), LaurentPoly::var(2));
        let lhs = &(&s3 + &s1) * &(&s3 - &s1);
        let rhs = &s3.pow_u32(2) - &s1.pow_u32(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_rule_on_half_exponent() {
        let p = LaurentPoly::monomial(Monomial::power(0, e(1, 2)));
        let d = p.partial(0);
        assert_eq!(d, LaurentPoly::term(rat(1, 2), Monomial::power(0, e(-1, 2))));
        assert!(LaurentPoly::var(0).partial(1).is_zero());
    }

    #[test]
    fn partial_of_ring_relation_terms() {
        // d/dg (g^2 - a*b*g) = 2g - a*b with g = 2, a = 0, b = 1
        let (a, b, g) = (LaurentPoly::var(0), LaurentPoly::var(1), LaurentPoly::var(2));
        let p = &g.pow_u32(2) - &(&(&a * &b) * &g);
        let expected = &g.scale(&rat_int(2)) - &(&a * &b);
        assert_eq!(p.partial(2), expected);
    }

    #[test]
    fn fractional_pow_needs_perfect_power() {
        let four_x2 = LaurentPoly::term(rat_int(4), Monomial::power(0, e(2, 1)));
        assert_eq!(
            four_x2.pow_exp(e(1, 2)).unwrap(),
            LaurentPoly::term(rat_int(2), Monomial::var(0))
        );
        let two = LaurentPoly::constant(rat_int(2));
        assert!(two.pow_exp(e(1, 2)).is_err());
        let sum = LaurentPoly::var(0) + LaurentPoly::one();
        assert!(sum.pow_exp(e(-1, 1)).is_err());
    }

    #[test]
    fn substitute_to_zero_keeps_constant_term() {
        let p = LaurentPoly::var(0).pow_u32(2) + LaurentPoly::constant(rat_int(7));
        let bind = HashMap::from([(0, LaurentPoly::zero())]);
        assert_eq!(p.substitute(&bind).unwrap(), LaurentPoly::constant(rat_int(7)));
    }
}
