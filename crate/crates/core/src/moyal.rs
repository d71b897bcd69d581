//! Grönewold–Moyal star product built from a Darboux system.
//!
//! With `A_i = q(., b_i)` and `B_i = q(a_i, .)` the order-k term is
//!
//! ```text
//! Q_k(f, g) = sum_j (-1)^j C(k, j) sum_{i in [n]^k}
//!     A_{i_1}..A_{i_{k-j}} B_{i_{k-j+1}}..B_{i_k}(f) * B_{i_1}..B_{i_{k-j}} A_{i_{k-j+1}}..A_{i_k}(g)
//! ```
//!
//! so that `Q_1 = q`. The fields commute, so each operator word only depends
//! on how often every field occurs; words are grouped by count vectors and
//! weighted by multinomial coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{LaurentPoly, PresentedAlgebra, Rational};
use crate::derivation::{DarbouxSystem, Derivation};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 8;
pub const DEFAULT_TERM_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct MoyalConfig {
    pub max_order: usize,
    /// Monomial products allowed in one `Q_k` evaluation.
    pub term_budget: u128,
}

impl Default for MoyalConfig {
    fn default() -> Self {
        MoyalConfig {
            max_order: DEFAULT_MAX_ORDER,
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }
}

/// Coefficients `c_0..c_K` of a truncated series in `t`, `c_k = Q_k / k!`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarTruncation {
    pub coefficients: Vec<LaurentPoly>,
}

impl StarTruncation {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(LaurentPoly::is_zero)
    }

    pub fn coefficient(&self, k: usize) -> &LaurentPoly {
        &self.coefficients[k]
    }

    /// Termwise difference, normalized in `alg`.
    pub fn sub(&self, other: &StarTruncation, alg: &PresentedAlgebra) -> Result<StarTruncation> {
        let k = self.coefficients.len().max(other.coefficients.len());
        let zero = LaurentPoly::zero();
        let coefficients = (0..k)
            .map(|i| {
                let a = self.coefficients.get(i).unwrap_or(&zero);
                let b = other.coefficients.get(i).unwrap_or(&zero);
                alg.normal_form(&(a - b))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StarTruncation { coefficients })
    }

    /// Lowest order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }
}

/// Caches `A^c B^d (f)` keyed by the concatenated count vector `(c, d)`.
struct WordCache<'a> {
    fields: Vec<&'a Derivation>,
    values: HashMap<Vec<u32>, LaurentPoly>,
}

impl<'a> WordCache<'a> {
    fn new(sys: &'a DarbouxSystem, base: LaurentPoly) -> Self {
        let fields = sys.a_fields().iter().chain(sys.b_fields().iter()).collect::<Vec<_>>();
        let mut values = HashMap::new();
        values.insert(vec![0; fields.len()], base);
        WordCache { fields, values }
    }

    fn get(&mut self, key: &[u32]) -> Result<LaurentPoly> {
        if let Some(v) = self.values.get(key) {
            return Ok(v.clone());
        }
        let i = key.iter().position(|&c| c > 0).expect("zero key is cached");
        let mut parent = key.to_vec();
        parent[i] -= 1;
        let prev = self.get(&parent)?;
        let value = if prev.is_zero() {
            prev
        } else {
            self.fields[i].apply(&prev)?
        };
        self.values.insert(key.to_vec(), value.clone());
        Ok(value)
    }
}

/// All vectors of `n` non-negative integers summing to `total`.
pub fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn multinomial(c: &[u32]) -> BigInt {
    let total: u32 = c.iter().sum();
    c.iter().fold(factorial(total), |acc, &x| acc / factorial(x))
}

/// Star product machinery over a verified Darboux system.
#[derive(Clone, Debug)]
pub struct MoyalQuantizer {
    system: Arc<DarbouxSystem>,
    config: MoyalConfig,
}

impl MoyalQuantizer {
    pub fn new(system: Arc<DarbouxSystem>) -> Self {
        Self::with_config(system, MoyalConfig::default())
    }

    pub fn with_config(system: Arc<DarbouxSystem>, config: MoyalConfig) -> Self {
        MoyalQuantizer { system, config }
    }

    pub fn system(&self) -> &Arc<DarbouxSystem> {
        &self.system
    }

    pub fn config(&self) -> MoyalConfig {
        self.config
    }

    fn algebra(&self) -> &PresentedAlgebra {
        self.system.algebra()
    }

    fn guard(&self, k: usize) -> Result<()> {
        if k > self.config.max_order {
            return Err(Error::OrderTooLarge {
                order: k,
                max: self.config.max_order,
            });
        }
        Ok(())
    }

    /// `Q_k(f, g)`, normalized.
    pub fn term(&self, k: usize, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        self.guard(k)?;
        let alg = self.algebra();
        let f = alg.normal_form(f)?;
        let g = alg.normal_form(g)?;
        let mut fc = WordCache::new(&self.system, f);
        let mut gc = WordCache::new(&self.system, g);
        self.term_cached(k, &mut fc, &mut gc)
    }

    fn term_cached(&self, k: usize, fc: &mut WordCache, gc: &mut WordCache) -> Result<LaurentPoly> {
        let n = self.system.n();
        let k32 = k as u32;
        let mut acc = LaurentPoly::zero();
        let mut spent: u128 = 0;
        for j in 0..=k32 {
            let sign: Rational = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            let outer = Rational::from_integer(binomial(k32, j)) * sign;
            for c in compositions(k32 - j, n) {
                let mc = multinomial(&c);
                for d in compositions(j, n) {
                    let fkey: Vec<u32> = c.iter().chain(d.iter()).copied().collect();
                    let gkey: Vec<u32> = d.iter().chain(c.iter()).copied().collect();
                    let pf = fc.get(&fkey)?;
                    if pf.is_zero() {
                        continue;
                    }
                    let pg = gc.get(&gkey)?;
                    if pg.is_zero() {
                        continue;
                    }
                    spent += (pf.len() * pg.len()) as u128;
                    if spent > self.config.term_budget {
                        return Err(Error::TermBudget {
                            terms: spent,
                            budget: self.config.term_budget,
                        });
                    }
                    let w = &outer * Rational::from_integer(&mc * multinomial(&d));
                    acc.add_scaled(&(&pf * &pg), &w);
                }
            }
        }
        self.algebra().normal_form(&acc)
    }

    /// `c_k = Q_k(f, g) / k!` for `k <= order`.
    pub fn star(&self, order: usize, f: &LaurentPoly, g: &LaurentPoly) -> Result<StarTruncation> {
        self.guard(order)?;
        let alg = self.algebra();
        let mut fc = WordCache::new(&self.system, alg.normal_form(f)?);
        let mut gc = WordCache::new(&self.system, alg.normal_form(g)?);
        let mut coefficients = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let q = self.term_cached(k, &mut fc, &mut gc)?;
            let inv = Rational::new(BigInt::one(), factorial(k as u32));
            coefficients.push(q.scale(&inv));
        }
        Ok(StarTruncation { coefficients })
    }

    /// Truncated product of two series.
    pub fn star_series(&self, x: &StarTruncation, y: &StarTruncation, order: usize) -> Result<StarTruncation> {
        self.guard(order)?;
        let mut coefficients = vec![LaurentPoly::zero(); order + 1];
        for (i, xi) in x.coefficients.iter().enumerate().take(order + 1) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coefficients.iter().enumerate().take(order + 1 - i) {
                if yj.is_zero() {
                    continue;
                }
                let s = self.star(order - i - j, xi, yj)?;
                for (l, c) in s.coefficients.iter().enumerate() {
                    coefficients[i + j + l].add_assign_ref(c);
                }
            }
        }
        let alg = self.algebra();
        let coefficients = coefficients
            .iter()
            .map(|c| alg.normal_form(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(StarTruncation { coefficients })
    }

    /// Coefficients of `(f*g)*h - f*(g*h)` through order `K`.
    pub fn associativity_defect(
        &self,
        order: usize,
        f: &LaurentPoly,
        g: &LaurentPoly,
        h: &LaurentPoly,
    ) -> Result<StarTruncation> {
        let constant = |p: &LaurentPoly| StarTruncation {
            coefficients: vec![p.clone()],
        };
        let fg = self.star(order, f, g)?;
        let left = self.star_series(&fg, &constant(h), order)?;
        let gh = self.star(order, g, h)?;
        let right = self.star_series(&constant(f), &gh, order)?;
        left.sub(&right, self.algebra())
    }

    /// Compares `Q_k` with the specialised single-pair forms: the even-order
    /// expansion into `A^{2i}B^{2j}` and `AB A^{2i}B^{2j}` words, and the
    /// odd-order expansion through `q`.
    pub fn closed_form_crosscheck(&self, k: usize, f: &LaurentPoly, g: &LaurentPoly) -> Result<bool> {
        self.guard(k)?;
        if self.system.n() != 1 {
            return Err(Error::InvalidInput("closed forms need exactly one Darboux pair".into()));
        }
        let general = self.term(k, f, g)?;
        let closed = if k % 2 == 0 {
            self.even_closed_form(k, f, g)?
        } else {
            self.odd_closed_form(k, f, g)?
        };
        self.algebra().poly_equal(&general, &closed)
    }

    fn word(&self, a_count: u32, b_count: u32, x: &LaurentPoly) -> Result<LaurentPoly> {
        let (a, b) = (self.system.a_field(0), self.system.b_field(0));
        let mut v = x.clone();
        for _ in 0..b_count {
            v = b.apply(&v)?;
        }
        for _ in 0..a_count {
            v = a.apply(&v)?;
        }
        Ok(v)
    }

    fn even_closed_form(&self, k: usize, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        let k32 = k as u32;
        let half = k32 / 2;
        let kf = factorial(k32);
        let mut acc = LaurentPoly::zero();
        for i in 0..=half {
            let j = half - i;
            let w = Rational::new(kf.clone(), factorial(2 * i) * factorial(2 * j));
            let p = &self.word(2 * i, 2 * j, f)? * &self.word(2 * j, 2 * i, g)?;
            acc.add_scaled(&p, &w);
        }
        if half >= 1 {
            for i in 0..half {
                let j = half - 1 - i;
                let w = -Rational::new(kf.clone(), factorial(2 * i + 1) * factorial(2 * j + 1));
                let p = &self.word(2 * i + 1, 2 * j + 1, f)? * &self.word(2 * j + 1, 2 * i + 1, g)?;
                acc.add_scaled(&p, &w);
            }
        }
        self.algebra().normal_form(&acc)
    }

    fn odd_closed_form(&self, k: usize, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        let m = k as u32 - 1;
        let mf = factorial(m);
        let q = self.system.structure();
        let mut acc = LaurentPoly::zero();
        for i in 0..=m {
            let j = m - i;
            let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            let w = Rational::new(mf.clone(), factorial(i) * factorial(j)) * sign;
            let v = q.bracket(&self.word(i, j, f)?, &self.word(j, i, g)?)?;
            acc.add_scaled(&v, &w);
        }
        self.algebra().normal_form(&acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(2, 0).len(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(multinomial(&[1, 2, 1]), BigInt::from(12));
    }
}
