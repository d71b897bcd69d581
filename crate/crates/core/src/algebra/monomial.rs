use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Rational exponent. Denominators stay tiny (radical orders), so `i64` is plenty.
pub type Exp = Ratio<i64>;

/// Index of a generator in its presentation's declaration order.
pub type Gen = u16;

/// Product of generator powers with rational exponents.
///
/// Stored sparsely, sorted by generator index, without zero exponents. The
/// `Ord` impl is graded lexicographic with respect to declaration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Gen, Exp)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(g: Gen) -> Self {
        Monomial(vec![(g, Exp::one())])
    }

    pub fn power(g: Gen, e: Exp) -> Self {
        if e.is_zero() {
            Self::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    /// Builds a monomial from arbitrary `(generator, exponent)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Gen, Exp)>>(pairs: I) -> Self {
        let mut v: Vec<(Gen, Exp)> = pairs.into_iter().collect();
        v.sort_by_key(|(g, _)| *g);
        let mut out: Vec<(Gen, Exp)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some((lg, le)) if *lg == g => *le += e,
                _ => out.push((g, e)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> Exp {
        match self.0.binary_search_by_key(&g, |(h, _)| *h) {
            Ok(i) => self.0[i].1,
            Err(_) => Exp::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Gen, Exp)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Exp {
        self.0.iter().fold(Exp::zero(), |acc, (_, e)| acc + e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// Exponent-wise difference; the result may carry negative exponents.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a - b)
    }

    pub fn pow(&self, k: Exp) -> Monomial {
        if k.is_zero() {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(g, e)| (g, e * k)).collect())
    }

    /// Shifts the exponent of `g` by `delta`.
    pub fn shift(&self, g: Gen, delta: Exp) -> Monomial {
        self.mul(&Monomial::power(g, delta))
    }

    /// Drops generator `g` entirely.
    pub fn without(&self, g: Gen) -> Monomial {
        Monomial(self.0.iter().filter(|(h, _)| *h != g).copied().collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|(_, e)| *e < Exp::zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|(_, e)| e.is_integer())
    }

    fn merge(&self, other: &Monomial, op: impl Fn(Exp, Exp) -> Exp) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (g, e) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, op(a[i - 1].1, Exp::zero()))
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, op(Exp::zero(), b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, op(a[i - 1].1, b[j - 1].1))
            };
            if !e.is_zero() {
                out.push((g, e));
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (ea, eb) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].1, Exp::zero())
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (Exp::zero(), b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (a[i - 1].1, b[j - 1].1)
            };
            match ea.cmp(&eb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(g, e)| format!("g{g}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    #[test]
    fn half_powers_add_up() {
        let m = Monomial::power(0, e(1, 2));
        assert_eq!(m.mul(&m), Monomial::var(0));
    }

    #[test]
    fn division_cancels_to_one() {
        let m = Monomial::from_pairs([(0, e(3, 2)), (2, e(1, 1))]);
        assert!(m.div(&m).is_one());
        assert_eq!(m.div(&Monomial::var(2)), Monomial::power(0, e(3, 2)));
    }

    #[test]
    fn grlex_orders_by_degree_then_declaration() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let xy = x.mul(&y);
        let y2 = y.mul(&y);
        assert!(xy > x);
        assert!(x > y);
        assert!(xy > y2);
        assert!(Monomial::power(0, e(1, 2)) < x);
    }

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let m = Monomial::from_pairs([(1, e(1, 1)), (0, e(2, 1)), (1, e(-1, 1))]);
        assert_eq!(m, Monomial::power(0, e(2, 1)));
    }
}
