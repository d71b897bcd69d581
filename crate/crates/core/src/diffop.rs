//! Linear differential operators in a chosen set of coordinate generators,
//! and bidifferential operators assembled from Darboux fields.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Gen, LaurentPoly, PresentedAlgebra, Rational};
use crate::derivation::{DarbouxSystem, Derivation};
use crate::error::{Error, Result};
use crate::moyal::{binomial, compositions, multinomial};

/// `sum_alpha p_alpha d^alpha`, multi-indices over `coords`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    pub coords: Vec<Gen>,
    pub terms: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl DiffOp {
    pub fn identity(coords: &[Gen]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; coords.len()], LaurentPoly::one());
        DiffOp {
            coords: coords.to_vec(),
            terms,
        }
    }

    /// `D = sum_i D(x_i) d/dx_i`.
    pub fn from_derivation(d: &Derivation, coords: &[Gen]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (i, &g) in coords.iter().enumerate() {
            let c = d.apply(&LaurentPoly::var(g))?;
            if !c.is_zero() {
                let mut idx = vec![0; coords.len()];
                idx[i] = 1;
                terms.insert(idx, c);
            }
        }
        Ok(DiffOp {
            coords: coords.to_vec(),
            terms,
        })
    }

    /// `X o P = sum X(p_a) d^a + sum_i p_a X(x_i) d^(a + e_i)`.
    pub fn compose_field(&self, x: &Derivation, alg: &PresentedAlgebra) -> Result<DiffOp> {
        let images: Vec<LaurentPoly> = self
            .coords
            .iter()
            .map(|&g| x.apply(&LaurentPoly::var(g)))
            .collect::<Result<_>>()?;
        let mut terms: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
        for (idx, p) in &self.terms {
            let xp = x.apply(p)?;
            if !xp.is_zero() {
                terms.entry(idx.clone()).or_default().add_assign_ref(&xp);
            }
            for (i, xi) in images.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let mut up = idx.clone();
                up[i] += 1;
                terms.entry(up).or_default().add_assign_ref(&alg.mul(p, xi)?);
            }
        }
        let mut out = BTreeMap::new();
        for (k, v) in terms {
            let v = alg.normal_form(&v)?;
            if !v.is_zero() {
                out.insert(k, v);
            }
        }
        Ok(DiffOp {
            coords: self.coords.clone(),
            terms: out,
        })
    }

    pub fn apply(&self, f: &LaurentPoly, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (idx, p) in &self.terms {
            let mut v = f.clone();
            for (i, &n) in idx.iter().enumerate() {
                for _ in 0..n {
                    v = v.partial(self.coords[i]);
                }
            }
            acc.add_assign_ref(&(p * &v));
        }
        alg.normal_form(&acc)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Part of exact order `k`.
    pub fn order_part(&self, k: u32) -> DiffOp {
        DiffOp {
            coords: self.coords.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(idx, _)| idx.iter().sum::<u32>() == k)
                .map(|(i, p)| (i.clone(), p.clone()))
                .collect(),
        }
    }

    /// `sum |coefficients|` over all coefficient polynomials.
    pub fn coeff_abs_sum(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::from_integer(BigInt::from(0)), |acc, p| acc + p.coeff_abs_sum())
    }

    /// Renders like `4*s1 d1^2 + 2 d1`.
    pub fn format(&self, alg: &PresentedAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (idx, p) in self.terms.iter().rev() {
            let mut d = Vec::new();
            for (i, &n) in idx.iter().enumerate() {
                let name = alg.gen_name(self.coords[i]);
                match n {
                    0 => {}
                    1 => d.push(format!("d[{name}]")),
                    _ => d.push(format!("d[{name}]^{n}")),
                }
            }
            let c = alg.format(p);
            let c = if p.len() > 1 { format!("({c})") } else { c };
            if d.is_empty() {
                parts.push(c);
            } else {
                parts.push(format!("{c} {}", d.join(" ")));
            }
        }
        parts.join(" + ")
    }
}

/// `sum c_(a,b) d^a(f) d^b(g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiDiffOp {
    pub coords: Vec<Gen>,
    pub terms: BTreeMap<(Vec<u32>, Vec<u32>), LaurentPoly>,
}

impl BiDiffOp {
    pub fn apply(&self, f: &LaurentPoly, g: &LaurentPoly, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
        let d = |p: &LaurentPoly, idx: &[u32]| {
            let mut v = p.clone();
            for (i, &n) in idx.iter().enumerate() {
                for _ in 0..n {
                    v = v.partial(self.coords[i]);
                }
            }
            v
        };
        let mut acc = LaurentPoly::zero();
        for ((a, b), c) in &self.terms {
            acc.add_assign_ref(&(&(c * &d(f, a)) * &d(g, b)));
        }
        alg.normal_form(&acc)
    }

    /// Largest derivative order in the first and second argument.
    pub fn bidegree(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(x, y), (a, b)| {
            (x.max(a.iter().sum()), y.max(b.iter().sum()))
        })
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.terms.values()
    }
}

/// `Q_k` of the Darboux system as a bidifferential operator in `coords`.
pub fn moyal_bidiff(sys: &DarbouxSystem, k: usize, coords: &[Gen]) -> Result<BiDiffOp> {
    let alg = sys.algebra();
    let n = sys.n();
    let fields: Vec<&Derivation> = sys.a_fields().iter().chain(sys.b_fields().iter()).collect();
    let mut cache: HashMap<Vec<u32>, DiffOp> = HashMap::new();
    cache.insert(vec![0; 2 * n], DiffOp::identity(coords));
    fn word(
        key: &[u32],
        fields: &[&Derivation],
        alg: &PresentedAlgebra,
        cache: &mut HashMap<Vec<u32>, DiffOp>,
    ) -> Result<DiffOp> {
        if let Some(v) = cache.get(key) {
            return Ok(v.clone());
        }
        let i = key.iter().position(|&c| c > 0).expect("zero key is cached");
        let mut parent = key.to_vec();
        parent[i] -= 1;
        let p = word(&parent, fields, alg, cache)?;
        let v = p.compose_field(fields[i], alg)?;
        cache.insert(key.to_vec(), v.clone());
        Ok(v)
    }
    let k32 = k as u32;
    let mut terms: BTreeMap<(Vec<u32>, Vec<u32>), LaurentPoly> = BTreeMap::new();
    for j in 0..=k32 {
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let outer = Rational::from_integer(binomial(k32, j)) * sign;
        for c in compositions(k32 - j, n) {
            for d in compositions(j, n) {
                let fkey: Vec<u32> = c.iter().chain(d.iter()).copied().collect();
                let gkey: Vec<u32> = d.iter().chain(c.iter()).copied().collect();
                let fop = word(&fkey, &fields, alg, &mut cache)?;
                let gop = word(&gkey, &fields, alg, &mut cache)?;
                let w = &outer * Rational::from_integer(multinomial(&c) * multinomial(&d));
                for (a, pa) in &fop.terms {
                    for (b, pb) in &gop.terms {
                        terms
                            .entry((a.clone(), b.clone()))
                            .or_default()
                            .add_scaled(&(pa * pb), &w);
                    }
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (key, v) in terms {
        let v = alg.normal_form(&v)?;
        if !v.is_zero() {
            out.insert(key, v);
        }
    }
    Ok(BiDiffOp {
        coords: coords.to_vec(),
        terms: out,
    })
}

/// Coordinates by name.
pub fn coords(alg: &PresentedAlgebra, names: &[&str]) -> Result<Vec<Gen>> {
    names
        .iter()
        .map(|n| alg.gen(n).map_err(|_| Error::UnknownGenerator(n.to_string())))
        .collect()
}
