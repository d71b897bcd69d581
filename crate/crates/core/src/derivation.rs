//! Derivations, Poisson structures given by a generator table, hamiltonian
//! fields, Jacobi defects and Darboux systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{Gen, LaurentPoly, PresentedAlgebra};
use crate::error::{Error, Result};

/// A derivation fixed by its values on the generators.
///
/// Extends to any element through the chain rule, including fractional and
/// negative powers: `D(g^e) = e g^(e-1) D(g)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    algebra: Arc<PresentedAlgebra>,
    images: BTreeMap<Gen, LaurentPoly>,
}

impl Derivation {
    pub fn new(algebra: Arc<PresentedAlgebra>, images: BTreeMap<Gen, LaurentPoly>) -> Self {
        let images = images.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Derivation { algebra, images }
    }

    pub fn zero(algebra: Arc<PresentedAlgebra>) -> Self {
        Self::new(algebra, BTreeMap::new())
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn image(&self, g: Gen) -> LaurentPoly {
        self.images.get(&g).cloned().unwrap_or_default()
    }

    pub fn images(&self) -> &BTreeMap<Gen, LaurentPoly> {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Chain-rule expansion without normalization.
    pub fn apply_raw(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for g in f.generators() {
            if let Some(img) = self.images.get(&g) {
                out.add_assign_ref(&(&f.partial(g) * img));
            }
        }
        out
    }

    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.algebra.normal_form(&self.apply_raw(f))
    }

    /// Same derivation with every image brought to normal form.
    pub fn normalized(&self) -> Result<Derivation> {
        let images = self
            .images
            .iter()
            .map(|(g, p)| Ok((*g, self.algebra.normal_form(p)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Derivation::new(self.algebra.clone(), images))
    }
}

/// `D1(D2(f)) - D2(D1(f))`, normalized.
pub fn commutator_defect(d1: &Derivation, d2: &Derivation, f: &LaurentPoly) -> Result<LaurentPoly> {
    let a = d1.apply(&d2.apply(f)?)?;
    let b = d2.apply(&d1.apply(f)?)?;
    d1.algebra.normal_form(&(&a - &b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `q(., a)`
    Left,
    /// `q(a, .)`
    Right,
}

/// Antisymmetric table `q(g_i, g_j)`, extended to all elements as a biderivation.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    algebra: Arc<PresentedAlgebra>,
    /// Entries with `i < j` only.
    table: BTreeMap<(Gen, Gen), LaurentPoly>,
}

impl PoissonStructure {
    pub fn new(algebra: Arc<PresentedAlgebra>) -> Self {
        PoissonStructure {
            algebra,
            table: BTreeMap::new(),
        }
    }

    /// Builds a structure from named entries `q(u, v) = value`.
    pub fn from_entries(
        algebra: Arc<PresentedAlgebra>,
        entries: &[(&str, &str, LaurentPoly)],
    ) -> Result<Self> {
        let mut q = Self::new(algebra);
        for (u, v, value) in entries {
            let (i, j) = (q.algebra.gen(u)?, q.algebra.gen(v)?);
            q.set(i, j, value.clone())?;
        }
        Ok(q)
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    /// Sets `q(g_i, g_j) = value` (and implicitly `q(g_j, g_i) = -value`).
    pub fn set(&mut self, i: Gen, j: Gen, value: LaurentPoly) -> Result<()> {
        if i == j {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::InvalidInput(format!(
                "q({0}, {0}) must vanish",
                self.algebra.gen_name(i)
            )));
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    pub fn entry(&self, i: Gen, j: Gen) -> LaurentPoly {
        if i == j {
            return LaurentPoly::zero();
        }
        if i < j {
            self.table.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            -self.table.get(&(j, i)).cloned().unwrap_or_default()
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Gen, Gen), &LaurentPoly)> {
        self.table.iter()
    }

    /// Biderivation value without normalization.
    pub fn bracket_raw(&self, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
        let fg = f.generators();
        let gg = g.generators();
        if fg.is_empty() || gg.is_empty() {
            return LaurentPoly::zero();
        }
        let df: BTreeMap<Gen, LaurentPoly> = fg.iter().map(|&x| (x, f.partial(x))).collect();
        let dg: BTreeMap<Gen, LaurentPoly> = gg.iter().map(|&x| (x, g.partial(x))).collect();
        let mut out = LaurentPoly::zero();
        for (&(i, j), t) in &self.table {
            let mut inner = LaurentPoly::zero();
            if let (Some(a), Some(b)) = (df.get(&i), dg.get(&j)) {
                inner.add_assign_ref(&(a * b));
            }
            if let (Some(a), Some(b)) = (df.get(&j), dg.get(&i)) {
                inner = &inner - &(a * b);
            }
            if !inner.is_zero() {
                out.add_assign_ref(&(t * &inner));
            }
        }
        out
    }

    pub fn bracket(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        self.algebra.normal_form(&self.bracket_raw(f, g))
    }

    /// Cyclic sum `q(q(f,g),h) + q(q(g,h),f) + q(q(h,f),g)`, normalized.
    pub fn jacobi_defect(&self, f: &LaurentPoly, g: &LaurentPoly, h: &LaurentPoly) -> Result<LaurentPoly> {
        let a = self.bracket(&self.bracket(f, g)?, h)?;
        let b = self.bracket(&self.bracket(g, h)?, f)?;
        let c = self.bracket(&self.bracket(h, f)?, g)?;
        self.algebra.normal_form(&(&(&a + &b) + &c))
    }

    /// Jacobi defect on every triple of distinct generators from `gens`;
    /// returns the failing triples with their defects.
    pub fn jacobi_on_generators(&self, gens: &[Gen]) -> Result<Vec<((Gen, Gen, Gen), LaurentPoly)>> {
        let mut bad = Vec::new();
        for (a, &i) in gens.iter().enumerate() {
            for (b, &j) in gens.iter().enumerate().skip(a + 1) {
                for &k in gens.iter().skip(b + 1) {
                    let d = self.jacobi_defect(
                        &LaurentPoly::var(i),
                        &LaurentPoly::var(j),
                        &LaurentPoly::var(k),
                    )?;
                    if !d.is_zero() {
                        bad.push(((i, j, k), d));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// `q(., a)` for `Side::Left`, `q(a, .)` for `Side::Right`.
    pub fn hamiltonian_field(&self, a: &LaurentPoly, side: Side) -> Result<Derivation> {
        let mut images = BTreeMap::new();
        for g in 0..self.algebra.num_generators() as Gen {
            let x = LaurentPoly::var(g);
            let v = match side {
                Side::Left => self.bracket(&x, a)?,
                Side::Right => self.bracket(a, &x)?,
            };
            images.insert(g, v);
        }
        Ok(Derivation::new(self.algebra.clone(), images))
    }

    /// Generator pairs `(i, j)`, `i < j`, on which the two structures differ
    /// as normal forms, with the difference.
    pub fn differences(&self, other: &PoissonStructure) -> Result<Vec<((Gen, Gen), LaurentPoly)>> {
        let n = self.algebra.num_generators() as Gen;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.algebra.normal_form(&(&self.entry(i, j) - &other.entry(i, j)))?;
                if !d.is_zero() {
                    out.push(((i, j), d));
                }
            }
        }
        Ok(out)
    }

    /// Same structure with every entry normalized.
    pub fn normalized(&self) -> Result<PoissonStructure> {
        let mut out = PoissonStructure::new(self.algebra.clone());
        for (&(i, j), v) in &self.table {
            out.set(i, j, self.algebra.normal_form(v)?)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DarbouxRelation {
    /// e.g. `q(a1, b1)`
    pub relation: String,
    pub expected: i32,
    /// Normal form of `q(.,.) - expected`; empty string when it vanishes.
    pub residual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DarbouxReport {
    pub relations: Vec<DarbouxRelation>,
}

impl DarbouxReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DarbouxRelation> {
        self.relations.iter().filter(|r| !r.pass)
    }
}

/// Checks `q(a_i, a_j) = q(b_i, b_j) = 0`, `q(a_i, b_j) = delta_ij` for all pairs.
pub fn darboux_verify(q: &PoissonStructure, pairs: &[(LaurentPoly, LaurentPoly)]) -> Result<DarbouxReport> {
    let alg = q.algebra();
    let mut report = DarbouxReport::default();
    let mut push = |relation: String, value: LaurentPoly, expected: i32| -> Result<()> {
        let residual = alg.normal_form(&(&value - &LaurentPoly::constant(crate::algebra::rat_int(expected as i64))))?;
        report.relations.push(DarbouxRelation {
            relation,
            expected,
            pass: residual.is_zero(),
            residual: if residual.is_zero() { String::new() } else { alg.format(&residual) },
        });
        Ok(())
    };
    let n = pairs.len();
    for i in 0..n {
        for j in 0..n {
            let v = q.bracket(&pairs[i].0, &pairs[j].1)?;
            push(format!("q(a{}, b{})", i + 1, j + 1), v, i32::from(i == j))?;
        }
        for j in (i + 1)..n {
            let v = q.bracket(&pairs[i].0, &pairs[j].0)?;
            push(format!("q(a{}, a{})", i + 1, j + 1), v, 0)?;
            let v = q.bracket(&pairs[i].1, &pairs[j].1)?;
            push(format!("q(b{}, b{})", i + 1, j + 1), v, 0)?;
        }
    }
    Ok(report)
}

/// Verified Darboux pairs together with their hamiltonian fields
/// `A_k = q(., b_k)` and `B_k = q(a_k, .)`.
#[derive(Clone, Debug)]
pub struct DarbouxSystem {
    structure: Arc<PoissonStructure>,
    pairs: Vec<(LaurentPoly, LaurentPoly)>,
    a_fields: Vec<Derivation>,
    b_fields: Vec<Derivation>,
}

impl DarbouxSystem {
    /// Verifies all Darboux relations and pairwise commutation of the fields
    /// on the generators; fails with the report text otherwise.
    pub fn new(structure: Arc<PoissonStructure>, pairs: Vec<(LaurentPoly, LaurentPoly)>) -> Result<Self> {
        let report = darboux_verify(&structure, &pairs)?;
        if !report.all_pass() {
            let bad: Vec<String> = report
                .failures()
                .map(|r| format!("{} - {} = {}", r.relation, r.expected, r.residual))
                .collect();
            return Err(Error::InvalidInput(format!("Darboux relations fail: {}", bad.join("; "))));
        }
        let mut a_fields = Vec::with_capacity(pairs.len());
        let mut b_fields = Vec::with_capacity(pairs.len());
        for (a, b) in &pairs {
            a_fields.push(structure.hamiltonian_field(b, Side::Left)?);
            b_fields.push(structure.hamiltonian_field(a, Side::Right)?);
        }
        let sys = DarbouxSystem {
            structure,
            pairs,
            a_fields,
            b_fields,
        };
        let fields: Vec<&Derivation> = sys.a_fields.iter().chain(sys.b_fields.iter()).collect();
        let alg = sys.structure.algebra().clone();
        for g in alg.surviving_generators() {
            let x = LaurentPoly::var(g);
            for (i, d1) in fields.iter().enumerate() {
                for d2 in fields.iter().skip(i + 1) {
                    let c = commutator_defect(d1, d2, &x)?;
                    if !c.is_zero() {
                        return Err(Error::InvalidInput(format!(
                            "hamiltonian fields do not commute on {}: {}",
                            alg.gen_name(g),
                            alg.format(&c)
                        )));
                    }
                }
            }
        }
        Ok(sys)
    }

    pub fn structure(&self) -> &Arc<PoissonStructure> {
        &self.structure
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        self.structure.algebra()
    }

    pub fn pairs(&self) -> &[(LaurentPoly, LaurentPoly)] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// `A_k = q(., b_k)`
    pub fn a_field(&self, k: usize) -> &Derivation {
        &self.a_fields[k]
    }

    /// `B_k = q(a_k, .)`
    pub fn b_field(&self, k: usize) -> &Derivation {
        &self.b_fields[k]
    }

    pub fn a_fields(&self) -> &[Derivation] {
        &self.a_fields
    }

    pub fn b_fields(&self) -> &[Derivation] {
        &self.b_fields
    }
}

/// Structure table of `sum_k q(., b_k) ^ q(a_k, .)` on generator pairs,
/// where `(A ^ B)(u, v) = A(u) B(v) - B(u) A(v)`.
pub fn reconstruct_bracket(sys: &DarbouxSystem) -> Result<PoissonStructure> {
    let alg = sys.algebra().clone();
    let mut q = PoissonStructure::new(alg.clone());
    let n = alg.num_generators() as Gen;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = LaurentPoly::zero();
            for k in 0..sys.n() {
                let (a, b) = (sys.a_field(k), sys.b_field(k));
                v.add_assign_ref(&(&a.image(i) * &b.image(j)));
                v = &v - &(&b.image(i) * &a.image(j));
            }
            q.set(i, j, alg.normal_form(&v)?)?;
        }
    }
    Ok(q)
}

/// `q(c, b)` vanishes for the given element pairs; helper for closure checks.
pub fn brackets_vanish(q: &PoissonStructure, pairs: &[(LaurentPoly, LaurentPoly)]) -> Result<bool> {
    for (c, b) in pairs {
        if !q.bracket(c, b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn unit() -> LaurentPoly {
    LaurentPoly::constant(crate::algebra::Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn flat1() -> PoissonStructure {
        let alg = Arc::new(PresentedAlgebra::free("flat1", &["x", "xi"]));
        PoissonStructure::from_entries(alg, &[("x", "xi", unit())]).unwrap()
    }

    #[test]
    fn antisymmetry_on_self() {
        let q = flat1();
        let f = &q.algebra().var("x").pow_u32(2) + &q.algebra().var("xi");
        assert!(q.bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn derivation_kills_units() {
        let q = flat1();
        let d = q.hamiltonian_field(&q.algebra().var("x"), Side::Left).unwrap();
        assert!(d.apply(&LaurentPoly::constant(rat_int(5))).unwrap().is_zero());
    }

    #[test]
    fn field_of_constant_is_zero() {
        let q = flat1();
        assert!(q.hamiltonian_field(&unit(), Side::Left).unwrap().is_zero());
    }

    #[test]
    fn self_commutator_vanishes() {
        let q = flat1();
        let d = q.hamiltonian_field(&q.algebra().var("x").pow_u32(3), Side::Right).unwrap();
        let f = q.algebra().var("xi").pow_u32(4);
        assert!(commutator_defect(&d, &d, &f).unwrap().is_zero());
    }

    #[test]
    fn jacobi_with_repeated_argument() {
        let q = flat1();
        let f = &q.algebra().var("x") * &q.algebra().var("xi");
        let g = q.algebra().var("xi").pow_u32(3);
        assert!(q.jacobi_defect(&f, &f, &g).unwrap().is_zero());
    }

    #[test]
    fn empty_pair_list_reconstructs_zero() {
        let q = Arc::new(flat1());
        let sys = DarbouxSystem::new(q, vec![]).unwrap();
        let r = reconstruct_bracket(&sys).unwrap();
        assert_eq!(r.entries().count(), 0);
    }

    #[test]
    fn failing_pair_is_reported_not_panicked() {
        let q = flat1();
        let x = q.algebra().var("x");
        let rep = darboux_verify(&q, &[(x.clone(), x)]).unwrap();
        assert!(!rep.all_pass());
        assert_eq!(rep.failures().next().unwrap().residual, "-1");
    }
}
