//! Verification suites: named groups of exact and numeric checks with a
//! deterministic, serializable report.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat_int, Exp, Gen, LaurentPoly, Monomial, PresentedAlgebra};
use crate::convergence::{self, coeff_norm};
use crate::derivation::{darboux_verify, reconstruct_bracket};
use crate::diffop::moyal_bidiff;
use crate::error::{Error, Result};
use crate::models::{self, build_model, cone, flat, k3, matrices, K3Variant, ModelDescriptor};
use crate::moyal::{MoyalConfig, MoyalQuantizer};
use crate::report::{Check, CheckList};

pub const SUITES: [&str; 7] = ["reduction", "darboux", "moyal", "matrices", "k3", "convergence", "all"];
pub const SEED_ENV: &str = "GMQ_SEED";
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub model: String,
    pub statement: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub version: String,
    pub summary: Summary,
    pub records: Vec<Record>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            summary: Summary::default(),
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn add(&mut self, list: CheckList) {
        for c in list.checks {
            self.push(c.id, c.statement, if c.pass { Status::Pass } else { Status::Fail }, c.witness);
        }
        self.notes.extend(list.notes);
    }

    fn push(&mut self, id: String, statement: String, status: Status, witness: String) {
        let model = id.split('/').next().unwrap_or_default().to_string();
        match status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skip => self.summary.skip += 1,
        }
        self.records.push(Record {
            id,
            model,
            statement,
            status,
            witness,
        });
    }

    fn skip(&mut self, id: impl Into<String>, statement: impl Into<String>, why: impl Into<String>) {
        self.push(id.into(), statement.into(), Status::Skip, why.into());
    }

    /// Runs a check group; an error becomes a single failed record.
    fn run(&mut self, id: &str, f: impl FnOnce() -> Result<CheckList>) {
        match f() {
            Ok(list) => self.add(list),
            Err(e) => self.push(id.to_string(), "check ran to completion".into(), Status::Fail, e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {} (seed {}, version {})", self.suite, self.seed, self.version);
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = write!(s, "{tag} {}  {}", r.id, r.statement);
            if !r.witness.is_empty() {
                let _ = write!(s, "  [{}]", r.witness);
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            self.summary.pass, self.summary.fail, self.summary.skip
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Seed from `GMQ_SEED`, else the default.
pub fn default_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Independent stream per purpose.
pub fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Random combination of products of at most `max_degree` atoms, with small
/// nonzero integer coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, atoms: &[LaurentPoly], max_degree: usize, max_terms: usize) -> LaurentPoly {
    let n_terms = rng.gen_range(1..=max_terms);
    let mut out = LaurentPoly::zero();
    for _ in 0..n_terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut t = LaurentPoly::one();
        for _ in 0..deg {
            t = &t * atoms.choose(rng).expect("atoms");
        }
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        out.add_scaled(&t, &rat_int(c));
    }
    out
}

/// Random homogeneous polynomial of degree `m` in the given generators.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, gens: &[Gen], m: u32, max_terms: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut e = vec![0u32; gens.len()];
        for _ in 0..m {
            e[rng.gen_range(0..gens.len())] += 1;
        }
        let mono = Monomial::from_pairs(gens.iter().zip(&e).map(|(g, k)| (*g, Exp::from(*k as i64))));
        let c = rng.gen_range(1i64..=5) * if rng.gen() { 1 } else { -1 };
        out.add_term(mono, rat_int(c));
    }
    out
}

/// Atoms from which random test elements of a model are built.
pub fn model_atoms(model: &ModelDescriptor) -> Vec<LaurentPoly> {
    let alg = &model.algebra;
    let names: Vec<String> = match model.name.as_str() {
        "cone" => vec!["sqrt(s1)".into(), "sqrt(s2)".into(), "s3".into()],
        "matrices" => matrices::BASE.iter().map(|s| s.to_string()).collect(),
        n if n.starts_with("k3") => vec!["x1".into(), "x2".into(), "x3".into()],
        _ => alg.surviving_generators().iter().map(|g| alg.gen_name(*g).to_string()).collect(),
    };
    names.iter().map(|n| model.parse(n).expect("atom parses")).collect()
}

pub fn jacobi_checks(model: &ModelDescriptor, seed: u64) -> Result<CheckList> {
    let mut out = CheckList::default();
    let alg = &model.algebra;
    let gens = alg.surviving_generators();
    let bad = model.structure.jacobi_on_generators(&gens)?;
    out.push(Check::new(
        format!("{}/jacobi/generators", model.name),
        "Jacobi identity on all generator triples",
        bad.is_empty(),
        bad.first()
            .map(|((i, j, k), v)| {
                format!("({}, {}, {}): {}", alg.gen_name(*i), alg.gen_name(*j), alg.gen_name(*k), alg.format(v))
            })
            .unwrap_or_default(),
    ));
    let atoms = model_atoms(model);
    let mut rng = rng_for(seed, &format!("jacobi/{}", model.name));
    let mut first_bad = None;
    for trial in 0..50 {
        let f = random_element(&mut rng, &atoms, 3, 3);
        let g = random_element(&mut rng, &atoms, 3, 3);
        let h = random_element(&mut rng, &atoms, 3, 3);
        let v = model.structure.jacobi_defect(&f, &g, &h)?;
        if !v.is_zero() && first_bad.is_none() {
            first_bad = Some(format!("trial {trial}: {}", alg.format(&v)));
        }
    }
    out.push(Check::new(
        format!("{}/jacobi/random", model.name),
        "Jacobi identity on 50 random degree <= 3 triples",
        first_bad.is_none(),
        first_bad.unwrap_or_default(),
    ));
    Ok(out)
}

pub fn darboux_checks(model: &ModelDescriptor) -> Result<CheckList> {
    let mut out = CheckList::default();
    let rep = darboux_verify(&model.structure, &model.pairs)?;
    for r in &rep.relations {
        out.push(Check::new(
            format!("{}/darboux/{}", model.name, r.relation),
            format!("{} = {}", r.relation, r.expected),
            r.pass,
            r.residual.clone(),
        ));
    }
    out.extend(model.tangency_check()?);
    Ok(out)
}

pub fn reconstruction_check(model: &ModelDescriptor) -> Result<CheckList> {
    let mut out = CheckList::default();
    let sys = model.darboux()?;
    let rebuilt = reconstruct_bracket(sys)?;
    let diff = model.structure.differences(&rebuilt)?;
    out.push(Check::new(
        format!("{}/reconstruction", model.name),
        "sum_k (A_k wedge B_k) reproduces the structure table",
        diff.is_empty(),
        diff.first()
            .map(|((i, j), v)| {
                format!("q({}, {}) off by {}", model.algebra.gen_name(*i), model.algebra.gen_name(*j), model.format(v))
            })
            .unwrap_or_default(),
    ));
    Ok(out)
}

fn first_nonzero_witness(alg: &PresentedAlgebra, t: &crate::moyal::StarTruncation) -> String {
    t.first_nonzero()
        .map(|k| format!("order {k}: {}", alg.format(t.coefficient(k))))
        .unwrap_or_default()
}

/// Q1 = bracket, parity, unit law and associativity on random triples.
pub fn moyal_checks(model: &ModelDescriptor, seed: u64, order: usize, trials: usize, degree: usize) -> Result<CheckList> {
    let mut out = CheckList::default();
    let q = MoyalQuantizer::new(model.darboux()?.clone());
    let alg = &model.algebra;
    let atoms = model_atoms(model);
    let mut rng = rng_for(seed, &format!("moyal/{}", model.name));
    let (mut q1_bad, mut parity_bad, mut unit_bad, mut assoc_bad) = (None, None, None, None);
    for trial in 0..trials {
        let f = alg.normal_form(&random_element(&mut rng, &atoms, degree, 3))?;
        let g = alg.normal_form(&random_element(&mut rng, &atoms, degree, 3))?;
        let h = alg.normal_form(&random_element(&mut rng, &atoms, degree, 3))?;
        let q1 = q.term(1, &f, &g)?;
        let br = model.structure.bracket(&f, &g)?;
        if !alg.poly_equal(&q1, &br)? && q1_bad.is_none() {
            q1_bad = Some(format!("trial {trial}: {}", alg.format(&(&q1 - &br))));
        }
        let fg = q.star(order, &f, &g)?;
        let gf = q.star(order, &g, &f)?;
        for k in 0..=order {
            let s = if k % 2 == 0 { gf.coefficient(k).clone() } else { -gf.coefficient(k) };
            if !alg.poly_equal(fg.coefficient(k), &s)? && parity_bad.is_none() {
                parity_bad = Some(format!("trial {trial}, order {k}"));
            }
        }
        let one = LaurentPoly::one();
        for (a, b) in [(&one, &f), (&f, &one)] {
            let st = q.star(order, a, b)?;
            let ok = alg.poly_equal(st.coefficient(0), &f)? && (1..=order).all(|k| st.coefficient(k).is_zero());
            if !ok && unit_bad.is_none() {
                unit_bad = Some(format!("trial {trial}: {}", first_nonzero_witness(alg, &st)));
            }
        }
        let d = q.associativity_defect(order, &f, &g, &h)?;
        if !d.is_zero() && assoc_bad.is_none() {
            assoc_bad = Some(format!("trial {trial}, {}", first_nonzero_witness(alg, &d)));
        }
    }
    let name = &model.name;
    for (tag, stmt, bad) in [
        ("q1", "Q1(f, g) = q(f, g)".to_string(), q1_bad),
        ("parity", format!("Q_k(g, f) = (-1)^k Q_k(f, g) for k <= {order}"), parity_bad),
        ("unit", format!("1 * f = f * 1 = f through order {order}"), unit_bad),
        (
            "associativity",
            format!("(f*g)*h = f*(g*h) through order {order} on {trials} random degree <= {degree} triples"),
            assoc_bad,
        ),
    ] {
        out.push(Check::new(format!("{name}/moyal/{tag}"), stmt, bad.is_none(), bad.unwrap_or_default()));
    }
    Ok(out)
}

pub fn closed_form_checks(model: &ModelDescriptor, seed: u64, max_k: usize) -> Result<CheckList> {
    let mut out = CheckList::default();
    let q = MoyalQuantizer::new(model.darboux()?.clone());
    let atoms = model_atoms(model);
    let mut rng = rng_for(seed, "closed-form");
    for k in 1..=max_k {
        let mut bad = None;
        for trial in 0..5 {
            let f = random_element(&mut rng, &atoms, 3, 3);
            let g = random_element(&mut rng, &atoms, 3, 3);
            if !q.closed_form_crosscheck(k, &f, &g)? && bad.is_none() {
                bad = Some(format!("trial {trial}"));
            }
        }
        out.push(Check::new(
            format!("{}/moyal/closed-form/k{k}", model.name),
            format!("Q_{k} agrees with the {} closed form", if k % 2 == 0 { "even" } else { "odd" }),
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// Coefficients of `Q_k` as a bidifferential operator in `s1, s2, s3` have
/// degree at most `k`.
pub fn degree_bound_checks(max_k: usize) -> Result<CheckList> {
    let m = cone::model()?;
    let sys = m.darboux()?;
    let coords: Vec<Gen> = vec![0, 1, 2];
    let mut out = CheckList::default();
    for k in 1..=max_k {
        let op = moyal_bidiff(sys, k, &coords)?;
        let mut worst = Exp::from(0);
        let mut polynomial = true;
        for c in op.coefficients() {
            for (mono, _) in c.terms() {
                worst = worst.max(mono.degree());
                polynomial &= mono.is_integral() && !mono.has_negative();
            }
        }
        out.push(Check::new(
            format!("cone/degree-bound/k{k}"),
            format!("Q_{k} has polynomial coefficients of degree <= {k}"),
            polynomial && worst <= Exp::from(k as i64),
            format!("max degree {worst}, polynomial {polynomial}"),
        ));
    }
    Ok(out)
}

/// Derivative lemma and the vanishing rule on random homogeneous inputs.
pub fn norm_lemma_checks(seed: u64, max_m: u32) -> Result<CheckList> {
    let mut out = CheckList::default();
    let m = cone::model()?;
    let alg = &m.algebra;
    let mut rng = rng_for(seed, "norm-lemmas");
    let mut bad = None;
    for deg in 1..=max_m {
        let p = random_homogeneous(&mut rng, &[0, 1, 2], deg, 6);
        let n = p.coeff_abs_sum();
        for i in 0..3 {
            let d = p.partial(i).coeff_abs_sum();
            if d > &n * rat_int(deg as i64) && bad.is_none() {
                bad = Some(format!("m = {deg}, d{}: {} > {deg} * {}", i + 1, d, n));
            }
        }
    }
    out.push(Check::new(
        "cone/norm/derivative-lemma",
        format!("||d_i a_m|| <= m ||a_m|| for m <= {max_m}"),
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    let cfg = MoyalConfig {
        max_order: 2 * max_m as usize + 3,
        ..MoyalConfig::default()
    };
    let q = MoyalQuantizer::with_config(m.darboux()?.clone(), cfg);
    let (u, v) = (m.parse("sqrt(s1)")?, m.parse("sqrt(s2)")?);
    let half = |rng: &mut ChaCha8Rng, deg: u32| -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for _ in 0..3 {
            let a = rng.gen_range(0..=2 * deg);
            let t = &u.pow_u32(a) * &v.pow_u32(2 * deg - a);
            out.add_scaled(&t, &rat_int(rng.gen_range(1..=4)));
        }
        out
    };
    let mut bad = None;
    let mut tried = 0;
    while tried < 12 {
        let (dm, dn) = (rng.gen_range(1..=max_m), rng.gen_range(1..=max_m));
        let f = alg.normal_form(&half(&mut rng, dm))?;
        let g = alg.normal_form(&half(&mut rng, dn))?;
        let k = 2 * dm.min(dn) as usize + rng.gen_range(1..=2);
        let t = q.term(k, &f, &g)?;
        if !t.is_zero() && bad.is_none() {
            bad = Some(format!("m = {dm}, n = {dn}, k = {k}: {}", alg.format(&t)));
        }
        tried += 1;
    }
    out.push(Check::new(
        "cone/norm/vanishing",
        format!("Q_k(a_m, b_n) = 0 when k/2 > min(m, n), m, n <= {max_m}"),
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    let mut bad = None;
    for trial in 0..100 {
        let p = random_element(&mut rng, &model_atoms(&m), 3, 4);
        let r = random_element(&mut rng, &model_atoms(&m), 3, 4);
        let (np, nr) = (p.coeff_abs_sum(), r.coeff_abs_sum());
        let sum_ok = (&p + &r).coeff_abs_sum() <= &np + &nr;
        let prod_ok = (&p * &r).coeff_abs_sum() <= &np * &nr;
        if !(sum_ok && prod_ok) && bad.is_none() {
            bad = Some(format!("trial {trial}"));
        }
    }
    out.push(Check::new(
        "cone/norm/sub-multiplicative",
        "coefficient norm is subadditive and submultiplicative on 100 random pairs",
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    let mut bad = None;
    for deg in [1u32, 3, 6] {
        let p = random_homogeneous(&mut rng, &[0, 1, 2], deg, 5);
        let est = coeff_norm(&p, alg, seed, convergence::DEFAULT_SAMPLES);
        if est.sample_max > est.coeff_sum * (1.0 + 1e-12) && bad.is_none() {
            bad = Some(format!("{} > {}", est.sample_max, est.coeff_sum));
        }
    }
    out.push(Check::new(
        "cone/norm/bracket",
        "Monte-Carlo sphere maximum <= coefficient sum",
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    Ok(out)
}

pub const ACCEPTANCE_GRID: &str = "0.05:0.2:4,0.025:0.1:4";

pub fn convergence_checks(sigma: f64, grid: &str) -> Result<CheckList> {
    let mut out = CheckList::default();
    let rep = convergence::radius_scan(sigma, grid, convergence::DEFAULT_K, convergence::DEFAULT_M)?;
    for p in &rep.points {
        if !p.inside_ball {
            continue;
        }
        out.push(Check::new(
            format!("cone/converge/s{:.3}-t{:.3}", p.s_norm, p.t),
            format!("converged at |s| = {:.3}, t = {:.3} with tail < 1e-6", p.s_norm, p.t),
            p.verdict == convergence::Verdict::Converged && p.tail_bound < convergence::TAIL_TOL,
            format!("{} (ratio {:.4}, tail {:.3e})", p.verdict, p.ratio, p.tail_bound),
        ));
    }
    out.push(Check::new(
        "cone/converge/monotone",
        "no growing verdict inside a converged point's rectangle",
        rep.monotone(),
        "",
    ));
    Ok(out)
}

fn k3_models() -> Vec<(K3Variant, Result<ModelDescriptor>)> {
    K3Variant::all().into_iter().map(|v| (v, k3::model(v))).collect()
}

fn suite_reduction(r: &mut SuiteReport) {
    for n in [2, 3] {
        r.run(&format!("flat{n}/pullback"), || flat::pullback_check(n));
        r.run(&format!("flat{n}/hamiltonian"), || flat::hamiltonian_condition_check(n));
        r.run(&format!("flat{n}/closure"), || flat::invariant_closure_check(&flat::model(n)?));
    }
    r.run("matrix-entries/closure", || flat::invariant_closure_check(&matrices::entries_model()?));
    r.run("matrices/rho", matrices::rho_identity_check);
    r.run("matrices/bracket", matrices::matrices_bracket_check);
}

fn suite_darboux(r: &mut SuiteReport, seed: u64) {
    for name in ["flat2", "flat3", "cone", "matrices"] {
        r.run(&format!("{name}/build"), || {
            let m = build_model(name)?;
            let mut out = jacobi_checks(&m, seed)?;
            out.extend(darboux_checks(&m)?);
            if name == "cone" || name == "matrices" {
                out.extend(reconstruction_check(&m)?);
            }
            Ok(out)
        });
    }
    for (v, m) in k3_models() {
        let id = format!("k3-{}/build", v.label());
        match m {
            Ok(m) => r.run(&id, || darboux_checks(&m)),
            Err(e) => r.push(id, "model builds".into(), Status::Fail, e.to_string()),
        }
    }
}

fn suite_moyal(r: &mut SuiteReport, seed: u64) {
    r.run("cone/moyal", || {
        let m = cone::model()?;
        let mut out = moyal_checks(&m, seed, 4, 20, 3)?;
        out.extend(closed_form_checks(&m, seed, 5)?);
        Ok(out)
    });
    r.run("matrices/moyal", || moyal_checks(&matrices::model()?, seed, 3, 10, 2));
    r.run("cone/degree-bound", || degree_bound_checks(6));
}

fn suite_matrices(r: &mut SuiteReport, seed: u64) {
    r.run("matrices/build", || {
        let m = matrices::model()?;
        let mut out = jacobi_checks(&m, seed)?;
        out.extend(darboux_checks(&m)?);
        out.extend(reconstruction_check(&m)?);
        out.extend(matrices::printed_field_comparison(&m)?);
        out.extend(matrices::q2_conjecture_probe(&m)?);
        Ok(out)
    });
    r.run("matrices/rho", matrices::rho_identity_check);
    r.run("matrices/bracket", matrices::matrices_bracket_check);
}

fn suite_k3(r: &mut SuiteReport, seed: u64) {
    for (v, m) in k3_models() {
        let label = format!("k3-{}", v.label());
        r.run(&format!("{label}/table"), || k3::k3_table_check(v));
        let m = match m {
            Ok(m) => m,
            Err(e) => {
                r.push(format!("{label}/build"), "model builds".into(), Status::Fail, e.to_string());
                continue;
            }
        };
        r.run(&format!("{label}/jacobi"), || jacobi_checks(&m, seed));
        r.run(&format!("{label}/darboux"), || darboux_checks(&m));
        if m.darboux.is_some() {
            r.run(&format!("{label}/moyal"), || moyal_checks(&m, seed, 2, 3, 2));
        } else {
            r.skip(
                format!("{label}/moyal"),
                "star product on the printed pair",
                "no Darboux system for this variant",
            );
        }
    }
}

fn suite_convergence(r: &mut SuiteReport, seed: u64) {
    r.run("cone/operator-constant", || Ok(convergence::operator_constant_check()?.0));
    r.run("cone/growth", || {
        let (lf, lg) = convergence::default_lambdas(1.0);
        let mut out = convergence::growth_check(lf, convergence::DEFAULT_M);
        out.extend(convergence::growth_check(lg, convergence::DEFAULT_M));
        Ok(out)
    });
    r.run("cone/norm", || norm_lemma_checks(seed, 12));
    r.run("cone/converge", || convergence_checks(1.0, ACCEPTANCE_GRID));
}

/// Runs a named suite. `all` runs every suite once, dropping repeated ids.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name, seed);
    match name {
        "reduction" => suite_reduction(&mut r),
        "darboux" => suite_darboux(&mut r, seed),
        "moyal" => suite_moyal(&mut r, seed),
        "matrices" => suite_matrices(&mut r, seed),
        "k3" => suite_k3(&mut r, seed),
        "convergence" => suite_convergence(&mut r, seed),
        "all" => {
            let mut seen = BTreeSet::new();
            let mut notes = BTreeSet::new();
            for s in &SUITES[..SUITES.len() - 1] {
                let sub = run_suite(s, seed)?;
                for rec in sub.records {
                    if seen.insert(rec.id.clone()) {
                        r.push(rec.id, rec.statement, rec.status, rec.witness);
                    }
                }
                for n in sub.notes {
                    if notes.insert(n.clone()) {
                        r.notes.push(n);
                    }
                }
            }
            return Ok(r);
        }
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    let mut seen = BTreeSet::new();
    r.notes.retain(|n| seen.insert(n.clone()));
    Ok(r)
}

/// Names accepted by [`run_suite`] plus the model catalogue, for help text.
pub fn catalogue() -> (Vec<&'static str>, Vec<&'static str>) {
    (SUITES.to_vec(), models::model_names())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("bogus", 7), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn random_elements_are_seeded() {
        let m = cone::model().unwrap();
        let atoms = model_atoms(&m);
        let a = random_element(&mut rng_for(3, "x"), &atoms, 3, 3);
        let b = random_element(&mut rng_for(3, "x"), &atoms, 3, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_degree() {
        let p = random_homogeneous(&mut rng_for(1, "h"), &[0, 1, 2], 5, 4);
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Exp::from(5));
    }
}
