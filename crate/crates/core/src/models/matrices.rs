//! Pairs of 2x2 matrices `(A, B)` under simultaneous conjugation, reduced at
//! the zero level of `[A, B]`.
//!
//! Invariants `alpha1 = tr A`, `alpha2 = det A`, `beta1 = tr B`,
//! `beta2 = det B`, `gamma = tr AB` satisfy `rho = 0`. The presentation
//! adjoins `alphat = alpha2 - alpha1^2/4`, `betat = beta2 - beta1^2/4`,
//! `w = (alphat betat)^(1/4)` with `w^{-1}`, and `r = sqrt(2)`, and uses the
//! branch `gamma - alpha1 beta1 / 2 = 2 w^2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{
    rat, rat_int, Exp, Gen, GeneratorDecl, LaurentPoly, Monomial, PresentedAlgebra, RewriteRule,
};
use crate::derivation::{unit, Derivation, PoissonStructure, Side};
use crate::diffop::moyal_bidiff;
use crate::error::Result;
use crate::models::{MomentumData, ModelDescriptor};
use crate::parse::parse_expr;
use crate::report::{Check, CheckList};

pub const BASE: [&str; 5] = ["alpha1", "alpha2", "beta1", "beta2", "gamma"];

pub fn algebra() -> PresentedAlgebra {
    let gens = vec![
        GeneratorDecl::plain("alpha1"),
        GeneratorDecl::plain("alpha2"),
        GeneratorDecl::plain("beta1"),
        GeneratorDecl::plain("beta2"),
        GeneratorDecl::plain("gamma"),
        GeneratorDecl::plain("alphat"),
        GeneratorDecl::plain("betat"),
        GeneratorDecl::new("w", 1, true),
        GeneratorDecl::new("r", 1, true),
    ];
    let (a1, a2, b1, b2, g, at, bt, w, r): (Gen, Gen, Gen, Gen, Gen, Gen, Gen, Gen, Gen) =
        (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let v = LaurentPoly::var;
    let e = Exp::from;
    let rules = vec![
        RewriteRule::new(Monomial::var(a2), &v(at) + &v(a1).pow_u32(2).scale(&rat(1, 4))),
        RewriteRule::new(Monomial::var(b2), &v(bt) + &v(b1).pow_u32(2).scale(&rat(1, 4))),
        RewriteRule::new(
            Monomial::var(g),
            &(&v(a1) * &v(b1)).scale(&rat(1, 2)) + &v(w).pow_u32(2).scale(&rat_int(2)),
        ),
        RewriteRule::new(
            Monomial::from_pairs([(w, e(-4)), (at, e(1)), (bt, e(1))]),
            LaurentPoly::one(),
        ),
        RewriteRule::new(Monomial::power(w, e(4)), &v(at) * &v(bt)),
        RewriteRule::new(Monomial::power(r, e(2)), LaurentPoly::constant(rat_int(2))),
        RewriteRule::new(Monomial::power(r, e(-2)), LaurentPoly::constant(rat(1, 2))),
    ];
    PresentedAlgebra::new("matrices", gens).with_rules(
        rules,
        "alpha2, beta2, gamma are eliminated and never reintroduced; afterwards each step \
         lowers |w-exponent| (by 4 toward the window 0..3, consuming or producing one \
         alphat*betat) or |r-exponent|, and no step raises either",
    )
}

/// Brackets of the five invariants:
/// `q(alpha1, beta1) = 2`, `q(alpha1, beta2) = beta1`, `q(alpha2, beta1) = alpha1`,
/// `q(alpha2, beta2) = gamma`, and
/// `(alpha1 d1 - beta1 d_beta1 + 2 alpha2 d_alpha2 - 2 beta2 d_beta2) ^ d_gamma`.
pub fn base_table() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("alpha1", "beta1", "2"),
        ("alpha1", "beta2", "beta1"),
        ("alpha2", "beta1", "alpha1"),
        ("alpha2", "beta2", "gamma"),
        ("alpha1", "gamma", "alpha1"),
        ("beta1", "gamma", "-beta1"),
        ("alpha2", "gamma", "2*alpha2"),
        ("beta2", "gamma", "-2*beta2"),
    ]
}

/// Gradient of every generator with respect to the five invariants.
fn gradients(alg: &PresentedAlgebra) -> Result<Vec<Vec<LaurentPoly>>> {
    let n = alg.num_generators();
    let mut grads = vec![vec![LaurentPoly::zero(); 5]; n];
    for (i, row) in grads.iter_mut().enumerate().take(5) {
        row[i] = unit();
    }
    let half = rat(1, 2);
    let (at, bt, w) = (alg.gen("alphat")?, alg.gen("betat")?, alg.gen("w")?);
    grads[at as usize][1] = unit();
    grads[at as usize][0] = alg.var("alpha1").scale(&-half.clone());
    grads[bt as usize][3] = unit();
    grads[bt as usize][2] = alg.var("beta1").scale(&-half);
    // dw = w^{-3}/4 (betat d alphat + alphat d betat)
    let c = LaurentPoly::term(rat(1, 4), Monomial::power(w, Exp::from(-3)));
    for i in 0..5 {
        let v = &(&alg.var("betat") * &grads[at as usize][i]) + &(&alg.var("alphat") * &grads[bt as usize][i]);
        grads[w as usize][i] = alg.normal_form(&(&c * &v))?;
    }
    Ok(grads)
}

pub fn structure(alg: Arc<PresentedAlgebra>) -> Result<PoissonStructure> {
    let mut base = vec![vec![LaurentPoly::zero(); 5]; 5];
    for (u, v, val) in base_table() {
        let (i, j) = (alg.gen(u)? as usize, alg.gen(v)? as usize);
        let p = parse_expr(val, &alg)?;
        base[i][j] = p.clone();
        base[j][i] = -p;
    }
    let grads = gradients(&alg)?;
    let n = alg.num_generators();
    let mut q = PoissonStructure::new(alg.clone());
    for g in 0..n {
        for h in (g + 1)..n {
            let mut v = LaurentPoly::zero();
            for i in 0..5 {
                if grads[g][i].is_zero() {
                    continue;
                }
                for j in 0..5 {
                    if grads[h][j].is_zero() || base[i][j].is_zero() {
                        continue;
                    }
                    v.add_assign_ref(&(&(&grads[g][i] * &grads[h][j]) * &base[i][j]));
                }
            }
            q.set(g as Gen, h as Gen, alg.normal_form(&v)?)?;
        }
    }
    Ok(q)
}

/// `rho = gamma^2 - alpha1 beta1 gamma + alpha2 (beta1^2 - 2 beta2) + beta2 (alpha1^2 - 2 alpha2)`.
pub const RHO: &str = "gamma^2 - alpha1*beta1*gamma + alpha2*(beta1^2 - 2*beta2) + beta2*(alpha1^2 - 2*alpha2)";

pub fn pairs(alg: &PresentedAlgebra) -> Result<Vec<(LaurentPoly, LaurentPoly)>> {
    Ok(vec![
        (parse_expr("1/2*r*alpha1", alg)?, parse_expr("1/2*r*beta1", alg)?),
        (parse_expr("alphat*w^-1", alg)?, parse_expr("betat*w^-1", alg)?),
    ])
}

pub fn model() -> Result<ModelDescriptor> {
    let alg = Arc::new(algebra());
    let q = structure(alg.clone())?;
    let rho = raw_rho(&alg)?;
    let pairs = pairs(&alg)?;
    ModelDescriptor::assemble(
        "matrices",
        q,
        pairs,
        Some(rho),
        vec![
            "branch gamma - alpha1*beta1/2 = +2 w^2".into(),
            "alphat = alpha2 - alpha1^2/4, betat = beta2 - beta1^2/4, w^4 = alphat*betat, r^2 = 2".into(),
            "Darboux pairs (r*alpha1/2, r*beta1/2), (alphat/w, betat/w)".into(),
        ],
    )
}

/// `rho` expanded over the five invariants without applying any rule.
fn raw_rho(alg: &PresentedAlgebra) -> Result<LaurentPoly> {
    let free = PresentedAlgebra::free("b5", &BASE);
    let p = parse_expr(RHO, &free)?;
    // generator indices 0..4 coincide in both presentations
    debug_assert_eq!(alg.gen("gamma")?, 4);
    Ok(p)
}

/// Homomorphism certifying each rewrite rule: target `Q[p, q, u^±, v^±, r]/(r^2 - 2)`,
/// `alpha1 -> p`, `beta1 -> q`, `alphat -> u^4`, `betat -> v^4`, `w -> u v`,
/// `alpha2 -> u^4 + p^2/4`, `beta2 -> v^4 + q^2/4`, `gamma -> p q/2 + 2 u^2 v^2`.
pub fn soundness_map() -> Result<(PresentedAlgebra, HashMap<Gen, LaurentPoly>)> {
    let target = PresentedAlgebra::new(
        "pquvr",
        vec![
            GeneratorDecl::plain("p"),
            GeneratorDecl::plain("q"),
            GeneratorDecl::new("u", 1, true),
            GeneratorDecl::new("v", 1, true),
            GeneratorDecl::new("r", 1, true),
        ],
    )
    .with_rules(
        vec![
            RewriteRule::new(Monomial::power(4, Exp::from(2)), LaurentPoly::constant(rat_int(2))),
            RewriteRule::new(Monomial::power(4, Exp::from(-2)), LaurentPoly::constant(rat(1, 2))),
        ],
        "r-exponent moves toward 0..1",
    );
    let mut bind = HashMap::new();
    for (g, text) in [
        (0, "p"),
        (1, "u^4 + 1/4*p^2"),
        (2, "q"),
        (3, "v^4 + 1/4*q^2"),
        (4, "1/2*p*q + 2*u^2*v^2"),
        (5, "u^4"),
        (6, "v^4"),
        (7, "u*v"),
        (8, "r"),
    ] {
        bind.insert(g as Gen, parse_expr(text, &target)?);
    }
    Ok((target, bind))
}

/// `rho` vanishes on diagonal pairs and both printed forms agree.
pub fn rho_identity_check() -> Result<CheckList> {
    let mut out = CheckList::default();
    let inv = PresentedAlgebra::free("invariants", &BASE);
    let rho = parse_expr(RHO, &inv)?;
    let diag = PresentedAlgebra::free("diag", &["a1", "a2", "b1", "b2"]);
    let bind_for = |text: [&str; 5]| -> Result<HashMap<Gen, LaurentPoly>> {
        let mut b = HashMap::new();
        for (g, t) in text.iter().enumerate() {
            b.insert(g as Gen, parse_expr(t, &diag)?);
        }
        Ok(b)
    };
    let general = bind_for(["a1 + a2", "a1*a2", "b1 + b2", "b1*b2", "a1*b1 + a2*b2"])?;
    let v = rho.substitute(&general)?;
    out.push(Check::new(
        "matrices/rho/diagonal",
        "rho(alpha1 = a1+a2, alpha2 = a1 a2, beta1 = b1+b2, beta2 = b1 b2, gamma = a1 b1 + a2 b2) = 0",
        v.is_zero(),
        diag.format(&v),
    ));
    let special = bind_for(["a1", "0", "b1", "0", "a1*b1"])?;
    let v = rho.substitute(&special)?;
    out.push(Check::new(
        "matrices/rho/diagonal-a2b2-zero",
        "rho on diagonal pairs with a2 = b2 = 0 is 0",
        v.is_zero(),
        diag.format(&v),
    ));
    let second = parse_expr(
        "(gamma - 1/2*alpha1*beta1)^2 - 4*(alpha2 - 1/4*alpha1^2)*(beta2 - 1/4*beta1^2)",
        &inv,
    )?;
    let d = &rho - &second;
    out.push(Check::new(
        "matrices/rho/second-form",
        "rho = (gamma - alpha1 beta1/2)^2 - 4 pi, pi = (alpha2 - alpha1^2/4)(beta2 - beta1^2/4)",
        d.is_zero(),
        inv.format(&d),
    ));
    let v = second.substitute(&general)?;
    out.push(Check::new(
        "matrices/rho/second-form-diagonal",
        "second form of rho vanishes on diagonal pairs",
        v.is_zero(),
        diag.format(&v),
    ));
    let literal = parse_expr(
        "(gamma - 1/2*alpha1*beta1)^2 - 4*(alpha2 - 1/2*alpha1^2)*(beta2 - 1/2*beta1^2)",
        &inv,
    )?;
    let d = &rho - &literal;
    if !d.is_zero() {
        out.note(format!(
            "with alphat = alpha2 - alpha1^2/2 (coefficient 1/2 as printed) the two forms of rho differ by {}; \
             the coefficient 1/4 makes them agree",
            inv.format(&d)
        ));
    }
    Ok(out)
}

/// The eight matrix entries `a1..a4`, `b1..b4` of `A = [[a1, a3], [a4, a2]]`,
/// `B = [[b1, b3], [b4, b2]]` with the trace pairing `q = sum dA_ij ^ dB_ji`.
pub fn entries_algebra() -> PresentedAlgebra {
    PresentedAlgebra::free("matrix_entries", &["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"])
}

fn entries_structure(alg: Arc<PresentedAlgebra>, literal: bool) -> Result<PoissonStructure> {
    let pairs: &[(&str, &str)] = if literal {
        &[("a1", "b1"), ("a2", "b2"), ("a3", "b3"), ("a4", "b4")]
    } else {
        &[("a1", "b1"), ("a2", "b2"), ("a3", "b4"), ("a4", "b3")]
    };
    let entries: Vec<(&str, &str, LaurentPoly)> = pairs.iter().map(|(u, v)| (*u, *v, unit())).collect();
    PoissonStructure::from_entries(alg, &entries)
}

pub const INVARIANT_ENTRIES: [&str; 5] = [
    "a1 + a2",
    "a1*a2 - a3*a4",
    "b1 + b2",
    "b1*b2 - b3*b4",
    "a1*b1 + a2*b2 + a3*b4 + a4*b3",
];

/// Components of `[A, B]` that cut out the constraint locus.
pub const CONSTRAINTS: [(&str, &str); 2] = [
    ("c1", "b3*(a1 - a2) - a3*(b1 - b2)"),
    ("c2", "b4*(a1 - a2) - a4*(b1 - b2)"),
];

/// Unreduced model on the eight matrix entries with the trace pairing.
pub fn entries_model() -> Result<ModelDescriptor> {
    let alg = Arc::new(entries_algebra());
    let q = entries_structure(alg.clone(), false)?;
    let pairs = ["a1 b1", "a2 b2", "a3 b4", "a4 b3"]
        .iter()
        .map(|s| {
            let (u, v) = s.split_once(' ').expect("pair");
            (alg.var(u), alg.var(v))
        })
        .collect();
    let mut m = ModelDescriptor::assemble(
        "matrix-entries",
        q,
        pairs,
        None,
        vec!["pairs of 2x2 matrices with q = sum dA_ij ^ dB_ji".into()],
    )?;
    let components = CONSTRAINTS
        .iter()
        .map(|(l, t)| Ok((l.to_string(), parse_expr(t, &alg)?)))
        .collect::<Result<Vec<_>>>()?;
    let action_fields = components
        .iter()
        .map(|(_, c)| m.structure.hamiltonian_field(c, Side::Right))
        .collect::<Result<Vec<_>>>()?;
    let invariants = BASE
        .iter()
        .zip(INVARIANT_ENTRIES)
        .map(|(n, t)| Ok((n.to_string(), parse_expr(t, &alg)?)))
        .collect::<Result<Vec<_>>>()?;
    m.momentum = Some(MomentumData {
        components,
        action_fields,
        invariants,
    });
    Ok(m)
}

/// Brackets of the invariants computed from the matrix entries against the
/// reduced table.
pub fn matrices_bracket_check() -> Result<CheckList> {
    let alg = Arc::new(entries_algebra());
    let q = entries_structure(alg.clone(), false)?;
    let literal = entries_structure(alg.clone(), true)?;
    let inv: Vec<LaurentPoly> = INVARIANT_ENTRIES
        .iter()
        .map(|t| parse_expr(t, &alg))
        .collect::<Result<_>>()?;
    let free = PresentedAlgebra::free("invariants", &BASE);
    let mut table = vec![vec![LaurentPoly::zero(); 5]; 5];
    for (u, v, val) in base_table() {
        let (i, j) = (free.gen(u)? as usize, free.gen(v)? as usize);
        let p = parse_expr(val, &free)?;
        table[i][j] = p.clone();
        table[j][i] = -p;
    }
    let bind: HashMap<Gen, LaurentPoly> = inv.iter().enumerate().map(|(i, p)| (i as Gen, p.clone())).collect();
    let mut out = CheckList::default();
    let mut literal_bad = Vec::new();
    for i in 0..5 {
        for j in (i + 1)..5 {
            let lhs = q.bracket(&inv[i], &inv[j])?;
            let rhs = table[i][j].substitute(&bind)?;
            let d = &lhs - &rhs;
            out.push(Check::new(
                format!("matrices/eq-table/{}/{}", BASE[i], BASE[j]),
                format!("q({}, {}) = {}", BASE[i], BASE[j], free.format(&table[i][j])),
                d.is_zero(),
                alg.format(&d),
            ));
            if !(&literal.bracket(&inv[i], &inv[j])? - &rhs).is_zero() {
                literal_bad.push(format!("({}, {})", BASE[i], BASE[j]));
            }
        }
    }
    if !literal_bad.is_empty() {
        out.note(format!(
            "pairing a_k with b_k entrywise (q(a3, b3) = q(a4, b4) = 1) is not conjugation invariant and \
             misses the reduced table on {}; the trace pairing q(a3, b4) = q(a4, b3) = 1 reproduces it",
            literal_bad.join(", ")
        ));
    }
    Ok(out)
}

/// Printed explicit fields, as `(field, coordinate, coefficient)`.
pub const PRINTED_FIELDS: [(&str, &str, &str); 12] = [
    ("A1", "alpha1", "r"),
    ("A1", "alpha2", "1/2*r*alpha1"),
    ("A1", "gamma", "1/2*r*beta1"),
    ("B1", "beta1", "r"),
    ("B1", "beta2", "1/2*r*beta1"),
    ("B1", "gamma", "1/2*r*alpha1"),
    ("A2", "alpha2", "3/2*w"),
    ("A2", "gamma", "w^-1*betat"),
    ("A2", "beta2", "1/2*w^-3*betat^2"),
    ("B2", "beta2", "3/2*w"),
    ("B2", "gamma", "w^-1*alphat"),
    ("B2", "alpha2", "1/2*w^-3*alphat^2"),
];

/// Derived `A_k = q(., b_k)`, `B_k = q(a_k, .)` on the five invariants
/// against the printed explicit forms. Every derived coefficient is listed;
/// mismatches are returned as notes.
pub fn printed_field_comparison(model: &ModelDescriptor) -> Result<CheckList> {
    let sys = model.darboux()?;
    let alg = &model.algebra;
    let mut printed: BTreeMap<(String, String), LaurentPoly> = BTreeMap::new();
    for (f, c, t) in PRINTED_FIELDS {
        printed.insert((f.into(), c.into()), parse_expr(t, alg)?);
    }
    let mut out = CheckList::default();
    let fields: [(&str, &Derivation); 4] = [
        ("A1", sys.a_field(0)),
        ("B1", sys.b_field(0)),
        ("A2", sys.a_field(1)),
        ("B2", sys.b_field(1)),
    ];
    for (fname, d) in fields {
        for c in BASE {
            let derived = d.apply(&LaurentPoly::var(alg.gen(c)?))?;
            let expected = printed.get(&(fname.to_string(), c.to_string())).cloned().unwrap_or_default();
            let same = alg.poly_equal(&derived, &expected)?;
            out.push(Check::new(
                format!("matrices/fields/{fname}/{c}"),
                format!("{fname}({c}) = {}", alg.format(&derived)),
                true,
                "",
            ));
            if !same {
                out.note(format!(
                    "{fname}({c}): derived {} , printed {}",
                    alg.format(&derived),
                    alg.format(&expected)
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Q2Probe {
    pub order: usize,
    /// Largest derivative order on `(f, g)`.
    pub bidegree: (u32, u32),
    /// Smallest `m` with `pi^m * coefficient` free of negative powers of `w`.
    pub denominator_exponent: u32,
    pub coefficient_count: usize,
}

/// `Q_k` as a bidifferential operator in the five invariants.
pub fn q_probe(model: &ModelDescriptor, k: usize) -> Result<Q2Probe> {
    let sys = model.darboux()?;
    let alg = &model.algebra;
    let coords: Vec<Gen> = BASE.iter().map(|n| alg.gen(n)).collect::<Result<_>>()?;
    let op = moyal_bidiff(sys, k, &coords)?;
    let w = alg.gen("w")?;
    let mut min_w = Exp::from(0);
    for c in op.coefficients() {
        for (m, _) in c.terms() {
            min_w = min_w.min(m.exponent(w));
        }
    }
    let need = (-min_w / Exp::from(4)).ceil();
    Ok(Q2Probe {
        order: k,
        bidegree: op.bidegree(),
        denominator_exponent: (*need.numer()).max(0) as u32,
        coefficient_count: op.terms.len(),
    })
}

pub fn q2_conjecture_probe(model: &ModelDescriptor) -> Result<CheckList> {
    let mut out = CheckList::default();
    let q1 = q_probe(model, 1)?;
    out.push(Check::new(
        "matrices/q-probe/k1",
        "Q1 has bidegree (1,1) and no pi in the denominator",
        q1.bidegree.0 <= 1 && q1.bidegree.1 <= 1 && q1.denominator_exponent == 0,
        format!("{q1:?}"),
    ));
    let q2 = q_probe(model, 2)?;
    out.push(Check::new(
        "matrices/q-probe/k2-bidegree",
        "Q2 has bidegree <= (2,2)",
        q2.bidegree.0 <= 2 && q2.bidegree.1 <= 2,
        format!("{q2:?}"),
    ));
    out.push(Check::new(
        "matrices/q-probe/k2-denominator",
        "pi * Q2 has no negative powers of w",
        q2.denominator_exponent <= 1,
        format!("{q2:?}"),
    ));
    out.note(format!(
        "Q2: bidegree {:?}, pi-denominator exponent {}, {} coefficient slots",
        q2.bidegree, q2.denominator_exponent, q2.coefficient_count
    ));
    Ok(out)
}
