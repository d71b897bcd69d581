//! Quartic surfaces in `CP^3` on the chart `x0 != 0`, with the bracket
//!
//! ```text
//! q(a, b) = det [[d1 a, d2 a, d3 a], [d1 b, d2 b, d3 b], [d1 f, d2 f, d3 f]]
//! ```
//!
//! so `q(x1, x2) = d3 f`, `q(x2, x3) = d1 f`, `q(x3, x1) = d2 f`. The chart
//! coordinate `x0` is a constant for the bracket.

use std::sync::Arc;

use crate::algebra::{rat, rat_int, Exp, Gen, GeneratorDecl, LaurentPoly, Monomial, PresentedAlgebra, RewriteRule, Rational};
use crate::derivation::PoissonStructure;
use crate::error::Result;
use crate::models::ModelDescriptor;
use crate::parse::parse_expr;
use crate::report::{Check, CheckList};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3Variant {
    /// `f = x0 x3^3 - x1^2 x2^2`
    II,
    /// `f = x0^2 x3^2 - x1^2 x2^2`
    III,
    /// `f = x3^4 - x1^2 x2^2`
    IV,
}

impl K3Variant {
    pub fn all() -> [K3Variant; 3] {
        [K3Variant::II, K3Variant::III, K3Variant::IV]
    }

    pub fn label(self) -> &'static str {
        match self {
            K3Variant::II => "II",
            K3Variant::III => "III",
            K3Variant::IV => "IV",
        }
    }

    pub fn f_text(self) -> &'static str {
        match self {
            K3Variant::II => "x0*x3^3 - x1^2*x2^2",
            K3Variant::III => "x0^2*x3^2 - x1^2*x2^2",
            K3Variant::IV => "x3^4 - x1^2*x2^2",
        }
    }

    /// Printed Darboux pair.
    pub fn pair_text(self) -> (&'static str, &'static str) {
        match self {
            K3Variant::II => ("x2*x3^-1*x0^(-1/2)", "x1*x3^-1*x0^(-1/2)"),
            K3Variant::III => ("1/2*x1*x0^-1*x3^(-1/2)", "1/2*x2*x0^-1*x3^(-1/2)"),
            K3Variant::IV => ("x1*x3^(-3/2)", "-x2*x3^(-3/2)"),
        }
    }

    /// Printed bracket tables `(q(x1,x2), q(x2,x3), q(x3,x1))`.
    pub fn printed_table(self) -> Option<[&'static str; 3]> {
        match self {
            K3Variant::II => Some(["3*x0*x3^2", "-2*x1*x2^2", "-2*x1^2*x2"]),
            K3Variant::III => Some(["2*x0^2*x3", "2*x1*x2^2", "2*x1^2*x2"]),
            K3Variant::IV => None,
        }
    }

    /// Constant `c` with `q = c * det` making the printed pair Darboux, when
    /// one exists.
    pub fn normalization(self) -> Option<Rational> {
        match self {
            K3Variant::II => Some(rat_int(1)),
            K3Variant::III => None,
            K3Variant::IV => Some(rat(1, 2)),
        }
    }
}

pub fn algebra(v: K3Variant) -> PresentedAlgebra {
    let (x0, x3) = match v {
        K3Variant::II => (GeneratorDecl::new("x0", 2, true), GeneratorDecl::new("x3", 1, true)),
        K3Variant::III => (GeneratorDecl::new("x0", 1, true), GeneratorDecl::new("x3", 2, true)),
        K3Variant::IV => (GeneratorDecl::new("x0", 1, true), GeneratorDecl::new("x3", 2, true)),
    };
    let gens = vec![x0, GeneratorDecl::plain("x1"), GeneratorDecl::plain("x2"), x3];
    let lhs = Monomial::from_pairs([(1, Exp::from(2)), (2, Exp::from(2))]);
    let rhs = match v {
        K3Variant::II => Monomial::from_pairs([(0, Exp::from(1)), (3, Exp::from(3))]),
        K3Variant::III => Monomial::from_pairs([(0, Exp::from(2)), (3, Exp::from(2))]),
        K3Variant::IV => Monomial::power(3, Exp::from(4)),
    };
    PresentedAlgebra::new(&format!("k3-{}", v.label()), gens).with_rules(
        vec![RewriteRule::new(lhs, LaurentPoly::monomial(rhs))],
        "each step lowers the x1-degree by 2; x1 never occurs with a negative power",
    )
}

/// The determinant bracket on coordinate pairs (no normalization constant).
pub fn k3_bracket_from_f(v: K3Variant) -> Result<PoissonStructure> {
    let alg = Arc::new(algebra(v));
    let f = parse_expr_raw(v.f_text(), &alg)?;
    let d = |i: Gen| f.partial(i);
    let mut q = PoissonStructure::new(alg.clone());
    q.set(1, 2, alg.normal_form(&d(3))?)?;
    q.set(2, 3, alg.normal_form(&d(1))?)?;
    q.set(3, 1, alg.normal_form(&d(2))?)?;
    Ok(q)
}

/// Parses without reducing, so `f` keeps its literal form.
fn parse_expr_raw(text: &str, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
    let free = PresentedAlgebra::new("raw", alg.generators().to_vec());
    parse_expr(text, &free)
}

pub fn relation(v: K3Variant) -> Result<LaurentPoly> {
    parse_expr_raw(v.f_text(), &algebra(v))
}

pub fn model(v: K3Variant) -> Result<ModelDescriptor> {
    let det = k3_bracket_from_f(v)?;
    let alg = det.algebra().clone();
    let c = v.normalization().unwrap_or_else(|| rat_int(1));
    let mut q = PoissonStructure::new(alg.clone());
    for (&(i, j), e) in det.entries() {
        q.set(i, j, e.scale(&c))?;
    }
    let (ta, tb) = v.pair_text();
    let pair = (parse_expr(ta, &alg)?, parse_expr(tb, &alg)?);
    let mut notes = vec![format!("f = {}; chart x0 != 0 with x0 constant", v.f_text())];
    match v.normalization() {
        Some(c) if c != rat_int(1) => {
            notes.push(format!("bracket = {} * determinant so that the printed pair is Darboux", crate::algebra::format_rational(&c)))
        }
        Some(_) => {}
        None => notes.push("no constant multiple of the determinant makes the printed pair Darboux".into()),
    }
    ModelDescriptor::assemble(&format!("k3-{}", v.label()), q, vec![pair], Some(relation(v)?), notes)
}

/// Antisymmetry, `q(x_i, f) = 0`, and the printed table against the determinant.
pub fn k3_table_check(v: K3Variant) -> Result<CheckList> {
    let q = k3_bracket_from_f(v)?;
    let alg = q.algebra().clone();
    let f = relation(v)?;
    let mut out = CheckList::default();
    for i in 0..4 as Gen {
        let xi = LaurentPoly::var(i);
        let val = q.bracket(&xi, &f)?;
        out.push(Check::new(
            format!("k3-{}/annihilates-f/{}", v.label(), alg.gen_name(i)),
            format!("q({}, f) = 0", alg.gen_name(i)),
            val.is_zero(),
            alg.format(&val),
        ));
        for j in 0..4 as Gen {
            let s = &q.entry(i, j) + &q.entry(j, i);
            if !s.is_zero() {
                out.push(Check::new(
                    format!("k3-{}/antisymmetry", v.label()),
                    "q(x_i, x_j) = -q(x_j, x_i)",
                    false,
                    alg.format(&s),
                ));
            }
        }
    }
    if let Some(printed) = v.printed_table() {
        for ((i, j), text) in [(1, 2), (2, 3), (3, 1)].into_iter().zip(printed) {
            let p = parse_expr(text, &alg)?;
            let det = q.entry(i, j);
            if !alg.poly_equal(&p, &det)? {
                out.note(format!(
                    "k3-{}: printed q({}, {}) = {}, determinant gives {}",
                    v.label(),
                    alg.gen_name(i),
                    alg.gen_name(j),
                    alg.format(&p),
                    alg.format(&det)
                ));
            }
        }
    }
    let (ta, tb) = v.pair_text();
    let val = q.bracket(&parse_expr(ta, &alg)?, &parse_expr(tb, &alg)?)?;
    out.note(format!("k3-{}: determinant bracket of the printed pair = {}", v.label(), alg.format(&val)));
    Ok(out)
}
