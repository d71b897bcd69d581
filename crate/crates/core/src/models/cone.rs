//! Orbit space of `O(n)` acting on `T*R^n`, restricted to the zero level of
//! the momentum map: `Q[s1, s2, s3] / (s3^2 - s1 s2)`, extended by `sqrt(s1)`
//! and `sqrt(s2)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{
    rat_int, Exp, ExpClass, ExpCondition, GeneratorDecl, Guard, LaurentPoly, Monomial, PresentedAlgebra,
    RewriteRule,
};
use crate::derivation::PoissonStructure;
use crate::error::Result;
use crate::models::ModelDescriptor;
use crate::parse::parse_expr;

/// Normal forms are `s1^x s2^y s3^z` with `z` in `{0, 1}`; `z = 1` only when
/// `x, y` are non-negative integers, and `x, y` are never both fractional
/// and at least 1/2. Writing `u = sqrt(s1)`, `v = sqrt(s2)` these are exactly
/// the monomials `u^a v^b`, so the system is canonical.
pub fn algebra() -> PresentedAlgebra {
    let gens = vec![
        GeneratorDecl::new("s1", 2, true),
        GeneratorDecl::new("s2", 2, true),
        GeneratorDecl::plain("s3"),
    ];
    let h = Exp::new(1, 2);
    let cond = |g, class| ExpCondition { generator: g, class };
    let rules = vec![
        RewriteRule::new(
            Monomial::power(2, Exp::from(2)),
            LaurentPoly::monomial(Monomial::from_pairs([(0, Exp::from(1)), (1, Exp::from(1))])),
        ),
        RewriteRule::guarded(
            Monomial::var(2),
            LaurentPoly::monomial(Monomial::from_pairs([(0, h), (1, h)])),
            Guard::Any(vec![
                cond(0, ExpClass::Negative),
                cond(0, ExpClass::Fractional),
                cond(1, ExpClass::Negative),
                cond(1, ExpClass::Fractional),
            ]),
        ),
        RewriteRule::new(
            Monomial::power(2, Exp::from(-1)),
            LaurentPoly::monomial(Monomial::from_pairs([(0, -h), (1, -h)])),
        ),
        RewriteRule::guarded(
            Monomial::from_pairs([(0, h), (1, h)]),
            LaurentPoly::var(2),
            Guard::All(vec![cond(0, ExpClass::Fractional), cond(1, ExpClass::Fractional)]),
        ),
    ];
    PresentedAlgebra::new("cone", gens).with_rules(
        rules,
        "in u = sqrt(s1), v = sqrt(s2) coordinates every rule maps u^a v^b to itself; \
         each step lowers the s3-exponent's absolute value or the number of fractional \
         exponents, and no rule raises either",
    )
}

/// `q(s1, s2) = 4 s3`, `q(s1, s3) = 2 s1`, `q(s2, s3) = -2 s2`.
pub fn structure(alg: Arc<PresentedAlgebra>) -> Result<PoissonStructure> {
    let s1 = alg.var("s1");
    let s2 = alg.var("s2");
    let s3 = alg.var("s3");
    PoissonStructure::from_entries(
        alg,
        &[
            ("s1", "s2", s3.scale(&rat_int(4))),
            ("s1", "s3", s1.scale(&rat_int(2))),
            ("s2", "s3", s2.scale(&rat_int(-2))),
        ],
    )
}

pub fn relation(alg: &PresentedAlgebra) -> LaurentPoly {
    &alg.var("s3").pow_u32(2) - &(&alg.var("s1") * &alg.var("s2"))
}

pub fn model() -> Result<ModelDescriptor> {
    let alg = Arc::new(algebra());
    let q = structure(alg.clone())?;
    let pair = (parse_expr("sqrt(s1)", &alg)?, parse_expr("sqrt(s2)", &alg)?);
    let rel = relation(&alg);
    ModelDescriptor::assemble(
        "cone",
        q,
        vec![pair],
        Some(rel),
        vec!["invariants s1 = |x|^2, s2 = |xi|^2, s3 = <x, xi>; Darboux pair (sqrt(s1), sqrt(s2))".into()],
    )
}

/// Homomorphism into `Q[u^±, v^±]` used to certify each rewrite rule:
/// `s1 -> u^2`, `s2 -> v^2`, `s3 -> u v`. Returns the target algebra and the
/// binding (generators 0, 1 of the target are `u`, `v`).
pub fn soundness_map() -> (PresentedAlgebra, HashMap<u16, LaurentPoly>) {
    let target = PresentedAlgebra::new(
        "uv",
        vec![GeneratorDecl::new("u", 1, true), GeneratorDecl::new("v", 1, true)],
    );
    let u = LaurentPoly::var(0);
    let v = LaurentPoly::var(1);
    let mut bind = HashMap::new();
    bind.insert(0, u.pow_u32(2));
    bind.insert(1, v.pow_u32(2));
    bind.insert(2, &u * &v);
    (target, bind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Side;

    #[test]
    fn relation_normalizes_to_zero() {
        let a = algebra();
        assert!(a.normal_form(&relation(&a)).unwrap().is_zero());
        let s3sq = a.var("s3").pow_u32(2);
        assert_eq!(a.format(&a.normal_form(&s3sq).unwrap()), "s1*s2");
    }

    #[test]
    fn rules_are_sound() {
        let a = algebra();
        let (_, bind) = soundness_map();
        for r in a.rules() {
            let diff = &LaurentPoly::monomial(r.lhs.clone()) - &r.rhs;
            assert!(diff.substitute(&bind).unwrap().is_zero(), "{}", a.describe_rules());
        }
    }

    #[test]
    fn explicit_field_a() {
        let m = model().unwrap();
        let q = &m.structure;
        let a = q.hamiltonian_field(&m.parse("sqrt(s2)").unwrap(), Side::Left).unwrap();
        assert_eq!(m.format(&a.image(0)), "2*s1^{1/2}");
        assert!(a.image(1).is_zero());
        assert_eq!(m.format(&a.image(2)), "s2^{1/2}");
        let s3 = m.parse("s3").unwrap();
        assert_eq!(m.format(&a.apply(&s3).unwrap()), "s2^{1/2}");
    }

    #[test]
    fn bracket_table() {
        let m = model().unwrap();
        let s = |t: &str| m.parse(t).unwrap();
        let v = m.structure.bracket(&s("s1"), &s("s2")).unwrap();
        assert_eq!(m.format(&v), "4*s3");
    }
}
