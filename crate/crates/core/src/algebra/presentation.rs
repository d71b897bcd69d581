use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::monomial::{Exp, Gen, Monomial};
use super::poly::{LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Rule applications allowed per `normal_form` call.
pub const STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    /// Exponents of this generator lie in `(1/radical_order) Z`.
    pub radical_order: u32,
    /// Whether normalized, user-facing results may carry negative powers.
    pub invertible: bool,
}

impl GeneratorDecl {
    pub fn new(name: &str, radical_order: u32, invertible: bool) -> Self {
        assert!(radical_order >= 1);
        GeneratorDecl {
            name: name.to_string(),
            radical_order,
            invertible,
        }
    }

    pub fn plain(name: &str) -> Self {
        Self::new(name, 1, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpClass {
    Negative,
    Fractional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpCondition {
    pub generator: Gen,
    pub class: ExpClass,
}

impl ExpCondition {
    fn holds(&self, m: &Monomial) -> bool {
        let e = m.exponent(self.generator);
        match self.class {
            ExpClass::Negative => e < Exp::zero(),
            ExpClass::Fractional => !e.is_integer(),
        }
    }
}

/// Extra side condition on a rule, checked after the lhs matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guard {
    Always,
    Any(Vec<ExpCondition>),
    All(Vec<ExpCondition>),
}

/// `lhs -> rhs`, read as the identity `lhs = rhs` in the presented algebra.
///
/// A monomial `m` matches when, for every `(g, e)` in `lhs`, `m` has at least
/// `e` powers of `g` when `e > 0`, or some negative power of `g` when `e < 0`,
/// and the guard holds. The monomial is then replaced by `(m / lhs) * rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub rhs: LaurentPoly,
    pub guard: Guard,
}

impl RewriteRule {
    pub fn new(lhs: Monomial, rhs: LaurentPoly) -> Self {
        RewriteRule {
            lhs,
            rhs,
            guard: Guard::Always,
        }
    }

    pub fn guarded(lhs: Monomial, rhs: LaurentPoly, guard: Guard) -> Self {
        RewriteRule { lhs, rhs, guard }
    }

    pub fn matches(&self, m: &Monomial) -> bool {
        let shape = self.lhs.iter().all(|(g, e)| {
            let have = m.exponent(g);
            if e > Exp::zero() {
                have >= e
            } else {
                have < Exp::zero()
            }
        });
        shape
            && match &self.guard {
                Guard::Always => true,
                Guard::Any(cs) => cs.iter().any(|c| c.holds(m)),
                Guard::All(cs) => cs.iter().all(|c| c.holds(m)),
            }
    }
}

/// Commutative algebra given by generators and a terminating rewrite system.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    name: String,
    generators: Vec<GeneratorDecl>,
    rules: Vec<RewriteRule>,
    index: HashMap<String, Gen>,
    /// Documentation of the well-founded measure that makes `rules` terminate.
    pub termination_note: String,
}

impl PresentedAlgebra {
    pub fn new(name: &str, generators: Vec<GeneratorDecl>) -> Self {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            let prev = index.insert(g.name.clone(), i as Gen);
            assert!(prev.is_none(), "duplicate generator name {}", g.name);
        }
        PresentedAlgebra {
            name: name.to_string(),
            generators,
            rules: Vec::new(),
            index,
            termination_note: "no rules".into(),
        }
    }

    /// Free algebra on plain (radical order 1, non-invertible) generators.
    pub fn free(name: &str, names: &[&str]) -> Self {
        Self::new(name, names.iter().map(|n| GeneratorDecl::plain(n)).collect())
    }

    pub fn with_rules(mut self, rules: Vec<RewriteRule>, termination_note: &str) -> Self {
        self.rules = rules;
        self.termination_note = termination_note.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn gen(&self, name: &str) -> Result<Gen> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.generators[g as usize].name
    }

    pub fn var(&self, name: &str) -> LaurentPoly {
        LaurentPoly::var(self.gen(name).expect("generator declared"))
    }

    /// Generators not eliminated by an unguarded single-generator rule.
    pub fn surviving_generators(&self) -> Vec<Gen> {
        (0..self.generators.len() as Gen)
            .filter(|g| {
                !self.rules.iter().any(|r| {
                    r.guard == Guard::Always && r.lhs == Monomial::var(*g)
                })
            })
            .collect()
    }

    /// Rewrites to the unique fixpoint of the rule set.
    pub fn normal_form(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if self.rules.is_empty() {
            return Ok(p.clone());
        }
        let mut pending = p.clone();
        let mut done = LaurentPoly::zero();
        let mut steps = 0usize;
        while let Some((m, c)) = pending.pop_last() {
            match self.rules.iter().find(|r| r.matches(&m)) {
                None => done.add_term(m, c),
                Some(rule) => {
                    steps += 1;
                    if steps > STEP_BUDGET {
                        return Err(Error::StepBudget {
                            algebra: self.name.clone(),
                            budget: STEP_BUDGET,
                        });
                    }
                    let rest = m.div(&rule.lhs);
                    for (n, k) in rule.rhs.terms() {
                        pending.add_term(n.mul(&rest), k * &c);
                    }
                }
            }
        }
        Ok(done)
    }

    pub fn poly_equal(&self, p: &LaurentPoly, q: &LaurentPoly) -> Result<bool> {
        Ok(self.normal_form(&(p - q))?.is_zero())
    }

    pub fn mul(&self, p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
        self.normal_form(&(p * q))
    }

    /// Checks every exponent against its generator's radical lattice.
    pub fn check_lattice(&self, p: &LaurentPoly) -> Result<()> {
        for (m, _) in p.terms() {
            for (g, e) in m.iter() {
                let decl = self.generators.get(g as usize).ok_or_else(|| {
                    Error::UnknownGenerator(format!("#{g}"))
                })?;
                if decl.radical_order as i64 % e.denom() != 0 {
                    return Err(Error::Lattice {
                        generator: decl.name.clone(),
                        exponent: e.to_string(),
                        radical_order: decl.radical_order,
                    });
                }
            }
        }
        Ok(())
    }

    /// Diagnostic for normalized output: negative powers only on invertible generators.
    pub fn check_user_facing(&self, p: &LaurentPoly) -> Result<()> {
        self.check_lattice(p)?;
        for (m, _) in p.terms() {
            for (g, e) in m.iter() {
                if e < Exp::zero() && !self.generators[g as usize].invertible {
                    return Err(Error::NotInvertible(self.gen_name(g).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Canonical text form: terms in descending graded-lex order,
    /// coefficients as `n/d`, exponents as `g^{p/q}`.
    pub fn format(&self, p: &LaurentPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in p.terms().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (g, e) in m.iter() {
                let name = self.gen_name(g);
                if e.is_one() {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{{{e}}}"));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Human-readable dump of the rule set.
    pub fn describe_rules(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            let lhs = self.format(&LaurentPoly::monomial(r.lhs.clone()));
            let _ = write!(s, "{lhs} -> {}", self.format(&r.rhs));
            if r.guard != Guard::Always {
                let _ = write!(s, "  [{:?}]", r.guard);
            }
            s.push('\n');
        }
        s
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat_int;

    fn toy() -> PresentedAlgebra {
        // x^2 -> y over Q[x, y]
        PresentedAlgebra::free("toy", &["x", "y"]).with_rules(
            vec![RewriteRule::new(Monomial::power(0, Exp::from(2)), LaurentPoly::var(1))],
            "x-degree drops by 2",
        )
    }

    #[test]
    fn nf_of_one_is_one() {
        let a = toy();
        assert_eq!(a.normal_form(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn nf_reduces_powers() {
        let a = toy();
        let x5 = a.var("x").pow_u32(5);
        let expected = &a.var("y").pow_u32(2) * &a.var("x");
        assert_eq!(a.normal_form(&x5).unwrap(), expected);
    }

    #[test]
    fn runaway_rules_hit_the_budget() {
        // x -> 2x never terminates on x
        let bad = PresentedAlgebra::free("bad", &["x"]).with_rules(
            vec![RewriteRule::new(
                Monomial::var(0),
                LaurentPoly::term(rat_int(1), Monomial::power(0, Exp::from(2))),
            )],
            "none",
        );
        let err = bad.normal_form(&LaurentPoly::var(0)).unwrap_err();
        assert!(matches!(err, Error::StepBudget { .. }));
    }

    #[test]
    fn negative_lhs_exponent_matches_any_negative_power() {
        let r = RewriteRule::new(Monomial::power(0, Exp::from(-4)), LaurentPoly::one());
        assert!(r.matches(&Monomial::power(0, Exp::from(-1))));
        assert!(!r.matches(&Monomial::power(0, Exp::from(3))));
    }

    #[test]
    fn formatting_is_grlex_descending() {
        let a = toy();
        let p = &a.var("y") + &(&a.var("x").pow_u32(2) * &a.var("y")).scale(&crate::algebra::poly::rat(-1, 2));
        assert_eq!(a.format(&p), "-1/2*x^{2}*y + y");
    }

    #[test]
    fn lattice_violation_is_reported() {
        let a = toy();
        let p = LaurentPoly::monomial(Monomial::power(0, Exp::new(1, 2)));
        assert!(matches!(a.check_lattice(&p), Err(Error::Lattice { .. })));
    }
}
