//! Exact arithmetic on Laurent polynomials with rational exponents, and
//! normal forms in finitely presented commutative algebras.

mod monomial;
mod poly;
mod presentation;

pub use monomial::{Exp, Gen, Monomial};
pub use poly::{exp_to_f64, exp_to_rational, rat, rat_int, rational_pow, rational_to_f64, LaurentPoly, Rational};
pub use presentation::{
    format_rational, ExpClass, ExpCondition, GeneratorDecl, Guard, PresentedAlgebra, RewriteRule,
    STEP_BUDGET,
};
