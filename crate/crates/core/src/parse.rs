//! Expression front end.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' exponent)?
//! base     := NUMBER | IDENT | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
//! exponent := ['-'] INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')' | '{' ['-'] INTEGER ['/' INTEGER] '}'
//! ```
//!
//! `NUMBER` is an integer or a rational literal `n/d`. The brace form of the
//! exponent is what the canonical serializer prints, so printed output parses
//! back. Positions in errors are 0-based byte offsets.

use num_bigint::BigInt;

use crate::algebra::{Exp, LaurentPoly, Monomial, PresentedAlgebra, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Number(Rational),
    Gen { name: String, pos: usize },
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow { base: Box<ExprAst>, exp: Exp, pos: usize },
    Sqrt { arg: Box<ExprAst>, pos: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(){}".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected integer"),
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.base()?;
        let pos = self.pos();
        if self.eat('^') {
            let exp = self.exponent()?;
            return Ok(ExprAst::Pow {
                base: Box::new(base),
                exp,
                pos,
            });
        }
        Ok(base)
    }

    fn small(&self, n: BigInt, pos: usize) -> Result<i64> {
        i64::try_from(n).map_err(|_| Error::Parse {
            pos,
            msg: "exponent out of range".into(),
        })
    }

    fn signed_ratio(&mut self) -> Result<Exp> {
        let pos = self.pos();
        let neg = self.eat('-');
        let n = self.int()?;
        let n = self.small(n, pos)?;
        let d = if self.eat('/') {
            let dpos = self.pos();
            let d = self.int()?;
            let d = self.small(d, dpos)?;
            if d == 0 {
                return Err(Error::Parse {
                    pos: dpos,
                    msg: "zero denominator".into(),
                });
            }
            d
        } else {
            1
        };
        Ok(Exp::new(if neg { -n } else { n }, d))
    }

    fn exponent(&mut self) -> Result<Exp> {
        if self.eat('(') {
            let e = self.signed_ratio()?;
            self.expect(')')?;
            Ok(e)
        } else if self.eat('{') {
            let e = self.signed_ratio()?;
            self.expect('}')?;
            Ok(e)
        } else {
            let pos = self.pos();
            let neg = self.eat('-');
            let n = self.int()?;
            let n = self.small(n, pos)?;
            Ok(Exp::from(if neg { -n } else { n }))
        }
    }

    fn base(&mut self) -> Result<ExprAst> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Sym('/'))
                    && matches!(self.toks.get(self.at + 1), Some((Tok::Int(_), _)))
                {
                    self.at += 1;
                    let dpos = self.pos();
                    let d = self.int()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    return Ok(ExprAst::Number(Rational::new(n, d)));
                }
                Ok(ExprAst::Number(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "sqrt" {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(ExprAst::Sqrt {
                        arg: Box::new(arg),
                        pos,
                    });
                }
                if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('('))) {
                    return self.err("implicit multiplication is not allowed");
                }
                Ok(ExprAst::Gen { name, pos })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Ok(ExprAst::Neg(Box::new(self.factor()?)))
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<ExprAst> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        if matches!(p.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('('))) {
            return p.err("implicit multiplication is not allowed");
        }
        return p.err("unexpected token");
    }
    Ok(e)
}

fn lower(ast: &ExprAst, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
    Ok(match ast {
        ExprAst::Number(c) => LaurentPoly::constant(c.clone()),
        ExprAst::Gen { name, pos } => {
            let g = alg.gen(name).map_err(|_| Error::Parse {
                pos: *pos,
                msg: format!("unknown identifier '{name}'"),
            })?;
            LaurentPoly::monomial(Monomial::var(g))
        }
        ExprAst::Add(a, b) => &lower(a, alg)? + &lower(b, alg)?,
        ExprAst::Sub(a, b) => &lower(a, alg)? - &lower(b, alg)?,
        ExprAst::Mul(a, b) => alg.mul(&lower(a, alg)?, &lower(b, alg)?)?,
        ExprAst::Neg(a) => -lower(a, alg)?,
        ExprAst::Pow { base, exp, pos } => power(&lower(base, alg)?, *exp, *pos, alg)?,
        ExprAst::Sqrt { arg, pos } => power(&lower(arg, alg)?, Exp::new(1, 2), *pos, alg)?,
    })
}

fn power(base: &LaurentPoly, e: Exp, pos: usize, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
    let at = |err: Error| Error::Parse {
        pos,
        msg: err.to_string(),
    };
    let v = if e.is_integer() && *e.numer() >= 0 {
        base.pow_u32(*e.numer() as u32)
    } else {
        base.pow_exp(e).map_err(at)?
    };
    alg.check_lattice(&v).map_err(at)?;
    alg.normal_form(&v)
}

/// Parses `text` in `alg` and returns its normal form.
pub fn parse_expr(text: &str, alg: &PresentedAlgebra) -> Result<LaurentPoly> {
    let ast = parse_ast(text)?;
    let v = lower(&ast, alg)?;
    alg.check_lattice(&v).map_err(|e| Error::Parse {
        pos: 0,
        msg: e.to_string(),
    })?;
    alg.normal_form(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorDecl;

    fn alg() -> PresentedAlgebra {
        PresentedAlgebra::new(
            "t",
            vec![
                GeneratorDecl::new("s1", 2, true),
                GeneratorDecl::new("s2", 2, true),
                GeneratorDecl::plain("s3"),
            ],
        )
    }

    #[test]
    fn dangling_caret_position() {
        match parse_expr("s1 ^", &alg()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sqrt_is_half_power() {
        let a = alg();
        let p = parse_expr("sqrt(s1)", &a).unwrap();
        assert_eq!(a.format(&p), "s1^{1/2}");
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(parse_expr("2 s1", &alg()).is_err());
        assert!(parse_expr("s1 s2", &alg()).is_err());
    }

    #[test]
    fn rational_literals_and_braces() {
        let a = alg();
        let p = parse_expr("-1/2*s1^{-1/2} + (1/3)*s3^2", &a).unwrap();
        assert_eq!(parse_expr(&a.format(&p), &a).unwrap(), p);
    }

    #[test]
    fn lattice_violation_has_position() {
        match parse_expr("s1 + s3^(1/2)", &alg()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_identifier() {
        match parse_expr("s1 + zz", &alg()) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 5);
                assert!(msg.contains("zz"));
            }
            other => panic!("{other:?}"),
        }
    }
}
