//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (p, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Int(s.parse().unwrap()), p));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()), p));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), p));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: p, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.to_string() })
    }
}

struct Parser<'a> {
    lx: Lexer,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.lx.peek() {
                Tok::Sym('+') => {
                    self.lx.bump();
                    acc = acc.add_ref(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.lx.bump();
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.lx.peek() == &Tok::Sym('*') {
            self.lx.bump();
            acc = acc.mul_ref(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.lx.peek() {
            Tok::Sym('-') => {
                self.lx.bump();
                Ok(self.unary()?.neg_ref())
            }
            Tok::Sym('+') => {
                self.lx.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.lx.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.lx.bump();
        match self.lx.peek().clone() {
            Tok::Int(e) => {
                let e: u32 = e.try_into().or_else(|_| self.lx.err("exponent too large"))?;
                self.lx.bump();
                Ok(base.pow(e))
            }
            _ => self.lx.err("expected exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.lx.here();
        match self.lx.bump() {
            Tok::Int(n) => {
                let mut den = BigInt::from(1);
                if self.lx.peek() == &Tok::Sym('/') {
                    self.lx.bump();
                    match self.lx.bump() {
                        Tok::Int(d) => den = d,
                        _ => return Err(Error::Syntax { pos: self.lx.here(), msg: "expected denominator".into() }),
                    }
                }
                let c = self.ring.field().from_ratio(&n, &den)?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => Polynomial::var_named(self.ring, &name),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.lx.bump() != Tok::Sym(')') {
                    return Err(Error::Syntax { pos, msg: "unbalanced parenthesis".into() });
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Sym(c) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { lx: Lexer { toks: lex(text)?, pos: 0 }, ring };
    let out = p.expr()?;
    if p.lx.peek() != &Tok::End {
        return p.lx.err("expected operator or end of input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldSpec;
    use crate::poly::RingContext;
    use proptest::prelude::*;

    fn ring() -> Ring {
        RingContext::new(FieldSpec::Rationals, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_basic_forms() {
        let r = RingContext::new(FieldSpec::Rationals, &["x0", "x1", "x2"]).unwrap();
        let p = parse_polynomial("x1*x2", &r).unwrap();
        assert!(p.is_monomial());
        assert_eq!(p.to_string(), "x1*x2");
        let q = parse_polynomial("y^2*z - x^3", &ring()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.total_degree(), 3);
        assert_eq!(q.to_string(), "-x^3 + y^2*z");
    }

    #[test]
    fn undeclared_token_is_unknown_variable() {
        let r = RingContext::new(FieldSpec::Rationals, &["a", "b", "c"]).unwrap();
        assert_eq!(parse_polynomial("abc", &r).unwrap_err(), Error::UnknownVariable("abc".into()));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_polynomial("x + * y", &ring()).unwrap_err() {
            Error::Syntax { pos, .. } => assert_eq!(pos, 4),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_polynomial("(x + y", &ring()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("2x", &ring()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x/0", &ring()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn fractions_and_parentheses() {
        let p = parse_polynomial("3/2*x*(x - 2*y) + -(1/2)", &ring()).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2 - 3*x*y - 1/2");
        let f7 = RingContext::new(FieldSpec::Prime(7), &["x"]).unwrap();
        assert_eq!(parse_polynomial("3/5*x", &f7).unwrap().to_string(), "2*x");
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let p = |s| parse_polynomial(s, &r).unwrap();
        assert_eq!(p("(x+y)*(x-y)"), p("x^2-y^2"));
        assert_eq!(p("x+y").pow(0), Polynomial::one(&r));
        assert_eq!(p("y*z").mul_ref(&p("x*z")).to_string(), "x*y*z^2");
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (-20i64..20, 1i64..5, proptest::collection::vec(0u16..4, 3));
        proptest::collection::vec(term, 0..6).prop_map(|ts| {
            let r = ring();
            let f = r.field();
            let terms = ts
                .into_iter()
                .map(|(n, d, e)| {
                    let c = f.from_i64(n).div(&f.from_i64(d));
                    (crate::poly::Monomial::from_exps(&e), c)
                })
                .collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(p in arb_poly()) {
            let q = parse_polynomial(&p.to_string(), p.ring()).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
