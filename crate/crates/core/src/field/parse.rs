//! Text syntax for rational-function literals over a declared symbol list.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom (('^' | '**') '-'? integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::poly::Symbol;
use super::{FieldError, ProjValue, RatFunc, Rational};

/// An ordered list of declared variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    names: Vec<Symbol>,
}

impl Symbols {
    pub fn new<I, S>(names: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = Symbols::default();
        for n in names {
            out.declare(n.as_ref())?;
        }
        Ok(out)
    }

    pub fn declare(&mut self, name: &str) -> Result<(), FieldError> {
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !RESERVED.contains(&name);
        if !valid {
            return Err(FieldError::Parse {
                pos: 0,
                msg: format!("invalid symbol name `{name}`"),
            });
        }
        if !self.contains(name) {
            self.names.push(Symbol::from(name));
        }
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|s| &**s == name)
    }

    pub fn names(&self) -> &[Symbol] {
        &self.names
    }

    /// `∂f/∂var`, rejecting undeclared variables.
    pub fn partial(&self, f: &RatFunc, var: &str) -> Result<RatFunc, FieldError> {
        if !self.contains(var) {
            return Err(FieldError::UnknownVariable(var.to_string()));
        }
        Ok(f.derivative(var))
    }

    pub fn parse_ratfunc(&self, src: &str) -> Result<RatFunc, FieldError> {
        let mut p = Parser::new(src, self)?;
        let v = p.expr()?;
        p.finish()?;
        Ok(v)
    }

    /// Like [`Symbols::parse_ratfunc`], additionally accepting `inf`.
    pub fn parse_proj(&self, src: &str) -> Result<ProjValue, FieldError> {
        if src.trim() == "inf" {
            return Ok(ProjValue::Infinity);
        }
        self.parse_ratfunc(src).map(ProjValue::Finite)
    }
}

const RESERVED: &[&str] = &["inf", "d", "dlog"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, FieldError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' if bytes.get(i + 1) == Some(&b'*') => {
                out.push((start, Tok::Caret));
                i += 1;
            }
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            other => {
                return Err(FieldError::Parse {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Recursive-descent parser shared with the differential-form syntax.
pub(crate) struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    pub(crate) symbols: &'a Symbols,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &str, symbols: &'a Symbols) -> Result<Self, FieldError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            end: src.len(),
            symbols,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> FieldError {
        FieldError::Parse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    pub(crate) fn expect(&mut self, t: Tok) -> Result<(), FieldError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {t:?}")))
        }
    }

    pub(crate) fn finish(&self) -> Result<(), FieldError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("trailing input at {t:?}"))),
        }
    }

    pub(crate) fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let e = self.integer_exponent()?;
        base.pow(e)
    }

    pub(crate) fn integer_exponent(&mut self) -> Result<i64, FieldError> {
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.bump();
        }
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e = i64::try_from(n).map_err(|_| FieldError::ExponentTooLarge)?;
                Ok(if neg { -e } else { e })
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected integer exponent"))
            }
        }
    }

    pub(crate) fn atom(&mut self) -> Result<RatFunc, FieldError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(RatFunc::constant(Rational::from_integer(n))),
            Some(Tok::Ident(name)) => {
                if self.symbols.contains(&name) {
                    Ok(RatFunc::var(&name))
                } else {
                    Err(FieldError::UnknownVariable(name))
                }
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected number, variable or `(`"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms() -> Symbols {
        Symbols::new(["b1", "b2", "t", "u"]).unwrap()
    }

    #[test]
    fn parses_c2_coordinate() {
        let s = syms();
        let f = s.parse_ratfunc("(b1*t - b1*b2)/(t - b1*b2)").unwrap();
        let g = s.parse_ratfunc("b1 * (t - b2) / (t - b1 * b2)").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn powers_and_unary_minus() {
        let s = syms();
        assert_eq!(
            s.parse_ratfunc("u^-2").unwrap(),
            s.parse_ratfunc("1/(u*u)").unwrap()
        );
        assert_eq!(
            s.parse_ratfunc("-u**2").unwrap(),
            -s.parse_ratfunc("u*u").unwrap()
        );
    }

    #[test]
    fn rejects_undeclared() {
        assert_eq!(
            syms().parse_ratfunc("x + 1"),
            Err(FieldError::UnknownVariable("x".into()))
        );
        assert!(syms().partial(&RatFunc::var("u"), "x").is_err());
    }

    #[test]
    fn infinity_literal() {
        assert_eq!(syms().parse_proj(" inf ").unwrap(), ProjValue::Infinity);
    }

    #[test]
    fn division_by_zero_literal() {
        assert_eq!(
            syms().parse_ratfunc("u/(t - t)"),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn display_reparses() {
        let s = syms();
        for src in [
            "-u/(t + 1)",
            "(3*u^2 - b1)/(2*t*b2)",
            "1/3*u",
            "-7",
            "u^3*t/(b1 - 1)",
        ] {
            let f = s.parse_ratfunc(src).unwrap();
            assert_eq!(s.parse_ratfunc(&f.to_string()).unwrap(), f, "{src} -> {f}");
        }
    }
}
