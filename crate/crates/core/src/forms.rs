//! Kähler differentials over ℚ(u₁,…,u_m) in the basis `du_{i₁} ∧ ⋯ ∧ du_{i_n}`,
//! and the regulator sending `(x; t₁,…,t_n)` to `(1/x) dlog t₁ ∧ ⋯ ∧ dlog t_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cycles::{CycleError, FormalCycle, Term};
use crate::field::{FieldError, ProjValue, RatFunc, Rational, Symbol, Symbols, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("dlog of zero")]
    ZeroArgument,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("the regulator is defined on point terms only")]
    NonPointTerm,
    #[error("box coordinate {0} must be finite and nonzero")]
    DegenerateCoordinate(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `Σ f_I du_I` over strictly increasing index tuples `I`.
///
/// Equality ignores the degree of the zero form.
#[derive(Clone, Debug)]
pub struct DiffForm {
    degree: usize,
    terms: BTreeMap<Vec<Symbol>, RatFunc>,
}

impl PartialEq for DiffForm {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl Eq for DiffForm {}

/// Sorts `v` in place, returning the permutation sign, or 0 on a repeated entry.
fn sort_with_sign(v: &mut [Symbol]) -> i64 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

impl DiffForm {
    pub fn zero(degree: usize) -> Self {
        DiffForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn scalar(f: RatFunc) -> Self {
        let mut out = DiffForm::zero(0);
        out.add_term(Vec::new(), f);
        out
    }

    /// `du` for a variable `u`.
    pub fn d_var(u: &str) -> Self {
        let mut out = DiffForm::zero(1);
        out.add_term(vec![Symbol::from(u)], RatFunc::one());
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Symbol], &RatFunc)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of the basis element `du_I` for increasing `I`.
    pub fn coefficient(&self, index: &[Symbol]) -> RatFunc {
        self.terms.get(index).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn add_term(&mut self, mut index: Vec<Symbol>, f: RatFunc) {
        let sign = sort_with_sign(&mut index);
        if sign == 0 || f.is_zero() {
            return;
        }
        let f = if sign < 0 { -f } else { f };
        let slot = self
            .terms
            .entry(index.clone())
            .or_insert_with(RatFunc::zero);
        *slot = &*slot + &f;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm, FormError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm, FormError> {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, f: &RatFunc) -> DiffForm {
        let mut out = DiffForm::zero(self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * f);
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero(self.degree + other.degree);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut idx = k1.clone();
                idx.extend(k2.iter().cloned());
                out.add_term(idx, v1 * v2);
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.degree + 1);
        for (k, f) in &self.terms {
            for v in f.variables() {
                let df = f.derivative(&v);
                let mut idx = vec![v];
                idx.extend(k.iter().cloned());
                out.add_term(idx, df);
            }
        }
        out
    }

    /// `df / f`.
    pub fn dlog(f: &RatFunc) -> Result<DiffForm, FormError> {
        if f.is_zero() {
            return Err(FormError::ZeroArgument);
        }
        Ok(DiffForm::scalar(f.clone()).d().scale(&f.inv()?))
    }

    /// Returns `k` with `self = k·other` for a rational constant `k`, if any.
    pub fn constant_ratio(&self, other: &DiffForm) -> Option<Rational> {
        if other.is_zero() {
            return if self.is_zero() {
                Some(Rational::from_integer(0.into()))
            } else {
                None
            };
        }
        let (idx, g) = other.terms.iter().next()?;
        let ratio = (&self.coefficient(idx) / g).as_constant()?;
        let scaled = other.scale(&RatFunc::constant(ratio.clone()));
        (scaled == *self).then_some(ratio)
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, v) in idx.iter().enumerate() {
                write!(f, "{}d({v})", if j == 0 { " * " } else { " ^ " })?;
            }
        }
        Ok(())
    }
}

/// Parses form syntax such as `(1/u) * dlog(v) ^ dlog(u*w)` or `u*d(v) - v*d(u)`.
///
/// `*` and `^` are the wedge product, except that `f ^ k` with `f` a 0-form and `k`
/// an integer literal is a power. `/` divides by a 0-form.
pub fn parse_form(symbols: &Symbols, src: &str) -> Result<DiffForm, FormError> {
    let toks = crate::field::tokenize(src)?;
    let mut p = FormParser {
        toks,
        pos: 0,
        end: src.len(),
        symbols,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct FormParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    symbols: &'a Symbols,
}

impl FormParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, msg: &str) -> FormError {
        FormError::Parse {
            pos: self.toks.get(self.pos).map_or(self.end, |(p, _)| *p),
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), FormError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {t:?}")))
        }
    }

    fn expr(&mut self) -> Result<DiffForm, FormError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer_after_caret(&self) -> Option<(i64, usize)> {
        let mut k = self.pos + 1;
        let neg = matches!(self.toks.get(k), Some((_, Tok::Minus)));
        if neg {
            k += 1;
        }
        match self.toks.get(k) {
            Some((_, Tok::Int(n))) => {
                let e = i64::try_from(n.clone()).ok()?;
                Some((if neg { -e } else { e }, k + 1))
            }
            _ => None,
        }
    }

    fn term(&mut self) -> Result<DiffForm, FormError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Caret | Tok::Star) => {
                    self.pos += 1;
                    acc = acc.wedge(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let den = self.unary()?;
                    if den.degree() != 0 {
                        return Err(self.error("division by a form of positive degree"));
                    }
                    acc = acc.scale(&den.coefficient(&[]).inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DiffForm, FormError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.scale(&RatFunc::from_int(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffForm, FormError> {
        let base = self.atom()?;
        if base.degree() == 0 && self.peek() == Some(&Tok::Caret) {
            if let Some((e, next)) = self.integer_after_caret() {
                self.pos = next;
                return Ok(DiffForm::scalar(base.coefficient(&[]).pow(e)?));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffForm, FormError> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(DiffForm::scalar(RatFunc::constant(Rational::from_integer(
                n,
            )))),
            Tok::Ident(name) if name == "d" || name == "dlog" => {
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                if name == "d" {
                    Ok(inner.d())
                } else if inner.degree() == 0 {
                    DiffForm::dlog(&inner.coefficient(&[]))
                } else {
                    Err(self.error("dlog takes a function"))
                }
            }
            Tok::Ident(name) => {
                if self.symbols.contains(&name) {
                    Ok(DiffForm::scalar(RatFunc::var(&name)))
                } else {
                    Err(FieldError::UnknownVariable(name).into())
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, variable, d(…), dlog(…) or `(`"))
            }
        }
    }
}

/// `(x; t₁,…,t_n) ↦ (1/x) dlog t₁ ∧ ⋯ ∧ dlog t_n`, extended linearly.
pub fn reg(c: &FormalCycle) -> Result<DiffForm, FormError> {
    c.require_e1()?;
    let mut out = DiffForm::zero(c.n());
    for (t, k) in c.terms() {
        let Term::Point(p) = t else {
            return Err(FormError::NonPointTerm);
        };
        let mut w = DiffForm::scalar(p.affine()[0].inv()?);
        for b in p.coords() {
            match b {
                ProjValue::Finite(f) if !f.is_zero() => w = w.wedge(&DiffForm::dlog(f)?),
                other => return Err(FormError::DegenerateCoordinate(other.to_string())),
            }
        }
        out = out.add(&w.scale(&RatFunc::from_int(k)))?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RegDeltaReport {
    pub n: usize,
    pub reg_delta: DiffForm,
    pub d_reg: DiffForm,
    /// `k` with `reg(δc) = k·d reg(c)`, when it exists.
    pub factor: Option<Rational>,
}

impl RegDeltaReport {
    /// `ε` when `factor = ε·(n + 1)`.
    pub fn sign(&self) -> Option<i64> {
        let f = self.factor.as_ref()?;
        let n1 = Rational::from_integer(BigInt::from(self.n + 1));
        if *f == n1 {
            Some(1)
        } else if *f == -n1 {
            Some(-1)
        } else {
            None
        }
    }
}

/// Compares `reg(δc)` with `d reg(c)`.
pub fn reg_delta_factor_check(c: &FormalCycle) -> Result<RegDeltaReport, FormError> {
    let reg_delta = reg(&c.delta()?)?;
    let d_reg = reg(c)?.d();
    let factor = reg_delta.constant_ratio(&d_reg);
    Ok(RegDeltaReport {
        n: c.n(),
        reg_delta,
        d_reg,
        factor,
    })
}

/// `k` with `reg(ξ ∧ η) = k · reg ξ ∧ reg η`, when it exists.
pub fn reg_wedge_factor(
    xi: &FormalCycle,
    eta: &FormalCycle,
) -> Result<Option<Rational>, FormError> {
    let lhs = reg(&crate::cycles::wedge(xi, eta)?)?;
    let rhs = reg(xi)?.wedge(&reg(eta)?);
    Ok(lhs.constant_ratio(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{ModulusRing, PointCycle};

    fn syms() -> Symbols {
        Symbols::new(["u", "v", "w", "a", "b"]).unwrap()
    }

    fn f(src: &str) -> DiffForm {
        parse_form(&syms(), src).unwrap()
    }

    fn v(s: &str) -> RatFunc {
        RatFunc::var(s)
    }

    #[test]
    fn exterior_derivative() {
        assert_eq!(DiffForm::scalar(v("u")).d(), DiffForm::d_var("u"));
        assert_eq!(f("d(u*v)"), f("u*d(v) + v*d(u)"));
        assert!(f("d(d((1/u) * d(v)))").is_zero());
    }

    #[test]
    fn dlog_rules() {
        assert!(DiffForm::dlog(&RatFunc::from_int(7)).unwrap().is_zero());
        assert_eq!(f("dlog(u*v)"), f("dlog(u) + dlog(v)"));
        assert_eq!(f("dlog(1/u)"), f("-dlog(u)"));
        assert_eq!(
            DiffForm::dlog(&RatFunc::zero()),
            Err(FormError::ZeroArgument)
        );
    }

    #[test]
    fn wedge_rules() {
        assert!(f("d(u) ^ d(u)").is_zero());
        assert_eq!(f("d(u) ^ d(v)"), f("-d(v) ^ d(u)"));
        assert_eq!(f("(u * d(u)) ^ d(v)"), f("u * d(u) ^ d(v)"));
        assert_eq!(f("u^2 * d(v)"), f("u*u*d(v)"));
    }

    #[test]
    fn printer_reparses() {
        for src in [
            "(1/u) * dlog(v) ^ dlog(u*w)",
            "u*d(v) - v*d(u)",
            "u^-2 + 3",
            "0",
            "d(a) ^ d(b) ^ d(u)",
        ] {
            let w = f(src);
            let printed = w.to_string();
            assert_eq!(
                parse_form(&syms(), &printed).unwrap(),
                w,
                "{src} -> {printed}"
            );
        }
        assert!(parse_form(&syms(), "d(u) + u").is_err());
    }

    #[test]
    fn regulator_examples() {
        let (a, b) = (v("a"), v("b"));
        let p = FormalCycle::point(
            ModulusRing::dual_numbers(),
            PointCycle::finite(vec![a.inv().unwrap()], vec![a.clone(), b.clone()]),
        )
        .unwrap();
        assert_eq!(reg(&p).unwrap(), f("a * dlog(a) ^ dlog(b)"));
    }

    #[test]
    fn reg_delta_small_n() {
        let p = FormalCycle::point(
            ModulusRing::dual_numbers(),
            PointCycle::finite(vec![v("u")], vec![]),
        )
        .unwrap();
        let r = reg_delta_factor_check(&p).unwrap();
        assert_eq!(r.sign(), Some(-1));
    }
}
