//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are stored sparsely as sorted `(symbol, exponent)` lists, so a
//! polynomial only mentions the variables it actually uses. Terms are kept in
//! graded-lexicographic order; the leading term is the last entry of the map.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Interned variable name. Variables compare by name.
pub type Symbol = Arc<str>;

/// A power product `x1^e1 * ... * xk^ek` with all `ei > 0`, sorted by symbol.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: &Symbol) -> Self {
        Monomial(vec![(sym.clone(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| &**s == var)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s.clone(), e - f)),
                }
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (s, e) in &self.0 {
            let f = other.exponent(s);
            if f > 0 {
                out.push((s.clone(), (*e).min(f)));
            }
        }
        Monomial(out)
    }

    /// Splits off the power of `var`: returns `(e, m)` with `self = var^e * m`.
    fn split(&self, var: &str) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(s, k)| {
                if &**s == var {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Monomial(rest))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((s, e)), Some((t, f))) => match s.cmp(t) {
                    // `self` has a positive exponent in an earlier variable.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order, variables ranked by name.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial with rational coefficients. No zero coefficient
/// is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(sym: &Symbol) -> Self {
        Poly::term(Rational::one(), Monomial::var(sym))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    /// Variables with a positive exponent somewhere in the polynomial.
    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn mul_term(&self, c: &Rational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    fn add_assign_term(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(lm)?;
            let c = rc / lc;
            rem = &rem - &d.mul_term(&c, &m);
            quot.add_assign_term(m, c);
        }
        Some(quot)
    }

    pub fn derivative(&self, var: &str) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(var);
            if e == 0 {
                continue;
            }
            let sym: Symbol = m.0.iter().find(|(s, _)| &**s == var).unwrap().0.clone();
            let lowered = if e > 1 {
                rest.mul(&Monomial(vec![(sym, e - 1)]))
            } else {
                rest
            };
            out.add_assign_term(lowered, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in `var` over the other
    /// variables; entry `k` is the coefficient of `var^k`.
    pub fn to_univariate(&self, var: &str) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(var);
            out[e as usize].add_assign_term(rest, c.clone());
        }
        trim(&mut out);
        out
    }

    pub fn from_univariate(var: &Symbol, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = if k == 0 {
                Monomial::one()
            } else {
                Monomial(vec![(var.clone(), k as u32)])
            };
            for (m, q) in &c.terms {
                out.add_assign_term(m.mul(&shift), q.clone());
            }
        }
        out
    }

    /// The single term, when the polynomial has exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Substitutes `value(s)` for every variable `s` other than `keep`.
    fn specialize(&self, keep: &Symbol, value: &dyn Fn(&Symbol) -> Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(keep);
            let mut k = c.clone();
            for (s, f) in &rest.0 {
                k *= value(s).pow(*f as i32);
            }
            let mono = if e == 0 {
                Monomial::one()
            } else {
                Monomial(vec![(keep.clone(), e)])
            };
            out.add_assign_term(mono, k);
        }
        out
    }

    /// Gcd of the coefficients in `var`, normalized monic.
    fn content_in(&self, var: &str) -> Poly {
        let coeffs = self.to_univariate(var);
        content(&coeffs)
    }
}

fn trim(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    if v.len() == 1 && v[0].is_zero() {
        v.clear();
    }
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if g.is_one() {
            break;
        }
        g = gcd(&g, c);
    }
    g
}

/// Greatest common divisor, normalized so the leading coefficient is 1.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if let Some((m, _)) = a.as_term() {
        return monomial_gcd(m, b);
    }
    if let Some((m, _)) = b.as_term() {
        return monomial_gcd(m, a);
    }
    let va = a.variables();
    let vb = b.variables();
    if va.len() > 1 {
        for v in &va {
            if coprime_in(a, b, v, &va) {
                // `gcd(a, b)` is free of `v`, hence divides both contents in `v`.
                return gcd(&a.content_in(v), &b.content_in(v));
            }
        }
    }
    // Main variable of least degree keeps the remainder sequence short.
    let Some(var) = va
        .intersection(&vb)
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .cloned()
    else {
        // No shared variable: any common factor lives in the contents.
        let v = va.iter().next().unwrap();
        return gcd(&a.content_in(v), b);
    };
    if let Some(v) = va.symmetric_difference(&vb).next() {
        // A variable present on one side only cannot occur in the gcd.
        return if va.contains(v) {
            gcd(&a.content_in(v), b)
        } else {
            gcd(a, &b.content_in(v))
        };
    }

    let ua = a.to_univariate(&var);
    let ub = b.to_univariate(&var);
    let ca = content(&ua);
    let cb = content(&ub);
    let pa = primitive(&ua, &ca);
    let pb = primitive(&ub, &cb);
    let c = gcd(&ca, &cb);
    let g = if pa.len() >= pb.len() {
        subresultant_gcd(pa, pb)
    } else {
        subresultant_gcd(pb, pa)
    };
    let g = Poly::from_univariate(&var, &g);
    (&c * &g).monic()
}

const EVAL_POINTS: [i64; 12] = [3, -5, 7, 11, -13, 17, 19, -23, 29, 31, -37, 41];

/// True when `deg_var gcd(a, b) = 0` is certified by one specialization of the other
/// variables at which both leading coefficients in `var` survive: the image of the gcd
/// divides the univariate gcd of the images and keeps its degree.
fn coprime_in(a: &Poly, b: &Poly, var: &Symbol, vars: &BTreeSet<Symbol>) -> bool {
    for attempt in 0..3 {
        let value = |s: &Symbol| {
            let idx = vars.iter().position(|v| v == s).unwrap_or(0);
            Rational::from_integer(EVAL_POINTS[(3 * idx + 5 * attempt) % EVAL_POINTS.len()].into())
        };
        let ua = a.specialize(var, &value);
        let ub = b.specialize(var, &value);
        if ua.degree_in(var) != a.degree_in(var) || ub.degree_in(var) != b.degree_in(var) {
            continue;
        }
        return gcd(&ua, &ub).is_constant();
    }
    false
}

fn monomial_gcd(m: &Monomial, p: &Poly) -> Poly {
    let mut g = m.clone();
    for n in p.terms.keys() {
        g = g.gcd(n);
        if g.is_one() {
            break;
        }
    }
    Poly::term(Rational::one(), g)
}

fn primitive(coeffs: &[Poly], cont: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| {
            c.exact_div(cont)
                .expect("content divides every coefficient")
        })
        .collect()
}

fn upoly_lc(p: &[Poly]) -> &Poly {
    p.last().expect("nonzero univariate polynomial")
}

/// Pseudo-remainder of `a` by `b` (both nonzero, `deg a >= deg b`).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = b.len() - 1;
    let lcb = upoly_lc(b);
    let mut r: Vec<Poly> = a.to_vec();
    let mut e = a.len() as i64 - b.len() as i64 + 1;
    while !r.is_empty() && r.len() > n {
        let shift = r.len() - 1 - n;
        let lcr = upoly_lc(&r).clone();
        let mut next: Vec<Poly> = r.iter().map(|c| c * lcb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bc * &lcr);
        }
        trim(&mut next);
        r = next;
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

/// Primitive gcd of two primitive univariate polynomials via the
/// subresultant remainder sequence. Requires `deg a >= deg b`.
fn subresultant_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let mut a = a;
    let mut b = b;
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            let c = content(&b);
            return primitive(&b, &c);
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .iter()
            .map(|c| {
                c.exact_div(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = upoly_lc(&a).clone();
        if delta > 0 {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            h = num.exact_div(&den).expect("subresultant division is exact");
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_assign_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
