use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{gcd, Poly, Symbol};
use super::{FieldError, Rational};

/// A rational function `num/den` over the rationals in canonical form:
/// `gcd(num, den) = 1` and `den` has leading coefficient 1 in graded-lex order.
/// Two rational functions are equal iff their canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        RatFunc::reduced(num, den)
    }

    /// Canonical form of `num/den` when the caller knows `gcd(num, den) = 1`.
    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(Poly::var(&Symbol::from(name)))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| FieldError::ExponentTooLarge)?;
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Partial derivative by the quotient rule, after dividing out `gcd(den, den′)`.
    pub fn derivative(&self, var: &str) -> Self {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let g = gcd(&self.den, &dd);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let dd1 = dd.exact_div(&g).expect("gcd divides");
        let num = &(&dn * &d1) - &(&self.num * &dd1);
        Self::normalized(num, &self.den * &d1)
    }
}

/// `(p/g, q/g)` with `g = gcd(p, q)`.
fn cancel(p: &Poly, q: &Poly) -> (Poly, Poly) {
    let g = gcd(p, q);
    if g.is_one() {
        return (p.clone(), q.clone());
    }
    (
        p.exact_div(&g).expect("gcd divides"),
        q.exact_div(&g).expect("gcd divides"),
    )
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // With g = gcd(b, d), b = g·b′, d = g·d′: a/b + c/d = (a·d′ + c·b′)/(g·b′·d′),
        // and only factors of g can cancel.
        let g = gcd(&self.den, &rhs.den);
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.exact_div(&h).expect("gcd divides"),
                g.exact_div(&h).expect("gcd divides"),
            )
        };
        RatFunc::reduced(num, &(&g * &b1) * &d1)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel: gcd(a, b) = gcd(c, d) = 1, so only a with d and c with b share factors.
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFunc::reduced(&a * &c, &b * &d)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for fallible division.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

fn needs_parens(p: &Poly) -> bool {
    match p.as_term() {
        None => true,
        Some((m, c)) => !(c.is_one() && m.factors().len() <= 1),
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RatFunc {
        RatFunc::var(s)
    }

    #[test]
    fn inverse_is_exact() {
        let u = v("u");
        assert!((&u * &u.inv().unwrap()).is_one());
        assert_eq!(RatFunc::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn cancels_common_factor() {
        // (u^2 - 1)/(u - 1) + 0 = u + 1
        let u = v("u");
        let one = RatFunc::one();
        let q = &(&(&u * &u) - &one) / &(&u - &one);
        assert_eq!(&q + &RatFunc::zero(), &u + &one);
    }

    #[test]
    fn quotient_rule() {
        let u = v("u");
        let d = u.inv().unwrap().derivative("u");
        assert_eq!(d, -&(&u * &u).inv().unwrap());
    }

    #[test]
    fn denominators_are_monic() {
        let q = &v("x") / &(&v("y") * &RatFunc::from_int(3));
        assert!(q.denom().leading_coeff().is_one());
        assert_eq!(q.to_string(), "1/3*x/y");
    }

    #[test]
    fn negative_powers() {
        let u = v("u");
        assert_eq!(u.pow(-2).unwrap(), (&u * &u).inv().unwrap());
        assert!(RatFunc::zero().pow(-1).is_err());
    }
}
