//! Points of the projective line and degree-one coordinate maps on it.

use std::fmt;

use super::{FieldError, RatFunc};

/// A point of ℙ¹ over the rational function field: either a finite value or ∞.
///
/// The finite case corresponds to the canonical pair `(p, 1)`, infinity to `(1, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ProjValue {
    Finite(RatFunc),
    Infinity,
}

impl ProjValue {
    /// Builds `p/q` from homogeneous coordinates.
    pub fn from_pair(p: RatFunc, q: RatFunc) -> Result<Self, FieldError> {
        match (p.is_zero(), q.is_zero()) {
            (true, true) => Err(FieldError::DegeneratePoint),
            (false, true) => Ok(ProjValue::Infinity),
            _ => Ok(ProjValue::Finite(&p / &q)),
        }
    }

    pub fn finite(&self) -> Option<&RatFunc> {
        match self {
            ProjValue::Finite(v) => Some(v),
            ProjValue::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(RatFunc::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.finite().is_some_and(RatFunc::is_one)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjValue::Infinity)
    }

    /// `1/v`, swapping 0 and ∞.
    pub fn recip(&self) -> ProjValue {
        match self {
            ProjValue::Infinity => ProjValue::Finite(RatFunc::zero()),
            ProjValue::Finite(v) if v.is_zero() => ProjValue::Infinity,
            ProjValue::Finite(v) => ProjValue::Finite(v.inv().expect("nonzero")),
        }
    }
}

impl From<RatFunc> for ProjValue {
    fn from(v: RatFunc) -> Self {
        ProjValue::Finite(v)
    }
}

impl fmt::Display for ProjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(v) => write!(f, "{v}"),
            ProjValue::Infinity => write!(f, "inf"),
        }
    }
}

/// The map `s ↦ (α s + β)/(γ s + δ)` of the projective line.
///
/// Non-constant maps (`αδ − βγ ≠ 0`) are scaled so that `γ = 1`, or `δ = 1`
/// when `γ = 0`. Constant maps are stored as `(0, c, 0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mobius {
    alpha: RatFunc,
    beta: RatFunc,
    gamma: RatFunc,
    delta: RatFunc,
}

impl Mobius {
    pub fn new(
        alpha: RatFunc,
        beta: RatFunc,
        gamma: RatFunc,
        delta: RatFunc,
    ) -> Result<Self, FieldError> {
        if gamma.is_zero() && delta.is_zero() {
            return Err(FieldError::DegenerateMobius);
        }
        let det = &(&alpha * &delta) - &(&beta * &gamma);
        if det.is_zero() {
            // Constant map; its value is α/γ or β/δ, whichever is defined.
            let value = if gamma.is_zero() {
                &beta / &delta
            } else {
                &alpha / &gamma
            };
            return Ok(Mobius::constant(value));
        }
        let scale = if gamma.is_zero() { &delta } else { &gamma };
        let inv = scale.inv()?;
        Ok(Mobius {
            alpha: &alpha * &inv,
            beta: &beta * &inv,
            gamma: &gamma * &inv,
            delta: &delta * &inv,
        })
    }

    pub fn identity() -> Self {
        Mobius {
            alpha: RatFunc::one(),
            beta: RatFunc::zero(),
            gamma: RatFunc::zero(),
            delta: RatFunc::one(),
        }
    }

    pub fn constant(value: RatFunc) -> Self {
        Mobius {
            alpha: RatFunc::zero(),
            beta: value,
            gamma: RatFunc::zero(),
            delta: RatFunc::one(),
        }
    }

    pub fn coefficients(&self) -> [&RatFunc; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn is_constant(&self) -> bool {
        self.alpha.is_zero() && self.gamma.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity()
    }

    /// Projective evaluation; total on ℙ¹.
    pub fn eval(&self, s: &ProjValue) -> ProjValue {
        if self.is_constant() {
            return ProjValue::Finite(self.beta.clone());
        }
        let (num, den) = match s {
            ProjValue::Infinity => (self.alpha.clone(), self.gamma.clone()),
            ProjValue::Finite(v) => (
                &(&self.alpha * v) + &self.beta,
                &(&self.gamma * v) + &self.delta,
            ),
        };
        ProjValue::from_pair(num, den).expect("non-degenerate map never yields (0, 0)")
    }

    /// The inverse map. Fails on constant maps.
    pub fn inverse(&self) -> Result<Mobius, FieldError> {
        if self.is_constant() {
            return Err(FieldError::ImproperSolve);
        }
        Mobius::new(
            self.delta.clone(),
            -&self.beta,
            -&self.gamma,
            self.alpha.clone(),
        )
    }

    /// The unique `s` with `self(s) = target`.
    ///
    /// Returns `Ok(None)` when the map is constant and misses `target`, and
    /// [`FieldError::ImproperSolve`] when it is constantly equal to `target`.
    pub fn solve(&self, target: &ProjValue) -> Result<Option<ProjValue>, FieldError> {
        if self.is_constant() {
            return if ProjValue::Finite(self.beta.clone()) == *target {
                Err(FieldError::ImproperSolve)
            } else {
                Ok(None)
            };
        }
        Ok(Some(self.inverse()?.eval(target)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        if self.is_constant() {
            return self.clone();
        }
        let [a, b, c, d] = self.coefficients();
        let [e, f, g, h] = other.coefficients();
        Mobius::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("composition of valid maps")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RatFunc {
        RatFunc::var(s)
    }

    /// `(b1 s − b1 b2)/(s − b1 b2)`
    fn c2_map() -> Mobius {
        let (b1, b2) = (v("b1"), v("b2"));
        let b1b2 = &b1 * &b2;
        Mobius::new(b1, -&b1b2, RatFunc::one(), -&b1b2).unwrap()
    }

    #[test]
    fn eval_at_infinity_is_leading_ratio() {
        assert_eq!(
            c2_map().eval(&ProjValue::Infinity),
            ProjValue::Finite(v("b1"))
        );
    }

    #[test]
    fn eval_at_zero() {
        let z = ProjValue::Finite(RatFunc::zero());
        assert!(c2_map().eval(&z).is_one());
    }

    #[test]
    fn solve_zero_and_infinity() {
        let m = c2_map();
        let zero = ProjValue::Finite(RatFunc::zero());
        assert_eq!(m.solve(&zero).unwrap(), Some(ProjValue::Finite(v("b2"))));
        assert_eq!(
            m.solve(&ProjValue::Infinity).unwrap(),
            Some(ProjValue::Finite(&v("b1") * &v("b2")))
        );
    }

    #[test]
    fn constant_maps() {
        let five = RatFunc::from_int(5);
        let m = Mobius::constant(five.clone());
        assert_eq!(
            m.eval(&ProjValue::Infinity),
            ProjValue::Finite(five.clone())
        );
        assert_eq!(
            m.eval(&ProjValue::Finite(v("q"))),
            ProjValue::Finite(five.clone())
        );
        assert_eq!(m.solve(&ProjValue::Finite(RatFunc::zero())), Ok(None));
        assert_eq!(
            m.solve(&ProjValue::Finite(five)),
            Err(FieldError::ImproperSolve)
        );
        // det = 0 collapses to the canonical constant form
        let d = Mobius::new(v("a"), v("a"), RatFunc::one(), RatFunc::one()).unwrap();
        assert_eq!(d, Mobius::constant(v("a")));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let m = c2_map();
        assert!(m.compose(&m.inverse().unwrap()).is_identity());
        assert!(m.inverse().unwrap().compose(&m).is_identity());
    }
}
