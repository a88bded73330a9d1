use std::fmt;

use crate::field::{Mobius, ProjValue, RatFunc};
use crate::perm::Permutation;

use super::CycleError;

/// Face values of a box coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FaceValue {
    Zero,
    Infinity,
}

impl FaceValue {
    pub const BOTH: [FaceValue; 2] = [FaceValue::Zero, FaceValue::Infinity];

    pub fn value(self) -> ProjValue {
        match self {
            FaceValue::Zero => ProjValue::Finite(RatFunc::zero()),
            FaceValue::Infinity => ProjValue::Infinity,
        }
    }
}

impl fmt::Display for FaceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceValue::Zero => write!(f, "0"),
            FaceValue::Infinity => write!(f, "inf"),
        }
    }
}

fn on_face(v: &ProjValue) -> bool {
    v.is_zero() || v.is_infinite()
}

/// A closed point `(a₁,…,a_e; t₁,…,t_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PointCycle {
    a: Vec<RatFunc>,
    b: Vec<ProjValue>,
}

impl PointCycle {
    pub fn new(a: Vec<RatFunc>, b: Vec<ProjValue>) -> Self {
        PointCycle { a, b }
    }

    /// A point with finite box coordinates.
    pub fn finite(a: Vec<RatFunc>, b: Vec<RatFunc>) -> Self {
        PointCycle {
            a,
            b: b.into_iter().map(ProjValue::Finite).collect(),
        }
    }

    pub fn affine(&self) -> &[RatFunc] {
        &self.a
    }

    pub fn coords(&self) -> &[ProjValue] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }
}

/// A box coordinate of a curve: constant, or a Möbius map of the parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Coord {
    Const(ProjValue),
    Map(Mobius),
}

impl Coord {
    fn from_map(m: Mobius) -> Coord {
        if m.is_constant() {
            Coord::Const(m.eval(&ProjValue::Infinity))
        } else {
            Coord::Map(m)
        }
    }

    pub fn eval(&self, s: &ProjValue) -> ProjValue {
        match self {
            Coord::Const(v) => v.clone(),
            Coord::Map(m) => m.eval(s),
        }
    }
}

/// The image of `s ↦ (a; c₁(s),…,c_n(s))` for `s ∈ ℙ¹`, with constant `a`.
///
/// Canonical form: the first non-constant slot is the identity map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MobiusCurve {
    a: Vec<RatFunc>,
    slots: Vec<Coord>,
}

impl MobiusCurve {
    pub fn new(a: Vec<RatFunc>, slots: Vec<Coord>) -> Result<Self, CycleError> {
        let slots: Vec<Coord> = slots
            .into_iter()
            .map(|c| match c {
                Coord::Map(m) => Coord::from_map(m),
                c => c,
            })
            .collect();
        let Some(first) = slots.iter().find_map(|c| match c {
            Coord::Map(m) => Some(m.clone()),
            Coord::Const(_) => None,
        }) else {
            return Err(CycleError::NotACurve);
        };
        let inv = first.inverse()?;
        let slots = slots
            .into_iter()
            .map(|c| match c {
                Coord::Map(m) => Coord::from_map(m.compose(&inv)),
                c => c,
            })
            .collect();
        Ok(MobiusCurve { a, slots })
    }

    pub fn affine(&self) -> &[RatFunc] {
        &self.a
    }

    pub fn slots(&self) -> &[Coord] {
        &self.slots
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Point(PointCycle),
    Curve(MobiusCurve),
}

/// Why a term fails to be admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inadmissible {
    /// An affine coordinate is zero; the modulus condition is not checked there.
    ZeroAffine { index: usize },
    /// A box coordinate equals 1, outside □.
    OutsideBox { slot: usize },
    /// A constant box coordinate lies on a face.
    OnFace { slot: usize, value: FaceValue },
    /// Slot `slot` meets the face `value` where slot `other` is also 0 or ∞.
    DeepFace {
        slot: usize,
        value: FaceValue,
        other: usize,
    },
}

impl fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inadmissible::ZeroAffine { index } => {
                write!(
                    f,
                    "affine coordinate {} is 0: modulus check unsupported/violated",
                    index + 1
                )
            }
            Inadmissible::OutsideBox { slot } => write!(f, "box coordinate {slot} is 1: outside □"),
            Inadmissible::OnFace { slot, value } => {
                write!(f, "box coordinate {slot} lies on the face {value}")
            }
            Inadmissible::DeepFace { slot, value, other } => write!(
                f,
                "meeting t{slot} = {value} also puts t{other} on a face: improper intersection"
            ),
        }
    }
}

impl Term {
    pub fn n(&self) -> usize {
        match self {
            Term::Point(p) => p.n(),
            Term::Curve(c) => c.n(),
        }
    }

    pub fn affine(&self) -> &[RatFunc] {
        match self {
            Term::Point(p) => &p.a,
            Term::Curve(c) => &c.a,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Term::Point(_))
    }

    /// Box coordinates as curve slots; points become all-constant.
    fn slot_coords(&self) -> Vec<Coord> {
        match self {
            Term::Point(p) => p.b.iter().cloned().map(Coord::Const).collect(),
            Term::Curve(c) => c.slots.clone(),
        }
    }

    fn rebuild(a: Vec<RatFunc>, slots: Vec<Coord>) -> Result<Term, CycleError> {
        if slots.iter().any(|c| matches!(c, Coord::Map(_))) {
            Ok(Term::Curve(MobiusCurve::new(a, slots)?))
        } else {
            let b = slots
                .into_iter()
                .map(|c| match c {
                    Coord::Const(v) => v,
                    Coord::Map(_) => unreachable!(),
                })
                .collect();
            Ok(Term::Point(PointCycle { a, b }))
        }
    }

    pub fn check_admissible(&self) -> Result<(), Inadmissible> {
        if let Some(index) = self.affine().iter().position(RatFunc::is_zero) {
            return Err(Inadmissible::ZeroAffine { index });
        }
        let slots = self.slot_coords();
        for (k, c) in slots.iter().enumerate() {
            if let Coord::Const(v) = c {
                if v.is_one() {
                    return Err(Inadmissible::OutsideBox { slot: k + 1 });
                }
                for value in FaceValue::BOTH {
                    if *v == value.value() {
                        return Err(Inadmissible::OnFace { slot: k + 1, value });
                    }
                }
            }
        }
        for (k, c) in slots.iter().enumerate() {
            let Coord::Map(m) = c else { continue };
            for value in FaceValue::BOTH {
                let s = m
                    .solve(&value.value())
                    .expect("non-constant map")
                    .expect("bijective on ℙ¹");
                for (l, other) in slots.iter().enumerate() {
                    if l != k && on_face(&other.eval(&s)) {
                        return Err(Inadmissible::DeepFace {
                            slot: k + 1,
                            value,
                            other: l + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    /// `∂ᵢʲ` of a single term, `i` 1-based. `None` is the zero cycle.
    pub fn face(&self, i: usize, j: FaceValue) -> Result<Option<PointCycle>, CycleError> {
        let target = j.value();
        match self {
            Term::Point(p) => {
                if p.b[i - 1] == target {
                    Err(CycleError::ImproperIntersection(format!(
                        "point lies on the face t{i} = {j}"
                    )))
                } else {
                    Ok(None)
                }
            }
            Term::Curve(c) => match &c.slots[i - 1] {
                Coord::Const(v) if *v == target => Err(CycleError::ImproperIntersection(format!(
                    "curve lies inside the face t{i} = {j}"
                ))),
                Coord::Const(_) => Ok(None),
                Coord::Map(m) => {
                    let s = m
                        .solve(&target)?
                        .expect("non-constant map hits every value");
                    let b: Vec<ProjValue> = c
                        .slots
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i - 1)
                        .map(|(_, coord)| coord.eval(&s))
                        .collect();
                    if b.iter().any(ProjValue::is_one) {
                        return Ok(None);
                    }
                    if let Some(k) = b.iter().position(on_face) {
                        return Err(CycleError::ImproperIntersection(format!(
                            "face t{i} = {j} meets coordinate {} = {}",
                            k + 1,
                            b[k]
                        )));
                    }
                    Ok(Some(PointCycle { a: c.a.clone(), b }))
                }
            },
        }
    }

    /// `δ_k`: inserts the constant `1/a` at slot `k` (1-based). `None` when `1/a = 1`.
    pub fn insert_inverse(&self, k: usize) -> Result<Option<Term>, CycleError> {
        let [a] = self.affine() else {
            return Err(CycleError::EmbeddingDimension {
                expected: 1,
                found: self.affine().len(),
            });
        };
        let inv = a.inv()?;
        if inv.is_one() {
            return Ok(None);
        }
        let mut slots = self.slot_coords();
        slots.insert(k - 1, Coord::Const(ProjValue::Finite(inv)));
        Term::rebuild(self.affine().to_vec(), slots).map(Some)
    }

    /// `σ · (a; t₁,…,t_n) = (a; t_{σ⁻¹(1)},…,t_{σ⁻¹(n)})`.
    pub fn act(&self, sigma: &Permutation) -> Result<Term, CycleError> {
        let slots = sigma.act(&self.slot_coords())?;
        Term::rebuild(self.affine().to_vec(), slots)
    }

    /// Juxtaposition `(a; t) × (a'; t') = (a, a'; t, t')`.
    pub fn concat(&self, other: &Term) -> Result<Term, CycleError> {
        if !self.is_point() && !other.is_point() {
            return Err(CycleError::BothCurves);
        }
        let mut a = self.affine().to_vec();
        a.extend_from_slice(other.affine());
        let mut slots = self.slot_coords();
        slots.extend(other.slot_coords());
        Term::rebuild(a, slots)
    }

    /// Replaces the affine coordinates.
    pub fn with_affine(&self, a: Vec<RatFunc>) -> Term {
        match self {
            Term::Point(p) => Term::Point(PointCycle { a, b: p.b.clone() }),
            Term::Curve(c) => Term::Curve(MobiusCurve {
                a,
                slots: c.slots.clone(),
            }),
        }
    }

    /// Prefixes curve slots to this term's slots; used to build `C × (t₁,…,t_n)`.
    pub(crate) fn prepend_slots(
        &self,
        a: Vec<RatFunc>,
        head: Vec<Coord>,
    ) -> Result<Term, CycleError> {
        let mut slots = head;
        slots.extend(self.slot_coords());
        Term::rebuild(a, slots)
    }

    /// Permutes slot *groups*: `groups` partitions the slots into consecutive runs
    /// and `nu` acts on the runs as objects.
    pub(crate) fn act_on_groups(
        &self,
        nu: &Permutation,
        groups: &[usize],
    ) -> Result<Term, CycleError> {
        let slots = self.slot_coords();
        let mut runs = Vec::with_capacity(groups.len());
        let mut start = 0;
        for &g in groups {
            runs.push(slots[start..start + g].to_vec());
            start += g;
        }
        let moved = nu.act(&runs)?;
        Term::rebuild(
            self.affine().to_vec(),
            moved.into_iter().flatten().collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RatFunc {
        RatFunc::var(s)
    }

    fn fin(r: RatFunc) -> ProjValue {
        ProjValue::Finite(r)
    }

    #[test]
    fn point_admissibility() {
        let p = Term::Point(PointCycle::finite(vec![v("x")], vec![v("t1")]));
        assert!(p.is_admissible());
        let one = Term::Point(PointCycle::finite(vec![v("x")], vec![RatFunc::one()]));
        assert_eq!(
            one.check_admissible(),
            Err(Inadmissible::OutsideBox { slot: 1 })
        );
        let z = Term::Point(PointCycle::finite(vec![RatFunc::zero()], vec![v("t")]));
        assert!(z
            .check_admissible()
            .unwrap_err()
            .to_string()
            .contains("modulus"));
    }

    #[test]
    fn curve_canonical_form() {
        // (2s + 1, s) reparametrizes to (s, (s - 1)/2)
        let m = Mobius::new(
            RatFunc::from_int(2),
            RatFunc::one(),
            RatFunc::zero(),
            RatFunc::one(),
        )
        .unwrap();
        let c = MobiusCurve::new(
            vec![v("x")],
            vec![Coord::Map(m), Coord::Map(Mobius::identity())],
        )
        .unwrap();
        assert_eq!(c.slots()[0], Coord::Map(Mobius::identity()));
        let half = RatFunc::constant(crate::field::Rational::new(1.into(), 2.into()));
        let expect = Mobius::new(half.clone(), -&half, RatFunc::zero(), RatFunc::one()).unwrap();
        assert_eq!(c.slots()[1], Coord::Map(expect));
    }

    #[test]
    fn constant_only_curve_is_rejected() {
        let r = MobiusCurve::new(vec![v("x")], vec![Coord::Const(fin(v("t")))]);
        assert!(matches!(r, Err(CycleError::NotACurve)));
    }

    #[test]
    fn deep_face_detected() {
        // (s, s): meets t1 = 0 exactly where t2 = 0
        let c = Term::Curve(
            MobiusCurve::new(
                vec![v("x")],
                vec![
                    Coord::Map(Mobius::identity()),
                    Coord::Map(Mobius::identity()),
                ],
            )
            .unwrap(),
        );
        assert!(matches!(
            c.check_admissible(),
            Err(Inadmissible::DeepFace { .. })
        ));
    }
}
