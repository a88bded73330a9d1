use std::collections::BTreeMap;

use crate::perm::Permutation;

use super::term::{FaceValue, Term};
use super::{CycleError, ModulusRing, PointCycle, SlotSpace};

/// An integer combination of points and curves in one `𝔸^e × □^n`.
///
/// Equality ignores the space of the zero cycle and the decomposability flag.
#[derive(Clone, Debug)]
pub struct FormalCycle {
    space: SlotSpace,
    terms: BTreeMap<Term, i64>,
    decomposable: bool,
}

impl PartialEq for FormalCycle {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.terms.is_empty() || self.space == other.space)
    }
}

impl Eq for FormalCycle {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMode {
    /// `Σ (−1)^i (∂ᵢ⁰ − ∂ᵢ^∞)`
    Full,
    /// `∂′ = ∂ₙ⁰`
    Reduced,
}

impl FormalCycle {
    pub fn zero(space: SlotSpace) -> Self {
        FormalCycle {
            space,
            terms: BTreeMap::new(),
            decomposable: false,
        }
    }

    pub fn from_term(space: SlotSpace, term: Term, coeff: i64) -> Result<Self, CycleError> {
        let mut c = FormalCycle::zero(space);
        c.add_term(term, coeff)?;
        Ok(c)
    }

    pub fn point(ring: ModulusRing, p: PointCycle) -> Result<Self, CycleError> {
        let n = p.n();
        Self::from_term(SlotSpace::new(ring, n), Term::Point(p), 1)
    }

    pub fn space(&self) -> &SlotSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn ring(&self) -> &ModulusRing {
        &self.space.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposable
    }

    pub fn mark_decomposable(mut self) -> Self {
        self.decomposable = true;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn has_curves(&self) -> bool {
        self.terms.keys().any(|t| !t.is_point())
    }

    pub fn add_term(&mut self, term: Term, coeff: i64) -> Result<(), CycleError> {
        if term.n() != self.space.n || term.affine().len() != self.space.e() {
            return Err(CycleError::SpaceMismatch(format!(
                "term with e = {}, n = {} in a space with e = {}, n = {}",
                term.affine().len(),
                term.n(),
                self.space.e(),
                self.space.n
            )));
        }
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(term).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    /// `self + k·other`; a zero summand may live in any space.
    pub fn add_scaled(&self, other: &FormalCycle, k: i64) -> Result<FormalCycle, CycleError> {
        if other.is_zero() || k == 0 {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(k));
        }
        if self.space != other.space {
            return Err(CycleError::SpaceMismatch(format!(
                "adding cycles over n = {} and n = {}",
                self.space.n, other.space.n
            )));
        }
        let mut out = self.clone();
        out.decomposable = self.decomposable && other.decomposable;
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c * k)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &FormalCycle) -> Result<FormalCycle, CycleError> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &FormalCycle) -> Result<FormalCycle, CycleError> {
        self.add_scaled(other, -1)
    }

    pub fn scale(&self, k: i64) -> FormalCycle {
        if k == 0 {
            return FormalCycle::zero(self.space.clone());
        }
        FormalCycle {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
            decomposable: self.decomposable,
        }
    }

    pub fn neg(&self) -> FormalCycle {
        self.scale(-1)
    }

    /// Applies a term-wise map producing terms in `space`.
    pub(crate) fn map_terms<F>(&self, space: SlotSpace, mut f: F) -> Result<FormalCycle, CycleError>
    where
        F: FnMut(&Term) -> Result<Vec<(Term, i64)>, CycleError>,
    {
        let mut out = FormalCycle::zero(space);
        for (t, &c) in &self.terms {
            for (u, k) in f(t)? {
                out.add_term(u, c * k)?;
            }
        }
        Ok(out)
    }

    /// First term that fails admissibility, with its diagnostic.
    pub fn check_admissible(&self) -> Result<(), CycleError> {
        for t in self.terms.keys() {
            t.check_admissible()
                .map_err(|why| CycleError::NotAdmissible(why.to_string()))?;
        }
        Ok(())
    }

    fn check_slot(&self, i: usize, max: usize) -> Result<(), CycleError> {
        if i == 0 || i > max {
            Err(CycleError::SlotOutOfRange { index: i, max })
        } else {
            Ok(())
        }
    }

    /// `∂ᵢʲ`, mapping `□^n` to `□^{n−1}`.
    pub fn face(&self, i: usize, j: FaceValue) -> Result<FormalCycle, CycleError> {
        self.check_slot(i, self.n())?;
        self.map_terms(self.space.with_n(self.n() - 1), |t| {
            Ok(t.face(i, j)?
                .map(|p| vec![(Term::Point(p), 1)])
                .unwrap_or_default())
        })
    }

    pub fn boundary(&self, mode: BoundaryMode) -> Result<FormalCycle, CycleError> {
        let n = self.n();
        if n == 0 {
            return Ok(FormalCycle::zero(self.space.clone()));
        }
        match mode {
            BoundaryMode::Reduced => self.face(n, FaceValue::Zero),
            BoundaryMode::Full => {
                let mut acc = FormalCycle::zero(self.space.with_n(n - 1));
                for i in 1..=n {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    acc = acc
                        .add_scaled(&self.face(i, FaceValue::Zero)?, sign)?
                        .add_scaled(&self.face(i, FaceValue::Infinity)?, -sign)?;
                }
                Ok(acc)
            }
        }
    }

    /// `δ_k` for `1 ≤ k ≤ n + 1`.
    pub fn delta_k(&self, k: usize) -> Result<FormalCycle, CycleError> {
        self.require_e1()?;
        self.check_slot(k, self.n() + 1)?;
        self.map_terms(self.space.with_n(self.n() + 1), |t| {
            Ok(t.insert_inverse(k)?
                .map(|u| vec![(u, 1)])
                .unwrap_or_default())
        })
    }

    /// `δ = Σ_{k=1}^{n+1} (−1)^k δ_k`.
    pub fn delta(&self) -> Result<FormalCycle, CycleError> {
        self.require_e1()?;
        let mut acc = FormalCycle::zero(self.space.with_n(self.n() + 1));
        for k in 1..=self.n() + 1 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            acc = acc.add_scaled(&self.delta_k(k)?, sign)?;
        }
        Ok(acc)
    }

    pub(crate) fn require_e1(&self) -> Result<(), CycleError> {
        if self.space.e() == 1 {
            Ok(())
        } else {
            Err(CycleError::EmbeddingDimension {
                expected: 1,
                found: self.space.e(),
            })
        }
    }

    /// Membership in the reduced subcomplex: `∂ᵢʲ = 0` for `i < n` and `∂ₙ^∞ = 0`.
    pub fn is_reduced(&self) -> Result<bool, CycleError> {
        let n = self.n();
        for i in 1..n {
            for j in FaceValue::BOTH {
                if !self.face(i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        if n > 0 && !self.face(n, FaceValue::Infinity)?.is_zero() {
            return Ok(false);
        }
        Ok(true)
    }

    /// `σ · c`, permuting box slots.
    pub fn act(&self, sigma: &Permutation) -> Result<FormalCycle, CycleError> {
        if sigma.degree() != self.n() {
            return Err(CycleError::Perm(crate::perm::PermError::DegreeMismatch {
                expected: self.n(),
                found: sigma.degree(),
            }));
        }
        let mut out = self.map_terms(self.space.clone(), |t| Ok(vec![(t.act(sigma)?, 1)]))?;
        out.decomposable = self.decomposable;
        Ok(out)
    }

    /// Moves the first `e1` affine coordinates behind the others.
    pub fn rotate_affine(&self, e1: usize) -> Result<FormalCycle, CycleError> {
        let space = SlotSpace::new(self.space.ring.rotate(e1), self.n());
        let mut out = self.map_terms(space, |t| {
            let mut a = t.affine().to_vec();
            let k = e1.min(a.len());
            a.rotate_left(k);
            Ok(vec![(t.with_affine(a), 1)])
        })?;
        out.decomposable = self.decomposable;
        Ok(out)
    }
}
