//! Products of cycles: concatenation, shuffles, the wedge, Totaro's curve and
//! the cyclic shuffle.

use crate::field::{Mobius, ProjValue, RatFunc};
use crate::perm::{enumerate_shuffles, Permutation};

use super::term::{Coord, Term};
use super::{BoundaryMode, CycleError, FormalCycle, ModulusRing, SlotSpace};

/// `c₁ × c₂` over `A₁ ⊗ A₂`. At most one factor may contain curves.
pub fn concat(c1: &FormalCycle, c2: &FormalCycle) -> Result<FormalCycle, CycleError> {
    if c1.has_curves() && c2.has_curves() {
        return Err(CycleError::BothCurves);
    }
    let space = SlotSpace::new(c1.ring().tensor(c2.ring()), c1.n() + c2.n());
    let mut out = FormalCycle::zero(space);
    for (t1, k1) in c1.terms() {
        for (t2, k2) in c2.terms() {
            out.add_term(t1.concat(t2)?, k1 * k2)?;
        }
    }
    Ok(out.mark_decomposable())
}

/// `Σ_{σ ∈ Perm(r₁, r₂)} sgn(σ) σ · (c₁ × c₂)`.
pub fn shuffle_product(c1: &FormalCycle, c2: &FormalCycle) -> Result<FormalCycle, CycleError> {
    let prod = concat(c1, c2)?;
    let mut out = FormalCycle::zero(prod.space().clone());
    for sigma in enumerate_shuffles(&[c1.n(), c2.n()]) {
        out = out.add_scaled(&prod.act(&sigma)?, sigma.sign())?;
    }
    Ok(out.mark_decomposable())
}

/// `μ_*`: `(x, y; t) ↦ (xy; t)` into `min{A₁, A₂}`. Requires a decomposable input.
pub fn mu_push(c: &FormalCycle) -> Result<FormalCycle, CycleError> {
    if !c.is_decomposable() && !c.is_zero() {
        return Err(CycleError::NotDecomposable);
    }
    let ring = c.ring().min_of_factors()?;
    c.map_terms(SlotSpace::new(ring, c.n()), |t| {
        let [x, y] = t.affine() else {
            unreachable!("e = 2 checked")
        };
        let xy = x * y;
        if xy.is_zero() {
            return Err(CycleError::NotAdmissible(
                "product affine coordinate is 0".into(),
            ));
        }
        Ok(vec![(t.with_affine(vec![xy]), 1)])
    })
}

/// `c₁ ∧ c₂ = μ_*(c₁ ×_sh c₂)`.
pub fn wedge(c1: &FormalCycle, c2: &FormalCycle) -> Result<FormalCycle, CycleError> {
    c1.require_e1()?;
    c2.require_e1()?;
    mu_push(&shuffle_product(c1, c2)?)
}

/// The slot map `s ↦ (b₁ s − b₁b₂)/(s − b₁b₂)`.
pub fn totaro_map(b1: &RatFunc, b2: &RatFunc) -> Result<Mobius, CycleError> {
    let b1b2 = b1 * b2;
    Ok(Mobius::new(b1.clone(), -&b1b2, RatFunc::one(), -b1b2)?)
}

/// `C₂^{a,(b₁,b₂)} × (extras)`: the curve `(1/a; s, (b₁s − b₁b₂)/(s − b₁b₂), extras…)`,
/// or zero when `a = 0`.
pub fn totaro_c2(
    ring: &ModulusRing,
    a: &RatFunc,
    b1: &RatFunc,
    b2: &RatFunc,
    extras: &[ProjValue],
) -> Result<FormalCycle, CycleError> {
    if b1.is_zero() || b2.is_zero() {
        return Err(CycleError::ZeroParameter);
    }
    let space = SlotSpace::new(ring.clone(), 2 + extras.len());
    if a.is_zero() {
        return Ok(FormalCycle::zero(space));
    }
    let mut slots = vec![
        Coord::Map(Mobius::identity()),
        Coord::Map(totaro_map(b1, b2)?),
    ];
    slots.extend(extras.iter().cloned().map(Coord::Const));
    let curve = super::MobiusCurve::new(vec![a.inv()?], slots)?;
    FormalCycle::from_term(space, Term::Curve(curve), 1)
}

/// A reduced combination of Totaro curves placed after constant `prefix` slots:
///
/// `C^{a,(p₁,q₁/p₁)} − C^{a,(p₁,q₂/p₁)} − C^{a,(p₂,q₁/p₂)} + C^{a,(p₂,q₂/p₂)}`.
///
/// Its faces at `∞` cancel in pairs, leaving
/// `∂′ = (1/a; prefix, q₁/p₁) − (…, q₂/p₁) − (…, q₁/p₂) + (…, q₂/p₂)`.
pub fn reduced_c2_combination(
    ring: &ModulusRing,
    a: &RatFunc,
    p: [&RatFunc; 2],
    q: [&RatFunc; 2],
    prefix: &[ProjValue],
) -> Result<FormalCycle, CycleError> {
    let mut acc: Option<FormalCycle> = None;
    for (pi, pv) in p.iter().enumerate() {
        for (qi, qv) in q.iter().enumerate() {
            let sign = if pi == qi { 1 } else { -1 };
            let c2 = totaro_c2(ring, a, pv, &qv.checked_div(pv)?, &[])?;
            let term = attach_prefix(ring, prefix, &c2)?;
            acc = Some(match acc {
                None => term.scale(sign),
                Some(x) => x.add_scaled(&term, sign)?,
            });
        }
    }
    Ok(acc.expect("four summands"))
}

fn attach_prefix(
    ring: &ModulusRing,
    coords: &[ProjValue],
    c: &FormalCycle,
) -> Result<FormalCycle, CycleError> {
    let space = SlotSpace::new(ring.clone(), coords.len() + c.n());
    c.map_terms(space, |t| {
        let mut slots: Vec<Coord> = coords.iter().cloned().map(Coord::Const).collect();
        slots.extend(match t {
            Term::Curve(cv) => cv.slots().to_vec(),
            Term::Point(p) => p.coords().iter().cloned().map(Coord::Const).collect(),
        });
        let curve = super::MobiusCurve::new(t.affine().to_vec(), slots)?;
        Ok(vec![(Term::Curve(curve), 1)])
    })
}

/// `(x; t…) ×′ (y; t′…) = C₂^{1/(xy),(1/x,1/y)} × (t…, t′…)` over `min{A₁, A₂}`.
pub fn extra_degenerate_concat(
    c1: &FormalCycle,
    c2: &FormalCycle,
) -> Result<FormalCycle, CycleError> {
    if c1.has_curves() || c2.has_curves() {
        return Err(CycleError::CurveInput);
    }
    c1.require_e1()?;
    c2.require_e1()?;
    let ring = c1.ring().min_ring(c2.ring())?;
    let space = SlotSpace::new(ring, c1.n() + c2.n() + 2);
    let mut out = FormalCycle::zero(space);
    for (t1, k1) in c1.terms() {
        for (t2, k2) in c2.terms() {
            let x = &t1.affine()[0];
            let y = &t2.affine()[0];
            let map = totaro_map(&x.inv()?, &y.inv()?)?;
            let joined = t1.concat(t2)?;
            let head = vec![Coord::Map(Mobius::identity()), Coord::Map(map)];
            out.add_term(joined.prepend_slots(vec![x * y], head)?, k1 * k2)?;
        }
    }
    Ok(out)
}

/// Sign convention for the block action of `Perm(1, r₁, r₂)` in `∧′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSign {
    /// Sign of the expanded permutation of the `n + 2` slots: `sgn(ν)·(−1)^{ν(1)−1}`.
    Expanded,
    /// `sgn(ν)` of the permutation of the `n + 1` objects.
    Object,
}

/// `Σ_{ν ∈ Perm(1, r₁, r₂)} ± ν · (c₁ ×′ c₂)`, with `ν` moving the block of slots
/// 1–2 as a single object.
pub fn cyclic_shuffle_with(
    c1: &FormalCycle,
    c2: &FormalCycle,
    sign: BlockSign,
) -> Result<FormalCycle, CycleError> {
    let base = extra_degenerate_concat(c1, c2)?;
    let n = c1.n() + c2.n();
    let mut groups = vec![2];
    groups.extend(std::iter::repeat_n(1, n));
    let mut out = FormalCycle::zero(base.space().clone());
    for nu in enumerate_shuffles(&[1, c1.n(), c2.n()]) {
        let s = match sign {
            BlockSign::Object => nu.sign(),
            BlockSign::Expanded => nu.sign() * if nu.apply(1) % 2 == 1 { 1 } else { -1 },
        };
        let moved = base.map_terms(base.space().clone(), |t| {
            Ok(vec![(t.act_on_groups(&nu, &groups)?, 1)])
        })?;
        out = out.add_scaled(&moved, s)?;
    }
    Ok(out)
}

pub fn cyclic_shuffle(c1: &FormalCycle, c2: &FormalCycle) -> Result<FormalCycle, CycleError> {
    cyclic_shuffle_with(c1, c2, BlockSign::Expanded)
}

/// `δ` rewritten as `−Σ_{τ ∈ Perm(1, n)} sgn(τ) τ · (x, 1/x, t₁, …, t_n)`.
pub fn delta_via_shuffles(c: &FormalCycle) -> Result<FormalCycle, CycleError> {
    let front = c.delta_k(1)?;
    let mut out = FormalCycle::zero(front.space().clone());
    for tau in enumerate_shuffles(&[1, c.n()]) {
        out = out.add_scaled(&front.act(&tau)?, -tau.sign())?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub r1: usize,
    pub r2: usize,
    /// `δ(ξ∧η) − (δξ)∧η − (−1)^{r₁} ξ∧(δη)`
    pub lhs: FormalCycle,
    /// `−∂(ξ ∧′ η)`
    pub rhs: FormalCycle,
    /// `ε` with `lhs = ε·rhs`; `None` when no sign works, or when both sides vanish.
    pub global_sign: Option<i64>,
    pub equal_up_to_sign: bool,
}

pub fn connes_derivation_check(
    xi: &FormalCycle,
    eta: &FormalCycle,
) -> Result<DerivationReport, CycleError> {
    connes_derivation_check_with(xi, eta, BlockSign::Expanded)
}

pub fn connes_derivation_check_with(
    xi: &FormalCycle,
    eta: &FormalCycle,
    sign: BlockSign,
) -> Result<DerivationReport, CycleError> {
    let r1 = xi.n();
    let r2 = eta.n();
    let parity = if r1.is_multiple_of(2) { 1 } else { -1 };
    let lhs = wedge(xi, eta)?
        .delta()?
        .sub(&wedge(&xi.delta()?, eta)?)?
        .add_scaled(&wedge(xi, &eta.delta()?)?, -parity)?;
    let rhs = cyclic_shuffle_with(xi, eta, sign)?
        .boundary(BoundaryMode::Full)?
        .neg();
    let (global_sign, equal_up_to_sign) = if lhs.is_zero() && rhs.is_zero() {
        (None, true)
    } else if lhs == rhs {
        (Some(1), true)
    } else if lhs == rhs.neg() {
        (Some(-1), true)
    } else {
        (None, false)
    };
    Ok(DerivationReport {
        r1,
        r2,
        lhs,
        rhs,
        global_sign,
        equal_up_to_sign,
    })
}

/// Graded commutativity compared in one ambient space:
/// `x ×_sh y = (−1)^{r₁r₂} · swap(y ×_sh x)`, where `swap` exchanges the affine factors.
pub fn shuffle_commutes(x: &FormalCycle, y: &FormalCycle) -> Result<bool, CycleError> {
    let lhs = shuffle_product(x, y)?;
    let swapped = shuffle_product(y, x)?.rotate_affine(y.space().e())?;
    let sign = if (x.n() * y.n()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(lhs == swapped.scale(sign))
}

/// The block permutation `ν` realized on slots, for reporting.
pub fn expand_block(nu: &Permutation) -> Permutation {
    let objects: Vec<Vec<usize>> = std::iter::once(vec![1, 2])
        .chain((3..=nu.degree() + 1).map(|k| vec![k]))
        .collect();
    let order: Vec<usize> = nu
        .act(&objects)
        .expect("degree matches")
        .into_iter()
        .flatten()
        .collect();
    // `order[p]` is the slot that lands at position p + 1
    let mut images = vec![0; order.len()];
    for (p, &slot) in order.iter().enumerate() {
        images[slot - 1] = p + 1;
    }
    Permutation::from_images(images).expect("bijective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::PointCycle;

    fn v(s: &str) -> RatFunc {
        RatFunc::var(s)
    }

    fn ring() -> ModulusRing {
        ModulusRing::dual_numbers()
    }

    fn pt(a: &str, ts: &[&str]) -> FormalCycle {
        FormalCycle::point(
            ring(),
            PointCycle::finite(vec![v(a)], ts.iter().map(|t| v(t)).collect()),
        )
        .unwrap()
    }

    fn pts(a: RatFunc, ts: Vec<RatFunc>, coeff: i64, r: &ModulusRing) -> FormalCycle {
        FormalCycle::point(r.clone(), PointCycle::finite(vec![a], ts))
            .unwrap()
            .scale(coeff)
    }

    #[test]
    fn wedge_of_bare_points() {
        let w = wedge(&pt("x", &[]), &pt("y", &[])).unwrap();
        assert_eq!(w, pts(&v("x") * &v("y"), vec![], 1, &ring()));
    }

    #[test]
    fn wedge_with_slots() {
        let xy = &v("x") * &v("y");
        let w = wedge(&pt("x", &["t1"]), &pt("y", &["s1"])).unwrap();
        let expect = pts(xy.clone(), vec![v("t1"), v("s1")], 1, &ring())
            .sub(&pts(xy.clone(), vec![v("s1"), v("t1")], 1, &ring()))
            .unwrap();
        assert_eq!(w, expect);
        let w1 = wedge(&pt("x", &["t1"]), &pt("y", &[])).unwrap();
        assert_eq!(w1, pts(xy, vec![v("t1")], 1, &ring()));
    }

    #[test]
    fn mu_push_needs_decomposable() {
        let p = FormalCycle::point(
            ring().tensor(&ring()),
            PointCycle::finite(vec![v("x"), v("y")], vec![v("t")]),
        )
        .unwrap();
        assert!(matches!(mu_push(&p), Err(CycleError::NotDecomposable)));
        let pushed = mu_push(&p.mark_decomposable()).unwrap();
        assert_eq!(pushed, pts(&v("x") * &v("y"), vec![v("t")], 1, &ring()));
    }

    #[test]
    fn wedge_lands_in_min_ring() {
        let r3 = ModulusRing::truncated(3).unwrap();
        let a = FormalCycle::point(r3, PointCycle::finite(vec![v("x")], vec![])).unwrap();
        assert_eq!(*wedge(&a, &pt("y", &[])).unwrap().ring(), ring());
    }

    #[test]
    fn totaro_zero_and_errors() {
        assert!(
            totaro_c2(&ring(), &RatFunc::zero(), &v("b1"), &v("b2"), &[])
                .unwrap()
                .is_zero()
        );
        assert!(matches!(
            totaro_c2(&ring(), &v("a"), &RatFunc::zero(), &v("b2"), &[]),
            Err(CycleError::ZeroParameter)
        ));
    }

    #[test]
    fn totaro_boundary() {
        let (a, b1, b2) = (v("a"), v("b1"), v("b2"));
        let c = totaro_c2(&ring(), &a, &b1, &b2, &[]).unwrap();
        let ai = a.inv().unwrap();
        let expect = pts(ai.clone(), vec![b1.clone()], 1, &ring())
            .add(&pts(ai.clone(), vec![b2.clone()], 1, &ring()))
            .unwrap()
            .sub(&pts(ai, vec![&b1 * &b2], 1, &ring()))
            .unwrap();
        assert_eq!(c.boundary(BoundaryMode::Full).unwrap(), expect);
        assert!(c.face(1, crate::cycles::FaceValue::Zero).unwrap().is_zero());
        assert!(!c.is_reduced().unwrap());
    }

    #[test]
    fn extra_degenerate_bare_points() {
        let (x, y) = (v("x"), v("y"));
        let got = extra_degenerate_concat(&pt("x", &[]), &pt("y", &[])).unwrap();
        let xy = &x * &y;
        let expect = totaro_c2(
            &ring(),
            &xy.inv().unwrap(),
            &x.inv().unwrap(),
            &y.inv().unwrap(),
            &[],
        )
        .unwrap();
        assert_eq!(got, expect);
        assert_eq!(
            cyclic_shuffle(&pt("x", &[]), &pt("y", &[])).unwrap(),
            expect
        );
    }

    #[test]
    fn cyclic_shuffle_term_counts() {
        assert_eq!(
            cyclic_shuffle(&pt("x", &["t1"]), &pt("y", &[]))
                .unwrap()
                .num_terms(),
            2
        );
        assert_eq!(
            cyclic_shuffle(&pt("x", &["t1"]), &pt("y", &["t2"]))
                .unwrap()
                .num_terms(),
            6
        );
    }

    #[test]
    fn expanded_sign_matches_slot_permutation() {
        for nu in enumerate_shuffles(&[1, 2, 1]) {
            let expect = nu.sign() * if nu.apply(1) % 2 == 1 { 1 } else { -1 };
            assert_eq!(expand_block(&nu).sign(), expect, "{nu}");
        }
    }

    #[test]
    fn derivation_bare_points() {
        let r = connes_derivation_check(&pt("x", &[]), &pt("y", &[])).unwrap();
        assert!(r.equal_up_to_sign);
        assert_eq!(r.global_sign, Some(-1));
    }

    #[test]
    fn object_sign_breaks_the_identity() {
        let r = connes_derivation_check_with(&pt("x", &["t1"]), &pt("y", &[]), BlockSign::Object)
            .unwrap();
        assert!(!r.equal_up_to_sign);
        let r = connes_derivation_check(&pt("x", &["t1"]), &pt("y", &[])).unwrap();
        assert_eq!(r.global_sign, Some(-1));
    }

    #[test]
    fn reduced_combination_is_reduced() {
        let r = reduced_c2_combination(
            &ring(),
            &v("a"),
            [&v("p1"), &v("p2")],
            [&v("q1"), &v("q2")],
            &[ProjValue::Finite(v("t"))],
        )
        .unwrap();
        assert_eq!(r.n(), 3);
        assert!(r.is_reduced().unwrap());
        assert_eq!(r.boundary(BoundaryMode::Reduced).unwrap().num_terms(), 4);
    }
}
