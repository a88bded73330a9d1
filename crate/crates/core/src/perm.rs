//! Symmetric groups, multi-shuffles and signed sums in ℤ[S_n].
//!
//! Permutations act on `{1, …, n}`; composition is `(σρ)(i) = σ(ρ(i))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..={0}")]
    NotBijective(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("{perm} is not a {spec}-shuffle")]
    NotAShuffle { perm: String, spec: String },
    #[error("size limit exceeded: r + s + 1 = {size} > {max}")]
    SizeLimit { size: usize, max: usize },
    #[error("malformed cycle notation: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    /// `images[j] = σ(j + 1)`, 1-based values.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::NotBijective(n));
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1 3)(2 4)`; `()` is the identity.
    pub fn from_cycles(src: &str, n: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut rest = src.trim();
        let mut seen = BTreeSet::new();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| PermError::Parse(src.to_string()))?;
            let cycle = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::Parse(src.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(PermError::PositionOutOfRange { pos: a, max: n });
                }
                if !seen.insert(a) {
                    return Err(PermError::Parse(src.to_string()));
                }
                images[a - 1] = cycle[(k + 1) % cycle.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &v)| v == j + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other.degree())?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (j, &v) in self.images.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> i64 {
        let mut visited = vec![false; self.degree()];
        let mut parity = 0;
        for start in 0..self.degree() {
            let mut len = 0;
            let mut j = start;
            while !visited[j] {
                visited[j] = true;
                j = self.images[j] - 1;
                len += 1;
            }
            if len > 0 {
                parity += len - 1;
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Block product `σ × τ`, acting as σ on `1..=n` and as τ shifted by `n` after it.
    pub fn product(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + n));
        Permutation { images }
    }

    /// True iff the permutation is increasing on each consecutive block of `parts`.
    pub fn is_shuffle(&self, parts: &[usize]) -> bool {
        if parts.iter().sum::<usize>() != self.degree() {
            return false;
        }
        let mut start = 0;
        for &p in parts {
            if self.images[start..start + p]
                .windows(2)
                .any(|w| w[0] > w[1])
            {
                return false;
            }
            start += p;
        }
        true
    }

    /// The permutation of `1..=n+1` fixing `i` and acting as σ on the complement
    /// of `i`, identified order-preservingly with `1..=n` in positions and values.
    pub fn insert_fixed(&self, i: usize) -> Result<Permutation, PermError> {
        let n = self.degree();
        if i == 0 || i > n + 1 {
            return Err(PermError::PositionOutOfRange { pos: i, max: n + 1 });
        }
        let lift = |v: usize| if v < i { v } else { v + 1 };
        let images = (1..=n + 1)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => lift(self.apply(j)),
                std::cmp::Ordering::Equal => i,
                std::cmp::Ordering::Greater => lift(self.apply(j - 1)),
            })
            .collect();
        Ok(Permutation { images })
    }

    /// Realizes `σ · (t₁, …, t_n) = (t_{σ⁻¹(1)}, …, t_{σ⁻¹(n)})`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Result<Vec<T>, PermError> {
        self.check_degree(items.len())?;
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (j, item) in items.iter().enumerate() {
            out[self.images[j] - 1] = Some(item.clone());
        }
        Ok(out.into_iter().map(|x| x.expect("bijective")).collect())
    }

    fn check_degree(&self, found: usize) -> Result<(), PermError> {
        if found == self.degree() {
            Ok(())
        } else {
            Err(PermError::DegreeMismatch {
                expected: self.degree(),
                found,
            })
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut visited = vec![false; n];
        let mut any = false;
        for start in 1..=n {
            if visited[start - 1] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut j = start;
            let mut first = true;
            while !visited[j - 1] {
                visited[j - 1] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{j}")?;
                first = false;
                j = self.apply(j);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// All `(p₁, …, p_s)`-shuffles, in lexicographic order of their image vectors.
pub fn enumerate_shuffles(parts: &[usize]) -> Vec<Permutation> {
    let n: usize = parts.iter().sum();
    let mut out = Vec::new();
    // labels[v] = block receiving value v + 1
    let mut labels = Vec::with_capacity(n);
    let mut remaining = parts.to_vec();
    fill(&mut labels, &mut remaining, n, parts, &mut out);
    out.sort();
    out
}

fn fill(
    labels: &mut Vec<usize>,
    remaining: &mut [usize],
    n: usize,
    parts: &[usize],
    out: &mut Vec<Permutation>,
) {
    if labels.len() == n {
        let mut offsets: Vec<usize> = parts
            .iter()
            .scan(0, |acc, &p| {
                let o = *acc;
                *acc += p;
                Some(o)
            })
            .collect();
        let mut images = vec![0; n];
        for (v, &b) in labels.iter().enumerate() {
            images[offsets[b]] = v + 1;
            offsets[b] += 1;
        }
        out.push(Permutation { images });
        return;
    }
    for b in 0..remaining.len() {
        if remaining[b] > 0 {
            remaining[b] -= 1;
            labels.push(b);
            fill(labels, remaining, n, parts, out);
            labels.pop();
            remaining[b] += 1;
        }
    }
}

pub fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &p in parts {
        for k in 1..=p as u128 {
            total += 1;
            acc = acc * total / k;
        }
    }
    acc
}

/// A finite ℤ-linear combination of permutations of one degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingElem {
    degree: usize,
    terms: BTreeMap<Permutation, i64>,
}

impl GroupRingElem {
    pub fn zero(degree: usize) -> Self {
        GroupRingElem {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = (Permutation, i64)>,
    {
        let mut out = GroupRingElem::zero(degree);
        for (p, c) in terms {
            out.add_term(p, c)?;
        }
        Ok(out)
    }

    /// `Σ sgn(σ) σ` over the given permutations.
    pub fn signed_sum(degree: usize, perms: &[Permutation]) -> Result<Self, PermError> {
        Self::from_terms(degree, perms.iter().map(|p| (p.clone(), p.sign())))
    }

    pub fn add_term(&mut self, p: Permutation, c: i64) -> Result<(), PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let slot = self.terms.entry(p).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return GroupRingElem::zero(self.degree);
        }
        GroupRingElem {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, &c)| (p.clone(), c * k))
                .collect(),
        }
    }

    /// Right multiplication by a single permutation.
    pub fn mul_perm(&self, p: &Permutation) -> Result<Self, PermError> {
        let mut out = GroupRingElem::zero(self.degree);
        for (q, &c) in &self.terms {
            out.add_term(q.compose(p)?, c)?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &GroupRingElem) -> Result<Self, PermError> {
        let mut out = GroupRingElem::zero(self.degree);
        for (p, &a) in &self.terms {
            for (q, &b) in &rhs.terms {
                out.add_term(p.compose(q)?, a * b)?;
            }
        }
        Ok(out)
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (p, &c) in &rhs.terms {
            out.add_term(p.clone(), c).expect("degrees agree");
        }
        out
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        self.try_mul(rhs).expect("degrees agree")
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, &c)) in self.terms.iter().enumerate() {
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiKind {
    Phi1,
    Phi2,
    Phi3,
}

impl PhiKind {
    pub const ALL: [PhiKind; 3] = [PhiKind::Phi1, PhiKind::Phi2, PhiKind::Phi3];

    /// Shuffle types of `(σ, τ)`.
    pub fn domain(self, r: usize, s: usize) -> ([usize; 2], [usize; 2]) {
        match self {
            PhiKind::Phi1 => ([r, s], [1, r + s]),
            PhiKind::Phi2 => ([r + 1, s], [1, r]),
            PhiKind::Phi3 => ([r, s + 1], [1, s]),
        }
    }
}

/// `ρ_r`: sends 1 to `r + 1` and `j` to `j − 1` for `2 ≤ j ≤ r + 1`, fixing the rest.
/// An `(r+1)`-cycle of sign `(−1)^r`.
pub fn block_rotation(r: usize, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images[0] = r + 1;
    for (j, img) in images.iter_mut().enumerate().take(r + 1).skip(1) {
        *img = j;
    }
    Permutation { images }
}

fn require_shuffle(p: &Permutation, parts: &[usize]) -> Result<(), PermError> {
    if p.is_shuffle(parts) {
        Ok(())
    } else {
        Err(PermError::NotAShuffle {
            perm: p.to_string(),
            spec: format!("{parts:?}"),
        })
    }
}

/// The bijections onto `Perm(1, r, s)`:
///
/// * φ1(σ, τ) = σ[τ(1)] ∘ τ
/// * φ2(σ, τ) = σ ∘ (τ × Id_s)
/// * φ3(σ, τ) = σ ∘ (Id_r × τ) ∘ ρ_r
pub fn phi_map(
    kind: PhiKind,
    sigma: &Permutation,
    tau: &Permutation,
    r: usize,
    s: usize,
) -> Result<Permutation, PermError> {
    let (ds, dt) = kind.domain(r, s);
    require_shuffle(sigma, &ds)?;
    require_shuffle(tau, &dt)?;
    match kind {
        PhiKind::Phi1 => sigma.insert_fixed(tau.apply(1))?.compose(tau),
        PhiKind::Phi2 => sigma.compose(&tau.product(&Permutation::identity(s))),
        PhiKind::Phi3 => sigma
            .compose(&Permutation::identity(r).product(tau))?
            .compose(&block_rotation(r, r + s + 1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub kind: PhiKind,
    pub r: usize,
    pub s: usize,
    pub domain_size: usize,
    pub expected: u128,
    pub injective: bool,
    pub onto_target: bool,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.injective && self.onto_target && self.domain_size as u128 == self.expected
    }
}

pub fn phi_bijection_check(
    kind: PhiKind,
    r: usize,
    s: usize,
) -> Result<BijectionReport, PermError> {
    let (ds, dt) = kind.domain(r, s);
    let sigmas = enumerate_shuffles(&ds);
    let taus = enumerate_shuffles(&dt);
    let mut image = BTreeSet::new();
    let mut count = 0;
    for sigma in &sigmas {
        for tau in &taus {
            image.insert(phi_map(kind, sigma, tau, r, s)?);
            count += 1;
        }
    }
    let target: BTreeSet<_> = enumerate_shuffles(&[1, r, s]).into_iter().collect();
    Ok(BijectionReport {
        kind,
        r,
        s,
        domain_size: count,
        expected: multinomial(&[1, r, s]),
        injective: image.len() == count,
        onto_target: image == target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub which: u8,
    pub r: usize,
    pub s: usize,
    pub lhs: GroupRingElem,
    pub rhs: GroupRingElem,
    pub equal: bool,
}

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Builds both sides of the three multiple-shuffle identities in `ℤ[S_{r+s+1}]`.
///
/// Identity 3 uses `τ ∈ Perm(1, s)` and the right factor `ρ_r`, without which the
/// products do not lie in `ℤ[S_{r+s+1}]`'s `(1, r, s)`-shuffles.
pub fn shuffle_lemma_check(
    which: u8,
    r: usize,
    s: usize,
    max_degree: usize,
) -> Result<LemmaReport, PermError> {
    let n = r + s + 1;
    if n > max_degree {
        return Err(PermError::SizeLimit {
            size: n,
            max: max_degree,
        });
    }
    let rhs = GroupRingElem::signed_sum(n, &enumerate_shuffles(&[1, r, s]))?;
    let lhs = match which {
        1 => {
            let mut acc = GroupRingElem::zero(n);
            for sigma in enumerate_shuffles(&[r, s]) {
                for tau in enumerate_shuffles(&[1, r + s]) {
                    let p = sigma.insert_fixed(tau.apply(1))?.compose(&tau)?;
                    acc.add_term(p, sigma.sign() * tau.sign())?;
                }
            }
            acc
        }
        2 => {
            let left = GroupRingElem::signed_sum(n, &enumerate_shuffles(&[r + 1, s]))?;
            let id = Permutation::identity(s);
            let right = GroupRingElem::from_terms(
                n,
                enumerate_shuffles(&[1, r])
                    .into_iter()
                    .map(|t| (t.product(&id), t.sign())),
            )?;
            left.try_mul(&right)?
        }
        3 => {
            let left = GroupRingElem::signed_sum(n, &enumerate_shuffles(&[r, s + 1]))?;
            let id = Permutation::identity(r);
            let right = GroupRingElem::from_terms(
                n,
                enumerate_shuffles(&[1, s])
                    .into_iter()
                    .map(|t| (id.product(&t), t.sign())),
            )?;
            let sign = if r.is_multiple_of(2) { 1 } else { -1 };
            left.try_mul(&right)?
                .mul_perm(&block_rotation(r, n))?
                .scale(sign)
        }
        _ => return Err(PermError::Parse(format!("no shuffle lemma {which}"))),
    };
    let equal = lhs == rhs;
    Ok(LemmaReport {
        which,
        r,
        s,
        lhs,
        rhs,
        equal,
    })
}

/// All permutations of degree `n` (the `(1, …, 1)`-shuffles).
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    enumerate_shuffles(&vec![1; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str, n: usize) -> Permutation {
        Permutation::from_cycles(src, n).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(p("(1 2)", 2).sign(), -1);
        assert_eq!(p("(1 2 3)", 3).sign(), 1);
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(
            enumerate_shuffles(&[1, 1]),
            vec![Permutation::identity(2), p("(1 2)", 2)]
        );
        assert_eq!(enumerate_shuffles(&[2, 1]).len(), 3);
        assert_eq!(enumerate_shuffles(&[1, 1, 1]).len(), 6);
        assert_eq!(enumerate_shuffles(&[0, 0]), vec![Permutation::identity(0)]);
        assert_eq!(multinomial(&[1, 2, 3]), 60);
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(
            Permutation::identity(2).insert_fixed(1).unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(p("(1 2)", 2).insert_fixed(2).unwrap(), p("(1 3)", 3));
        assert_eq!(p("(1 2)", 2).insert_fixed(3).unwrap(), p("(1 2)", 3));
        assert_eq!(p("(1 2)", 2).insert_fixed(1).unwrap(), p("(2 3)", 3));
        assert!(p("(1 2)", 2).insert_fixed(4).is_err());
    }

    #[test]
    fn phi2_example() {
        let sigma = Permutation::identity(3);
        let tau = p("(1 2)", 2);
        assert_eq!(
            phi_map(PhiKind::Phi2, &sigma, &tau, 1, 1).unwrap(),
            p("(1 2)", 3)
        );
    }

    #[test]
    fn phi_rejects_wrong_types() {
        let bad = p("(1 2)", 2);
        assert!(matches!(
            phi_map(PhiKind::Phi1, &bad, &Permutation::identity(3), 2, 0),
            Err(PermError::NotAShuffle { .. })
        ));
    }

    #[test]
    fn action_on_slots() {
        assert_eq!(p("(1 2)", 2).act(&["t1", "t2"]).unwrap(), vec!["t2", "t1"]);
        // (1 2 3) sends the entry at slot 1 to slot 2
        assert_eq!(p("(1 2 3)", 3).act(&[1, 2, 3]).unwrap(), vec![3, 1, 2]);
        assert!(p("()", 2).act(&[1]).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for q in all_permutations(4) {
            assert_eq!(Permutation::from_cycles(&q.to_string(), 4).unwrap(), q);
        }
    }

    #[test]
    fn lemma_examples() {
        let l1 = shuffle_lemma_check(1, 1, 1, DEFAULT_MAX_DEGREE).unwrap();
        assert!(l1.equal);
        assert_eq!(l1.lhs.len(), 6);
        assert!(
            shuffle_lemma_check(2, 2, 1, DEFAULT_MAX_DEGREE)
                .unwrap()
                .equal
        );
        assert!(
            shuffle_lemma_check(3, 1, 2, DEFAULT_MAX_DEGREE)
                .unwrap()
                .equal
        );
        assert!(matches!(
            shuffle_lemma_check(1, 5, 5, DEFAULT_MAX_DEGREE),
            Err(PermError::SizeLimit { .. })
        ));
    }

    #[test]
    fn rotation_sign() {
        for r in 0..5 {
            let expect = if r % 2 == 0 { 1 } else { -1 };
            assert_eq!(block_rotation(r, r + 2).sign(), expect);
        }
    }
}
