//! Finite mixed complexes spanned by reduced cycles under `b = ∂′` and `B = (−1)ⁿ δ`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::One;

use crate::cycles::{BoundaryMode, FormalCycle, Term};
use crate::field::Rational;

use super::complex::MixedComplex;
use super::linalg::Matrix;
use super::ComplexError;

#[derive(Clone, Debug)]
pub struct SpanComplex {
    pub complex: MixedComplex,
    /// `basis[n][i]` is the cycle behind label `g{n}.{i}`.
    pub basis: Vec<Vec<FormalCycle>>,
}

/// Coordinates of `cycles` over the union of their terms, one column each.
fn coordinates(cycles: &[&FormalCycle]) -> Matrix {
    let mut index: BTreeMap<&Term, usize> = BTreeMap::new();
    for c in cycles {
        for (t, _) in c.terms() {
            let k = index.len();
            index.entry(t).or_insert(k);
        }
    }
    let mut m = Matrix::zeros(index.len(), cycles.len());
    for (j, c) in cycles.iter().enumerate() {
        for (t, k) in c.terms() {
            m.set(index[t], j, Rational::from_integer(k.into()));
        }
    }
    m
}

fn in_span(basis: &[FormalCycle], x: &FormalCycle) -> bool {
    let mut all: Vec<&FormalCycle> = basis.iter().collect();
    let before = coordinates(&all).rank();
    all.push(x);
    coordinates(&all).rank() == before
}

/// Columns expressing each `images[j]` in `basis`.
fn express(basis: &[FormalCycle], images: &[FormalCycle]) -> Result<Matrix, ComplexError> {
    let mut all: Vec<&FormalCycle> = basis.iter().collect();
    all.extend(images.iter());
    let coords = coordinates(&all);
    let k = basis.len();
    let mut basis_m = Matrix::zeros(coords.rows(), k);
    for j in 0..k {
        for i in 0..coords.rows() {
            basis_m.set(i, j, coords.get(i, j).clone());
        }
    }
    let mut out = Matrix::zeros(k, images.len());
    for j in 0..images.len() {
        let x = basis_m
            .solve(&coords.column(k + j))
            .ok_or(ComplexError::NotClosed)?;
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Closes `seeds` under `∂′` and `δ`, refusing to drop a nonzero `δ`-image above `n_cap`.
pub fn span_builder(seeds: &[FormalCycle], n_cap: usize) -> Result<SpanComplex, ComplexError> {
    let mut queue = VecDeque::new();
    for (k, s) in seeds.iter().enumerate() {
        if !s.is_reduced()? {
            return Err(ComplexError::NonReducedSeed(k));
        }
        if s.n() > n_cap {
            return Err(ComplexError::CapExceeded {
                degree: s.n(),
                cap: n_cap,
            });
        }
        queue.push_back(s.clone());
    }
    let mut basis: Vec<Vec<FormalCycle>> = vec![Vec::new(); n_cap + 1];
    while let Some(x) = queue.pop_front() {
        let n = x.n();
        if x.is_zero() || in_span(&basis[n], &x) {
            continue;
        }
        if n > 0 {
            queue.push_back(x.boundary(BoundaryMode::Reduced)?);
        }
        let d = x.delta()?;
        if n + 1 > n_cap {
            if !d.is_zero() {
                return Err(ComplexError::CapExceeded {
                    degree: n + 1,
                    cap: n_cap,
                });
            }
        } else {
            queue.push_back(d);
        }
        basis[n].push(x);
    }
    while basis.len() > 1 && basis.last().is_some_and(Vec::is_empty) {
        basis.pop();
    }
    let labels = basis
        .iter()
        .enumerate()
        .map(|(n, bs)| (0..bs.len()).map(|i| format!("g{n}.{i}")).collect())
        .collect();
    let mut complex = MixedComplex::with_labels(labels);
    for n in 0..basis.len() {
        if n > 0 {
            let images = basis[n]
                .iter()
                .map(|x| x.boundary(BoundaryMode::Reduced))
                .collect::<Result<Vec<_>, _>>()?;
            complex.set_b(n, express(&basis[n - 1], &images)?)?;
        }
        if n + 1 < basis.len() {
            let images = basis[n]
                .iter()
                .map(FormalCycle::delta)
                .collect::<Result<Vec<_>, _>>()?;
            let sign = if n % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            complex.set_big_b(n, express(&basis[n + 1], &images)?.scale(&sign))?;
        }
    }
    Ok(SpanComplex { complex, basis })
}
