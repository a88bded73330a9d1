use std::fmt;

use crate::field::Rational;

use super::linalg::Matrix;
use super::ComplexError;

/// Finite mixed complex on degrees `0..=top`.
///
/// `b[n]: V_n → V_{n−1}` and `big_b[n]: V_n → V_{n+1}`, with `V_{−1} = V_{top+1} = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedComplex {
    labels: Vec<Vec<String>>,
    b: Vec<Matrix>,
    big_b: Vec<Matrix>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    BB,
    BigBBigB,
    Anticommute,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::BB => "b∘b = 0",
            Axiom::BigBBigB => "B∘B = 0",
            Axiom::Anticommute => "b∘B + B∘b = 0",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub axiom: Axiom,
    /// Source degree of the failing composite.
    pub degree: usize,
}

impl MixedComplex {
    /// Complex with the given dimensions and zero maps.
    pub fn zero(dims: &[usize]) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(n, &d)| (0..d).map(|i| format!("e{n}.{i}")).collect())
            .collect();
        Self::with_labels(labels)
    }

    pub fn with_labels(labels: Vec<Vec<String>>) -> Self {
        let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
        let dim = |n: isize| {
            if n < 0 {
                0
            } else {
                dims.get(n as usize).copied().unwrap_or(0)
            }
        };
        let b = (0..dims.len())
            .map(|n| Matrix::zeros(dim(n as isize - 1), dims[n]))
            .collect();
        let big_b = (0..dims.len())
            .map(|n| Matrix::zeros(dim(n as isize + 1), dims[n]))
            .collect();
        MixedComplex { labels, b, big_b }
    }

    pub fn top(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    pub fn dim(&self, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.labels.get(n as usize).map_or(0, Vec::len)
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map_or(&[], Vec::as_slice)
    }

    /// `b` out of degree `n` (zero outside the support).
    pub fn b(&self, n: isize) -> Matrix {
        match usize::try_from(n).ok().and_then(|k| self.b.get(k)) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n - 1), self.dim(n)),
        }
    }

    /// `B` out of degree `n` (zero outside the support).
    pub fn big_b(&self, n: isize) -> Matrix {
        match usize::try_from(n).ok().and_then(|k| self.big_b.get(k)) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    fn check_shape(
        &self,
        m: &Matrix,
        rows: usize,
        cols: usize,
        what: &str,
    ) -> Result<(), ComplexError> {
        if m.rows() != rows || m.cols() != cols {
            return Err(ComplexError::Shape(format!(
                "{what}: expected {rows}×{cols}, found {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    pub fn set_b(&mut self, n: usize, m: Matrix) -> Result<(), ComplexError> {
        let n_i = n as isize;
        if n >= self.labels.len() {
            return Err(ComplexError::Shape(format!(
                "b out of degree {n} beyond the top"
            )));
        }
        self.check_shape(
            &m,
            self.dim(n_i - 1),
            self.dim(n_i),
            &format!("b out of degree {n}"),
        )?;
        self.b[n] = m;
        Ok(())
    }

    pub fn set_big_b(&mut self, n: usize, m: Matrix) -> Result<(), ComplexError> {
        let n_i = n as isize;
        if n >= self.labels.len() {
            return Err(ComplexError::Shape(format!(
                "B out of degree {n} beyond the top"
            )));
        }
        self.check_shape(
            &m,
            self.dim(n_i + 1),
            self.dim(n_i),
            &format!("B out of degree {n}"),
        )?;
        self.big_b[n] = m;
        Ok(())
    }

    /// First failing axiom, scanning degrees upward.
    pub fn validate(&self) -> Option<Violation> {
        for n in 0..self.labels.len() as isize {
            let checks = [
                (Axiom::BB, self.b(n - 1).mul(&self.b(n))),
                (Axiom::BigBBigB, self.big_b(n + 1).mul(&self.big_b(n))),
                (
                    Axiom::Anticommute,
                    self.b(n + 1)
                        .mul(&self.big_b(n))
                        .add(&self.big_b(n - 1).mul(&self.b(n))),
                ),
            ];
            for (axiom, m) in checks {
                if !m.is_zero() {
                    return Some(Violation {
                        axiom,
                        degree: n as usize,
                    });
                }
            }
        }
        None
    }

    pub fn require_valid(&self) -> Result<(), ComplexError> {
        match self.validate() {
            None => Ok(()),
            Some(v) => Err(ComplexError::Invalid(v)),
        }
    }

    /// `(V, b)` on degrees `0..=max`.
    pub fn column(&self, max: usize) -> ChainComplex {
        let dims = (0..=max).map(|n| self.dim(n as isize)).collect();
        let d = (0..=max).map(|n| self.b(n as isize)).collect();
        ChainComplex { dims, d }
    }

    /// Degrees `0..=max` of `Tot_n = ⊕_{i≥0} V_{n−2i}`, block `i` first.
    pub fn totalize(&self, max: usize) -> TotalComplex {
        let blocks: Vec<Vec<usize>> = (0..=max)
            .map(|n| (0..=n / 2).map(|i| n - 2 * i).collect())
            .collect();
        let dims: Vec<usize> = blocks
            .iter()
            .map(|bs| bs.iter().map(|&k| self.dim(k as isize)).sum())
            .collect();
        let offsets = |n: usize| -> Vec<usize> {
            let mut acc = 0;
            blocks[n]
                .iter()
                .map(|&k| {
                    let o = acc;
                    acc += self.dim(k as isize);
                    o
                })
                .collect()
        };
        let mut d = vec![Matrix::zeros(0, dims[0])];
        for n in 1..=max {
            let mut m = Matrix::zeros(dims[n - 1], dims[n]);
            let (src, dst) = (offsets(n), offsets(n - 1));
            for (i, &k) in blocks[n].iter().enumerate() {
                let k = k as isize;
                if let Some(&row) = dst.get(i) {
                    m.set_block(row, src[i], &self.b(k));
                }
                if i >= 1 {
                    m.set_block(dst[i - 1], src[i], &self.big_b(k));
                }
            }
            d.push(m);
        }
        let labels = (0..=max)
            .map(|n| {
                blocks[n]
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &k)| self.labels(k).iter().map(move |l| format!("[{i}]{l}")))
                    .collect()
            })
            .collect();
        TotalComplex {
            chain: ChainComplex { dims, d },
            labels,
            blocks,
        }
    }
}

/// Chain complex on degrees `0..=max` with `d[n]: C_n → C_{n−1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub dim: usize,
    /// Cycles whose classes form a basis.
    pub basis: Vec<Vec<Rational>>,
}

impl ChainComplex {
    pub fn max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn d(&self, n: usize) -> Matrix {
        match self.d.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n.wrapping_sub(1)), self.dim(n)),
        }
    }

    /// Index of the first `n` with `d_{n−1} d_n ≠ 0`.
    pub fn square_violation(&self) -> Option<usize> {
        (2..=self.max()).find(|&n| !self.d(n - 1).mul(&self.d(n)).is_zero())
    }

    pub fn cycles(&self, n: usize) -> Vec<Vec<Rational>> {
        self.d(n).kernel()
    }

    pub fn boundaries(&self, n: usize) -> Matrix {
        self.d(n + 1)
    }

    /// Homology in degree `n`; requires `n < max` so the incoming map is present.
    pub fn homology(&self, n: usize) -> Result<Homology, ComplexError> {
        if n >= self.max() {
            return Err(ComplexError::Shape(format!(
                "homology at {n} needs degree {} built",
                n + 1
            )));
        }
        if !self.d(n).mul(&self.d(n + 1)).is_zero() {
            return Err(ComplexError::NotAComplex(n + 1));
        }
        let im = self.boundaries(n);
        let mut acc = im.clone();
        let mut rank = acc.rank();
        let base = rank;
        let mut basis = Vec::new();
        for z in self.cycles(n) {
            let next = Matrix::hcat(
                acc.rows(),
                &[
                    &acc,
                    &Matrix::from_columns(acc.rows(), std::slice::from_ref(&z)),
                ],
            );
            let r = next.rank();
            if r > rank {
                acc = next;
                rank = r;
                basis.push(z);
            }
        }
        debug_assert_eq!(basis.len(), rank - base);
        Ok(Homology {
            dim: basis.len(),
            basis,
        })
    }

    /// Rank of the map on homology induced by `f: C_n → target_m`.
    pub fn induced_rank(&self, n: usize, f: &Matrix, target: &ChainComplex, m: usize) -> usize {
        let z = Matrix::from_columns(self.dim(n), &self.cycles(n));
        let fz = f.mul(&z);
        let im = target.boundaries(m);
        let both = Matrix::hcat(target.dim(m), &[&fz, &im]);
        both.rank() - im.rank()
    }
}

#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub chain: ChainComplex,
    /// `[i]label` marks the summand `V_{n−2i}`.
    pub labels: Vec<Vec<String>>,
    /// Column degrees `n, n−2, …` of the summands of `Tot_n`.
    pub blocks: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn zero_complex_is_valid() {
        let m = MixedComplex::zero(&[2, 1, 3]);
        assert_eq!(m.validate(), None);
        let tot = m.totalize(5);
        assert_eq!(tot.chain.dims, vec![2, 1, 5, 1, 5, 1]);
        for n in 0..5 {
            assert_eq!(tot.chain.homology(n).unwrap().dim, tot.chain.dims[n]);
        }
    }

    #[test]
    fn reports_b_squared() {
        let mut m = MixedComplex::zero(&[1, 1, 1]);
        m.set_b(1, Matrix::from_ints(1, 1, &[1])).unwrap();
        m.set_b(2, Matrix::from_ints(1, 1, &[1])).unwrap();
        assert_eq!(
            m.validate(),
            Some(Violation {
                axiom: Axiom::BB,
                degree: 2
            })
        );
        assert!(m.set_b(1, Matrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn iso_pair_is_acyclic() {
        let mut m = MixedComplex::zero(&[1, 1]);
        m.set_b(1, Matrix::from_ints(1, 1, &[1])).unwrap();
        let col = m.column(3);
        for n in 0..3 {
            assert_eq!(col.homology(n).unwrap().dim, 0);
        }
        let tot = m.totalize(6);
        assert_eq!(tot.chain.square_violation(), None);
        for n in 0..6 {
            assert_eq!(tot.chain.homology(n).unwrap().dim, 0);
        }
    }

    #[test]
    fn big_b_iso_kills_periodic_classes() {
        // V₀ = ℚx, V₁ = ℚy, Bx = y: HH = ℚ, ℚ; HC₀ = ℚ and HC_n = 0 for n ≥ 1.
        let mut m = MixedComplex::zero(&[1, 1]);
        m.set_big_b(0, Matrix::from_ints(1, 1, &[1])).unwrap();
        assert_eq!(m.validate(), None);
        let tot = m.totalize(6);
        let dims: Vec<usize> = (0..6).map(|n| tot.chain.homology(n).unwrap().dim).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 0, 0]);
        let h = m.column(2).homology(1).unwrap();
        assert_eq!(h.basis, vec![vec![q(1)]]);
        assert_eq!(tot.labels[2], vec!["[1]e0.0".to_string()]);
    }
}
