//! Fraction-free rank over ℤ, kept apart from the field elimination in `linalg`
//! so homology dimensions can be cross-checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::Matrix;

/// Rank by Bareiss elimination after clearing denominators row by row.
pub fn bareiss_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `dim Cₙ − rank dₙ − rank dₙ₊₁`.
pub fn homology_dim(dim: usize, outgoing: &Matrix, incoming: &Matrix) -> usize {
    dim - bareiss_rank(outgoing) - bareiss_rank(incoming)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn agrees_on_small_cases() {
        let m = Matrix::from_ints(3, 3, &[2, 4, 6, 1, 2, 3, 0, 1, 1]);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(bareiss_rank(&m), m.rank());
        let mut h = Matrix::zeros(2, 2);
        h.set(0, 0, Rational::new(1.into(), 3.into()));
        h.set(1, 1, Rational::new(2.into(), 5.into()));
        assert_eq!(bareiss_rank(&h), 2);
        assert_eq!(bareiss_rank(&Matrix::zeros(4, 0)), 0);
    }
}
