//! Random valid mixed complexes: direct sums of elementary pieces, conjugated by
//! random unimodular changes of basis in each degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Rational;

use super::complex::MixedComplex;
use super::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    /// `ℚ` at `n`.
    Line,
    /// `x ↦ bx` from `n` to `n − 1`.
    BPair,
    /// `x ↦ Bx` from `n` to `n + 1`.
    BigBPair,
    /// `x, bx, Bx, bBx` with `B(bx) = −bBx`.
    Square,
    /// `y` at `n`, `w` at `n + 1`, `z` at `n + 2` with `By = −w`, `bz = w`.
    Zigzag,
}

/// (min base degree, extra degrees above the base, dimension).
fn shape(p: Piece) -> (usize, usize, usize) {
    match p {
        Piece::Line => (0, 0, 1),
        Piece::BPair => (1, 0, 2),
        Piece::BigBPair => (0, 1, 2),
        Piece::Square => (1, 1, 4),
        Piece::Zigzag => (0, 2, 3),
    }
}

struct Builder {
    dims: Vec<usize>,
    /// `(kind_is_big_b, from_degree, from_index, to_index, coeff)`
    entries: Vec<(bool, usize, usize, usize, i64)>,
}

impl Builder {
    fn alloc(&mut self, n: usize) -> usize {
        self.dims[n] += 1;
        self.dims[n] - 1
    }

    fn add(&mut self, p: Piece, n: usize) {
        match p {
            Piece::Line => {
                self.alloc(n);
            }
            Piece::BPair => {
                let (x, y) = (self.alloc(n), self.alloc(n - 1));
                self.entries.push((false, n, x, y, 1));
            }
            Piece::BigBPair => {
                let (x, y) = (self.alloc(n), self.alloc(n + 1));
                self.entries.push((true, n, x, y, 1));
            }
            Piece::Square => {
                let (x, p_, q, r) = (
                    self.alloc(n),
                    self.alloc(n - 1),
                    self.alloc(n + 1),
                    self.alloc(n),
                );
                self.entries.push((false, n, x, p_, 1));
                self.entries.push((true, n, x, q, 1));
                self.entries.push((false, n + 1, q, r, 1));
                self.entries.push((true, n - 1, p_, r, -1));
            }
            Piece::Zigzag => {
                let (y, w, z) = (self.alloc(n), self.alloc(n + 1), self.alloc(n + 2));
                self.entries.push((true, n, y, w, -1));
                self.entries.push((false, n + 2, z, w, 1));
            }
        }
    }
}

/// Random unimodular `P` with its inverse.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let mut p = Matrix::identity(n);
    let mut p_inv = Matrix::identity(n);
    if n < 2 {
        return (p, p_inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Rational::from_integer(rng.gen_range(-2i64..=2).into());
        // P ← (I + c·e_ij) P and P⁻¹ ← P⁻¹ (I − c·e_ij).
        for k in 0..n {
            let v = p.get(i, k) + &c * p.get(j, k);
            p.set(i, k, v);
            let w = p_inv.get(k, j) - &c * p_inv.get(k, i);
            p_inv.set(k, j, w);
        }
    }
    (p, p_inv)
}

/// A valid mixed complex on degrees `0..=top` with total dimension at most `max_total`.
pub fn random_mixed_complex(seed: u64, top: usize, max_total: usize) -> MixedComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder {
        dims: vec![0; top + 1],
        entries: Vec::new(),
    };
    let target = rng.gen_range(1..=max_total.max(1));
    let pieces = [
        Piece::Line,
        Piece::BPair,
        Piece::BigBPair,
        Piece::Square,
        Piece::Zigzag,
    ];
    let mut total = 0;
    for _ in 0..4 * max_total {
        let p = pieces[rng.gen_range(0..pieces.len())];
        let (lo, extra, size) = shape(p);
        if total + size > target || lo + extra > top {
            continue;
        }
        b.add(p, rng.gen_range(lo..=top - extra));
        total += size;
    }
    let dims = b.dims.clone();
    let labels = dims
        .iter()
        .enumerate()
        .map(|(n, &d)| (0..d).map(|i| format!("e{n}.{i}")).collect())
        .collect();
    let mut m = MixedComplex::with_labels(labels);
    let mut raw_b: Vec<Matrix> = (0..=top).map(|n| m.b(n as isize)).collect();
    let mut raw_big: Vec<Matrix> = (0..=top).map(|n| m.big_b(n as isize)).collect();
    for &(big, n, from, to, c) in &b.entries {
        let target = if big { &mut raw_big[n] } else { &mut raw_b[n] };
        target.set(to, from, Rational::from_integer(c.into()));
    }
    let change: Vec<(Matrix, Matrix)> = dims.iter().map(|&d| unimodular(&mut rng, d)).collect();
    for n in 0..=top {
        let p_inv = &change[n].1;
        if n > 0 {
            let nb = change[n - 1].0.mul(&raw_b[n]).mul(p_inv);
            m.set_b(n, nb).expect("shape preserved");
        }
        if n < top {
            let nb = change[n + 1].0.mul(&raw_big[n]).mul(p_inv);
            m.set_big_b(n, nb).expect("shape preserved");
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..6 {
            let (p, q) = unimodular(&mut rng, n);
            assert_eq!(p.mul(&q), Matrix::identity(n));
        }
    }

    #[test]
    fn fixtures_are_valid_and_bounded() {
        for seed in 0..30 {
            let m = random_mixed_complex(seed, 5, 40);
            assert_eq!(m.validate(), None, "seed {seed}");
            assert!(m.total_dim() <= 40);
        }
    }
}
