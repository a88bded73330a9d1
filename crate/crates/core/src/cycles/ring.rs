use std::fmt;

use super::CycleError;

/// `k[x₁,…,x_e]/(x₁^{m₁},…,x_e^{m_e})`, recorded by its exponent list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModulusRing {
    m: Vec<u32>,
}

impl ModulusRing {
    pub fn new(m: Vec<u32>) -> Result<Self, CycleError> {
        if m.contains(&0) {
            return Err(CycleError::InvalidRing(format!("{m:?}")));
        }
        Ok(ModulusRing { m })
    }

    /// `k[x]/(x^m)`.
    pub fn truncated(m: u32) -> Result<Self, CycleError> {
        Self::new(vec![m])
    }

    /// `k[x]/(x²)`.
    pub fn dual_numbers() -> Self {
        ModulusRing { m: vec![2] }
    }

    pub fn e(&self) -> usize {
        self.m.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.m
    }

    pub fn tensor(&self, other: &ModulusRing) -> ModulusRing {
        let mut m = self.m.clone();
        m.extend_from_slice(&other.m);
        ModulusRing { m }
    }

    /// `min{A₁, A₂}` for two rings of embedding dimension one.
    pub fn min_ring(&self, other: &ModulusRing) -> Result<ModulusRing, CycleError> {
        match (self.m.as_slice(), other.m.as_slice()) {
            ([a], [b]) => Ok(ModulusRing { m: vec![*a.min(b)] }),
            _ => Err(CycleError::EmbeddingDimension {
                expected: 1,
                found: if self.e() == 1 { other.e() } else { self.e() },
            }),
        }
    }

    /// Splits an `e = 2` ring into its two factors and takes their minimum.
    pub fn min_of_factors(&self) -> Result<ModulusRing, CycleError> {
        match self.m.as_slice() {
            [a, b] => Ok(ModulusRing { m: vec![*a.min(b)] }),
            _ => Err(CycleError::EmbeddingDimension {
                expected: 2,
                found: self.e(),
            }),
        }
    }

    /// Moves the first `e1` factors behind the rest.
    pub fn rotate(&self, e1: usize) -> ModulusRing {
        let mut m = self.m.clone();
        let k = e1.min(m.len());
        m.rotate_left(k);
        ModulusRing { m }
    }
}

impl fmt::Display for ModulusRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_empty() {
            return write!(f, "k");
        }
        let vars: Vec<String> = (1..=self.e()).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = vars
            .iter()
            .zip(&self.m)
            .map(|(v, m)| format!("{v}^{m}"))
            .collect();
        write!(f, "k[{}]/({})", vars.join(","), rels.join(","))
    }
}

/// `𝔸^e × □^n` over a modulus ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SlotSpace {
    pub ring: ModulusRing,
    pub n: usize,
}

impl SlotSpace {
    pub fn new(ring: ModulusRing, n: usize) -> Self {
        SlotSpace { ring, n }
    }

    pub fn e(&self) -> usize {
        self.ring.e()
    }

    pub fn with_n(&self, n: usize) -> Self {
        SlotSpace {
            ring: self.ring.clone(),
            n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(m: u32) -> ModulusRing {
        ModulusRing::truncated(m).unwrap()
    }

    #[test]
    fn min_and_tensor() {
        assert_eq!(ring(2).min_ring(&ring(3)).unwrap(), ring(2));
        assert_eq!(ring(4).min_ring(&ring(4)).unwrap(), ring(4));
        assert_eq!(ring(2).tensor(&ring(3)).e(), 2);
        assert!(ring(2).tensor(&ring(3)).min_ring(&ring(2)).is_err());
        assert_eq!(ring(5).tensor(&ring(3)).min_of_factors().unwrap(), ring(3));
    }

    #[test]
    fn rejects_zero_exponent() {
        assert!(ModulusRing::new(vec![2, 0]).is_err());
    }
}
