//! `⋯ → HHₙ →I HCₙ →S HCₙ₋₂ →B HHₙ₋₁ → ⋯` with image/kernel checks at each node.

use std::fmt;

use super::complex::{ChainComplex, MixedComplex, TotalComplex};
use super::linalg::Matrix;
use super::ComplexError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Group {
    /// Homology of `(V, b)`.
    HH,
    /// Homology of `Tot`.
    HC,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    I,
    S,
    B,
}

#[derive(Clone, Debug)]
pub struct LesNode {
    pub group: Group,
    pub degree: isize,
    pub dim: usize,
    /// `None` when the node lacks an incoming or outgoing map.
    pub exact: Option<bool>,
    /// False within one step of the top computed degree.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct LesMap {
    pub kind: MapKind,
    /// Index into `nodes` of the source; the target is the next node.
    pub from: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub max_degree: usize,
    pub nodes: Vec<LesNode>,
    pub maps: Vec<LesMap>,
}

impl LesReport {
    /// Every node with both neighbours is exact.
    pub fn all_interior_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact != Some(false))
    }

    /// Every node flagged verified is exact.
    pub fn verified_exact(&self) -> bool {
        self.nodes
            .iter()
            .filter(|n| n.verified)
            .all(|n| n.exact == Some(true))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::HH => "HH",
            Group::HC => "HC",
        })
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::I => "I",
            MapKind::S => "S",
            MapKind::B => "B",
        })
    }
}

impl fmt::Display for LesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for node in &self.nodes {
            let exact = node.exact.map_or("n/a".to_string(), |e| e.to_string());
            writeln!(
                f,
                "node {} {} dim={} exact={} verified={}",
                node.group, node.degree, node.dim, exact, node.verified
            )?;
        }
        for m in &self.maps {
            let (s, t) = (&self.nodes[m.from], &self.nodes[m.from + 1]);
            writeln!(
                f,
                "map {} {} {} -> {} {} rank={}",
                m.kind, s.group, s.degree, t.group, t.degree, m.rank
            )?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    m: &'a MixedComplex,
    col: ChainComplex,
    tot: TotalComplex,
}

impl Ctx<'_> {
    fn chain(&self, g: Group) -> &ChainComplex {
        match g {
            Group::HH => &self.col,
            Group::HC => &self.tot.chain,
        }
    }

    fn chain_dim(&self, g: Group, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.chain(g).dim(n as usize)
        }
    }

    /// Chain-level matrix of `kind` out of a node of the given group and degree.
    fn chain_map(&self, kind: MapKind, n: isize) -> Matrix {
        match kind {
            // HHₙ → HCₙ: include as block 0.
            MapKind::I => {
                let mut out =
                    Matrix::zeros(self.chain_dim(Group::HC, n), self.chain_dim(Group::HH, n));
                out.set_block(0, 0, &Matrix::identity(self.chain_dim(Group::HH, n)));
                out
            }
            // HCₙ → HCₙ₋₂: drop block 0.
            MapKind::S => {
                let (src, dst) = (
                    self.chain_dim(Group::HC, n),
                    self.chain_dim(Group::HC, n - 2),
                );
                let mut out = Matrix::zeros(dst, src);
                let head = self.m.dim(n);
                for j in 0..dst {
                    out.set(j, head + j, num_traits::One::one());
                }
                out
            }
            // HCₙ → HHₙ₊₁: B on block 0.
            MapKind::B => {
                let mut out = Matrix::zeros(
                    self.chain_dim(Group::HH, n + 1),
                    self.chain_dim(Group::HC, n),
                );
                out.set_block(0, 0, &self.m.big_b(n));
                out
            }
        }
    }
}

/// Builds the sequence from `HH_max` down to `HC_{−2} = 0`.
pub fn connes_sequence(m: &MixedComplex, max_degree: usize) -> Result<LesReport, ComplexError> {
    m.require_valid()?;
    let ctx = Ctx {
        m,
        col: m.column(max_degree + 1),
        tot: m.totalize(max_degree + 1),
    };
    if let Some(n) = ctx.tot.chain.square_violation() {
        return Err(ComplexError::NotAComplex(n));
    }
    let mut spots: Vec<(Group, isize)> = Vec::new();
    for n in (0..=max_degree as isize).rev() {
        spots.extend([(Group::HH, n), (Group::HC, n), (Group::HC, n - 2)]);
    }
    let dim_of = |(g, n): (Group, isize)| -> Result<usize, ComplexError> {
        if n < 0 {
            Ok(0)
        } else {
            Ok(ctx.chain(g).homology(n as usize)?.dim)
        }
    };
    let kinds = [MapKind::I, MapKind::S, MapKind::B];
    let mut maps = Vec::new();
    for k in 0..spots.len() - 1 {
        let kind = kinds[k % 3];
        let ((g, n), (h, t)) = (spots[k], spots[k + 1]);
        let rank = if n < 0 || t < 0 {
            0
        } else {
            let f = ctx.chain_map(kind, n);
            ctx.chain(g)
                .induced_rank(n as usize, &f, ctx.chain(h), t as usize)
        };
        maps.push(LesMap {
            kind,
            from: k,
            rank,
        });
    }
    let mut nodes = Vec::new();
    for (k, &spot) in spots.iter().enumerate() {
        let dim = dim_of(spot)?;
        let exact = if k == 0 || k + 1 == spots.len() {
            None
        } else {
            let (inc, out) = (&maps[k - 1], &maps[k]);
            let (src, tgt) = (spots[k - 1], spots[k + 1]);
            let composite_zero = if src.1 < 0 || tgt.1 < 0 {
                true
            } else {
                let f = ctx.chain_map(inc.kind, src.1);
                let g = ctx.chain_map(out.kind, spot.1);
                ctx.chain(src.0).induced_rank(
                    src.1 as usize,
                    &g.mul(&f),
                    ctx.chain(tgt.0),
                    tgt.1 as usize,
                ) == 0
            };
            Some(composite_zero && inc.rank + out.rank == dim)
        };
        let near_top = spot.1 >= max_degree as isize - 1;
        nodes.push(LesNode {
            group: spot.0,
            degree: spot.1,
            dim,
            exact,
            verified: exact.is_some() && !near_top,
        });
    }
    Ok(LesReport {
        max_degree,
        nodes,
        maps,
    })
}

/// Default range: two degrees past the top of the complex.
pub fn default_max_degree(m: &MixedComplex) -> usize {
    m.top().map_or(2, |t| t + 2)
}
