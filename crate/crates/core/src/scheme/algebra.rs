//! Intersection matrices B_i and adjacency matrices A_i.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::axioms::RelationMatrix;
use super::SchemeDescriptor;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest |Φ| for which dense adjacency matrices are built.
pub const ADJACENCY_BUDGET: usize = 512;

/// B_i with (B_i)[j][h] = p_{ij}^h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub index: usize,
    pub entries: Matrix<BigInt>,
}

pub fn intersection_matrices(sd: &SchemeDescriptor) -> Vec<IntersectionMatrix> {
    let r = sd.rank();
    (0..r)
        .map(|i| IntersectionMatrix {
            index: i,
            entries: Matrix::from_fn(r, r, |j, h| BigInt::from(sd.p(h, i, j))),
        })
        .collect()
}

/// Σ_h c_h B_h.
fn combination(bs: &[IntersectionMatrix], coeff: impl Fn(usize) -> u64) -> Matrix<BigInt> {
    let r = bs.len();
    let mut out = Matrix::zeros(r, r);
    for (h, b) in bs.iter().enumerate() {
        let c = coeff(h);
        if c == 0 {
            continue;
        }
        let c = BigInt::from(c);
        for row in 0..r {
            for col in 0..r {
                if !b.entries[(row, col)].is_zero() {
                    out[(row, col)] += &c * &b.entries[(row, col)];
                }
            }
        }
    }
    out
}

/// Checks B_i B_j = Σ_h p_{ji}^h B_h for all i, j. The B_i act on row
/// vectors, so the product reverses the order of multiplication in the
/// Bose–Mesner algebra; for a commutative scheme this is
/// B_i B_j = Σ_h p_{ij}^h B_h.
pub fn verify_algebra_closure(sd: &SchemeDescriptor) -> Result<()> {
    let bs = intersection_matrices(sd);
    let r = sd.rank();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let lhs = &bs[i].entries * &bs[j].entries;
        lhs != combination(&bs, |h| sd.p(h, j, i))
    });
    match bad {
        Some(&(i, j)) => Err(Error::Invariant(format!("B_{i}B_{j} is not the expected combination"))),
        None => Ok(()),
    }
}

/// The 0/1 matrix of one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub index: usize,
    pub entries: Matrix<u32>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }
}

pub fn build_adjacency_matrices(rm: &RelationMatrix) -> Result<Vec<AdjacencyMatrix>> {
    let size = rm.size();
    if size > ADJACENCY_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "adjacency matrices",
            size: size as u128,
            limit: ADJACENCY_BUDGET as u128,
        });
    }
    Ok((0..rm.rank())
        .map(|l| AdjacencyMatrix {
            index: l,
            entries: Matrix::from_fn(size, size, |x, y| (rm.get(x, y) == l) as u32),
        })
        .collect())
}

/// Checks A₀ = I, ΣA_l = J, A_lᵀ = A_{l′} and A_iA_j = Σ_h p_{ij}^h A_h.
/// The product identity is checked entrywise: (A_iA_j)[x][y] counts z with
/// (x,z) ∈ R_i and (z,y) ∈ R_j, and must equal p_{ij}^h for the h with
/// (x,y) ∈ R_h.
pub fn verify_adjacency_algebra(adj: &[AdjacencyMatrix], sd: &SchemeDescriptor) -> Result<()> {
    let r = sd.rank();
    if adj.len() != r {
        return Err(Error::Invariant(format!("{} adjacency matrices for rank {r}", adj.len())));
    }
    let size = adj[0].size();
    if adj[0].entries != Matrix::identity(size) {
        return Err(Error::Invariant("A_0 is not the identity".into()));
    }
    let mut labels = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            let hits: Vec<usize> = (0..r).filter(|&l| adj[l].entries[(x, y)] == 1).collect();
            if hits.len() != 1 || adj.iter().any(|a| a.entries[(x, y)] > 1) {
                return Err(Error::Invariant(format!("ΣA_l ≠ J at ({x},{y})")));
            }
            labels[x * size + y] = hits[0];
        }
    }
    for l in 0..r {
        let lc = sd.conjugate_relation(l);
        for x in 0..size {
            for y in 0..size {
                if adj[l].entries[(x, y)] != adj[lc].entries[(y, x)] {
                    return Err(Error::Invariant(format!("A_{l}ᵀ ≠ A_{lc}")));
                }
            }
        }
    }
    let bad = (0..size * size).into_par_iter().find_first(|&xy| {
        let (x, y) = (xy / size, xy % size);
        let h = labels[xy];
        let mut counts = vec![0u64; r * r];
        for z in 0..size {
            counts[labels[x * size + z] * r + labels[z * size + y]] += 1;
        }
        (0..r).any(|i| (0..r).any(|j| counts[i * r + j] != sd.p(h, i, j)))
    });
    match bad {
        Some(xy) => Err(Error::Invariant(format!(
            "A_iA_j ≠ Σ p_ij^h A_h at ({},{})",
            xy / size,
            xy % size
        ))),
        None => Ok(()),
    }
}
