//! The association scheme 𝒳(GU(n,q), Φ(n,q)): valencies, intersection
//! numbers, converse map and commutativity.

pub mod algebra;
pub mod axioms;
pub mod brute;
pub mod closed;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::relation::Layout;
use crate::unitary::{isotropic_count, UnitarySpace};

pub use algebra::{
    build_adjacency_matrices, intersection_matrices, verify_adjacency_algebra, verify_algebra_closure,
    AdjacencyMatrix, IntersectionMatrix,
};
pub use axioms::{
    check_axioms, verify_relation_matrix, verify_scheme_axioms, AxiomReport, AxiomViolation, RelationMatrix,
};
pub use brute::{classify_pair, intersection_number_bruteforce, spot_check_representatives};
pub use closed::{intersection_number_closed, valencies_closed};

/// How the intersection tensor is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildMode {
    /// Count over Φ(n, q) for one witness pair per relation.
    Bruteforce,
    /// Evaluate the closed-form table.
    Closed,
    /// Both, requiring agreement entry by entry.
    Both,
}

impl fmt::Display for BuildMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildMode::Bruteforce => "bruteforce",
            BuildMode::Closed => "closed",
            BuildMode::Both => "both",
        })
    }
}

impl FromStr for BuildMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" => Ok(BuildMode::Bruteforce),
            "closed" => Ok(BuildMode::Closed),
            "both" => Ok(BuildMode::Both),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

pub(crate) fn to_u64(v: &BigInt) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(v.to_string()))
}

/// Parameters of the scheme on Φ(n, q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeDescriptor {
    n: u32,
    q: u32,
    mode: BuildMode,
    layout: Layout,
    order: u64,
    valencies: Vec<u64>,
    /// p[h][i][j], row-major.
    tensor: Vec<u64>,
    conj_map: Vec<usize>,
}

impl SchemeDescriptor {
    /// Builds the descriptor, enumerating Φ(n, q) unless `mode` is closed.
    pub fn build(n: u32, q: u32, mode: BuildMode) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        match mode {
            BuildMode::Closed => Self::build_closed(n, q),
            _ => Self::from_space(&UnitarySpace::new(n, q)?, mode),
        }
    }

    /// Builds from an already enumerated space.
    pub fn from_space(us: &UnitarySpace, mode: BuildMode) -> Result<Self> {
        let (n, q) = (us.n(), us.q());
        if mode == BuildMode::Closed {
            return Self::build_closed(n, q);
        }
        let brute = brute::bruteforce_tensor(us)?;
        if mode == BuildMode::Both {
            let closed = closed_tensor(n, q)?;
            let r = Layout::new(n, q).rank();
            if let Some(pos) = (0..brute.len()).find(|&k| brute[k] != closed[k]) {
                return Err(Error::OracleMismatch {
                    h: pos / (r * r),
                    i: (pos / r) % r,
                    j: pos % r,
                    closed: closed[pos],
                    brute: brute[pos],
                });
            }
        }
        let sd = Self::assemble(n, q, mode, brute)?;
        if sd.order != us.len() as u64 {
            return Err(Error::Invariant(format!(
                "enumerated {} isotropic vectors, closed form gives {}",
                us.len(),
                sd.order
            )));
        }
        Ok(sd)
    }

    fn build_closed(n: u32, q: u32) -> Result<Self> {
        Self::assemble(n, q, BuildMode::Closed, closed_tensor(n, q)?)
    }

    /// Wraps an externally supplied tensor (e.g. a parsed document) and
    /// checks it against the scheme invariants.
    pub fn from_tensor(n: u32, q: u32, mode: BuildMode, tensor: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let r = Layout::new(n, q).rank();
        if tensor.len() != r * r * r {
            return Err(Error::Invariant(format!(
                "tensor has {} entries, expected {}",
                tensor.len(),
                r * r * r
            )));
        }
        Self::assemble(n, q, mode, tensor)
    }

    fn assemble(n: u32, q: u32, mode: BuildMode, tensor: Vec<u64>) -> Result<Self> {
        let layout = Layout::new(n, q);
        let r = layout.rank();
        let conj_map: Vec<usize> = (0..r).map(|l| layout.converse(l)).collect();
        let valencies: Vec<u64> = (0..r).map(|i| tensor[i * r + conj_map[i]]).collect();
        let sd = SchemeDescriptor {
            n,
            q,
            mode,
            layout,
            order: to_u64(&isotropic_count(n, q))?,
            valencies,
            tensor,
            conj_map,
        };
        sd.check_invariants()?;
        Ok(sd)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.rank();
        let expected = valencies_closed(self.n, self.q)?;
        for (i, (k, e)) in self.valencies.iter().zip(&expected).enumerate() {
            if BigInt::from(*k) != *e {
                return Err(Error::Invariant(format!("valency k_{i} = {k}, closed form gives {e}")));
            }
        }
        let total: u64 = self.valencies.iter().sum();
        if total != self.order {
            return Err(Error::Invariant(format!("valencies sum to {total}, |Φ| = {}", self.order)));
        }
        for l in 0..r {
            if self.valencies[self.conj_map[l]] != self.valencies[l] {
                return Err(Error::Invariant(format!("k_{l} ≠ k_{l}′")));
            }
        }
        for h in 0..r {
            for i in 0..r {
                let row: u64 = (0..r).map(|j| self.p(h, i, j)).sum();
                if row != self.valencies[i] {
                    return Err(Error::Invariant(format!(
                        "Σ_j p_{{{i}j}}^{h} = {row} ≠ k_{i} = {}",
                        self.valencies[i]
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let want = if j == self.conj_map[i] { self.valencies[i] } else { 0 };
                if self.p(0, i, j) != want {
                    return Err(Error::Invariant(format!("p_{{{i}{j}}}^0 = {} ≠ {want}", self.p(0, i, j))));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn mode(&self) -> BuildMode {
        self.mode
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// Number of relations D+1.
    pub fn rank(&self) -> usize {
        self.layout.rank()
    }

    /// |Φ(n, q)|.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn conj_map(&self) -> &[usize] {
        &self.conj_map
    }

    /// l′, the index of the converse relation.
    pub fn conjugate_relation(&self, l: usize) -> usize {
        self.conj_map[l]
    }

    pub fn tensor(&self) -> &[u64] {
        &self.tensor
    }

    /// p_{ij}^h.
    #[inline]
    pub fn p(&self, h: usize, i: usize, j: usize) -> u64 {
        let r = self.rank();
        self.tensor[(h * r + i) * r + j]
    }

    /// s = |Φ(n−2, q)|.
    pub fn s(&self) -> BigInt {
        isotropic_count(self.n.saturating_sub(2), self.q)
    }

    /// t = 0 for even q, (q+1)/2 for odd q.
    pub fn t(&self) -> u32 {
        closed::parity_offset(self.q)
    }

    /// `None` when p_{ij}^h = p_{ji}^h for all triples, otherwise the first
    /// violating (h, i, j) in lexicographic order.
    pub fn commutativity_witness(&self) -> Option<(usize, usize, usize)> {
        let r = self.rank();
        (0..r)
            .flat_map(|h| (0..r).flat_map(move |i| (0..r).map(move |j| (h, i, j))))
            .find(|&(h, i, j)| self.p(h, i, j) != self.p(h, j, i))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// Sparse (h, i, j, p) quadruples with p ≠ 0, in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, u64)> {
        let r = self.rank();
        self.tensor
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (k / (r * r), (k / r) % r, k % r, v))
            .collect()
    }
}

/// The closed-form tensor p[h][i][j].
pub fn closed_tensor(n: u32, q: u32) -> Result<Vec<u64>> {
    let r = Layout::new(n, q).rank();
    let mut out = Vec::with_capacity(r * r * r);
    for h in 0..r {
        for i in 0..r {
            for j in 0..r {
                out.push(to_u64(&intersection_number_closed(n, q, h, i, j)?)?);
            }
        }
    }
    Ok(out)
}
