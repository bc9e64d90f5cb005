//! Exhaustive relation matrices and the scheme axioms checked on them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SchemeDescriptor;
use crate::error::{Error, Result};
use crate::scheme::brute::classify_index;
use crate::unitary::UnitarySpace;

/// Largest |Φ|² for which the full relation matrix is materialized.
pub const PAIR_BUDGET: u128 = 1 << 23;

/// M[x][y] = index of the relation containing (x, y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    size: usize,
    rank: usize,
    labels: Vec<u16>,
}

impl RelationMatrix {
    /// Wraps a row-major label array. `rank` is one more than the largest
    /// label.
    pub fn new(size: usize, labels: Vec<u16>) -> Result<Self> {
        if labels.len() != size * size {
            return Err(Error::Parse(format!(
                "expected {} labels for {size} points, found {}",
                size * size,
                labels.len()
            )));
        }
        let rank = labels.iter().max().map_or(0, |&m| m as usize + 1);
        Ok(RelationMatrix { size, rank, labels })
    }

    /// Classifies every ordered pair of Φ(n, q).
    pub fn from_space(us: &UnitarySpace) -> Result<Self> {
        let size = us.len();
        let pairs = (size as u128) * (size as u128);
        if pairs > PAIR_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "pair classification",
                size: pairs,
                limit: PAIR_BUDGET,
            });
        }
        let layout = us.layout();
        let field = us.field();
        let mut labels = vec![0u16; size * size];
        labels.par_chunks_mut(size.max(1)).enumerate().for_each(|(x, row)| {
            let vx = us.vector(x);
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = classify_index(field, &layout, vx, us.vector(y)) as u16;
            }
        });
        let mut rm = Self::new(size, labels)?;
        rm.rank = rm.rank.max(layout.rank());
        Ok(rm)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.labels[x * self.size + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.labels[x * self.size..(x + 1) * self.size]
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    /// Merges relations: label l becomes `map[l]`.
    pub fn relabel(&self, map: &[usize]) -> RelationMatrix {
        let labels: Vec<u16> = self.labels.iter().map(|&l| map[l as usize] as u16).collect();
        let rank = map.iter().max().map_or(0, |m| m + 1);
        RelationMatrix {
            size: self.size,
            rank,
            labels,
        }
    }

    /// |{z : (x,z) ∈ R_i, (z,y) ∈ R_j}| for all (i, j), as counts[i·rank + j].
    pub fn pair_counts(&self, x: usize, y: usize) -> Vec<u64> {
        let r = self.rank;
        let mut counts = vec![0u64; r * r];
        let row = self.row(x);
        for z in 0..self.size {
            counts[row[z] as usize * r + self.get(z, y)] += 1;
        }
        counts
    }

    /// Pair sizes |R_l|.
    pub fn relation_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.rank];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// A single failed axiom, with a counterexample where one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// A diagonal pair outside R₀, or an off-diagonal pair inside it.
    Identity { x: usize, y: usize, label: usize },
    EmptyRelation(usize),
    /// (x, y) ∈ R_l but (y, x) lands in a different relation than the
    /// reversal of the first pair seen.
    Converse { relation: usize, x: usize, y: usize },
    /// Intersection counts differ between two pairs of R_h.
    NotConstant {
        h: usize,
        i: usize,
        j: usize,
        first: (usize, usize),
        other: (usize, usize),
        counts: (u64, u64),
    },
    /// Disagreement with a descriptor.
    Descriptor(String),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Identity { x, y, label } => {
                write!(f, "identity axiom fails at ({x},{y}) with label {label}")
            }
            AxiomViolation::EmptyRelation(l) => write!(f, "relation {l} is empty"),
            AxiomViolation::Converse { relation, x, y } => {
                write!(f, "converse of relation {relation} is not a relation, see ({x},{y})")
            }
            AxiomViolation::NotConstant {
                h,
                i,
                j,
                first,
                other,
                counts,
            } => write!(
                f,
                "p_{{{i}{j}}}^{h} not constant: {} at {:?}, {} at {:?}",
                counts.0, first, counts.1, other
            ),
            AxiomViolation::Descriptor(msg) => f.write_str(msg),
        }
    }
}

/// Outcome of an axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub size: usize,
    pub rank: usize,
    pub relation_sizes: Vec<u64>,
    pub converse: Vec<usize>,
    /// p[h][i][j] measured on the first pair of each relation.
    pub tensor: Vec<u64>,
    pub pairs_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn p(&self, h: usize, i: usize, j: usize) -> u64 {
        self.tensor[(h * self.rank + i) * self.rank + j]
    }
}

/// Checks the four axioms on a relation matrix: R₀ is the diagonal, the
/// relations partition X×X into non-empty classes, converses are relations,
/// and intersection counts agree on the first pair of each R_h and on
/// `samples` random pairs of it.
pub fn check_axioms(rm: &RelationMatrix, samples: usize, seed: u64) -> AxiomReport {
    let (size, rank) = (rm.size(), rm.rank());
    let mut violations = Vec::new();

    for x in 0..size {
        for y in 0..size {
            let l = rm.get(x, y);
            if (x == y) != (l == 0) {
                violations.push(AxiomViolation::Identity { x, y, label: l });
                break;
            }
        }
    }

    let sizes = rm.relation_sizes();
    let mut first = vec![None; rank];
    for x in 0..size {
        for y in 0..size {
            let l = rm.get(x, y);
            if first[l].is_none() {
                first[l] = Some((x, y));
            }
        }
    }
    for (l, f) in first.iter().enumerate() {
        if f.is_none() {
            violations.push(AxiomViolation::EmptyRelation(l));
        }
    }

    let mut converse = vec![usize::MAX; rank];
    for (l, f) in first.iter().enumerate() {
        if let Some((x, y)) = *f {
            converse[l] = rm.get(y, x);
        }
    }
    'outer: for x in 0..size {
        for y in 0..size {
            let l = rm.get(x, y);
            if rm.get(y, x) != converse[l] {
                violations.push(AxiomViolation::Converse { relation: l, x, y });
                break 'outer;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tensor = vec![0u64; rank * rank * rank];
    let mut pairs_checked = 0;
    for h in 0..rank {
        let Some(base) = first[h] else { continue };
        let reference = rm.pair_counts(base.0, base.1);
        tensor[h * rank * rank..(h + 1) * rank * rank].copy_from_slice(&reference);
        pairs_checked += 1;
        let mut others = Vec::with_capacity(samples);
        for _ in 0..samples {
            let x = rng.random_range(0..size);
            let row: Vec<usize> = (0..size).filter(|&y| rm.get(x, y) == h).collect();
            if !row.is_empty() {
                others.push((x, row[rng.random_range(0..row.len())]));
            }
        }
        let results: Vec<_> = others.par_iter().map(|&(x, y)| ((x, y), rm.pair_counts(x, y))).collect();
        for (pair, counts) in results {
            pairs_checked += 1;
            if let Some(k) = (0..counts.len()).find(|&k| counts[k] != reference[k]) {
                violations.push(AxiomViolation::NotConstant {
                    h,
                    i: k / rank,
                    j: k % rank,
                    first: base,
                    other: pair,
                    counts: (reference[k], counts[k]),
                });
                break;
            }
        }
    }

    AxiomReport {
        size,
        rank,
        relation_sizes: sizes,
        converse,
        tensor,
        pairs_checked,
        violations,
    }
}

/// Checks the axioms on a relation matrix and compares everything measured
/// with the descriptor: rank, converse map, |R_l| = k_l·|Φ| and the tensor.
pub fn verify_relation_matrix(rm: &RelationMatrix, sd: &SchemeDescriptor, seed: u64) -> AxiomReport {
    let mut report = check_axioms(rm, 5, seed);
    let mut push = |msg: String| report.violations.push(AxiomViolation::Descriptor(msg));
    if rm.size() as u64 != sd.order() {
        push(format!("{} points, descriptor has |Φ| = {}", rm.size(), sd.order()));
        return report;
    }
    if report.rank != sd.rank() {
        push(format!("{} relations, descriptor has rank {}", report.rank, sd.rank()));
        return report;
    }
    if report.converse != sd.conj_map() {
        push(format!("converse map {:?} differs from {:?}", report.converse, sd.conj_map()));
    }
    for (l, (&size, &k)) in report.relation_sizes.iter().zip(sd.valencies()).enumerate() {
        if size != k * sd.order() {
            push(format!("|R_{l}| = {size}, expected k_{l}·|Φ| = {}", k * sd.order()));
        }
    }
    if let Some(pos) = (0..report.tensor.len()).find(|&k| report.tensor[k] != sd.tensor()[k]) {
        let r = sd.rank();
        push(format!(
            "p_{{{}{}}}^{} measured {} but descriptor has {}",
            (pos / r) % r,
            pos % r,
            pos / (r * r),
            report.tensor[pos],
            sd.tensor()[pos]
        ));
    }
    report
}

/// Exhaustive axiom check of the scheme on Φ(n, q) against its descriptor.
pub fn verify_scheme_axioms(us: &UnitarySpace, sd: &SchemeDescriptor, seed: u64) -> Result<AxiomReport> {
    Ok(verify_relation_matrix(&RelationMatrix::from_space(us)?, sd, seed))
}
