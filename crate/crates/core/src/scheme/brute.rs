//! Pair classification and brute-force intersection counts over Φ(n, q).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldTables};
use crate::relation::{Layout, RelationLabel};
use crate::unitary::UnitarySpace;

/// Sequential index of the relation containing (x, y). Both vectors must be
/// nonzero and isotropic. Returns D for T-pairs even when the layout has no T.
#[inline]
pub fn classify_index(field: &FieldTables, layout: &Layout, x: &[FieldElem], y: &[FieldElem]) -> usize {
    let units = layout.units();
    if let Some(j) = field.hermitian(x, y).log() {
        return units + j as usize;
    }
    let p = x.iter().position(|c| !c.is_zero()).expect("x is nonzero");
    let Some(lambda) = field.div(y[p], x[p]).ok().filter(|l| !l.is_zero()) else {
        return layout.d();
    };
    if x.iter().zip(y).all(|(&a, &b)| field.mul(lambda, a) == b) {
        lambda.log().unwrap() as usize
    } else {
        layout.d()
    }
}

/// The relation label of (x, y).
pub fn classify_pair(us: &UnitarySpace, x: &[FieldElem], y: &[FieldElem]) -> Result<RelationLabel> {
    if !us.is_isotropic(x) || !us.is_isotropic(y) {
        return Err(Error::NotIsotropic);
    }
    let layout = us.layout();
    let l = classify_index(us.field(), &layout, x, y);
    if l >= layout.rank() {
        return Err(Error::Invariant(format!(
            "T-pair found in dimension {} where T must be empty",
            us.n()
        )));
    }
    layout.label(l)
}

/// counts[i·r + j] = |{z : (x,z) ∈ R_i, (z,y) ∈ R_j}| with r = D+1.
pub fn intersection_counts(us: &UnitarySpace, x: &[FieldElem], y: &[FieldElem]) -> Vec<u64> {
    let layout = us.layout();
    let field = us.field();
    let r = layout.d() + 1;
    let mut counts = vec![0u64; r * r];
    for z in us.vectors() {
        let i = classify_index(field, &layout, x, z);
        let j = classify_index(field, &layout, z, y);
        counts[i * r + j] += 1;
    }
    counts
}

fn restrict(counts: &[u64], layout: &Layout) -> Result<Vec<u64>> {
    let r = layout.d() + 1;
    let rank = layout.rank();
    let mut out = Vec::with_capacity(rank * rank);
    for i in 0..r {
        for j in 0..r {
            let c = counts[i * r + j];
            if i < rank && j < rank {
                out.push(c);
            } else if c != 0 {
                return Err(Error::Invariant("T-pair found where T must be empty".into()));
            }
        }
    }
    Ok(out)
}

/// p_{ij}^h counted over z for the witness pair of R_h.
pub fn intersection_number_bruteforce(us: &UnitarySpace, h: usize, i: usize, j: usize) -> Result<u64> {
    let layout = us.layout();
    layout.check(i)?;
    layout.check(j)?;
    let (x, y) = us.witness_pair(h)?;
    let counts = restrict(&intersection_counts(us, x.coords(), y.coords()), &layout)?;
    Ok(counts[i * layout.rank() + j])
}

/// Full tensor p[h][i][j] (row-major, rank³ entries), one witness pair per h.
pub fn bruteforce_tensor(us: &UnitarySpace) -> Result<Vec<u64>> {
    let layout = us.layout();
    let slices: Vec<Vec<u64>> = (0..layout.rank())
        .into_par_iter()
        .map(|h| {
            let (x, y) = us.witness_pair(h)?;
            if classify_index(us.field(), &layout, x.coords(), y.coords()) != h {
                return Err(Error::Invariant(format!("witness pair for relation {h} misclassified")));
            }
            restrict(&intersection_counts(us, x.coords(), y.coords()), &layout)
        })
        .collect::<Result<_>>()?;
    Ok(slices.concat())
}

/// A uniformly chosen x and a uniformly chosen y with (x, y) ∈ R_h.
pub fn random_pair<R: Rng>(us: &UnitarySpace, h: usize, rng: &mut R) -> Option<(usize, usize)> {
    let layout = us.layout();
    let x = rng.random_range(0..us.len());
    let row: Vec<usize> = (0..us.len())
        .filter(|&y| classify_index(us.field(), &layout, us.vector(x), us.vector(y)) == h)
        .collect();
    if row.is_empty() {
        None
    } else {
        Some((x, row[rng.random_range(0..row.len())]))
    }
}

/// Recounts every p_{ij}^h on `samples` random pairs of each R_h and
/// compares with `tensor`.
pub fn spot_check_representatives(us: &UnitarySpace, tensor: &[u64], samples: usize, seed: u64) -> Result<()> {
    let layout = us.layout();
    let r = layout.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for h in 0..r {
        for _ in 0..samples {
            if let Some((x, y)) = random_pair(us, h, &mut rng) {
                pairs.push((h, x, y));
            }
        }
    }
    pairs.into_par_iter().try_for_each(|(h, x, y)| {
        let counts = restrict(&intersection_counts(us, us.vector(x), us.vector(y)), &layout)?;
        match (0..r * r).find(|&k| counts[k] != tensor[h * r * r + k]) {
            Some(k) => Err(Error::Invariant(format!(
                "p_{{{}{}}}^{h} is {} on pair ({x},{y}) but {} on the witness",
                k / r,
                k % r,
                counts[k],
                tensor[h * r * r + k]
            ))),
            None => Ok(()),
        }
    })
}
