//! Fusion of relations and the induced character tables.

use num_bigint::BigInt;

use super::{verify_homomorphism, verify_orthogonality, verify_reconstruction, CharTable};
use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scheme::{check_axioms, RelationMatrix};

/// A fusion Λ of the relations, its dual partition Λ* of the rows, and
/// the fused table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fusion {
    pub blocks: Vec<Vec<usize>>,
    pub dual: Vec<Vec<usize>>,
    pub table: CharTable,
}

impl Fusion {
    /// Relation index → block index.
    pub fn block_map(&self) -> Vec<usize> {
        block_map(&self.blocks)
    }
}

fn block_map(blocks: &[Vec<usize>]) -> Vec<usize> {
    let d = blocks.iter().map(Vec::len).sum();
    let mut map = vec![0; d];
    for (a, block) in blocks.iter().enumerate() {
        for &l in block {
            map[l] = a;
        }
    }
    map
}

/// Sorts blocks internally and by smallest element, then checks that they
/// partition 0..dim, that {0} is a block and that converses of blocks are
/// blocks.
fn normalize(blocks: &[Vec<usize>], conj: &[usize]) -> Result<Vec<Vec<usize>>> {
    let dim = conj.len();
    let mut blocks: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    if blocks.iter().any(Vec::is_empty) {
        return Err(Error::MalformedPartition("empty block".into()));
    }
    blocks.sort();
    let mut seen = vec![false; dim];
    for &l in blocks.iter().flatten() {
        if l >= dim || std::mem::replace(&mut seen[l], true) {
            return Err(Error::MalformedPartition(format!(
                "relation {l} is out of range or repeated"
            )));
        }
    }
    if let Some(l) = seen.iter().position(|s| !s) {
        return Err(Error::MalformedPartition(format!("relation {l} is not covered")));
    }
    if blocks[0] != [0] {
        return Err(Error::MalformedPartition("{0} must be a block".into()));
    }
    for b in &blocks {
        let mut image: Vec<usize> = b.iter().map(|&l| conj[l]).collect();
        image.sort_unstable();
        if !blocks.contains(&image) {
            return Err(Error::MalformedPartition(format!(
                "converse of block {b:?} is not a block"
            )));
        }
    }
    Ok(blocks)
}

/// Visits all set partitions of `items` into exactly `parts` blocks, in
/// restricted-growth order.
fn set_partitions(items: &[usize], parts: usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    fn go(items: &[usize], parts: usize, acc: &mut Vec<Vec<usize>>, visit: &mut impl FnMut(&[Vec<usize>])) {
        let Some((&first, rest)) = items.split_first() else {
            if acc.len() == parts {
                visit(acc);
            }
            return;
        };
        if acc.len() + items.len() < parts {
            return;
        }
        for b in 0..acc.len() {
            acc[b].push(first);
            go(rest, parts, acc, visit);
            acc[b].pop();
        }
        if acc.len() < parts {
            acc.push(vec![first]);
            go(rest, parts, acc, visit);
            acc.pop();
        }
    }
    go(items, parts, &mut Vec::new(), visit);
}

/// Fuses the relations of `ct` along `blocks`. The dual partition is found
/// by exhaustive search over partitions of the non-principal rows into as
/// many blocks as Λ has non-trivial blocks, requiring each (Λ*_β, Λ_α)
/// block of P to have constant row sums.
pub fn fuse(ct: &CharTable, blocks: &[Vec<usize>]) -> Result<Fusion> {
    let blocks = normalize(blocks, ct.conj_map())?;
    let e = blocks.len();
    let d = ct.dim();
    let sums: Vec<Vec<Eisenstein>> = (0..d)
        .map(|i| blocks.iter().map(|b| b.iter().map(|&j| ct.entry(i, j)).sum()).collect())
        .collect();

    let rows: Vec<usize> = (1..d).collect();
    let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
    set_partitions(&rows, e - 1, &mut |parts| {
        if parts.iter().all(|part| part.iter().all(|&i| sums[i] == sums[part[0]])) {
            let mut dual = vec![vec![0]];
            dual.extend(parts.iter().cloned());
            found.push(dual);
        }
    });
    let dual = match found.len() {
        1 => found.pop().unwrap(),
        0 => {
            let mut distinct: Vec<&Vec<Eisenstein>> = Vec::new();
            for s in &sums {
                if !distinct.contains(&s) {
                    distinct.push(s);
                }
            }
            return Err(Error::NoDualPartition {
                distinct: distinct.len(),
                expected: e,
            });
        }
        _ => return Err(Error::Invariant("dual partition is not unique".into())),
    };
    if dual.iter().skip(1).any(|b| sums[b[0]] == sums[0]) {
        return Err(Error::Invariant("a fused row repeats the principal row".into()));
    }

    let p = Matrix::from_fn(e, e, |beta, alpha| sums[dual[beta][0]][alpha].clone());
    let m: Vec<BigInt> = dual
        .iter()
        .map(|b| b.iter().map(|&i| ct.multiplicities()[i].clone()).sum())
        .collect();
    let map = block_map(&blocks);
    let conj = blocks.iter().map(|b| map[ct.conj_map()[b[0]]]).collect();
    let table = CharTable::from_parts(ct.n(), ct.order().clone(), p, m, conj)?;
    verify_orthogonality(&table)?;
    Ok(Fusion { blocks, dual, table })
}

/// The symmetrization and the coarse fusion for dimension n.
pub fn canonical_fusions(n: u32) -> Vec<(&'static str, Vec<Vec<usize>>)> {
    let mut sym = vec![vec![0], vec![1, 2], vec![3], vec![4, 5]];
    let mut coarse = vec![vec![0], vec![1, 2], vec![3, 4, 5]];
    if n >= 4 {
        sym.push(vec![6]);
        coarse.push(vec![6]);
    }
    vec![("symmetrize", sym), ("coarse", coarse)]
}

/// Looks up a fusion by name; "none" gives `None`.
pub fn canonical_fusion(n: u32, name: &str) -> Result<Option<Vec<Vec<usize>>>> {
    if name == "none" {
        return Ok(None);
    }
    canonical_fusions(n)
        .into_iter()
        .find(|(k, _)| *k == name)
        .map(|(_, b)| Some(b))
        .ok_or_else(|| Error::Parse(format!("unknown fusion {name:?}")))
}

/// Merges the relations of `rm` along the fusion's blocks, checks the
/// axioms on the result and compares its intersection numbers with the
/// fused table.
pub fn verify_fusion_on_relations(rm: &RelationMatrix, fusion: &Fusion, seed: u64) -> Result<()> {
    let fused = rm.relabel(&fusion.block_map());
    let report = check_axioms(&fused, 5, seed);
    if let Some(v) = report.violations.first() {
        return Err(Error::Invariant(format!("fused relations: {v}")));
    }
    verify_reconstruction(&fusion.table, &report.tensor)?;
    verify_homomorphism(&fusion.table, &report.tensor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::char_table_closed;
    use crate::unitary::UnitarySpace;

    fn rows(f: &Fusion) -> Vec<(Vec<i64>, i64)> {
        let t = &f.table;
        let mut out: Vec<_> = (0..t.dim())
            .map(|i| {
                let row = t
                    .row(i)
                    .iter()
                    .map(|x| x.to_rational().unwrap().to_integer().try_into().unwrap())
                    .collect();
                (row, t.multiplicities()[i].clone().try_into().unwrap())
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn singletons_are_identity() {
        let ct = char_table_closed(4).unwrap();
        let blocks: Vec<Vec<usize>> = (0..7).map(|l| vec![l]).collect();
        let f = fuse(&ct, &blocks).unwrap();
        assert_eq!(f.table, ct);
        assert_eq!(f.dual, blocks);
    }

    #[test]
    fn small_fusions() {
        let ct = char_table_closed(2).unwrap();
        let sym = fuse(&ct, &canonical_fusions(2)[0].1).unwrap();
        let mut want = vec![
            (vec![1, 2, 2, 4], 1),
            (vec![1, -1, 2, -2], 2),
            (vec![1, 2, -1, -2], 2),
            (vec![1, -1, -1, 1], 4),
        ];
        want.sort();
        assert_eq!(rows(&sym), want);
        let coarse = fuse(&char_table_closed(3).unwrap(), &canonical_fusions(3)[1].1).unwrap();
        let mut want = vec![(vec![1, 2, 24], 1), (vec![1, 2, -3], 8), (vec![1, -1, 0], 18)];
        want.sort();
        assert_eq!(rows(&coarse), want);
    }

    #[test]
    fn coarse_n4() {
        let f = fuse(&char_table_closed(4).unwrap(), &canonical_fusion(4, "coarse").unwrap().unwrap()).unwrap();
        assert!(rows(&f).contains(&(vec![1, -1, 0, 0], 90)));
    }

    #[test]
    fn rejects_bad_partitions() {
        let ct = char_table_closed(2).unwrap();
        assert!(matches!(
            fuse(&ct, &[vec![0, 1], vec![2], vec![3, 4, 5]]),
            Err(Error::MalformedPartition(_))
        ));
        assert!(matches!(
            fuse(&ct, &[vec![0], vec![1], vec![2, 3, 4, 5]]),
            Err(Error::MalformedPartition(_))
        ));
        assert!(matches!(
            fuse(&char_table_closed(4).unwrap(), &[vec![0], vec![1, 2], vec![3, 6], vec![4, 5]]),
            Err(Error::NoDualPartition {
                distinct: 5,
                expected: 4
            })
        ));
        assert!(canonical_fusion(2, "fine").is_err());
        assert_eq!(canonical_fusion(2, "none").unwrap(), None);
    }

    #[test]
    fn relation_level_agreement() {
        for n in [2, 3, 4] {
            let us = UnitarySpace::new(n, 2).unwrap();
            let rm = RelationMatrix::from_space(&us).unwrap();
            let ct = char_table_closed(n).unwrap();
            for (_, blocks) in canonical_fusions(n) {
                let f = fuse(&ct, &blocks).unwrap();
                verify_fusion_on_relations(&rm, &f, 3).unwrap();
            }
        }
    }
}
