//! Text formats: JSON documents, relation matrices and CSV tensors.

pub mod document;

use std::fmt::Write as _;

pub use document::{CharTableSection, Provenance, SchemeDocument};

use crate::error::{Error, Result};
use crate::scheme::algebra::ADJACENCY_BUDGET;
use crate::scheme::{RelationMatrix, SchemeDescriptor};
use crate::unitary::UnitarySpace;

/// Relation matrix as text: a header line "size rank", then one row of
/// whitespace-separated relation indices per point, in canonical order.
pub fn export_matrix(rm: &RelationMatrix) -> String {
    let mut out = format!("{} {}\n", rm.size(), rm.rank());
    for x in 0..rm.size() {
        let row: Vec<String> = rm.row(x).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Classifies Φ(n, q) and renders it with [`export_matrix`].
pub fn export_matrix_space(us: &UnitarySpace) -> Result<String> {
    if us.len() > ADJACENCY_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "relation matrix export",
            size: us.len() as u128,
            limit: ADJACENCY_BUDGET as u128,
        });
    }
    Ok(export_matrix(&RelationMatrix::from_space(us)?))
}

pub fn import_matrix(text: &str) -> Result<RelationMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty relation matrix".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
        .collect::<Result<_>>()?;
    let [size, rank] = nums[..] else {
        return Err(Error::Parse(format!("header must be \"size rank\", got {header:?}")));
    };
    let mut labels = Vec::with_capacity(size * size);
    let mut rows = 0;
    for line in lines {
        let before = labels.len();
        for t in line.split_whitespace() {
            let l: u16 = t.parse().map_err(|_| Error::Parse(format!("bad label {t:?}")))?;
            if l as usize >= rank {
                return Err(Error::Parse(format!("label {l} exceeds rank {rank}")));
            }
            labels.push(l);
        }
        if labels.len() - before != size {
            return Err(Error::Parse(format!("row {rows} has {} entries, expected {size}", labels.len() - before)));
        }
        rows += 1;
    }
    if rows != size {
        return Err(Error::Parse(format!("{rows} rows, expected {size}")));
    }
    let rm = RelationMatrix::new(size, labels)?;
    if rm.rank() != rank {
        return Err(Error::Parse(format!("header rank {rank}, labels use {}", rm.rank())));
    }
    Ok(rm)
}

/// Non-zero intersection numbers as "h,i,j,p" lines under a header.
pub fn tensor_csv(sd: &SchemeDescriptor) -> String {
    let mut out = String::from("h,i,j,p\n");
    for (h, i, j, v) in sd.nonzero_entries() {
        writeln!(out, "{h},{i},{j},{v}").unwrap();
    }
    out
}
