//! Self-describing JSON documents for a scheme.

use serde::{Deserialize, Serialize};

use crate::chartable::{fuse, CharTable, Fusion};
use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::scheme::{to_u64, BuildMode, SchemeDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: BuildMode,
    /// Where the tensor came from: "closed form", "brute force" or both.
    pub tensor_source: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableSection {
    /// Fusion applied before printing, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    /// Rows of P as "a+b*w" strings.
    pub rows: Vec<Vec<Eisenstein>>,
    pub multiplicities: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub n: u32,
    pub q: u32,
    pub rank: usize,
    pub order: u64,
    pub valencies: Vec<u64>,
    pub conj_map: Vec<usize>,
    pub commutative: bool,
    /// Non-zero (h, i, j, p_{ij}^h), sorted lexicographically.
    pub tensor: Vec<(usize, usize, usize, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_table: Option<CharTableSection>,
    pub provenance: Provenance,
    pub verification: Vec<String>,
}

fn source(mode: BuildMode) -> &'static str {
    match mode {
        BuildMode::Bruteforce => "brute force",
        BuildMode::Closed => "closed form",
        BuildMode::Both => "closed form and brute force, entrywise equal",
    }
}

impl SchemeDocument {
    pub fn from_descriptor(sd: &SchemeDescriptor, seed: u64, verification: Vec<String>) -> Self {
        SchemeDocument {
            n: sd.n(),
            q: sd.q(),
            rank: sd.rank(),
            order: sd.order(),
            valencies: sd.valencies().to_vec(),
            conj_map: sd.conj_map().to_vec(),
            commutative: sd.is_commutative(),
            tensor: sd.nonzero_entries(),
            char_table: None,
            provenance: Provenance {
                mode: sd.mode(),
                tensor_source: source(sd.mode()).into(),
                seed,
            },
            verification,
        }
    }

    pub fn attach_char_table(&mut self, ct: &CharTable, fusion: Option<(&str, &Fusion)>) -> Result<()> {
        let ct_used = fusion.map_or(ct, |(_, f)| &f.table);
        self.char_table = Some(CharTableSection {
            fusion: fusion.map(|(name, _)| name.to_string()),
            blocks: fusion.map(|(_, f)| f.blocks.clone()),
            rows: (0..ct_used.dim()).map(|i| ct_used.row(i).to_vec()).collect(),
            multiplicities: ct_used.multiplicities().iter().map(to_u64).collect::<Result<_>>()?,
        });
        Ok(())
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rebuilds the descriptor from the stored tensor, re-checking every
    /// invariant and the stored metadata.
    pub fn to_descriptor(&self) -> Result<SchemeDescriptor> {
        let r = self.rank;
        let mut tensor = vec![0u64; r * r * r];
        let mut last = None;
        for &(h, i, j, v) in &self.tensor {
            if h >= r || i >= r || j >= r {
                return Err(Error::Parse(format!("tensor entry ({h},{i},{j}) out of range")));
            }
            if last.is_some_and(|l| l >= (h, i, j)) {
                return Err(Error::Parse("tensor entries are not strictly sorted".into()));
            }
            last = Some((h, i, j));
            tensor[(h * r + i) * r + j] = v;
        }
        let sd = SchemeDescriptor::from_tensor(self.n, self.q, self.provenance.mode, tensor)?;
        if sd.rank() != r
            || sd.order() != self.order
            || sd.valencies() != self.valencies
            || sd.conj_map() != self.conj_map
            || sd.is_commutative() != self.commutative
        {
            return Err(Error::Parse("metadata disagrees with the tensor".into()));
        }
        Ok(sd)
    }

    /// Rebuilds the stored character table (fused if a fusion was applied)
    /// and checks it against the closed form.
    pub fn to_char_table(&self) -> Result<Option<CharTable>> {
        let Some(section) = &self.char_table else {
            return Ok(None);
        };
        let base = crate::chartable::char_table_closed(self.n)?;
        let expected = match &section.blocks {
            Some(blocks) => fuse(&base, blocks)?.table,
            None => base,
        };
        let rows_match = section.rows.len() == expected.dim()
            && section.rows.iter().enumerate().all(|(i, row)| row == expected.row(i));
        let m_match = section
            .multiplicities
            .iter()
            .map(|&m| num_bigint::BigInt::from(m))
            .eq(expected.multiplicities().iter().cloned());
        if !rows_match || !m_match {
            return Err(Error::Parse("stored character table differs from the closed form".into()));
        }
        Ok(Some(expected))
    }
}
