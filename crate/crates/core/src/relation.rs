//! Relation labels S_{αⁱ}, R_{αʲ}, T and their sequential indices.
//!
//! With N = q²−1 the sequential index l ∈ [0, D], D = 2q²−2, is
//! S_{α^l} for l < N, R_{α^{l−N}} for N ≤ l < 2N and T for l = D.
//! T only exists for n ≥ 4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationLabel {
    /// y = αⁱ x.
    S(u32),
    /// ⟨x, y⟩ = αʲ.
    R(u32),
    /// ⟨x, y⟩ = 0 and y ∉ Span{x}.
    T,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationLabel::S(i) => write!(f, "S(a^{i})"),
            RelationLabel::R(j) => write!(f, "R(a^{j})"),
            RelationLabel::T => write!(f, "T"),
        }
    }
}

/// Which of the three index ranges I₁, I₂, {D} an index falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    I1,
    I2,
    D,
}

/// Index arithmetic for the scheme on Φ(n, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    n: u32,
    q: u32,
}

impl Layout {
    pub fn new(n: u32, q: u32) -> Self {
        Layout { n, q }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn has_t(&self) -> bool {
        self.n >= 4
    }

    /// q² − 1, the number of S (and of R) relations.
    pub fn units(&self) -> usize {
        (self.q * self.q - 1) as usize
    }

    /// D = 2q² − 2, the index of T (whether or not T is present).
    pub fn d(&self) -> usize {
        2 * self.units()
    }

    /// Number of relations: 2q²−2 for n ∈ {2,3}, 2q²−1 for n ≥ 4.
    pub fn rank(&self) -> usize {
        self.d() + usize::from(self.has_t())
    }

    pub fn check(&self, index: usize) -> Result<()> {
        if index < self.rank() {
            Ok(())
        } else if index == self.d() {
            Err(Error::EmptyT(self.n))
        } else {
            Err(Error::InvalidRelation {
                index,
                rank: self.rank(),
            })
        }
    }

    pub fn range(&self, index: usize) -> Range {
        let n = self.units();
        if index < n {
            Range::I1
        } else if index < 2 * n {
            Range::I2
        } else {
            Range::D
        }
    }

    pub fn label(&self, index: usize) -> Result<RelationLabel> {
        self.check(index)?;
        let n = self.units();
        Ok(match self.range(index) {
            Range::I1 => RelationLabel::S(index as u32),
            Range::I2 => RelationLabel::R((index - n) as u32),
            Range::D => RelationLabel::T,
        })
    }

    pub fn index(&self, label: RelationLabel) -> Result<usize> {
        let n = self.units();
        let index = match label {
            RelationLabel::S(i) if (i as usize) < n => i as usize,
            RelationLabel::R(j) if (j as usize) < n => j as usize + n,
            RelationLabel::T => self.d(),
            _ => {
                return Err(Error::InvalidRelation {
                    index: usize::MAX,
                    rank: self.rank(),
                })
            }
        };
        self.check(index)?;
        Ok(index)
    }

    /// l′ with R_{l′} = {(y, x) : (x, y) ∈ R_l}.
    pub fn converse(&self, index: usize) -> usize {
        let n = self.units();
        match self.range(index) {
            Range::I1 => (n - index) % n,
            Range::I2 => n + ((index - n) * self.q as usize) % n,
            Range::D => index,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(Layout::new(2, 2).rank(), 6);
        assert_eq!(Layout::new(3, 2).rank(), 6);
        assert_eq!(Layout::new(4, 2).rank(), 7);
        assert_eq!(Layout::new(3, 3).rank(), 16);
        assert_eq!(Layout::new(4, 3).rank(), 17);
        assert_eq!(Layout::new(2, 5).rank(), 48);
    }

    #[test]
    fn label_roundtrip() {
        for (n, q) in [(2, 2), (4, 2), (4, 3), (5, 9)] {
            let layout = Layout::new(n, q);
            for l in 0..layout.rank() {
                let label = layout.label(l).unwrap();
                assert_eq!(layout.index(label).unwrap(), l);
            }
        }
        let small = Layout::new(3, 2);
        assert_eq!(small.label(6), Err(Error::EmptyT(3)));
        assert!(small.index(RelationLabel::T).is_err());
        assert!(small.label(7).is_err());
    }

    #[test]
    fn converse_examples() {
        let l = Layout::new(4, 3);
        assert_eq!(l.converse(0), 0);
        assert_eq!(l.converse(16), 16);
        assert_eq!(l.converse(1), 7);
        // R(α¹) ↦ R(α³)
        assert_eq!(l.converse(9), 11);
        let l2 = Layout::new(2, 2);
        assert_eq!(l2.converse(1), 2);
        assert_eq!(l2.converse(4), 5);
        assert_eq!(l2.converse(3), 3);
    }

    #[test]
    fn converse_is_involution_preserving_ranges() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let l = Layout::new(5, q);
            for i in 0..l.rank() {
                let c = l.converse(i);
                assert_eq!(l.converse(c), i);
                assert_eq!(l.range(c), l.range(i));
            }
        }
    }
}
