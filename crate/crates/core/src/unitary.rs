//! The unitary space F_{q²}ⁿ with ⟨x, y⟩ = Σ xᵢ ȳᵢ and its isotropic
//! vectors Φ(n, q).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldTables};
use crate::relation::{Layout, Range};

/// Maximum number of vectors of F_{q²}ⁿ scanned by [`UnitarySpace::enumerate`].
pub const ENUMERATION_BUDGET: u128 = 1 << 24;

/// |Φ(n, q)| = (qⁿ − (−1)ⁿ)(q^{n−1} − (−1)^{n−1}); zero for n < 2.
pub fn isotropic_count(n: u32, q: u32) -> BigInt {
    if n < 2 {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let sign = |k: u32| if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    (q.pow(n) - sign(n)) * (q.pow(n - 1) - sign(n - 1))
}

/// A nonzero isotropic vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoVector(Vec<FieldElem>);

impl IsoVector {
    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<FieldElem> {
        self.0
    }
}

impl AsRef<[FieldElem]> for IsoVector {
    fn as_ref(&self) -> &[FieldElem] {
        &self.0
    }
}

impl fmt::Display for IsoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Φ(n, q) enumerated in canonical (lexicographic) order.
#[derive(Clone, Debug)]
pub struct UnitarySpace {
    n: u32,
    field: Arc<FieldTables>,
    /// Row-major coordinates, `n` per vector.
    coords: Vec<FieldElem>,
}

impl UnitarySpace {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        Self::enumerate(Arc::new(FieldTables::new(q)?), n)
    }

    /// Exhaustive scan of F_{q²}ⁿ ∖ {0}.
    pub fn enumerate(field: Arc<FieldTables>, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let order = field.order() as u128;
        let total = order.checked_pow(n).unwrap_or(u128::MAX);
        if total > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "vector enumeration",
                size: total,
                limit: ENUMERATION_BUDGET,
            });
        }
        let n_us = n as usize;
        let tail = (total / order) as u64;
        let chunks: Vec<Vec<FieldElem>> = (0..field.order())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut v = vec![FieldElem::ZERO; n_us];
                v[0] = FieldElem::from_code(first);
                for rest in 0..tail {
                    let mut r = rest;
                    for k in (1..n_us).rev() {
                        v[k] = FieldElem::from_code((r % order as u64) as u32);
                        r /= order as u64;
                    }
                    if v.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    if field.hermitian(&v, &v).is_zero() {
                        out.extend_from_slice(&v);
                    }
                }
                out
            })
            .collect();
        Ok(UnitarySpace {
            n,
            field,
            coords: chunks.concat(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn field(&self) -> &FieldTables {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldTables> {
        Arc::clone(&self.field)
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.n, self.q())
    }

    /// |Φ(n, q)|.
    pub fn len(&self) -> usize {
        self.coords.len() / self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The vector at position `i` in canonical order.
    #[inline]
    pub fn vector(&self, i: usize) -> &[FieldElem] {
        let n = self.n as usize;
        &self.coords[i * n..(i + 1) * n]
    }

    pub fn vectors(&self) -> impl ExactSizeIterator<Item = &[FieldElem]> + '_ {
        self.coords.chunks_exact(self.n as usize)
    }

    /// Position of `x` in the canonical enumeration.
    pub fn index_of(&self, x: &[FieldElem]) -> Option<usize> {
        if x.len() != self.n as usize {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.vector(mid).cmp(x) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn hermitian_inner(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<FieldElem> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        if x.len() != self.n as usize {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n as usize,
            });
        }
        Ok(self.field.hermitian(x, y))
    }

    pub fn is_isotropic(&self, x: &[FieldElem]) -> bool {
        x.len() == self.n as usize
            && x.iter().any(|c| !c.is_zero())
            && self.field.hermitian(x, x).is_zero()
    }

    pub fn iso_vector(&self, coords: Vec<FieldElem>) -> Result<IsoVector> {
        if self.is_isotropic(&coords) {
            Ok(IsoVector(coords))
        } else {
            Err(Error::NotIsotropic)
        }
    }

    pub fn scale(&self, lambda: FieldElem, x: &[FieldElem]) -> Vec<FieldElem> {
        x.iter().map(|&c| self.field.mul(lambda, c)).collect()
    }

    /// The first a (canonical order) with a·ā = −1.
    pub fn witness_scalar(&self) -> FieldElem {
        let f = &self.field;
        f.norm_solutions(f.minus_one()).expect("−1 lies in F_q*")[0]
    }

    /// (1, a, 0, …, 0) with a·ā = −1.
    pub fn base_witness(&self) -> IsoVector {
        let mut v = vec![FieldElem::ZERO; self.n as usize];
        v[0] = FieldElem::ONE;
        v[1] = self.witness_scalar();
        IsoVector(v)
    }

    /// An isotropic v with ⟨u, v⟩ = 1.
    ///
    /// Takes the first w in canonical order with c = ⟨w, u⟩ ≠ 0, rescales it
    /// to w·c⁻¹ so that ⟨u, w⟩ = 1, and returns v = w − λu where λ is the
    /// first solution of λ + λ̄ = ⟨w, w⟩.
    pub fn hyperbolic_partner(&self, u: &[FieldElem]) -> Result<IsoVector> {
        if !self.is_isotropic(u) {
            return Err(Error::NotIsotropic);
        }
        let f = &*self.field;
        let n = self.n as usize;
        let order = f.order() as u64;
        let mut w = vec![FieldElem::ZERO; n];
        // Some unit vector always pairs nontrivially with u, so the scan is short.
        let c = (1u64..)
            .find_map(|code| {
                let mut r = code;
                for k in (0..n).rev() {
                    w[k] = FieldElem::from_code((r % order) as u32);
                    r /= order;
                }
                let c = f.hermitian(&w, u);
                (!c.is_zero()).then_some(c)
            })
            .expect("form is non-degenerate");
        let w = self.scale(f.inv(c)?, &w);
        let lambda = f.trace_solutions(f.hermitian(&w, &w))?[0];
        let v: Vec<_> = w
            .iter()
            .zip(u)
            .map(|(&wi, &ui)| f.sub(wi, f.mul(lambda, ui)))
            .collect();
        debug_assert_eq!(f.hermitian(u, &v), FieldElem::ONE);
        self.iso_vector(v)
    }

    /// A pair lying in relation `l`: (x, α^l x) for S, (α^j x, y) with (x, y)
    /// a hyperbolic pair for R, and the disjointly supported pair for T.
    pub fn witness_pair(&self, l: usize) -> Result<(IsoVector, IsoVector)> {
        let layout = self.layout();
        layout.check(l)?;
        let f = &*self.field;
        let x = self.base_witness();
        Ok(match layout.range(l) {
            Range::I1 => {
                let y = self.scale(f.exp(l as i64), x.coords());
                (x, IsoVector(y))
            }
            Range::I2 => {
                let j = l - layout.units();
                let y = self.hyperbolic_partner(x.coords())?;
                (IsoVector(self.scale(f.exp(j as i64), x.coords())), y)
            }
            Range::D => {
                let mut y = vec![FieldElem::ZERO; self.n as usize];
                y[2] = FieldElem::ONE;
                y[3] = self.witness_scalar();
                (x, IsoVector(y))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_counts() {
        assert_eq!(isotropic_count(0, 2), BigInt::zero());
        assert_eq!(isotropic_count(1, 2), BigInt::zero());
        assert_eq!(isotropic_count(2, 2), BigInt::from(9));
        assert_eq!(isotropic_count(3, 2), BigInt::from(27));
        assert_eq!(isotropic_count(4, 2), BigInt::from(135));
        assert_eq!(isotropic_count(3, 3), BigInt::from(224));
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for (n, q) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4), (2, 5)] {
            let us = UnitarySpace::new(n, q).unwrap();
            assert_eq!(BigInt::from(us.len()), isotropic_count(n, q), "n={n} q={q}");
        }
    }

    #[test]
    fn enumeration_sorted_and_indexed() {
        let us = UnitarySpace::new(3, 2).unwrap();
        let v: Vec<_> = us.vectors().collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in us.vectors().enumerate() {
            assert_eq!(us.index_of(x), Some(i));
        }
        assert_eq!(us.index_of(&[FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO]), None);
    }

    #[test]
    fn small_dimension_rejected() {
        assert_eq!(UnitarySpace::new(1, 2).unwrap_err(), Error::DimensionTooSmall(1));
    }

    #[test]
    fn budget_enforced() {
        let err = UnitarySpace::new(8, 9).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.to_string().contains("budget"));
    }

    #[test]
    fn inner_product_examples() {
        let us = UnitarySpace::new(2, 2).unwrap();
        let e1 = [FieldElem::ONE, FieldElem::ZERO];
        let ones = [FieldElem::ONE, FieldElem::ONE];
        assert_eq!(us.hermitian_inner(&e1, &e1).unwrap(), FieldElem::ONE);
        assert_eq!(us.hermitian_inner(&ones, &ones).unwrap(), FieldElem::ZERO);
        assert!(matches!(
            us.hermitian_inner(&e1, &[FieldElem::ONE]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn conjugate_symmetry_exhaustive() {
        let us = UnitarySpace::new(3, 2).unwrap();
        let f = us.field();
        for x in us.vectors() {
            for y in us.vectors() {
                let xy = f.hermitian(x, y);
                assert_eq!(f.hermitian(y, x), f.conj(xy));
            }
        }
    }

    #[test]
    fn unit_scalars_preserve_isotropy() {
        let us = UnitarySpace::new(3, 3).unwrap();
        let f = us.field();
        let units = f.norm_solutions(FieldElem::ONE).unwrap();
        for x in us.vectors() {
            for &l in &units {
                assert!(us.is_isotropic(&us.scale(l, x)));
            }
        }
    }

    #[test]
    fn hyperbolic_partner_everywhere() {
        let us = UnitarySpace::new(4, 2).unwrap();
        let f = us.field();
        for u in us.vectors() {
            let v = us.hyperbolic_partner(u).unwrap();
            assert_eq!(f.hermitian(u, v.coords()), FieldElem::ONE);
            assert!(us.is_isotropic(v.coords()));
        }
    }

    #[test]
    fn witness_t_for_q2() {
        let us = UnitarySpace::new(4, 2).unwrap();
        let d = us.layout().d();
        let (x, y) = us.witness_pair(d).unwrap();
        let one = FieldElem::ONE;
        let zero = FieldElem::ZERO;
        assert_eq!(x.coords(), &[one, one, zero, zero]);
        assert_eq!(y.coords(), &[zero, zero, one, one]);
        assert_eq!(us.witness_pair(0).unwrap().0, us.witness_pair(0).unwrap().1);

        let small = UnitarySpace::new(3, 2).unwrap();
        assert_eq!(small.witness_pair(6).unwrap_err(), Error::EmptyT(3));
    }
}
