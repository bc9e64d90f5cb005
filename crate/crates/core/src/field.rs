//! Arithmetic in F_{q²} with the conjugation involution x ↦ x^q.
//!
//! Elements are stored in the discrete-log model relative to a fixed
//! primitive element α (the root of the Conway polynomial of F_{q²} over
//! the prime field). Multiplication is addition of logs; addition goes
//! through a Zech logarithm table, so every operation is a table lookup.
//!
//! The subfield F_q is the fixed field of conjugation, i.e. the elements
//! α^i with (q+1) | i, together with zero.

use std::fmt;

use crate::error::{Error, Result};

/// Field sizes with a pinned defining polynomial.
pub const SUPPORTED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Conway polynomials of F_{q²} over F_p, coefficients from the constant
/// term upwards (monic).
const CONWAY: [(u32, u32, &[u32]); 7] = [
    (2, 2, &[1, 1, 1]),
    (3, 3, &[2, 2, 1]),
    (4, 2, &[1, 1, 0, 0, 1]),
    (5, 5, &[2, 4, 1]),
    (7, 7, &[3, 6, 1]),
    (8, 2, &[1, 1, 0, 1, 1, 0, 1]),
    (9, 3, &[2, 0, 0, 2, 1]),
];

/// An element of F_{q²}.
///
/// The raw value is 0 for zero and `i + 1` for α^i, so the derived ordering
/// is the canonical one: 0 < α⁰ < α¹ < … < α^{q²−2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// α^i for `i` already reduced modulo q²−1.
    #[inline]
    pub(crate) const fn from_log(i: u32) -> Self {
        FieldElem(i + 1)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log relative to α, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Position in the canonical element order, in `0..q²`.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    /// Inverse of [`FieldElem::code`]; the caller guarantees `code < q²`.
    #[inline]
    pub fn from_code(code: u32) -> Self {
        FieldElem(code)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(1) => write!(f, "a"),
            Some(i) => write!(f, "a^{i}"),
        }
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Complete arithmetic model of F_{q²}.
#[derive(Clone, Debug)]
pub struct FieldTables {
    q: u32,
    p: u32,
    modulus: Vec<u32>,
    /// α^i as a packed coefficient vector (base-p digits, constant term lowest).
    exp: Vec<u32>,
    /// Inverse of `exp`; index 0 is unused.
    log: Vec<u32>,
    /// `zech[i] = log(1 + α^i)`, `None` when 1 + α^i = 0.
    zech: Vec<Option<u32>>,
    /// `conj[i] = log(conj(α^i)) = q·i mod (q²−1)`.
    conj: Vec<u32>,
}

impl FieldTables {
    pub fn new(q: u32) -> Result<Self> {
        let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let &(_, _, poly) = CONWAY
            .iter()
            .find(|(cq, _, _)| *cq == q)
            .ok_or(Error::UnsupportedQ(q))?;
        let degree = poly.len() - 1;
        let order = q * q;
        let units = (order - 1) as usize;

        let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        // Powers of x modulo the defining polynomial.
        let mut exp = Vec::with_capacity(units);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u32; degree];
        cur[0] = 1;
        for i in 0..units {
            let code = pack(&cur);
            if log[code as usize] != u32::MAX {
                return Err(Error::Invariant(format!(
                    "defining polynomial for q = {q} is not primitive (period {i})"
                )));
            }
            log[code as usize] = i as u32;
            exp.push(code);
            // cur <- x * cur mod poly
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            for (k, c) in cur.iter_mut().enumerate() {
                *c = (*c + (p - poly[k] % p) * top) % p;
            }
        }
        if pack(&cur) != 1 {
            return Err(Error::Invariant(format!(
                "α^(q²−1) ≠ 1 for q = {q}"
            )));
        }

        let zech = (0..units)
            .map(|i| {
                let code = add_codes(exp[i], 1, p);
                (code != 0).then(|| log[code as usize])
            })
            .collect();
        let conj = (0..units as u32)
            .map(|i| ((i as u64 * q as u64) % units as u64) as u32)
            .collect();

        Ok(FieldTables {
            q,
            p,
            modulus: poly.to_vec(),
            exp,
            log,
            zech,
            conj,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of elements, q².
    pub fn order(&self) -> u32 {
        self.q * self.q
    }

    /// Size of the multiplicative group, q²−1.
    #[inline]
    pub fn units(&self) -> u32 {
        self.q * self.q - 1
    }

    /// Defining polynomial over F_p, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element α.
    pub fn alpha(&self) -> FieldElem {
        self.exp(1)
    }

    /// α^i for any integer i.
    #[inline]
    pub fn exp(&self, i: i64) -> FieldElem {
        FieldElem::from_log(i.rem_euclid(self.units() as i64) as u32)
    }

    /// Packed F_p-coefficient vector of `x` (base-p digits, constant term lowest).
    pub fn to_vector_code(&self, x: FieldElem) -> u32 {
        x.log().map_or(0, |i| self.exp[i as usize])
    }

    pub fn from_vector_code(&self, code: u32) -> FieldElem {
        if code == 0 {
            FieldElem::ZERO
        } else {
            FieldElem::from_log(self.log[code as usize])
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order()).map(FieldElem)
    }

    /// Elements of the embedded subfield F_q in canonical order.
    pub fn subfield_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.elements().filter(move |&x| self.in_subfield(x))
    }

    #[inline]
    pub fn in_subfield(&self, x: FieldElem) -> bool {
        x.log().is_none_or(|i| i % (self.q + 1) == 0)
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let (Some(i), Some(j)) = (x.log(), y.log()) else {
            return if x.is_zero() { y } else { x };
        };
        let n = self.units();
        let d = if j >= i { j - i } else { j + n - i };
        match self.zech[d as usize] {
            None => FieldElem::ZERO,
            Some(z) => {
                let s = i + z;
                FieldElem::from_log(if s >= n { s - n } else { s })
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        match x.log() {
            Some(i) if self.p != 2 => {
                let n = self.units();
                FieldElem::from_log((i + n / 2) % n)
            }
            _ => x,
        }
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        match (x.log(), y.log()) {
            (Some(i), Some(j)) => {
                let n = self.units();
                let s = i + j;
                FieldElem::from_log(if s >= n { s - n } else { s })
            }
            _ => FieldElem::ZERO,
        }
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        let i = x.log().ok_or(Error::DivisionByZero)?;
        Ok(self.exp(-(i as i64)))
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^k by square-and-multiply.
    pub fn pow(&self, x: FieldElem, mut k: u64) -> FieldElem {
        let mut base = x;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// x̄ = x^q.
    #[inline]
    pub fn conj(&self, x: FieldElem) -> FieldElem {
        match x.log() {
            Some(i) => FieldElem::from_log(self.conj[i as usize]),
            None => x,
        }
    }

    /// x·x̄, an element of F_q.
    #[inline]
    pub fn norm(&self, x: FieldElem) -> FieldElem {
        self.mul(x, self.conj(x))
    }

    /// x + x̄, an element of F_q.
    #[inline]
    pub fn trace(&self, x: FieldElem) -> FieldElem {
        self.add(x, self.conj(x))
    }

    /// −1 as an element of F_q.
    pub fn minus_one(&self) -> FieldElem {
        self.neg(FieldElem::ONE)
    }

    /// All x ∈ F_{q²}* with x·x̄ = λ, in canonical order (q+1 of them).
    pub fn norm_solutions(&self, lambda: FieldElem) -> Result<Vec<FieldElem>> {
        if lambda.is_zero() {
            return Err(Error::ZeroNorm);
        }
        if !self.in_subfield(lambda) {
            return Err(Error::NotInSubfield(lambda.to_string()));
        }
        Ok(self
            .elements()
            .filter(|&x| !x.is_zero() && self.norm(x) == lambda)
            .collect())
    }

    /// All x ∈ F_{q²} with x + x̄ = λ, in canonical order (q of them).
    pub fn trace_solutions(&self, lambda: FieldElem) -> Result<Vec<FieldElem>> {
        if !self.in_subfield(lambda) {
            return Err(Error::NotInSubfield(lambda.to_string()));
        }
        Ok(self
            .elements()
            .filter(|&x| self.trace(x) == lambda)
            .collect())
    }

    /// ⟨x, y⟩ = Σ xᵢ·ȳᵢ. Slices must have equal length.
    #[inline]
    pub fn hermitian(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        x.iter()
            .zip(y)
            .fold(FieldElem::ZERO, |acc, (&a, &b)| {
                self.add(acc, self.mul(a, self.conj(b)))
            })
    }
}

fn add_codes(a: u32, b: u32, p: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FieldTables> {
        SUPPORTED_Q
            .iter()
            .map(|&q| FieldTables::new(q).unwrap())
            .collect()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn rejects_bad_q() {
        let err = FieldTables::new(6).unwrap_err();
        assert!(err.to_string().contains("q must be a prime power"));
        assert_eq!(FieldTables::new(11).unwrap_err(), Error::UnsupportedQ(11));
    }

    #[test]
    fn f4_structure() {
        let f = FieldTables::new(2).unwrap();
        let a = f.alpha();
        // α² + α + 1 = 0
        let s = f.add(f.add(f.mul(a, a), a), FieldElem::ONE);
        assert!(s.is_zero());
        assert_eq!(f.conj(a), f.mul(a, a));
        assert_eq!(f.conj(FieldElem::ZERO), FieldElem::ZERO);
    }

    #[test]
    fn f9_conj_and_fixed_field() {
        let f = FieldTables::new(3).unwrap();
        let a = f.alpha();
        assert_eq!(f.conj(a), f.pow(a, 3));
        let fixed: Vec<_> = f.elements().filter(|&x| f.conj(x) == x).collect();
        assert_eq!(fixed.len(), 3);
        // {0, 1, 2} with 2 = −1
        assert!(fixed.contains(&FieldElem::ZERO));
        assert!(fixed.contains(&FieldElem::ONE));
        assert!(fixed.contains(&f.minus_one()));
    }

    #[test]
    fn exp_log_bijection() {
        for f in all_fields() {
            let n = f.units() as usize;
            assert_eq!(f.exp.len(), n);
            assert_eq!(f.exp[0], 1);
            let mut seen = vec![false; f.order() as usize];
            for (i, &code) in f.exp.iter().enumerate() {
                assert!(!seen[code as usize]);
                seen[code as usize] = true;
                assert_eq!(f.log[code as usize] as usize, i);
            }
            assert!(!seen[0]);
        }
    }

    #[test]
    fn conj_is_involutive_automorphism() {
        for f in all_fields() {
            for x in f.elements() {
                assert_eq!(f.conj(f.conj(x)), x);
                assert_eq!(f.conj(x) == x, f.in_subfield(x));
                assert_eq!(f.conj(x), f.pow(x, f.q() as u64));
                for y in f.elements() {
                    assert_eq!(f.conj(f.add(x, y)), f.add(f.conj(x), f.conj(y)));
                    assert_eq!(f.conj(f.mul(x, y)), f.mul(f.conj(x), f.conj(y)));
                }
            }
        }
    }

    #[test]
    fn additive_group_via_vector_codes() {
        for f in all_fields() {
            let p = f.characteristic();
            for x in f.elements() {
                assert!(f.add(x, f.neg(x)).is_zero());
                for y in f.elements() {
                    let expect = add_codes(f.to_vector_code(x), f.to_vector_code(y), p);
                    assert_eq!(f.to_vector_code(f.add(x, y)), expect);
                }
            }
        }
    }

    #[test]
    fn norm_and_trace_fibres() {
        for f in all_fields() {
            let q = f.q() as usize;
            for lambda in f.subfield_elements() {
                assert_eq!(f.trace_solutions(lambda).unwrap().len(), q);
                if !lambda.is_zero() {
                    assert_eq!(f.norm_solutions(lambda).unwrap().len(), q + 1);
                }
            }
            assert_eq!(f.subfield_elements().count(), q);
        }
    }

    #[test]
    fn norm_solutions_examples() {
        let f4 = FieldTables::new(2).unwrap();
        let sols = f4.norm_solutions(FieldElem::ONE).unwrap();
        assert_eq!(sols, vec![f4.exp(0), f4.exp(1), f4.exp(2)]);
        assert_eq!(f4.norm_solutions(FieldElem::ZERO), Err(Error::ZeroNorm));

        let f9 = FieldTables::new(3).unwrap();
        assert_eq!(f9.norm_solutions(f9.minus_one()).unwrap().len(), 4);
        assert!(matches!(
            f9.norm_solutions(f9.alpha()),
            Err(Error::NotInSubfield(_))
        ));
    }

    #[test]
    fn trace_solutions_examples() {
        let f4 = FieldTables::new(2).unwrap();
        assert_eq!(
            f4.trace_solutions(FieldElem::ZERO).unwrap(),
            vec![FieldElem::ZERO, FieldElem::ONE]
        );
        assert_eq!(f4.trace_solutions(FieldElem::ONE).unwrap().len(), 2);
        let f9 = FieldTables::new(3).unwrap();
        assert_eq!(f9.trace_solutions(FieldElem::ONE).unwrap().len(), 3);
    }

    #[test]
    fn division() {
        let f = FieldTables::new(5).unwrap();
        for x in f.elements() {
            for y in f.elements().skip(1) {
                assert_eq!(f.mul(f.div(x, y).unwrap(), y), x);
            }
            assert_eq!(f.div(x, FieldElem::ZERO), Err(Error::DivisionByZero));
        }
    }
}
