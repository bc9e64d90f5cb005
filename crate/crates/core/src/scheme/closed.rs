//! Closed-form valencies and intersection numbers.
//!
//! Congruences in I₁/I₂ are taken on the raw sequential indices modulo
//! q²−1 (an I₂ index differs from its exponent by q²−1, so the reduction is
//! the same). The all-I₂ case compares i + j with h + t modulo q+1, where
//! t = 0 for even q and (q+1)/2 for odd q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::relation::{Layout, Range};
use crate::unitary::isotropic_count;

/// Offset in the all-I₂ congruence.
pub fn parity_offset(q: u32) -> u32 {
    if q.is_multiple_of(2) {
        0
    } else {
        q.div_ceil(2)
    }
}

fn validate(n: u32, q: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok(())
}

fn qpow(q: u32, e: u32) -> BigInt {
    BigInt::from(q).pow(e)
}

/// q^{2n−5} + (−q)^{n−3}, evaluated exactly (it is 0 at n = 2).
fn mixed_term(n: u32, q: u32) -> BigInt {
    let q = BigRational::from_integer(BigInt::from(q));
    let e1 = 2 * n as i32 - 5;
    let e2 = n as i32 - 3;
    let v: BigRational = Pow::pow(&q, e1) + Pow::pow(&(-q.clone()), e2);
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Valencies k₀ … k_D: 1 (q²−1 times), then |Φ|/(q²−1) − 1 (q²−1 times)
/// for n ∈ {2,3}; for n ≥ 4 the middle block is q^{2n−3} and k_D = q²|Φ(n−2,q)|.
pub fn valencies_closed(n: u32, q: u32) -> Result<Vec<BigInt>> {
    validate(n, q)?;
    let layout = Layout::new(n, q);
    let units = layout.units();
    let mut out = vec![BigInt::one(); units];
    let middle = if n < 4 {
        isotropic_count(n, q) / BigInt::from(units) - 1
    } else {
        qpow(q, 2 * n - 3)
    };
    out.extend(std::iter::repeat_n(middle, units));
    if layout.has_t() {
        out.push(qpow(q, 2) * isotropic_count(n - 2, q));
    }
    Ok(out)
}

/// p_{ij}^h from the closed-form table of cases keyed by the ranges of
/// (i, j, h).
pub fn intersection_number_closed(n: u32, q: u32, h: usize, i: usize, j: usize) -> Result<BigInt> {
    validate(n, q)?;
    let layout = Layout::new(n, q);
    for idx in [h, i, j] {
        layout.check(idx)?;
    }
    let m = layout.units();
    let congruent = |a: usize, b: usize| a % m == b % m;
    let indicator = |c: bool| if c { BigInt::one() } else { BigInt::zero() };
    let s = || isotropic_count(n - 2, q);
    let qq = q as usize;

    use Range::*;
    Ok(match (layout.range(i), layout.range(j), layout.range(h)) {
        (I1, I1, I1) => indicator(congruent(h, i + j)),
        (I1, I2, I2) => indicator(congruent(h + i, j)),
        (I1, D, D) => BigInt::one(),
        (I2, I1, I2) => indicator(congruent(h, i + j * qq)),
        (I2, I2, I1) => {
            if congruent(qq * (h + i), j) {
                qpow(q, 2 * n - 3)
            } else {
                BigInt::zero()
            }
        }
        (I2, I2, I2) => {
            let t = parity_offset(q) as usize;
            if (i + j) % (qq + 1) == (h + t) % (qq + 1) {
                s() + 1
            } else {
                mixed_term(n, q)
            }
        }
        (I2, I2, D) | (I2, D, D) | (D, I2, D) => qpow(q, 2 * n - 5),
        (I2, D, I2) | (D, I2, I2) | (D, D, I2) => s(),
        (D, I1, D) => BigInt::one(),
        (D, D, I1) => qpow(q, 2) * s(),
        (D, D, D) => {
            let units = BigInt::from(m);
            &units * &units + qpow(q, 4) * isotropic_count(n.saturating_sub(4), q)
        }
        _ => BigInt::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, q: u32, h: usize, i: usize, j: usize) -> i64 {
        intersection_number_closed(n, q, h, i, j)
            .unwrap()
            .try_into()
            .unwrap()
    }

    #[test]
    fn offsets() {
        assert_eq!(parity_offset(2), 0);
        assert_eq!(parity_offset(3), 2);
        assert_eq!(parity_offset(9), 5);
    }

    #[test]
    fn mixed_term_values() {
        assert_eq!(mixed_term(2, 3), BigInt::zero());
        assert_eq!(mixed_term(3, 2), BigInt::from(3));
        // 2^3 + (−2)^1
        assert_eq!(mixed_term(4, 2), BigInt::from(6));
    }

    #[test]
    fn table_examples() {
        // h ≡ i + j in I₁
        assert_eq!(p(4, 2, 0, 1, 2), 1);
        assert_eq!(p(4, 2, 1, 1, 2), 0);
        // k_D recovered as p_{DD}^0 = q²|Φ(2,2)| = 36
        assert_eq!(p(4, 2, 0, 6, 6), 36);
        assert_eq!(p(4, 2, 6, 6, 6), 9);
        assert_eq!(p(5, 2, 3, 6, 6), 27);
        // non-commutativity witness at q = 3
        assert_eq!(p(4, 3, 3, 8, 9), 243);
        assert_eq!(p(4, 3, 3, 9, 8), 0);
    }

    #[test]
    fn valencies() {
        let v = |n, q| -> Vec<i64> {
            valencies_closed(n, q)
                .unwrap()
                .into_iter()
                .map(|k| k.try_into().unwrap())
                .collect()
        };
        assert_eq!(v(2, 2), vec![1, 1, 1, 2, 2, 2]);
        assert_eq!(v(3, 2), vec![1, 1, 1, 8, 8, 8]);
        assert_eq!(v(4, 2), vec![1, 1, 1, 32, 32, 32, 36]);
        assert_eq!(v(5, 2), vec![1, 1, 1, 128, 128, 128, 108]);
    }

    #[test]
    fn rejects_bad_indices() {
        assert_eq!(
            intersection_number_closed(3, 2, 6, 0, 0).unwrap_err(),
            Error::EmptyT(3)
        );
        assert!(intersection_number_closed(4, 2, 7, 0, 0).is_err());
        assert!(intersection_number_closed(4, 6, 0, 0, 0).is_err());
        assert!(intersection_number_closed(1, 2, 0, 0, 0).is_err());
    }
}
