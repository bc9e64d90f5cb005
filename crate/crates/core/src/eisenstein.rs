//! Exact arithmetic in ℚ(ω), ω² + ω + 1 = 0.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// a + bω with exact rational a, b.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    a: BigRational,
    b: BigRational,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Eisenstein::new(rat(a), rat(b))
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Eisenstein::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Eisenstein::new(r, BigRational::zero())
    }

    pub fn omega() -> Self {
        Eisenstein::from_ints(0, 1)
    }

    /// ω̄ = ω² = −1 − ω.
    pub fn omega_bar() -> Self {
        Eisenstein::from_ints(-1, -1)
    }

    pub fn re_part(&self) -> &BigRational {
        &self.a
    }

    pub fn omega_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if ω does not occur.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// Complex conjugate (a − b) − bω.
    pub fn conj(&self) -> Self {
        Eisenstein::new(&self.a - &self.b, -&self.b)
    }

    /// x·conj(x) = a² − ab + b².
    pub fn abs_square(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.abs_square();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Eisenstein::new(c.a / &n, c.b / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Eisenstein::new(&self.a * r, &self.b * r)
    }

    /// Readable form in ω and ω̄, e.g. "−4ω̄" for 4 + 4ω.
    pub fn pretty(&self) -> String {
        fn coef(c: &BigRational, sym: &str) -> String {
            if sym.is_empty() {
                return c.to_string();
            }
            if c.is_one() {
                sym.to_string()
            } else if *c == -BigRational::one() {
                format!("-{sym}")
            } else {
                format!("{c}{sym}")
            }
        }
        if self.b.is_zero() {
            coef(&self.a, "")
        } else if self.a.is_zero() {
            coef(&self.b, "ω")
        } else if self.a == self.b {
            coef(&-&self.a, "ω̄")
        } else {
            let b = coef(&self.b, "ω");
            if b.starts_with('-') {
                format!("{}{b}", self.a)
            } else {
                format!("{}+{b}", self.a)
            }
        }
    }
}

impl fmt::Display for Eisenstein {
    /// Canonical exact form "a+b*w", both components always present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w", self.a, self.b)
    }
}

impl FromStr for Eisenstein {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an Eisenstein rational: {s:?}"));
        let split = s.char_indices().skip(1).find(|&(_, c)| c == '+').map(|(i, _)| i).ok_or_else(bad)?;
        let (a, b) = (&s[..split], &s[split + 1..]);
        let b = b.strip_suffix("*w").ok_or_else(bad)?;
        let a: BigRational = a.parse().map_err(|_| bad())?;
        let b: BigRational = b.parse().map_err(|_| bad())?;
        Ok(Eisenstein::new(a, b))
    }
}

impl Serialize for Eisenstein {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Eisenstein {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;

    fn add(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;

    fn sub(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;

    fn mul(self, rhs: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &rhs.b;
        Eisenstein::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - bd,
        )
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;

    fn neg(self) -> Eisenstein {
        Eisenstein::new(-&self.a, -&self.b)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Eisenstein {
            type Output = Eisenstein;

            fn $m(self, rhs: Eisenstein) -> Eisenstein {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Eisenstein {
    type Output = Eisenstein;

    fn neg(self) -> Eisenstein {
        -&self
    }
}

impl AddAssign<&Eisenstein> for Eisenstein {
    fn add_assign(&mut self, rhs: &Eisenstein) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::default()
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::from_ints(1, 0)
    }
}

impl Sum for Eisenstein {
    fn sum<I: Iterator<Item = Eisenstein>>(iter: I) -> Self {
        iter.fold(Eisenstein::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Eisenstein> for Eisenstein {
    fn sum<I: Iterator<Item = &'a Eisenstein>>(iter: I) -> Self {
        iter.fold(Eisenstein::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}
