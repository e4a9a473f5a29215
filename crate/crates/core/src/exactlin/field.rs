//! Base fields and exact scalars.
//!
//! Rationals keep an `i64` fast path and fall back to arbitrary precision on
//! overflow, so the common case of small structure constants never allocates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The base field `k` of every object in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Largest modulus accepted; products of residues must fit in a `u64`.
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn prime(p: u64) -> Result<Self, Error> {
        if p < 2 || p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// True when `char k` divides `n`.
    pub fn divides(&self, n: usize) -> bool {
        match self {
            FieldSpec::Rationals => false,
            FieldSpec::PrimeField(p) => n as u64 % p == 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `F5`, `Fp5`, `Fp:5`, `GF5`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .or_else(|| t.strip_prefix("Fp:"))
            .or_else(|| t.strip_prefix("Fp"))
            .or_else(|| t.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
    Mod { v: u64, p: u64 },
}

/// An exact element of a [`FieldSpec`].
///
/// Rational values are always in lowest terms with positive denominator;
/// residues lie in `[0, p)`.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

fn big(r: &Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn shrink(r: BigRational) -> Scalar {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Scalar(Repr::Small(Ratio::new_raw(n, d))),
        _ => Scalar(Repr::Big(Box::new(r))),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field {
            FieldSpec::Rationals => Scalar(Repr::Small(Ratio::from_integer(n))),
            FieldSpec::PrimeField(p) => Scalar(Repr::Mod {
                v: n.rem_euclid(p as i64) as u64,
                p,
            }),
        }
    }

    /// `num / den` in the given field. Panics if `den` is zero in that field.
    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Self {
        let n = Scalar::from_i64(field, num);
        let d = Scalar::from_i64(field, den);
        &n * &d.inv().expect("zero denominator")
    }

    pub fn from_big_rational(field: FieldSpec, r: &BigRational) -> Result<Self, Error> {
        match field {
            FieldSpec::Rationals => Ok(shrink(r.clone())),
            FieldSpec::PrimeField(p) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::Parse(format!(
                        "{r} has a denominator divisible by {p}"
                    )));
                }
                Ok(Scalar(Repr::Mod { v: n, p }) * Scalar(Repr::Mod { v: d, p }).inv().unwrap())
            }
        }
    }

    /// Parses `"n"`, `"p/q"` or a decimal integer string into `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self, Error> {
        let r: BigRational = match s.trim().split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s}")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                s.trim().parse().map_err(|_| Error::Parse(s.to_string()))?,
            ),
        };
        Scalar::from_big_rational(field, &r)
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Small(_) | Repr::Big(_) => FieldSpec::Rationals,
            Repr::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(r) => r.is_one(),
            Repr::Mod { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) => {
                let (n, d) = (*r.numer(), *r.denom());
                if n == i64::MIN {
                    shrink(big(r).recip())
                } else if n < 0 {
                    Scalar(Repr::Small(Ratio::new_raw(-d, -n)))
                } else {
                    Scalar(Repr::Small(Ratio::new_raw(d, n)))
                }
            }
            Repr::Big(r) => shrink(r.recip()),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            }),
        })
    }

    /// Rational value (residues are reported by their representative in `[0, p)`).
    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => big(r),
            Repr::Big(r) => (**r).clone(),
            Repr::Mod { v, .. } => BigRational::from_integer(BigInt::from(*v)),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
            Repr::Mod { .. } => false,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalar field mismatch: {} vs {}",
        a.field(),
        b.field()
    )
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => {
                let s = a + b;
                Scalar(Repr::Mod {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                })
            }
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(b) {
                Some(r) => Scalar(Repr::Small(r)),
                None => shrink(big(a) + big(b)),
            },
            (Repr::Mod { .. }, _) | (_, Repr::Mod { .. }) => mismatch(self, rhs),
            _ => shrink(self.to_big_rational() + rhs.to_big_rational()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar(Repr::Mod {
                v: if a >= b { a - b } else { a + p - b },
                p: *p,
            }),
            (Repr::Small(a), Repr::Small(b)) => match a.checked_sub(b) {
                Some(r) => Scalar(Repr::Small(r)),
                None => shrink(big(a) - big(b)),
            },
            (Repr::Mod { .. }, _) | (_, Repr::Mod { .. }) => mismatch(self, rhs),
            _ => shrink(self.to_big_rational() - rhs.to_big_rational()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar(Repr::Mod {
                v: a * b % p,
                p: *p,
            }),
            (Repr::Small(a), Repr::Small(b)) => {
                if a.is_zero() || b.is_zero() {
                    return Scalar(Repr::Small(Ratio::from_integer(0)));
                }
                match a.checked_mul(b) {
                    Some(r) => Scalar(Repr::Small(r)),
                    None => shrink(big(a) * big(b)),
                }
            }
            (Repr::Mod { .. }, _) | (_, Repr::Mod { .. }) => mismatch(self, rhs),
            _ => shrink(self.to_big_rational() * rhs.to_big_rational()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(r) => match r.numer().checked_neg() {
                Some(n) => Scalar(Repr::Small(Ratio::new_raw(n, *r.denom()))),
                None => shrink(-big(r)),
            },
            Repr::Big(r) => shrink(-(**r).clone()),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) => a == b && p == q,
            (Repr::Mod { .. }, _) | (_, Repr::Mod { .. }) => false,
            _ => self.to_big_rational() == other.to_big_rational(),
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(r) => write!(f, "{r}"),
            Repr::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}
