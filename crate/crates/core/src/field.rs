//! Exact coefficient fields: the rationals and prime fields `GF(p)`.
//!
//! Rationals are arbitrary precision and always kept in lowest terms with a
//! positive denominator (this is what `BigRational` maintains). Prime field
//! elements carry their modulus so arithmetic never needs outside context;
//! moduli are capped below 2^31 so a product of two residues fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime modulus is below this bound.
pub const PRIME_BOUND: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FieldRecord", try_from = "FieldRecord")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum FieldKind {
    ExactRationals,
    PrimeField,
}

#[derive(Serialize, Deserialize)]
struct FieldRecord {
    kind: FieldKind,
    characteristic: u64,
}

impl From<FieldSpec> for FieldRecord {
    fn from(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldRecord { kind: FieldKind::ExactRationals, characteristic: 0 },
            FieldSpec::Prime(p) => FieldRecord { kind: FieldKind::PrimeField, characteristic: p as u64 },
        }
    }
}

impl TryFrom<FieldRecord> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldRecord) -> Result<Self> {
        match (r.kind, r.characteristic) {
            (FieldKind::ExactRationals, 0) => Ok(FieldSpec::Rationals),
            (FieldKind::ExactRationals, c) => Err(Error::InvalidField(format!("rationals with characteristic {c}"))),
            (FieldKind::PrimeField, p) => FieldSpec::prime(p),
        }
    }
}

impl FieldSpec {
    /// Validates the modulus of a prime field.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p >= PRIME_BOUND {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Coeff::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coeff::Modular {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match self {
            FieldSpec::Rationals => Ok(Coeff::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let num = q.numer().mod_floor(&m).to_u32().unwrap();
                let den = q.denom().mod_floor(&m).to_u32().unwrap();
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator of {q} vanishes in GF({p})"
                    )));
                }
                let inv = mod_inverse(den, *p);
                Ok(Coeff::Modular {
                    value: ((num as u64 * inv as u64) % *p as u64) as u32,
                    modulus: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// A field element. Mixing elements of different fields is an internal
/// invariant violation and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    fn binop(
        &self,
        rhs: &Coeff,
        rat: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        modular: impl FnOnce(u64, u64, u64) -> u64,
    ) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(rat(a, b)),
            (
                Coeff::Modular { value: a, modulus: p },
                Coeff::Modular { value: b, modulus: q },
            ) if p == q => Coeff::Modular {
                value: modular(*a as u64, *b as u64, *p as u64) as u32,
                modulus: *p,
            },
            _ => panic!("coefficient field mismatch: {self:?} vs {rhs:?}"),
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.binop(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.binop(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.binop(rhs, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(q) => Coeff::Rational(-q),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => write!(f, "{q}"),
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
