//! Exact linear algebra over GF(p) and the rationals.
//!
//! Everything is dense row reduction with deterministic pivoting (first
//! nonzero entry, scanning top-to-bottom then left-to-right). Correctness
//! over speed is the explicit trade at the scales this crate targets.

mod matrix;
mod subspace;

pub use matrix::{Echelon, Matrix};
pub use subspace::{cokernel_projection, rank_of_induced_map, Subspace};

use crate::value::Rat;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field descriptor {0:?} (expected a prime or Q)")]
    UnknownField(String),
    #[error("matrix entries disagree with the declared field")]
    EntryFieldMismatch,
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("dimension mismatch in {0}")]
    DimensionMismatch(&'static str),
    #[error("induced map is ill defined: target projection of the image does not vanish on the source kernel")]
    IllDefinedInducedMap,
}

/// Coefficient field tag: GF(p) for a prime p, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Gf(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Gf(2)
    }
}

impl FieldSpec {
    /// GF(p) with a primality check.
    pub fn gf(p: u64) -> Result<FieldSpec, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::Gf(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Parses "Q" or a prime written in decimal.
    pub fn parse(s: &str) -> Result<FieldSpec, FieldError> {
        let t = s.trim();
        if t == "Q" || t == "q" {
            return Ok(FieldSpec::Rational);
        }
        match t.parse::<u64>() {
            Ok(p) => FieldSpec::gf(p),
            Err(_) => Err(FieldError::UnknownField(s.to_string())),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Gf(p) => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field element. GF(p) values are kept reduced to the canonical range
/// [0, p); rationals are kept in lowest terms with positive denominator
/// (BigRational normalizes on construction).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Gf { value: u64, modulus: u64 },
    Rational(Rat),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Gf { modulus, .. } => FieldSpec::Gf(*modulus),
            Scalar::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Gf(p) => {
                let m = (n as i128).rem_euclid(p as i128) as u64;
                Scalar::Gf { value: m, modulus: p }
            }
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_rat(r: Rat) -> Scalar {
        Scalar::Rational(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gf { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Gf { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    fn gf_parts(&self, other: &Scalar) -> (u64, u64, u64) {
        match (self, other) {
            (Scalar::Gf { value: a, modulus: p }, Scalar::Gf { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed moduli");
                (*a, *b, *p)
            }
            _ => unreachable!(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.field(), other.field(), "mixed fields");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let (a, b, p) = self.gf_parts(other);
                Scalar::Gf { value: ((a as u128 + b as u128) % p as u128) as u64, modulus: p }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Gf { value, modulus } => Scalar::Gf {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.field(), other.field(), "mixed fields");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                let (a, b, p) = self.gf_parts(other);
                Scalar::Gf { value: ((a as u128 * b as u128) % p as u128) as u64, modulus: p }
            }
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Gf { value, modulus } => Scalar::Gf {
                // Fermat: v^(p-2) mod p, valid because the modulus is prime.
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
        })
    }

    /// Division; panics on a zero divisor.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gf { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => write!(f, "{r}"),
        }
    }
}
