//! Exact scalar arithmetic over the supported coefficient fields: the
//! rationals (arbitrary precision) and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere.  A [`Field`] value is threaded through all linear algebra so
//! scalars from different fields can never be mixed silently.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::error::AlgebraError;

/// Default modulus for prime-field computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Coefficient field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    /// Arbitrary-precision rational numbers.
    Rationals,
    /// The prime field with the given (prime) number of elements.
    Prime(u64),
}

/// A scalar belonging to one of the supported fields.  Prime-field values
/// are kept reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl Field {
    /// Prime field with the default modulus.
    pub fn prime_default() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    /// Checks that a prime-field modulus is actually prime.
    pub fn validate(self) -> Result<Field, AlgebraError> {
        match self {
            Field::Rationals => Ok(self),
            Field::Prime(p) if is_prime(p) => Ok(self),
            Field::Prime(p) => Err(AlgebraError::InvalidField(format!(
                "modulus {p} is not prime"
            ))),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Fp(1),
        }
    }

    /// Embeds a signed integer.
    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i128;
                let r = ((n as i128 % p) + p) % p;
                Scalar::Fp(r as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => x.is_zero(),
            (Field::Prime(_), Scalar::Fp(x)) => *x == 0,
            _ => mixed(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            _ => mixed(),
        }
    }

    /// Multiplicative inverse.  Panics on zero (callers check first).
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            (Field::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*x, p - 2, *p))
            }
            _ => mixed(),
        }
    }

    /// `a / b`.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Human-readable name used in reports.
    pub fn describe(&self) -> String {
        match self {
            Field::Rationals => "rational".to_string(),
            Field::Prime(p) => format!("prime {p}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

impl Scalar {
    /// True when the scalar prints as a plain non-negative integer.
    pub fn is_nonnegative_integer(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.denom().is_one() && !x.numer().is_negative(),
            Scalar::Fp(_) => true,
        }
    }
}

fn mixed() -> ! {
    panic!("scalar does not belong to the active coefficient field");
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
