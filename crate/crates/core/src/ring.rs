//! Exact coefficient rings: ℤ, ℚ and ℤ/p.
//!
//! Coefficients are carried as [`BigRational`] values kept canonical for
//! their ring: integers for ℤ, reduced fractions for ℚ, least nonnegative
//! residues for ℤ/p.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Coeff = BigRational;

/// Largest accepted prime modulus.
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported maximum {MAX_PRIME}")]
    ModulusTooLarge(u64),
    #[error("unknown ring {0:?}: expected Z, Q or Fp:<p>")]
    Unknown(String),
    #[error("coefficient {0} is not an integer")]
    NotIntegral(BigRational),
    #[error("coefficient {value} has a denominator divisible by {p}")]
    NotInvertible { value: BigRational, p: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        if p > MAX_PRIME {
            return Err(RingError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// All implemented rings are domains.
    pub fn is_domain(&self) -> bool {
        true
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        self.reduce(Coeff::one())
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.reduce(Coeff::from_integer(BigInt::from(n)))
    }

    /// Canonical representative of a value already known to lie in the
    /// ring (integers for ℤ and ℤ/p).
    pub fn reduce(&self, x: Coeff) -> Coeff {
        match self {
            Ring::PrimeField(p) => {
                debug_assert!(x.is_integer());
                let m = BigInt::from(*p);
                let mut r = x.to_integer() % &m;
                if r.is_negative() {
                    r += &m;
                }
                Coeff::from_integer(r)
            }
            _ => x,
        }
    }

    /// Maps an arbitrary rational into the ring, failing if it has no image.
    pub fn coerce(&self, x: &BigRational) -> Result<Coeff, RingError> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(RingError::NotIntegral(x.clone()))
                }
            }
            Ring::PrimeField(p) => {
                let m = BigInt::from(*p);
                let den = ((x.denom() % &m) + &m) % &m;
                if den.is_zero() {
                    return Err(RingError::NotInvertible {
                        value: x.clone(),
                        p: *p,
                    });
                }
                // Fermat inverse of the denominator
                let inv = den.modpow(&(&m - BigInt::from(2)), &m);
                let num = x.numer() * inv;
                Ok(self.reduce(Coeff::from_integer(num)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    /// Whether a canonical coefficient prints with a leading minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        a.is_negative()
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| RingError::Unknown(s.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

/// Small-integer view of a coefficient, when it fits.
pub fn as_i64(c: &Coeff) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}
