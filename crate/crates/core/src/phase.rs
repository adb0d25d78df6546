//! Exact roots of unity, written as a fraction of a full turn.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::grading::gcd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    #[error("phase denominator must be positive")]
    ZeroDenominator,
    #[error("cannot parse phase {0:?}, expected \"num/den\"")]
    Parse(String),
    #[error("cyclotomic orders differ ({0} vs {1}); rescale to a common order first")]
    OrderMismatch(u64, u64),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("order {target} is not a multiple of {source_order}")]
    NotAMultiple { source_order: u64, target: u64 },
    #[error("phase {phase} is not a power of a primitive {order}-th root of unity")]
    PhaseNotInRing { phase: Phase, order: u64 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,
}

/// The root of unity `exp(2πi · num/den)`.
///
/// Always stored reduced, with `0 <= num < den` and `gcd(num, den) = 1`.
/// `0/1` is the identity and `1/2` is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };
    pub const MINUS_ONE: Phase = Phase { num: 1, den: 2 };

    pub fn new(num: i64, den: u64) -> Result<Phase, PhaseError> {
        if den == 0 {
            return Err(PhaseError::ZeroDenominator);
        }
        let r = (num as i128).rem_euclid(den as i128) as u64;
        Ok(Self::reduced(r, den))
    }

    fn reduced(num: u64, den: u64) -> Phase {
        if num == 0 {
            return Phase::ONE;
        }
        let g = gcd(num, den);
        Phase {
            num: num / g,
            den: den / g,
        }
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Phase {
        if k.rem_euclid(2) == 0 {
            Phase::ONE
        } else {
            Phase::MINUS_ONE
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiplicative order of the root of unity.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn is_minus_one(self) -> bool {
        self == Phase::MINUS_ONE
    }

    /// True for `±1`.
    pub fn is_real(self) -> bool {
        self.den <= 2
    }

    pub fn inverse(self) -> Phase {
        Self::reduced((self.den - self.num) % self.den, self.den)
    }

    /// `self^k`; negative exponents go through the inverse.
    pub fn pow(self, k: i64) -> Phase {
        let den = self.den as i128;
        let num = (self.num as i128 * (k as i128).rem_euclid(den)).rem_euclid(den);
        Self::reduced(num as u64, self.den)
    }

    /// Floating-point value `(re, im)`; used for cross-checks only.
    pub fn to_complex(self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        (theta.cos(), theta.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Phase {
    type Err = PhaseError;

    fn from_str(s: &str) -> Result<Phase, PhaseError> {
        let bad = || PhaseError::Parse(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: i64 = n.parse().map_err(|_| bad())?;
        let den: u64 = d.parse().map_err(|_| bad())?;
        Phase::new(num, den)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, other: Phase) -> Phase {
        let den = crate::grading::lcm(self.den, other.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = other.num as u128 * (den / other.den) as u128;
        Self::reduced(((a + b) % den as u128) as u64, den)
    }
}

impl std::ops::MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}
