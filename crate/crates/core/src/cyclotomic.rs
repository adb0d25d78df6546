//! Cyclotomic integers `Z[ζ_m]` in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
//!
//! Elements are reduced modulo the cyclotomic polynomial `Φ_m`, not modulo
//! `x^m - 1`, so structural equality is equality of complex numbers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize};

use crate::grading::lcm;
use crate::phase::{Phase, PhaseError};

/// Dense integer polynomial, coefficients in ascending degree.
pub type IntPoly = Vec<i64>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
}

/// Divides `num` by the monic `den`, returning the quotient and remainder.
fn div_rem_monic(num: &[i64], den: &[i64]) -> (IntPoly, IntPoly) {
    debug_assert_eq!(den.last(), Some(&1));
    let dd = den.len() - 1;
    let mut rem: Vec<i64> = num.to_vec();
    if rem.len() <= dd {
        return (vec![0], rem);
    }
    let mut quot = vec![0; rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k - dd + j] -= c * d;
        }
    }
    rem.truncate(dd.max(1));
    trim(&mut quot);
    (quot, rem)
}

/// `Φ_m`, obtained by dividing `x^m - 1` exactly by `Φ_d` for every proper
/// divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    (*cached_cyclotomic(m)).clone()
}

fn cached_cyclotomic(m: u64) -> Arc<IntPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    let mut p: IntPoly = vec![0; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let phi_d = cached_cyclotomic(d);
        let (q, r) = div_rem_monic(&p, &phi_d);
        debug_assert!(r.iter().all(|&c| c == 0), "inexact division by Φ_{d}");
        p = q;
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(m, Arc::clone(&p));
    p
}

/// Euler's totient, which is also `deg Φ_m`.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of `Z[ζ_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycInt {
    order: u64,
    coeffs: Vec<i64>,
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u64,
            coeffs: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CycInt::from_coeffs(raw.order, raw.coeffs).map_err(serde::de::Error::custom)
    }
}

impl CycInt {
    pub fn zero(order: u64) -> Result<CycInt, PhaseError> {
        Self::from_int(order, 0)
    }

    pub fn one(order: u64) -> Result<CycInt, PhaseError> {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u64, value: i64) -> Result<CycInt, PhaseError> {
        if order == 0 {
            return Err(PhaseError::ZeroOrder);
        }
        let mut coeffs = vec![0; euler_phi(order) as usize];
        coeffs[0] = value;
        Ok(CycInt { order, coeffs })
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(order: u64, coeffs: Vec<i64>) -> Result<CycInt, PhaseError> {
        if order == 0 {
            return Err(PhaseError::ZeroOrder);
        }
        let expected = euler_phi(order) as usize;
        if coeffs.len() != expected {
            return Err(PhaseError::BadLength {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(CycInt { order, coeffs })
    }

    /// Reduces an arbitrary polynomial in `ζ_m` into the power basis.
    pub fn from_poly(order: u64, poly: &[i64]) -> Result<CycInt, PhaseError> {
        if order == 0 {
            return Err(PhaseError::ZeroOrder);
        }
        let phi = cached_cyclotomic(order);
        let mut coeffs = reduce_mod(poly, &phi)?;
        coeffs.resize(phi.len() - 1, 0);
        Ok(CycInt { order, coeffs })
    }

    /// Embeds a root of unity. `p` must lie in `Z[ζ_m]`: either its order
    /// divides `m`, or `m` is odd and its order divides `2m`.
    pub fn from_phase(p: Phase, order: u64) -> Result<CycInt, PhaseError> {
        if order == 0 {
            return Err(PhaseError::ZeroOrder);
        }
        if order.is_multiple_of(p.den()) {
            let k = p.num() * (order / p.den());
            return Self::monomial(order, 1, k);
        }
        if order % 2 == 1 && (2 * order).is_multiple_of(p.den()) {
            // ζ_{2m}^k = -ζ_m^{(k+m)/2} for odd k and odd m
            let k = p.num() * (2 * order / p.den());
            return Self::monomial(order, -1, ((k + order) / 2) % order);
        }
        Err(PhaseError::PhaseNotInRing { phase: p, order })
    }

    fn monomial(order: u64, coeff: i64, power: u64) -> Result<CycInt, PhaseError> {
        if euler_phi(order) == 1 {
            // order 1 or 2: ζ is ±1
            let sign = if order == 2 && power % 2 == 1 { -1 } else { 1 };
            return Self::from_int(order, coeff * sign);
        }
        let mut poly = vec![0; power as usize + 1];
        poly[power as usize] = coeff;
        Self::from_poly(order, &poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The integer value when the element is rational.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn check_order(&self, other: &CycInt) -> Result<(), PhaseError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(PhaseError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt, PhaseError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .ok_or(PhaseError::Overflow)?;
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Result<CycInt, PhaseError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg())
            .collect::<Option<Vec<_>>>()
            .ok_or(PhaseError::Overflow)?;
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt, PhaseError> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt, PhaseError> {
        self.check_order(other)?;
        if self.coeffs.len() == 1 {
            let c = self.coeffs[0]
                .checked_mul(other.coeffs[0])
                .ok_or(PhaseError::Overflow)?;
            return Ok(CycInt {
                order: self.order,
                coeffs: vec![c],
            });
        }
        let mut prod = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(*b).ok_or(PhaseError::Overflow)?;
                prod[i + j] = prod[i + j].checked_add(t).ok_or(PhaseError::Overflow)?;
            }
        }
        Self::from_poly(self.order, &prod)
    }

    /// Multiplies by a root of unity lying in the ring.
    pub fn mul_phase(&self, p: Phase) -> Result<CycInt, PhaseError> {
        if p.is_one() {
            return Ok(self.clone());
        }
        if p.is_minus_one() {
            return self.neg();
        }
        self.mul(&CycInt::from_phase(p, self.order)?)
    }

    /// Re-expresses the element in `Z[ζ_target]`, where `order | target`.
    pub fn rescale(&self, target: u64) -> Result<CycInt, PhaseError> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(PhaseError::NotAMultiple {
                source_order: self.order,
                target,
            });
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![0i64; (self.coeffs.len().max(1) - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = *c;
        }
        Self::from_poly(target, &poly)
    }

    /// Brings two elements to the common order `lcm(m, m')`.
    pub fn unify(a: &CycInt, b: &CycInt) -> Result<(CycInt, CycInt), PhaseError> {
        let m = lcm(a.order, b.order);
        Ok((a.rescale(m)?, b.rescale(m)?))
    }

    /// Floating-point value at `ζ_m = exp(2πi/m)`; for cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.order as f64;
            re += *c as f64 * theta.cos();
            im += *c as f64 * theta.sin();
        }
        (re, im)
    }
}

fn reduce_mod(poly: &[i64], modulus: &[i64]) -> Result<IntPoly, PhaseError> {
    let dd = modulus.len() - 1;
    let mut rem: Vec<i64> = poly.to_vec();
    if rem.len() <= dd {
        return Ok(rem);
    }
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        for (j, d) in modulus.iter().enumerate() {
            let t = c.checked_mul(*d).ok_or(PhaseError::Overflow)?;
            rem[k - dd + j] = rem[k - dd + j].checked_sub(t).ok_or(PhaseError::Overflow)?;
        }
    }
    rem.truncate(dd);
    Ok(rem)
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (j, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "z{}", self.order)?,
                (1, _) => write!(f, "{a}*z{}", self.order)?,
                (_, 1) => write!(f, "z{}^{j}", self.order)?,
                _ => write!(f, "{a}*z{}^{j}", self.order)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ph(n: i64, d: u64) -> Phase {
        Phase::new(n, d).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degrees_match_totient() {
        for m in 1..=40 {
            assert_eq!(
                cyclotomic_polynomial(m).len() as u64 - 1,
                euler_phi(m),
                "m={m}"
            );
        }
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let z = CycInt::from_phase(ph(1, 3), 3).unwrap();
        let z2 = CycInt::from_phase(ph(2, 3), 3).unwrap();
        let one = CycInt::one(3).unwrap();
        assert!(z.add(&z2.add(&one).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn unit_and_minus_one() {
        let a = CycInt::from_coeffs(5, vec![3, -1, 0, 2]).unwrap();
        assert_eq!(a.mul(&CycInt::one(5).unwrap()).unwrap(), a);
        assert_eq!(
            CycInt::from_phase(ph(1, 2), 2).unwrap().as_integer(),
            Some(-1)
        );
        assert_eq!(
            CycInt::from_phase(ph(1, 2), 1).unwrap().as_integer(),
            Some(-1)
        );
        assert_eq!(
            CycInt::from_phase(ph(1, 2), 3).unwrap().as_integer(),
            Some(-1)
        );
    }

    #[test]
    fn sixth_root_in_odd_order_ring() {
        // ζ_6 = -ζ_3^2 in Z[ζ_3]
        let z6 = CycInt::from_phase(ph(1, 6), 3).unwrap();
        let expected = CycInt::from_phase(ph(2, 3), 3).unwrap().neg().unwrap();
        assert_eq!(z6, expected);
        assert!(CycInt::from_phase(ph(1, 4), 3).is_err());
    }

    #[test]
    fn order_mismatch() {
        let a = CycInt::one(3).unwrap();
        let b = CycInt::one(4).unwrap();
        assert_eq!(a.add(&b), Err(PhaseError::OrderMismatch(3, 4)));
        let (a, b) = CycInt::unify(&a, &b).unwrap();
        assert_eq!(a.order(), 12);
        assert!(a.add(&b).is_ok());
        assert!(CycInt::from_coeffs(4, vec![1]).is_err());
    }

    #[test]
    fn rescale_preserves_value() {
        let z3 = CycInt::from_phase(ph(1, 3), 3).unwrap();
        let r = z3.rescale(12).unwrap();
        assert_eq!(r, CycInt::from_phase(ph(1, 3), 12).unwrap());
        let m1 = CycInt::from_int(2, -5).unwrap().rescale(4).unwrap();
        assert_eq!(m1.as_integer(), Some(-5));
        assert!(z3.rescale(4).is_err());
    }

    #[test]
    fn display() {
        let a = CycInt::from_coeffs(3, vec![1, -2]).unwrap();
        assert_eq!(a.to_string(), "1 - 2*z3");
        assert_eq!(CycInt::from_int(1, -3).unwrap().to_string(), "-3");
        let b = CycInt::from_coeffs(5, vec![0, 0, 1, -1]).unwrap();
        assert_eq!(b.to_string(), "z5^2 - z5^3");
    }

    #[test]
    fn json_shape() {
        let a = CycInt::from_coeffs(4, vec![1, -1]).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"order":4,"coeffs":[1,-1]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&text).unwrap(), a);
        assert!(serde_json::from_str::<CycInt>(r#"{"order":4,"coeffs":[1]}"#).is_err());
    }
}
