//! Finitely generated abelian grading groups written as direct sums of
//! cyclic factors, `Z` or `Z_m`, with exact additive arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("grading group must have rank at least 1")]
    EmptyRank,
    #[error("cyclic factor Z_{0} is invalid, moduli must be >= 2")]
    InvalidModulus(u64),
    #[error("grade vectors live in different groups ({left} vs {right})")]
    SpecMismatch { left: String, right: String },
    #[error("expected {expected} components, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow in grade arithmetic")]
    Overflow,
}

/// One direct summand of a grading group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    /// The free factor `Z`.
    Free,
    /// The cyclic factor `Z_m`, `m >= 2`.
    Cyclic(u64),
}

impl Modulus {
    pub fn is_finite(self) -> bool {
        matches!(self, Modulus::Cyclic(_))
    }

    /// Canonical representative of `value` in this factor.
    pub fn reduce(self, value: i64) -> i64 {
        match self {
            Modulus::Free => value,
            Modulus::Cyclic(m) => value.rem_euclid(m as i64),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Free => write!(f, "Z"),
            Modulus::Cyclic(m) => write!(f, "Z_{m}"),
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Modulus::Free => serializer.serialize_str("inf"),
            Modulus::Cyclic(m) => serializer.serialize_u64(*m),
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(m) if m >= 2 => Ok(Modulus::Cyclic(m)),
            Raw::Int(m) => Err(de::Error::custom(format!("modulus {m} must be >= 2"))),
            Raw::Text(s) if s == "inf" => Ok(Modulus::Free),
            Raw::Text(s) => Err(de::Error::custom(format!(
                "expected an integer modulus or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// A grading group `G = F_1 ⊕ … ⊕ F_N` with each `F_i` either `Z` or `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    moduli: Vec<Modulus>,
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            moduli: Vec<Modulus>,
        }
        let raw = Raw::deserialize(deserializer)?;
        GroupSpec::new(raw.moduli).map_err(de::Error::custom)
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<Modulus>) -> Result<Self, GradingError> {
        if moduli.is_empty() {
            return Err(GradingError::EmptyRank);
        }
        for m in &moduli {
            if let Modulus::Cyclic(v) = m {
                if *v < 2 {
                    return Err(GradingError::InvalidModulus(*v));
                }
            }
        }
        Ok(GroupSpec { moduli })
    }

    /// `Z^rank`.
    pub fn free(rank: usize) -> Result<Self, GradingError> {
        Self::new(vec![Modulus::Free; rank])
    }

    /// `(Z_m)^rank`.
    pub fn cyclic(modulus: u64, rank: usize) -> Result<Self, GradingError> {
        Self::new(vec![Modulus::Cyclic(modulus); rank])
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Modulus] {
        &self.moduli
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|m| m.is_finite())
    }

    /// True when every summand is the same factor.
    pub fn is_homogeneous(&self) -> bool {
        self.moduli.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of elements, `None` for infinite groups or when the count does
    /// not fit in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        self.moduli.iter().try_fold(1u128, |acc, m| match m {
            Modulus::Free => None,
            Modulus::Cyclic(v) => acc.checked_mul(*v as u128),
        })
    }

    /// Least common multiple of the finite moduli, `None` if any factor is free.
    pub fn exponent(&self) -> Option<u64> {
        self.moduli.iter().try_fold(1u64, |acc, m| match m {
            Modulus::Free => None,
            Modulus::Cyclic(v) => Some(lcm(acc, *v)),
        })
    }

    pub fn into_shared(self) -> Arc<GroupSpec> {
        Arc::new(self)
    }

    /// Iterates every element in lexicographic order of its reduced
    /// components. Empty iterator for infinite groups.
    pub fn elements(self: &Arc<Self>) -> Elements {
        Elements {
            spec: Arc::clone(self),
            next: if self.is_finite() {
                Some(vec![0; self.rank()])
            } else {
                None
            },
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_homogeneous() && self.rank() > 1 {
            return write!(f, "({})^{}", self.moduli[0], self.rank());
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub struct Elements {
    spec: Arc<GroupSpec>,
    next: Option<Vec<i64>>,
}

impl Iterator for Elements {
    type Item = GradeVector;

    fn next(&mut self) -> Option<GradeVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (slot, m) in succ.iter_mut().zip(&self.spec.moduli).rev() {
            let Modulus::Cyclic(v) = m else {
                unreachable!()
            };
            *slot += 1;
            if *slot < *v as i64 {
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(GradeVector {
            spec: Arc::clone(&self.spec),
            components: current,
        })
    }
}

/// An element of a grading group, stored with finite components reduced into
/// `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradeVector {
    spec: Arc<GroupSpec>,
    components: Vec<i64>,
}

impl PartialOrd for GradeVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradeVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.components.cmp(&other.components)
    }
}

impl GradeVector {
    pub fn new(spec: &Arc<GroupSpec>, components: Vec<i64>) -> Result<Self, GradingError> {
        if components.len() != spec.rank() {
            return Err(GradingError::RankMismatch {
                expected: spec.rank(),
                got: components.len(),
            });
        }
        let components = components
            .into_iter()
            .zip(&spec.moduli)
            .map(|(c, m)| m.reduce(c))
            .collect();
        Ok(GradeVector {
            spec: Arc::clone(spec),
            components,
        })
    }

    pub fn zero(spec: &Arc<GroupSpec>) -> Self {
        GradeVector {
            spec: Arc::clone(spec),
            components: vec![0; spec.rank()],
        }
    }

    /// The canonical generator `σ_i`, zero-based `index`.
    pub fn generator(spec: &Arc<GroupSpec>, index: usize) -> Result<Self, GradingError> {
        if index >= spec.rank() {
            return Err(GradingError::GeneratorOutOfRange {
                index,
                rank: spec.rank(),
            });
        }
        let mut components = vec![0; spec.rank()];
        components[index] = 1;
        GradeVector::new(spec, components)
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &GradeVector) -> Result<(), GradingError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(GradingError::SpecMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            })
        }
    }

    pub fn add(&self, other: &GradeVector) -> Result<GradeVector, GradingError> {
        self.check_same(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .zip(&self.spec.moduli)
            .map(|((a, b), m)| a.checked_add(*b).map(|s| m.reduce(s)))
            .collect::<Option<Vec<_>>>()
            .ok_or(GradingError::Overflow)?;
        Ok(GradeVector {
            spec: Arc::clone(&self.spec),
            components,
        })
    }

    pub fn neg(&self) -> Result<GradeVector, GradingError> {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Result<GradeVector, GradingError> {
        let components = self
            .components
            .iter()
            .zip(&self.spec.moduli)
            .map(|(c, m)| match m {
                Modulus::Free => c.checked_mul(k),
                Modulus::Cyclic(v) => {
                    let v = *v as i128;
                    Some(((*c as i128 * (k as i128).rem_euclid(v)) % v) as i64)
                }
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(GradingError::Overflow)?;
        Ok(GradeVector {
            spec: Arc::clone(&self.spec),
            components,
        })
    }

    /// Additive order, `None` for elements of infinite order.
    pub fn order(&self) -> Option<u64> {
        self.components
            .iter()
            .zip(&self.spec.moduli)
            .try_fold(1u64, |acc, (c, m)| match m {
                Modulus::Free if *c == 0 => Some(acc),
                Modulus::Free => None,
                Modulus::Cyclic(v) => Some(lcm(acc, v / gcd(*v, *c as u64))),
            })
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Grading group for the standard gradation of rank `rank` when the
/// parameter `q` has multiplicative order `q_order`.
///
/// Orders 1 and 2 (`q = ±1`) reduce to `(Z_2)^rank`; order `n >= 3` reduces
/// to `(Z_n)^rank`. Use [`GroupSpec::free`] for the unreduced `Z^rank`.
pub fn reduce_grading_group(q_order: u64, rank: usize) -> Result<GroupSpec, GradingError> {
    match q_order {
        0 => Err(GradingError::InvalidParameter(
            "q_order must be at least 1".into(),
        )),
        1 | 2 => GroupSpec::cyclic(2, rank),
        n => GroupSpec::cyclic(n, rank),
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(rank: usize) -> Arc<GroupSpec> {
        GroupSpec::cyclic(2, rank).unwrap().into_shared()
    }

    #[test]
    fn add_reduces_mod_two() {
        let g = z2(3);
        let a = GradeVector::new(&g, vec![1, 0, 0]).unwrap();
        let b = GradeVector::new(&g, vec![1, 1, 0]).unwrap();
        assert_eq!(a.add(&b).unwrap().components(), &[0, 1, 0]);
    }

    #[test]
    fn zero_is_identity_on_z2_cubed() {
        let g = z2(3);
        let zero = GradeVector::zero(&g);
        for a in g.elements() {
            assert_eq!(a.add(&zero).unwrap(), a);
        }
        assert_eq!(g.elements().count(), 8);
    }

    #[test]
    fn free_factor_does_not_reduce() {
        let g = GroupSpec::free(3).unwrap().into_shared();
        let s1 = GradeVector::generator(&g, 0).unwrap();
        assert_eq!(s1.add(&s1).unwrap().components(), &[2, 0, 0]);
        assert_eq!(s1.order(), None);
        assert_eq!(g.elements().count(), 0);
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = GradeVector::zero(&z2(2));
        let b = GradeVector::zero(&GroupSpec::cyclic(3, 2).unwrap().into_shared());
        assert!(matches!(a.add(&b), Err(GradingError::SpecMismatch { .. })));
    }

    #[test]
    fn free_overflow_fails_loudly() {
        let g = GroupSpec::free(1).unwrap().into_shared();
        let a = GradeVector::new(&g, vec![i64::MAX]).unwrap();
        let b = GradeVector::generator(&g, 0).unwrap();
        assert_eq!(a.add(&b), Err(GradingError::Overflow));
    }

    #[test]
    fn components_are_reduced_on_construction() {
        let g = GroupSpec::new(vec![Modulus::Cyclic(3), Modulus::Free])
            .unwrap()
            .into_shared();
        let a = GradeVector::new(&g, vec![-1, -1]).unwrap();
        assert_eq!(a.components(), &[2, -1]);
        assert_eq!(a.neg().unwrap().components(), &[1, 1]);
    }

    #[test]
    fn grading_group_reduction() {
        assert_eq!(
            reduce_grading_group(2, 4).unwrap(),
            GroupSpec::cyclic(2, 4).unwrap()
        );
        assert_eq!(
            reduce_grading_group(3, 2).unwrap(),
            GroupSpec::cyclic(3, 2).unwrap()
        );
        assert_eq!(
            reduce_grading_group(1, 1).unwrap(),
            GroupSpec::cyclic(2, 1).unwrap()
        );
        assert!(matches!(
            reduce_grading_group(0, 3),
            Err(GradingError::InvalidParameter(_))
        ));
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(GroupSpec::new(vec![]), Err(GradingError::EmptyRank));
        assert_eq!(
            GroupSpec::new(vec![Modulus::Cyclic(1)]),
            Err(GradingError::InvalidModulus(1))
        );
        assert!(GradeVector::generator(&z2(2), 2).is_err());
        assert!(GradeVector::new(&z2(2), vec![1]).is_err());
    }

    #[test]
    fn homogeneity_and_cardinality() {
        let mixed = GroupSpec::new(vec![Modulus::Cyclic(2), Modulus::Cyclic(4)]).unwrap();
        assert!(!mixed.is_homogeneous());
        assert_eq!(mixed.cardinality(), Some(8));
        assert_eq!(mixed.exponent(), Some(4));
        assert!(GroupSpec::cyclic(2, 5).unwrap().is_homogeneous());
        assert_eq!(GroupSpec::free(2).unwrap().cardinality(), None);
    }

    #[test]
    fn element_orders_divide_exponent() {
        let g = GroupSpec::new(vec![Modulus::Cyclic(4), Modulus::Cyclic(6)])
            .unwrap()
            .into_shared();
        let exp = g.exponent().unwrap();
        for a in g.elements() {
            let ord = a.order().unwrap();
            assert_eq!(exp % ord, 0);
            assert!(a.scale(ord as i64).unwrap().is_zero());
        }
    }

    #[test]
    fn json_shape() {
        let spec = GroupSpec::new(vec![Modulus::Cyclic(2), Modulus::Free]).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"moduli":[2,"inf"]}"#);
        let back: GroupSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<GroupSpec>(r#"{"moduli":[1]}"#).is_err());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"moduli":[]}"#).is_err());
    }
}
