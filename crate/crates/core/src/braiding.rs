//! The braid symmetry on graded spaces and its Yang–Baxter check.
//!
//! For a group-graded space the coaction sends a homogeneous `u` of grade `α`
//! to `u ⊗ g_α`, so the braiding acts on homogeneous tensors by a scalar:
//! `Ψ(u ⊗ v) = ε(β, α) v ⊗ u`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bicharacter::{BicharacterError, CommutationFactor};
use crate::grading::{GradeVector, GradingError, GroupSpec};
use crate::phase::Phase;
use crate::report::{Report, ReportBuilder, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error(transparent)]
    Bicharacter(#[from] BicharacterError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("vector mixes grades {0} and {1}")]
    NonHomogeneous(String, String),
    #[error("the zero vector has no grade")]
    ZeroVector,
    #[error("basis index {0} out of range")]
    UnknownBasisVector(usize),
    #[error("basis has {labels} labels but {grades} grades")]
    LabelCount { labels: usize, grades: usize },
}

/// A finite graded vector space, given by a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    spec: Arc<GroupSpec>,
    labels: Vec<String>,
    grades: Vec<GradeVector>,
}

impl GradedBasis {
    pub fn new(
        spec: &Arc<GroupSpec>,
        labels: Vec<String>,
        grades: Vec<GradeVector>,
    ) -> Result<Self, BraidingError> {
        if labels.len() != grades.len() {
            return Err(BraidingError::LabelCount {
                labels: labels.len(),
                grades: grades.len(),
            });
        }
        for g in &grades {
            if **g.spec() != **spec {
                return Err(GradingError::SpecMismatch {
                    left: spec.to_string(),
                    right: g.spec().to_string(),
                }
                .into());
            }
        }
        Ok(GradedBasis {
            spec: Arc::clone(spec),
            labels,
            grades,
        })
    }

    /// The single-particle space: one basis vector `Theta[i]` of grade `σ_i`
    /// per summand.
    pub fn single_particle(spec: &Arc<GroupSpec>) -> Self {
        let n = spec.rank();
        GradedBasis {
            spec: Arc::clone(spec),
            labels: (1..=n).map(|i| format!("Theta[{i}]")).collect(),
            grades: (0..n)
                .map(|i| GradeVector::generator(spec, i).expect("index below rank"))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn grade(&self, i: usize) -> &GradeVector {
        &self.grades[i]
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }
}

/// A vector in a [`GradedBasis`], as integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedVector {
    coords: BTreeMap<usize, i64>,
}

impl GradedVector {
    pub fn basis(i: usize) -> Self {
        GradedVector {
            coords: BTreeMap::from([(i, 1)]),
        }
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut v = GradedVector::default();
        for (i, c) in coords {
            *v.coords.entry(i).or_insert(0) += c;
        }
        v.coords.retain(|_, c| *c != 0);
        v
    }

    pub fn coords(&self) -> &BTreeMap<usize, i64> {
        &self.coords
    }

    /// The common grade of all components.
    pub fn grade(&self, basis: &GradedBasis) -> Result<GradeVector, BraidingError> {
        let mut grade: Option<&GradeVector> = None;
        for &i in self.coords.keys() {
            let g = basis
                .grades
                .get(i)
                .ok_or(BraidingError::UnknownBasisVector(i))?;
            match grade {
                None => grade = Some(g),
                Some(h) if h == g => {}
                Some(h) => return Err(BraidingError::NonHomogeneous(h.to_string(), g.to_string())),
            }
        }
        grade.cloned().ok_or(BraidingError::ZeroVector)
    }
}

/// `scalar · (first ⊗ second)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedTensor {
    pub scalar: Phase,
    pub first: GradedVector,
    pub second: GradedVector,
}

/// `Ψ(u ⊗ v) = ε(β, α) v ⊗ u` for homogeneous `u`, `v` of grades `α`, `β`.
pub fn braiding_apply<F: CommutationFactor + ?Sized>(
    e: &F,
    basis: &GradedBasis,
    u: &GradedVector,
    v: &GradedVector,
) -> Result<BraidedTensor, BraidingError> {
    let alpha = u.grade(basis)?;
    let beta = v.grade(basis)?;
    Ok(BraidedTensor {
        scalar: e.eval(&beta, &alpha)?,
        first: v.clone(),
        second: u.clone(),
    })
}

/// A basis tensor `scalar · b_{i_1} ⊗ … ⊗ b_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BasisTensor {
    scalar: Phase,
    slots: Vec<usize>,
}

impl BasisTensor {
    /// Applies `Ψ` to the tensor factors at `pos` and `pos + 1`.
    fn braid_at<F: CommutationFactor + ?Sized>(
        mut self,
        e: &F,
        basis: &GradedBasis,
        pos: usize,
    ) -> Result<Self, BraidingError> {
        let (u, v) = (self.slots[pos], self.slots[pos + 1]);
        self.scalar *= e.eval(&basis.grades[v], &basis.grades[u])?;
        self.slots.swap(pos, pos + 1);
        Ok(self)
    }

    fn render(&self, basis: &GradedBasis) -> String {
        let parts: Vec<&str> = self.slots.iter().map(|&i| basis.label(i)).collect();
        format!("{} * {}", self.scalar, parts.join(" (x) "))
    }
}

impl fmt::Display for BasisTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {:?}", self.scalar, self.slots)
    }
}

fn compare(
    lhs: Result<BasisTensor, BraidingError>,
    rhs: Result<BasisTensor, BraidingError>,
    basis: &GradedBasis,
    law: &str,
    inputs: Vec<String>,
    report: &mut ReportBuilder,
) {
    let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
    let show = |r: &Result<BasisTensor, BraidingError>| match r {
        Ok(t) => t.render(basis),
        Err(e) => format!("error: {e}"),
    };
    report.check(ok, || Witness {
        law: law.into(),
        inputs,
        lhs: show(&lhs),
        rhs: show(&rhs),
    });
}

/// Checks `(Ψ⊗id)(id⊗Ψ)(Ψ⊗id) = (id⊗Ψ)(Ψ⊗id)(id⊗Ψ)` on every basis
/// triple of `E ⊗ E ⊗ E`.
pub fn verify_ybe<F: CommutationFactor + ?Sized>(e: &F, basis: &GradedBasis) -> Report {
    let mut report = ReportBuilder::new("yang-baxter", true);
    let d = basis.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let start = BasisTensor {
                    scalar: Phase::ONE,
                    slots: vec![i, j, k],
                };
                // operators act right to left
                let lhs = start
                    .clone()
                    .braid_at(e, basis, 0)
                    .and_then(|t| t.braid_at(e, basis, 1))
                    .and_then(|t| t.braid_at(e, basis, 0));
                let rhs = start
                    .braid_at(e, basis, 1)
                    .and_then(|t| t.braid_at(e, basis, 0))
                    .and_then(|t| t.braid_at(e, basis, 1));
                let inputs = vec![
                    basis.label(i).to_string(),
                    basis.label(j).to_string(),
                    basis.label(k).to_string(),
                ];
                compare(lhs, rhs, basis, "yang-baxter", inputs, &mut report);
            }
        }
    }
    report.finish()
}

/// Checks `Ψ ∘ Ψ = id` on every basis pair of `E ⊗ E`.
pub fn verify_involution<F: CommutationFactor + ?Sized>(e: &F, basis: &GradedBasis) -> Report {
    let mut report = ReportBuilder::new("involution", true);
    let d = basis.dim();
    for i in 0..d {
        for j in 0..d {
            let start = BasisTensor {
                scalar: Phase::ONE,
                slots: vec![i, j],
            };
            let twice = start
                .clone()
                .braid_at(e, basis, 0)
                .and_then(|t| t.braid_at(e, basis, 0));
            let inputs = vec![basis.label(i).to_string(), basis.label(j).to_string()];
            compare(twice, Ok(start), basis, "involution", inputs, &mut report);
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicharacter::{flux_bicharacter, Bicharacter, Biform, BiformKind, TabulatedFactor};

    #[test]
    fn trivial_braiding_is_a_flip() {
        let spec = GroupSpec::cyclic(2, 2).unwrap().into_shared();
        let e = Bicharacter::trivial(spec.clone());
        let basis = GradedBasis::single_particle(&spec);
        let out =
            braiding_apply(&e, &basis, &GradedVector::basis(0), &GradedVector::basis(1)).unwrap();
        assert_eq!(out.scalar, Phase::ONE);
        assert_eq!(out.first, GradedVector::basis(1));
        assert_eq!(out.second, GradedVector::basis(0));
    }

    #[test]
    fn flux_three_braiding_anticommutes() {
        let e = flux_bicharacter(3).unwrap();
        let basis = GradedBasis::single_particle(e.spec());
        let out =
            braiding_apply(&e, &basis, &GradedVector::basis(0), &GradedVector::basis(1)).unwrap();
        assert_eq!(out.scalar, Phase::MINUS_ONE);
        assert_eq!(out.first, GradedVector::basis(1));
    }

    #[test]
    fn braiding_twice_is_identity_for_normalized() {
        let e = flux_bicharacter(4).unwrap();
        let basis = GradedBasis::single_particle(e.spec());
        for i in 0..4 {
            for j in 0..4 {
                let (u, v) = (GradedVector::basis(i), GradedVector::basis(j));
                let once = braiding_apply(&e, &basis, &u, &v).unwrap();
                let twice = braiding_apply(&e, &basis, &once.first, &once.second).unwrap();
                assert_eq!(once.scalar * twice.scalar, Phase::ONE);
                assert_eq!((twice.first, twice.second), (u, v));
            }
        }
        assert!(verify_involution(&e, &basis).pass);
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        let e = flux_bicharacter(2).unwrap();
        let basis = GradedBasis::single_particle(e.spec());
        let mixed = GradedVector::from_coords([(0, 1), (1, 1)]);
        let err = braiding_apply(&e, &basis, &mixed, &GradedVector::basis(0)).unwrap_err();
        assert!(matches!(err, BraidingError::NonHomogeneous(..)));
        let zero = GradedVector::from_coords([(0, 1), (0, -1)]);
        assert_eq!(
            braiding_apply(&e, &basis, &zero, &GradedVector::basis(0)).unwrap_err(),
            BraidingError::ZeroVector
        );
    }

    #[test]
    fn homogeneous_combination_is_accepted() {
        // two basis vectors sharing a grade
        let spec = GroupSpec::cyclic(2, 1).unwrap().into_shared();
        let s = GradeVector::generator(&spec, 0).unwrap();
        let basis =
            GradedBasis::new(&spec, vec!["a".into(), "b".into()], vec![s.clone(), s]).unwrap();
        let e = flux_bicharacter(1).unwrap();
        let u = GradedVector::from_coords([(0, 2), (1, -1)]);
        let out = braiding_apply(&e, &basis, &u, &u).unwrap();
        assert_eq!(out.scalar, Phase::ONE);
    }

    #[test]
    fn ybe_flux_three_checks_27_triples() {
        let e = flux_bicharacter(3).unwrap();
        let r = verify_ybe(&e, &GradedBasis::single_particle(e.spec()));
        assert!(r.pass);
        assert_eq!(r.checked, 27);
    }

    #[test]
    fn ybe_for_q_cube_root() {
        let spec = GroupSpec::free(2).unwrap().into_shared();
        let skew = Biform::new(vec![vec![0, 1], vec![-1, 0]], BiformKind::Skew).unwrap();
        let e = Bicharacter::new(
            spec.clone(),
            Biform::zero(2, BiformKind::Symmetric),
            skew,
            Phase::new(1, 3).unwrap(),
        )
        .unwrap();
        let basis = GradedBasis::single_particle(&spec);
        assert!(verify_ybe(&e, &basis).pass);
        assert!(verify_involution(&e, &basis).pass);
    }

    #[test]
    fn non_normalized_factor_breaks_involution() {
        let base = flux_bicharacter(2).unwrap();
        let spec = base.spec().clone();
        let s1 = GradeVector::generator(&spec, 0).unwrap();
        let s2 = GradeVector::generator(&spec, 1).unwrap();
        let mut t = TabulatedFactor::new(base);
        t.set(&s1, &s2, Phase::MINUS_ONE).unwrap();
        let r = verify_involution(&t, &GradedBasis::single_particle(&spec));
        assert!(!r.pass);
        assert_eq!(r.violations, 2);
    }
}
