//! Model specifications: the flux model by its sizes, or a custom
//! bicharacter read from JSON.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use qsym_core::{
    AlgebraError, Bicharacter, Biform, BiformKind, CommutationFactor, GradeVector, GradedAlgebra,
    GroupSpec, Nilpotency, Phase, TabulatedFactor,
};

use crate::CliError;

/// On-disk model description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Flux {
        #[serde(rename = "N")]
        n_flux: usize,
        #[serde(rename = "n")]
        n_particles: usize,
    },
    Custom(CustomSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub spec: GroupSpec,
    pub sym: Vec<Vec<i64>>,
    pub skew: Vec<Vec<i64>>,
    pub q: Phase,
    /// One flag per generator; omitted means "exactly the forced ones".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<Vec<bool>>,
    /// Table entries replacing the bicharacter's value on specific pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<Override>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub value: Phase,
}

/// A validated model ready for the commands. The algebra context is kept
/// as a result because a corrupted table still has to reach the verifiers.
#[derive(Debug)]
pub struct Model {
    pub spec: ModelSpec,
    pub factor: Arc<dyn CommutationFactor>,
    algebra: Result<GradedAlgebra, AlgebraError>,
}

impl Model {
    pub fn algebra(&self) -> Result<&GradedAlgebra, AlgebraError> {
        self.algebra.as_ref().map_err(Clone::clone)
    }
}

impl ModelSpec {
    pub fn from_file(path: &Path) -> Result<ModelSpec, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::ModelJson {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn label(&self) -> String {
        match self {
            ModelSpec::Flux {
                n_flux,
                n_particles,
            } => format!("flux N={n_flux} n={n_particles}"),
            ModelSpec::Custom(_) => "custom".into(),
        }
    }

    pub fn build(self) -> Result<Model, CliError> {
        let (factor, algebra) = match &self {
            ModelSpec::Flux {
                n_flux,
                n_particles,
            } => {
                let algebra = GradedAlgebra::new_flux_algebra(*n_flux, *n_particles)?;
                (Arc::clone(algebra.factor()), Ok(algebra))
            }
            ModelSpec::Custom(c) => {
                let spec = c.spec.clone().into_shared();
                let base = Bicharacter::new(
                    Arc::clone(&spec),
                    Biform::new(c.sym.clone(), BiformKind::Symmetric)?,
                    Biform::new(c.skew.clone(), BiformKind::Skew)?,
                    c.q,
                )?;
                let factor: Arc<dyn CommutationFactor> = if c.overrides.is_empty() {
                    Arc::new(base)
                } else {
                    let mut table = TabulatedFactor::new(base);
                    for o in &c.overrides {
                        let a = GradeVector::new(&spec, o.a.clone())?;
                        let b = GradeVector::new(&spec, o.b.clone())?;
                        table.set(&a, &b, o.value)?;
                    }
                    Arc::new(table)
                };
                let nilpotency = match &c.nilpotent {
                    Some(flags) => Nilpotency::Explicit(flags.clone()),
                    None => Nilpotency::Forced,
                };
                let algebra =
                    GradedAlgebra::new_graded_algebra(Arc::clone(&factor), spec.rank(), nilpotency);
                (factor, algebra)
            }
        };
        Ok(Model {
            spec: self,
            factor,
            algebra,
        })
    }
}
