//! Exact graded-commutative algebras governed by bicharacters on abelian
//! grading groups.
//!
//! The crate covers:
//! - grading groups `Z^N`, `(Z_n)^N` and mixtures ([`grading`]),
//! - exact roots of unity and cyclotomic integers ([`phase`], [`cyclotomic`]),
//! - bicharacters `ε(α, β) = (-1)^{(α|β)} q^{<α|β>}` with law checkers
//!   ([`bicharacter`]) and the braid symmetry they induce ([`braiding`]),
//! - the algebra generated by `Theta[i]^a` with exact normal forms, the flux
//!   model of charged particles bound to magnetic fluxes, and enumeration of
//!   quasiparticle/quasihole partitions under the generalized Pauli exclusion
//!   principle ([`algebra`]).
//!
//! ```
//! use qsym_core::GradedAlgebra;
//!
//! // three fluxes, one particle: distinct generators anticommute
//! let ctx = GradedAlgebra::new_flux_algebra(3, 1).unwrap();
//! let (phase, word) = ctx.normal_form_phase(&[1, 0]).unwrap().unwrap();
//! assert!(phase.is_minus_one());
//! assert_eq!(ctx.render_word(&word), "Theta[1] Theta[2]");
//! ```

pub mod algebra;
pub mod bicharacter;
pub mod braiding;
pub mod cyclotomic;
pub mod grading;
pub mod phase;
pub mod report;

pub use algebra::{
    verify_graded_commutativity, AlgebraElement, AlgebraError, EnumerateOptions, FillingFactor,
    Generator, GradedAlgebra, Monomial, Nilpotency, Partition, PartitionRecord, Relation,
    RelationClass,
};
pub use bicharacter::{
    flux_bicharacter, flux_generator_table, verify_bicharacter, verify_normalized, Bicharacter,
    BicharacterError, Biform, BiformKind, CommutationFactor, OmegaConvention, TabulatedFactor,
};
pub use braiding::{
    braiding_apply, verify_involution, verify_ybe, BraidedTensor, BraidingError, GradedBasis,
    GradedVector,
};
pub use cyclotomic::{cyclotomic_polynomial, CycInt};
pub use grading::{reduce_grading_group, GradeVector, GradingError, GroupSpec, Modulus};
pub use phase::{Phase, PhaseError};
pub use report::{Report, Sampling, Witness};
