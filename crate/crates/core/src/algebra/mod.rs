//! The ε-symmetric algebra generated by `Theta[i]^a` modulo its commutation
//! relations, with exact normal forms.
//!
//! Words are sorted into canonical `(flux, particle)` order by adjacent
//! transpositions; swapping `x` past `y` picks up the factor `λ(x, y)` from the
//! relation `x y = λ(x, y) y x`. A repeated nilpotent generator kills the word.

mod element;
mod laws;
mod partition;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bicharacter::{flux_bicharacter, BicharacterError, CommutationFactor};
use crate::grading::{gcd, lcm, GradeVector, GradingError, GroupSpec};
use crate::phase::{Phase, PhaseError};

pub use element::{AlgebraElement, Monomial};
pub use laws::verify_graded_commutativity;
pub use partition::{EnumerateOptions, Partition, PartitionRecord, MAX_CANDIDATES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Bicharacter(#[from] BicharacterError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error("bicharacter has rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid algebra size: {0}")]
    InvalidSize(String),
    #[error("generator index {0} does not belong to this algebra")]
    ForeignGenerator(usize),
    #[error("no generator Theta[{flux}]^{particle} in this algebra")]
    UnknownGenerator { flux: usize, particle: usize },
    #[error("element does not belong to this algebra")]
    ContextMismatch,
    #[error("inconsistent relations for generators {0} and {1}: λ(x,y) λ(y,x) = {2}")]
    InconsistentRelations(String, String, Phase),
    #[error("generator {0} has self-relation phase {1}, which must be +1 or -1")]
    BadSelfRelation(String, Phase),
    #[error("generator {0} satisfies x x = -x x, so it cannot be declared non-nilpotent")]
    ForcedNilpotent(String),
    #[error("nilpotency flags: expected {expected}, got {got}")]
    NilpotencyLength { expected: usize, got: usize },
    #[error("exponent {exponent} at position {index} is out of range")]
    ExponentOutOfRange { index: usize, exponent: i64 },
    #[error("operation needs a single-particle context (n = 1), this one has n = {0}")]
    NotSingleParticle(usize),
    #[error(
        "{candidates} candidate partitions exceed the cap of {cap}; pass force to enumerate anyway"
    )]
    EnumerationCap { candidates: u128, cap: u128 },
}

/// Generator `Theta[flux]^particle`, both indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub flux: usize,
    pub particle: usize,
    pub grade: GradeVector,
}

/// Which generators square to zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Nilpotency {
    /// Only the generators whose self-relation is `x x = -x x`.
    #[default]
    Forced,
    /// Every generator.
    All,
    /// One flag per generator; forced generators must be flagged.
    Explicit(Vec<bool>),
}

/// Relation class of an unordered generator pair, following the way the
/// flux-model tables are grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationClass {
    /// Distinct flux, same particle (`a = b`, `i ≠ j`).
    SameParticle,
    /// Distinct flux, distinct particle (`a ≠ b`, `i ≠ j`).
    DistinctParticle,
    /// Same flux, distinct particle (`a ≠ b`, `i = j`).
    SameFlux,
}

/// `left right = phase · right left`, with `left < right` canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub left: usize,
    pub right: usize,
    pub phase: Phase,
    pub class: RelationClass,
}

/// `v = n / N`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FillingFactor {
    pub num: usize,
    pub den: usize,
}

impl fmt::Display for FillingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// An immutable algebra context: generators, their pairwise phases and
/// nilpotency flags.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    factor: Arc<dyn CommutationFactor>,
    generators: Vec<Generator>,
    lambda: Vec<Vec<Phase>>,
    nilpotent: Vec<bool>,
    n_flux: usize,
    n_particles: usize,
    flux_model: bool,
    coeff_order: u64,
}

impl GradedAlgebra {
    /// Single-particle algebra with `λ(i, j) = ε(σ_i, σ_j)`.
    pub fn new_graded_algebra(
        factor: Arc<dyn CommutationFactor>,
        rank: usize,
        nilpotency: Nilpotency,
    ) -> Result<GradedAlgebra, AlgebraError> {
        let spec = Arc::clone(factor.spec());
        if spec.rank() != rank {
            return Err(AlgebraError::RankMismatch {
                expected: rank,
                got: spec.rank(),
            });
        }
        let table = factor.generator_table()?;
        let generators = (0..rank)
            .map(|i| {
                Ok(Generator {
                    flux: i + 1,
                    particle: 1,
                    grade: GradeVector::generator(&spec, i)?,
                })
            })
            .collect::<Result<Vec<_>, GradingError>>()?;
        Self::assemble(factor, generators, table, nilpotency, rank, 1, false)
    }

    /// The flux model with `N` fluxes and `n` particles: generators
    /// `Theta[i]^a` of grade `σ_i` over `(Z_2)^N`, `λ = ε_ij` for equal
    /// particle indices and `-ε_ij` otherwise, every generator nilpotent.
    pub fn new_flux_algebra(
        n_flux: usize,
        n_particles: usize,
    ) -> Result<GradedAlgebra, AlgebraError> {
        if n_flux == 0 || n_particles == 0 {
            return Err(AlgebraError::InvalidSize(format!(
                "N = {n_flux} and n = {n_particles} must both be at least 1"
            )));
        }
        let e = flux_bicharacter(n_flux)?;
        let spec: Arc<GroupSpec> = Arc::clone(e.spec());
        let eps = e.generator_table()?;
        let mut generators = Vec::with_capacity(n_flux * n_particles);
        for i in 0..n_flux {
            for a in 0..n_particles {
                generators.push(Generator {
                    flux: i + 1,
                    particle: a + 1,
                    grade: GradeVector::generator(&spec, i)?,
                });
            }
        }
        let lambda = generators
            .iter()
            .map(|x| {
                generators
                    .iter()
                    .map(|y| {
                        let base = eps[x.flux - 1][y.flux - 1];
                        if x.particle == y.particle {
                            base
                        } else {
                            Phase::MINUS_ONE * base
                        }
                    })
                    .collect()
            })
            .collect();
        Self::assemble(
            Arc::new(e),
            generators,
            lambda,
            Nilpotency::All,
            n_flux,
            n_particles,
            true,
        )
    }

    fn assemble(
        factor: Arc<dyn CommutationFactor>,
        generators: Vec<Generator>,
        lambda: Vec<Vec<Phase>>,
        nilpotency: Nilpotency,
        n_flux: usize,
        n_particles: usize,
        flux_model: bool,
    ) -> Result<GradedAlgebra, AlgebraError> {
        let count = generators.len();
        let label = |k: usize| render_generator(&generators[k], n_particles);
        let explicit = matches!(nilpotency, Nilpotency::Explicit(_));
        let mut nilpotent = match nilpotency {
            Nilpotency::Forced => vec![false; count],
            Nilpotency::All => vec![true; count],
            Nilpotency::Explicit(flags) if flags.len() == count => flags,
            Nilpotency::Explicit(flags) => {
                return Err(AlgebraError::NilpotencyLength {
                    expected: count,
                    got: flags.len(),
                })
            }
        };
        let mut coeff_order = 1;
        for x in 0..count {
            let own = lambda[x][x];
            if !own.is_real() {
                return Err(AlgebraError::BadSelfRelation(label(x), own));
            }
            if own.is_minus_one() && !nilpotent[x] {
                if explicit {
                    return Err(AlgebraError::ForcedNilpotent(label(x)));
                }
                nilpotent[x] = true;
            }
            for y in x + 1..count {
                let prod = lambda[x][y] * lambda[y][x];
                if !prod.is_one() {
                    return Err(AlgebraError::InconsistentRelations(
                        label(x),
                        label(y),
                        prod,
                    ));
                }
                coeff_order = lcm(coeff_order, lambda[x][y].den());
            }
        }
        Ok(GradedAlgebra {
            factor,
            generators,
            lambda,
            nilpotent,
            n_flux,
            n_particles,
            flux_model,
            coeff_order,
        })
    }

    pub fn factor(&self) -> &Arc<dyn CommutationFactor> {
        &self.factor
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        self.factor.spec()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn n_flux(&self) -> usize {
        self.n_flux
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn is_flux_model(&self) -> bool {
        self.flux_model
    }

    /// Cyclotomic order of the coefficient ring; 1 or 2 means plain integers.
    pub fn coeff_order(&self) -> u64 {
        self.coeff_order
    }

    pub fn is_nilpotent(&self, generator: usize) -> bool {
        self.nilpotent[generator]
    }

    /// `λ(x, y)` in `x y = λ(x, y) y x`.
    pub fn lambda(&self, x: usize, y: usize) -> Phase {
        self.lambda[x][y]
    }

    /// Index of `Theta[flux]^particle`, 1-based inputs.
    pub fn generator_index(&self, flux: usize, particle: usize) -> Result<usize, AlgebraError> {
        if flux == 0 || flux > self.n_flux || particle == 0 || particle > self.n_particles {
            return Err(AlgebraError::UnknownGenerator { flux, particle });
        }
        Ok((flux - 1) * self.n_particles + particle - 1)
    }

    pub fn filling_factor(&self) -> Option<FillingFactor> {
        if !self.flux_model {
            return None;
        }
        let g = gcd(self.n_particles as u64, self.n_flux as u64) as usize;
        Some(FillingFactor {
            num: self.n_particles / g,
            den: self.n_flux / g,
        })
    }

    fn check_word(&self, word: &[usize]) -> Result<(), AlgebraError> {
        match word.iter().find(|&&g| g >= self.generators.len()) {
            Some(&g) => Err(AlgebraError::ForeignGenerator(g)),
            None => Ok(()),
        }
    }

    /// Sorts `word` into canonical order, returning the accumulated phase and
    /// the sorted word, or `None` when a nilpotent generator repeats.
    pub fn normal_form_phase(
        &self,
        word: &[usize],
    ) -> Result<Option<(Phase, Vec<usize>)>, AlgebraError> {
        self.check_word(word)?;
        let mut w = word.to_vec();
        let mut phase = Phase::ONE;
        for k in 1..w.len() {
            let mut j = k;
            while j > 0 && w[j - 1] > w[j] {
                phase *= self.lambda[w[j - 1]][w[j]];
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        Ok(self.kill_repeats(phase, w))
    }

    /// Like [`normal_form_phase`](Self::normal_form_phase), but lets `choose`
    /// pick which adjacent inversion to swap next. `choose` receives the
    /// number of current inversions and returns an index below it.
    pub fn normal_form_with_schedule(
        &self,
        word: &[usize],
        mut choose: impl FnMut(usize) -> usize,
    ) -> Result<Option<(Phase, Vec<usize>)>, AlgebraError> {
        self.check_word(word)?;
        let mut w = word.to_vec();
        let mut phase = Phase::ONE;
        loop {
            let descents: Vec<usize> = (1..w.len()).filter(|&j| w[j - 1] > w[j]).collect();
            if descents.is_empty() {
                break;
            }
            let j = descents[choose(descents.len()) % descents.len()];
            phase *= self.lambda[w[j - 1]][w[j]];
            w.swap(j - 1, j);
        }
        Ok(self.kill_repeats(phase, w))
    }

    fn kill_repeats(&self, phase: Phase, w: Vec<usize>) -> Option<(Phase, Vec<usize>)> {
        let dead = w.windows(2).any(|p| p[0] == p[1] && self.nilpotent[p[0]]);
        (!dead).then_some((phase, w))
    }

    /// Normal form of a word as a monomial, `None` for zero.
    pub fn normal_form(&self, word: &[usize]) -> Result<Option<Monomial>, AlgebraError> {
        match self.normal_form_phase(word)? {
            None => Ok(None),
            Some((phase, w)) => Ok(Some(Monomial::new(
                w,
                crate::cyclotomic::CycInt::from_phase(phase, self.coeff_order)?,
            ))),
        }
    }

    /// Sum of generator grades.
    pub fn grade_of(&self, word: &[usize]) -> Result<GradeVector, AlgebraError> {
        self.check_word(word)?;
        word.iter()
            .try_fold(GradeVector::zero(self.spec()), |acc, &g| {
                Ok(acc.add(&self.generators[g].grade)?)
            })
    }

    /// The standard monomial `Theta[1]^{α_1} … Theta[N]^{α_N}` for an exponent
    /// vector; the zero vector gives the unit.
    pub fn monomial_from_grade(&self, exponents: &[i64]) -> Result<Monomial, AlgebraError> {
        if self.n_particles != 1 {
            return Err(AlgebraError::NotSingleParticle(self.n_particles));
        }
        if exponents.len() != self.n_flux {
            return Err(GradingError::RankMismatch {
                expected: self.n_flux,
                got: exponents.len(),
            }
            .into());
        }
        let mut word = Vec::new();
        for (i, &e) in exponents.iter().enumerate() {
            let bound_ok = e >= 0 && (!self.nilpotent[i] || e <= 1);
            if !bound_ok {
                return Err(AlgebraError::ExponentOutOfRange {
                    index: i + 1,
                    exponent: e,
                });
            }
            word.extend(std::iter::repeat_n(i, e as usize));
        }
        Ok(Monomial::new(
            word,
            crate::cyclotomic::CycInt::one(self.coeff_order)?,
        ))
    }

    /// Every unordered pair of distinct generators with its phase and class.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                let (gx, gy) = (&self.generators[x], &self.generators[y]);
                let class = if gx.flux == gy.flux {
                    RelationClass::SameFlux
                } else if gx.particle == gy.particle {
                    RelationClass::SameParticle
                } else {
                    RelationClass::DistinctParticle
                };
                out.push(Relation {
                    left: x,
                    right: y,
                    phase: self.lambda[x][y],
                    class,
                });
            }
        }
        out
    }

    /// `Theta[i]` for single-particle contexts, `Theta[i]^a` otherwise.
    pub fn generator_name(&self, g: usize) -> String {
        render_generator(&self.generators[g], self.n_particles)
    }

    /// CLI token syntax: `T<i>` or `T<i>^<a>`.
    pub fn generator_token(&self, g: usize) -> String {
        let gen = &self.generators[g];
        if self.n_particles == 1 {
            format!("T{}", gen.flux)
        } else {
            format!("T{}^{}", gen.flux, gen.particle)
        }
    }

    /// Space-separated generator names, `1` for the empty word.
    pub fn render_word(&self, word: &[usize]) -> String {
        self.join_word(word, |g| self.generator_name(g))
    }

    pub fn render_word_tokens(&self, word: &[usize]) -> String {
        self.join_word(word, |g| self.generator_token(g))
    }

    fn join_word(&self, word: &[usize], name: impl Fn(usize) -> String) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter().map(|&g| name(g)).collect::<Vec<_>>().join(" ")
    }
}

fn render_generator(g: &Generator, n_particles: usize) -> String {
    if n_particles == 1 {
        format!("Theta[{}]", g.flux)
    } else {
        format!("Theta[{}]^{}", g.flux, g.particle)
    }
}
