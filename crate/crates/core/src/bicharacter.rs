//! Bicharacters `ε(α, β) = (-1)^{(α|β)} q^{<α|β>}` on grading groups, and
//! checkers for the bicharacter and normalization laws.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::grading::{GradeVector, GradingError, GroupSpec, Modulus};
use crate::phase::Phase;
use crate::report::{Report, ReportBuilder, Sampling, Witness, EXHAUSTIVE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BicharacterError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("biform must be {expected}x{expected}, got {rows} rows")]
    Shape { expected: usize, rows: usize },
    #[error("matrix is not {kind}: entry ({i},{j}) = {a} but ({j},{i}) = {b}")]
    NotOfKind {
        kind: BiformKind,
        i: usize,
        j: usize,
        a: i64,
        b: i64,
    },
    #[error("expected a {0} biform")]
    WrongKind(BiformKind),
    #[error(
        "ε is not well defined on {spec}: adding the order of σ_{index} changes ε(·, σ_{other})"
    )]
    IllDefined {
        spec: String,
        index: usize,
        other: usize,
    },
    #[error("flux model needs N >= 1")]
    EmptyFluxModel,
    #[error("flux bicharacter for N={n} does not reproduce its generator table at ({i},{j})")]
    FluxTableMismatch { n: usize, i: usize, j: usize },
    #[error("override {0} is outside the grading group")]
    BadOverride(String),
    #[error("integer overflow evaluating the biform")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BiformKind {
    Symmetric,
    Skew,
}

impl fmt::Display for BiformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BiformKind::Symmetric => "symmetric",
            BiformKind::Skew => "skew-symmetric",
        })
    }
}

/// Integer-valued bilinear form on `Z^N`, given by its matrix on generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biform {
    matrix: Vec<Vec<i64>>,
    kind: BiformKind,
}

impl Biform {
    pub fn new(matrix: Vec<Vec<i64>>, kind: BiformKind) -> Result<Biform, BicharacterError> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(BicharacterError::Shape {
                    expected: n,
                    rows: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                let (a, b) = (matrix[i][j], matrix[j][i]);
                let ok = match kind {
                    BiformKind::Symmetric => a == b,
                    BiformKind::Skew => Some(a) == b.checked_neg(),
                };
                if !ok {
                    return Err(BicharacterError::NotOfKind { kind, i, j, a, b });
                }
            }
        }
        Ok(Biform { matrix, kind })
    }

    pub fn zero(rank: usize, kind: BiformKind) -> Biform {
        Biform {
            matrix: vec![vec![0; rank]; rank],
            kind,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn kind(&self) -> BiformKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// `αᵀ M β`, exact.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> Result<i128, BicharacterError> {
        let mut acc: i128 = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = (*ai as i128)
                    .checked_mul(self.matrix[i][j] as i128)
                    .and_then(|t| t.checked_mul(*bj as i128))
                    .ok_or(BicharacterError::Overflow)?;
                acc = acc.checked_add(t).ok_or(BicharacterError::Overflow)?;
            }
        }
        Ok(acc)
    }
}

/// Anything that assigns a phase to each ordered pair of grades.
pub trait CommutationFactor: fmt::Debug + Send + Sync {
    fn spec(&self) -> &Arc<GroupSpec>;

    fn eval(&self, a: &GradeVector, b: &GradeVector) -> Result<Phase, BicharacterError>;

    fn generator_table(&self) -> Result<Vec<Vec<Phase>>, BicharacterError> {
        let spec = self.spec();
        let gens: Vec<GradeVector> = (0..spec.rank())
            .map(|i| GradeVector::generator(spec, i))
            .collect::<Result<_, _>>()?;
        gens.iter()
            .map(|a| gens.iter().map(|b| self.eval(a, b)).collect())
            .collect()
    }
}

fn ensure_spec(spec: &Arc<GroupSpec>, v: &GradeVector) -> Result<(), BicharacterError> {
    if Arc::ptr_eq(spec, v.spec()) || **spec == **v.spec() {
        Ok(())
    } else {
        Err(GradingError::SpecMismatch {
            left: spec.to_string(),
            right: v.spec().to_string(),
        }
        .into())
    }
}

/// A bicharacter in standard form: a symmetric biform contributing signs, a
/// skew biform contributing powers of the root of unity `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    spec: Arc<GroupSpec>,
    sym: Biform,
    skew: Biform,
    q: Phase,
}

impl Bicharacter {
    /// Validates shapes and checks that ε descends to the quotient group:
    /// shifting any component by its modulus must not change ε.
    pub fn new(
        spec: Arc<GroupSpec>,
        sym: Biform,
        skew: Biform,
        q: Phase,
    ) -> Result<Bicharacter, BicharacterError> {
        let n = spec.rank();
        for form in [&sym, &skew] {
            if form.rank() != n {
                return Err(BicharacterError::Shape {
                    expected: n,
                    rows: form.rank(),
                });
            }
        }
        if sym.kind != BiformKind::Symmetric {
            return Err(BicharacterError::WrongKind(BiformKind::Symmetric));
        }
        if skew.kind != BiformKind::Skew {
            return Err(BicharacterError::WrongKind(BiformKind::Skew));
        }
        for (i, m) in spec.moduli().iter().enumerate() {
            let Modulus::Cyclic(m) = *m else { continue };
            for j in 0..n {
                let sign_ok = (m as i128 * sym.entry(i, j) as i128) % 2 == 0;
                let q_ok = q
                    .pow(((m as i128 * skew.entry(i, j) as i128) % q.den() as i128) as i64)
                    .is_one();
                if !(sign_ok && q_ok) {
                    return Err(BicharacterError::IllDefined {
                        spec: spec.to_string(),
                        index: i + 1,
                        other: j + 1,
                    });
                }
            }
        }
        Ok(Bicharacter { spec, sym, skew, q })
    }

    /// `ε ≡ 1`.
    pub fn trivial(spec: Arc<GroupSpec>) -> Bicharacter {
        let n = spec.rank();
        Bicharacter {
            spec,
            sym: Biform::zero(n, BiformKind::Symmetric),
            skew: Biform::zero(n, BiformKind::Skew),
            q: Phase::ONE,
        }
    }

    pub fn sym(&self) -> &Biform {
        &self.sym
    }

    pub fn skew(&self) -> &Biform {
        &self.skew
    }

    pub fn q(&self) -> Phase {
        self.q
    }

    fn eval_components(&self, a: &[i64], b: &[i64]) -> Result<Phase, BicharacterError> {
        let s = self.sym.pair(a, b)?;
        let k = self.skew.pair(a, b)?;
        let k = (k % self.q.den() as i128) as i64;
        Ok(Phase::sign((s % 2) as i64) * self.q.pow(k))
    }
}

impl CommutationFactor for Bicharacter {
    fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    fn eval(&self, a: &GradeVector, b: &GradeVector) -> Result<Phase, BicharacterError> {
        ensure_spec(&self.spec, a)?;
        ensure_spec(&self.spec, b)?;
        self.eval_components(a.components(), b.components())
    }
}

#[derive(Serialize, Deserialize)]
struct BicharacterJson {
    spec: GroupSpec,
    sym: Vec<Vec<i64>>,
    skew: Vec<Vec<i64>>,
    q: Phase,
}

impl Serialize for Bicharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BicharacterJson {
            spec: (*self.spec).clone(),
            sym: self.sym.matrix.clone(),
            skew: self.skew.matrix.clone(),
            q: self.q,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bicharacter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BicharacterJson::deserialize(deserializer)?;
        let build = || -> Result<Bicharacter, BicharacterError> {
            Bicharacter::new(
                raw.spec.into_shared(),
                Biform::new(raw.sym, BiformKind::Symmetric)?,
                Biform::new(raw.skew, BiformKind::Skew)?,
                raw.q,
            )
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// A bicharacter whose values on some explicit pairs have been replaced.
///
/// Used to feed deliberately broken tables to the law checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedFactor {
    base: Bicharacter,
    overrides: BTreeMap<(Vec<i64>, Vec<i64>), Phase>,
}

impl TabulatedFactor {
    pub fn new(base: Bicharacter) -> Self {
        TabulatedFactor {
            base,
            overrides: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &Bicharacter {
        &self.base
    }

    pub fn set(
        &mut self,
        a: &GradeVector,
        b: &GradeVector,
        value: Phase,
    ) -> Result<(), BicharacterError> {
        for v in [a, b] {
            if ensure_spec(&self.base.spec, v).is_err() {
                return Err(BicharacterError::BadOverride(v.to_string()));
            }
        }
        self.overrides
            .insert((a.components().to_vec(), b.components().to_vec()), value);
        Ok(())
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&[i64], &[i64], Phase)> {
        self.overrides
            .iter()
            .map(|((a, b), p)| (a.as_slice(), b.as_slice(), *p))
    }
}

impl CommutationFactor for TabulatedFactor {
    fn spec(&self) -> &Arc<GroupSpec> {
        &self.base.spec
    }

    fn eval(&self, a: &GradeVector, b: &GradeVector) -> Result<Phase, BicharacterError> {
        ensure_spec(&self.base.spec, a)?;
        ensure_spec(&self.base.spec, b)?;
        let key = (a.components().to_vec(), b.components().to_vec());
        match self.overrides.get(&key) {
            Some(p) => Ok(*p),
            None => self.base.eval(a, b),
        }
    }
}

/// Sign convention for the antisymmetric flux matrix `Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaConvention {
    /// `Ω_ij = +1` for `i < j`.
    #[default]
    UpperPositive,
    /// `Ω_ij = -1` for `i < j`.
    LowerPositive,
}

/// `Ω_ij` on zero-based flux indices.
pub fn omega(i: usize, j: usize, convention: OmegaConvention) -> i64 {
    let s = match i.cmp(&j) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    };
    match convention {
        OmegaConvention::UpperPositive => s,
        OmegaConvention::LowerPositive => -s,
    }
}

/// Generator table `ε_ij = -(-1)^N (-1)^{Ω_ij}` of the flux model,
/// evaluated directly from `Ω`.
pub fn flux_generator_table(n_flux: usize, convention: OmegaConvention) -> Vec<Vec<Phase>> {
    (0..n_flux)
        .map(|i| {
            (0..n_flux)
                .map(|j| {
                    Phase::MINUS_ONE
                        * Phase::sign(n_flux as i64)
                        * Phase::sign(omega(i, j, convention))
                })
                .collect()
        })
        .collect()
}

/// The flux-model bicharacter on `(Z_2)^N`.
///
/// Standard form: `q = -1`, no skew part, and a symmetric biform with
/// `(σ_i|σ_i) = N + 1`, `(σ_i|σ_j) = N` (mod 2). The result is checked against
/// [`flux_generator_table`] before it is returned.
pub fn flux_bicharacter(n_flux: usize) -> Result<Bicharacter, BicharacterError> {
    if n_flux == 0 {
        return Err(BicharacterError::EmptyFluxModel);
    }
    let spec = GroupSpec::cyclic(2, n_flux)?.into_shared();
    let diag = ((n_flux + 1) % 2) as i64;
    let off = (n_flux % 2) as i64;
    let sym = (0..n_flux)
        .map(|i| {
            (0..n_flux)
                .map(|j| if i == j { diag } else { off })
                .collect()
        })
        .collect();
    let e = Bicharacter::new(
        spec,
        Biform::new(sym, BiformKind::Symmetric)?,
        Biform::zero(n_flux, BiformKind::Skew),
        Phase::MINUS_ONE,
    )?;
    let expected = flux_generator_table(n_flux, OmegaConvention::default());
    let got = e.generator_table()?;
    for i in 0..n_flux {
        for j in 0..n_flux {
            if got[i][j] != expected[i][j] {
                return Err(BicharacterError::FluxTableMismatch { n: n_flux, i, j });
            }
        }
    }
    Ok(e)
}

/// Radius used when sampling components of free factors.
const FREE_SAMPLE_RADIUS: i64 = 16;

fn random_element(spec: &Arc<GroupSpec>, rng: &mut impl Rng) -> GradeVector {
    let comps = spec
        .moduli()
        .iter()
        .map(|m| match m {
            Modulus::Free => rng.random_range(-FREE_SAMPLE_RADIUS..=FREE_SAMPLE_RADIUS),
            Modulus::Cyclic(v) => rng.random_range(0..*v as i64),
        })
        .collect();
    GradeVector::new(spec, comps).expect("sampled components match the rank")
}

/// The full element list when the group is small enough to enumerate.
fn exhaustive_elements(spec: &Arc<GroupSpec>) -> Option<Vec<GradeVector>> {
    match spec.cardinality() {
        Some(c) if c <= EXHAUSTIVE_LIMIT => Some(spec.elements().collect()),
        _ => None,
    }
}

fn show(r: &Result<Phase, BicharacterError>) -> String {
    match r {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn product(
    x: Result<Phase, BicharacterError>,
    y: Result<Phase, BicharacterError>,
) -> Result<Phase, BicharacterError> {
    Ok(x? * y?)
}

fn check_triple<F: CommutationFactor + ?Sized>(
    e: &F,
    a: &GradeVector,
    b: &GradeVector,
    c: &GradeVector,
    report: &mut ReportBuilder,
) {
    let inputs = || vec![a.to_string(), b.to_string(), c.to_string()];
    // ε(α, β+γ) = ε(α,β) ε(α,γ)
    let right = b.add(c).map_err(BicharacterError::from);
    let lhs = right.and_then(|bc| e.eval(a, &bc));
    let rhs = product(e.eval(a, b), e.eval(a, c));
    let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
    report.check(ok, || Witness {
        law: "eps(a, b+c) = eps(a,b) eps(a,c)".into(),
        inputs: inputs(),
        lhs: show(&lhs),
        rhs: show(&rhs),
    });
    // ε(α+β, γ) = ε(α,γ) ε(β,γ)
    let left = a.add(b).map_err(BicharacterError::from);
    let lhs = left.and_then(|ab| e.eval(&ab, c));
    let rhs = product(e.eval(a, c), e.eval(b, c));
    let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
    report.check(ok, || Witness {
        law: "eps(a+b, c) = eps(a,c) eps(b,c)".into(),
        inputs: inputs(),
        lhs: show(&lhs),
        rhs: show(&rhs),
    });
}

/// Values of `ε` and the group law tabulated over a finite group, so the
/// exhaustive triple loop does no arithmetic on grade vectors.
struct FiniteTable<'a> {
    elems: &'a [GradeVector],
    eps: Vec<Result<Phase, BicharacterError>>,
    sum: Vec<Result<usize, BicharacterError>>,
}

impl<'a> FiniteTable<'a> {
    fn new<F: CommutationFactor + ?Sized>(e: &F, elems: &'a [GradeVector]) -> Self {
        let index: HashMap<&[i64], usize> = elems
            .iter()
            .enumerate()
            .map(|(k, v)| (v.components(), k))
            .collect();
        let mut eps = Vec::with_capacity(elems.len() * elems.len());
        let mut sum = Vec::with_capacity(elems.len() * elems.len());
        for a in elems {
            for b in elems {
                eps.push(e.eval(a, b));
                sum.push(
                    a.add(b)
                        .map_err(BicharacterError::from)
                        .map(|s| index[s.components()]),
                );
            }
        }
        FiniteTable { elems, eps, sum }
    }

    fn eps(&self, a: usize, b: usize) -> Result<Phase, BicharacterError> {
        self.eps[a * self.elems.len() + b].clone()
    }

    fn sum(&self, a: usize, b: usize) -> Result<usize, BicharacterError> {
        self.sum[a * self.elems.len() + b].clone()
    }

    fn check_triple(&self, a: usize, b: usize, c: usize, report: &mut ReportBuilder) {
        let inputs = || {
            [a, b, c]
                .iter()
                .map(|&k| self.elems[k].to_string())
                .collect()
        };
        let lhs = self.sum(b, c).and_then(|bc| self.eps(a, bc));
        let rhs = product(self.eps(a, b), self.eps(a, c));
        let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
        report.check(ok, || Witness {
            law: "eps(a, b+c) = eps(a,b) eps(a,c)".into(),
            inputs: inputs(),
            lhs: show(&lhs),
            rhs: show(&rhs),
        });
        let lhs = self.sum(a, b).and_then(|ab| self.eps(ab, c));
        let rhs = product(self.eps(a, c), self.eps(b, c));
        let ok = matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y);
        report.check(ok, || Witness {
            law: "eps(a+b, c) = eps(a,c) eps(b,c)".into(),
            inputs: inputs(),
            lhs: show(&lhs),
            rhs: show(&rhs),
        });
    }
}

/// Checks multiplicativity in each argument on every triple of a finite
/// group with at most [`EXHAUSTIVE_LIMIT`] elements, or on
/// `sampling.samples` random triples otherwise. Each triple counts twice in
/// `checked`, once per law.
pub fn verify_bicharacter<F: CommutationFactor + ?Sized>(e: &F, sampling: &Sampling) -> Report {
    let spec = e.spec();
    match exhaustive_elements(spec) {
        Some(elems) => {
            let mut report = ReportBuilder::new("bicharacter", true);
            let table = FiniteTable::new(e, &elems);
            for a in 0..elems.len() {
                for b in 0..elems.len() {
                    for c in 0..elems.len() {
                        table.check_triple(a, b, c, &mut report);
                    }
                }
            }
            report.finish()
        }
        None => {
            let mut report = ReportBuilder::new("bicharacter", false);
            let mut rng = sampling.rng();
            for _ in 0..sampling.samples {
                let a = random_element(spec, &mut rng);
                let b = random_element(spec, &mut rng);
                let c = random_element(spec, &mut rng);
                check_triple(e, &a, &b, &c, &mut report);
            }
            report.finish()
        }
    }
}

fn check_pair<F: CommutationFactor + ?Sized>(
    e: &F,
    a: &GradeVector,
    b: &GradeVector,
    report: &mut ReportBuilder,
) {
    let lhs = product(e.eval(a, b), e.eval(b, a));
    let ok = matches!(lhs, Ok(p) if p.is_one());
    report.check(ok, || Witness {
        law: "eps(a,b) eps(b,a) = 1".into(),
        inputs: vec![a.to_string(), b.to_string()],
        lhs: show(&lhs),
        rhs: Phase::ONE.to_string(),
    });
}

/// Checks `ε(α,β) ε(β,α) = 1`, exhaustively or by sampling as
/// [`verify_bicharacter`] does.
pub fn verify_normalized<F: CommutationFactor + ?Sized>(e: &F, sampling: &Sampling) -> Report {
    let spec = e.spec();
    match exhaustive_elements(spec) {
        Some(elems) => {
            let mut report = ReportBuilder::new("normalized", true);
            for a in &elems {
                for b in &elems {
                    check_pair(e, a, b, &mut report);
                }
            }
            report.finish()
        }
        None => {
            let mut report = ReportBuilder::new("normalized", false);
            let mut rng = sampling.rng();
            for _ in 0..sampling.samples {
                let a = random_element(spec, &mut rng);
                let b = random_element(spec, &mut rng);
                check_pair(e, &a, &b, &mut report);
            }
            report.finish()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(spec: &Arc<GroupSpec>, i: usize) -> GradeVector {
        GradeVector::generator(spec, i).unwrap()
    }

    fn elementary_skew(rank: usize) -> Biform {
        let mut m = vec![vec![0; rank]; rank];
        m[0][1] = 1;
        m[1][0] = -1;
        Biform::new(m, BiformKind::Skew).unwrap()
    }

    #[test]
    fn identity_sym_gives_minus_one_on_diagonal() {
        let spec = GroupSpec::free(2).unwrap().into_shared();
        let sym = Biform::new(vec![vec![1, 0], vec![0, 1]], BiformKind::Symmetric).unwrap();
        let e = Bicharacter::new(
            spec.clone(),
            sym,
            Biform::zero(2, BiformKind::Skew),
            Phase::new(1, 5).unwrap(),
        )
        .unwrap();
        let s1 = gen(&spec, 0);
        assert_eq!(e.eval(&s1, &s1).unwrap(), Phase::MINUS_ONE);
        let zero = GradeVector::zero(&spec);
        assert_eq!(e.eval(&zero, &s1).unwrap(), Phase::ONE);
    }

    #[test]
    fn skew_part_with_q_equal_i() {
        // ε(σ1,σ2) = i^1, ε(σ2,σ1) = i^{-1}; frozen after hand substitution
        let spec = GroupSpec::free(2).unwrap().into_shared();
        let q = Phase::new(1, 4).unwrap();
        let e = Bicharacter::new(
            spec.clone(),
            Biform::zero(2, BiformKind::Symmetric),
            elementary_skew(2),
            q,
        )
        .unwrap();
        let (s1, s2) = (gen(&spec, 0), gen(&spec, 1));
        assert_eq!(e.eval(&s1, &s2).unwrap(), Phase::new(1, 4).unwrap());
        assert_eq!(e.eval(&s2, &s1).unwrap(), Phase::new(3, 4).unwrap());
        // cross-check via phase arithmetic: q^1 · q^{-1} = 1
        assert_eq!(q.pow(1) * q.pow(-1), Phase::ONE);
    }

    #[test]
    fn biform_kind_is_enforced() {
        assert!(Biform::new(vec![vec![0, 1], vec![0, 0]], BiformKind::Symmetric).is_err());
        assert!(Biform::new(vec![vec![1, 1], vec![-1, 0]], BiformKind::Skew).is_err());
        assert!(Biform::new(vec![vec![0, 1]], BiformKind::Skew).is_err());
    }

    #[test]
    fn ill_defined_on_quotient_is_rejected() {
        // odd sign exponent on Z_3 is not well defined
        let spec = GroupSpec::cyclic(3, 1).unwrap().into_shared();
        let sym = Biform::new(vec![vec![1]], BiformKind::Symmetric).unwrap();
        let r = Bicharacter::new(spec, sym, Biform::zero(1, BiformKind::Skew), Phase::ONE);
        assert!(matches!(r, Err(BicharacterError::IllDefined { .. })));

        // q of order 4 on Z_2 is not well defined either
        let spec = GroupSpec::cyclic(2, 2).unwrap().into_shared();
        let r = Bicharacter::new(
            spec,
            Biform::zero(2, BiformKind::Symmetric),
            elementary_skew(2),
            Phase::new(1, 4).unwrap(),
        );
        assert!(matches!(r, Err(BicharacterError::IllDefined { .. })));
    }

    #[test]
    fn flux_generator_values() {
        let e2 = flux_bicharacter(2).unwrap();
        assert_eq!(e2.generator_table().unwrap()[0][1], Phase::ONE);
        let e3 = flux_bicharacter(3).unwrap();
        let t3 = e3.generator_table().unwrap();
        assert_eq!(t3[0][1], Phase::MINUS_ONE);
        assert_eq!(t3[0][0], Phase::ONE);
        assert!(matches!(
            flux_bicharacter(0),
            Err(BicharacterError::EmptyFluxModel)
        ));
    }

    #[test]
    fn omega_convention_is_irrelevant() {
        for n in 1..=8 {
            assert_eq!(
                flux_generator_table(n, OmegaConvention::UpperPositive),
                flux_generator_table(n, OmegaConvention::LowerPositive)
            );
        }
        assert_eq!(omega(0, 1, OmegaConvention::UpperPositive), 1);
        assert_eq!(omega(1, 0, OmegaConvention::UpperPositive), -1);
        assert_eq!(omega(2, 2, OmegaConvention::LowerPositive), 0);
    }

    #[test]
    fn flux_bicharacter_is_well_defined_on_quotient() {
        for n in 1..=4 {
            let e = flux_bicharacter(n).unwrap();
            let spec = e.spec().clone();
            for a in spec.elements() {
                for b in spec.elements() {
                    for i in 0..n {
                        let mut raw = a.components().to_vec();
                        raw[i] += 2;
                        let shifted = e.eval_components(&raw, b.components()).unwrap();
                        assert_eq!(shifted, e.eval(&a, &b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn flux_n3_bicharacter_laws_exhaustive() {
        let e = flux_bicharacter(3).unwrap();
        let r = verify_bicharacter(&e, &Sampling::default());
        assert!(r.pass && r.exhaustive);
        assert_eq!(r.checked, 2 * 8 * 8 * 8);
        let r = verify_normalized(&e, &Sampling::default());
        assert!(r.pass);
        assert_eq!(r.checked, 64);
    }

    #[test]
    fn trivial_passes_everything() {
        let e = Bicharacter::trivial(GroupSpec::cyclic(3, 2).unwrap().into_shared());
        assert!(verify_bicharacter(&e, &Sampling::default()).pass);
        assert!(verify_normalized(&e, &Sampling::default()).pass);
    }

    #[test]
    fn symmetric_biform_always_normalizes_sign() {
        let spec = GroupSpec::free(2).unwrap().into_shared();
        let sym = Biform::new(vec![vec![0, 1], vec![1, 0]], BiformKind::Symmetric).unwrap();
        let e = Bicharacter::new(spec, sym, Biform::zero(2, BiformKind::Skew), Phase::ONE).unwrap();
        let r = verify_normalized(&e, &Sampling::with_seed(3));
        assert!(r.pass && !r.exhaustive);
        assert_eq!(r.checked, Sampling::default().samples as u64);
    }

    #[test]
    fn corrupted_table_yields_witness() {
        let base = flux_bicharacter(2).unwrap();
        let spec = base.spec().clone();
        let s1 = gen(&spec, 0);
        let s12 = s1.add(&gen(&spec, 1)).unwrap();
        let honest = base.eval(&s1, &s12).unwrap();
        let mut t = TabulatedFactor::new(base);
        t.set(&s1, &s12, honest * Phase::new(1, 2).unwrap())
            .unwrap();
        let r = verify_bicharacter(&t, &Sampling::default());
        assert!(!r.pass);
        let w = r
            .witnesses
            .iter()
            .find(|w| w.inputs == vec!["(1,0)".to_string(), "(1,0)".into(), "(0,1)".into()])
            .expect("the corrupted triple is reported");
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let spec = GroupSpec::free(3).unwrap().into_shared();
        let e = Bicharacter::new(
            spec,
            Biform::zero(3, BiformKind::Symmetric),
            elementary_skew(3),
            Phase::new(1, 3).unwrap(),
        )
        .unwrap();
        let s = Sampling {
            seed: 42,
            samples: 500,
        };
        assert_eq!(verify_bicharacter(&e, &s), verify_bicharacter(&e, &s));
    }

    #[test]
    fn json_shape() {
        let e = flux_bicharacter(2).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(
            text,
            r#"{"spec":{"moduli":[2,2]},"sym":[[1,0],[0,1]],"skew":[[0,0],[0,0]],"q":"1/2"}"#
        );
        let back: Bicharacter = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        let bad = r#"{"spec":{"moduli":[3]},"sym":[[1]],"skew":[[0]],"q":"0/1"}"#;
        assert!(serde_json::from_str::<Bicharacter>(bad).is_err());
    }
}
