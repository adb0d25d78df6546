//! The four subcommands. Each returns the text to print and whether the
//! run counts as a pass.

use std::fmt::Write as _;

use serde::Serialize;

use qsym_core::{
    verify_bicharacter, verify_graded_commutativity, verify_involution, verify_normalized,
    verify_ybe, CycInt, EnumerateOptions, GradedAlgebra, GradedBasis, PartitionRecord, Phase,
    RelationClass, Report, Sampling,
};

use crate::model::{Model, ModelSpec};
use crate::word::parse_word;
use crate::CliError;

pub struct Output {
    pub text: String,
    pub pass: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types always serialize");
    s.push('\n');
    s
}

fn describe_phase(p: Phase) -> String {
    if p.is_one() {
        "+1".into()
    } else if p.is_minus_one() {
        "-1".into()
    } else {
        format!("exp(2πi·{p})")
    }
}

fn relation_verb(p: Phase) -> &'static str {
    if p.is_one() {
        "commute"
    } else if p.is_minus_one() {
        "anticommute"
    } else {
        "q-commute"
    }
}

fn class_heading(class: RelationClass) -> &'static str {
    match class {
        RelationClass::SameParticle => "same particle, distinct flux (a = b, i ≠ j)",
        RelationClass::DistinctParticle => "distinct particle, distinct flux (a ≠ b, i ≠ j)",
        RelationClass::SameFlux => "same flux, distinct particle (a ≠ b, i = j)",
    }
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RelationsJson<'a> {
    model: &'a ModelSpec,
    relations: Vec<RelationRow>,
    nilpotency: Vec<NilpotencyRow>,
}

#[derive(Serialize)]
struct RelationRow {
    left: String,
    right: String,
    phase: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<RelationClass>,
}

#[derive(Serialize)]
struct NilpotencyRow {
    generator: String,
    nilpotent: bool,
}

pub fn relations(model: &Model, as_json: bool) -> Result<Output, CliError> {
    let ctx = model.algebra()?;
    let relations = ctx.relations();
    let nilpotency: Vec<NilpotencyRow> = (0..ctx.len())
        .map(|g| NilpotencyRow {
            generator: ctx.generator_name(g),
            nilpotent: ctx.is_nilpotent(g),
        })
        .collect();
    if as_json {
        let rows = relations
            .iter()
            .map(|r| RelationRow {
                left: ctx.generator_name(r.left),
                right: ctx.generator_name(r.right),
                phase: r.phase,
                class: ctx.is_flux_model().then_some(r.class),
            })
            .collect();
        let text = json(&RelationsJson {
            model: &model.spec,
            relations: rows,
            nilpotency,
        });
        return Ok(Output { text, pass: true });
    }

    let mut out = header(model, ctx);
    let line = |out: &mut String, x: usize, y: usize, p: Phase| {
        let (a, b) = (ctx.generator_name(x), ctx.generator_name(y));
        let _ = writeln!(
            out,
            "  {a} {b} = {} · {b} {a}    {}",
            describe_phase(p),
            relation_verb(p)
        );
    };
    if ctx.is_flux_model() {
        let mut classes: Vec<RelationClass> = relations.iter().map(|r| r.class).collect();
        classes.sort();
        classes.dedup();
        for class in classes {
            let _ = writeln!(out, "[{}]", class_heading(class));
            for r in relations.iter().filter(|r| r.class == class) {
                line(&mut out, r.left, r.right, r.phase);
            }
        }
    } else if !relations.is_empty() {
        out.push_str("[relations]\n");
        for r in &relations {
            line(&mut out, r.left, r.right, r.phase);
        }
    }
    out.push_str("[nilpotency]\n");
    for row in &nilpotency {
        let x = &row.generator;
        if row.nilpotent {
            let _ = writeln!(out, "  {x} {x} = 0");
        } else {
            let _ = writeln!(out, "  {x} {x} ≠ 0    not nilpotent");
        }
    }
    Ok(Output {
        text: out,
        pass: true,
    })
}

fn header(model: &Model, ctx: &GradedAlgebra) -> String {
    let mut out = format!(
        "model: {}\ngrading group: {}\ngenerators: {}\n",
        model.spec.label(),
        ctx.spec(),
        ctx.len()
    );
    if let Some(v) = ctx.filling_factor() {
        let _ = writeln!(out, "filling factor: {v}");
    }
    out
}

// ---------------------------------------------------------------------------
// partitions
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PartitionsJson<'a> {
    model: &'a ModelSpec,
    filling_factor: Option<String>,
    enumerated: usize,
    admissible: usize,
    listed: usize,
    rows: Vec<PartitionRecord>,
}

pub struct PartitionFilter {
    pub admissible_only: bool,
    pub degree: Option<usize>,
    pub force: bool,
}

pub fn partitions(
    model: &Model,
    filter: &PartitionFilter,
    as_json: bool,
) -> Result<Output, CliError> {
    let ctx = model.algebra()?;
    let all = ctx.enumerate_partitions(EnumerateOptions {
        max_degree: filter.degree,
        force: filter.force,
    })?;
    let in_degree: Vec<_> = all
        .iter()
        .filter(|p| filter.degree.is_none_or(|k| p.quasiparticles == k))
        .collect();
    let admissible = in_degree.iter().filter(|p| p.admissible).count();
    let rows: Vec<PartitionRecord> = in_degree
        .iter()
        .filter(|p| p.admissible || !filter.admissible_only)
        .map(|p| ctx.partition_record(p))
        .collect();
    if as_json {
        let text = json(&PartitionsJson {
            model: &model.spec,
            filling_factor: ctx.filling_factor().map(|v| v.to_string()),
            enumerated: in_degree.len(),
            admissible,
            listed: rows.len(),
            rows,
        });
        return Ok(Output { text, pass: true });
    }

    let mut out = header(model, ctx);
    let width = rows
        .iter()
        .map(|r| r.word.chars().count())
        .max()
        .unwrap_or(0)
        .max(4);
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:>14}  {:>10}  admissible",
        "word", "coeff", "quasiparticles", "quasiholes"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>14}  {:>10}  {}",
            r.word,
            r.coeff.to_string(),
            r.quasiparticles,
            r.quasiholes,
            if r.admissible { "yes" } else { "no" }
        );
    }
    let scope = match filter.degree {
        Some(k) => format!(" of degree {k}"),
        None => String::new(),
    };
    let _ = writeln!(
        out,
        "{} listed; {admissible} admissible of {} partitions{scope}",
        rows.len(),
        in_degree.len()
    );
    Ok(Output {
        text: out,
        pass: true,
    })
}

// ---------------------------------------------------------------------------
// normal-form
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct NormalFormJson<'a> {
    model: &'a ModelSpec,
    input: &'a str,
    zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeff: Option<CycInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<Phase>,
    result: String,
}

pub fn normal_form(model: &Model, input: &str, as_json: bool) -> Result<Output, CliError> {
    let ctx = model.algebra()?;
    let word = parse_word(ctx, input)?;
    let reduced = ctx.normal_form_phase(&word)?;
    let monomial = ctx.normal_form(&word)?;
    let result = match &reduced {
        None => "0".to_string(),
        Some((p, w)) => format!("{} · {}", describe_phase(*p), ctx.render_word_tokens(w)),
    };
    let text = if as_json {
        json(&NormalFormJson {
            model: &model.spec,
            input,
            zero: monomial.is_none(),
            word: monomial.as_ref().map(|m| ctx.render_word_tokens(m.word())),
            coeff: monomial.as_ref().map(|m| m.coeff().clone()),
            phase: reduced.map(|(p, _)| p),
            result,
        })
    } else {
        result + "\n"
    };
    Ok(Output { text, pass: true })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Bicharacter,
    Normalized,
    Ybe,
    GradedComm,
    Involution,
    All,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    model: &'a ModelSpec,
    seed: u64,
    pass: bool,
    reports: &'a [Report],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped: Vec<Skipped>,
}

#[derive(Serialize)]
struct Skipped {
    suite: &'static str,
    reason: String,
}

pub fn verify(
    model: &Model,
    suite: Suite,
    seed: u64,
    degree: usize,
    as_json: bool,
) -> Result<Output, CliError> {
    let sampling = Sampling::with_seed(seed);
    let factor = model.factor.as_ref();
    let basis = GradedBasis::single_particle(factor.spec());
    let wanted = |s: Suite| suite == s || suite == Suite::All;

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if wanted(Suite::Bicharacter) {
        reports.push(verify_bicharacter(factor, &sampling));
    }
    if wanted(Suite::Normalized) {
        reports.push(verify_normalized(factor, &sampling));
    }
    if wanted(Suite::Ybe) {
        reports.push(verify_ybe(factor, &basis));
    }
    if wanted(Suite::Involution) {
        reports.push(verify_involution(factor, &basis));
    }
    if wanted(Suite::GradedComm) {
        match model
            .algebra()
            .and_then(|ctx| verify_graded_commutativity(ctx, degree))
        {
            Ok(r) => reports.push(r),
            Err(e) if suite == Suite::All => skipped.push(Skipped {
                suite: "graded-comm",
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    let pass = reports.iter().all(|r| r.pass);

    if as_json {
        let text = json(&VerifyJson {
            model: &model.spec,
            seed,
            pass,
            reports: &reports,
            skipped,
        });
        return Ok(Output { text, pass });
    }
    let mut out = format!("model: {}\nseed: {seed}\n", model.spec.label());
    for r in &reports {
        let _ = writeln!(out, "{}", r.summary());
        for w in &r.witnesses {
            let _ = writeln!(
                out,
                "  witness [{}] at ({}): {} ≠ {}",
                w.law,
                w.inputs.join(", "),
                w.lhs,
                w.rhs
            );
        }
        if r.violations > r.witnesses.len() as u64 {
            let _ = writeln!(out, "  … {} more", r.violations - r.witnesses.len() as u64);
        }
    }
    for s in &skipped {
        let _ = writeln!(out, "{}: skipped ({})", s.suite, s.reason);
    }
    let _ = writeln!(out, "overall: {}", if pass { "PASS" } else { "FAIL" });
    Ok(Output { text: out, pass })
}
