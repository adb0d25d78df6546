use super::{AlgebraElement, AlgebraError, GradedAlgebra};
use crate::report::{Report, ReportBuilder, Witness};

impl GradedAlgebra {
    /// All canonical basis words of degree at most `max_degree`, shortest
    /// first. Nilpotent generators appear at most once per word.
    pub fn basis_words(&self, max_degree: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for g in start..self.len() {
                    if w.last() == Some(&g) && self.is_nilpotent(g) {
                        continue;
                    }
                    let mut longer = w.clone();
                    longer.push(g);
                    next.push(longer);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// Checks `a b = ε(α, β) b a` for every pair of basis monomials up to
/// `max_degree`. Only meaningful when the grade alone fixes the relations,
/// so contexts with more than one particle are refused.
pub fn verify_graded_commutativity(
    ctx: &GradedAlgebra,
    max_degree: usize,
) -> Result<Report, AlgebraError> {
    if ctx.n_particles() != 1 {
        return Err(AlgebraError::NotSingleParticle(ctx.n_particles()));
    }
    let words = ctx.basis_words(max_degree);
    let elements = words
        .iter()
        .map(|w| Ok((AlgebraElement::from_word(ctx, w)?, ctx.grade_of(w)?)))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let mut report = ReportBuilder::new("graded-commutativity", true);
    for (i, (a, alpha)) in elements.iter().enumerate() {
        for (j, (b, beta)) in elements.iter().enumerate() {
            let lhs = ctx.multiply(a, b)?;
            let eps = ctx.factor().eval(alpha, beta)?;
            let rhs = ctx.multiply(b, a)?.scale_phase(eps)?;
            report.check(lhs == rhs, || Witness {
                law: "a b = eps(alpha, beta) b a".into(),
                inputs: vec![ctx.render_word(&words[i]), ctx.render_word(&words[j])],
                lhs: ctx.render(&lhs),
                rhs: ctx.render(&rhs),
            });
        }
    }
    Ok(report.finish())
}
