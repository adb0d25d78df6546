//! Partitions of quasiparticles and quasiholes, and the generalized Pauli
//! exclusion filter.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{AlgebraError, GradedAlgebra, Monomial};
use crate::cyclotomic::CycInt;

/// Enumeration refuses more candidate subsets than this unless forced.
pub const MAX_CANDIDATES: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerateOptions {
    /// Largest number of generators in a partition; `None` for no bound.
    pub max_degree: Option<usize>,
    /// Skip the [`MAX_CANDIDATES`] cap.
    pub force: bool,
}

/// A partition: a product of distinct generators, each binding one flux to
/// one particle. Fluxes not bound by any generator are quasiholes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub monomial: Monomial,
    pub quasiparticles: usize,
    pub quasiholes: usize,
    pub admissible: bool,
}

/// Serialized form of a [`Partition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionRecord {
    pub word: String,
    pub coeff: CycInt,
    pub quasiparticles: usize,
    pub quasiholes: usize,
    pub admissible: bool,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl GradedAlgebra {
    /// Generalized Pauli exclusion: no generator repeats and every pair of
    /// distinct generators commutes with phase exactly `+1`.
    pub fn is_admissible(&self, m: &Monomial) -> bool {
        let w = m.word();
        w.iter().enumerate().all(|(k, &x)| {
            w[k + 1..]
                .iter()
                .all(|&y| x != y && self.lambda(x, y).is_one())
        })
    }

    pub fn partition(&self, m: Monomial) -> Partition {
        let fluxes: BTreeSet<usize> = m
            .word()
            .iter()
            .map(|&g| self.generators()[g].flux)
            .collect();
        Partition {
            quasiparticles: m.degree(),
            quasiholes: self.n_flux() - fluxes.len(),
            admissible: self.is_admissible(&m),
            monomial: m,
        }
    }

    pub fn partition_record(&self, p: &Partition) -> PartitionRecord {
        PartitionRecord {
            word: self.render_word(p.monomial.word()),
            coeff: p.monomial.coeff().clone(),
            quasiparticles: p.quasiparticles,
            quasiholes: p.quasiholes,
            admissible: p.admissible,
        }
    }

    /// Number of subsets of distinct generators with at most `max_degree`
    /// elements.
    pub fn candidate_count(&self, max_degree: Option<usize>) -> u128 {
        let n = self.len() as u128;
        let top = max_degree.map_or(n, |d| (d as u128).min(n));
        (0..=top).fold(0u128, |acc, k| acc.saturating_add(binomial(n, k)))
    }

    /// Every product of distinct generators in normal form, classified,
    /// ordered by degree and then lexicographically by word. The unit comes
    /// first.
    pub fn enumerate_partitions(
        &self,
        options: EnumerateOptions,
    ) -> Result<Vec<Partition>, AlgebraError> {
        let candidates = self.candidate_count(options.max_degree);
        if candidates > MAX_CANDIDATES && !options.force {
            return Err(AlgebraError::EnumerationCap {
                candidates,
                cap: MAX_CANDIDATES,
            });
        }
        let top = options.max_degree.unwrap_or(self.len()).min(self.len());
        let mut out = Vec::new();
        let mut subset: Vec<usize> = Vec::new();
        for degree in 0..=top {
            combinations(self.len(), degree, &mut subset, &mut |w| {
                let m = self
                    .normal_form(w)?
                    .expect("distinct generators never vanish");
                out.push(self.partition(m));
                Ok(())
            })?;
        }
        Ok(out)
    }
}

/// Visits every strictly increasing sequence of `k` indices below `n` in
/// lexicographic order.
fn combinations(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<(), AlgebraError>,
) -> Result<(), AlgebraError> {
    if buf.len() == k {
        return visit(buf);
    }
    let start = buf.last().map_or(0, |&g| g + 1);
    let remaining = k - buf.len();
    for g in start..=n.saturating_sub(remaining) {
        if g >= n {
            break;
        }
        buf.push(g);
        combinations(n, k, buf, visit)?;
        buf.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn combination_order() {
        let mut seen = Vec::new();
        combinations(4, 2, &mut Vec::new(), &mut |w| {
            seen.push(w.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
