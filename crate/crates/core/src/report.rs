//! Verification reports shared by every law checker.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Finite groups up to this many elements are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 4096;

/// Reports keep at most this many witnesses; `violations` counts all of them.
pub const MAX_WITNESSES: usize = 20;

/// How a verifier picks its inputs when it cannot enumerate them all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: 0,
            samples: 10_000,
        }
    }
}

impl Sampling {
    pub fn with_seed(seed: u64) -> Self {
        Sampling {
            seed,
            ..Default::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// One counterexample to a law.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub law: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub law: String,
    pub pass: bool,
    pub exhaustive: bool,
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} checked{}, {} violations)",
            self.law,
            if self.pass { "PASS" } else { "FAIL" },
            self.checked,
            if self.exhaustive {
                ", exhaustive"
            } else {
                ", sampled"
            },
            self.violations
        )
    }
}

/// Accumulates checks and produces a deterministic [`Report`].
#[derive(Debug)]
pub(crate) struct ReportBuilder {
    law: String,
    exhaustive: bool,
    checked: u64,
    violations: u64,
    witnesses: Vec<Witness>,
}

impl ReportBuilder {
    pub(crate) fn new(law: &str, exhaustive: bool) -> Self {
        ReportBuilder {
            law: law.to_string(),
            exhaustive,
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            // sampled runs sort at the end, so they keep everything until then
            if !self.exhaustive || self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub(crate) fn finish(mut self) -> Report {
        self.witnesses.sort();
        self.witnesses.dedup();
        self.witnesses.truncate(MAX_WITNESSES);
        Report {
            law: self.law,
            pass: self.violations == 0,
            exhaustive: self.exhaustive,
            checked: self.checked,
            violations: self.violations,
            witnesses: self.witnesses,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_sorted_and_capped() {
        let mut b = ReportBuilder::new("demo", false);
        for k in (0..50).rev() {
            b.check(k % 2 == 0, || Witness {
                law: "demo".into(),
                inputs: vec![format!("{k:02}")],
                lhs: "a".into(),
                rhs: "b".into(),
            });
        }
        let r = b.finish();
        assert!(!r.pass);
        assert_eq!(r.checked, 50);
        assert_eq!(r.violations, 25);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert_eq!(r.witnesses[0].inputs, vec!["01".to_string()]);
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_has_required_keys() {
        let r = ReportBuilder::new("x", true).finish();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["pass", "checked", "witnesses"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(r.pass);
    }
}
