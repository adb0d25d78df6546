use std::collections::BTreeMap;

use super::{AlgebraError, GradedAlgebra};
use crate::cyclotomic::CycInt;
use crate::phase::Phase;

/// A canonical word with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    word: Vec<usize>,
    coeff: CycInt,
}

impl Monomial {
    pub(crate) fn new(word: Vec<usize>, coeff: CycInt) -> Self {
        debug_assert!(!coeff.is_zero());
        Monomial { word, coeff }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn coeff(&self) -> &CycInt {
        &self.coeff
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// A finite linear combination of canonical words. The empty sum is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    order: u64,
    terms: BTreeMap<Vec<usize>, CycInt>,
}

impl AlgebraElement {
    pub fn zero(ctx: &GradedAlgebra) -> Self {
        AlgebraElement {
            order: ctx.coeff_order(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &GradedAlgebra) -> Self {
        Self::from_monomial(Monomial::new(
            Vec::new(),
            CycInt::one(ctx.coeff_order()).expect("positive order"),
        ))
    }

    pub fn generator(ctx: &GradedAlgebra, g: usize) -> Result<Self, AlgebraError> {
        Self::from_word(ctx, &[g])
    }

    /// The normal form of an arbitrary word.
    pub fn from_word(ctx: &GradedAlgebra, word: &[usize]) -> Result<Self, AlgebraError> {
        Ok(match ctx.normal_form(word)? {
            Some(m) => Self::from_monomial(m),
            None => Self::zero(ctx),
        })
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AlgebraElement {
            order: m.coeff.order(),
            terms: BTreeMap::from([(m.word, m.coeff)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &CycInt)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, word: Vec<usize>, coeff: CycInt) -> Result<(), AlgebraError> {
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&coeff)?;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<AlgebraElement, AlgebraError> {
        self.scale_phase(Phase::MINUS_ONE)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.neg()?)
    }

    pub fn scale_phase(&self, p: Phase) -> Result<AlgebraElement, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.mul_phase(p)?)))
            .collect::<Result<_, AlgebraError>>()?;
        Ok(AlgebraElement {
            order: self.order,
            terms,
        })
    }

    pub fn scale(&self, k: &CycInt) -> Result<AlgebraElement, AlgebraError> {
        let mut out = AlgebraElement {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), c.mul(k)?)?;
        }
        Ok(out)
    }
}

impl GradedAlgebra {
    fn owns(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        let foreign =
            x.order != self.coeff_order() || x.terms.keys().flatten().any(|&g| g >= self.len());
        if foreign {
            Err(AlgebraError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    /// Bilinear product: concatenate words, then reduce to normal form.
    pub fn multiply(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        let mut out = AlgebraElement::zero(self);
        let mut word = Vec::new();
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                word.clear();
                word.extend_from_slice(wx);
                word.extend_from_slice(wy);
                if let Some((phase, w)) = self.normal_form_phase(&word)? {
                    out.accumulate(w, cx.mul(cy)?.mul_phase(phase)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Signed sum such as `+1 * Theta[1] Theta[2] - 2 * Theta[3]`, or `0`.
    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (w, c) in &x.terms {
            let word = self.render_word(w);
            let term = match c.as_integer() {
                Some(v) if v < 0 => format!("- {} * {word}", -(v as i128)),
                Some(v) => format!("+ {v} * {word}"),
                None => format!("+ ({c}) * {word}"),
            };
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&term);
        }
        // "+ 1 * x" -> "+1 * x" for the leading term
        if out.starts_with("+ ") || out.starts_with("- ") {
            out.remove(1);
        }
        out
    }
}
