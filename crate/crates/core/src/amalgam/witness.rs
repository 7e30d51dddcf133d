use super::AmalgamError;
use crate::fincat::{FinCategory, FinMonoid, MonoidJson};
use crate::poset::{FinPoset, PosetJson};
use serde::{Deserialize, Serialize};

/// The data `(0, F, α, β, β′)` against which the amalgamation axioms are read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamWitness {
    pub zero: usize,
    /// `F`: each morphism to an endomorphism of `zero` (a morphism index).
    pub retraction: Vec<usize>,
    /// `α`: position in `Hom(zero, zero)` to an element of `target`.
    pub alpha: Vec<usize>,
    /// The monoid `G`; `α` lands in `Gᵒᵖ`.
    pub target: FinMonoid,
    pub poset: FinPoset,
    /// Object to poset element.
    pub beta: Vec<usize>,
    /// Poset element to object.
    pub beta_prime: Vec<usize>,
}

impl AmalgamWitness {
    /// Rejects witnesses whose tables do not fit the category.
    pub fn validate_shape(&self, c: &FinCategory) -> Result<(), AmalgamError> {
        let bad = |s: String| Err(AmalgamError::InvalidWitness(s));
        let (n, m) = (c.num_objects(), c.num_morphisms());
        if self.zero >= n {
            return bad(format!("zero {} is not an object", self.zero));
        }
        if self.retraction.len() != m || self.retraction.iter().any(|&f| f >= m) {
            return bad("retraction must send each morphism to a morphism".into());
        }
        let endo = c.hom(self.zero, self.zero).len();
        if self.alpha.len() != endo || self.alpha.iter().any(|&a| a >= self.target.len()) {
            return bad(format!("alpha must map {endo} endomorphisms into the target monoid"));
        }
        if self.beta.len() != n || self.beta.iter().any(|&p| p >= self.poset.len()) {
            return bad("beta must map each object into the poset".into());
        }
        if self.beta_prime.len() != self.poset.len() || self.beta_prime.iter().any(|&x| x >= n) {
            return bad("beta_prime must map each poset element to an object".into());
        }
        Ok(())
    }

    /// `α(F(f))`, assuming `F(f)` is an endomorphism of `zero`.
    pub fn label(&self, c: &FinCategory, f: usize) -> usize {
        let pos = c.hom(self.zero, self.zero).iter().position(|&e| e == self.retraction[f]).unwrap();
        self.alpha[pos]
    }

    /// `α(F(f))` for every morphism, or `None` where `F(f)` is not an endomorphism of `zero`.
    pub fn labels(&self, c: &FinCategory) -> Vec<Option<usize>> {
        let endo = c.hom(self.zero, self.zero);
        self.retraction.iter().map(|&e| endo.iter().position(|&x| x == e).map(|i| self.alpha[i])).collect()
    }

    pub fn to_json(&self, c: &FinCategory) -> WitnessJson {
        let mlabel = |f: usize| c.morphism(f).label.clone();
        WitnessJson {
            zero: c.object_label(self.zero).to_string(),
            retraction: self.retraction.iter().map(|&f| mlabel(f)).collect(),
            alpha: self.alpha.clone(),
            target: self.target.to_json(),
            poset: self.poset.to_json(),
            beta: self.beta.clone(),
            beta_prime: self.beta_prime.clone(),
        }
    }

    pub fn from_json(c: &FinCategory, j: &WitnessJson) -> Result<Self, AmalgamError> {
        let zero = c
            .object_index(&j.zero)
            .ok_or_else(|| AmalgamError::InvalidWitness(format!("unknown object {}", j.zero)))?;
        let retraction = j
            .retraction
            .iter()
            .map(|l| c.morphism_index(l).ok_or_else(|| AmalgamError::InvalidWitness(format!("unknown morphism {l}"))))
            .collect::<Result<_, _>>()?;
        let target = FinMonoid::from_json(&j.target).map_err(|e| AmalgamError::InvalidWitness(e.to_string()))?;
        let poset = FinPoset::from_json(&j.poset).map_err(|e| AmalgamError::InvalidWitness(e.to_string()))?;
        let w = AmalgamWitness {
            zero,
            retraction,
            alpha: j.alpha.clone(),
            target,
            poset,
            beta: j.beta.clone(),
            beta_prime: j.beta_prime.clone(),
        };
        w.validate_shape(c)?;
        Ok(w)
    }
}

/// Witness with objects and morphisms named by label. `alpha` is indexed by
/// position in `Hom(zero, zero)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub zero: String,
    pub retraction: Vec<String>,
    pub alpha: Vec<usize>,
    pub target: MonoidJson,
    pub poset: PosetJson,
    pub beta: Vec<usize>,
    pub beta_prime: Vec<usize>,
}
