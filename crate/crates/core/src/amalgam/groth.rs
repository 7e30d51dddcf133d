use super::action::{check_action, ActionSide, MonoidAction};
use super::witness::AmalgamWitness;
use crate::fincat::{CategoryError, FinCategory, FinMonoid, Morphism};
use crate::poset::FinPoset;
use serde::Serialize;
use std::collections::HashMap;

/// How a composite is labelled: for `m: p → q` followed by `n: q → r`, the
/// composite `p → r` carries `m·n` (`MulForward`) or `n·m` (`MulBackward`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    MulForward,
    MulBackward,
}

impl Convention {
    pub fn mirrored(self) -> Self {
        match self {
            Convention::MulForward => Convention::MulBackward,
            Convention::MulBackward => Convention::MulForward,
        }
    }
}

/// The category `P ⋊ M`, with the `(m, p, q)` triple behind each morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grothendieck {
    pub category: FinCategory,
    pub triples: Vec<(usize, usize, usize)>,
    pub convention: Convention,
    /// The first convention tried failed the category laws.
    pub mirrored: bool,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Grothendieck {
    /// Morphism index of `m: p → q`, if `p ≤ m·q`.
    pub fn morphism(&self, m: usize, p: usize, q: usize) -> Option<usize> {
        self.index.get(&(m, p, q)).copied()
    }

    pub fn label(&self, f: usize) -> usize {
        self.triples[f].0
    }
}

/// Builds the category with objects the elements of `poset` and morphisms
/// `m: p → q` whenever `p ≤ table(m, q)`, composing labels per `convention`.
/// The table need not be an action; the category laws are verified.
pub fn grothendieck_from_table(
    monoid: &FinMonoid,
    poset: &FinPoset,
    act: impl Fn(usize, usize) -> usize,
    convention: Convention,
) -> Result<Grothendieck, CategoryError> {
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    for p in 0..poset.len() {
        for q in 0..poset.len() {
            for m in 0..monoid.len() {
                if poset.leq(p, act(m, q)) {
                    index.insert((m, p, q), triples.len());
                    triples.push((m, p, q));
                }
            }
        }
    }
    let morphisms = triples
        .iter()
        .map(|&(m, p, q)| Morphism {
            label: format!("{}:{}→{}", monoid.label(m), poset.label(p), poset.label(q)),
            dom: p,
            cod: q,
        })
        .collect();
    let identities = (0..poset.len()).map(|p| index[&(monoid.unit(), p, p)]).collect::<Vec<_>>();
    let category = FinCategory::from_fn(poset.labels().to_vec(), morphisms, identities, |g, f| {
        let (n, q, r) = triples[g];
        let (m, p, q2) = triples[f];
        debug_assert_eq!(q, q2);
        let k = match convention {
            Convention::MulForward => monoid.mul(m, n),
            Convention::MulBackward => monoid.mul(n, m),
        };
        index.get(&(k, p, r)).copied()
    })?;
    Ok(Grothendieck { category, triples, convention, mirrored: false, index })
}

/// `P ⋊ M` for an action. Left actions compose as `m·n`, right actions as
/// `n·m`; if the laws fail the mirrored convention is tried and recorded.
pub fn grothendieck(a: &MonoidAction) -> Result<Grothendieck, CategoryError> {
    let first = match check_action(a).side {
        Some(ActionSide::Right) => Convention::MulBackward,
        _ => Convention::MulForward,
    };
    match grothendieck_from_table(&a.monoid, &a.poset, |m, p| a.act(m, p), first) {
        Ok(g) => Ok(g),
        Err(e) => {
            let mut g = grothendieck_from_table(&a.monoid, &a.poset, |m, p| a.act(m, p), first.mirrored())
                .map_err(|_| e)?;
            g.mirrored = true;
            Ok(g)
        }
    }
}

/// The witness read off the construction: `0` the least element, `F` keeps
/// the label and moves it to `0 → 0`, `α` is the label, `β` and `β′` are
/// identities. `G` is `M` under `MulForward` and `Mᵒᵖ` otherwise.
pub fn canonical_witness(g: &Grothendieck, monoid: &FinMonoid, poset: &FinPoset) -> Option<AmalgamWitness> {
    let zero = poset.least()?;
    let c = &g.category;
    let retraction = g.triples.iter().map(|&(m, _, _)| g.morphism(m, zero, zero).unwrap()).collect();
    let alpha = c.hom(zero, zero).iter().map(|&f| g.label(f)).collect();
    let target = match g.convention {
        Convention::MulForward => monoid.clone(),
        Convention::MulBackward => monoid.opposite(),
    };
    let ids: Vec<usize> = (0..poset.len()).collect();
    Some(AmalgamWitness {
        zero,
        retraction,
        alpha,
        target,
        poset: poset.clone(),
        beta: ids.clone(),
        beta_prime: ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::action::{permutation_action_on_pn, pullback_action_on_pn};
    use crate::partition::build_partition_lattice;

    #[test]
    fn s2_on_p2() {
        let a = permutation_action_on_pn(2).unwrap();
        let g = grothendieck(&a).unwrap();
        assert_eq!(g.category.num_objects(), 2);
        assert_eq!(g.category.num_morphisms(), 6);
        assert_eq!(g.category.hom_counts(), vec![vec![2, 2], vec![0, 2]]);
    }

    #[test]
    fn trivial_monoid_gives_poset() {
        let p = build_partition_lattice(2).unwrap().lattice.poset().clone();
        let a = MonoidAction::from_fn(FinMonoid::trivial(), p.clone(), |_, x| x).unwrap();
        let g = grothendieck(&a).unwrap();
        assert_eq!(g.category.num_morphisms(), 3);
    }

    #[test]
    fn pullback_uses_backward_convention() {
        let a = pullback_action_on_pn(3).unwrap();
        let g = grothendieck(&a).unwrap();
        assert_eq!(g.convention, Convention::MulBackward);
        assert!(!g.mirrored);
        let w = canonical_witness(&g, &a.monoid, &a.poset).unwrap();
        assert_eq!(w.alpha.len(), 27);
    }
}
