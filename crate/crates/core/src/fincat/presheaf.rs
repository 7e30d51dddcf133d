use super::{FinCategory, Functor, Morphism};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("restriction along morphism {0} has the wrong shape or range")]
    BadRestriction(usize),
    #[error("restriction along the identity of object {0} is not the identity")]
    IdentityViolation(usize),
    #[error("restriction is not contravariant at {g} ∘ {f}")]
    CompositionViolation { g: usize, f: usize },
}

/// A set-valued contravariant functor on a finite category. Each `P(x)` is
/// `0..sizes[x]`; `restriction[f]` for `f: x → y` maps `P(y) → P(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    pub base: FinCategory,
    pub sizes: Vec<usize>,
    pub restriction: Vec<Vec<usize>>,
    /// Optional display labels for elements, per object.
    pub labels: Option<Vec<Vec<String>>>,
}

impl Presheaf {
    pub fn new(base: FinCategory, sizes: Vec<usize>, restriction: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        if sizes.len() != base.num_objects() {
            return Err(PresheafError::Length { expected: base.num_objects(), got: sizes.len() });
        }
        if restriction.len() != base.num_morphisms() {
            return Err(PresheafError::Length { expected: base.num_morphisms(), got: restriction.len() });
        }
        for (f, r) in restriction.iter().enumerate() {
            if r.len() != sizes[base.cod(f)] || r.iter().any(|&a| a >= sizes[base.dom(f)]) {
                return Err(PresheafError::BadRestriction(f));
            }
        }
        for x in 0..base.num_objects() {
            if restriction[base.id(x)].iter().enumerate().any(|(i, &a)| i != a) {
                return Err(PresheafError::IdentityViolation(x));
            }
        }
        for f in 0..base.num_morphisms() {
            for &g in base.out_of(base.cod(f)) {
                let gf = base.compose(g, f);
                // P(g∘f) = P(f) ∘ P(g)
                if (0..sizes[base.cod(g)]).any(|z| restriction[gf][z] != restriction[f][restriction[g][z]]) {
                    return Err(PresheafError::CompositionViolation { g, f });
                }
            }
        }
        Ok(Presheaf { base, sizes, restriction, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        assert!(labels.iter().zip(&self.sizes).all(|(l, &s)| l.len() == s));
        self.labels = Some(labels);
        self
    }

    /// Every `P(x)` a singleton.
    pub fn terminal(base: FinCategory) -> Self {
        let sizes = vec![1; base.num_objects()];
        let restriction = vec![vec![0]; base.num_morphisms()];
        Self::new(base, sizes, restriction).expect("terminal presheaf")
    }

    pub fn empty(base: FinCategory) -> Self {
        let sizes = vec![0; base.num_objects()];
        let restriction = vec![Vec::new(); base.num_morphisms()];
        Self::new(base, sizes, restriction).expect("empty presheaf")
    }

    fn element_label(&self, x: usize, a: usize) -> String {
        match &self.labels {
            Some(l) => format!("({}, {})", self.base.object_label(x), l[x][a]),
            None => format!("({}, {a})", self.base.object_label(x)),
        }
    }
}

/// The category of elements: objects `(x, a)` with `a ∈ P(x)`, morphisms
/// `f: (x, a) → (y, b)` for `f: x → y` with `a = P(f)(b)`. Returns the
/// category, the projection functor to the base, and the `(x, a)` pair of each
/// object.
pub fn category_of_elements(p: &Presheaf) -> (FinCategory, Functor, Vec<(usize, usize)>) {
    let c = &p.base;
    let mut elems = Vec::new();
    let mut index = vec![Vec::new(); c.num_objects()];
    for x in 0..c.num_objects() {
        for a in 0..p.sizes[x] {
            index[x].push(elems.len());
            elems.push((x, a));
        }
    }
    let mut morphisms = Vec::new();
    let mut base_of = Vec::new();
    // by_base[f][b] = morphism over f with codomain (cod f, b)
    let mut by_base = vec![Vec::new(); c.num_morphisms()];
    for f in 0..c.num_morphisms() {
        let (x, y) = (c.dom(f), c.cod(f));
        for b in 0..p.sizes[y] {
            let a = p.restriction[f][b];
            by_base[f].push(morphisms.len());
            base_of.push(f);
            morphisms.push(Morphism {
                label: format!("{}@{}", c.morphism(f).label, p.element_label(y, b)),
                dom: index[x][a],
                cod: index[y][b],
            });
        }
    }
    let identities = elems.iter().map(|&(x, a)| by_base[c.id(x)][a]).collect();
    let labels = elems.iter().map(|&(x, a)| p.element_label(x, a)).collect();
    let ms = morphisms.clone();
    let cat = FinCategory::from_fn(labels, ms, identities, |g, f| {
        let (bg, bf) = (base_of[g], base_of[f]);
        let h = c.compose(bg, bf);
        let (_, b) = elems[morphisms[g].cod];
        Some(by_base[h][b])
    })
    .expect("category of elements");
    let object_map = elems.iter().map(|&(x, _)| x).collect();
    let proj = Functor::new(cat.clone(), c.clone(), object_map, base_of).expect("projection is a functor");
    (cat, proj, elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{find_isomorphism, FinMonoid, IsoCaps};
    use crate::poset::FinPoset;

    #[test]
    fn terminal_presheaf_recovers_base() {
        let base = FinCategory::from_poset(&FinPoset::boolean(2));
        let (cat, proj, _) = category_of_elements(&Presheaf::terminal(base.clone()));
        assert!(find_isomorphism(&cat, &base, IsoCaps::default()).unwrap().is_some());
        assert_eq!(proj.object_map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_presheaf() {
        let base = FinCategory::from_poset(&FinPoset::chain(2));
        let (cat, _, _) = category_of_elements(&Presheaf::empty(base));
        assert_eq!(cat.num_objects(), 0);
    }

    #[test]
    fn regular_representation() {
        // S(3) acting on itself by right multiplication: its category of elements is the
        // action groupoid with 6 objects, each pair joined by exactly one morphism.
        let s3 = FinMonoid::symmetric_group(3);
        let base = FinCategory::from_monoid(&s3);
        let restriction = (0..6).map(|g| (0..6).map(|b| s3.mul(b, g)).collect()).collect();
        let p = Presheaf::new(base, vec![6], restriction).unwrap();
        let (cat, _, _) = category_of_elements(&p);
        assert_eq!(cat.num_objects(), 6);
        assert!(cat.hom_counts().iter().flatten().all(|&k| k == 1));
    }

    #[test]
    fn rejects_covariant_data() {
        // Left multiplication on a non-abelian group is covariant, not contravariant.
        let s3 = FinMonoid::symmetric_group(3);
        let base = FinCategory::from_monoid(&s3);
        let restriction = (0..6).map(|g| (0..6).map(|b| s3.mul(g, b)).collect()).collect();
        assert!(matches!(Presheaf::new(base, vec![6], restriction), Err(PresheafError::CompositionViolation { .. })));
    }
}
