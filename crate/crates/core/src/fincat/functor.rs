use super::FinCategory;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("object map has {got} entries, source has {expected} objects")]
    ObjectMapLength { got: usize, expected: usize },
    #[error("morphism map has {got} entries, source has {expected} morphisms")]
    MorphismMapLength { got: usize, expected: usize },
    #[error("image {0} out of range")]
    OutOfRange(usize),
    #[error("morphism {0} is sent outside the hom-set between the images of its ends")]
    DomCodMismatch(usize),
    #[error("identity of object {0} is not preserved")]
    IdentityNotPreserved(usize),
    #[error("composite {g} ∘ {f} is not preserved")]
    CompositionNotPreserved { g: usize, f: usize },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

/// A verified functor between two finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCategory,
    pub target: FinCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, FunctorError> {
        if object_map.len() != source.num_objects() {
            return Err(FunctorError::ObjectMapLength { got: object_map.len(), expected: source.num_objects() });
        }
        if morphism_map.len() != source.num_morphisms() {
            return Err(FunctorError::MorphismMapLength { got: morphism_map.len(), expected: source.num_morphisms() });
        }
        if let Some(&x) = object_map.iter().find(|&&x| x >= target.num_objects()) {
            return Err(FunctorError::OutOfRange(x));
        }
        if let Some(&f) = morphism_map.iter().find(|&&f| f >= target.num_morphisms()) {
            return Err(FunctorError::OutOfRange(f));
        }
        for f in 0..source.num_morphisms() {
            let h = morphism_map[f];
            if target.dom(h) != object_map[source.dom(f)] || target.cod(h) != object_map[source.cod(f)] {
                return Err(FunctorError::DomCodMismatch(f));
            }
        }
        for x in 0..source.num_objects() {
            if morphism_map[source.id(x)] != target.id(object_map[x]) {
                return Err(FunctorError::IdentityNotPreserved(x));
            }
        }
        for f in 0..source.num_morphisms() {
            for &g in source.out_of(source.cod(f)) {
                if morphism_map[source.compose(g, f)] != target.compose(morphism_map[g], morphism_map[f]) {
                    return Err(FunctorError::CompositionNotPreserved { g, f });
                }
            }
        }
        Ok(Functor { source, target, object_map, morphism_map })
    }

    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            morphism_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor, FunctorError> {
        Functor::new(
            self.source.clone(),
            other.target.clone(),
            self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            self.morphism_map.iter().map(|&f| other.morphism_map[f]).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.object_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.morphism_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    pub fn to_json(&self) -> FunctorJson {
        FunctorJson {
            objects: (0..self.source.num_objects())
                .map(|x| (self.source.object_label(x).to_string(), self.target.object_label(self.object_map[x]).to_string()))
                .collect(),
            morphisms: (0..self.source.num_morphisms())
                .map(|f| (self.source.morphism(f).label.clone(), self.target.morphism(self.morphism_map[f]).label.clone()))
                .collect(),
        }
    }

    pub fn from_json(source: FinCategory, target: FinCategory, j: &FunctorJson) -> Result<Self, FunctorError> {
        let look = |m: &BTreeMap<String, String>, key: &str| {
            m.get(key).cloned().ok_or_else(|| FunctorError::UnknownLabel(key.to_string()))
        };
        let object_map = (0..source.num_objects())
            .map(|x| {
                let l = look(&j.objects, source.object_label(x))?;
                target.object_index(&l).ok_or(FunctorError::UnknownLabel(l))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let morphism_map = (0..source.num_morphisms())
            .map(|f| {
                let l = look(&j.morphisms, &source.morphism(f).label)?;
                target.morphism_index(&l).ok_or(FunctorError::UnknownLabel(l))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Functor::new(source, target, object_map, morphism_map)
    }
}

/// Functor wire form: label-to-label maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// Sizes of one hom-set, its image, and the target hom-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub dom: usize,
    pub cod: usize,
    pub source_count: usize,
    pub image_count: usize,
    pub target_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorProperties {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    pub is_equivalence: bool,
    pub bijective_on_objects: bool,
    /// First hom-set on which the functor is not injective.
    pub faithful_witness: Option<HomWitness>,
    /// First hom-set on which the functor is not surjective.
    pub full_witness: Option<HomWitness>,
    /// A target object isomorphic to no image object.
    pub missed_object: Option<usize>,
}

pub fn functor_properties(f: &Functor) -> FunctorProperties {
    let (s, t) = (&f.source, &f.target);
    let mut faithful_witness = None;
    let mut full_witness = None;
    for x in 0..s.num_objects() {
        for y in 0..s.num_objects() {
            let hs = s.hom(x, y);
            let image: HashSet<usize> = hs.iter().map(|&m| f.morphism_map[m]).collect();
            let w = HomWitness {
                dom: x,
                cod: y,
                source_count: hs.len(),
                image_count: image.len(),
                target_count: t.hom(f.object_map[x], f.object_map[y]).len(),
            };
            if faithful_witness.is_none() && w.image_count < w.source_count {
                faithful_witness = Some(w);
            }
            if full_witness.is_none() && w.image_count < w.target_count {
                full_witness = Some(w);
            }
        }
    }
    let classes = t.iso_classes();
    let hit: HashSet<usize> = f.object_map.iter().map(|&y| classes[y]).collect();
    let missed_object = (0..t.num_objects()).find(|&y| !hit.contains(&classes[y]));
    let distinct: HashSet<usize> = f.object_map.iter().copied().collect();
    let (faithful, full, essentially_surjective) =
        (faithful_witness.is_none(), full_witness.is_none(), missed_object.is_none());
    FunctorProperties {
        faithful,
        full,
        essentially_surjective,
        is_equivalence: faithful && full && essentially_surjective,
        bijective_on_objects: distinct.len() == s.num_objects() && s.num_objects() == t.num_objects(),
        faithful_witness,
        full_witness,
        missed_object,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinMonoid, Morphism};
    use crate::poset::FinPoset;

    #[test]
    fn identity_is_equivalence() {
        let c = FinCategory::from_monoid(&FinMonoid::symmetric_group(3));
        let p = functor_properties(&Functor::identity(&c));
        assert!(p.is_equivalence && p.bijective_on_objects);
    }

    #[test]
    fn discrete_to_terminal() {
        let objects = vec!["a".to_string(), "b".to_string()];
        let ms = vec![
            Morphism { label: "1a".into(), dom: 0, cod: 0 },
            Morphism { label: "1b".into(), dom: 1, cod: 1 },
        ];
        let d = FinCategory::from_fn(objects, ms, vec![0, 1], |g, _| Some(g)).unwrap();
        let t = FinCategory::from_poset(&FinPoset::chain(1));
        let f = Functor::new(d, t, vec![0, 0], vec![0, 0]).unwrap();
        let p = functor_properties(&f);
        assert!(p.faithful && p.essentially_surjective);
        assert!(!p.full);
        assert!(!p.bijective_on_objects);
        let w = p.full_witness.unwrap();
        assert_eq!((w.source_count, w.target_count), (0, 1));
    }

    #[test]
    fn rejects_non_functor() {
        let c = FinCategory::from_monoid(&FinMonoid::symmetric_group(3));
        // Sending every morphism to one transposition breaks identities.
        assert!(matches!(
            Functor::new(c.clone(), c.clone(), vec![0], vec![1; 6]),
            Err(FunctorError::IdentityNotPreserved(0))
        ));
        let f = Functor::identity(&c);
        let j = f.to_json();
        assert_eq!(Functor::from_json(c.clone(), c, &j).unwrap(), f);
    }
}
