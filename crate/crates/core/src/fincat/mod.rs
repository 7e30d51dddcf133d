//! Finite categories given by explicit composition tables.

mod functor;
mod iso;
mod monoid;
mod preorder;
mod presheaf;

pub use functor::{functor_properties, Functor, FunctorError, FunctorJson, FunctorProperties, HomWitness};
pub use iso::{find_isomorphism, IsoCaps};
pub use monoid::{find_monoid_isomorphism, FinMonoid, MonoidError, MonoidJson};
pub use preorder::{check_retraction, hom_preorder, HomPreorder, RetractionError};
pub use presheaf::{category_of_elements, Presheaf, PresheafError};

use crate::poset::FinPoset;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("object {0} has {1} identities listed")]
    IdentityCount(usize, usize),
    #[error("identity of object {0} is not an endomorphism of it")]
    IdentityNotEndo(usize),
    #[error("identity law fails for morphism {f} against identity {id}")]
    IdentityViolation { f: usize, id: usize },
    #[error("composite {g} ∘ {f} given for a non-composable pair")]
    DanglingComposite { g: usize, f: usize },
    #[error("composite {g} ∘ {f} missing")]
    MissingComposite { g: usize, f: usize },
    #[error("composite {g} ∘ {f} listed twice with different values")]
    ConflictingComposite { g: usize, f: usize },
    #[error("composite {g} ∘ {f} = {h} has the wrong domain or codomain")]
    CompositeTypeMismatch { g: usize, f: usize, h: usize },
    #[error("composition is not associative at ({h}, {g}, {f})")]
    AssociativityViolation { h: usize, g: usize, f: usize },
    #[error("{what} search exceeded its cap of {cap}")]
    SearchCapExceeded { what: &'static str, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub label: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. Morphisms and objects are dense indices; every value of
/// this type has passed the identity and associativity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    out: Vec<Vec<usize>>,
    pos_out: Vec<usize>,
    hom: Vec<Vec<usize>>,
    // comp[f][pos_out[g]] = g ∘ f
    comp: Vec<Vec<u32>>,
    inverse: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakInitial {
    pub objects: Vec<usize>,
    /// All listed objects are pairwise isomorphic (vacuous when fewer than two).
    pub unique_up_to_iso: bool,
}

impl FinCategory {
    /// Builds a category from its morphisms and a composition function
    /// `compose(g, f) = g ∘ f`, called once for every composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        check_unique(&objects)?;
        check_unique(morphisms.iter().map(|m| &m.label))?;
        if identities.len() != n {
            return Err(CategoryError::IdentityCount(identities.len().min(n), identities.len()));
        }
        for m in &morphisms {
            for o in [m.dom, m.cod] {
                if o >= n {
                    return Err(CategoryError::UnknownLabel(format!("object #{o}")));
                }
            }
        }
        for (x, &id) in identities.iter().enumerate() {
            if id >= morphisms.len() || morphisms[id].dom != x || morphisms[id].cod != x {
                return Err(CategoryError::IdentityNotEndo(x));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut pos_out = vec![0; morphisms.len()];
        let mut hom = vec![Vec::new(); n * n];
        for (f, m) in morphisms.iter().enumerate() {
            pos_out[f] = out[m.dom].len();
            out[m.dom].push(f);
            hom[m.dom * n + m.cod].push(f);
        }
        let mut comp = Vec::with_capacity(morphisms.len());
        for (f, m) in morphisms.iter().enumerate() {
            let mut row = Vec::with_capacity(out[m.cod].len());
            for &g in &out[m.cod] {
                let h = compose(g, f).ok_or(CategoryError::MissingComposite { g, f })?;
                if h >= morphisms.len() || morphisms[h].dom != m.dom || morphisms[h].cod != morphisms[g].cod {
                    return Err(CategoryError::CompositeTypeMismatch { g, f, h });
                }
                row.push(h as u32);
            }
            comp.push(row);
        }
        let mut c = FinCategory { objects, morphisms, identities, out, pos_out, hom, comp, inverse: Vec::new() };
        c.check_laws()?;
        c.inverse = (0..c.morphisms.len()).map(|f| c.find_inverse(f)).collect();
        Ok(c)
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        for (f, m) in self.morphisms.iter().enumerate() {
            let (i, j) = (self.identities[m.dom], self.identities[m.cod]);
            if self.compose(f, i) != f {
                return Err(CategoryError::IdentityViolation { f, id: i });
            }
            if self.compose(j, f) != f {
                return Err(CategoryError::IdentityViolation { f, id: j });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.out[self.cod(f)] {
                let gf = self.compose(g, f);
                for &h in &self.out[self.cod(g)] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(CategoryError::AssociativityViolation { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }

    fn find_inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identities[x] && self.compose(f, g) == self.identities[y])
    }

    /// The category with one object per element and a morphism `x → y` iff `x ≤ y`.
    pub fn from_poset(p: &FinPoset) -> Self {
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for x in 0..p.len() {
            for y in p.above(x) {
                index.insert((x, y), morphisms.len());
                morphisms.push(Morphism { label: format!("{}≤{}", p.label(x), p.label(y)), dom: x, cod: y });
            }
        }
        let identities = (0..p.len()).map(|x| index[&(x, x)]).collect();
        let ms = morphisms.clone();
        Self::from_fn(p.labels().to_vec(), morphisms, identities, |g, f| index.get(&(ms[f].dom, ms[g].cod)).copied())
            .expect("posets are categories")
    }

    /// The one-object category of a monoid, composition `g ∘ f = g·f`.
    pub fn from_monoid(m: &FinMonoid) -> Self {
        let morphisms = (0..m.len()).map(|a| Morphism { label: m.label(a).to_string(), dom: 0, cod: 0 }).collect();
        Self::from_fn(vec!["*".into()], morphisms, vec![m.unit()], |g, f| Some(m.mul(g, f))).expect("monoids are categories")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    #[inline]
    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    #[inline]
    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn id(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.num_objects() + y]
    }

    /// Morphisms with domain `x`.
    pub fn out_of(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    /// `g ∘ f`; panics unless `cod f = dom g`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.cod(f), self.dom(g), "composing non-composable morphisms {g} ∘ {f}");
        self.comp[f][self.pos_out[g]] as usize
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        (self.cod(f) == self.dom(g)).then(|| self.comp[f][self.pos_out[g]] as usize)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    /// Some isomorphism `x → y`, if any.
    pub fn isomorphism(&self, x: usize, y: usize) -> Option<usize> {
        self.hom(x, y).iter().copied().find(|&f| self.is_iso(f))
    }

    /// For each object, the least-indexed object isomorphic to it.
    pub fn iso_classes(&self) -> Vec<usize> {
        (0..self.num_objects()).map(|x| (0..=x).find(|&y| self.isomorphism(y, x).is_some()).unwrap()).collect()
    }

    pub fn weak_initial_objects(&self) -> WeakInitial {
        let n = self.num_objects();
        let objects: Vec<usize> = (0..n).filter(|&z| (0..n).all(|x| !self.hom(z, x).is_empty())).collect();
        let unique_up_to_iso = objects.iter().all(|&a| self.isomorphism(objects[0], a).is_some());
        WeakInitial { objects, unique_up_to_iso }
    }

    pub fn weak_terminal_objects(&self) -> Vec<usize> {
        let n = self.num_objects();
        (0..n).filter(|&z| (0..n).all(|x| !self.hom(x, z).is_empty())).collect()
    }

    /// `Hom(x, x)` as a monoid with `a·b = a ∘ b`, together with the morphism
    /// index of each monoid element.
    pub fn endo_monoid(&self, x: usize) -> (FinMonoid, Vec<usize>) {
        let elems = self.hom(x, x).to_vec();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let labels = elems.iter().map(|&f| self.morphisms[f].label.clone()).collect();
        let unit = pos[&self.identities[x]];
        let m = FinMonoid::from_fn(labels, unit, |a, b| pos[&self.compose(elems[a], elems[b])])
            .expect("endomorphisms form a monoid");
        (m, elems)
    }

    /// `g ∘ f = g ∘ f′` implies `f = f′`; returns a violating `(g, f, f′)` otherwise.
    pub fn left_cancellation_failure(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.num_objects() {
            for y in 0..self.num_objects() {
                let hs = self.hom(x, y);
                for &g in self.out_of(y) {
                    let mut seen = HashMap::new();
                    for &f in hs {
                        if let Some(&f2) = seen.get(&self.compose(g, f)) {
                            return Some((g, f2, f));
                        }
                        seen.insert(self.compose(g, f), f);
                    }
                }
            }
        }
        None
    }

    pub fn opposite(&self) -> Self {
        let morphisms =
            self.morphisms.iter().map(|m| Morphism { label: m.label.clone(), dom: m.cod, cod: m.dom }).collect();
        Self::from_fn(self.objects.clone(), morphisms, self.identities.clone(), |g, f| Some(self.compose(f, g)))
            .expect("opposite of a category")
    }

    /// The subcategory on `objects` (in the given order) with the morphisms
    /// between them accepted by `keep`; identities are always kept. Returns the
    /// subcategory and, for each of its morphisms, the original index.
    pub fn subcategory(
        &self,
        objects: &[usize],
        keep: impl Fn(usize) -> bool,
    ) -> Result<(FinCategory, Vec<usize>), CategoryError> {
        let opos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut orig = Vec::new();
        let mut morphisms = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if let (Some(&d), Some(&c)) = (opos.get(&m.dom), opos.get(&m.cod)) {
                if self.is_identity(f) || keep(f) {
                    orig.push(f);
                    morphisms.push(Morphism { label: m.label.clone(), dom: d, cod: c });
                }
            }
        }
        let mpos: HashMap<usize, usize> = orig.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let identities = objects.iter().map(|&x| mpos[&self.identities[x]]).collect();
        let labels = objects.iter().map(|&x| self.objects[x].clone()).collect();
        let sub = Self::from_fn(labels, morphisms, identities, |g, f| mpos.get(&self.compose(orig[g], orig[f])).copied())?;
        Ok((sub, orig))
    }

    /// Hom-set sizes, row = source object.
    pub fn hom_counts(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        (0..n).map(|x| (0..n).map(|y| self.hom(x, y).len()).collect()).collect()
    }

    pub fn to_json(&self) -> CategoryJson {
        let mut comp = Vec::new();
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.cod(f)] {
                let h = self.compose(g, f);
                let l = |i: usize| self.morphisms[i].label.clone();
                comp.push([l(g), l(f), l(h)]);
            }
        }
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismJson {
                    id: m.label.clone(),
                    dom: self.objects[m.dom].clone(),
                    cod: self.objects[m.cod].clone(),
                })
                .collect(),
            identities: self.identities.iter().map(|&i| self.morphisms[i].label.clone()).collect(),
            comp,
        }
    }

    /// Graph of objects with one edge per nonempty hom-set between distinct
    /// objects, labelled by its size.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for (i, o) in self.objects.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{o}\"];\n"));
        }
        for x in 0..self.num_objects() {
            for y in 0..self.num_objects() {
                let k = self.hom(x, y).len();
                if k > 0 && (x != y || k > 1) {
                    s.push_str(&format!("  n{x} -> n{y} [label=\"{k}\"];\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn check_unique<'a>(labels: impl IntoIterator<Item = &'a String>) -> Result<(), CategoryError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(CategoryError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// Wire form; `comp` entries are `[g, f, g∘f]` by morphism id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: Vec<String>,
    pub comp: Vec<[String; 3]>,
}

/// Validates a raw category table.
pub fn validate_category(raw: &CategoryJson) -> Result<FinCategory, CategoryError> {
    check_unique(&raw.objects)?;
    let obj = |l: &str| raw.objects.iter().position(|o| o == l).ok_or_else(|| CategoryError::UnknownLabel(l.into()));
    let mut morphisms = Vec::new();
    for m in &raw.morphisms {
        morphisms.push(Morphism { label: m.id.clone(), dom: obj(&m.dom)?, cod: obj(&m.cod)? });
    }
    check_unique(morphisms.iter().map(|m| &m.label))?;
    let mor: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.label.as_str(), i)).collect();
    let find = |l: &str| mor.get(l).copied().ok_or_else(|| CategoryError::UnknownLabel(l.into()));
    if raw.identities.len() != raw.objects.len() {
        return Err(CategoryError::IdentityCount(raw.objects.len(), raw.identities.len()));
    }
    let identities = raw.identities.iter().map(|l| find(l)).collect::<Result<Vec<_>, _>>()?;
    let mut table = HashMap::new();
    for [g, f, h] in &raw.comp {
        let (g, f, h) = (find(g)?, find(f)?, find(h)?);
        if morphisms[f].cod != morphisms[g].dom {
            return Err(CategoryError::DanglingComposite { g, f });
        }
        if let Some(old) = table.insert((g, f), h) {
            if old != h {
                return Err(CategoryError::ConflictingComposite { g, f });
            }
        }
    }
    FinCategory::from_fn(raw.objects.clone(), morphisms, identities, |g, f| table.get(&(g, f)).copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_terminal() -> CategoryJson {
        CategoryJson {
            objects: vec!["x".into()],
            morphisms: vec![MorphismJson { id: "1".into(), dom: "x".into(), cod: "x".into() }],
            identities: vec!["1".into()],
            comp: vec![["1".into(), "1".into(), "1".into()]],
        }
    }

    #[test]
    fn terminal_category() {
        let c = validate_category(&raw_terminal()).unwrap();
        assert_eq!(c.num_morphisms(), 1);
        assert_eq!(c.weak_initial_objects().objects, vec![0]);
        assert_eq!(validate_category(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn dangling_and_missing() {
        let mut raw = raw_terminal();
        raw.objects.push("y".into());
        raw.morphisms.push(MorphismJson { id: "1y".into(), dom: "y".into(), cod: "y".into() });
        raw.identities.push("1y".into());
        raw.comp.push(["1y".into(), "1y".into(), "1y".into()]);
        let ok = validate_category(&raw).unwrap();
        assert!(ok.weak_initial_objects().objects.is_empty());
        let mut bad = raw.clone();
        bad.comp.push(["1y".into(), "1".into(), "1".into()]);
        assert!(matches!(validate_category(&bad), Err(CategoryError::DanglingComposite { .. })));
        let mut missing = raw;
        missing.comp.pop();
        assert!(matches!(validate_category(&missing), Err(CategoryError::MissingComposite { .. })));
    }

    #[test]
    fn non_associative_monoid_table() {
        // One object, morphisms 1, a, b with a∘a = b, a∘b = a, b∘a = 1, b∘b = b.
        let labels = ["1", "a", "b"];
        let table = [[0, 1, 2], [1, 2, 1], [2, 0, 2]];
        let raw = CategoryJson {
            objects: vec!["*".into()],
            morphisms: labels.iter().map(|l| MorphismJson { id: l.to_string(), dom: "*".into(), cod: "*".into() }).collect(),
            identities: vec!["1".into()],
            comp: (0..3)
                .flat_map(|g| (0..3).map(move |f| [labels[g].to_string(), labels[f].to_string(), labels[table[g][f]].to_string()]))
                .collect(),
        };
        assert!(matches!(validate_category(&raw), Err(CategoryError::AssociativityViolation { .. })));
    }

    #[test]
    fn poset_and_monoid_categories() {
        let c = FinCategory::from_poset(&FinPoset::chain(3));
        assert_eq!(c.num_morphisms(), 6);
        assert!((0..3).all(|x| c.endo_monoid(x).0.len() == 1));
        assert_eq!(c.weak_initial_objects().objects, vec![0]);
        assert_eq!(c.weak_terminal_objects(), vec![2]);
        let s3 = FinCategory::from_monoid(&FinMonoid::symmetric_group(3));
        assert!((0..6).all(|f| s3.is_iso(f)));
        assert!(s3.left_cancellation_failure().is_none());
        let op = s3.opposite();
        assert_eq!(op.compose(1, 2), s3.compose(2, 1));
    }

    #[test]
    fn subcategory_of_isos() {
        let c = FinCategory::from_monoid(&FinMonoid::full_transformation(2));
        let (g, orig) = c.subcategory(&[0], |f| c.is_iso(f)).unwrap();
        assert_eq!(g.num_morphisms(), 2);
        assert_eq!(orig.len(), 2);
    }
}
