use super::{full_algebra, inclusion, InvSemiError, InvSemigroup, TElement};
use crate::cstar::{build_cinj, build_csub, hom_set, CstarFlags, CstarHom, Subalg};
use crate::fincat::{
    category_of_elements, find_isomorphism, functor_properties, FinCategory, Functor, FunctorProperties, IsoCaps, Morphism,
    Presheaf,
};
use crate::poset::{are_isomorphic, FinPoset};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, Serialize)]
pub struct DerivedStructures {
    /// Nonzero idempotents, as element indices of `T`.
    pub idempotents: Vec<usize>,
    #[serde(skip)]
    pub e: FinPoset,
    #[serde(skip)]
    pub g: FinCategory,
    #[serde(skip)]
    pub l: FinCategory,
    pub e_size: usize,
    pub g_morphisms: usize,
    pub l_morphisms: usize,
    /// Elements violating `i*i = (dom i ↪ A)` or `ii* = (im i ↪ A)`.
    pub domain_image_failures: Vec<usize>,
    /// Every nonzero idempotent is the inclusion of its domain, and every inclusion is idempotent.
    pub idempotents_are_inclusions: bool,
    /// Order isomorphism `E(T) → C_⊆`, by idempotent position.
    pub e_iso: Vec<usize>,
    /// Object and morphism maps `G(T) → C_≅` and `L(T) → C_→`.
    pub g_iso: (Vec<usize>, Vec<usize>),
    pub l_iso: (Vec<usize>, Vec<usize>),
}

/// `e → f` is an element `t` with `e = t*t` and either `tt* = f` (groupoid)
/// or `t = ft` (left-cancellative category).
fn idempotent_category(t: &InvSemigroup, idem: &[usize], groupoid: bool) -> FinCategory {
    let pos: HashMap<usize, usize> = idem.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let (m, s) = (&t.mul, &t.star);
    let mut morphisms = Vec::new();
    let mut elem = Vec::new();
    for x in t.nonzero() {
        let Some(&e) = pos.get(&m[s[x]][x]) else { continue };
        for (fi, &f) in idem.iter().enumerate() {
            let ok = if groupoid { m[x][s[x]] == f } else { m[f][x] == x };
            if ok {
                morphisms.push(Morphism {
                    label: format!("{}:{}→{}", t.elements[x].label(), t.elements[idem[e]].label(), t.elements[f].label()),
                    dom: e,
                    cod: fi,
                });
                elem.push(x);
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        morphisms.iter().zip(&elem).enumerate().map(|(i, (mo, &x))| ((x, mo.dom, mo.cod), i)).collect();
    let identities = (0..idem.len()).map(|i| index[&(idem[i], i, i)]).collect();
    let labels = idem.iter().map(|&e| t.elements[e].label()).collect();
    let ms = morphisms.clone();
    FinCategory::from_fn(labels, ms, identities, |g, f| {
        index.get(&(m[elem[g]][elem[f]], morphisms[f].dom, morphisms[g].cod)).copied()
    })
    .expect("idempotent category")
}

/// Builds E(T), G(T), L(T) from `build_t(n)` and matches them against the
/// subalgebra models.
pub fn derived_structures(t: &InvSemigroup) -> Result<DerivedStructures, InvSemiError> {
    let n = t.n;
    let (m, s) = (&t.mul, &t.star);
    let idem: Vec<usize> = t.nonzero().filter(|&x| t.is_idempotent(x)).collect();
    let labels = idem.iter().map(|&e| t.elements[e].label()).collect();
    let e_poset = FinPoset::from_fn(labels, |i, j| m[idem[j]][idem[i]] == idem[i]).expect("natural order");
    let g = idempotent_category(t, &idem, true);
    let l = idempotent_category(t, &idem, false);

    let mut domain_image_failures = Vec::new();
    for x in t.nonzero() {
        let h = t.elements[x].hom().unwrap();
        let dom = TElement::Hom(inclusion(&h.src));
        let im = TElement::Hom(inclusion(&super::star_hom(h).src));
        if t.elements[m[s[x]][x]] != dom || t.elements[m[x][s[x]]] != im {
            domain_image_failures.push(x);
        }
    }
    let inclusions: Vec<usize> = t
        .nonzero()
        .filter(|&x| {
            let h = t.elements[x].hom().unwrap();
            *h == inclusion(&h.src)
        })
        .collect();
    let idempotents_are_inclusions = inclusions == idem;

    let csub = build_csub(n, false)?;
    let e_iso = are_isomorphic(&e_poset, &csub.poset).ok_or(InvSemiError::IsoNotFound("E(T) ≅ C_⊆"))?;
    let cinj = build_cinj(n, CstarFlags::GENERAL)?;
    let (l_f, _) = find_isomorphism(&l, &cinj.category, IsoCaps::default())?
        .ok_or(InvSemiError::IsoNotFound("L(T) ≅ C_→"))?;
    let objects: Vec<usize> = (0..cinj.objects.len()).collect();
    let (groupoid, _) = cinj.category.subcategory(&objects, |f| cinj.homs[f].is_iso())?;
    let (g_f, _) =
        find_isomorphism(&g, &groupoid, IsoCaps::default())?.ok_or(InvSemiError::IsoNotFound("G(T) ≅ C_≅"))?;
    Ok(DerivedStructures {
        e_size: e_poset.len(),
        g_morphisms: g.num_morphisms(),
        l_morphisms: l.num_morphisms(),
        idempotents: idem,
        e: e_poset,
        g,
        l,
        domain_image_failures,
        idempotents_are_inclusions,
        e_iso,
        g_iso: (g_f.object_map, g_f.morphism_map),
        l_iso: (l_f.object_map, l_f.morphism_map),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AutEquivalence {
    pub elements_objects: usize,
    pub csub_objects: usize,
    /// `C ↦ (C, id_C)`.
    pub f_properties: FunctorProperties,
    /// `(C, i) ↦ i(C)`.
    pub g_properties: FunctorProperties,
    /// `G ∘ F` is the identity functor.
    pub gf_identity: bool,
    /// Every object of the category of elements is isomorphic to its image under `F ∘ G`.
    pub fg_iso_to_identity: bool,
    #[serde(skip)]
    pub f: Option<Functor>,
    #[serde(skip)]
    pub g: Option<Functor>,
}

/// The presheaf `Aut(C) = {C ≅ C′}` on the injective category, realized as
/// `Hom(C, ℂⁿ)` with restriction by precomposition, its category of elements,
/// and the functor pair relating it to the inclusion poset.
pub fn aut_elements_equivalence(n: usize) -> Result<AutEquivalence, InvSemiError> {
    if n > super::INVSEMI_CAP {
        return Err(InvSemiError::CapExceeded { n, cap: super::INVSEMI_CAP });
    }
    let cinj = build_cinj(n, CstarFlags::GENERAL)?;
    let full = full_algebra(n);
    let aut: Vec<Vec<CstarHom>> = cinj.objects.iter().map(|c| hom_set(c, &full, false)).collect();
    let pos = |x: usize, h: &CstarHom| aut[x].iter().position(|g| g == h).unwrap();
    let c = &cinj.category;
    let restriction: Vec<Vec<usize>> = (0..c.num_morphisms())
        .map(|f| {
            let (x, y) = (c.dom(f), c.cod(f));
            aut[y].iter().map(|j| pos(x, &cinj.homs[f].then(j).unwrap())).collect()
        })
        .collect();
    let labels = aut.iter().map(|hs| hs.iter().map(|h| TElement::Hom(h.clone()).label()).collect()).collect();
    let presheaf = Presheaf::new(c.clone(), aut.iter().map(Vec::len).collect(), restriction)
        .expect("precomposition is contravariant")
        .with_labels(labels);
    let (elements, _proj, pairs) = category_of_elements(&presheaf);
    let csub = build_csub(n, false)?;
    let poset_cat = FinCategory::from_poset(&csub.poset);
    let csub_index = |s: &Subalg| csub.objects.iter().position(|o| o == s).unwrap();
    let element_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    // F: C ↦ (C, C ↪ A); C ⊆ C′ ↦ the inclusion hom.
    let f_obj: Vec<usize> = csub
        .objects
        .iter()
        .map(|s| {
            let x = cinj.object_index(s).unwrap();
            element_index[&(x, pos(x, &inclusion(s)))]
        })
        .collect();
    let f_mor: Vec<usize> = (0..poset_cat.num_morphisms())
        .map(|k| {
            let (a, b) = (poset_cat.dom(k), poset_cat.cod(k));
            let (ea, eb) = (f_obj[a], f_obj[b]);
            *elements.hom(ea, eb).first().expect("inclusions lift to the category of elements")
        })
        .collect();
    let f = Functor::new(poset_cat.clone(), elements.clone(), f_obj, f_mor).expect("F is a functor");

    // G: (C, i) ↦ i(C).
    let g_obj: Vec<usize> = pairs
        .iter()
        .map(|&(x, a)| csub_index(&super::star_hom(&aut[x][a]).src))
        .collect();
    let g_mor: Vec<usize> = (0..elements.num_morphisms())
        .map(|k| {
            let (a, b) = (g_obj[elements.dom(k)], g_obj[elements.cod(k)]);
            poset_cat.hom(a, b)[0]
        })
        .collect();
    let g = Functor::new(elements.clone(), poset_cat.clone(), g_obj, g_mor).expect("G is a functor");
    let gf_identity = f.then(&g).map(|h| h.is_identity()).unwrap_or(false);
    let fg = g.then(&f).expect("composable");
    let fg_iso_to_identity = (0..elements.num_objects()).all(|x| elements.isomorphism(x, fg.object_map[x]).is_some());
    Ok(AutEquivalence {
        elements_objects: elements.num_objects(),
        csub_objects: poset_cat.num_objects(),
        f_properties: functor_properties(&f),
        g_properties: functor_properties(&g),
        gf_identity,
        fg_iso_to_identity,
        f: Some(f),
        g: Some(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::build_t;

    #[test]
    fn derived_n2() {
        let t = build_t(2).unwrap();
        let d = derived_structures(&t).unwrap();
        assert_eq!(d.e_size, 4);
        assert_eq!(d.g_morphisms, 11);
        assert!(d.domain_image_failures.is_empty());
        assert!(d.idempotents_are_inclusions);
    }

    #[test]
    fn aut_n2() {
        let a = aut_elements_equivalence(2).unwrap();
        assert_eq!((a.elements_objects, a.csub_objects), (11, 4));
        assert!(a.f_properties.is_equivalence && a.g_properties.is_equivalence);
        assert!(a.gf_identity && a.fg_iso_to_identity);
    }

    #[test]
    fn aut_n1() {
        let a = aut_elements_equivalence(1).unwrap();
        assert_eq!((a.elements_objects, a.csub_objects), (1, 1));
    }
}
