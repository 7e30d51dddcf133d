use super::{build_cinj, CstarError, CstarFlags, CstarHom, Subalg};
use crate::amalgam::{grothendieck, permutation_action_on_pn};
use crate::fincat::{functor_properties, FinCategory, Functor, FunctorProperties, HomWitness};
use crate::partition::{enumerate_partitions, PointMap};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    /// How a permutation acts on vectors: `x∘π` or `x∘π⁻¹`.
    pub convention: &'static str,
    pub functorial: bool,
    pub object_bijective: bool,
    pub properties: Option<FunctorProperties>,
    /// A non-injective hom-set, endomorphism sets preferred.
    pub faithful_witness: Option<HomWitness>,
    pub full_witness: Option<HomWitness>,
    /// Source hom-set, its image and the target hom-set, for every object pair.
    pub hom_comparison: Vec<HomWitness>,
    pub source_labels: Vec<String>,
    pub source_hom_counts: Vec<Vec<usize>>,
    /// Hom counts of the target (the opposite of the injective category), in source object order.
    pub target_hom_counts: Vec<Vec<usize>>,
    #[serde(skip)]
    pub functor: Option<Functor>,
}

fn induced(pi: &PointMap, p: &Subalg, q: &Subalg, inverse: bool) -> Option<CstarHom> {
    let pi = if inverse { pi.inverse()? } else { pi.clone() };
    let qidx = q.0.block_index();
    let map = p
        .blocks()
        .iter()
        .map(|b| {
            let mut targets = b.iter().map(|&i| qidx[pi.apply(i)]);
            let first = targets.next().flatten();
            targets.all(|t| t == first).then_some(first).flatten()
        })
        .collect::<Option<Vec<usize>>>()?;
    CstarHom::new(q.clone(), p.clone(), map.into_iter().map(Some).collect()).ok()
}

/// Compares `P(n) ⋊ S(n)` with the opposite of the injective category on unital
/// subalgebras via `p ↦ C(p)` and `π ↦ (x ↦ x∘π)`, falling back to `x∘π⁻¹`
/// when the first reading is not a functor.
pub fn comparison_report(n: usize) -> Result<ComparisonReport, CstarError> {
    let action = permutation_action_on_pn(n).map_err(|e| match e {
        crate::amalgam::ActionError::Partition(p) => CstarError::Partition(p),
        _ => unreachable!("permutation action is well-formed"),
    })?;
    let source = grothendieck(&action).map_err(CstarError::Category)?;
    let cinj = build_cinj(n, CstarFlags::UNITAL)?;
    let target = cinj.category.opposite();
    let parts: Vec<Subalg> = enumerate_partitions(n, true)?.into_iter().map(Subalg).collect();
    let perms = PointMap::all_permutations(n);
    let object_map: Vec<usize> = parts.iter().map(|p| cinj.object_index(p).unwrap()).collect();
    let mut functor = None;
    let mut convention = "x∘π";
    for (inverse, name) in [(false, "x∘π"), (true, "x∘π⁻¹")] {
        let morphisms: Option<Vec<usize>> = source
            .triples
            .iter()
            .map(|&(m, p, q)| induced(&perms[m], &parts[p], &parts[q], inverse).and_then(|h| cinj.morphism_index(&h)))
            .collect();
        if let Some(mm) = morphisms {
            if let Ok(f) = Functor::new(source.category.clone(), target.clone(), object_map.clone(), mm) {
                functor = Some(f);
                convention = name;
                break;
            }
        }
    }
    let sc = &source.category;
    let k = sc.num_objects();
    let source_hom_counts = sc.hom_counts();
    let target_hom_counts =
        (0..k).map(|x| (0..k).map(|y| target.hom(object_map[x], object_map[y]).len()).collect()).collect();
    let distinct: HashSet<usize> = object_map.iter().copied().collect();
    let object_bijective = distinct.len() == k && k == target.num_objects();
    let (properties, hom_comparison, faithful_witness, full_witness) = match &functor {
        Some(f) => {
            let props = functor_properties(f);
            let cmp: Vec<HomWitness> = (0..k)
                .flat_map(|x| (0..k).map(move |y| (x, y)))
                .map(|(x, y)| {
                    let hs = sc.hom(x, y);
                    let image: HashSet<usize> = hs.iter().map(|&m| f.morphism_map[m]).collect();
                    HomWitness {
                        dom: x,
                        cod: y,
                        source_count: hs.len(),
                        image_count: image.len(),
                        target_count: target.hom(object_map[x], object_map[y]).len(),
                    }
                })
                .collect();
            let faithful = cmp
                .iter()
                .filter(|w| w.image_count < w.source_count)
                .min_by_key(|w| (w.dom != w.cod, w.dom, w.cod))
                .copied();
            let full = props.full_witness;
            (Some(props), cmp, faithful, full)
        }
        None => (None, Vec::new(), None, None),
    };
    Ok(ComparisonReport {
        n,
        convention,
        functorial: functor.is_some(),
        object_bijective,
        properties,
        faithful_witness,
        full_witness,
        hom_comparison,
        source_labels: sc.objects().to_vec(),
        source_hom_counts,
        target_hom_counts,
        functor,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakTerminal {
    pub object: usize,
    /// Objects admitting a morphism into `object`.
    pub subcategory_objects: Vec<usize>,
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakTerminalReport {
    pub objects: Vec<usize>,
    pub labels: Vec<String>,
    pub reductions: Vec<WeakTerminal>,
}

/// Weakly terminal objects, and for each the inclusion of the full
/// subcategory on objects mapping into it.
pub fn weak_terminal_report(c: &FinCategory) -> Result<WeakTerminalReport, CstarError> {
    let objects = c.weak_terminal_objects();
    let mut reductions = Vec::new();
    for &d in &objects {
        let sub: Vec<usize> = (0..c.num_objects()).filter(|&x| !c.hom(x, d).is_empty()).collect();
        let (s, orig) = c.subcategory(&sub, |_| true)?;
        let inclusion = Functor::new(s, c.clone(), sub.clone(), orig).expect("inclusion of a subcategory");
        let p = functor_properties(&inclusion);
        reductions.push(WeakTerminal {
            object: d,
            subcategory_objects: sub,
            faithful: p.faithful,
            full: p.full,
            essentially_surjective: p.essentially_surjective,
        });
    }
    let labels = objects.iter().map(|&x| c.object_label(x).to_string()).collect();
    Ok(WeakTerminalReport { objects, labels, reductions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Morphism;

    #[test]
    fn comparison_n2() {
        let r = comparison_report(2).unwrap();
        assert!(r.functorial && r.object_bijective);
        let p = r.properties.as_ref().unwrap();
        assert!(!p.faithful && !p.full && p.essentially_surjective);
        let fw = r.faithful_witness.unwrap();
        assert_eq!((fw.dom, fw.cod, fw.source_count, fw.target_count), (1, 1, 2, 1));
        let uw = r.full_witness.unwrap();
        assert_eq!((uw.dom, uw.cod, uw.image_count, uw.target_count), (0, 1, 1, 3));
    }

    #[test]
    fn comparison_n1() {
        let r = comparison_report(1).unwrap();
        assert!(r.properties.unwrap().is_equivalence);
    }

    #[test]
    fn weak_terminals() {
        let c3 = build_cinj(3, CstarFlags::UNITAL).unwrap();
        let r = weak_terminal_report(&c3.category).unwrap();
        assert_eq!(r.objects.len(), 1);
        assert_eq!(c3.objects[r.objects[0]].dim(), 3);
        assert!(r.reductions[0].full && r.reductions[0].faithful && r.reductions[0].essentially_surjective);
        let c2 = build_cinj(2, CstarFlags::GENERAL).unwrap();
        let r = weak_terminal_report(&c2.category).unwrap();
        assert_eq!(r.labels, vec!["1|2".to_string()]);
        let ms = vec![Morphism { label: "a".into(), dom: 0, cod: 0 }, Morphism { label: "b".into(), dom: 1, cod: 1 }];
        let d = FinCategory::from_fn(vec!["a".into(), "b".into()], ms, vec![0, 1], |g, _| Some(g)).unwrap();
        assert!(weak_terminal_report(&d).unwrap().objects.is_empty());
    }
}
