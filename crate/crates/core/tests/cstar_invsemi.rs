mod common;

use common::*;
use csub::cstar::{
    build_cinj, build_csub, comparison_report, direct_image, enumerate_subalgebras, weak_terminal_report, CstarFlags,
    CstarHom, PartialMap, Subalg,
};
use csub::invsemi::{build_t, product, star_hom, TElement};
use csub::partition::build_partition_lattice;
use csub::poset::are_isomorphic;
use std::collections::BTreeSet;

/// Projections of `c`: sums of block indicators, as 0/1 vectors.
fn projections(c: &Subalg) -> Vec<Vec<u8>> {
    let n = c.n();
    (0u32..1 << c.dim())
        .map(|mask| {
            let mut v = vec![0u8; n];
            for (b, blk) in c.blocks().iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for &x in blk {
                        v[x - 1] = 1;
                    }
                }
            }
            v
        })
        .collect()
}

/// `i` applied to a vector of its source algebra.
fn apply(i: &CstarHom, x: &[u8]) -> Vec<u8> {
    i.block_map.iter().map(|b| b.map_or(0, |b| x[i.src.blocks()[b][0] - 1])).collect()
}

/// `y` lies in `c`: constant on blocks and zero off the support.
fn member(c: &Subalg, y: &[u8]) -> bool {
    let support: BTreeSet<usize> = c.blocks().iter().flatten().copied().collect();
    (1..=c.n()).all(|k| support.contains(&k) || y[k - 1] == 0)
        && c.blocks().iter().all(|b| b.iter().all(|&k| y[k - 1] == y[b[0] - 1]))
}

#[test]
fn product_matches_vector_preimages() {
    for n in 1..=3 {
        let t = build_t(n).unwrap();
        let homs: Vec<&CstarHom> = t.nonzero().map(|x| t.elements[x].hom().unwrap()).collect();
        for ip in &homs {
            for i in &homs {
                let pre: BTreeSet<Vec<u8>> =
                    projections(&i.src).into_iter().filter(|p| member(&ip.src, &apply(i, p))).collect();
                let nonzero = pre.iter().any(|p| p.contains(&1));
                match product(ip, i) {
                    None => assert!(!nonzero, "n={n}: product vanished with a nonzero preimage"),
                    Some(h) => {
                        let got: BTreeSet<Vec<u8>> = projections(&h.src).into_iter().collect();
                        assert_eq!(got, pre, "n={n}: domain of {} · {}", ip.label(), i.label());
                        for p in &pre {
                            assert_eq!(apply(&h, p), apply(ip, &apply(i, p)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn star_is_the_partial_inverse() {
    for n in 1..=3 {
        let t = build_t(n).unwrap();
        for x in t.nonzero() {
            let i = t.elements[x].hom().unwrap();
            let s = star_hom(i);
            for p in projections(&i.src) {
                assert_eq!(apply(&s, &apply(i, &p)), p);
            }
            assert_eq!(t.elements[t.star[x]], TElement::Hom(s));
        }
    }
}

#[test]
fn cinj_hom_counts_by_double_loop() {
    for n in 1..=3 {
        for flags in [CstarFlags::UNITAL, CstarFlags::GENERAL] {
            let m = build_cinj(n, flags).unwrap();
            let c = &m.category;
            for (x, a) in m.objects.iter().enumerate() {
                for (y, b) in m.objects.iter().enumerate() {
                    let want = all_01_matrices(b.dim(), a.dim())
                        .into_iter()
                        .filter(|mat| matrix_is_injective_hom(mat, a.dim()))
                        .count();
                    assert_eq!(c.hom(x, y).len(), want, "n={n} {flags:?}: Hom({}, {})", a.label(), b.label());
                }
            }
            let classes: BTreeSet<usize> = c.iso_classes().into_iter().collect();
            assert_eq!(classes.len(), n, "isomorphism classes are the dimensions 1..n");
        }
    }
}

#[test]
fn subalgebra_models_agree_across_modules() {
    for n in 1..=4 {
        let csub = build_csub(n, true).unwrap();
        let pn = build_partition_lattice(n).unwrap();
        assert!(are_isomorphic(&csub.poset.dual(), pn.lattice.poset()).is_some());
        let cinj = build_cinj(n, CstarFlags::UNITAL).unwrap();
        assert_eq!(cinj.objects, csub.objects);
        for (i, a) in csub.objects.iter().enumerate() {
            for (j, b) in csub.objects.iter().enumerate() {
                let incl = cinj.category.hom(i, j).iter().any(|&f| cinj.homs[f].is_inclusion());
                assert_eq!(incl, csub.poset.leq(i, j), "{} ⊆ {}", a.label(), b.label());
            }
        }
    }
    let general = enumerate_subalgebras(3, false).unwrap();
    let unital = enumerate_subalgebras(3, true).unwrap();
    assert!(unital.iter().all(|c| general.contains(c)));
    let supported: u64 = (1..=3).map(|k| [1, 3, 3, 1][k] * bell(k)).sum();
    assert_eq!(general.len() as u64, supported);
}

#[test]
fn direct_images_match_vectors() {
    let c = Subalg(csub::partition::Partition::new(3, vec![vec![1, 2], vec![3]]).unwrap());
    for values in [[1, 1, 3, 2], [3, 3, 3, 3], [2, 1, 3, 3]] {
        let phi = PartialMap::total(3, &values).unwrap();
        let img = direct_image(&phi, &c).unwrap();
        let pulled: BTreeSet<Vec<u8>> = projections(&c)
            .iter()
            .map(|x| values.iter().map(|&v| x[v - 1]).collect())
            .collect();
        let got: BTreeSet<Vec<u8>> = projections(&img).into_iter().chain([vec![0; 4]]).collect();
        assert_eq!(got, pulled, "φ = {values:?}");
    }
}

#[test]
fn comparison_at_three_needs_inverse_convention() {
    let r = comparison_report(3).unwrap();
    assert!(r.functorial && r.object_bijective);
    assert_eq!(r.convention, "x∘π⁻¹");
    let p = r.properties.unwrap();
    assert!(!p.faithful && !p.full && p.essentially_surjective);
    let top = r.source_labels.iter().position(|l| l == "123").unwrap();
    let end_top = r.hom_comparison.iter().find(|w| w.dom == top && w.cod == top).unwrap();
    assert_eq!((end_top.source_count, end_top.image_count, end_top.target_count), (6, 1, 1));
}

#[test]
fn terminal_object_is_the_full_algebra() {
    for n in 1..=3 {
        let m = build_cinj(n, CstarFlags::GENERAL).unwrap();
        let r = weak_terminal_report(&m.category).unwrap();
        let labels: Vec<String> = r.objects.iter().map(|&x| m.objects[x].label()).collect();
        let full = (1..=n).map(|k| k.to_string()).collect::<Vec<_>>().join("|");
        assert_eq!(labels, vec![full]);
        assert!(r.reductions.iter().all(|w| w.full && w.faithful && w.essentially_surjective));
    }
}
