//! The acceptance corpus as a library routine, run by `csub selftest`.

use crate::amalgam::{
    build_equivalence, canonical_witness, check_cstar_characterization, evaluate, grothendieck, permutation_action_on_pn,
    pullback_action_on_pn, random_monotone_action, recover_action, AmalgamOptions, Mode, MonoidAction,
};
use crate::cstar::{
    build_cinj, build_csub, bundle_projections, comparison_report, enumerate_subalgebras, hom_set, ideal_condition_morphisms,
    matrix_oracle, CstarFlags, CstarHom, Subalg,
};
use crate::fincat::{find_monoid_isomorphism, FinMonoid};
use crate::invsemi::{aut_elements_equivalence, build_t, derived_structures, law_report};
use crate::partition::{build_partition_lattice, enumerate_partitions, Partition};
use crate::poset::{are_isomorphic, FinLattice, FinPoset, IntPolynomial};
use crate::recog::{check_firby, check_yoon};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Seed of the randomized part of the amalgamation corpus.
pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const RANDOM_ACTIONS: usize = 24;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(n: usize) -> Result<FinLattice, String> {
    build_partition_lattice(n).map(|p| p.lattice).map_err(|e| e.to_string())
}

/// Non-partition lattices with the axiom each must fail first.
pub fn non_partition_lattices() -> Vec<(&'static str, FinLattice, &'static str)> {
    let n5 = FinPoset::from_generators(
        ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    )
    .unwrap();
    vec![
        ("2³", FinLattice::new(FinPoset::boolean(3)).unwrap(), "P4"),
        ("N₅", FinLattice::new(n5).unwrap(), "P1"),
        ("4-chain", FinLattice::new(FinPoset::chain(4)).unwrap(), "P1"),
    ]
}

fn c1_sizes() -> Outcome {
    let sizes: Vec<usize> = (1..=5).map(|n| enumerate_partitions(n, true).map(|v| v.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(sizes == [1, 2, 5, 15, 52], || format!("sizes {sizes:?}"))?;
    Ok(format!("{sizes:?}"))
}

fn c2_charpoly() -> Outcome {
    for n in 1..=4 {
        let p = lattice(n + 1)?.characteristic_polynomial().map_err(|e| e.to_string())?;
        let want = IntPolynomial::from_roots((1..=n as i64).collect::<Vec<_>>());
        ensure(p == want, || format!("P({}): {p} ≠ {want}", n + 1))?;
    }
    Ok("P(2)..P(5) factor as (λ−1)⋯(λ−n)".into())
}

fn c3_mobius() -> Outcome {
    let mut tops = Vec::new();
    for n in 2..=5usize {
        let l = lattice(n)?;
        let mu = l.mobius();
        ensure(mu.defining_sum_failure(&l).is_none(), || format!("P({n}) defining sum"))?;
        let fact: i64 = (1..n as i64).product();
        let want = if n % 2 == 0 { -fact } else { fact };
        ensure(mu.values[l.top()] == want, || format!("μ(top) of P({n}) = {}", mu.values[l.top()]))?;
        tops.push(want);
    }
    Ok(format!("μ(top) = {tops:?}"))
}

fn c4_yoon() -> Outcome {
    for n in 3..=5 {
        let l = lattice(n)?;
        let v = check_yoon(&l).map_err(|e| e.to_string())?;
        ensure(v.pass && v.inferred_n == Some(n - 1), || format!("P({n}) verdict {:?}", v.first_failure()))?;
        let iso = v.isomorphism.as_ref().ok_or("no isomorphism")?;
        let target = lattice(n)?;
        ensure(crate::poset::is_order_isomorphism(l.poset(), target.poset(), iso), || format!("P({n}) iso"))?;
    }
    for (name, l, axiom) in non_partition_lattices() {
        let v = check_yoon(&l).map_err(|e| e.to_string())?;
        let got = v.first_failure().map(|a| a.axiom.clone());
        ensure(!v.pass && got.as_deref() == Some(axiom), || format!("{name}: {got:?}"))?;
    }
    Ok("P(3..5) pass; 2³→P4, N₅→P1, 4-chain→P1".into())
}

fn c5_firby() -> Outcome {
    for n in 4..=5 {
        let l = lattice(n)?;
        let r = check_firby(&l).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("P({n}) fails {:?}", r.first_failure()))?;
        ensure(r.one_points.len() == n, || format!("P({n}) has {} 1-points", r.one_points.len()))?;
        ensure(r.space.as_ref().is_some_and(|s| s.is_discrete()), || format!("P({n}) space not discrete"))?;
        for a in l.atoms() {
            let hits = r.one_points.iter().filter(|p| p.atoms.contains(&a)).count();
            ensure(hits == 2, || format!("P({n}) atom {a} in {hits} 1-points"))?;
        }
    }
    Ok("4 and 5 one-points, discrete".into())
}

/// The amalgamation corpus: natural and trivial group actions, the pullback
/// action of T(3), and seeded random monotone actions.
pub fn amalgamation_corpus(seed: u64, random: usize) -> Vec<(String, MonoidAction, Mode)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        let a = permutation_action_on_pn(n).expect("permutation action");
        let trivial =
            MonoidAction::from_fn(FinMonoid::symmetric_group(5 - n), a.poset.clone(), |_, p| p).expect("trivial action");
        out.push((format!("S({n}) on P({n})"), a, Mode::Group));
        out.push((format!("S({}) trivially on P({n})", 5 - n), trivial, Mode::Group));
    }
    out.push(("T(3) on P(3) by pullback".into(), pullback_action_on_pn(3).expect("pullback action"), Mode::Monoid));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        out.push((format!("random #{i}"), random_monotone_action(&mut rng, 5, 6), Mode::Monoid));
    }
    out
}

/// Build, check with the canonical witness, recover, and compare.
pub fn round_trip(a: &MonoidAction, mode: Mode) -> Result<(), String> {
    let g = grothendieck(a).map_err(|e| e.to_string())?;
    let w = canonical_witness(&g, &a.monoid, &a.poset).ok_or("poset has no least element")?;
    let r = evaluate(&g.category, &w, mode).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("fails {:?}", r.first_failure().map(|f| &f.axiom)))?;
    let back = recover_action(&g.category, &w, mode).map_err(|e| e.to_string())?;
    ensure(back.table() == a.table(), || "recovered table differs".into())?;
    let eq = build_equivalence(&g.category, &w, mode).map_err(|e| e.to_string())?;
    ensure(eq.properties.is_equivalence, || "comparison functor is not an equivalence".into())
}

fn c6_round_trip() -> Outcome {
    let corpus = amalgamation_corpus(CORPUS_SEED, RANDOM_ACTIONS);
    for (name, a, mode) in &corpus {
        round_trip(a, *mode).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} actions", corpus.len()))
}

fn c7_hom_sets() -> Outcome {
    let a = permutation_action_on_pn(3).map_err(|e| e.to_string())?;
    let g = grothendieck(&a).map_err(|e| e.to_string())?;
    let c = &g.category;
    for p in 0..a.poset.len() {
        for q in 0..a.poset.len() {
            let want = (0..a.monoid.len()).filter(|&m| a.poset.leq(p, a.act(m, q))).count();
            ensure(c.hom(p, q).len() == want, || format!("Hom({p},{q})"))?;
        }
    }
    let bottom = a.poset.least().ok_or("no bottom")?;
    let (endo, _) = c.endo_monoid(bottom);
    ensure(endo.len() == 6, || format!("End(0) has {} elements", endo.len()))?;
    ensure(find_monoid_isomorphism(&endo, &FinMonoid::symmetric_group(3)).is_some(), || "End(0) ≇ S(3)".into())?;
    Ok("25 hom-sets; End(0) ≅ S(3)".into())
}

fn c8_certificates() -> Outcome {
    let opts = AmalgamOptions::default();
    let cat = |n| {
        permutation_action_on_pn(n)
            .map_err(|e| e.to_string())
            .and_then(|a| grothendieck(&a).map(|g| g.category).map_err(|e| e.to_string()))
    };
    let (c2, c3) = (cat(2)?, cat(3)?);
    for (c, dims, dim_a) in [(&c2, &[2][..], 4), (&c3, &[1, 2][..], 5)] {
        let v = check_cstar_characterization(c, dims, dim_a, &opts).map_err(|e| e.to_string())?;
        ensure(v.pass, || format!("dims {dims:?}: {:?}", v.clauses.iter().find(|s| !s.status.ok())))?;
    }
    let v = check_cstar_characterization(&c3, &[3], 8, &opts).map_err(|e| e.to_string())?;
    let failing: Vec<&str> = v.clauses.iter().filter(|s| !s.status.ok()).map(|s| s.axiom.as_str()).collect();
    ensure(failing == ["dimension"], || format!("dims [3]: failing {failing:?}"))?;
    Ok("(2)/4 and (1,2)/5 pass; (3)/8 fails dimension only".into())
}

fn all_01_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Vec<Vec<u8>>> {
    (0u64..1 << (rows * cols)).map(move |mask| {
        (0..rows).map(|r| (0..cols).map(|c| (mask >> (r * cols + c) & 1) as u8).collect()).collect()
    })
}

fn c9_models() -> Outcome {
    for n in 1..=3 {
        let subs = enumerate_subalgebras(n, false).map_err(|e| e.to_string())?;
        for a in &subs {
            for b in &subs {
                let got: BTreeSet<Vec<Vec<u8>>> = hom_set(a, b, false).iter().map(CstarHom::matrix).collect();
                let want: BTreeSet<Vec<Vec<u8>>> = all_01_matrices(b.dim(), a.dim())
                    .filter(|m| matrix_oracle(m, a.dim()))
                    .collect();
                ensure(got == want, || format!("n={n}: Hom({}, {})", a.label(), b.label()))?;
            }
        }
    }
    let c = build_cinj(2, CstarFlags::UNITAL).map_err(|e| e.to_string())?;
    ensure(c.category.hom_counts() == [[1, 3], [0, 2]], || format!("{:?}", c.category.hom_counts()))?;
    for n in 2..=4 {
        let s = build_csub(n, true).map_err(|e| e.to_string())?;
        ensure(are_isomorphic(&s.poset.dual(), lattice(n)?.poset()).is_some(), || format!("C_⊆({n})ᵒᵖ ≇ P({n})"))?;
    }
    Ok("hom-sets exhaustive for n ≤ 3; [[1,3],[0,2]]; C_⊆ᵒᵖ ≅ P(n)".into())
}

fn c10_comparison() -> Outcome {
    let r = comparison_report(2).map_err(|e| e.to_string())?;
    let p = r.properties.as_ref().ok_or("comparison is not a functor")?;
    ensure(r.functorial && r.object_bijective, || "functorial/object-bijective".into())?;
    let fw = r.faithful_witness.ok_or("no faithfulness witness")?;
    let uw = r.full_witness.ok_or("no fullness witness")?;
    ensure(!p.faithful && (fw.source_count, fw.image_count) == (2, 1), || format!("faithful witness {fw:?}"))?;
    ensure(!p.full && (uw.target_count, uw.image_count) == (3, 1), || format!("full witness {uw:?}"))?;
    Ok(format!("End(t) 2→1, Hom(C(t),C(d)) 3 vs 1 induced, convention {}", r.convention))
}

fn c11_ideals() -> Outcome {
    let r = ideal_condition_morphisms(2).map_err(|e| e.to_string())?;
    let inclusions: Vec<usize> = (0..r.model.homs.len()).filter(|&f| r.model.homs[f].is_inclusion()).collect();
    ensure(inclusions.len() == 3 && inclusions.iter().all(|f| r.kept.contains(f)), || "inclusions".into())?;
    let t = Subalg(Partition::one_block(2));
    let d = Subalg(Partition::discrete(2));
    let x0 = CstarHom::new(t, d, vec![Some(0), None]).map_err(|e| e.to_string())?;
    let f = r.model.morphism_index(&x0).ok_or("x ↦ (x,0) missing")?;
    ensure(!r.kept.contains(&f), || "x ↦ (x,0) kept".into())?;
    ensure(r.category.is_some(), || "not closed under composition".into())?;
    Ok(format!("{} kept, {} rejected", r.kept.len(), r.rejected.len()))
}

fn c12_inverse_semigroup() -> Outcome {
    for n in 1..=3 {
        let t = build_t(n).map_err(|e| e.to_string())?;
        ensure(law_report(&t).pass, || format!("laws fail at n={n}"))?;
        if n == 2 {
            ensure(t.len() - 1 == 11, || format!("T(2) has {} nonzero elements", t.len() - 1))?;
        }
        let d = derived_structures(&t).map_err(|e| e.to_string())?;
        ensure(d.domain_image_failures.is_empty() && d.idempotents_are_inclusions, || format!("n={n}: idempotents"))?;
    }
    let a = aut_elements_equivalence(2).map_err(|e| e.to_string())?;
    ensure(a.elements_objects == 11, || format!("∫Aut has {} objects", a.elements_objects))?;
    let flags = |p: &crate::fincat::FunctorProperties| p.faithful && p.full && p.essentially_surjective;
    ensure(flags(&a.f_properties) && flags(&a.g_properties), || "equivalence flags".into())?;
    Ok("laws, E/L/G isomorphisms n ≤ 3, ∫Aut(2) has 11 objects".into())
}

fn c13_projections() -> Outcome {
    for n in 1..=3 {
        let b = bundle_projections(n).map_err(|e| e.to_string())?;
        ensure(b.boolean_iso.is_some(), || format!("n={n}"))?;
    }
    Ok("≅ 2ⁿ for n ≤ 3".into())
}

pub const TITLES: [&str; 13] = [
    "partition lattice sizes",
    "characteristic polynomials",
    "Möbius function",
    "Yoon decision procedure",
    "Firby 1-points",
    "amalgamation round-trip",
    "hom-set oracle",
    "matrix-algebra certificate",
    "C* model exactness",
    "comparison report",
    "ideal condition",
    "inverse semigroup",
    "projection bundle",
];

pub fn run_selftest() -> Vec<Criterion> {
    let checks: [fn() -> Outcome; 13] = [
        c1_sizes,
        c2_charpoly,
        c3_mobius,
        c4_yoon,
        c5_firby,
        c6_round_trip,
        c7_hom_sets,
        c8_certificates,
        c9_models,
        c10_comparison,
        c11_ideals,
        c12_inverse_semigroup,
        c13_projections,
    ];
    checks
        .iter()
        .zip(TITLES)
        .enumerate()
        .map(|(i, (check, title))| {
            let (pass, detail) = match check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Criterion { id: i + 1, title, pass, detail }
        })
        .collect()
}
