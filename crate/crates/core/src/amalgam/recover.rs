use super::action::MonoidAction;
use super::axioms::{check_amalgamation_with, AmalgamOptions, AxiomReport, Ctx, Mode};
use super::groth::{grothendieck_from_table, Convention, Grothendieck};
use super::witness::AmalgamWitness;
use super::AmalgamError;
use crate::fincat::{find_monoid_isomorphism, functor_properties, hom_preorder, FinCategory, FinMonoid, Functor, FunctorProperties};
use crate::poset::as_lattice;
use crate::recog::check_yoon;
use crate::report::{AxiomStatus, Status};
use serde::Serialize;

/// Reads the action of `G` on `P` off the category: `m·p = β(x)` where
/// `x → β′(p)` is an isomorphism over `m` (group mode) or a universal
/// morphism over `m` (monoid mode). The result is a left action of `G`.
pub fn recover_action(c: &FinCategory, w: &AmalgamWitness, mode: Mode) -> Result<MonoidAction, AmalgamError> {
    let ctx = Ctx::new(c, w)?;
    let (g, p) = (&w.target, &w.poset);
    let mut table = vec![vec![0; p.len()]; g.len()];
    for m in 0..g.len() {
        for q in 0..p.len() {
            let y = w.beta_prime[q];
            let sources: Vec<usize> = match mode {
                Mode::Group => (0..c.num_objects())
                    .flat_map(|x| c.hom(x, y).iter().copied())
                    .filter(|&f| c.is_iso(f) && ctx.label(f) == m)
                    .collect(),
                Mode::Monoid => ctx.maximal(y, m).1,
            };
            let mut images: Vec<usize> = sources.iter().map(|&f| w.beta[c.dom(f)]).collect();
            images.sort_unstable();
            images.dedup();
            table[m][q] = match images[..] {
                [] => return Err(AmalgamError::MissingWitnessMorphism { m, p: q }),
                [x] => x,
                _ => return Err(AmalgamError::AmbiguousRecovery { m, p: q, images }),
            };
        }
    }
    Ok(MonoidAction::new(g.clone(), p.clone(), &table)?)
}

pub struct Equivalence {
    /// `x ↦ β(x)`, `f ↦ αF(f)`.
    pub functor: Functor,
    pub properties: FunctorProperties,
    pub action: MonoidAction,
    pub target: Grothendieck,
}

/// The comparison functor into the construction on the recovered action.
pub fn build_equivalence(c: &FinCategory, w: &AmalgamWitness, mode: Mode) -> Result<Equivalence, AmalgamError> {
    let action = recover_action(c, w, mode)?;
    let target = grothendieck_from_table(&action.monoid, &action.poset, |m, p| action.act(m, p), Convention::MulForward)?;
    let ctx = Ctx::new(c, w)?;
    let morphism_map = (0..c.num_morphisms())
        .map(|f| {
            let (m, x, y) = (ctx.label(f), w.beta[c.dom(f)], w.beta[c.cod(f)]);
            target.morphism(m, x, y).ok_or(AmalgamError::MissingWitnessMorphism { m, p: y })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let functor = Functor::new(c.clone(), target.category.clone(), w.beta.clone(), morphism_map)?;
    let properties = functor_properties(&functor);
    Ok(Equivalence { functor, properties, action, target })
}

#[derive(Clone, Debug, Serialize)]
pub struct CstarVerdict {
    pub pass: bool,
    /// `∑ dims`.
    pub m: usize,
    pub clauses: Vec<AxiomStatus>,
    pub amalgamation: AxiomReport,
}

/// Certificate that `c` has the shape of the subalgebra category of a matrix
/// algebra with block sizes `dims`: amalgamation axioms, partition-lattice
/// quotient, symmetric endomorphisms, and the dimension count.
pub fn check_cstar_characterization(
    c: &FinCategory,
    dims: &[usize],
    dim_a: usize,
    opts: &AmalgamOptions,
) -> Result<CstarVerdict, AmalgamError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(AmalgamError::InvalidWitness("dims must be a nonempty list of positive integers".into()));
    }
    let m: usize = dims.iter().sum();
    let mode = if dims.len() == 1 { Mode::Group } else { Mode::Monoid };
    let report = check_amalgamation_with(c, None, mode, opts)?;
    let a_ok = match mode {
        Mode::Group => report.pass,
        Mode::Monoid => report.passes_except(&["A7′"]),
    };
    let required = match mode {
        Mode::Group => "A1–A6",
        Mode::Monoid => "A1′–A6′",
    };
    let mut clauses = vec![AxiomStatus::new(
        "amalgamation",
        Status::from_bool(a_ok),
        match (a_ok, report.first_failure()) {
            (true, _) => format!("{required} hold"),
            (false, Some(f)) => format!("fails at {}: {}", f.axiom, f.detail),
            (false, None) => "fails".to_string(),
        },
    )];
    match report.witness.as_ref().filter(|_| a_ok) {
        Some(w) => {
            let pre = hom_preorder(c, w.zero, &w.retraction).expect("witness retraction is functorial");
            let yoon = as_lattice(pre.quotient.clone()).ok().and_then(|l| check_yoon(&l).ok());
            let b = match yoon {
                Some(v) if v.pass && v.inferred_n == Some(m - 1) => {
                    AxiomStatus::new("partition_lattice", Status::Pass, format!("quotient is P({m})"))
                }
                Some(v) if v.pass => AxiomStatus::new(
                    "partition_lattice",
                    Status::Fail,
                    format!("quotient is P({}), expected P({m})", v.inferred_n.unwrap() + 1),
                ),
                Some(v) => AxiomStatus::new(
                    "partition_lattice",
                    Status::Fail,
                    format!("quotient fails {}", v.first_failure().map(|a| a.axiom.as_str()).unwrap_or("?")),
                ),
                None => AxiomStatus::new("partition_lattice", Status::Fail, "quotient is not a lattice"),
            };
            clauses.push(b);
            let (endo, _) = c.endo_monoid(w.zero);
            let sym = find_monoid_isomorphism(&endo.opposite(), &FinMonoid::symmetric_group(m)).is_some();
            clauses.push(AxiomStatus::new(
                "symmetric_group",
                Status::from_bool(sym),
                format!("End(0)ᵒᵖ has {} elements; S({m}) {}", endo.len(), if sym { "matches" } else { "does not match" }),
            ));
        }
        None => {
            clauses.push(AxiomStatus::not_evaluated("partition_lattice"));
            clauses.push(AxiomStatus::not_evaluated("symmetric_group"));
        }
    }
    let sq: usize = dims.iter().map(|d| d * d).sum();
    clauses.push(AxiomStatus::new(
        "dimension",
        Status::from_bool(sq == dim_a),
        format!("∑ n_i² = {sq}, dim A = {dim_a}"),
    ));
    let pass = clauses.iter().all(|s| s.status.ok());
    Ok(CstarVerdict { pass, m, clauses, amalgamation: report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{
        canonical_witness, check_group_amalgamation, check_monoid_amalgamation, grothendieck, permutation_action_on_pn,
        pullback_action_on_pn,
    };
    use crate::partition::build_partition_lattice;

    fn setup(a: &MonoidAction) -> (Grothendieck, AmalgamWitness) {
        let g = grothendieck(a).unwrap();
        let w = canonical_witness(&g, &a.monoid, &a.poset).unwrap();
        (g, w)
    }

    #[test]
    fn group_round_trip() {
        let a = permutation_action_on_pn(3).unwrap();
        let (g, w) = setup(&a);
        let r = check_group_amalgamation(&g.category, Some(&w)).unwrap();
        assert!(r.pass, "{:?}", r.first_failure());
        assert!(r.target_self_opposite_by_inversion);
        assert_eq!(recover_action(&g.category, &w, Mode::Group).unwrap(), a);
        assert!(check_monoid_amalgamation(&g.category, Some(&w)).unwrap().pass);
        let e = build_equivalence(&g.category, &w, Mode::Group).unwrap();
        assert!(e.properties.is_equivalence);
    }

    #[test]
    fn pullback_round_trip() {
        let a = pullback_action_on_pn(3).unwrap();
        let (g, w) = setup(&a);
        let r = check_monoid_amalgamation(&g.category, Some(&w)).unwrap();
        assert!(r.pass, "{:?}", r.first_failure());
        assert!(!r.weak_initial_unique);
        let back = recover_action(&g.category, &w, Mode::Monoid).unwrap();
        assert_eq!(back.table(), a.table());
        assert_eq!(back.monoid, a.monoid.opposite());
        let e = build_equivalence(&g.category, &w, Mode::Monoid).unwrap();
        assert!(e.properties.is_equivalence);
        assert!(!check_group_amalgamation(&g.category, Some(&w)).unwrap().pass);
    }

    #[test]
    fn poset_with_demanded_group_fails_a3() {
        let p = build_partition_lattice(3).unwrap().lattice.poset().clone();
        let c = FinCategory::from_poset(&p);
        let opts = AmalgamOptions { target: Some(FinMonoid::symmetric_group(3)), ..Default::default() };
        let r = check_amalgamation_with(&c, None, Mode::Group, &opts).unwrap();
        assert_eq!(r.first_failure().unwrap().axiom, "A3");
    }

    #[test]
    fn searched_witness() {
        for n in 2..=3 {
            let a = permutation_action_on_pn(n).unwrap();
            let g = grothendieck(&a).unwrap();
            let r = check_group_amalgamation(&g.category, None).unwrap();
            assert!(r.pass, "{:?}", r.first_failure());
            let w = r.witness.unwrap();
            let e = build_equivalence(&g.category, &w, Mode::Group).unwrap();
            assert!(e.properties.is_equivalence);
        }
    }

    #[test]
    fn lax_table_fails_a7() {
        let m = FinMonoid::from_fn(vec!["1".into(), "a".into(), "z".into()], 0, |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            _ => 2,
        })
        .unwrap();
        let p = crate::poset::FinPoset::chain(3);
        let table = [vec![0, 1, 2], vec![0, 1, 2], vec![0, 2, 2]];
        let g = grothendieck_from_table(&m, &p, |x, q| table[x][q], Convention::MulForward).unwrap();
        let w = canonical_witness(&g, &m, &p).unwrap();
        let r = check_monoid_amalgamation(&g.category, Some(&w)).unwrap();
        assert_eq!(r.first_failure().unwrap().axiom, "A7′");
        assert!(r.passes_except(&["A7′"]));
    }

    #[test]
    fn cstar_certificates() {
        let opts = AmalgamOptions::default();
        let c2 = grothendieck(&permutation_action_on_pn(2).unwrap()).unwrap().category;
        assert!(check_cstar_characterization(&c2, &[2], 4, &opts).unwrap().pass);
        let c3 = grothendieck(&permutation_action_on_pn(3).unwrap()).unwrap().category;
        assert!(check_cstar_characterization(&c3, &[1, 2], 5, &opts).unwrap().pass);
        let v = check_cstar_characterization(&c3, &[3], 8, &opts).unwrap();
        let failed: Vec<&str> = v.clauses.iter().filter(|s| !s.status.ok()).map(|s| s.axiom.as_str()).collect();
        assert_eq!(failed, vec!["dimension"]);
    }
}
