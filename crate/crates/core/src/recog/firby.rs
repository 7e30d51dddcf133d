use crate::bits::BitRow;
use crate::partition::build_partition_lattice;
use crate::poset::{are_isomorphic, FinLattice};
use crate::report::{first_failure, AxiomStatus, Status};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FirbyError {
    #[error("lattice has {0} elements, at least four are required")]
    TooSmall(usize),
    #[error("{what} search exceeded its cap of {cap}")]
    SearchCapExceeded { what: &'static str, cap: usize },
}

/// How single collections of atoms are delimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingleCollectionRule {
    /// Maximal sets of atoms in which every pairwise join dominates exactly three atoms.
    Verbatim,
    /// As `Verbatim`, but a collection may not contain three atoms whose join
    /// dominates exactly three atoms.
    #[default]
    ExcludeTriangles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FirbyCaps {
    /// Search nodes visited while enumerating single collections.
    pub collections: usize,
    /// Candidate families visited per element in the (P6′) uniqueness sweep.
    pub p6_families: usize,
    /// Largest 1-point count for which the closed sets are materialized.
    pub space_points: usize,
}

impl Default for FirbyCaps {
    fn default() -> Self {
        FirbyCaps { collections: 1_000_000, p6_families: 1_000_000, space_points: 12 }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FirbyOptions {
    pub rule: SingleCollectionRule,
    pub caps: FirbyCaps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnePoint {
    /// The single collection of atoms, ascending.
    pub atoms: Vec<usize>,
    /// All members, ascending.
    pub elements: Vec<usize>,
}

impl OnePoint {
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// A finite topological space given by its closed sets, points `0..points`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSpace {
    pub points: usize,
    pub closed: Vec<Vec<usize>>,
}

impl FiniteSpace {
    pub fn is_discrete(&self) -> bool {
        self.points < usize::BITS as usize && self.closed.len() == 1 << self.points
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FirbyReport {
    pub pass: bool,
    pub axioms: Vec<AxiomStatus>,
    pub rule: SingleCollectionRule,
    pub bounding: Vec<usize>,
    pub one_points: Vec<OnePoint>,
    /// 1-point count under [`SingleCollectionRule::Verbatim`], for comparison.
    pub verbatim_one_point_count: usize,
    pub caps: FirbyCaps,
    pub space: Option<FiniteSpace>,
    /// Isomorphism onto P(k), k the number of 1-points, when the space is discrete.
    pub isomorphism: Option<Vec<usize>>,
}

impl FirbyReport {
    pub fn first_failure(&self) -> Option<&AxiomStatus> {
        first_failure(&self.axioms)
    }
}

struct Atoms<'a> {
    l: &'a FinLattice,
    list: Vec<usize>,
    set: BitRow,
}

impl<'a> Atoms<'a> {
    fn new(l: &'a FinLattice) -> Self {
        let list = l.atoms();
        let mut set = BitRow::new(l.len());
        for &a in &list {
            set.set(a);
        }
        Atoms { l, list, set }
    }

    fn below(&self, x: usize) -> BitRow {
        self.l.down_row(x).and(&self.set)
    }

    fn count_below(&self, x: usize) -> usize {
        self.below(x).count()
    }

    fn triple_join(&self, p: usize, q: usize) -> bool {
        self.count_below(self.l.join(p, q)) == 3
    }
}

/// Elements that are zero or an atom, or cover an atom while dominating
/// exactly three atoms, or dominate at least two atoms any two of which `p, q`
/// admit an atom `r` below the element with `r ∨ p` and `r ∨ q` each dominating
/// exactly three atoms.
pub fn bounding_elements(l: &FinLattice) -> Vec<usize> {
    let atoms = Atoms::new(l);
    (0..l.len()).filter(|&b| is_bounding(&atoms, b)).collect()
}

fn is_bounding(atoms: &Atoms, b: usize) -> bool {
    let l = atoms.l;
    if b == l.bottom() || atoms.set.get(b) {
        return true;
    }
    let under: Vec<usize> = atoms.below(b).iter().collect();
    if under.len() == 3 && under.iter().any(|&a| l.covers(a, b)) {
        return true;
    }
    under.len() >= 2
        && under.iter().enumerate().all(|(i, &p)| {
            under[i + 1..]
                .iter()
                .all(|&q| under.iter().any(|&r| atoms.triple_join(r, p) && atoms.triple_join(r, q)))
        })
}

/// Maximal admissible sets of atoms under `rule`, each ascending, in
/// lexicographic order.
pub fn single_collections(
    l: &FinLattice,
    rule: SingleCollectionRule,
    cap: usize,
) -> Result<Vec<Vec<usize>>, FirbyError> {
    let atoms = Atoms::new(l);
    let k = atoms.list.len();
    let adj: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && atoms.triple_join(atoms.list[i], atoms.list[j])).collect()).collect();
    let fits = |cur: &[usize], c: usize| -> bool {
        if !cur.iter().all(|&i| adj[i][c]) {
            return false;
        }
        match rule {
            SingleCollectionRule::Verbatim => true,
            SingleCollectionRule::ExcludeTriangles => cur.iter().enumerate().all(|(x, &i)| {
                cur[x + 1..].iter().all(|&j| {
                    let t = l.join(l.join(atoms.list[i], atoms.list[j]), atoms.list[c]);
                    atoms.count_below(t) != 3
                })
            }),
        }
    };

    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut cur = Vec::new();
    fn walk(
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        fits: &dyn Fn(&[usize], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
        visited: &mut usize,
        cap: usize,
    ) -> Result<(), FirbyError> {
        *visited += 1;
        if *visited > cap {
            return Err(FirbyError::SearchCapExceeded { what: "single collection", cap });
        }
        if !cur.is_empty() && (0..k).all(|c| cur.contains(&c) || !fits(cur, c)) {
            out.push(cur.clone());
        }
        for c in start..k {
            if fits(cur, c) {
                cur.push(c);
                walk(k, c + 1, cur, fits, out, visited, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    walk(k, 0, &mut cur, &fits, &mut out, &mut visited, cap)?;
    let mut out: Vec<Vec<usize>> = out.into_iter().map(|s| s.into_iter().map(|i| atoms.list[i]).collect()).collect();
    out.sort();
    Ok(out)
}

/// 1-points under the default rule.
pub fn one_points(l: &FinLattice) -> Result<Vec<OnePoint>, FirbyError> {
    one_points_with(l, SingleCollectionRule::default(), FirbyCaps::default().collections)
}

/// Each single collection `S` yields the nonzero bounding elements above some
/// atom of `S`; this set is upward closed among bounding elements and each of
/// its members dominates an atom of `S`.
pub fn one_points_with(l: &FinLattice, rule: SingleCollectionRule, cap: usize) -> Result<Vec<OnePoint>, FirbyError> {
    if l.len() < 4 {
        return Err(FirbyError::TooSmall(l.len()));
    }
    let bounding = bounding_elements(l);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for atoms in single_collections(l, rule, cap)? {
        let elements: Vec<usize> = bounding
            .iter()
            .copied()
            .filter(|&b| b != l.bottom() && atoms.iter().any(|&p| l.leq(p, b)))
            .collect();
        if seen.insert(elements.clone()) {
            out.push(OnePoint { atoms, elements });
        }
    }
    Ok(out)
}

pub fn check_firby(l: &FinLattice) -> Result<FirbyReport, FirbyError> {
    check_firby_with(l, FirbyOptions::default())
}

pub fn check_firby_with(l: &FinLattice, opts: FirbyOptions) -> Result<FirbyReport, FirbyError> {
    if l.len() < 4 {
        return Err(FirbyError::TooSmall(l.len()));
    }
    let atoms = Atoms::new(l);
    let bounding = bounding_elements(l);
    let mut is_bounding = vec![false; l.len()];
    for &b in &bounding {
        is_bounding[b] = true;
    }
    let points = one_points_with(l, opts.rule, opts.caps.collections)?;
    let verbatim_one_point_count = match opts.rule {
        SingleCollectionRule::Verbatim => points.len(),
        _ => one_points_with(l, SingleCollectionRule::Verbatim, opts.caps.collections)?.len(),
    };
    // member[x]: the 1-points containing x.
    let mut member = vec![BitRow::new(points.len()); l.len()];
    for (i, pt) in points.iter().enumerate() {
        for &e in &pt.elements {
            member[e].set(i);
        }
    }
    let share = |x: usize, y: usize| !member[x].is_disjoint(&member[y]);

    let mut axioms = Vec::new();

    axioms.push(match l.atomistic_failure() {
        None => AxiomStatus::new("P1′", Status::Pass, "finite hence complete; every element is a join of atoms"),
        Some(x) => AxiomStatus::new("P1′", Status::Fail, format!("element {x} is not a join of atoms")).with_witness(vec![x]),
    });

    axioms.push(check_p2(&points, &atoms));
    axioms.push(check_p3(l, &atoms, &bounding, &member, &share));
    axioms.push(check_p4(l, &points, &bounding));

    let mut nests = 0;
    let mut p5 = None;
    for &a in &bounding {
        for &b in &bounding {
            if l.lt(a, b) {
                nests += 1;
                let j = l.join(a, b);
                if !is_bounding[j] && p5.is_none() {
                    p5 = Some(vec![a, b]);
                }
            }
        }
    }
    axioms.push(match p5 {
        None => AxiomStatus::new(
            "P5′",
            Status::Trivial,
            format!("finite nests join to their maximum; {nests} comparable bounding pairs checked"),
        ),
        Some(w) => AxiomStatus::new("P5′", Status::Fail, "join of a nest is not bounding").with_witness(w),
    });

    axioms.push(check_p6(l, &bounding, &is_bounding, &share, opts.caps.p6_families)?);

    axioms.push(AxiomStatus::new(
        "P7′",
        Status::Trivial,
        "every collection of elements of a finite lattice is finite",
    ));

    let mut pass = axioms.iter().all(|a| a.status.ok());
    let mut space = None;
    let mut isomorphism = None;
    if pass && points.len() <= opts.caps.space_points {
        let s = reconstruct_space(&points, &bounding, l.bottom());
        if !s.is_discrete() {
            axioms.push(AxiomStatus::new("space", Status::Fail, "reconstructed space is not discrete"));
            pass = false;
        } else if points.len() <= 6 {
            let target = build_partition_lattice(points.len()).expect("within cap");
            isomorphism = are_isomorphic(l, &target.lattice);
            let status = Status::from_bool(isomorphism.is_some());
            axioms.push(AxiomStatus::new("oracle", status, format!("isomorphism onto P({})", points.len())));
            pass = isomorphism.is_some();
        }
        space = Some(s);
    }

    Ok(FirbyReport {
        pass,
        axioms,
        rule: opts.rule,
        bounding,
        one_points: points,
        verbatim_one_point_count,
        caps: opts.caps,
        space,
        isomorphism,
    })
}

fn check_p2(points: &[OnePoint], atoms: &Atoms) -> AxiomStatus {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let common = points[i].atoms.iter().filter(|a| points[j].atoms.contains(a)).count();
            if common != 1 {
                return AxiomStatus::new("P2′", Status::Fail, format!("1-points {i} and {j} share {common} atoms"))
                    .with_witness(vec![i, j]);
            }
        }
    }
    for &a in &atoms.list {
        let hits = points.iter().filter(|p| p.atoms.contains(&a)).count();
        if hits != 2 {
            return AxiomStatus::new("P2′", Status::Fail, format!("atom {a} lies in {hits} 1-points"))
                .with_witness(vec![a]);
        }
    }
    AxiomStatus::new("P2′", Status::Pass, format!("{} 1-points, pairwise meeting in one atom", points.len()))
}

fn check_p3(
    l: &FinLattice,
    atoms: &Atoms,
    bounding: &[usize],
    member: &[BitRow],
    share: &dyn Fn(usize, usize) -> bool,
) -> AxiomStatus {
    for (i, &a) in bounding.iter().enumerate() {
        for &b in &bounding[i..] {
            let lhs = atoms.below(l.join(a, b));
            let rhs: Vec<usize> = if share(a, b) {
                let either = member[a].or(&member[b]);
                atoms.list.iter().copied().filter(|&p| member[p].is_subset(&either)).collect()
            } else {
                atoms.list.iter().copied().filter(|&p| l.leq(p, a) || l.leq(p, b)).collect()
            };
            if lhs.iter().collect::<Vec<_>>() != rhs {
                return AxiomStatus::new("P3′", Status::Fail, format!("atoms below {a} ∨ {b} differ from the prescribed set"))
                    .with_witness(vec![a, b]);
            }
        }
    }
    AxiomStatus::new("P3′", Status::Pass, "both cases hold for every pair of bounding elements")
}

fn check_p4(l: &FinLattice, points: &[OnePoint], bounding: &[usize]) -> AxiomStatus {
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let found = bounding.iter().any(|&a| {
                !x.contains(a) && bounding.iter().any(|&b| !y.contains(b) && l.join(a, b) == l.top())
            });
            if !found {
                return AxiomStatus::new("P4′", Status::Fail, format!("no separating pair for 1-points {i}, {j}"))
                    .with_witness(vec![i, j]);
            }
        }
    }
    AxiomStatus::new("P4′", Status::Pass, "every ordered pair of distinct 1-points is separated")
}

fn check_p6(
    l: &FinLattice,
    bounding: &[usize],
    is_bounding: &[bool],
    share: &dyn Fn(usize, usize) -> bool,
    cap: usize,
) -> Result<AxiomStatus, FirbyError> {
    let nonzero: Vec<usize> = bounding.iter().copied().filter(|&b| b != l.bottom()).collect();
    // Third clause of the characterization, for a candidate family `fam`.
    let universal = |fam: &[usize]| -> bool {
        bounding.iter().all(|&c| {
            fam.iter().all(|&b1| {
                share(b1, c)
                    || bounding.iter().any(|&b| {
                        l.leq(c, b) && !share(b, b1) && fam.iter().all(|&b2| !share(b, b2) || l.leq(b2, b))
                    })
            })
        })
    };
    for a in 0..l.len() {
        if a == l.bottom() {
            continue;
        }
        let family: Vec<usize> = if is_bounding[a] {
            vec![a]
        } else {
            let under: Vec<usize> = nonzero.iter().copied().filter(|&b| l.lt(b, a)).collect();
            under.iter().copied().filter(|&b| !under.iter().any(|&c| l.lt(b, c))).collect()
        };
        let fail = |why: &str, w: Vec<usize>| {
            Ok(AxiomStatus::new("P6′", Status::Fail, format!("element {a}: {why}")).with_witness(w))
        };
        if l.join_all(family.iter().copied()) != a {
            return fail("the bounding elements below it do not join to it", vec![a]);
        }
        if let Some((x, y)) = pairs(&family).find(|&(x, y)| share(x, y)) {
            return fail("two members share a 1-point", vec![a, x, y]);
        }
        if !universal(&family) {
            return fail("the separation clause fails", vec![a]);
        }

        // Uniqueness among families of pairwise unshared nonzero bounding elements joining to a.
        let cands: Vec<usize> = nonzero.iter().copied().filter(|&b| l.leq(b, a)).collect();
        let mut visited = 0usize;
        let mut cur = Vec::new();
        let mut rival = None;
        sweep(l, a, &cands, 0, &mut cur, share, &mut |fam| {
            if fam != family.as_slice() && universal(fam) {
                rival = Some(fam.to_vec());
                return false;
            }
            true
        }, &mut visited, cap)?;
        if let Some(mut r) = rival {
            r.insert(0, a);
            return fail("another family satisfies all three clauses", r);
        }
    }
    Ok(AxiomStatus::new(
        "P6′",
        Status::Pass,
        format!("canonical family unique for every nonzero element (sweep cap {cap})"),
    ))
}

fn pairs(xs: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    xs.iter().enumerate().flat_map(move |(i, &x)| xs[i + 1..].iter().map(move |&y| (x, y)))
}

/// Visits every family of pairwise unshared candidates whose join is `a`;
/// stops early when `visit` returns false.
#[allow(clippy::too_many_arguments)]
fn sweep(
    l: &FinLattice,
    a: usize,
    cands: &[usize],
    start: usize,
    cur: &mut Vec<usize>,
    share: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
    visited: &mut usize,
    cap: usize,
) -> Result<bool, FirbyError> {
    *visited += 1;
    if *visited > cap {
        return Err(FirbyError::SearchCapExceeded { what: "(P6′) uniqueness", cap });
    }
    if !cur.is_empty() && l.join_all(cur.iter().copied()) == a && !visit(cur) {
        return Ok(false);
    }
    for i in start..cands.len() {
        let c = cands[i];
        if cur.iter().all(|&x| !share(x, c)) {
            cur.push(c);
            let go_on = sweep(l, a, cands, i + 1, cur, share, visit, visited, cap)?;
            cur.pop();
            if !go_on {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed sets generated by the singletons and, for each nonzero bounding
/// element, the set of 1-points containing it.
fn reconstruct_space(points: &[OnePoint], bounding: &[usize], bottom: usize) -> FiniteSpace {
    let k = points.len();
    let all: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let mut gens: BTreeSet<u32> = (0..k).map(|i| 1u32 << i).collect();
    for &b in bounding.iter().filter(|&&b| b != bottom) {
        gens.insert((0..k).filter(|&i| points[i].contains(b)).fold(0, |m, i| m | 1 << i));
    }
    let mut unions: BTreeSet<u32> = BTreeSet::from([0, all]);
    let mut frontier: Vec<u32> = gens.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        if unions.insert(s) {
            frontier.extend(gens.iter().map(|g| g | s));
        }
    }
    let mut closed = unions.clone();
    let mut frontier: Vec<u32> = unions.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for &u in &unions {
            let t = s & u;
            if closed.insert(t) {
                frontier.push(t);
            }
        }
    }
    let mut closed: Vec<Vec<usize>> =
        closed.into_iter().map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect()).collect();
    closed.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    FiniteSpace { points: k, closed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    fn p(n: usize) -> FinLattice {
        build_partition_lattice(n).unwrap().lattice
    }

    #[test]
    fn bounding_in_p4() {
        let pl = build_partition_lattice(4).unwrap();
        let b = bounding_elements(&pl.lattice);
        // zero, 6 atoms, 4 triples, and the top via the third clause.
        assert_eq!(b.len(), 12);
        for &x in &b {
            let blocks = pl.partitions[x].blocks().iter().filter(|b| b.len() > 1).count();
            assert!(blocks <= 1);
        }
    }

    #[test]
    fn chain_top_not_bounding() {
        let l = FinLattice::new(FinPoset::chain(4)).unwrap();
        assert_eq!(bounding_elements(&l), vec![0, 1]);
    }

    #[test]
    fn one_point_counts() {
        for n in 3..=5 {
            assert_eq!(one_points(&p(n)).unwrap().len(), n);
        }
        let verbatim = |n| one_points_with(&p(n), SingleCollectionRule::Verbatim, 1 << 20).unwrap().len();
        assert_eq!(verbatim(4), 8);
        assert_eq!(verbatim(5), 15);
    }

    #[test]
    fn too_small() {
        assert_eq!(check_firby(&p(2)).unwrap_err(), FirbyError::TooSmall(2));
    }

    #[test]
    fn partition_lattices_pass() {
        for n in 3..=5 {
            let r = check_firby(&p(n)).unwrap();
            assert!(r.pass, "P({n}): {:?}", r.first_failure());
            let s = r.space.unwrap();
            assert_eq!(s.points, n);
            assert!(s.is_discrete());
            assert!(r.isomorphism.is_some());
        }
    }

    #[test]
    fn cube_fails_p2() {
        let l = FinLattice::new(FinPoset::boolean(3)).unwrap();
        let r = check_firby(&l).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().axiom, "P2′");
    }

    #[test]
    fn chain_fails_p1() {
        let l = FinLattice::new(FinPoset::chain(4)).unwrap();
        let r = check_firby(&l).unwrap();
        assert_eq!(r.first_failure().unwrap().axiom, "P1′");
    }
}
