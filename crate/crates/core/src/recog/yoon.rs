use crate::partition::{build_partition_lattice, LATTICE_CAP};
use crate::poset::{are_isomorphic, FinLattice, IntPolynomial, LatticeError};
use crate::report::{first_failure, AxiomStatus, Status};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct YoonVerdict {
    pub pass: bool,
    /// `n` such that the lattice is P(n+1); present iff `pass`.
    pub inferred_n: Option<usize>,
    pub axioms: Vec<AxiomStatus>,
    /// Explicit isomorphism onto P(n+1), index `i` of the input to index `iso[i]`.
    pub isomorphism: Option<Vec<usize>>,
    pub characteristic_polynomial: Option<String>,
}

impl YoonVerdict {
    pub fn first_failure(&self) -> Option<&AxiomStatus> {
        first_failure(&self.axioms)
    }
}

const AXIOMS: [&str; 4] = ["P1", "P2", "P3", "P4"];

/// Decides whether `l` is a partition lattice P(n+1) by (P1)–(P4), stopping at
/// the first failing axiom. A pass is confirmed by constructing an explicit
/// isomorphism to P(n+1).
pub fn check_yoon(l: &FinLattice) -> Result<YoonVerdict, LatticeError> {
    let mut axioms = Vec::new();
    let fail = |mut axioms: Vec<AxiomStatus>, charpoly: Option<String>| {
        let done = axioms.len();
        axioms.extend(AXIOMS[done..].iter().map(|a| AxiomStatus::not_evaluated(a)));
        Ok(YoonVerdict { pass: false, inferred_n: None, axioms, isomorphism: None, characteristic_polynomial: charpoly })
    };

    let g = l.is_geometric();
    if !g.geometric {
        let witness = match g.semimodular.witness {
            Some((a, b)) => vec![a, b],
            None => g.atomistic_witness.into_iter().collect(),
        };
        axioms.push(
            AxiomStatus::new("P1", Status::Fail, format!("not geometric: {} fails", g.failed.unwrap()))
                .with_witness(witness),
        );
        return fail(axioms, None);
    }
    axioms.push(AxiomStatus::new("P1", Status::Pass, "semimodular and atomistic"));

    let rank = l.rank()?;
    let mut p2 = AxiomStatus::new("P2", Status::Pass, "upsets of equal-rank elements are isomorphic");
    let top_rank = rank[l.top()];
    'levels: for r in 0..=top_rank {
        let level: Vec<usize> = (0..l.len()).filter(|&x| rank[x] == r).collect();
        let (first, _) = l.upset(level[0]);
        for &y in &level[1..] {
            if are_isomorphic(&first, &l.upset(y).0).is_none() {
                p2 = AxiomStatus::new("P2", Status::Fail, format!("rank {r}: ↑{} ≇ ↑{y}", level[0]))
                    .with_witness(vec![level[0], y]);
                break 'levels;
            }
        }
    }
    let p2_ok = p2.status.ok();
    axioms.push(p2);
    if !p2_ok {
        return fail(axioms, None);
    }

    let modular_coatoms: Vec<usize> = l.coatoms().into_iter().filter(|&c| l.is_modular_element(c)).collect();
    if l.len() == 1 {
        axioms.push(AxiomStatus::new("P3", Status::Trivial, "one-element lattice has no coatoms"));
    } else if modular_coatoms.is_empty() {
        axioms.push(AxiomStatus::new("P3", Status::Fail, "no coatom is modular"));
        return fail(axioms, None);
    } else {
        axioms.push(
            AxiomStatus::new("P3", Status::Pass, format!("{} modular coatom(s)", modular_coatoms.len()))
                .with_witness(modular_coatoms),
        );
    }

    let n = top_rank;
    let chi = l.characteristic_polynomial()?;
    let expected = IntPolynomial::from_roots(1..=n as i64);
    if chi != expected {
        axioms.push(AxiomStatus::new("P4", Status::Fail, format!("characteristic polynomial {chi} ≠ {expected}")));
        return fail(axioms, Some(chi.to_string()));
    }
    axioms.push(AxiomStatus::new("P4", Status::Pass, format!("characteristic polynomial {chi}")));

    // Independent confirmation against the concrete partition lattice.
    let isomorphism = if n < LATTICE_CAP {
        let target = build_partition_lattice(n + 1).expect("within cap");
        let iso = are_isomorphic(l, &target.lattice);
        if iso.is_none() {
            axioms.push(AxiomStatus::new("oracle", Status::Fail, format!("(P1)–(P4) hold but no isomorphism onto P({})", n + 1)));
            return Ok(YoonVerdict { pass: false, inferred_n: None, axioms, isomorphism: None, characteristic_polynomial: Some(chi.to_string()) });
        }
        iso
    } else {
        None
    };
    assert!(is_bell_number(l.len()), "Yoon check passed on a lattice whose size {} is not a Bell number", l.len());
    Ok(YoonVerdict { pass: true, inferred_n: Some(n), axioms, isomorphism, characteristic_polynomial: Some(chi.to_string()) })
}

fn is_bell_number(k: usize) -> bool {
    // Bell triangle.
    let mut row = vec![1usize];
    let mut bells = vec![1usize];
    while *bells.last().unwrap() < k {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        bells.push(next[0]);
        row = next;
    }
    bells.contains(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    #[test]
    fn bell_guard() {
        assert!([1, 2, 5, 15, 52, 203].iter().all(|&b| is_bell_number(b)));
        assert!(![3, 4, 6, 8, 14, 16].iter().any(|&b| is_bell_number(b)));
    }

    #[test]
    fn small_partition_lattices_pass() {
        for n in 1..=4 {
            let l = build_partition_lattice(n).unwrap().lattice;
            let v = check_yoon(&l).unwrap();
            assert!(v.pass, "P({n})");
            assert_eq!(v.inferred_n, Some(n - 1));
        }
    }

    #[test]
    fn cube_fails_p4() {
        let l = FinLattice::new(FinPoset::boolean(3)).unwrap();
        let v = check_yoon(&l).unwrap();
        assert!(!v.pass);
        assert_eq!(v.first_failure().unwrap().axiom, "P4");
        assert_eq!(v.characteristic_polynomial.as_deref(), Some("λ³ − 3λ² + 3λ − 1"));
    }

    #[test]
    fn chain_fails_p1() {
        let l = FinLattice::new(FinPoset::chain(4)).unwrap();
        let v = check_yoon(&l).unwrap();
        let f = v.first_failure().unwrap();
        assert_eq!(f.axiom, "P1");
        assert!(f.detail.contains("atomisticity"));
        assert_eq!(v.axioms[3].status, Status::NotEvaluated);
    }
}
