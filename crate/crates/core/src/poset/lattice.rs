use super::{FinPoset, PosetJson};
use serde::Serialize;
use std::ops::Deref;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty poset has no lattice structure")]
    EmptyPoset,
    #[error("elements {x} and {y} have no unique {bound}")]
    NotALattice { x: usize, y: usize, bound: &'static str },
    #[error("lattice is not graded")]
    NotGraded,
}

/// A finite lattice with precomputed, exhaustively verified meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    poset: FinPoset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl Deref for FinLattice {
    type Target = FinPoset;
    fn deref(&self) -> &FinPoset {
        &self.poset
    }
}

/// Rank function, present only when every maximal chain of every interval
/// has the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rank {
    Graded(Vec<usize>),
    NotGraded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub covers: Vec<(usize, usize)>,
    pub atoms: Vec<usize>,
    pub coatoms: Vec<usize>,
    pub rank: Rank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemimodularVerdict {
    pub holds: bool,
    /// `(a, b)` with `a` covering `a ∧ b` but `a ∨ b` not covering `b`.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Geometric {
    pub geometric: bool,
    pub semimodular: SemimodularVerdict,
    pub atomistic: bool,
    /// An element that is not the join of the atoms below it.
    pub atomistic_witness: Option<usize>,
    /// Which conjunct failed first, if any.
    pub failed: Option<&'static str>,
}

/// Turns a poset into a lattice, verifying that every pair has a unique meet and join.
pub fn as_lattice(p: FinPoset) -> Result<FinLattice, LatticeError> {
    FinLattice::new(p)
}

impl FinLattice {
    pub fn new(poset: FinPoset) -> Result<Self, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::EmptyPoset);
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        let down_deg: Vec<usize> = (0..n).map(|x| poset.down_degree(x)).collect();
        let up_deg: Vec<usize> = (0..n).map(|x| poset.up_degree(x)).collect();
        for x in 0..n {
            for y in x..n {
                let lower = poset.down_row(x).and(poset.down_row(y));
                let m = lower
                    .iter()
                    .max_by_key(|&z| (down_deg[z], usize::MAX - z))
                    .filter(|&z| lower.is_subset(poset.down_row(z)))
                    .ok_or(LatticeError::NotALattice { x, y, bound: "meet" })?;
                let upper = poset.up_row(x).and(poset.up_row(y));
                let j = upper
                    .iter()
                    .max_by_key(|&z| (up_deg[z], usize::MAX - z))
                    .filter(|&z| upper.is_subset(poset.up_row(z)))
                    .ok_or(LatticeError::NotALattice { x, y, bound: "join" })?;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
            }
        }
        let bottom = poset.least().expect("a lattice has a least element");
        let top = poset.greatest().expect("a lattice has a greatest element");
        Ok(FinLattice { poset, meet, join, bottom, top })
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinPoset {
        self.poset
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers(self.bottom, x)).collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.covers(x, self.top)).collect()
    }

    /// Atoms below `x`.
    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.atoms().into_iter().filter(|&a| self.leq(a, x)).collect()
    }

    /// Rank from the bottom if all maximal chains of every interval agree in length.
    pub fn rank(&self) -> Result<Vec<usize>, LatticeError> {
        // min and max chain length from bottom; graded iff they coincide everywhere.
        let n = self.len();
        let mut lo = vec![usize::MAX; n];
        let mut hi = vec![0usize; n];
        lo[self.bottom] = 0;
        let covers = self.cover_pairs();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(x, y) in &covers {
            preds[y].push(x);
        }
        for x in self.linear_extension() {
            if x == self.bottom {
                continue;
            }
            lo[x] = preds[x].iter().map(|&p| lo[p] + 1).min().unwrap();
            hi[x] = preds[x].iter().map(|&p| hi[p] + 1).max().unwrap();
        }
        if lo == hi {
            Ok(lo)
        } else {
            Err(LatticeError::NotGraded)
        }
    }

    pub fn structure_report(&self) -> StructureReport {
        StructureReport {
            covers: self.cover_pairs(),
            atoms: self.atoms(),
            coatoms: self.coatoms(),
            rank: match self.rank() {
                Ok(r) => Rank::Graded(r),
                Err(_) => Rank::NotGraded,
            },
        }
    }

    /// `a ∨ b` covers `b` whenever `a` covers `a ∧ b`.
    pub fn is_semimodular(&self) -> SemimodularVerdict {
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.covers(self.meet(a, b), a) && !self.covers(b, self.join(a, b)) {
                    return SemimodularVerdict { holds: false, witness: Some((a, b)) };
                }
            }
        }
        SemimodularVerdict { holds: true, witness: None }
    }

    /// First element that is not the join of the atoms below it.
    pub fn atomistic_failure(&self) -> Option<usize> {
        let atoms = self.atoms();
        (0..self.len()).find(|&x| self.join_all(atoms.iter().copied().filter(|&a| self.leq(a, x))) != x)
    }

    pub fn is_atomistic(&self) -> bool {
        self.atomistic_failure().is_none()
    }

    /// Weaker reading of "atomic": every nonzero element dominates an atom.
    pub fn is_weakly_atomic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.len()).all(|x| x == self.bottom || atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// Semimodular and atomistic.
    pub fn is_geometric(&self) -> Geometric {
        let semimodular = self.is_semimodular();
        let atomistic_witness = self.atomistic_failure();
        let atomistic = atomistic_witness.is_none();
        let failed = if !semimodular.holds {
            Some("semimodularity")
        } else if !atomistic {
            Some("atomisticity")
        } else {
            None
        };
        Geometric { geometric: failed.is_none(), semimodular, atomistic, atomistic_witness, failed }
    }

    /// `x` is modular when `a ∨ (x ∧ y) = (a ∨ x) ∧ y` for all `a <= y`.
    pub fn is_modular_element(&self, x: usize) -> bool {
        (0..self.len()).all(|y| self.below(y).all(|a| self.join(a, self.meet(x, y)) == self.meet(self.join(a, x), y)))
    }

    pub fn modular_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_modular_element(x)).collect()
    }

    /// The principal filter `{y : y >= x}` as a lattice, with the index map into `self`.
    pub fn upset(&self, x: usize) -> (FinLattice, Vec<usize>) {
        let elems: Vec<usize> = self.above(x).collect();
        let sub = self.poset.induced(&elems);
        (FinLattice::new(sub).expect("principal filter of a lattice is a lattice"), elems)
    }

    pub fn to_json(&self) -> PosetJson {
        self.poset.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::are_isomorphic;

    /// N₅: 0 < a < b < 1, 0 < c < 1.
    pub(crate) fn pentagon() -> FinLattice {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let p = FinPoset::from_generators(labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        FinLattice::new(p).unwrap()
    }

    fn diamond() -> FinLattice {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let p = FinPoset::from_generators(labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        FinLattice::new(p).unwrap()
    }

    #[test]
    fn degenerate_lattice() {
        let l = FinLattice::new(FinPoset::chain(1)).unwrap();
        assert_eq!(l.bottom(), l.top());
        assert_eq!(FinLattice::new(FinPoset::chain(0)), Err(LatticeError::EmptyPoset));
    }

    #[test]
    fn n_poset_is_not_a_lattice() {
        // a < c, b < c, b < d: no top, no bottom.
        let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
        let p = FinPoset::from_generators(labels, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(FinLattice::new(p), Err(LatticeError::NotALattice { .. })));
    }

    #[test]
    fn pentagon_fails_semimodularity_and_grading() {
        let l = pentagon();
        let v = l.is_semimodular();
        assert!(!v.holds);
        let (a, b) = v.witness.unwrap();
        assert!(l.covers(l.meet(a, b), a) && !l.covers(b, l.join(a, b)));
        assert_eq!(l.structure_report().rank, Rank::NotGraded);
        assert_eq!(l.is_geometric().failed, Some("semimodularity"));
    }

    #[test]
    fn chain_properties() {
        let l = FinLattice::new(FinPoset::chain(3)).unwrap();
        assert!(l.is_semimodular().holds);
        let g = l.is_geometric();
        assert_eq!(g.failed, Some("atomisticity"));
        assert_eq!(g.atomistic_witness, Some(2));
        assert!(l.is_weakly_atomic());
    }

    #[test]
    fn boolean_cube() {
        let l = FinLattice::new(FinPoset::boolean(3)).unwrap();
        let r = l.structure_report();
        assert_eq!(r.atoms.len(), 3);
        assert_eq!(r.rank, Rank::Graded((0..8usize).map(|m| m.count_ones() as usize).collect()));
        assert_eq!(l.modular_elements().len(), 8);
        assert!(l.is_geometric().geometric);
    }

    #[test]
    fn bounds_always_modular() {
        for l in [pentagon(), diamond()] {
            let m = l.modular_elements();
            assert!(m.contains(&l.bottom()) && m.contains(&l.top()));
        }
    }

    #[test]
    fn upsets() {
        let l = diamond();
        let (whole, _) = l.upset(l.bottom());
        assert_eq!(whole, l);
        assert_eq!(l.upset(l.top()).0.len(), 1);
        let (u, map) = l.upset(1);
        assert_eq!(map, vec![1, 4]);
        assert!(are_isomorphic(&u, &FinPoset::chain(2)).is_some());
    }
}
