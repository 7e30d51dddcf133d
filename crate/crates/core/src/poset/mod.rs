//! Finite posets and lattices.
//!
//! Elements are addressed by dense `usize` indices; labels are carried only
//! for I/O. Every constructor checks the order axioms exhaustively, so a
//! value of [`FinPoset`] or [`FinLattice`] is always valid.

mod dot;
mod iso;
mod lattice;
mod mobius;

pub use dot::hasse_dot;
pub use iso::{are_isomorphic, is_order_isomorphism};
pub use lattice::{as_lattice, FinLattice, Geometric, LatticeError, Rank, SemimodularVerdict, StructureReport};
pub use mobius::{IntPolynomial, MobiusVector};

use crate::bits::BitRow;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
}

/// A finite partially ordered set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    down: Vec<BitRow>,
    up: Vec<BitRow>,
}

impl FinPoset {
    /// Builds a poset from the full relation `leq` (all related pairs).
    pub fn new(labels: Vec<String>, leq: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for &(i, j) in leq {
            for index in [i, j] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, len: n });
                }
            }
            rel[i * n + j] = true;
        }
        Self::from_fn(labels, |i, j| rel[i * n + j])
    }

    /// Builds a poset from an arbitrary generating relation, taking its
    /// reflexive-transitive closure. Fails only on cycles or bad indices.
    pub fn from_generators(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(PosetError::IndexOutOfRange { index, len: n });
                }
            }
            rel[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_fn(labels, |i, j| rel[i * n + j])
    }

    /// Builds a poset from a predicate, checking all three order axioms.
    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut down = vec![BitRow::new(n); n];
        let mut up = vec![BitRow::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    down[j].set(i);
                    up[i].set(j);
                }
            }
        }
        for i in 0..n {
            if !down[i].get(i) {
                return Err(PosetError::NotReflexive(i));
            }
            for j in up[i].iter() {
                if j != i && up[j].get(i) {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        // i <= j <= k  =>  up[k] ⊆ up[j] ⊆ up[i] is needed; check up[j] ⊆ up[i] for every j >= i.
        for i in 0..n {
            for j in up[i].iter() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].iter().find(|&k| !up[i].get(k)).unwrap();
                    return Err(PosetError::NotTransitive(i, j, k));
                }
            }
        }
        Ok(FinPoset { labels, down, up })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).unwrap()
    }

    /// The Boolean lattice of subsets of an `n`-set, elements indexed by bitmask.
    pub fn boolean(n: usize) -> Self {
        let labels = (0..1usize << n).map(|m| format!("{m:0width$b}", width = n.max(1))).collect();
        Self::from_fn(labels, |i, j| i & !j == 0).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Elements `y` with `y <= x`.
    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[x].iter()
    }

    /// Elements `y` with `x <= y`.
    pub fn above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[x].iter()
    }

    /// Number of elements strictly below `x`.
    pub fn down_degree(&self, x: usize) -> usize {
        self.down[x].count() - 1
    }

    /// Number of elements strictly above `x`.
    pub fn up_degree(&self, x: usize) -> usize {
        self.up[x].count() - 1
    }

    pub(crate) fn down_row(&self, x: usize) -> &BitRow {
        &self.down[x]
    }

    pub(crate) fn up_row(&self, x: usize) -> &BitRow {
        &self.up[x]
    }

    /// `y` covers `x`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && self.up[x].and(&self.down[y]).count() == 2
    }

    /// All cover pairs `(x, y)` with `y` covering `x`, in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Indices sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down_degree(x), x));
        order
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.linear_extension() {
            h[x] = self.down[x].iter().filter(|&y| y != x).map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Order dual: `x <= y` here iff `y <= x` in the result.
    pub fn dual(&self) -> Self {
        FinPoset { labels: self.labels.clone(), down: self.up.clone(), up: self.down.clone() }
    }

    /// The induced subposet on `elements`, in the given order.
    pub fn induced(&self, elements: &[usize]) -> Self {
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_fn(labels, |i, j| self.leq(elements[i], elements[j])).expect("induced order is an order")
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count() == self.len())
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.down[x].count() == self.len())
    }

    pub fn to_json(&self) -> PosetJson {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                leq.push([i, j]);
            }
        }
        PosetJson { elements: self.labels.clone(), leq }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, PosetError> {
        let pairs: Vec<(usize, usize)> = json.leq.iter().map(|p| (p[0], p[1])).collect();
        Self::new(json.elements.clone(), &pairs)
    }
}

/// Wire form: every related pair is listed, including reflexive ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn rejects_bad_relations() {
        assert_eq!(FinPoset::new(labels(2), &[(0, 0)]), Err(PosetError::NotReflexive(1)));
        assert_eq!(
            FinPoset::new(labels(2), &[(0, 0), (1, 1), (0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert!(matches!(
            FinPoset::new(labels(3), &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]),
            Err(PosetError::NotTransitive(0, 1, 2))
        ));
        assert!(matches!(
            FinPoset::new(vec!["a".into(), "a".into()], &[]),
            Err(PosetError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn closure_and_covers() {
        let p = FinPoset::from_generators(labels(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.heights(), vec![0, 1, 2]);
        assert!(FinPoset::from_generators(labels(2), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn json_lists_closure() {
        let p = FinPoset::chain(3);
        let j = p.to_json();
        assert_eq!(j.leq.len(), 6);
        assert_eq!(FinPoset::from_json(&j).unwrap(), p);
    }
}
