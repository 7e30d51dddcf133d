//! Set partitions of `{1..n}` (optionally of a support subset), the
//! refinement lattice P(n), and the two ways self-maps of `{1..n}` move
//! partitions around: direct image under a permutation and pullback along an
//! arbitrary map.

use crate::poset::{FinLattice, FinPoset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Largest ground set for which full-support partitions are enumerated.
pub const FULL_SUPPORT_CAP: usize = 8;
/// Largest ground set for which partitions of every support are enumerated.
pub const SUPPORTED_CAP: usize = 5;
/// Largest `n` for which P(n) is materialized with meet/join tables.
pub const LATTICE_CAP: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("ground set size must be at least 1")]
    EmptyGround,
    #[error("n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("element {0} is outside the ground set")]
    OutOfRange(usize),
    #[error("element {0} occurs in two blocks")]
    Overlap(usize),
    #[error("empty block")]
    EmptyBlock,
    #[error("partition has empty support")]
    EmptySupport,
    #[error("partitions live on different ground sets or supports")]
    SupportMismatch,
    #[error("map is not a permutation")]
    NotAPermutation,
}

/// A partition of a nonempty `support ⊆ {1..n}`, stored canonically: elements
/// ascending inside each block, blocks ordered by their minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyGround);
        }
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(PartitionError::OutOfRange(x));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(PartitionError::Overlap(x));
                }
            }
        }
        if blocks.is_empty() {
            return Err(PartitionError::EmptySupport);
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    /// Full-support partition from a block label per element (`labels[i]` for element `i+1`).
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut ids: Vec<usize> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match ids.iter().position(|&x| x == l) {
                Some(k) => blocks[k].push(i + 1),
                None => {
                    ids.push(l);
                    blocks.push(vec![i + 1]);
                }
            }
        }
        Self::canonical(n, blocks)
    }

    pub fn discrete(n: usize) -> Self {
        Self::canonical(n, (1..=n).map(|i| vec![i]).collect())
    }

    pub fn one_block(n: usize) -> Self {
        Self::canonical(n, vec![(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn is_full(&self) -> bool {
        self.blocks.iter().map(Vec::len).sum::<usize>() == self.n
    }

    /// Index of the block containing `x`, if `x` is in the support.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }

    /// Block index per element `1..=n`, `None` off the support.
    pub fn block_index(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = Some(k);
            }
        }
        out
    }

    /// Refinement: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.n != other.n || self.support() != other.support() {
            return Err(PartitionError::SupportMismatch);
        }
        let idx = other.block_index();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| idx[x] == idx[b[0]])))
    }

    /// Compact label: `12|3` for n ≤ 9, `1,2|3` otherwise.
    pub fn label(&self) -> String {
        let sep = if self.n <= 9 { "" } else { "," };
        self.blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson { n: self.n, support: self.support(), blocks: self.blocks.clone() }
    }

    pub fn from_json(j: &PartitionJson) -> Result<Self, PartitionError> {
        let p = Self::new(j.n, j.blocks.clone())?;
        let mut support = j.support.clone();
        support.sort_unstable();
        if p.support() != support {
            return Err(PartitionError::SupportMismatch);
        }
        Ok(p)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub support: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

/// A total self-map of `{1..n}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMap {
    n: usize,
    values: Vec<usize>,
}

impl PointMap {
    pub fn new(values: Vec<usize>) -> Result<Self, PartitionError> {
        let n = values.len();
        if n == 0 {
            return Err(PartitionError::EmptyGround);
        }
        if let Some(&x) = values.iter().find(|&&v| v == 0 || v > n) {
            return Err(PartitionError::OutOfRange(x));
        }
        Ok(PointMap { n, values })
    }

    pub fn identity(n: usize) -> Self {
        PointMap { n, values: (1..=n).collect() }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::identity(n);
        m.values.swap(a - 1, b - 1);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x - 1]
    }

    pub fn is_injective(&self) -> bool {
        self.values.iter().collect::<BTreeSet<_>>().len() == self.n
    }

    pub fn is_surjective(&self) -> bool {
        self.is_injective()
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &PointMap) -> PointMap {
        assert_eq!(self.n, g.n);
        PointMap { n: self.n, values: g.values.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Option<PointMap> {
        if !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.n];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Some(PointMap { n: self.n, values: inv })
    }

    /// All `n^n` self-maps in lexicographic order of value lists.
    pub fn all_maps(n: usize) -> Vec<PointMap> {
        let mut out = Vec::new();
        let mut v = vec![1; n];
        loop {
            out.push(PointMap { n, values: v.clone() });
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if v[i] < n {
                    v[i] += 1;
                    break;
                }
                v[i] = 1;
            }
        }
    }

    /// All permutations, identity first.
    pub fn all_permutations(n: usize) -> Vec<PointMap> {
        Self::all_maps(n).into_iter().filter(PointMap::is_injective).collect()
    }

    pub fn label(&self) -> String {
        let sep = if self.n <= 9 { "" } else { "," };
        format!("[{}]", self.values.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
    }

    pub fn to_json(&self) -> PointMapJson {
        PointMapJson { n: self.n, values: self.values.clone() }
    }

    pub fn from_json(j: &PointMapJson) -> Result<Self, PartitionError> {
        if j.values.len() != j.n {
            return Err(PartitionError::SupportMismatch);
        }
        Self::new(j.values.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMapJson {
    pub n: usize,
    pub values: Vec<usize>,
}

/// Restricted growth strings of length `n`, i.e. full-support partitions.
fn full_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rgs.len() {
            out.push(Partition::from_labels(rgs));
            return;
        }
        for v in 0..=max + 1 {
            rgs[i] = v;
            rec(i + 1, max.max(v), rgs, out);
        }
    }
    if n > 0 {
        rgs[0] = 0;
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

/// All partitions of `{1..n}` (or of every nonempty support when
/// `full_support_only` is false), sorted by support, then finest first.
pub fn enumerate_partitions(n: usize, full_support_only: bool) -> Result<Vec<Partition>, PartitionError> {
    let cap = if full_support_only { FULL_SUPPORT_CAP } else { SUPPORTED_CAP };
    enumerate_partitions_capped(n, full_support_only, cap)
}

pub fn enumerate_partitions_capped(n: usize, full_support_only: bool, cap: usize) -> Result<Vec<Partition>, PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyGround);
    }
    if n > cap {
        return Err(PartitionError::CapExceeded { n, cap });
    }
    let mut out = if full_support_only {
        full_partitions(n)
    } else {
        let mut all = Vec::new();
        for mask in 1u32..(1 << n) {
            let support: Vec<usize> = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            for p in full_partitions(support.len()) {
                let blocks = p.blocks().iter().map(|b| b.iter().map(|&i| support[i - 1]).collect()).collect();
                all.push(Partition::canonical(n, blocks));
            }
        }
        all
    };
    out.sort_by(|a, b| {
        (a.support().len(), a.support(), std::cmp::Reverse(a.num_blocks()), &a.blocks).cmp(&(
            b.support().len(),
            b.support(),
            std::cmp::Reverse(b.num_blocks()),
            &b.blocks,
        ))
    });
    Ok(out)
}

/// P(n) together with the partition behind each lattice index.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    pub partitions: Vec<Partition>,
    pub lattice: FinLattice,
}

impl PartitionLattice {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }
}

/// The refinement lattice of full-support partitions of `{1..n}`; bottom is
/// the discrete partition, top the single block.
pub fn build_partition_lattice(n: usize) -> Result<PartitionLattice, PartitionError> {
    if n > LATTICE_CAP {
        return Err(PartitionError::CapExceeded { n, cap: LATTICE_CAP });
    }
    let partitions = enumerate_partitions(n, true)?;
    let index: Vec<Vec<Option<usize>>> = partitions.iter().map(Partition::block_index).collect();
    let labels = partitions.iter().map(Partition::label).collect();
    let poset = FinPoset::from_fn(labels, |i, j| {
        partitions[i].blocks().iter().all(|b| b.iter().all(|&x| index[j][x] == index[j][b[0]]))
    })
    .expect("refinement is a partial order");
    let lattice = FinLattice::new(poset).expect("partitions form a lattice");
    Ok(PartitionLattice { partitions, lattice })
}

/// Blockwise direct image `πp = (πp₁, …, πp_k)`.
pub fn permutation_action(pi: &PointMap, p: &Partition) -> Result<Partition, PartitionError> {
    if !pi.is_injective() {
        return Err(PartitionError::NotAPermutation);
    }
    if pi.n() != p.n() || !p.is_full() {
        return Err(PartitionError::SupportMismatch);
    }
    let blocks = p.blocks().iter().map(|b| b.iter().map(|&x| pi.apply(x)).collect()).collect();
    Ok(Partition::canonical(p.n(), blocks))
}

/// Pullback `x ~ y ⇔ f(x) ~_p f(y)`. Satisfies `g·(f·p) = (f∘g)·p`, so it is a
/// right action of the composition monoid.
pub fn pullback_action(f: &PointMap, p: &Partition) -> Result<Partition, PartitionError> {
    if f.n() != p.n() || !p.is_full() {
        return Err(PartitionError::SupportMismatch);
    }
    let idx = p.block_index();
    let labels: Vec<usize> = (1..=f.n()).map(|x| idx[f.apply(x)].unwrap()).collect();
    Ok(Partition::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Partition::new(2, vec![vec![1], vec![1]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::new(2, vec![vec![3]]), Err(PartitionError::OutOfRange(3)));
        assert_eq!(Partition::new(2, vec![]), Err(PartitionError::EmptySupport));
        assert_eq!(Partition::new(2, vec![vec![]]), Err(PartitionError::EmptyBlock));
        assert_eq!(part(3, &[&[3, 1], &[2]]).blocks(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(1, true).unwrap(), vec![Partition::discrete(1)]);
        assert_eq!(enumerate_partitions(3, true).unwrap().len(), 5);
        let general = enumerate_partitions(2, false).unwrap();
        let labels: Vec<String> = general.iter().map(Partition::label).collect();
        assert_eq!(labels, vec!["1", "2", "1|2", "12"]);
        assert!(matches!(enumerate_partitions(9, true), Err(PartitionError::CapExceeded { .. })));
        assert!(matches!(enumerate_partitions(6, false), Err(PartitionError::CapExceeded { .. })));
        assert_eq!(enumerate_partitions(0, true), Err(PartitionError::EmptyGround));
    }

    #[test]
    fn refinement() {
        let d = Partition::discrete(3);
        for q in enumerate_partitions(3, true).unwrap() {
            assert!(d.refines(&q).unwrap());
            assert!(q.refines(&q).unwrap());
        }
        assert!(!part(3, &[&[1, 2], &[3]]).refines(&part(3, &[&[1], &[2, 3]])).unwrap());
        assert_eq!(part(3, &[&[1]]).refines(&d), Err(PartitionError::SupportMismatch));
    }

    #[test]
    fn small_lattices() {
        let p2 = build_partition_lattice(2).unwrap();
        assert_eq!(p2.lattice.len(), 2);
        let p3 = build_partition_lattice(3).unwrap();
        assert_eq!(p3.lattice.atoms().len(), 3);
        assert_eq!(p3.partitions[p3.lattice.bottom()], Partition::discrete(3));
        assert_eq!(p3.partitions[p3.lattice.top()], Partition::one_block(3));
        assert_eq!(build_partition_lattice(4).unwrap().lattice.len(), 15);
    }

    #[test]
    fn permutation_examples() {
        let swap = PointMap::transposition(3, 1, 2);
        assert_eq!(permutation_action(&swap, &part(3, &[&[1, 3], &[2]])).unwrap(), part(3, &[&[2, 3], &[1]]));
        for pi in PointMap::all_permutations(3) {
            assert_eq!(permutation_action(&pi, &Partition::discrete(3)).unwrap(), Partition::discrete(3));
            assert_eq!(permutation_action(&pi, &Partition::one_block(3)).unwrap(), Partition::one_block(3));
        }
        let f = PointMap::new(vec![1, 1, 2]).unwrap();
        assert_eq!(permutation_action(&f, &Partition::discrete(3)), Err(PartitionError::NotAPermutation));
    }

    #[test]
    fn pullback_examples() {
        let f = PointMap::new(vec![1, 1, 2]).unwrap();
        assert_eq!(pullback_action(&f, &Partition::discrete(3)).unwrap(), part(3, &[&[1, 2], &[3]]));
        let p = part(3, &[&[1, 3], &[2]]);
        assert_eq!(pullback_action(&PointMap::identity(3), &p).unwrap(), p);
        for f in PointMap::all_maps(3) {
            assert_eq!(pullback_action(&f, &Partition::one_block(3)).unwrap(), Partition::one_block(3));
        }
    }

    #[test]
    fn point_maps() {
        assert_eq!(PointMap::all_maps(3).len(), 27);
        assert_eq!(PointMap::all_permutations(3).len(), 6);
        assert_eq!(PointMap::all_permutations(3)[0], PointMap::identity(3));
        let f = PointMap::new(vec![2, 3, 1]).unwrap();
        assert_eq!(f.compose(&f.inverse().unwrap()), PointMap::identity(3));
        assert_eq!(PointMap::new(vec![0]), Err(PartitionError::OutOfRange(0)));
    }
}
