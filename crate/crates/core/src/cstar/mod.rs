//! Exact finite model of the commutative subalgebras of ℂⁿ.
//!
//! A subalgebra is the span of the indicator vectors of the blocks of a
//! partition of some support `S ⊆ {1..n}`. An injective *-homomorphism
//! between two of them is stored dually, as a partial map from target blocks
//! onto source blocks: the image of `x` takes the value `x_b` on every target
//! block sent to `b`, and 0 on unmapped blocks.

mod compare;
mod ideals;

pub use compare::{comparison_report, weak_terminal_report, ComparisonReport, WeakTerminal, WeakTerminalReport};
pub use ideals::{
    bundle_projections, direct_image, ideal_condition_holds, ideal_condition_morphisms, IdealSubcategory, PartialMap,
    ProjectionBundle,
};

use crate::fincat::{CategoryError, FinCategory, Morphism};
use crate::partition::{enumerate_partitions_capped, Partition, PartitionError, PartitionJson};
use crate::poset::FinPoset;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

/// Largest `n` for which whole categories are built.
pub const CSTAR_CAP: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CstarError {
    #[error("n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("image of the subalgebra is zero")]
    ZeroImage,
    #[error("subalgebras live in different algebras")]
    SizeMismatch,
    #[error("block map does not describe an injective *-homomorphism")]
    NotAHom,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A nonzero subalgebra of ℂⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subalg(pub Partition);

impl Subalg {
    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn dim(&self) -> usize {
        self.0.num_blocks()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.0.blocks()
    }

    pub fn is_unital(&self) -> bool {
        self.0.is_full()
    }

    pub fn label(&self) -> String {
        self.0.label()
    }

    /// Block indicator vectors as 0/1 coordinate vectors of length `n`.
    pub fn indicators(&self) -> Vec<Vec<u8>> {
        self.blocks()
            .iter()
            .map(|b| (1..=self.n()).map(|i| u8::from(b.contains(&i))).collect())
            .collect()
    }

    /// `self ⊆ other` as sets of vectors: every block of `self` is a union of
    /// blocks of `other`.
    pub fn contained_in(&self, other: &Subalg) -> bool {
        let idx = other.0.block_index();
        self.blocks().iter().all(|b| {
            b.iter().all(|&x| idx[x].is_some())
                && other.blocks().iter().all(|ob| {
                    let inside = ob.iter().filter(|x| b.contains(x)).count();
                    inside == 0 || inside == ob.len()
                })
        })
    }

    pub fn to_json(&self) -> PartitionJson {
        self.0.to_json()
    }

    pub fn from_json(j: &PartitionJson) -> Result<Self, CstarError> {
        Ok(Subalg(Partition::from_json(j)?))
    }
}

/// All nonzero subalgebras of ℂⁿ (or only the unital ones), smallest support
/// first, then by dimension.
pub fn enumerate_subalgebras(n: usize, unital_objects: bool) -> Result<Vec<Subalg>, CstarError> {
    if n > CSTAR_CAP {
        return Err(CstarError::CapExceeded { n, cap: CSTAR_CAP });
    }
    let mut out: Vec<Subalg> = enumerate_partitions_capped(n, unital_objects, CSTAR_CAP)?.into_iter().map(Subalg).collect();
    out.sort_by_key(|s| (s.0.support().len(), s.0.support(), s.dim(), s.blocks().to_vec()));
    Ok(out)
}

/// An injective *-homomorphism `src → tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CstarHom {
    pub src: Subalg,
    pub tgt: Subalg,
    /// For each block of `tgt`, the block of `src` whose coordinate it copies.
    pub block_map: Vec<Option<usize>>,
}

impl CstarHom {
    pub fn new(src: Subalg, tgt: Subalg, block_map: Vec<Option<usize>>) -> Result<Self, CstarError> {
        if src.n() != tgt.n() {
            return Err(CstarError::SizeMismatch);
        }
        let mut hit = vec![false; src.dim()];
        if block_map.len() != tgt.dim() {
            return Err(CstarError::NotAHom);
        }
        for &b in block_map.iter().flatten() {
            if b >= src.dim() {
                return Err(CstarError::NotAHom);
            }
            hit[b] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(CstarError::NotAHom);
        }
        Ok(CstarHom { src, tgt, block_map })
    }

    pub fn identity(c: &Subalg) -> Self {
        CstarHom { src: c.clone(), tgt: c.clone(), block_map: (0..c.dim()).map(Some).collect() }
    }

    pub fn unit_preserving(&self) -> bool {
        self.block_map.iter().all(Option::is_some)
    }

    /// `g ∘ self`, defined when `self.tgt == g.src`.
    pub fn then(&self, g: &CstarHom) -> Option<CstarHom> {
        (self.tgt == g.src).then(|| CstarHom {
            src: self.src.clone(),
            tgt: g.tgt.clone(),
            block_map: g.block_map.iter().map(|j| j.and_then(|j| self.block_map[j])).collect(),
        })
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim() == self.tgt.dim() && self.unit_preserving()
    }

    /// Source and target are literally nested and the map is the identity on vectors.
    pub fn is_inclusion(&self) -> bool {
        let src_ind = self.src.indicators();
        self.apply_indicators() == src_ind
    }

    /// Image of each source block indicator, as a coordinate vector in ℂⁿ.
    pub fn apply_indicators(&self) -> Vec<Vec<u8>> {
        let n = self.src.n();
        (0..self.src.dim())
            .map(|b| {
                let mut v = vec![0u8; n];
                for (j, tb) in self.tgt.blocks().iter().enumerate() {
                    if self.block_map[j] == Some(b) {
                        for &x in tb {
                            v[x - 1] = 1;
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// Matrix in the block-indicator bases: `m[j][b] = 1` iff target block `j` copies source block `b`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        self.block_map.iter().map(|j| (0..self.src.dim()).map(|b| u8::from(*j == Some(b))).collect()).collect()
    }

    pub fn label(&self) -> String {
        let map: Vec<String> =
            self.block_map.iter().map(|b| b.map(|b| (b + 1).to_string()).unwrap_or_else(|| "-".into())).collect();
        format!("{}→{}[{}]", self.src.label(), self.tgt.label(), map.join(","))
    }

    pub fn to_json(&self) -> CstarHomJson {
        CstarHomJson {
            src: self.src.to_json(),
            tgt: self.tgt.to_json(),
            block_map: self.block_map.iter().enumerate().filter_map(|(j, b)| b.map(|b| [j, b])).collect(),
        }
    }

    pub fn from_json(j: &CstarHomJson) -> Result<Self, CstarError> {
        let (src, tgt) = (Subalg::from_json(&j.src)?, Subalg::from_json(&j.tgt)?);
        let mut map = vec![None; tgt.dim()];
        for &[t, s] in &j.block_map {
            if t >= map.len() {
                return Err(CstarError::NotAHom);
            }
            map[t] = Some(s);
        }
        Self::new(src, tgt, map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstarHomJson {
    pub src: PartitionJson,
    pub tgt: PartitionJson,
    /// `[target block, source block]` pairs.
    pub block_map: Vec<[usize; 2]>,
}

fn rank(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Decides whether a `dim tgt × dim src` matrix in block-indicator bases is an
/// injective *-homomorphism: products of basis vectors are preserved
/// (`M(e_a)·M(e_b) = δ_ab M(e_a)`), entries are real, and the rank is full.
pub fn matrix_oracle(m: &[Vec<u8>], src_dim: usize) -> bool {
    if m.iter().any(|r| r.len() != src_dim) {
        return false;
    }
    for a in 0..src_dim {
        for b in 0..src_dim {
            for row in m {
                let prod = row[a] * row[b];
                let want = if a == b { row[a] } else { 0 };
                if prod != want {
                    return false;
                }
            }
        }
    }
    let wide: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
    rank(wide) == src_dim
}

/// All injective *-homomorphisms `src → tgt`.
pub fn hom_set(src: &Subalg, tgt: &Subalg, unit_preserving_only: bool) -> Vec<CstarHom> {
    if src.n() != tgt.n() {
        return Vec::new();
    }
    let (k, d) = (src.dim(), tgt.dim());
    let choices = if unit_preserving_only { k } else { k + 1 };
    let mut out = Vec::new();
    let mut digits = vec![0usize; d];
    loop {
        let map: Vec<Option<usize>> = digits.iter().map(|&x| (x < k).then_some(x)).collect();
        if let Ok(h) = CstarHom::new(src.clone(), tgt.clone(), map) {
            debug_assert!(matrix_oracle(&h.matrix(), k));
            out.push(h);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < choices {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstarFlags {
    /// Only full-support subalgebras.
    pub unital: bool,
    /// Only homomorphisms sending the unit to the unit.
    pub unit_preserving: bool,
}

impl CstarFlags {
    pub const UNITAL: CstarFlags = CstarFlags { unital: true, unit_preserving: false };
    pub const GENERAL: CstarFlags = CstarFlags { unital: false, unit_preserving: false };
}

/// The poset of subalgebras under inclusion.
#[derive(Clone, Debug)]
pub struct CsubModel {
    pub objects: Vec<Subalg>,
    pub poset: FinPoset,
}

pub fn build_csub(n: usize, unital: bool) -> Result<CsubModel, CstarError> {
    let objects = enumerate_subalgebras(n, unital)?;
    let labels = objects.iter().map(Subalg::label).collect();
    let poset = FinPoset::from_fn(labels, |i, j| objects[i].contained_in(&objects[j])).expect("inclusion is a partial order");
    Ok(CsubModel { objects, poset })
}

/// The category of subalgebras and injective *-homomorphisms.
#[derive(Clone, Debug)]
pub struct CinjModel {
    pub objects: Vec<Subalg>,
    pub homs: Vec<CstarHom>,
    pub category: FinCategory,
}

impl CinjModel {
    pub fn object_index(&self, s: &Subalg) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }

    pub fn morphism_index(&self, h: &CstarHom) -> Option<usize> {
        self.homs.iter().position(|g| g == h)
    }
}

pub fn build_cinj(n: usize, flags: CstarFlags) -> Result<CinjModel, CstarError> {
    let objects = enumerate_subalgebras(n, flags.unital)?;
    let mut homs = Vec::new();
    let mut morphisms = Vec::new();
    for (i, s) in objects.iter().enumerate() {
        for (j, t) in objects.iter().enumerate() {
            for h in hom_set(s, t, flags.unit_preserving) {
                morphisms.push(Morphism { label: h.label(), dom: i, cod: j });
                homs.push(h);
            }
        }
    }
    let index: HashMap<&CstarHom, usize> = homs.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let identities = objects.iter().map(|o| index[&CstarHom::identity(o)]).collect();
    let labels = objects.iter().map(Subalg::label).collect();
    let category = FinCategory::from_fn(labels, morphisms, identities, |g, f| {
        homs[f].then(&homs[g]).and_then(|h| index.get(&h).copied())
    })?;
    drop(index);
    Ok(CinjModel { objects, homs, category })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, blocks: Vec<Vec<usize>>) -> Subalg {
        Subalg(Partition::new(n, blocks).unwrap())
    }

    #[test]
    fn object_counts() {
        assert_eq!(enumerate_subalgebras(2, true).unwrap().len(), 2);
        assert_eq!(enumerate_subalgebras(2, false).unwrap().len(), 4);
        assert_eq!(enumerate_subalgebras(1, false).unwrap().len(), 1);
        assert!(enumerate_subalgebras(5, true).is_err());
    }

    #[test]
    fn hom_counts_n2() {
        let (t, d) = (sub(2, vec![vec![1, 2]]), sub(2, vec![vec![1], vec![2]]));
        assert_eq!(hom_set(&t, &t, false).len(), 1);
        assert_eq!(hom_set(&t, &d, false).len(), 3);
        assert_eq!(hom_set(&t, &d, true).len(), 1);
        assert_eq!(hom_set(&d, &t, false).len(), 0);
        let c = build_cinj(2, CstarFlags::UNITAL).unwrap();
        assert_eq!(c.category.hom_counts(), vec![vec![1, 3], vec![0, 2]]);
        assert!(c.category.left_cancellation_failure().is_none());
        let g = build_cinj(2, CstarFlags::GENERAL).unwrap();
        let (a, b) = (g.object_index(&sub(2, vec![vec![1]])).unwrap(), g.object_index(&sub(2, vec![vec![2]])).unwrap());
        assert_eq!(g.category.hom(a, b).len(), 1);
        assert_eq!(build_cinj(1, CstarFlags::GENERAL).unwrap().category.num_morphisms(), 1);
    }

    #[test]
    fn containment() {
        let m = build_csub(2, false).unwrap();
        let top = m.poset.greatest().unwrap();
        assert_eq!(m.objects[top], sub(2, vec![vec![1], vec![2]]));
        assert_eq!((0..4).filter(|&x| m.poset.down_degree(x) == 0).count(), 3);
    }

    #[test]
    fn json_round_trip() {
        let h = hom_set(&sub(3, vec![vec![1], vec![2, 3]]), &sub(3, vec![vec![1], vec![2], vec![3]]), false);
        for x in h {
            assert_eq!(CstarHom::from_json(&x.to_json()).unwrap(), x);
        }
    }

    #[test]
    fn inclusion_detection() {
        let (t, d) = (sub(2, vec![vec![1, 2]]), sub(2, vec![vec![1], vec![2]]));
        let hs = hom_set(&t, &d, false);
        assert_eq!(hs.iter().filter(|h| h.is_inclusion()).count(), 1);
        assert!(CstarHom::identity(&d).is_inclusion());
    }
}
