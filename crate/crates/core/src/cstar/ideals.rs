use super::{build_cinj, enumerate_subalgebras, CinjModel, CstarError, CstarFlags, CstarHom, Subalg};
use crate::fincat::FinCategory;
use crate::partition::Partition;
use crate::poset::{are_isomorphic, FinLattice, FinPoset};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A partial map `{1..m} ⇀ {1..n}`, the dual of a *-homomorphism `ℂⁿ → ℂᵐ`
/// with `φ(x)_i = x_{f(i)}` (0 where `f` is undefined).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMap {
    pub n: usize,
    /// 1-based values, one per point of `{1..m}`.
    pub values: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(n: usize, values: Vec<Option<usize>>) -> Result<Self, CstarError> {
        if values.iter().flatten().any(|&v| v == 0 || v > n) {
            return Err(CstarError::SizeMismatch);
        }
        Ok(PartialMap { n, values })
    }

    pub fn total(n: usize, values: &[usize]) -> Result<Self, CstarError> {
        Self::new(n, values.iter().map(|&v| Some(v)).collect())
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }
}

/// `φ(C) ⊆ ℂᵐ`: coordinates `i` whose `f(i)` lies in the same block of `C`
/// are tied together; those mapping off the support vanish.
pub fn direct_image(phi: &PartialMap, c: &Subalg) -> Result<Subalg, CstarError> {
    if phi.n != c.n() {
        return Err(CstarError::SizeMismatch);
    }
    let idx = c.0.block_index();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); c.dim()];
    for (i, v) in phi.values.iter().enumerate() {
        if let Some(b) = v.and_then(|v| idx[v]) {
            blocks[b].push(i + 1);
        }
    }
    blocks.retain(|b| !b.is_empty());
    if blocks.is_empty() {
        return Err(CstarError::ZeroImage);
    }
    Ok(Subalg(Partition::new(phi.m(), blocks)?))
}

/// Checks `h⁻¹(I_S ∩ tgt) = I_S ∩ src` for every coordinate subset `S`,
/// returning the first failing `S` (1-based) otherwise.
pub fn ideal_condition_holds(h: &CstarHom) -> Result<(), Vec<usize>> {
    let n = h.src.n();
    for mask in 0u32..(1 << n) {
        let inside = |b: &[usize]| b.iter().all(|&x| mask >> (x - 1) & 1 == 1);
        // Source blocks spanning I_S ∩ src.
        let meet: BTreeSet<usize> = (0..h.src.dim()).filter(|&b| inside(&h.src.blocks()[b])).collect();
        // Source blocks whose coordinate lands outside S somewhere must vanish.
        let killed: BTreeSet<usize> = h
            .tgt
            .blocks()
            .iter()
            .zip(&h.block_map)
            .filter(|(tb, _)| !inside(tb))
            .filter_map(|(_, b)| *b)
            .collect();
        let pre: BTreeSet<usize> = (0..h.src.dim()).filter(|b| !killed.contains(b)).collect();
        if pre != meet {
            return Err((1..=n).filter(|&x| mask >> (x - 1) & 1 == 1).collect());
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct IdealSubcategory {
    pub model: CinjModel,
    /// Morphisms of `model.category` satisfying the ideal condition.
    pub kept: Vec<usize>,
    /// For each rejected morphism, the first failing ideal support.
    pub rejected: Vec<(usize, Vec<usize>)>,
    /// The kept morphisms form a subcategory; `None` if not closed under composition.
    pub category: Option<FinCategory>,
}

/// The injective homomorphisms between unital subalgebras of ℂⁿ that satisfy
/// the ideal condition.
pub fn ideal_condition_morphisms(n: usize) -> Result<IdealSubcategory, CstarError> {
    let model = build_cinj(n, CstarFlags::UNITAL)?;
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for (f, h) in model.homs.iter().enumerate() {
        match ideal_condition_holds(h) {
            Ok(()) => kept.push(f),
            Err(s) => rejected.push((f, s)),
        }
    }
    let objects: Vec<usize> = (0..model.objects.len()).collect();
    let keep: BTreeSet<usize> = kept.iter().copied().collect();
    let category = model.category.subcategory(&objects, |f| keep.contains(&f)).ok().map(|(c, _)| c);
    Ok(IdealSubcategory { model, kept, rejected, category })
}

#[derive(Clone, Debug)]
pub struct ProjectionBundle {
    /// 0/1 coordinate vectors.
    pub projections: Vec<Vec<u8>>,
    pub lattice: FinLattice,
    /// Isomorphism onto the Boolean lattice `2ⁿ`.
    pub boolean_iso: Option<Vec<usize>>,
}

/// The union of the projection lattices of all unital subalgebras of ℂⁿ,
/// ordered by `p ≤ q ⇔ pq = p`.
pub fn bundle_projections(n: usize) -> Result<ProjectionBundle, CstarError> {
    let mut set = BTreeSet::new();
    for c in enumerate_subalgebras(n, true)? {
        let ind = c.indicators();
        for mask in 0u32..(1 << c.dim()) {
            let v: Vec<u8> =
                (0..n).map(|i| (0..c.dim()).filter(|&b| mask >> b & 1 == 1).map(|b| ind[b][i]).sum()).collect();
            set.insert(v);
        }
    }
    let projections: Vec<Vec<u8>> = set.into_iter().collect();
    let labels = projections.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    let poset = FinPoset::from_fn(labels, |i, j| {
        projections[i].iter().zip(&projections[j]).all(|(a, b)| a * b == *a)
    })
    .expect("projection order is a partial order");
    let boolean_iso = are_isomorphic(&poset, &FinPoset::boolean(n));
    let lattice = FinLattice::new(poset).expect("projections of a commutative algebra form a lattice");
    Ok(ProjectionBundle { projections, lattice, boolean_iso })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, blocks: Vec<Vec<usize>>) -> Subalg {
        Subalg(Partition::new(n, blocks).unwrap())
    }

    #[test]
    fn images() {
        let phi = PartialMap::total(2, &[1, 1, 2]).unwrap();
        assert_eq!(direct_image(&phi, &sub(2, vec![vec![1]])).unwrap(), sub(3, vec![vec![1, 2]]));
        let id = PartialMap::total(3, &[1, 2, 3]).unwrap();
        let c = sub(3, vec![vec![1, 3]]);
        assert_eq!(direct_image(&id, &c).unwrap(), c);
        let off = PartialMap::total(2, &[2, 2]).unwrap();
        assert_eq!(direct_image(&off, &sub(2, vec![vec![1]])), Err(CstarError::ZeroImage));
    }

    #[test]
    fn ideal_condition_n2() {
        let r = ideal_condition_morphisms(2).unwrap();
        assert_eq!(r.kept.len(), 3);
        assert!(r.kept.iter().all(|&f| r.model.homs[f].is_inclusion()));
        let (t, d) = (sub(2, vec![vec![1, 2]]), sub(2, vec![vec![1], vec![2]]));
        let first_coordinate = CstarHom::new(t, d, vec![Some(0), None]).unwrap();
        assert_eq!(ideal_condition_holds(&first_coordinate), Err(vec![1]));
        assert!(r.category.is_some());
    }

    #[test]
    fn projections_are_boolean() {
        for n in 1..=3 {
            let b = bundle_projections(n).unwrap();
            assert_eq!(b.projections.len(), 1 << n);
            assert!(b.boolean_iso.is_some());
        }
    }
}
