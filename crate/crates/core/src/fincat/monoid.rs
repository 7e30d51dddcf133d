use crate::partition::PointMap;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("monoid has no elements")]
    Empty,
    #[error("multiplication table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error("{0} is not a two-sided unit")]
    NotAUnit(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
}

/// A finite monoid given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    labels: Vec<String>,
    mul: Vec<u32>,
    unit: usize,
}

impl FinMonoid {
    /// `table[a][b]` is the product `a·b`.
    pub fn new(labels: Vec<String>, table: &[Vec<usize>], unit: usize) -> Result<Self, MonoidError> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(MonoidError::TableSize { got: table.iter().map(Vec::len).sum(), expected: n * n });
        }
        Self::from_fn(labels, unit, |a, b| table[a][b])
    }

    pub fn from_fn(labels: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self, MonoidError> {
        let n = labels.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MonoidError::DuplicateLabel(l.clone()));
            }
        }
        if unit >= n {
            return Err(MonoidError::OutOfRange(unit));
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(MonoidError::OutOfRange(c));
                }
                table[a * n + b] = c as u32;
            }
        }
        let m = FinMonoid { labels, mul: table, unit };
        for a in 0..n {
            if m.mul(unit, a) != a || m.mul(a, unit) != a {
                return Err(MonoidError::NotAUnit(unit));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m.mul(a, b);
                for c in 0..n {
                    if m.mul(ab, c) != m.mul(a, m.mul(b, c)) {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        Self::from_fn(vec!["1".into()], 0, |_, _| 0).unwrap()
    }

    /// S(n) with `a·b = a ∘ b` (apply `b` first); the identity is element 0.
    pub fn symmetric_group(n: usize) -> Self {
        Self::of_maps(PointMap::all_permutations(n))
    }

    /// All self-maps of `{1..n}` with `f·g = f ∘ g`, in lexicographic order.
    pub fn full_transformation(n: usize) -> Self {
        Self::of_maps(PointMap::all_maps(n))
    }

    /// A monoid of point maps closed under composition and containing the identity.
    pub fn of_maps(maps: Vec<PointMap>) -> Self {
        let index: HashMap<PointMap, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = maps.first().map_or(0, PointMap::n);
        let unit = index[&PointMap::identity(n)];
        let labels = maps.iter().map(PointMap::label).collect();
        Self::from_fn(labels, unit, |a, b| index[&maps[a].compose(&maps[b])]).expect("maps closed under composition")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    /// The opposite monoid: `a ·ᵒᵖ b = b · a`.
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul(b, a) as u32;
            }
        }
        FinMonoid { labels: self.labels.clone(), mul, unit: self.unit }
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.inverse(a).is_some()).collect()
    }

    pub fn is_homomorphism(&self, target: &FinMonoid, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&x| x < target.len())
            && map[self.unit] == target.unit
            && (0..self.len()).all(|a| (0..self.len()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    pub fn is_isomorphism(&self, target: &FinMonoid, map: &[usize]) -> bool {
        if self.len() != target.len() || !self.is_homomorphism(target, map) {
            return false;
        }
        let mut hit = vec![false; target.len()];
        map.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
    }

    /// The inversion map `a ↦ a⁻¹` is an isomorphism onto the opposite monoid
    /// exactly when the monoid is a group.
    pub fn inversion_to_opposite(&self) -> Option<Vec<usize>> {
        let inv: Option<Vec<usize>> = (0..self.len()).map(|a| self.inverse(a)).collect();
        inv.filter(|m| self.is_isomorphism(&self.opposite(), m))
    }

    pub fn to_json(&self) -> MonoidJson {
        let n = self.len();
        MonoidJson {
            elements: self.labels.clone(),
            unit: self.unit,
            mul: (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect(),
        }
    }

    pub fn from_json(j: &MonoidJson) -> Result<Self, MonoidError> {
        Self::new(j.elements.clone(), &j.mul, j.unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub elements: Vec<String>,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
}

/// Order-type invariant of an element: (is idempotent, is a unit, index and
/// period of its cyclic submonoid, number of square roots).
fn profile(m: &FinMonoid, a: usize) -> (bool, bool, usize, usize, usize) {
    let mut seen = HashMap::new();
    let mut x = m.unit;
    let mut k = 0;
    while !seen.contains_key(&x) {
        seen.insert(x, k);
        x = m.mul(x, a);
        k += 1;
    }
    let index = seen[&x];
    let roots = (0..m.len()).filter(|&b| m.mul(b, b) == a).count();
    (m.mul(a, a) == a, m.inverse(a).is_some(), index, k - index, roots)
}

/// Searches for a monoid isomorphism `m → n` by backtracking with closure
/// propagation: every product of assigned elements is forced.
pub fn find_monoid_isomorphism(m: &FinMonoid, n: &FinMonoid) -> Option<Vec<usize>> {
    if m.len() != n.len() {
        return None;
    }
    let pm: Vec<_> = (0..m.len()).map(|a| profile(m, a)).collect();
    let pn: Vec<_> = (0..n.len()).map(|a| profile(n, a)).collect();
    let (mut sm, mut sn) = (pm.clone(), pn.clone());
    sm.sort_unstable();
    sn.sort_unstable();
    if sm != sn {
        return None;
    }
    let mut map = vec![usize::MAX; m.len()];
    let mut inv = vec![usize::MAX; n.len()];
    if !assign(m, n, &mut map, &mut inv, m.unit, n.unit, &mut Vec::new()) {
        return None;
    }
    if search(m, n, &pm, &pn, &mut map, &mut inv) {
        assert!(m.is_isomorphism(n, &map), "monoid isomorphism search returned an invalid map");
        Some(map)
    } else {
        None
    }
}

fn assign(
    m: &FinMonoid,
    n: &FinMonoid,
    map: &mut [usize],
    inv: &mut [usize],
    a: usize,
    b: usize,
    trail: &mut Vec<usize>,
) -> bool {
    let mut queue = vec![(a, b)];
    while let Some((a, b)) = queue.pop() {
        if map[a] != usize::MAX || inv[b] != usize::MAX {
            if map[a] != b || inv[b] != a {
                return false;
            }
            continue;
        }
        map[a] = b;
        inv[b] = a;
        trail.push(a);
        for x in 0..m.len() {
            if map[x] != usize::MAX {
                queue.push((m.mul(a, x), n.mul(b, map[x])));
                queue.push((m.mul(x, a), n.mul(map[x], b)));
            }
        }
    }
    true
}

fn search(
    m: &FinMonoid,
    n: &FinMonoid,
    pm: &[(bool, bool, usize, usize, usize)],
    pn: &[(bool, bool, usize, usize, usize)],
    map: &mut [usize],
    inv: &mut [usize],
) -> bool {
    let Some(a) = (0..m.len()).find(|&a| map[a] == usize::MAX) else {
        return true;
    };
    for b in 0..n.len() {
        if inv[b] != usize::MAX || pn[b] != pm[a] {
            continue;
        }
        let mut trail = Vec::new();
        if assign(m, n, map, inv, a, b, &mut trail) && search(m, n, pm, pn, map, inv) {
            return true;
        }
        for x in trail {
            inv[map[x]] = usize::MAX;
            map[x] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_groups() {
        let s3 = FinMonoid::symmetric_group(3);
        assert_eq!(s3.len(), 6);
        assert!(s3.is_group());
        assert!(s3.inversion_to_opposite().is_some());
        assert!(find_monoid_isomorphism(&s3, &s3.opposite()).is_some());
    }

    #[test]
    fn transformation_monoid() {
        let t3 = FinMonoid::full_transformation(3);
        assert_eq!(t3.len(), 27);
        assert!(!t3.is_group());
        assert_eq!(t3.units().len(), 6);
        assert!(t3.inversion_to_opposite().is_none());
        let iso = find_monoid_isomorphism(&t3, &t3).unwrap();
        assert!(t3.is_isomorphism(&t3, &iso));
    }

    #[test]
    fn non_isomorphic() {
        let z2 = FinMonoid::from_fn(vec!["1".into(), "a".into()], 0, |a, b| (a + b) % 2).unwrap();
        let semilattice = FinMonoid::from_fn(vec!["1".into(), "e".into()], 0, |a, b| a.max(b)).unwrap();
        assert!(find_monoid_isomorphism(&z2, &semilattice).is_none());
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["1".to_string(), "a".to_string()];
        assert_eq!(FinMonoid::new(labels.clone(), &[vec![0, 1], vec![1, 1]], 1), Err(MonoidError::NotAUnit(1)));
        let l3: Vec<String> = ["1", "a", "b"].map(String::from).to_vec();
        // a·a = b, a·b = a, b·a = 1 breaks associativity at (a, a, a) or earlier.
        let t = [vec![0, 1, 2], vec![1, 2, 1], vec![2, 0, 2]];
        assert!(matches!(FinMonoid::new(l3, &t, 0), Err(MonoidError::NotAssociative(..))));
    }
}
