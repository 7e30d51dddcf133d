use crate::fincat::{FinMonoid, MonoidError, MonoidJson};
use crate::partition::{enumerate_partitions, permutation_action, pullback_action, PartitionError, PointMap};
use crate::poset::{FinPoset, PosetError, PosetJson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("action table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Whether `(m·n)` acts as "first `n`, then `m`" (left) or "first `m`, then `n`" (right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSide {
    Left,
    Right,
    Both,
}

/// A monoid together with a table of self-maps of a poset, one per element.
/// The table is total; whether it is an action is decided by [`check_action`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidAction {
    pub monoid: FinMonoid,
    pub poset: FinPoset,
    table: Vec<usize>,
}

impl MonoidAction {
    /// `table[m][p]` is the image of `p` under `m`.
    pub fn new(monoid: FinMonoid, poset: FinPoset, table: &[Vec<usize>]) -> Result<Self, ActionError> {
        let (k, n) = (monoid.len(), poset.len());
        if table.len() != k || table.iter().any(|r| r.len() != n) {
            return Err(ActionError::TableSize { got: table.iter().map(Vec::len).sum(), expected: k * n });
        }
        if let Some(&x) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(ActionError::OutOfRange(x));
        }
        Ok(MonoidAction { monoid, poset, table: table.concat() })
    }

    pub fn from_fn(monoid: FinMonoid, poset: FinPoset, act: impl Fn(usize, usize) -> usize) -> Result<Self, ActionError> {
        let table: Vec<Vec<usize>> = (0..monoid.len()).map(|m| (0..poset.len()).map(|p| act(m, p)).collect()).collect();
        Self::new(monoid, poset, &table)
    }

    #[inline]
    pub fn act(&self, m: usize, p: usize) -> usize {
        self.table[m * self.poset.len() + p]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.poset.len().max(1)).map(<[usize]>::to_vec).collect()
    }

    pub fn to_json(&self) -> ActionJson {
        ActionJson { monoid: self.monoid.to_json(), poset: self.poset.to_json(), table: self.table() }
    }

    pub fn from_json(j: &ActionJson) -> Result<Self, ActionError> {
        Self::new(FinMonoid::from_json(&j.monoid)?, FinPoset::from_json(&j.poset)?, &j.table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub monoid: MonoidJson,
    pub poset: PosetJson,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionVerdict {
    pub valid: bool,
    pub side: Option<ActionSide>,
    /// Poset element moved by the unit.
    pub unit_witness: Option<usize>,
    /// `(m, n, p)` breaking the left law, and likewise the right law.
    pub left_witness: Option<(usize, usize, usize)>,
    pub right_witness: Option<(usize, usize, usize)>,
    /// `(m, p, q)` with `p ≤ q` but `m·p ≰ m·q`.
    pub monotone_witness: Option<(usize, usize, usize)>,
}

/// Verifies the unit law, the composition law on either side, and monotonicity.
pub fn check_action(a: &MonoidAction) -> ActionVerdict {
    let (m, p) = (&a.monoid, &a.poset);
    let unit_witness = (0..p.len()).find(|&x| a.act(m.unit(), x) != x);
    let mut left_witness = None;
    let mut right_witness = None;
    'outer: for x in 0..m.len() {
        for y in 0..m.len() {
            let xy = m.mul(x, y);
            for q in 0..p.len() {
                if left_witness.is_none() && a.act(xy, q) != a.act(x, a.act(y, q)) {
                    left_witness = Some((x, y, q));
                }
                if right_witness.is_none() && a.act(xy, q) != a.act(y, a.act(x, q)) {
                    right_witness = Some((x, y, q));
                }
                if left_witness.is_some() && right_witness.is_some() {
                    break 'outer;
                }
            }
        }
    }
    let monotone_witness = (0..m.len())
        .flat_map(|x| (0..p.len()).flat_map(move |q| p.above(q).map(move |r| (x, q, r))))
        .find(|&(x, q, r)| !p.leq(a.act(x, q), a.act(x, r)));
    let side = match (left_witness.is_none(), right_witness.is_none()) {
        (true, true) => Some(ActionSide::Both),
        (true, false) => Some(ActionSide::Left),
        (false, true) => Some(ActionSide::Right),
        (false, false) => None,
    };
    ActionVerdict {
        valid: unit_witness.is_none() && side.is_some() && monotone_witness.is_none(),
        side,
        unit_witness,
        left_witness,
        right_witness,
        monotone_witness,
    }
}

fn partition_poset(n: usize) -> Result<(FinPoset, Vec<crate::partition::Partition>), ActionError> {
    let parts = enumerate_partitions(n, true)?;
    let labels = parts.iter().map(|p| p.label()).collect();
    let poset = FinPoset::from_fn(labels, |i, j| parts[i].refines(&parts[j]).unwrap())?;
    Ok((poset, parts))
}

/// S(n) acting on P(n) by direct images of blocks.
pub fn permutation_action_on_pn(n: usize) -> Result<MonoidAction, ActionError> {
    let (poset, parts) = partition_poset(n)?;
    let perms = PointMap::all_permutations(n);
    let monoid = FinMonoid::of_maps(perms.clone());
    MonoidAction::from_fn(monoid, poset, |m, p| {
        let q = permutation_action(&perms[m], &parts[p]).unwrap();
        parts.iter().position(|x| *x == q).unwrap()
    })
}

/// The full transformation monoid T(n) acting on P(n) by pulling back
/// equivalence relations; a right action.
pub fn pullback_action_on_pn(n: usize) -> Result<MonoidAction, ActionError> {
    let (poset, parts) = partition_poset(n)?;
    let maps = PointMap::all_maps(n);
    let monoid = FinMonoid::of_maps(maps.clone());
    MonoidAction::from_fn(monoid, poset, |m, p| {
        let q = pullback_action(&maps[m], &parts[p]).unwrap();
        parts.iter().position(|x| *x == q).unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_actions() {
        let s3 = permutation_action_on_pn(3).unwrap();
        let v = check_action(&s3);
        assert!(v.valid);
        assert_eq!(v.side, Some(ActionSide::Left));
        let t3 = pullback_action_on_pn(3).unwrap();
        let v = check_action(&t3);
        assert!(v.valid);
        assert_eq!(v.side, Some(ActionSide::Right));
        assert_eq!(MonoidAction::from_json(&t3.to_json()).unwrap(), t3);
    }

    #[test]
    fn unit_violation() {
        let s2 = permutation_action_on_pn(2).unwrap();
        let mut table = s2.table();
        table[s2.monoid.unit()][0] = 1;
        let bad = MonoidAction::new(s2.monoid.clone(), s2.poset.clone(), &table).unwrap();
        let v = check_action(&bad);
        assert!(!v.valid);
        assert_eq!(v.unit_witness, Some(0));
    }
}
