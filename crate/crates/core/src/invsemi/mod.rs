//! The inverse semigroup of injective *-homomorphisms from subalgebras of ℂⁿ
//! into ℂⁿ, with an adjoined zero, and the structures built from it.

mod derived;

pub use derived::{aut_elements_equivalence, derived_structures, AutEquivalence, DerivedStructures};

use crate::cstar::{enumerate_subalgebras, hom_set, CstarError, CstarHom, Subalg};
use crate::fincat::CategoryError;
use crate::partition::Partition;
use crate::report::{AxiomStatus, Status};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub const INVSEMI_CAP: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvSemiError {
    #[error("n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("no isomorphism {0}")]
    IsoNotFound(&'static str),
    #[error(transparent)]
    Cstar(#[from] CstarError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TElement {
    Zero,
    /// `C ↣ ℂⁿ`; the target is the full diagonal algebra.
    Hom(CstarHom),
}

impl TElement {
    pub fn label(&self) -> String {
        match self {
            TElement::Zero => "0".into(),
            TElement::Hom(h) => {
                let map: Vec<String> =
                    h.block_map.iter().map(|b| b.map(|b| (b + 1).to_string()).unwrap_or_else(|| "-".into())).collect();
                format!("{}[{}]", h.src.label(), map.join(","))
            }
        }
    }

    pub fn hom(&self) -> Option<&CstarHom> {
        match self {
            TElement::Zero => None,
            TElement::Hom(h) => Some(h),
        }
    }
}

/// The full diagonal algebra ℂⁿ.
pub fn full_algebra(n: usize) -> Subalg {
    Subalg(Partition::discrete(n))
}

/// The inclusion `C ↪ ℂⁿ`.
pub fn inclusion(c: &Subalg) -> CstarHom {
    let idx = c.0.block_index();
    CstarHom::new(c.clone(), full_algebra(c.n()), (1..=c.n()).map(|k| idx[k]).collect()).expect("inclusion is injective")
}

/// `i(C)` together with `i⁻¹: i(C) → ℂⁿ`.
pub fn star_hom(i: &CstarHom) -> CstarHom {
    let n = i.src.n();
    let blocks: Vec<Vec<usize>> = (0..i.src.dim())
        .map(|b| (1..=n).filter(|&k| i.block_map[k - 1] == Some(b)).collect())
        .collect();
    let image = Subalg(Partition::new(n, blocks.clone()).expect("image blocks are disjoint"));
    // canonical position of the image block coming from source block b
    let pos: Vec<usize> = blocks.iter().map(|b| image.0.block_of(b[0]).unwrap()).collect();
    let idx = i.src.0.block_index();
    let map = (1..=n).map(|k| idx[k].map(|b| pos[b])).collect();
    CstarHom::new(image, full_algebra(n), map).expect("inverse is injective")
}

/// `i′ · i = (i⁻¹(C′) → ℂⁿ)`, or `None` when `i⁻¹(C′) = 0`.
pub fn product(ip: &CstarHom, i: &CstarHom) -> Option<CstarHom> {
    let n = i.src.n();
    let k = i.src.dim();
    let cp = &ip.src;
    let cidx = cp.0.block_index();
    // union-find over source blocks of i, plus a "killed" flag
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut killed = vec![false; k];
    for c in 1..=n {
        if cidx[c].is_none() {
            if let Some(b) = i.block_map[c - 1] {
                killed[b] = true;
            }
        }
    }
    for block in cp.blocks() {
        let vals: Vec<Option<usize>> = block.iter().map(|&c| i.block_map[c - 1]).collect();
        if vals.iter().any(Option::is_none) {
            for b in vals.into_iter().flatten() {
                killed[b] = true;
            }
        } else {
            let first = vals[0].unwrap();
            for b in vals.into_iter().flatten() {
                let (r1, r2) = (find(&mut parent, first), find(&mut parent, b));
                parent[r1] = r2;
            }
        }
    }
    for b in 0..k {
        if killed[b] {
            let r = find(&mut parent, b);
            killed[r] = true;
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for b in 0..k {
        let r = find(&mut parent, b);
        if !killed[r] {
            groups.entry(r).or_default().extend(i.src.blocks()[b].iter().copied());
        }
    }
    if groups.is_empty() {
        return None;
    }
    let sub = Subalg(Partition::new(n, groups.into_values().collect()).expect("merged blocks are disjoint"));
    let sidx = sub.0.block_index();
    // i′ ∘ i|: coordinate c reads C′-block B = i′(c); on B, i reads source block i(k′) for k′ ∈ B
    let map = (1..=n)
        .map(|c| {
            let bp = ip.block_map[c - 1]?;
            let kp = cp.blocks()[bp][0];
            let b = i.block_map[kp - 1]?;
            sidx[i.src.blocks()[b][0]]
        })
        .collect();
    Some(CstarHom::new(sub, full_algebra(n), map).expect("product of injective maps is injective"))
}

/// Finite inverse semigroup with explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvSemigroup {
    pub n: usize,
    pub elements: Vec<TElement>,
    pub mul: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    pub zero: usize,
    /// Products of two nonzero elements that landed on the adjoined zero.
    pub zero_products: Vec<(usize, usize)>,
}

impl InvSemigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| x != self.zero)
    }

    pub fn index_of(&self, e: &TElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul[x][x] == x
    }

    pub fn to_json(&self) -> InvSemigroupJson {
        InvSemigroupJson {
            n: self.n,
            elements: self.elements.iter().map(TElement::label).collect(),
            zero: self.zero,
            mul: self.mul.clone(),
            star: self.star.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvSemigroupJson {
    pub n: usize,
    pub elements: Vec<String>,
    pub zero: usize,
    pub mul: Vec<Vec<usize>>,
    pub star: Vec<usize>,
}

/// All injective homomorphisms of nonzero subalgebras of ℂⁿ into ℂⁿ, then the zero.
pub fn build_t(n: usize) -> Result<InvSemigroup, InvSemiError> {
    if n > INVSEMI_CAP {
        return Err(InvSemiError::CapExceeded { n, cap: INVSEMI_CAP });
    }
    let full = full_algebra(n);
    let mut elements: Vec<TElement> = Vec::new();
    for c in enumerate_subalgebras(n, false)? {
        elements.extend(hom_set(&c, &full, false).into_iter().map(TElement::Hom));
    }
    let zero = elements.len();
    elements.push(TElement::Zero);
    let index: HashMap<TElement, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let len = elements.len();
    let mut mul = vec![vec![zero; len]; len];
    let mut zero_products = Vec::new();
    for a in 0..zero {
        for b in 0..zero {
            let (ha, hb) = (elements[a].hom().unwrap(), elements[b].hom().unwrap());
            match product(ha, hb) {
                Some(h) => mul[a][b] = index[&TElement::Hom(h)],
                None => zero_products.push((a, b)),
            }
        }
    }
    let star = (0..len)
        .map(|a| match &elements[a] {
            TElement::Zero => zero,
            TElement::Hom(h) => index[&TElement::Hom(star_hom(h))],
        })
        .collect();
    Ok(InvSemigroup { n, elements, mul, star, zero, zero_products })
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub pass: bool,
    pub laws: Vec<AxiomStatus>,
}

/// Associativity, `ii*i = i`, `i*ii* = i*`, uniqueness of that inverse, and
/// commuting idempotents, all exhaustively.
pub fn law_report(t: &InvSemigroup) -> LawReport {
    let n = t.len();
    let m = &t.mul;
    let mut laws = Vec::new();
    let assoc = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .find(|&(a, b, c)| m[m[a][b]][c] != m[a][m[b][c]]);
    laws.push(match assoc {
        None => AxiomStatus::new("associativity", Status::Pass, format!("{} triples", n * n * n)),
        Some((a, b, c)) => {
            AxiomStatus::new("associativity", Status::Fail, "(ab)c ≠ a(bc)").with_witness(vec![a, b, c])
        }
    });
    let s = &t.star;
    let regular = (0..n).find(|&a| m[m[a][s[a]]][a] != a);
    laws.push(match regular {
        None => AxiomStatus::new("i i* i = i", Status::Pass, ""),
        Some(a) => AxiomStatus::new("i i* i = i", Status::Fail, "").with_witness(vec![a]),
    });
    let coregular = (0..n).find(|&a| m[m[s[a]][a]][s[a]] != s[a]);
    laws.push(match coregular {
        None => AxiomStatus::new("i* i i* = i*", Status::Pass, ""),
        Some(a) => AxiomStatus::new("i* i i* = i*", Status::Fail, "").with_witness(vec![a]),
    });
    let unique = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| b != s[a] && m[m[a][b]][a] == a && m[m[b][a]][b] == b);
    laws.push(match unique {
        None => AxiomStatus::new("unique inverse", Status::Pass, ""),
        Some((a, b)) => {
            AxiomStatus::new("unique inverse", Status::Fail, "a second generalized inverse").with_witness(vec![a, b])
        }
    });
    let idem: Vec<usize> = (0..n).filter(|&e| m[e][e] == e).collect();
    let commute = idem.iter().flat_map(|&e| idem.iter().map(move |&f| (e, f))).find(|&(e, f)| m[e][f] != m[f][e]);
    laws.push(match commute {
        None => AxiomStatus::new("idempotents commute", Status::Pass, format!("{} idempotents", idem.len())),
        Some((e, f)) => AxiomStatus::new("idempotents commute", Status::Fail, "").with_witness(vec![e, f]),
    });
    LawReport { pass: laws.iter().all(|l| l.status.ok()), laws }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(build_t(1).unwrap().len(), 2);
        let t2 = build_t(2).unwrap();
        assert_eq!(t2.nonzero().count(), 11);
        assert!(!t2.zero_products.is_empty());
        assert!(build_t(4).is_err());
    }

    #[test]
    fn laws_hold() {
        for n in 1..=2 {
            assert!(law_report(&build_t(n).unwrap()).pass);
        }
    }

    #[test]
    fn mutated_table_fails() {
        let mut t = build_t(2).unwrap();
        let (a, b) = (0, 1);
        t.mul[a][b] = (t.mul[a][b] + 1) % t.len();
        let r = law_report(&t);
        assert!(!r.pass);
        assert!(!r.laws[0].witness.is_empty());
    }

    #[test]
    fn star_of_inclusion() {
        let t = build_t(2).unwrap();
        for x in t.nonzero() {
            let h = t.elements[x].hom().unwrap();
            if *h == inclusion(&h.src) {
                assert_eq!(t.star[x], x);
            }
        }
    }
}
