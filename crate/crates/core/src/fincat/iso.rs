use super::{CategoryError, FinCategory, Functor};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCaps {
    /// Search nodes visited across object and morphism backtracking.
    pub nodes: usize,
}

impl Default for IsoCaps {
    fn default() -> Self {
        IsoCaps { nodes: 2_000_000 }
    }
}

type ObjProfile = (usize, Vec<usize>, Vec<usize>, usize);

fn object_profile(c: &FinCategory, x: usize) -> ObjProfile {
    let n = c.num_objects();
    let mut out: Vec<usize> = (0..n).map(|y| c.hom(x, y).len()).collect();
    let mut inn: Vec<usize> = (0..n).map(|y| c.hom(y, x).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    let isos = c.out_of(x).iter().filter(|&&f| c.is_iso(f)).count();
    (c.hom(x, x).len(), out, inn, isos)
}

fn morphism_profile(c: &FinCategory, f: usize) -> (bool, bool, usize) {
    let endo = c.dom(f) == c.cod(f);
    let idem = endo && c.compose(f, f) == f;
    let fixes = c.out_of(c.cod(f)).iter().filter(|&&g| c.compose(g, f) == f).count();
    (c.is_iso(f), idem, fixes)
}

struct Search<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    cap: usize,
    visited: usize,
    obj: Vec<usize>,
    obj_used: Vec<bool>,
    mor: Vec<usize>,
    mor_inv: Vec<usize>,
    cprof: Vec<(bool, bool, usize)>,
    dprof: Vec<(bool, bool, usize)>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn tick(&mut self) -> Result<(), CategoryError> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(CategoryError::SearchCapExceeded { what: "category isomorphism", cap: self.cap });
        }
        Ok(())
    }

    fn objects(&mut self, x: usize, cp: &[ObjProfile], dp: &[ObjProfile]) -> Result<bool, CategoryError> {
        self.tick()?;
        if x == self.c.num_objects() {
            for y in 0..self.c.num_objects() {
                let (cid, did) = (self.c.id(y), self.d.id(self.obj[y]));
                let mut trail = Vec::new();
                if !self.assign(cid, did, &mut trail) {
                    self.undo(trail);
                    return Ok(false);
                }
            }
            let ok = self.morphisms()?;
            if !ok {
                for m in self.mor.iter_mut() {
                    *m = UNSET;
                }
                for m in self.mor_inv.iter_mut() {
                    *m = UNSET;
                }
            }
            return Ok(ok);
        }
        for y in 0..self.d.num_objects() {
            if self.obj_used[y] || cp[x] != dp[y] {
                continue;
            }
            let consistent = (0..x).all(|z| {
                self.c.hom(x, z).len() == self.d.hom(y, self.obj[z]).len()
                    && self.c.hom(z, x).len() == self.d.hom(self.obj[z], y).len()
            });
            if !consistent {
                continue;
            }
            self.obj[x] = y;
            self.obj_used[y] = true;
            if self.objects(x + 1, cp, dp)? {
                return Ok(true);
            }
            self.obj_used[y] = false;
            self.obj[x] = UNSET;
        }
        Ok(false)
    }

    fn assign(&mut self, f: usize, g: usize, trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(f, g)];
        while let Some((f, g)) = queue.pop() {
            if self.mor[f] != UNSET || self.mor_inv[g] != UNSET {
                if self.mor[f] != g || self.mor_inv[g] != f {
                    return false;
                }
                continue;
            }
            if self.d.dom(g) != self.obj[self.c.dom(f)] || self.d.cod(g) != self.obj[self.c.cod(f)] {
                return false;
            }
            if self.cprof[f] != self.dprof[g] {
                return false;
            }
            self.mor[f] = g;
            self.mor_inv[g] = f;
            trail.push(f);
            for &h in self.c.out_of(self.c.cod(f)) {
                if self.mor[h] != UNSET {
                    queue.push((self.c.compose(h, f), self.d.compose(self.mor[h], g)));
                }
            }
            let x = self.c.dom(f);
            for y in 0..self.c.num_objects() {
                for &h in self.c.hom(y, x) {
                    if self.mor[h] != UNSET {
                        queue.push((self.c.compose(f, h), self.d.compose(g, self.mor[h])));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: Vec<usize>) {
        for f in trail {
            self.mor_inv[self.mor[f]] = UNSET;
            self.mor[f] = UNSET;
        }
    }

    fn morphisms(&mut self) -> Result<bool, CategoryError> {
        self.tick()?;
        let Some(f) = (0..self.c.num_morphisms()).find(|&f| self.mor[f] == UNSET) else {
            return Ok(true);
        };
        let (x, y) = (self.obj[self.c.dom(f)], self.obj[self.c.cod(f)]);
        let cands: Vec<usize> = self.d.hom(x, y).iter().copied().filter(|&g| self.mor_inv[g] == UNSET).collect();
        for g in cands {
            let mut trail = Vec::new();
            if self.assign(f, g, &mut trail) && self.morphisms()? {
                return Ok(true);
            }
            self.undo(trail);
        }
        Ok(false)
    }
}

/// Searches for a strict isomorphism `c ≅ d`, returned as a pair of mutually
/// inverse functors.
pub fn find_isomorphism(
    c: &FinCategory,
    d: &FinCategory,
    caps: IsoCaps,
) -> Result<Option<(Functor, Functor)>, CategoryError> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return Ok(None);
    }
    let cp: Vec<ObjProfile> = (0..c.num_objects()).map(|x| object_profile(c, x)).collect();
    let dp: Vec<ObjProfile> = (0..d.num_objects()).map(|x| object_profile(d, x)).collect();
    let (mut a, mut b) = (cp.clone(), dp.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let cprof: Vec<_> = (0..c.num_morphisms()).map(|f| morphism_profile(c, f)).collect();
    let dprof: Vec<_> = (0..d.num_morphisms()).map(|f| morphism_profile(d, f)).collect();
    let (mut a, mut b) = (cprof.clone(), dprof.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut s = Search {
        c,
        d,
        cap: caps.nodes,
        visited: 0,
        obj: vec![UNSET; c.num_objects()],
        obj_used: vec![false; d.num_objects()],
        mor: vec![UNSET; c.num_morphisms()],
        mor_inv: vec![UNSET; d.num_morphisms()],
        cprof,
        dprof,
    };
    if !s.objects(0, &cp, &dp)? {
        return Ok(None);
    }
    let mut obj_inv = vec![0; d.num_objects()];
    for (x, &y) in s.obj.iter().enumerate() {
        obj_inv[y] = x;
    }
    let forward = Functor::new(c.clone(), d.clone(), s.obj.clone(), s.mor.clone())
        .expect("isomorphism search produced a non-functor");
    let backward = Functor::new(d.clone(), c.clone(), obj_inv, s.mor_inv.clone())
        .expect("isomorphism search produced a non-functor");
    assert!(forward.then(&backward).map(|f| f.is_identity()).unwrap_or(false));
    Ok(Some((forward, backward)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{functor_properties, FinMonoid};
    use crate::poset::FinPoset;

    #[test]
    fn self_isomorphism() {
        let c = FinCategory::from_monoid(&FinMonoid::full_transformation(2));
        let (f, g) = find_isomorphism(&c, &c, IsoCaps::default()).unwrap().unwrap();
        assert!(functor_properties(&f).is_equivalence);
        assert!(g.then(&f).unwrap().is_identity());
    }

    #[test]
    fn opposite_of_group_is_isomorphic() {
        let c = FinCategory::from_monoid(&FinMonoid::symmetric_group(3));
        assert!(find_isomorphism(&c, &c.opposite(), IsoCaps::default()).unwrap().is_some());
    }

    #[test]
    fn size_and_shape_mismatch() {
        let chain = FinCategory::from_poset(&FinPoset::chain(3));
        let cube = FinCategory::from_poset(&FinPoset::boolean(2));
        assert!(find_isomorphism(&chain, &cube, IsoCaps::default()).unwrap().is_none());
        let z2 = FinCategory::from_monoid(&FinMonoid::symmetric_group(2));
        let semilattice = FinMonoid::from_fn(vec!["1".into(), "e".into()], 0, |a, b| a.max(b)).unwrap();
        assert!(find_isomorphism(&z2, &FinCategory::from_monoid(&semilattice), IsoCaps::default()).unwrap().is_none());
    }

    #[test]
    fn cap_is_reported() {
        let c = FinCategory::from_monoid(&FinMonoid::symmetric_group(3));
        assert!(matches!(
            find_isomorphism(&c, &c, IsoCaps { nodes: 1 }),
            Err(CategoryError::SearchCapExceeded { .. })
        ));
    }
}
