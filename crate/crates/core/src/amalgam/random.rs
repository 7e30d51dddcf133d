use super::action::MonoidAction;
use crate::fincat::FinMonoid;
use crate::partition::PointMap;
use crate::poset::FinPoset;
use rand::Rng;
use std::collections::HashSet;

/// A random poset on `0..k` with least element `0`.
pub fn random_poset_with_bottom<R: Rng>(rng: &mut R, k: usize) -> FinPoset {
    let mut pairs: Vec<(usize, usize)> = (1..k).map(|j| (0, j)).collect();
    for i in 1..k {
        for j in i + 1..k {
            if rng.gen_bool(0.4) {
                pairs.push((i, j));
            }
        }
    }
    let labels = (0..k).map(|i| format!("p{i}")).collect();
    FinPoset::from_generators(labels, &pairs).expect("generators respect index order")
}

fn random_monotone_map<R: Rng>(rng: &mut R, p: &FinPoset) -> PointMap {
    let k = p.len();
    loop {
        let v: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
        if (0..k).all(|x| p.above(x).all(|y| p.leq(v[x], v[y]))) {
            return PointMap::new(v.into_iter().map(|x| x + 1).collect()).expect("values in range");
        }
    }
}

/// Closes `gens ∪ {id}` under composition, giving up past `max` elements.
fn closure(k: usize, gens: &[PointMap], max: usize) -> Option<Vec<PointMap>> {
    let mut maps = vec![PointMap::identity(k)];
    let mut seen: HashSet<PointMap> = maps.iter().cloned().collect();
    let mut i = 0;
    while i < maps.len() {
        for g in gens {
            let h = g.compose(&maps[i]);
            if seen.insert(h.clone()) {
                if maps.len() == max {
                    return None;
                }
                maps.push(h);
            }
        }
        i += 1;
    }
    Some(maps)
}

/// A left action of a monoid of monotone self-maps on a random poset with a
/// bottom, `|P| ≤ max_points` and `2 ≤ |M| ≤ max_monoid`.
pub fn random_monotone_action<R: Rng>(rng: &mut R, max_points: usize, max_monoid: usize) -> MonoidAction {
    assert!(max_points >= 2 && max_monoid >= 2);
    loop {
        let k = rng.gen_range(2..=max_points);
        let p = random_poset_with_bottom(rng, k);
        let gens: Vec<PointMap> = (0..rng.gen_range(1..=2)).map(|_| random_monotone_map(rng, &p)).collect();
        let Some(maps) = closure(k, &gens, max_monoid) else { continue };
        if maps.len() < 2 {
            continue;
        }
        let monoid = FinMonoid::of_maps(maps.clone());
        return MonoidAction::from_fn(monoid, p, |m, x| maps[m].apply(x + 1) - 1).expect("maps act on the poset");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{check_action, ActionSide};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_actions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let a = random_monotone_action(&mut rng, 5, 6);
            let v = check_action(&a);
            assert!(v.valid);
            assert!(matches!(v.side, Some(ActionSide::Left | ActionSide::Both)));
            assert!(a.monoid.len() <= 6 && a.poset.len() <= 5);
            assert_eq!(a.poset.least(), Some(0));
        }
    }
}
