use super::FinPoset;

/// Checks that `map` is a bijection `p → q` preserving and reflecting `≤`.
pub fn is_order_isomorphism(p: &FinPoset, q: &FinPoset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut hit = vec![false; q.len()];
    for &m in map {
        if m >= q.len() || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(i, j) == q.leq(map[i], map[j])))
}

/// Searches for an order isomorphism `p → q`; the returned map sends index `i`
/// of `p` to `map[i]` of `q`.
///
/// Backtracking over elements in height order, candidates restricted to equal
/// `(height, up-degree, down-degree)` profiles and tried in ascending index.
pub fn are_isomorphic(p: &FinPoset, q: &FinPoset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let profile = |x: &FinPoset| -> Vec<(usize, usize, usize)> {
        let h = x.heights();
        (0..x.len()).map(|i| (h[i], x.up_degree(i), x.down_degree(i))).collect()
    };
    let (pp, qp) = (profile(p), profile(q));
    let mut ps = pp.clone();
    let mut qs = qp.clone();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return None;
    }
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (pp[i].0, i));
    let candidates: Vec<Vec<usize>> =
        (0..p.len()).map(|i| (0..q.len()).filter(|&j| qp[j] == pp[i]).collect()).collect();

    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &order, &candidates, 0, &mut map, &mut used) {
        assert!(is_order_isomorphism(p, q, &map), "isomorphism search returned an invalid map");
        Some(map)
    } else {
        None
    }
}

fn extend(
    p: &FinPoset,
    q: &FinPoset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let b = map[a];
            p.leq(a, x) == q.leq(b, y) && p.leq(x, a) == q.leq(y, b)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, order, candidates, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_iso_and_size_mismatch() {
        let b = FinPoset::boolean(3);
        let m = are_isomorphic(&b, &b).unwrap();
        assert!(is_order_isomorphism(&b, &b, &m));
        assert!(are_isomorphic(&b, &FinPoset::chain(8)).is_none());
        assert!(are_isomorphic(&FinPoset::boolean(2), &FinPoset::chain(5)).is_none());
    }

    #[test]
    fn relabelled_poset() {
        // Reversed labels of a chain are still a chain.
        let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let rev = FinPoset::from_fn(labels, |i, j| i >= j).unwrap();
        assert_eq!(are_isomorphic(&rev, &FinPoset::chain(4)), Some(vec![3, 2, 1, 0]));
    }
}
