//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own algorithms for the quantity being checked.
#![allow(dead_code)]

use csub::fincat::FinCategory;
use csub::poset::FinPoset;

/// Bell numbers by `B(n+1) = Σ_k C(n,k) B(k)`.
pub fn bell(n: usize) -> u64 {
    let mut b = vec![1u64];
    for m in 0..n {
        let mut c = 1u64;
        let mut s = 0u64;
        for k in 0..=m {
            s += c * b[k];
            c = c * (m - k) as u64 / (k + 1) as u64;
        }
        b.push(s);
    }
    b[n]
}

/// All set partitions of `{1..n}` via restricted growth strings, as sorted blocks.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == rgs.len() {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, rgs, out);
        }
    }
    if n > 0 {
        rec(1, 1, &mut rgs, &mut out);
    }
    out
}

pub fn partition_label(blocks: &[Vec<usize>]) -> String {
    blocks.iter().map(|b| b.iter().map(|x| x.to_string()).collect::<String>()).collect::<Vec<_>>().join("|")
}

pub fn parse_label(label: &str) -> Vec<Vec<usize>> {
    label.split('|').map(|b| b.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).collect()
}

/// Every block of `a` sits inside a block of `b`.
pub fn refines(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().all(|blk| b.iter().any(|c| blk.iter().all(|x| c.contains(x))))
}

/// Möbius values from the bottom, solving the defining sum element by element
/// in order of the number of elements below.
pub fn mobius_oracle(len: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<i64> {
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&x| (0..len).filter(|&y| leq(y, x)).count());
    let mut mu = vec![0i64; len];
    for (k, &x) in order.iter().enumerate() {
        if k == 0 {
            mu[x] = 1;
            continue;
        }
        mu[x] = -(0..len).filter(|&y| y != x && leq(y, x)).map(|y| mu[y]).sum::<i64>();
    }
    mu
}

/// Coefficients (constant first) of `∏ (λ − r)`.
pub fn poly_from_roots(roots: &[i64]) -> Vec<i64> {
    let mut p = vec![1i64];
    for &r in roots {
        let mut q = vec![0i64; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            q[i + 1] += c;
            q[i] -= r * c;
        }
        p = q;
    }
    p
}

pub fn is_order_iso(p: &FinPoset, q: &FinPoset, map: &[usize]) -> bool {
    let n = p.len();
    if q.len() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == q.leq(map[i], map[j])))
}

/// `f` (objects, morphisms) is a bijective functor `c → d`.
pub fn is_category_iso(c: &FinCategory, d: &FinCategory, objects: &[usize], morphisms: &[usize]) -> bool {
    let bij = |m: &[usize], n: usize| {
        let mut s = m.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == n && m.len() == n && s.iter().all(|&x| x < n)
    };
    if !bij(objects, c.num_objects()) || !bij(morphisms, c.num_morphisms()) || c.num_morphisms() != d.num_morphisms() {
        return false;
    }
    let typed = (0..c.num_morphisms())
        .all(|f| d.dom(morphisms[f]) == objects[c.dom(f)] && d.cod(morphisms[f]) == objects[c.cod(f)]);
    let ids = (0..c.num_objects()).all(|x| morphisms[c.id(x)] == d.id(objects[x]));
    let comp = (0..c.num_morphisms()).all(|g| {
        (0..c.num_morphisms()).all(|f| match c.try_compose(g, f) {
            Some(h) => d.try_compose(morphisms[g], morphisms[f]) == Some(morphisms[h]),
            None => true,
        })
    });
    typed && ids && comp
}

/// A `rows × cols` 0/1 matrix is an injective *-homomorphism `ℂ^cols → ℂ^rows`
/// iff images of the minimal projections are orthogonal projections
/// (coordinatewise products) and none of them vanishes.
pub fn matrix_is_injective_hom(m: &[Vec<u8>], cols: usize) -> bool {
    let col = |a: usize| m.iter().map(|r| r[a]).collect::<Vec<u8>>();
    for a in 0..cols {
        for b in 0..cols {
            let (x, y) = (col(a), col(b));
            let prod: Vec<u8> = x.iter().zip(&y).map(|(p, q)| p * q).collect();
            let want: Vec<u8> = if a == b { x.clone() } else { vec![0; x.len()] };
            if prod != want {
                return false;
            }
        }
    }
    (0..cols).all(|a| col(a).contains(&1))
}

pub fn all_01_matrices(rows: usize, cols: usize) -> Vec<Vec<Vec<u8>>> {
    (0u64..1 << (rows * cols))
        .map(|mask| (0..rows).map(|r| (0..cols).map(|c| (mask >> (r * cols + c) & 1) as u8).collect()).collect())
        .collect()
}
