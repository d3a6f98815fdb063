//! Deterministic exhaustive enumerators.
//!
//! Every enumerator consults the closed-form count first and refuses to run
//! when it exceeds the cap.

use num_bigint::BigInt;

use crate::counting::{catalan, catalan_km, catalan_m};
use crate::tree::{Forest, PlaneTree};
use crate::{Error, Result};

fn check_cap(predicted: BigInt, cap: u64) -> Result<()> {
    if predicted > BigInt::from(cap) {
        Err(Error::CapExceeded { predicted, cap })
    } else {
        Ok(())
    }
}

/// Weak compositions of `total` into `parts` parts, lexicographically
/// ascending.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Cartesian product of `tables[sizes[0]] x tables[sizes[1]] x ...`, first
/// factor varying slowest.
fn product<T: Clone>(tables: &[Vec<T>], sizes: &[usize]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(acc.len() * tables[s].len());
        for prefix in &acc {
            for item in &tables[s] {
                let mut row = prefix.clone();
                row.push(item.clone());
                next.push(row);
            }
        }
        acc = next;
    }
    acc
}

/// Complete m-ary trees with `n` internal vertices.
///
/// Trees are ordered by the composition of `n - 1` among the root's subtrees,
/// then recursively within each subtree.
pub fn mary_trees(m: u32, n: usize, cap: u64) -> Result<Vec<PlaneTree>> {
    if m == 0 {
        return Err(Error::InvalidInput("arity must be at least 1".into()));
    }
    check_cap(catalan_m(m as u64, n as u64), cap)?;
    let mut tables: Vec<Vec<PlaneTree>> = vec![vec![PlaneTree::leaf()]];
    for j in 1..=n {
        let mut level = Vec::new();
        for sizes in compositions(j - 1, m as usize) {
            level.extend(product(&tables, &sizes).into_iter().map(PlaneTree::node));
        }
        tables.push(level);
    }
    Ok(tables.swap_remove(n))
}

/// (k,m)-ary trees of order `n`, sorted by their paren form.
pub fn km_trees(k: u32, m: u32, n: usize, cap: u64) -> Result<Vec<PlaneTree>> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidInput("k and m must be at least 1".into()));
    }
    check_cap(catalan_km(k as u64, m as u64, n as u64), cap)?;
    // slots[j]: odd-level subtrees carrying j crucial vertices.
    let mut trees: Vec<Vec<PlaneTree>> = Vec::with_capacity(n + 1);
    let mut slots: Vec<Vec<PlaneTree>> = vec![vec![PlaneTree::leaf()]];
    for j in 0..=n {
        if j > 0 {
            let mut level = Vec::new();
            for sizes in compositions(j - 1, m as usize) {
                level.extend(product(&trees, &sizes).into_iter().map(PlaneTree::node));
            }
            slots.push(level);
        }
        let mut level = Vec::new();
        for sizes in compositions(j, k as usize) {
            level.extend(product(&slots, &sizes).into_iter().map(PlaneTree::node));
        }
        trees.push(level);
    }
    let mut out = trees.swap_remove(n);
    out.sort_by_cached_key(PlaneTree::to_paren);
    Ok(out)
}

/// Plane trees with exactly `size >= 1` vertices, in the order induced by
/// [`plane_forests`] on the forest below the root.
pub fn plane_trees(size: usize, cap: u64) -> Result<Vec<PlaneTree>> {
    if size == 0 {
        return Err(Error::InvalidInput("a plane tree has at least one vertex".into()));
    }
    Ok(plane_forests(size - 1, cap)?.into_iter().map(PlaneTree::node).collect())
}

/// Plane forests with `n` vertices in total: ordered by the size of the first
/// tree, then by that tree, then recursively by the remaining forest.
pub fn plane_forests(n: usize, cap: u64) -> Result<Vec<Forest>> {
    check_cap(catalan(n as u64), cap)?;
    let mut forests: Vec<Vec<Forest>> = vec![vec![Vec::new()]];
    for j in 1..=n {
        let mut level = Vec::new();
        for first in 1..=j {
            for below_root in &forests[first - 1] {
                let head = PlaneTree::node(below_root.clone());
                for rest in &forests[j - first] {
                    let mut f = Vec::with_capacity(rest.len() + 1);
                    f.push(head.clone());
                    f.extend(rest.iter().cloned());
                    level.push(f);
                }
            }
        }
        forests.push(level);
    }
    Ok(forests.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::forest_vertex_count;
    use std::collections::HashSet;

    /// Brute force: every plane tree with `v` vertices, filtered by a
    /// predicate. Built from all balanced paren strings, independent of the
    /// recursive constructors above.
    fn all_plane_trees(v: usize) -> Vec<PlaneTree> {
        fn words(open: usize, close: usize, cur: &mut String, out: &mut Vec<String>) {
            if open == 0 && close == 0 {
                out.push(cur.clone());
                return;
            }
            if open > 0 {
                cur.push('(');
                words(open - 1, close + 1, cur, out);
                cur.pop();
            }
            if close > 0 {
                cur.push(')');
                words(open, close - 1, cur, out);
                cur.pop();
            }
        }
        // Root wraps a balanced word with v - 1 pairs.
        let mut inner = Vec::new();
        words(v - 1, 0, &mut String::new(), &mut inner);
        inner.into_iter().map(|w| format!("({w})").parse().unwrap()).collect()
    }

    #[test]
    fn composition_order() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(1, 0).is_empty());
    }

    #[test]
    fn mary_small_cases() {
        assert_eq!(mary_trees(2, 3, 100).unwrap().len(), 5);
        assert_eq!(mary_trees(3, 0, 100).unwrap(), vec![PlaneTree::leaf()]);
        // Brute force over all plane trees with 3*2+1 vertices.
        let brute: Vec<_> = all_plane_trees(7)
            .into_iter()
            .filter(|t| t.is_complete_mary(3) && t.internal_count() == 2)
            .collect();
        assert_eq!(brute.len(), 3);
        assert_eq!(mary_trees(3, 2, 100).unwrap().len(), brute.len());
    }

    #[test]
    fn mary_first_tree_is_right_comb() {
        // Composition (0, n-1) comes first: left child a leaf.
        let trees = mary_trees(2, 2, 100).unwrap();
        assert_eq!(trees[0].to_paren(), "(()(()()))");
        assert_eq!(trees[1].to_paren(), "((()())())");
    }

    #[test]
    fn mary_matches_brute_force() {
        for m in 1..=3u32 {
            for n in 0..=4usize {
                let v = m as usize * n + 1;
                if v > 13 {
                    continue;
                }
                let brute: HashSet<_> = all_plane_trees(v)
                    .into_iter()
                    .filter(|t| t.is_complete_mary(m) && t.internal_count() == n)
                    .collect();
                let got = mary_trees(m, n, 10_000).unwrap();
                let set: HashSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len());
                assert_eq!(set, brute, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn km_small_cases() {
        assert_eq!(km_trees(3, 2, 1, 100).unwrap().len(), 3);
        assert_eq!(km_trees(2, 1, 2, 100).unwrap().len(), 5);
        assert_eq!(km_trees(1, 1, 0, 100).unwrap().len(), 1);
    }

    #[test]
    fn km_matches_brute_force() {
        for (k, m, n) in [(2u32, 1u32, 2usize), (3, 2, 1), (1, 2, 2), (2, 2, 1), (1, 1, 3)] {
            let v = (m as usize * n + 1) * (k as usize + 1);
            let brute: HashSet<_> = all_plane_trees(v)
                .into_iter()
                .filter(|t| t.km_order(k, m) == Some(n))
                .collect();
            let got = km_trees(k, m, n, 10_000).unwrap();
            let set: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len());
            assert_eq!(set, brute, "({k},{m},{n})");
        }
    }

    #[test]
    fn km_sorted_and_deterministic() {
        let a = km_trees(2, 2, 2, 1000).unwrap();
        let b = km_trees(2, 2, 2, 1000).unwrap();
        assert_eq!(a, b);
        let keys: Vec<_> = a.iter().map(PlaneTree::to_paren).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn forests_small_cases() {
        assert_eq!(plane_forests(0, 10).unwrap(), vec![Vec::<PlaneTree>::new()]);
        let two = plane_forests(2, 10).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0], vec![PlaneTree::leaf(), PlaneTree::leaf()]);
        assert_eq!(two[1], vec!["(())".parse().unwrap()]);
        assert_eq!(plane_forests(3, 10).unwrap().len(), 5);
        for n in 0..=7 {
            let fs = plane_forests(n, 10_000).unwrap();
            assert!(fs.iter().all(|f| forest_vertex_count(f) == n));
            let set: HashSet<_> = fs.iter().cloned().collect();
            assert_eq!(set.len(), fs.len());
        }
        assert_eq!(plane_trees(4, 100).unwrap().len(), 5);
    }

    #[test]
    fn cap_is_enforced() {
        let err = mary_trees(2, 10, 100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { predicted: BigInt::from(16796), cap: 100 });
        assert!(km_trees(3, 3, 3, 10).is_err());
        assert!(plane_forests(8, 1000).is_err());
        assert!(mary_trees(0, 1, 10).is_err());
    }
}
