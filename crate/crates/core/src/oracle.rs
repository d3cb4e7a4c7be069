//! Exhaustive reference solvers over raw edge lists.
//!
//! These share no code with the representations or the solvers. They
//! enumerate the solution space directly from the problem definitions and
//! are only meant for small instances.

use thiserror::Error;

/// Largest vertex count accepted by the subset-enumeration oracles.
pub const SUBSET_LIMIT: usize = 24;
/// Largest vertex count accepted by the partition-enumeration oracle.
pub const PARTITION_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("instance with {n} vertices exceeds the oracle limit of {limit}")]
pub struct TooLarge {
    pub n: usize,
    pub limit: usize,
}

fn adjacency_masks(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn guard(n: usize, limit: usize) -> Result<(), TooLarge> {
    if n > limit {
        Err(TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Minimum vertex cover size, as `n` minus a maximum independent set.
pub fn brute_vc(n: usize, edges: &[(usize, usize)]) -> Result<usize, TooLarge> {
    guard(n, SUBSET_LIMIT)?;
    let adj = adjacency_masks(n, edges);

    fn mis(candidates: u32, adj: &[u32]) -> u32 {
        if candidates == 0 {
            return 0;
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << v);
        // v has no candidate neighbor: taking it is never worse
        if adj[v] & rest == 0 {
            return 1 + mis(rest, adj);
        }
        let with = 1 + mis(rest & !adj[v], adj);
        if with as usize > rest.count_ones() as usize {
            return with;
        }
        with.max(mis(rest, adj))
    }

    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(n - mis(all, &adj) as usize)
}

/// True iff the graph has a vertex cover with at most `k` vertices.
pub fn brute_vc_decision(n: usize, edges: &[(usize, usize)], k: usize) -> Result<bool, TooLarge> {
    Ok(brute_vc(n, edges)? <= k)
}

/// Size of a minimum dominating set, by enumerating subsets in order of size.
pub fn brute_ds(n: usize, edges: &[(usize, usize)]) -> Result<usize, TooLarge> {
    guard(n, SUBSET_LIMIT)?;
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(n, edges);
    let closed: Vec<u32> = (0..n).map(|v| adj[v] | (1 << v)).collect();
    let all = (1u32 << n) - 1;
    for size in 1..=n {
        // Gosper's hack over all subsets with `size` bits
        let mut set: u32 = (1u32 << size) - 1;
        loop {
            let mut covered = 0u32;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                covered |= closed[v];
                rest &= rest - 1;
            }
            if covered == all {
                return Ok(size);
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            if r > all || r == 0 {
                break;
            }
            set = (((r ^ set) >> 2) / c) | r;
            if set > all {
                break;
            }
        }
    }
    unreachable!("the full vertex set dominates")
}

/// Minimum number of edge insertions and deletions turning the graph into
/// a disjoint union of cliques, by enumerating all vertex partitions.
pub fn brute_ce_min(n: usize, edges: &[(usize, usize)]) -> Result<usize, TooLarge> {
    guard(n, PARTITION_LIMIT)?;
    let adj = adjacency_masks(n, edges);
    let mut block = vec![0usize; n];
    let mut best = usize::MAX;

    // Assign vertices one at a time to an existing block or a new one,
    // charging the pairs between the new vertex and earlier vertices.
    fn assign(
        v: usize,
        blocks: usize,
        cost: usize,
        block: &mut [usize],
        adj: &[u32],
        best: &mut usize,
    ) {
        if cost >= *best {
            return;
        }
        if v == block.len() {
            *best = cost;
            return;
        }
        for b in 0..=blocks {
            let mut extra = 0;
            for u in 0..v {
                let same = block[u] == b;
                let edge = adj[v] >> u & 1 == 1;
                if same != edge {
                    extra += 1;
                }
            }
            block[v] = b;
            let next = if b == blocks { blocks + 1 } else { blocks };
            assign(v + 1, next, cost + extra, block, adj, best);
        }
    }

    assign(0, 0, 0, &mut block, &adj, &mut best);
    Ok(if n == 0 { 0 } else { best })
}

/// True iff at most `k` edits make the graph a cluster graph.
pub fn brute_ce(n: usize, edges: &[(usize, usize)], k: usize) -> Result<bool, TooLarge> {
    Ok(brute_ce_min(n, edges)? <= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        e
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    /// Plain 2^n scan used to cross-check the pruned searches.
    fn naive_vc(n: usize, edges: &[(usize, usize)]) -> usize {
        (0u32..1 << n)
            .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn small_known_values() {
        assert_eq!(brute_vc(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), 2);
        let star: Vec<_> = (1..10).map(|v| (0, v)).collect();
        assert_eq!(brute_ds(10, &star).unwrap(), 1);
        assert_eq!(brute_vc(10, &petersen()).unwrap(), 6);
        assert_eq!(brute_ds(10, &petersen()).unwrap(), 3);
        assert_eq!(brute_ds(9, &cycle(9)).unwrap(), 3);
        assert_eq!(brute_vc(0, &[]).unwrap(), 0);
        assert_eq!(brute_ds(0, &[]).unwrap(), 0);
        assert_eq!(brute_ds(4, &[]).unwrap(), 4);
    }

    #[test]
    fn cluster_editing_small_cases() {
        let p3 = [(0, 1), (1, 2)];
        assert!(!brute_ce(3, &p3, 0).unwrap());
        assert!(brute_ce(3, &p3, 1).unwrap());
        let c4 = cycle(4);
        assert!(!brute_ce(4, &c4, 1).unwrap());
        assert!(brute_ce(4, &c4, 2).unwrap());
        let two_cliques = [(0, 1), (0, 2), (1, 2), (3, 4)];
        assert_eq!(brute_ce_min(5, &two_cliques).unwrap(), 0);
    }

    #[test]
    fn c4_single_edits_all_fail() {
        // enumerate the six single edits of C4 directly
        let c4 = cycle(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                let mut e: Vec<(usize, usize)> =
                    c4.iter().copied().filter(|&(a, b)| (a.min(b), a.max(b)) != (u, v)).collect();
                if e.len() == c4.len() {
                    e.push((u, v));
                }
                assert!(brute_ce_min(4, &e).unwrap() > 0);
            }
        }
    }

    #[test]
    fn size_guards() {
        assert_eq!(brute_vc(25, &[]), Err(TooLarge { n: 25, limit: SUBSET_LIMIT }));
        assert!(brute_ds(25, &[]).is_err());
        assert!(brute_ce(13, &[], 0).is_err());
    }

    #[test]
    fn vc_agrees_with_naive_scan_and_complement_bounds() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let vc = brute_vc(n, &edges).unwrap();
            assert_eq!(vc, naive_vc(n, &edges));
            let ds = brute_ds(n, &edges).unwrap();
            let mut deg = vec![0usize; n];
            for &(u, v) in &edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            let max_deg = deg.iter().copied().max().unwrap_or(0);
            assert!(ds <= n - max_deg);
            assert!(ds * (max_deg + 1) >= n);
            // monotone in k
            let ce = brute_ce_min(n.min(8), &edges.iter().copied().filter(|&(u, v)| u < 8 && v < 8).collect::<Vec<_>>()).unwrap();
            for k in 0..6 {
                let sub: Vec<_> = edges.iter().copied().filter(|&(u, v)| u < 8 && v < 8).collect();
                assert_eq!(brute_ce(n.min(8), &sub, k).unwrap(), ce <= k);
                assert!(!brute_ce(n.min(8), &sub, k).unwrap() || brute_ce(n.min(8), &sub, k + 1).unwrap());
            }
        }
    }
}
