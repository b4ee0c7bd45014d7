//! Brute-force oracles that share nothing with the library's search code.

#![allow(dead_code)]

use oddgrid::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Adjacency rows as bitmasks; only for graphs with at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64);
    (0..g.n())
        .map(|u| {
            (0..g.n())
                .filter(|&v| g.adjacent(u, v))
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect()
}

pub fn is_odd_independent_mask(adj: &[u64], s: u64) -> bool {
    (0..adj.len()).all(|v| {
        let hits = (adj[v] & s).count_ones();
        if s >> v & 1 == 1 {
            hits == 0
        } else {
            hits == 0 || hits % 2 == 1
        }
    })
}

/// Maximum odd independent set size by checking every subset.
pub fn brute_alpha_od(adj: &[u64]) -> usize {
    assert!(adj.len() <= 20);
    (0u64..1 << adj.len())
        .filter(|&s| is_odd_independent_mask(adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Independence number by plain include/exclude branching.
pub fn brute_alpha(adj: &[u64]) -> usize {
    fn go(adj: &[u64], cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        let with = 1 + go(adj, rest & !adj[v]);
        if adj[v] & rest == 0 {
            return with;
        }
        with.max(go(adj, rest))
    }
    let all = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    go(adj, all)
}

/// Distance-at-most-two adjacency.
pub fn square_masks(adj: &[u64]) -> Vec<u64> {
    (0..adj.len())
        .map(|v| {
            let mut m = adj[v];
            for u in 0..adj.len() {
                if adj[v] >> u & 1 == 1 {
                    m |= adj[u];
                }
            }
            m & !(1 << v)
        })
        .collect()
}

/// Erdős–Rényi graph with a random edge probability.
pub fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
