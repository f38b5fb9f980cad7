//! Exhaustive generation of small graphs up to isomorphism (n <= 8).
//!
//! Graphs are represented by adjacency-row bitmasks and deduplicated by a
//! canonical form: the lexicographically greatest upper-triangle bitstring
//! over all vertex orderings.  At each position of the ordering only the
//! vertices maximizing the next column bits can lead to the maximum, so the
//! permutation search branches only on ties.

use crate::graph::Graph;
use std::collections::HashSet;

/// Adjacency rows; bit `j` of `rows[i]` is edge `{i, j}`.
pub type AdjRows = Vec<u8>;

const MAX_N: usize = 8;

/// Canonical key: column bits (0,1), (0,2), (1,2), (0,3), ... packed MSB
/// first, maximized over all orderings.
pub fn canonical_key(rows: &AdjRows) -> u32 {
    let n = rows.len();
    assert!(n <= MAX_N);
    let total_bits = n * (n - 1) / 2;
    let mut best = 0u32;
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        rows: &AdjRows,
        n: usize,
        total_bits: usize,
        placed: &mut Vec<usize>,
        used: u8,
        prefix: u32,
        prefix_bits: usize,
        best: &mut u32,
    ) {
        if placed.len() == n {
            debug_assert_eq!(prefix_bits, total_bits);
            if prefix > *best {
                *best = prefix;
            }
            return;
        }
        let k = placed.len();
        // Column bits of a candidate next vertex against the placed prefix.
        fn col(rows: &[u8], placed: &[usize], v: usize) -> u32 {
            let k = placed.len();
            let mut c = 0u32;
            for (i, &p) in placed.iter().enumerate() {
                if rows[v] >> p & 1 == 1 {
                    c |= 1 << (k - 1 - i);
                }
            }
            c
        }
        let mut max_col = 0u32;
        for v in 0..n {
            if used >> v & 1 == 0 {
                max_col = max_col.max(col(rows, placed, v));
            }
        }
        let new_prefix = prefix << k | max_col;
        let new_bits = prefix_bits + k;
        // The remaining bits can at most be all ones.
        let rest = total_bits - new_bits;
        if (new_prefix << rest | ((1u32 << rest) - 1)) < *best {
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 && col(rows, placed, v) == max_col {
                placed.push(v);
                rec(rows, n, total_bits, placed, used | 1 << v, new_prefix, new_bits, best);
                placed.pop();
            }
        }
    }
    if n <= 1 {
        return 0;
    }
    rec(rows, n, total_bits, &mut placed, 0, 0, 0, &mut best);
    best
}

/// All graphs on exactly `n` vertices up to isomorphism, as adjacency rows
/// (one arbitrary representative per class).
pub fn all_graphs(n: usize) -> Vec<AdjRows> {
    assert!(n >= 1 && n <= MAX_N, "supported range is 1..=8");
    let mut level: Vec<AdjRows> = vec![vec![0u8]];
    for k in 2..=n {
        let mut seen: HashSet<u32> = HashSet::new();
        let mut next: Vec<AdjRows> = Vec::new();
        for g in &level {
            for mask in 0u8..(1 << (k - 1)) {
                let mut rows = g.clone();
                rows.push(mask);
                for i in 0..k - 1 {
                    if mask >> i & 1 == 1 {
                        rows[i] |= 1 << (k - 1);
                    }
                }
                if seen.insert(canonical_key(&rows)) {
                    next.push(rows);
                }
            }
        }
        level = next;
    }
    level
}

pub fn rows_to_graph(rows: &AdjRows) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rows[i] >> j & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).expect("valid adjacency rows")
}

/// Every connected twin-free graph with minimum degree >= 2 on exactly `n`
/// vertices, up to isomorphism.  These are exactly the graphs admitting an
/// error-correcting locating set.
pub fn errld_admissible_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .iter()
        .map(rows_to_graph)
        .filter(|g| g.min_degree() >= 2 && g.is_connected() && g.is_twin_free())
        .collect()
}
