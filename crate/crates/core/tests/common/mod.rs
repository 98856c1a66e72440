//! Shared helpers for the integration suites: brute-force reference
//! constructions kept deliberately independent of the library's grid and
//! union-find paths. Each suite uses its own subset.
#![allow(dead_code)]

use secrograph::pointprocess::{PointSet, Window};
use secrograph::secgraph::SecrecyGraph;

/// O(n·m) nearest-eavesdropper distances.
pub fn brute_guard_radii(goods: &PointSet, eaves: &PointSet, metric: &Window) -> Vec<f64> {
    goods
        .points
        .iter()
        .map(|&p| {
            eaves
                .points
                .iter()
                .map(|&q| metric.distance(p, q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// O(n²·m) directed adjacency from the raw edge rule, over nodes sorted
/// the way the library sorts them.
pub fn brute_adjacency(goods: &PointSet, eaves: &PointSet, r: f64) -> Vec<Vec<u32>> {
    let metric = goods.window;
    let mut pts = goods.points.clone();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    let sorted = PointSet { points: pts, ..goods.clone() };
    let guard = brute_guard_radii(&sorted, eaves, &metric);
    (0..sorted.len())
        .map(|i| {
            (0..sorted.len())
                .filter(|&j| {
                    if i == j {
                        return false;
                    }
                    let d = metric.distance(sorted.points[i], sorted.points[j]);
                    d <= r && d < guard[i]
                })
                .map(|j| j as u32)
                .collect()
        })
        .collect()
}

/// Reachability row via boolean matrix powers (independent of BFS).
pub fn closure_row(g: &SecrecyGraph, start: usize) -> Vec<u32> {
    let n = g.node_count();
    let mut reach = vec![vec![false; n]; n];
    for (u, adj) in g.out_adj.iter().enumerate() {
        reach[u][u] = true;
        for &v in adj {
            reach[u][v as usize] = true;
        }
    }
    // repeated squaring of (I + A) until fixpoint
    loop {
        let mut next = reach.clone();
        for i in 0..n {
            for (k, row) in reach.iter().enumerate() {
                if reach[i][k] {
                    for (j, cell) in next[i].iter_mut().enumerate() {
                        *cell = *cell || row[j];
                    }
                }
            }
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    (0..n).filter(|&j| reach[start][j]).map(|j| j as u32).collect()
}

/// Component labels by BFS flood fill over an undirected edge list,
/// labeled by smallest member index.
pub fn bfs_labels(n: usize, edges: &[(u32, u32)]) -> Vec<u32> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    let mut label = vec![u32::MAX; n];
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = start as u32;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if label[v] == u32::MAX {
                    label[v] = start as u32;
                    stack.push(v);
                }
            }
        }
    }
    label
}
