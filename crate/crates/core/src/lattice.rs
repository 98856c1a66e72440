//! Lattice secrecy graphs on the n×n square grid with eavesdroppers at
//! edge midpoints or at lattice sites, union-find crossing analysis, and
//! Monte Carlo threshold estimation.
//!
//! Two edge rules coexist:
//!
//! - `Analogy` is the literal percolation reading: with midpoint
//!   placement an edge is open iff its own midpoint is unoccupied (bond
//!   percolation with open probability 1−p, threshold p_c = 1/2); with
//!   site placement an edge is open iff both endpoint sites are
//!   unoccupied (site percolation, p_c ≈ 0.41).
//! - `Geometric` applies the continuum edge-removal rule on the grid: a
//!   node loses all its out-edges iff some eavesdropper lies strictly
//!   inside the unit ball around it (every lattice edge has length 1).
//!   With the open ball, a site eavesdropper mutes exactly its own site,
//!   which makes the basic graph coincide with the site-percolation
//!   analogy; with midpoint placement any occupied incident midpoint
//!   (distance 1/2) mutes the node, which is a strictly harsher rule than
//!   the bond analogy. The `closed` ball variant is a sensitivity knob:
//!   on sites it additionally mutes the four neighbors (distance exactly
//!   1); on midpoints it changes nothing (no midpoint lies at distance 1).

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param_err, Result};
use crate::secgraph::UndirectedKind;
use crate::seed::{streams, SeedSpec};
use crate::threshold::{BisectOptions, Direction, LadderSearch, ThresholdEstimate};
use crate::unionfind::UnionFind;

/// Where the eavesdropper candidates sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    EdgeMidpoints,
    Sites,
}

/// Ball used by the geometric rule when testing "eavesdropper closer
/// than the receiver" at unit edge length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BallRule {
    Open,
    Closed,
}

/// Edge rule used to build the open-edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRule {
    Analogy,
    Geometric { kind: UndirectedKind, ball: BallRule },
}

/// Occupancy sample over the candidate eavesdropper locations.
#[derive(Debug, Clone)]
pub struct LatticeConfig {
    /// Sites per side (n×n grid).
    pub n: usize,
    pub p: f64,
    pub placement: Placement,
    /// One flag per midpoint (2n(n−1)) or per site (n²).
    pub occupancy: Vec<bool>,
    pub seed: SeedSpec,
}

/// Open-edge set over the 2n(n−1) lattice edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGraph {
    pub n: usize,
    pub open_edges: Vec<bool>,
    pub rule: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossDirection {
    Horizontal,
    Vertical,
}

/// Edge/site indexing on the n×n grid. Horizontal edges come first.
pub mod index {
    pub fn site(n: usize, x: usize, y: usize) -> usize {
        y * n + x
    }

    /// Edge (x,y)-(x+1,y), x < n-1.
    pub fn h_edge(n: usize, x: usize, y: usize) -> usize {
        y * (n - 1) + x
    }

    /// Edge (x,y)-(x,y+1), y < n-1.
    pub fn v_edge(n: usize, x: usize, y: usize) -> usize {
        n * (n - 1) + y * n + x
    }

    pub fn edge_count(n: usize) -> usize {
        2 * n * (n - 1)
    }

    /// Endpoints of an edge index.
    pub fn edge_sites(n: usize, e: usize) -> (usize, usize) {
        let h = n * (n - 1);
        if e < h {
            let y = e / (n - 1);
            let x = e % (n - 1);
            (site(n, x, y), site(n, x + 1, y))
        } else {
            let e = e - h;
            let y = e / n;
            let x = e % n;
            (site(n, x, y), site(n, x, y + 1))
        }
    }
}

/// Samples the occupancy: each candidate location is occupied
/// independently with probability p.
pub fn gen_config(n: usize, p: f64, placement: Placement, seed: SeedSpec) -> Result<LatticeConfig> {
    if n < 2 {
        return param_err(format!("lattice side must be >= 2, got {n}"));
    }
    if !(0.0..=1.0).contains(&p) {
        return param_err(format!("occupancy probability must lie in [0,1], got {p}"));
    }
    let count = match placement {
        Placement::EdgeMidpoints => index::edge_count(n),
        Placement::Sites => n * n,
    };
    let mut rng = seed.stream(streams::LATTICE);
    let occupancy = (0..count).map(|_| rng.random::<f64>() < p).collect();
    Ok(LatticeConfig { n, p, placement, occupancy, seed })
}

/// Per-site "muted" indicator under the geometric rule: true iff an
/// eavesdropper sits strictly (open ball) or weakly (closed ball) within
/// distance 1 of the site, killing all of its out-edges at once.
pub fn muted_sites(cfg: &LatticeConfig, ball: BallRule) -> Vec<bool> {
    let n = cfg.n;
    let mut muted = vec![false; n * n];
    match cfg.placement {
        Placement::EdgeMidpoints => {
            // incident midpoints sit at distance 1/2; the nearest
            // non-incident midpoint is at sqrt(5)/2 > 1, so the ball
            // variant is irrelevant here
            for e in 0..index::edge_count(n) {
                if cfg.occupancy[e] {
                    let (a, b) = index::edge_sites(n, e);
                    muted[a] = true;
                    muted[b] = true;
                }
            }
        }
        Placement::Sites => {
            for y in 0..n {
                for x in 0..n {
                    if !cfg.occupancy[index::site(n, x, y)] {
                        continue;
                    }
                    muted[index::site(n, x, y)] = true;
                    if ball == BallRule::Closed {
                        // neighbors sit at distance exactly 1
                        if x > 0 {
                            muted[index::site(n, x - 1, y)] = true;
                        }
                        if x + 1 < n {
                            muted[index::site(n, x + 1, y)] = true;
                        }
                        if y > 0 {
                            muted[index::site(n, x, y - 1)] = true;
                        }
                        if y + 1 < n {
                            muted[index::site(n, x, y + 1)] = true;
                        }
                    }
                }
            }
        }
    }
    muted
}

/// Builds the open-edge set under the chosen rule.
pub fn build_lattice_graph(cfg: &LatticeConfig, rule: EdgeRule) -> LatticeGraph {
    let n = cfg.n;
    let m = index::edge_count(n);
    let (open_edges, tag) = match (rule, cfg.placement) {
        (EdgeRule::Analogy, Placement::EdgeMidpoints) => {
            ((0..m).map(|e| !cfg.occupancy[e]).collect(), "analogy_bond")
        }
        (EdgeRule::Analogy, Placement::Sites) => (
            (0..m)
                .map(|e| {
                    let (a, b) = index::edge_sites(n, e);
                    !cfg.occupancy[a] && !cfg.occupancy[b]
                })
                .collect(),
            "analogy_site",
        ),
        (EdgeRule::Geometric { kind, ball }, _) => {
            let muted = muted_sites(cfg, ball);
            let open = (0..m)
                .map(|e| {
                    let (a, b) = index::edge_sites(n, e);
                    match kind {
                        UndirectedKind::Basic => !muted[a] && !muted[b],
                        UndirectedKind::Enhanced => !muted[a] || !muted[b],
                    }
                })
                .collect();
            let tag = match kind {
                UndirectedKind::Basic => "geometric_basic",
                UndirectedKind::Enhanced => "geometric_enhanced",
            };
            (open, tag)
        }
    };
    LatticeGraph { n, open_edges, rule: tag }
}

/// True iff an open cluster joins the two opposite boundary columns
/// (or rows), via union-find over the open edges.
pub fn crossing_probability(g: &LatticeGraph, direction: CrossDirection) -> bool {
    let n = g.n;
    let left = n * n;
    let right = n * n + 1;
    let mut uf = UnionFind::new(n * n + 2);
    for (e, &open) in g.open_edges.iter().enumerate() {
        if open {
            let (a, b) = index::edge_sites(n, e);
            uf.union(a, b);
        }
    }
    for i in 0..n {
        let (a, b) = match direction {
            CrossDirection::Horizontal => (index::site(n, 0, i), index::site(n, n - 1, i)),
            CrossDirection::Vertical => (index::site(n, i, 0), index::site(n, i, n - 1)),
        };
        uf.union(left, a);
        uf.union(right, b);
    }
    uf.connected(left, right)
}

/// Fraction of `runs` independent configs at (n, p) whose graph crosses
/// horizontally. `run_base` offsets the seed stream.
pub fn crossing_fraction(
    n: usize,
    p: f64,
    placement: Placement,
    rule: EdgeRule,
    runs: u64,
    seed: SeedSpec,
    run_base: u64,
) -> Result<(u64, u64)> {
    if runs == 0 {
        return param_err("runs must be >= 1");
    }
    let successes = (0..runs)
        .into_par_iter()
        .map(|i| {
            let cfg = gen_config(n, p, placement, seed.with_run(seed.run_index + run_base + i))
                .expect("validated parameters");
            let g = build_lattice_graph(&cfg, rule);
            u64::from(crossing_probability(&g, CrossDirection::Horizontal))
        })
        .sum();
    Ok((successes, runs))
}

/// Bisection estimate of the critical occupancy probability p_c against
/// crossing probability 1/2, refined over the lattice-size ladder.
pub fn estimate_pc(
    placement: Placement,
    rule: EdgeRule,
    n_ladder: &[usize],
    runs: u64,
    seed: SeedSpec,
) -> Result<ThresholdEstimate> {
    if n_ladder.is_empty() {
        return param_err("lattice ladder must not be empty");
    }
    if runs < 30 {
        return param_err(format!("threshold estimation needs runs >= 30 per probe, got {runs}"));
    }
    let scales: Vec<f64> = n_ladder.iter().map(|&n| n as f64).collect();
    let search = LadderSearch {
        direction: Direction::LatticePc,
        scales: &scales,
        lo: 0.0,
        hi: 1.0,
        opts: BisectOptions::falling(0.005),
        runs_per_probe: runs,
        seed,
        bootstrap_reps: 400,
    };
    search.run(|scale, p, run_base| {
        crossing_fraction(scale as usize, p, placement, rule, runs, seed, run_base)
            .expect("validated parameters")
    })
}
