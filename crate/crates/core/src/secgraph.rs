//! Construction of directed, basic, and enhanced secrecy graphs from
//! sampled point sets, plus degree, isolation, component, and edge-length
//! statistics.
//!
//! The edge rule: a directed edge x→y exists iff δ(x,y) ≤ r and
//! δ(x,y) < R_x, where R_x is the distance from x to its nearest
//! eavesdropper. The strict inequality implements the closed-ball removal
//! rule (an eavesdropper exactly at distance δ(x,y) kills the edge); in
//! the continuum such ties are null events, and the same rule makes the
//! lattice site analogy exact.

use serde::Serialize;

use crate::error::{param_err, Result};
use crate::grid::UniformGrid;
use crate::pointprocess::{guard_radii, index_cell_size, PointSet};
use crate::stats::DiscreteCounts;
use crate::unionfind::UnionFind;

/// A directed secrecy graph over sorted good nodes.
///
/// Node indices are the stable sort order of the good nodes by (x, y), so
/// every derived output is byte-reproducible.
#[derive(Debug, Clone)]
pub struct SecrecyGraph {
    pub goods: PointSet,
    pub eaves: PointSet,
    /// Transmission range r (possibly `+∞`).
    pub range: f64,
    /// Per-good-node distance to the nearest eavesdropper.
    pub guard_radii: Vec<f64>,
    /// Out-neighbor indices per node, each list sorted ascending.
    pub out_adj: Vec<Vec<u32>>,
}

fn sort_points(ps: &mut PointSet) {
    let origin = ps.origin.map(|i| ps.points[i as usize]);
    ps.points
        .sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("NaN coordinate"));
    if let Some(op) = origin {
        let idx = ps.points.iter().position(|&p| p == op).expect("origin present");
        ps.origin = Some(idx as u32);
    }
}

/// Builds the directed secrecy graph: x→y iff δ(x,y) ≤ r and δ(x,y) < R_x.
/// With Ψ = ∅ and finite r this is exactly Gilbert's disk graph.
pub fn build_directed(goods: &PointSet, eaves: &PointSet, r: f64) -> Result<SecrecyGraph> {
    if r.is_nan() || r <= 0.0 {
        return param_err(format!("range must be > 0, got {r}"));
    }
    if r.is_infinite() && eaves.is_empty() {
        return param_err("r = inf with an empty eavesdropper set gives a complete graph");
    }
    let mut goods = goods.clone();
    let mut eaves = eaves.clone();
    sort_points(&mut goods);
    sort_points(&mut eaves);

    let guard = guard_radii(&goods, &eaves)?;
    let window = goods.window;
    let side = window.side();
    let n = goods.len();

    // Cell size keyed to the larger of the range and the eavesdropper
    // spacing (good-node spacing when there are no eavesdroppers).
    let spacing_intensity = if eaves.intensity > 0.0 { eaves.intensity } else { goods.intensity };
    let cell = index_cell_size(r, spacing_intensity, side);
    let (lo, extent) = window.sampling_region();
    let grid = UniformGrid::build(&goods.points, lo, extent, cell, window.is_torus());

    let mut out_adj = vec![Vec::new(); n];
    for i in 0..n {
        let p = goods.points[i];
        let reach = r.min(guard[i]);
        if reach <= 0.0 {
            continue;
        }
        let radius = if reach.is_finite() { reach } else { side * 2.0 };
        let adj = &mut out_adj[i];
        grid.for_disk(p, radius, |j| {
            if j as usize == i {
                return;
            }
            let d = window.distance(p, goods.points[j as usize]);
            if d <= r && d < guard[i] {
                adj.push(j);
            }
        });
        adj.sort_unstable();
    }

    let g = SecrecyGraph { goods, eaves, range: r, guard_radii: guard, out_adj };
    debug_assert!(g.check_edge_rule());
    Ok(g)
}

impl SecrecyGraph {
    pub fn node_count(&self) -> usize {
        self.goods.len()
    }

    pub fn directed_edge_count(&self) -> u64 {
        self.out_adj.iter().map(|a| a.len() as u64).sum()
    }

    pub fn has_edge(&self, from: u32, to: u32) -> bool {
        self.out_adj[from as usize].binary_search(&to).is_ok()
    }

    /// Verifies δ(x,y) ≤ r and δ(x,y) < R_x on every edge, plus sortedness
    /// and the absence of loops/duplicates.
    pub fn check_edge_rule(&self) -> bool {
        self.out_adj.iter().enumerate().all(|(i, adj)| {
            adj.windows(2).all(|w| w[0] < w[1])
                && adj.iter().all(|&j| {
                    let d = self
                        .goods
                        .window
                        .distance(self.goods.points[i], self.goods.points[j as usize]);
                    j as usize != i && d <= self.range && d < self.guard_radii[i]
                })
        })
    }
}

/// Undirected edge sets derived from the directed graph. `both` are the
/// basic edges E (secure in both directions); `one_way` is E′ \ E.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSets {
    pub n_nodes: usize,
    /// Pairs (i, j) with i < j present in both directions, sorted.
    pub both: Vec<(u32, u32)>,
    /// Pairs present in exactly one direction, sorted.
    pub one_way: Vec<(u32, u32)>,
    /// |vec E|, the number of directed edges.
    pub directed_count: u64,
}

impl EdgeSets {
    /// |E|
    pub fn basic_count(&self) -> u64 {
        self.both.len() as u64
    }

    /// |E′|
    pub fn enhanced_count(&self) -> u64 {
        (self.both.len() + self.one_way.len()) as u64
    }

    pub fn enhanced_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.both.iter().chain(self.one_way.iter()).copied()
    }
}

/// Splits the directed edge set into basic (bidirectional) and one-way
/// pairs. The counts satisfy |E| + |E′| = |vec E| on every graph.
pub fn derive_edge_sets(g: &SecrecyGraph) -> EdgeSets {
    let mut both = Vec::new();
    let mut one_way = Vec::new();
    for (u, adj) in g.out_adj.iter().enumerate() {
        let u = u as u32;
        for &v in adj {
            let reverse = g.has_edge(v, u);
            if u < v {
                if reverse {
                    both.push((u, v));
                } else {
                    one_way.push((u, v));
                }
            } else if !reverse {
                one_way.push((v, u));
            }
        }
    }
    one_way.sort_unstable();
    let sets = EdgeSets {
        n_nodes: g.node_count(),
        both,
        one_way,
        directed_count: g.directed_edge_count(),
    };
    debug_assert_eq!(
        sets.basic_count() + sets.enhanced_count(),
        sets.directed_count,
        "partition identity |E| + |E'| = |vec E|"
    );
    sets
}

/// Which undirected secrecy graph a query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndirectedKind {
    Basic,
    Enhanced,
}

/// The four degree notions of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeDegrees {
    pub out_deg: u32,
    pub in_deg: u32,
    pub basic: u32,
    pub enhanced: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    Out,
    In,
    Basic,
    Enhanced,
}

impl NodeDegrees {
    pub fn get(&self, kind: DegreeKind) -> u32 {
        match kind {
            DegreeKind::Out => self.out_deg,
            DegreeKind::In => self.in_deg,
            DegreeKind::Basic => self.basic,
            DegreeKind::Enhanced => self.enhanced,
        }
    }
}

/// Per-node degrees plus the interior mask used for boundary-unbiased
/// statistics.
///
/// Whole-sample sums obey the exact identities
/// Σ N^in = Σ N^out = |vec E| and N̄ + N̄′ = 2·N̄^out; estimators meant to
/// match the infinite-plane formulas use only interior nodes (those whose
/// full neighborhood of radius min(r, R_x) lies inside the window — on a
/// torus that is every node).
#[derive(Debug, Clone)]
pub struct DegreeSummary {
    pub per_node: Vec<NodeDegrees>,
    pub interior: Vec<bool>,
    pub directed_count: u64,
}

/// Computes per-node degrees for all four graphs and the interior mask.
pub fn degree_summary(g: &SecrecyGraph) -> DegreeSummary {
    let n = g.node_count();
    let mut in_deg = vec![0u32; n];
    let mut basic = vec![0u32; n];
    for (u, adj) in g.out_adj.iter().enumerate() {
        for &v in adj {
            in_deg[v as usize] += 1;
            if g.has_edge(v, u as u32) {
                basic[u] += 1;
            }
        }
    }
    let per_node: Vec<NodeDegrees> = (0..n)
        .map(|i| {
            let out_deg = g.out_adj[i].len() as u32;
            let nd = NodeDegrees {
                out_deg,
                in_deg: in_deg[i],
                basic: basic[i],
                enhanced: out_deg + in_deg[i] - basic[i],
            };
            debug_assert!(
                nd.basic <= nd.out_deg.min(nd.in_deg)
                    && nd.out_deg.max(nd.in_deg) <= nd.enhanced
                    && nd.enhanced <= nd.out_deg + nd.in_deg,
                "per-node degree chain violated at {i}: {nd:?}"
            );
            nd
        })
        .collect();
    let interior = (0..n)
        .map(|i| {
            let reach = g.range.min(g.guard_radii[i]);
            g.goods.window.dist_to_edge(g.goods.points[i]) >= reach
        })
        .collect();
    DegreeSummary { per_node, interior, directed_count: g.directed_edge_count() }
}

impl DegreeSummary {
    pub fn node_count(&self) -> usize {
        self.per_node.len()
    }

    pub fn interior_count(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }

    /// Sum of one degree kind over all nodes (exact integer).
    pub fn full_sum(&self, kind: DegreeKind) -> u64 {
        self.per_node.iter().map(|d| d.get(kind) as u64).sum()
    }

    /// Mean over all nodes of the finite sample.
    pub fn full_mean(&self, kind: DegreeKind) -> f64 {
        self.full_sum(kind) as f64 / self.node_count() as f64
    }

    /// Degree histogram over interior nodes only.
    pub fn interior_counts(&self, kind: DegreeKind) -> DiscreteCounts {
        let mut c = DiscreteCounts::default();
        for (d, &inside) in self.per_node.iter().zip(&self.interior) {
            if inside {
                c.record(d.get(kind) as usize);
            }
        }
        c
    }
}

/// Lengths of all directed edges of one graph, with generating parameters.
#[derive(Debug, Clone)]
pub struct EdgeLengthSample {
    pub lengths: Vec<f64>,
    /// Eavesdropper intensity of the generating model.
    pub lambda: f64,
    pub r: f64,
}

/// Collects every directed edge's length. Each length is < the source's
/// guard radius and ≤ r by the edge rule.
pub fn edge_lengths(g: &SecrecyGraph) -> EdgeLengthSample {
    let mut lengths = Vec::with_capacity(g.directed_edge_count() as usize);
    for (u, adj) in g.out_adj.iter().enumerate() {
        let p = g.goods.points[u];
        for &v in adj {
            let d = g.goods.window.distance(p, g.goods.points[v as usize]);
            debug_assert!(d < g.guard_radii[u] && d <= g.range);
            lengths.push(d);
        }
    }
    EdgeLengthSample { lengths, lambda: g.eaves.intensity, r: g.range }
}

/// Breadth-first closure over directed edges; contains `start`.
/// Returned indices are sorted.
pub fn out_component(g: &SecrecyGraph, start: u32) -> Vec<u32> {
    let n = g.node_count();
    assert!((start as usize) < n, "start node out of range");
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[start as usize] = true;
    queue.push_back(start);
    let mut out = vec![start];
    while let Some(u) = queue.pop_front() {
        for &v in &g.out_adj[u as usize] {
            if !seen[v as usize] {
                seen[v as usize] = true;
                out.push(v);
                queue.push_back(v);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Connected components of the basic or enhanced graph via union-find.
/// Returns one label per node; each label is the smallest node index of
/// its component.
pub fn undirected_components(edges: &EdgeSets, which: UndirectedKind) -> Vec<u32> {
    let mut uf = UnionFind::new(edges.n_nodes);
    for &(a, b) in &edges.both {
        uf.union(a as usize, b as usize);
    }
    if which == UndirectedKind::Enhanced {
        for &(a, b) in &edges.one_way {
            uf.union(a as usize, b as usize);
        }
    }
    let mut label = vec![u32::MAX; edges.n_nodes];
    for i in 0..edges.n_nodes {
        let root = uf.find(i);
        if label[root] == u32::MAX {
            label[root] = i as u32;
        }
    }
    (0..edges.n_nodes).map(|i| label[uf.find(i)]).collect()
}

#[derive(Serialize)]
struct DumpParams {
    lambda: f64,
    #[serde(serialize_with = "ser_range")]
    r: f64,
    #[serde(rename = "L")]
    side: f64,
    seed: crate::seed::SeedSpec,
}

#[derive(Serialize)]
struct Dump {
    params: DumpParams,
    goods: Vec<[f64; 2]>,
    eaves: Vec<[f64; 2]>,
    out_edges: Vec<[u32; 2]>,
}

fn ser_range<S: serde::Serializer>(r: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.is_finite() {
        s.serialize_f64(*r)
    } else {
        s.serialize_str("inf")
    }
}

/// JSON dump with deterministic ordering: nodes in index order, edges in
/// (source, target) order.
pub fn dump_json(g: &SecrecyGraph) -> String {
    let mut out_edges = Vec::new();
    for (u, adj) in g.out_adj.iter().enumerate() {
        for &v in adj {
            out_edges.push([u as u32, v]);
        }
    }
    let dump = Dump {
        params: DumpParams {
            lambda: g.eaves.intensity,
            r: g.range,
            side: g.goods.window.side(),
            seed: g.goods.seed,
        },
        goods: g.goods.points.iter().map(|p| [p.x, p.y]).collect(),
        eaves: g.eaves.points.iter().map(|p| [p.x, p.y]).collect(),
        out_edges,
    };
    serde_json::to_string(&dump).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointprocess::{sample_ppp, Point, Window};
    use crate::seed::SeedSpec;

    fn mk_set(pts: Vec<Point>, intensity: f64, w: Window) -> PointSet {
        PointSet { points: pts, intensity, window: w, seed: SeedSpec::new(0, 0), origin: None }
    }

    fn empty_eaves(w: Window) -> PointSet {
        mk_set(vec![], 0.0, w)
    }

    #[test]
    fn rejects_bad_range() {
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(vec![Point::new(1.0, 1.0)], 1.0, w);
        assert!(build_directed(&goods, &empty_eaves(w), 0.0).is_err());
        assert!(build_directed(&goods, &empty_eaves(w), -1.0).is_err());
        assert!(build_directed(&goods, &empty_eaves(w), f64::INFINITY).is_err());
    }

    #[test]
    fn no_eaves_gives_disk_graph() {
        let w = Window::plain(20.0).unwrap();
        let goods = sample_ppp(0.8, w, SeedSpec::new(5, 0), 0).unwrap();
        let r = 1.5;
        let g = build_directed(&goods, &empty_eaves(w), r).unwrap();
        for i in 0..g.node_count() {
            for j in 0..g.node_count() {
                if i == j {
                    continue;
                }
                let d = w.distance(g.goods.points[i], g.goods.points[j]);
                assert_eq!(g.has_edge(i as u32, j as u32), d <= r, "{i}->{j}");
            }
        }
    }

    #[test]
    fn out_edges_stop_at_eavesdropper_distance() {
        // Three nodes in a row with one eavesdropper between b and c:
        // only a→b survives.
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(
            vec![Point::new(2.0, 2.0), Point::new(3.5, 2.0), Point::new(6.0, 2.0)],
            1.0,
            w,
        );
        let eaves = mk_set(vec![Point::new(4.2, 2.0)], 1.0, w);
        let g = build_directed(&goods, &eaves, 10.0).unwrap();
        assert_eq!(g.out_adj, vec![vec![1], vec![], vec![]]);
        // each node reaches exactly the nodes strictly closer than its
        // eavesdropper distance
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let d = w.distance(g.goods.points[i], g.goods.points[j]);
                    assert_eq!(g.has_edge(i as u32, j as u32), d < g.guard_radii[i]);
                }
            }
        }
    }

    #[test]
    fn eavesdropper_at_exact_distance_blocks() {
        let w = Window::plain(20.0).unwrap();
        let goods = mk_set(vec![Point::new(5.0, 5.0), Point::new(5.0, 9.0)], 1.0, w);
        // eavesdropper exactly 4 away from the first node (tie with the
        // receiver), 5.66 away from the second
        let eaves = mk_set(vec![Point::new(9.0, 5.0)], 1.0, w);
        let g = build_directed(&goods, &eaves, 10.0).unwrap();
        assert_eq!(g.guard_radii[0], 4.0);
        assert!(!g.has_edge(0, 1), "closed-ball rule: tie blocks the edge");
        assert!(g.has_edge(1, 0), "reverse direction has slack");
    }

    #[test]
    fn edge_sets_symmetric_pair() {
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(vec![Point::new(4.0, 4.0), Point::new(5.0, 4.0)], 1.0, w);
        let eaves = mk_set(vec![Point::new(0.0, 0.0)], 1.0, w);
        let g = build_directed(&goods, &eaves, 2.0).unwrap();
        let sets = derive_edge_sets(&g);
        assert_eq!(sets.both, vec![(0, 1)]);
        assert!(sets.one_way.is_empty());
        assert_eq!(sets.basic_count() + sets.enhanced_count(), sets.directed_count);
    }

    #[test]
    fn edge_sets_one_way_pair() {
        // eavesdropper nearer the right node: left can talk, right cannot.
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(vec![Point::new(1.0, 5.0), Point::new(2.0, 5.0)], 1.0, w);
        let eaves = mk_set(vec![Point::new(2.6, 5.0)], 1.0, w);
        let g = build_directed(&goods, &eaves, 2.0).unwrap();
        let sets = derive_edge_sets(&g);
        assert!(sets.both.is_empty());
        assert_eq!(sets.one_way, vec![(0, 1)]);
        assert_eq!(sets.directed_count, 1);
    }

    #[test]
    fn degrees_collapse_without_eavesdroppers() {
        let w = Window::plain(15.0).unwrap();
        let goods = sample_ppp(1.0, w, SeedSpec::new(11, 0), 0).unwrap();
        let g = build_directed(&goods, &empty_eaves(w), 1.0).unwrap();
        let s = degree_summary(&g);
        for d in &s.per_node {
            assert_eq!(d.out_deg, d.in_deg);
            assert_eq!(d.basic, d.out_deg);
            assert_eq!(d.enhanced, d.out_deg);
        }
    }

    #[test]
    fn full_sample_identities_are_exact() {
        let w = Window::plain(25.0).unwrap();
        for run in 0..5 {
            let seed = SeedSpec::new(99, run);
            let goods = sample_ppp(1.0, w, seed, 0).unwrap();
            let eaves = sample_ppp(0.3, w, seed, 1).unwrap();
            let g = build_directed(&goods, &eaves, 2.0).unwrap();
            let s = degree_summary(&g);
            assert_eq!(s.full_sum(DegreeKind::Out), s.directed_count);
            assert_eq!(s.full_sum(DegreeKind::In), s.directed_count);
            assert_eq!(
                s.full_sum(DegreeKind::Basic) + s.full_sum(DegreeKind::Enhanced),
                2 * s.directed_count
            );
        }
    }

    #[test]
    fn out_component_of_chain() {
        // A one-way chain a→b→c needs decreasing hop lengths: a node's
        // out-edges reach everything strictly inside its guard radius, so
        // the next hop must be shorter than the previous one.
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(
            vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(3.2, 0.0)],
            1.0,
            w,
        );
        // guard radii: R_a = 2.5, R_b = 1.5, R_c = 1.0
        let eaves = mk_set(
            vec![Point::new(0.0, 2.5), Point::new(2.0, 1.5), Point::new(3.2, 1.0)],
            1.0,
            w,
        );
        let g = build_directed(&goods, &eaves, 3.5).unwrap();
        assert_eq!(g.out_adj, vec![vec![1], vec![2], vec![]]);
        assert_eq!(out_component(&g, 0), vec![0, 1, 2]);
        assert_eq!(out_component(&g, 2), vec![2]);
    }

    #[test]
    fn isolated_node_component_is_singleton() {
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(vec![Point::new(1.0, 1.0), Point::new(9.0, 9.0)], 1.0, w);
        let g = build_directed(&goods, &empty_eaves(w), 1.0).unwrap();
        assert_eq!(out_component(&g, 0), vec![0]);
    }

    #[test]
    fn components_no_edges_all_singletons() {
        let sets = EdgeSets { n_nodes: 4, both: vec![], one_way: vec![], directed_count: 0 };
        let labels = undirected_components(&sets, UndirectedKind::Basic);
        assert_eq!(labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn forest_component_count() {
        // a forest with |E| edges has n - |E| components
        let sets = EdgeSets {
            n_nodes: 6,
            both: vec![(0, 1), (1, 2), (3, 4)],
            one_way: vec![],
            directed_count: 6,
        };
        let labels = undirected_components(&sets, UndirectedKind::Basic);
        let mut distinct: Vec<u32> = labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), 6 - sets.both.len());
        assert_eq!(labels[0], labels[2]);
        assert_ne!(labels[0], labels[3]);
    }

    #[test]
    fn enhanced_components_use_one_way_edges() {
        let sets = EdgeSets {
            n_nodes: 3,
            both: vec![],
            one_way: vec![(0, 1), (1, 2)],
            directed_count: 2,
        };
        assert_eq!(undirected_components(&sets, UndirectedKind::Basic), vec![0, 1, 2]);
        assert_eq!(undirected_components(&sets, UndirectedKind::Enhanced), vec![0, 0, 0]);
    }

    #[test]
    fn edge_lengths_record_pair_distance() {
        let w = Window::plain(10.0).unwrap();
        let goods = mk_set(vec![Point::new(1.0, 1.0), Point::new(4.0, 5.0)], 1.0, w);
        let eaves = mk_set(vec![Point::new(9.0, 1.0)], 1.0, w);
        let g = build_directed(&goods, &eaves, 6.0).unwrap();
        let s = edge_lengths(&g);
        assert_eq!(s.lengths, vec![5.0, 5.0]);
    }

    #[test]
    fn torus_interior_mask_is_everything() {
        let w = Window::torus(15.0).unwrap();
        let seed = SeedSpec::new(3, 0);
        let goods = sample_ppp(1.0, w, seed, 0).unwrap();
        let eaves = sample_ppp(0.3, w, seed, 1).unwrap();
        let g = build_directed(&goods, &eaves, 2.0).unwrap();
        let s = degree_summary(&g);
        assert_eq!(s.interior_count(), s.node_count());
    }

    #[test]
    fn plain_interior_mask_shrinks_with_range() {
        let w = Window::plain(12.0).unwrap();
        let seed = SeedSpec::new(4, 0);
        let goods = sample_ppp(1.0, w, seed, 0).unwrap();
        let g1 = build_directed(&goods, &empty_eaves(w), 1.0).unwrap();
        let g3 = build_directed(&goods, &empty_eaves(w), 3.0).unwrap();
        let s1 = degree_summary(&g1);
        let s3 = degree_summary(&g3);
        assert!(s3.interior_count() <= s1.interior_count());
        for (i, &p) in g1.goods.points.iter().enumerate() {
            assert_eq!(s1.interior[i], w.dist_to_edge(p) >= 1.0);
        }
    }

    #[test]
    fn json_dump_shape_and_determinism() {
        let w = Window::plain(10.0).unwrap();
        let seed = SeedSpec::new(8, 1);
        let goods = sample_ppp(0.5, w, seed, 0).unwrap();
        let eaves = sample_ppp(0.2, w, seed, 1).unwrap();
        let g = build_directed(&goods, &eaves, f64::INFINITY).unwrap();
        let a = dump_json(&g);
        let b = dump_json(&g);
        assert_eq!(a, b);
        assert!(a.starts_with("{\"params\":{\"lambda\":"));
        assert!(a.contains("\"r\":\"inf\""));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert!(v["goods"].is_array() && v["eaves"].is_array() && v["out_edges"].is_array());
    }
}
