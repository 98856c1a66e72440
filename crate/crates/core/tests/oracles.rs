//! Cross-checks of the fast paths against independent reference
//! implementations: exhaustive scans, boolean-matrix closure, BFS flood
//! fill, and coupled monotonicity constructions.

mod common;

use common::{bfs_labels, brute_adjacency, brute_guard_radii, closure_row};

use secrograph::analytics::{self, ModelParams};
use secrograph::experiment::{run_degree_study, StudyConfig};
use secrograph::pointprocess::{
    add_center_node, eaves_margin, guard_radii, sample_ppp, Window,
};
use secrograph::secgraph::{
    build_directed, degree_summary, derive_edge_sets, out_component, undirected_components,
    DegreeKind, UndirectedKind,
};
use secrograph::seed::SeedSpec;
use secrograph::stats::mean_and_se;

fn seed(master: u64, run: u64) -> SeedSpec {
    SeedSpec::new(master, run)
}

#[test]
fn guard_radii_match_brute_force_with_inflated_window() {
    for run in 0..15u64 {
        let s = seed(31, run);
        let gw = Window::plain(14.0).unwrap();
        let ew = Window::inflated(14.0, 3.0).unwrap();
        let goods = sample_ppp(1.0, gw, s, 0).unwrap();
        let eaves = sample_ppp(0.3, ew, s, 1).unwrap();
        let fast = guard_radii(&goods, &eaves).unwrap();
        let slow = brute_guard_radii(&goods, &eaves, &gw);
        assert_eq!(fast, slow, "run {run}");
    }
}

#[test]
fn adjacency_matches_brute_force_across_models() {
    let cases = [
        (0.3, 1.5, false, false), // plain, plain eaves
        (0.3, 1.5, true, false),  // torus
        (0.2, f64::INFINITY, false, true), // plain goods, inflated eaves
        (1.0, 0.8, false, true),
        (0.05, 3.0, true, false),
        (0.0, 1.2, false, false), // disk graph
    ];
    for (case, &(lambda, r, torus, inflate)) in cases.iter().enumerate() {
        for run in 0..6u64 {
            let s = seed(100 + case as u64, run);
            let side = 13.0;
            let gw = if torus { Window::torus(side).unwrap() } else { Window::plain(side).unwrap() };
            let ew = if inflate {
                Window::inflated(side, eaves_margin(lambda, r, side)).unwrap()
            } else {
                gw
            };
            let goods = sample_ppp(1.0, gw, s, 0).unwrap();
            let eaves = sample_ppp(lambda, ew, s, 1).unwrap();
            if r.is_infinite() && eaves.is_empty() {
                continue;
            }
            let g = build_directed(&goods, &eaves, r).unwrap();
            let brute = brute_adjacency(&goods, &eaves, r);
            assert_eq!(g.out_adj, brute, "case {case} run {run}");
        }
    }
}

#[test]
fn out_component_matches_matrix_closure() {
    for run in 0..10u64 {
        let s = seed(7, run);
        let w = Window::plain(7.0).unwrap();
        let goods = sample_ppp(0.9, w, s, 0).unwrap(); // ~44 nodes
        let eaves = sample_ppp(0.4, w, s, 1).unwrap();
        let g = build_directed(&goods, &eaves, 2.0).unwrap();
        if g.node_count() == 0 || g.node_count() > 70 {
            continue;
        }
        for start in [0usize, g.node_count() / 2, g.node_count() - 1] {
            assert_eq!(
                out_component(&g, start as u32),
                closure_row(&g, start),
                "run {run} start {start}"
            );
        }
    }
}

#[test]
fn components_match_bfs_labels() {
    for run in 0..10u64 {
        let s = seed(8, run);
        let w = Window::plain(12.0).unwrap();
        let goods = sample_ppp(1.0, w, s, 0).unwrap();
        let eaves = sample_ppp(0.5, w, s, 1).unwrap();
        let g = build_directed(&goods, &eaves, 1.5).unwrap();
        let sets = derive_edge_sets(&g);
        let basic_edges: Vec<(u32, u32)> = sets.both.clone();
        let enhanced_edges: Vec<(u32, u32)> = sets.enhanced_edges().collect();
        assert_eq!(
            undirected_components(&sets, UndirectedKind::Basic),
            bfs_labels(sets.n_nodes, &basic_edges),
            "basic run {run}"
        );
        assert_eq!(
            undirected_components(&sets, UndirectedKind::Enhanced),
            bfs_labels(sets.n_nodes, &enhanced_edges),
            "enhanced run {run}"
        );
    }
}

#[test]
fn adding_an_eavesdropper_only_removes_edges() {
    for run in 0..20u64 {
        let s = seed(9, run);
        let w = Window::plain(15.0).unwrap();
        let goods = sample_ppp(1.0, w, s, 0).unwrap();
        let mut eaves = sample_ppp(0.2, w, s, 1).unwrap();
        let before = build_directed(&goods, &eaves, 2.5).unwrap();
        // one extra eavesdropper from an independent stream
        let extra = sample_ppp(1.0 / (15.0 * 15.0), w, s, 2).unwrap();
        if extra.is_empty() {
            continue;
        }
        eaves.points.push(extra.points[0]);
        let after = build_directed(&goods, &eaves, 2.5).unwrap();
        for (i, adj) in after.out_adj.iter().enumerate() {
            assert!(
                adj.iter().all(|v| before.out_adj[i].binary_search(v).is_ok()),
                "run {run}: node {i} gained an edge"
            );
        }
    }
}

#[test]
fn growing_range_only_adds_edges() {
    let s = seed(10, 0);
    let w = Window::plain(15.0).unwrap();
    let goods = sample_ppp(1.0, w, s, 0).unwrap();
    let eaves = sample_ppp(0.3, w, s, 1).unwrap();
    let radii = [0.5, 1.0, 1.7, 2.5, 4.0, f64::INFINITY];
    let graphs: Vec<_> =
        radii.iter().map(|&r| build_directed(&goods, &eaves, r).unwrap()).collect();
    for pair in graphs.windows(2) {
        for (i, adj) in pair[0].out_adj.iter().enumerate() {
            assert!(adj.iter().all(|v| pair[1].out_adj[i].binary_search(v).is_ok()));
        }
    }
}

#[test]
fn zero_lambda_reduces_to_disk_graph() {
    let s = seed(11, 0);
    let w = Window::plain(18.0).unwrap();
    let goods = sample_ppp(1.0, w, s, 0).unwrap();
    let empty = sample_ppp(0.0, w, s, 1).unwrap();
    let g = build_directed(&goods, &empty, 1.3).unwrap();
    assert_eq!(g.out_adj, brute_adjacency(&goods, &empty, 1.3));
    // symmetric: basic = enhanced = disk graph
    let sets = derive_edge_sets(&g);
    assert!(sets.one_way.is_empty());
    assert_eq!(2 * sets.basic_count(), g.directed_edge_count());
}

#[test]
fn center_node_statistics_match_unconditioned() {
    // Palm property: conditioning on a node at the center does not change
    // degree statistics. Compare the center node's mean out-degree over
    // many runs against the closed form.
    let lambda = 0.3;
    let runs = 1200u64;
    let w = Window::torus(20.0).unwrap();
    let mut center_degrees = Vec::with_capacity(runs as usize);
    for run in 0..runs {
        let s = seed(12, run);
        let goods = add_center_node(&sample_ppp(1.0, w, s, 0).unwrap());
        let eaves = sample_ppp(lambda, w, s, 1).unwrap();
        if eaves.is_empty() {
            continue;
        }
        let g = build_directed(&goods, &eaves, f64::INFINITY).unwrap();
        let origin = g.goods.origin.expect("origin tracked") as usize;
        center_degrees.push(g.out_adj[origin].len() as f64);
    }
    let (mean, se) = mean_and_se(&center_degrees);
    let expect = analytics::mean_out_degree(ModelParams::new(lambda, f64::INFINITY).unwrap());
    assert!(
        (mean - expect).abs() < 4.0 * se + 0.05,
        "center mean {mean} vs {expect} (se {se})"
    );
}

#[test]
fn study_results_identical_across_thread_counts() {
    let cfg = StudyConfig::torus(0.25, 2.0, 20.0, 6, seed(13, 0)).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_degree_study(&cfg).unwrap());
    let multi = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| run_degree_study(&cfg).unwrap());
    assert_eq!(single.full_sums, multi.full_sums);
    assert_eq!(single.counts[0], multi.counts[0]);
    assert_eq!(single.counts[3], multi.counts[3]);
    assert_eq!(
        single.mean(DegreeKind::Out).to_bits(),
        multi.mean(DegreeKind::Out).to_bits()
    );
}

#[test]
fn thinning_couples_theta_monotonically_in_lambda() {
    // Ψ at the lower intensity is an independent thinning of the higher
    // one, so the percolation indicator must be pointwise monotone.
    use secrograph::percolation::{percolates, shell_width};
    use secrograph::pointprocess::thin;
    let r = 1.5;
    let w = Window::plain(30.0).unwrap();
    let mut hits = (0u32, 0u32);
    for run in 0..30u64 {
        let s = seed(15, run);
        let goods = sample_ppp(1.0, w, s, 0).unwrap();
        let dense = sample_ppp(0.16, w, s, 1).unwrap();
        let sparse = thin(&dense, 0.05 / 0.16, s, secrograph::seed::streams::THINNING).unwrap();
        assert!(sparse.points.iter().all(|p| dense.points.contains(p)));
        let g_dense = build_directed(&goods, &dense, r).unwrap();
        let g_sparse = build_directed(&goods, &sparse, r).unwrap();
        // subset coupling on the adjacency itself
        for (i, adj) in g_dense.out_adj.iter().enumerate() {
            assert!(adj.iter().all(|v| g_sparse.out_adj[i].binary_search(v).is_ok()));
        }
        let shell = shell_width(0.16, r);
        let crossed_dense = percolates(&g_dense, shell).crossed;
        let crossed_sparse = percolates(&g_sparse, shell).crossed;
        assert!(
            !crossed_dense || crossed_sparse,
            "run {run}: dense sample percolates but its thinning does not"
        );
        hits.0 += crossed_dense as u32;
        hits.1 += crossed_sparse as u32;
    }
    assert!(hits.1 > hits.0, "thinned samples should percolate more often: {hits:?}");
}

#[test]
fn larger_windows_sharpen_percolation_transition() {
    use secrograph::percolation::{estimate_theta, PercRunParams};
    let r = 1.5;
    // probe just either side of the critical intensity of this range
    // (λ_c(1.5) ≈ 0.11); at a larger window the two probes separate more
    let spread = |side: f64, master: u64| {
        let lo = estimate_theta(
            &PercRunParams::new(0.088, r, side, 120, seed(master, 0)).unwrap(),
        )
        .unwrap()
        .theta_hat;
        let hi = estimate_theta(
            &PercRunParams::new(0.132, r, side, 120, seed(master, 10_000)).unwrap(),
        )
        .unwrap()
        .theta_hat;
        lo - hi
    };
    let small = spread(25.0, 16);
    let large = spread(60.0, 17);
    assert!(
        large > small + 0.05,
        "transition should sharpen with window size: spread {small} at L=25 vs {large} at L=60"
    );
}

#[test]
fn sweep_is_byte_deterministic() {
    use secrograph::percolation::{sweep, SweepConfig, SweepDirection};
    let cfg = SweepConfig { ladder: vec![30.0], runs_per_probe: 30, seed: seed(18, 0) };
    let a = sweep(SweepDirection::LambdaCOfR, &[1.5], &cfg);
    let b = sweep(SweepDirection::LambdaCOfR, &[1.5], &cfg);
    assert_eq!(a.to_csv(), b.to_csv());
    assert!(!a.had_failures());
}

#[test]
fn interior_restriction_removes_boundary_bias_for_disk_degrees() {
    // Plain window, λ=0, finite r: interior nodes must average the full
    // disk-graph degree πr² while the whole-window mean sits below it.
    let s = seed(14, 0);
    let runs = 40u64;
    let mut interior_mean = Vec::new();
    let mut full_mean = Vec::new();
    let w = Window::plain(20.0).unwrap();
    for run in 0..runs {
        let goods = sample_ppp(1.0, w, s.with_run(run), 0).unwrap();
        let empty = sample_ppp(0.0, w, s.with_run(run), 1).unwrap();
        let g = build_directed(&goods, &empty, 1.5).unwrap();
        let summary = degree_summary(&g);
        interior_mean.push(summary.interior_counts(DegreeKind::Out).mean());
        full_mean.push(summary.full_mean(DegreeKind::Out));
    }
    let (im, ise) = mean_and_se(&interior_mean);
    let (fm, _) = mean_and_se(&full_mean);
    let expect = std::f64::consts::PI * 1.5 * 1.5;
    assert!((im - expect).abs() < 4.0 * ise + 0.02, "interior {im} vs {expect}");
    assert!(fm < expect - 0.2, "full-window mean {fm} should be boundary-biased low");
}
