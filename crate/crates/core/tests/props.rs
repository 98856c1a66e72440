//! Property tests over randomized model parameters and seeds.

use proptest::prelude::*;

use secrograph::analytics::{self, ModelParams};
use secrograph::pointprocess::{sample_ppp, Point, Window};
use secrograph::secgraph::{build_directed, degree_summary, derive_edge_sets, DegreeKind};
use secrograph::seed::SeedSpec;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn torus_distance_never_exceeds_plain(
        x1 in 0.0..10.0f64, y1 in 0.0..10.0f64,
        x2 in 0.0..10.0f64, y2 in 0.0..10.0f64,
    ) {
        let plain = Window::plain(10.0).unwrap();
        let torus = Window::torus(10.0).unwrap();
        let p = Point::new(x1, y1);
        let q = Point::new(x2, y2);
        prop_assert!(torus.distance(p, q) <= plain.distance(p, q) + 1e-12);
        prop_assert!(torus.distance(p, q) <= 10.0 * 2.0f64.sqrt() / 2.0 + 1e-12);
    }

    #[test]
    fn distance_is_symmetric_and_zero_iff_equal(
        x1 in 0.0..10.0f64, y1 in 0.0..10.0f64,
        x2 in 0.0..10.0f64, y2 in 0.0..10.0f64,
        torus in any::<bool>(),
    ) {
        let w = if torus { Window::torus(10.0).unwrap() } else { Window::plain(10.0).unwrap() };
        let p = Point::new(x1, y1);
        let q = Point::new(x2, y2);
        prop_assert_eq!(w.distance(p, q), w.distance(q, p));
        prop_assert_eq!(w.distance(p, p), 0.0);
        if (x1, y1) != (x2, y2) {
            prop_assert!(w.distance(p, q) > 0.0);
        }
    }

    #[test]
    fn sampling_is_deterministic(master in any::<u64>(), run in 0u64..1000) {
        let w = Window::plain(8.0).unwrap();
        let a = sample_ppp(1.0, w, SeedSpec::new(master, run), 0).unwrap();
        let b = sample_ppp(1.0, w, SeedSpec::new(master, run), 0).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn partition_identity_and_degree_chain(
        master in any::<u64>(),
        lambda in 0.0..1.2f64,
        r in prop_oneof![0.3..3.0f64, Just(f64::INFINITY)],
        torus in any::<bool>(),
    ) {
        prop_assume!(!(lambda == 0.0 && r.is_infinite()));
        let side = 10.0;
        let w = if torus { Window::torus(side).unwrap() } else { Window::plain(side).unwrap() };
        let s = SeedSpec::new(master, 0);
        let goods = sample_ppp(1.0, w, s, 0).unwrap();
        let eaves = sample_ppp(lambda, w, s, 1).unwrap();
        prop_assume!(!(r.is_infinite() && eaves.is_empty()));
        let g = build_directed(&goods, &eaves, r).unwrap();
        prop_assert!(g.check_edge_rule());

        let sets = derive_edge_sets(&g);
        prop_assert_eq!(sets.basic_count() + sets.enhanced_count(), sets.directed_count);
        prop_assert_eq!(sets.directed_count, g.directed_edge_count());

        let summary = degree_summary(&g);
        for d in &summary.per_node {
            prop_assert!(d.basic <= d.out_deg.min(d.in_deg));
            prop_assert!(d.out_deg.max(d.in_deg) <= d.enhanced);
            prop_assert!(d.enhanced <= d.out_deg + d.in_deg);
        }
        prop_assert_eq!(summary.full_sum(DegreeKind::Out), g.directed_edge_count());
        prop_assert_eq!(summary.full_sum(DegreeKind::In), g.directed_edge_count());
        prop_assert_eq!(
            summary.full_sum(DegreeKind::Basic) + summary.full_sum(DegreeKind::Enhanced),
            2 * g.directed_edge_count()
        );
    }

    #[test]
    fn pmf_zero_is_isolation_and_mass_behaves(
        // λ bounded away from 0 (except exactly 0): the r = ∞ law has
        // mean 1/λ, so the summation horizon must stay finite
        lambda in prop_oneof![Just(0.0), 0.01..2.0f64],
        r in prop_oneof![0.2..3.0f64, Just(f64::INFINITY)],
    ) {
        prop_assume!(!(lambda == 0.0 && r.is_infinite()));
        let p = ModelParams::new(lambda, r).unwrap();
        prop_assert_eq!(analytics::out_degree_pmf(p, 0), analytics::out_isolation(p));
        // horizon adapted to the distribution's scale
        let mean = analytics::mean_out_degree(p);
        let n_max = 400 + (40.0 * mean.max(1.0)) as u32;
        let mut acc = 0.0;
        for n in 0..n_max {
            let v = analytics::out_degree_pmf(p, n);
            prop_assert!(v >= 0.0);
            acc += v;
            prop_assert!(acc <= 1.0 + 1e-9);
        }
        prop_assert!(acc > 1.0 - 1e-6, "mass {} after {} terms", acc, n_max);
        // mean ordering under the identity
        let (out, basic, enh) = (
            analytics::mean_out_degree(p),
            analytics::mean_basic_degree(p),
            analytics::mean_enhanced_degree(p),
        );
        prop_assert!(basic <= out + 1e-12 && out <= enh + 1e-12 && enh <= 2.0 * out + 1e-12);
    }
}
