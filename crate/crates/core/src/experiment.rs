//! Monte Carlo degree / isolation / edge-length studies over many
//! independently seeded secrecy-graph samples.
//!
//! Degree and isolation estimators run on torus windows by default:
//! every node then has a complete neighborhood, which is the only way to
//! measure in-degrees and enhanced degrees without a halo of good nodes
//! beyond the window. The plain-window schemes remain available:
//! `PlainInflated` (eavesdroppers sampled on an inflated window, interior
//! nodes only) is unbiased for out- and basic-degree statistics;
//! `PlainShared` reproduces the naive single-window estimator whose
//! boundary nodes overestimate their guard radii.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytics;
use crate::error::{param_err, Result};
use crate::pointprocess::{eaves_margin, sample_ppp, Window};
use crate::secgraph::{build_directed, degree_summary, edge_lengths, DegreeKind};
use crate::seed::{streams, SeedSpec};
use crate::stats::{ks_signed_tail, ks_statistic, mean_and_se, DiscreteCounts};

/// How windows are set up for a study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyBoundary {
    /// Both point sets on a torus; unbiased for all four degrees.
    Torus,
    /// Goods plain, eavesdroppers inflated; interior restriction applies.
    PlainInflated,
    /// Both sets on the same plain window (boundary-biased guard radii).
    PlainShared,
}

#[derive(Debug, Clone, Copy)]
pub struct StudyConfig {
    pub lambda: f64,
    pub r: f64,
    pub side: f64,
    pub runs: u64,
    pub seed: SeedSpec,
    pub boundary: StudyBoundary,
}

impl StudyConfig {
    pub fn new(
        lambda: f64,
        r: f64,
        side: f64,
        runs: u64,
        seed: SeedSpec,
        boundary: StudyBoundary,
    ) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
            return param_err(format!("lambda must be finite and >= 0, got {lambda}"));
        }
        if r.is_nan() || r <= 0.0 {
            return param_err(format!("r must be > 0, got {r}"));
        }
        if lambda == 0.0 && r.is_infinite() {
            return param_err("(lambda, r) = (0, inf) is degenerate");
        }
        if side.is_nan() || side <= 0.0 || side.is_infinite() {
            return param_err(format!("window side must be positive, got {side}"));
        }
        if runs == 0 {
            return param_err("runs must be >= 1");
        }
        Ok(Self { lambda, r, side, runs, seed, boundary })
    }

    pub fn torus(lambda: f64, r: f64, side: f64, runs: u64, seed: SeedSpec) -> Result<Self> {
        Self::new(lambda, r, side, runs, seed, StudyBoundary::Torus)
    }

    fn windows(&self) -> Result<(Window, Window)> {
        Ok(match self.boundary {
            StudyBoundary::Torus => {
                let w = Window::torus(self.side)?;
                (w, w)
            }
            StudyBoundary::PlainInflated => (
                Window::plain(self.side)?,
                Window::inflated(self.side, eaves_margin(self.lambda, self.r, self.side))?,
            ),
            StudyBoundary::PlainShared => {
                let w = Window::plain(self.side)?;
                (w, w)
            }
        })
    }
}

const KINDS: [DegreeKind; 4] =
    [DegreeKind::Out, DegreeKind::In, DegreeKind::Basic, DegreeKind::Enhanced];

fn kind_index(kind: DegreeKind) -> usize {
    match kind {
        DegreeKind::Out => 0,
        DegreeKind::In => 1,
        DegreeKind::Basic => 2,
        DegreeKind::Enhanced => 3,
    }
}

/// Per-run interior moments, kept for run-to-run standard errors.
#[derive(Debug, Clone, Copy)]
pub struct RunMoments {
    pub interior_nodes: u64,
    /// Interior mean of each degree kind.
    pub means: [f64; 4],
    /// Interior isolation fraction of each degree kind.
    pub isolation: [f64; 4],
}

/// Pooled degree statistics over all runs of a study.
#[derive(Debug, Clone)]
pub struct DegreeStudyResult {
    /// Interior degree histograms, indexed like [out, in, basic, enhanced].
    pub counts: [DiscreteCounts; 4],
    pub per_run: Vec<RunMoments>,
    pub interior_nodes: u64,
    pub total_nodes: u64,
    /// Whole-sample degree sums (exact integers), same indexing.
    pub full_sums: [u64; 4],
    pub directed_edges: u64,
    pub runs: u64,
}

impl DegreeStudyResult {
    pub fn interior_counts(&self, kind: DegreeKind) -> &DiscreteCounts {
        &self.counts[kind_index(kind)]
    }

    /// Pooled interior mean.
    pub fn mean(&self, kind: DegreeKind) -> f64 {
        self.interior_counts(kind).mean()
    }

    /// Pooled interior isolation fraction P̂[degree = 0].
    pub fn isolation(&self, kind: DegreeKind) -> f64 {
        self.interior_counts(kind).frequency(0)
    }

    /// Standard error of the interior mean, across runs.
    pub fn mean_se(&self, kind: DegreeKind) -> f64 {
        let per: Vec<f64> = self.per_run.iter().map(|m| m.means[kind_index(kind)]).collect();
        mean_and_se(&per).1
    }

    /// Standard error of the isolation fraction, across runs.
    pub fn isolation_se(&self, kind: DegreeKind) -> f64 {
        let per: Vec<f64> = self.per_run.iter().map(|m| m.isolation[kind_index(kind)]).collect();
        mean_and_se(&per).1
    }

    pub fn full_mean(&self, kind: DegreeKind) -> f64 {
        self.full_sums[kind_index(kind)] as f64 / self.total_nodes as f64
    }

    /// Exact whole-sample identities: Σ N^in = Σ N^out = |vec E| and
    /// Σ N + Σ N′ = 2 Σ N^out.
    pub fn exact_identities_hold(&self) -> bool {
        self.full_sums[0] == self.directed_edges
            && self.full_sums[1] == self.directed_edges
            && self.full_sums[2] + self.full_sums[3] == 2 * self.directed_edges
    }
}

struct RunPartial {
    counts: [DiscreteCounts; 4],
    moments: RunMoments,
    total_nodes: u64,
    full_sums: [u64; 4],
    directed_edges: u64,
}

fn one_degree_run(cfg: &StudyConfig, run: u64) -> Result<RunPartial> {
    let (gwin, ewin) = cfg.windows()?;
    let seed = cfg.seed.with_run(cfg.seed.run_index + run);
    let goods = sample_ppp(1.0, gwin, seed, streams::GOODS)?;
    let eaves = sample_ppp(cfg.lambda, ewin, seed, streams::EAVES)?;
    let g = build_directed(&goods, &eaves, cfg.r)?;
    let summary = degree_summary(&g);
    let mut counts: [DiscreteCounts; 4] = std::array::from_fn(|_| DiscreteCounts::default());
    for kind in KINDS {
        counts[kind_index(kind)] = summary.interior_counts(kind);
    }
    let interior_nodes = counts[0].total;
    let moments = RunMoments {
        interior_nodes,
        means: [counts[0].mean(), counts[1].mean(), counts[2].mean(), counts[3].mean()],
        isolation: [
            counts[0].frequency(0),
            counts[1].frequency(0),
            counts[2].frequency(0),
            counts[3].frequency(0),
        ],
    };
    let full_sums = [
        summary.full_sum(DegreeKind::Out),
        summary.full_sum(DegreeKind::In),
        summary.full_sum(DegreeKind::Basic),
        summary.full_sum(DegreeKind::Enhanced),
    ];
    // exact whole-sample identities, per run
    debug_assert_eq!(full_sums[0], summary.directed_count);
    debug_assert_eq!(full_sums[1], summary.directed_count);
    debug_assert_eq!(full_sums[2] + full_sums[3], 2 * summary.directed_count);
    Ok(RunPartial {
        counts,
        moments,
        total_nodes: summary.node_count() as u64,
        full_sums,
        directed_edges: summary.directed_count,
    })
}

/// Runs the degree study: independent samples in parallel, merged in run
/// order so the result is identical for any thread count.
pub fn run_degree_study(cfg: &StudyConfig) -> Result<DegreeStudyResult> {
    let partials: Vec<Result<RunPartial>> =
        (0..cfg.runs).into_par_iter().map(|i| one_degree_run(cfg, i)).collect();
    let mut out = DegreeStudyResult {
        counts: std::array::from_fn(|_| DiscreteCounts::default()),
        per_run: Vec::with_capacity(cfg.runs as usize),
        interior_nodes: 0,
        total_nodes: 0,
        full_sums: [0; 4],
        directed_edges: 0,
        runs: cfg.runs,
    };
    for partial in partials {
        let p = partial?;
        for k in 0..4 {
            out.counts[k].merge(&p.counts[k]);
            out.full_sums[k] += p.full_sums[k];
        }
        out.per_run.push(p.moments);
        out.interior_nodes += p.moments.interior_nodes;
        out.total_nodes += p.total_nodes;
        out.directed_edges += p.directed_edges;
    }
    Ok(out)
}

/// Goodness-of-fit summary of pooled directed-edge lengths against the
/// model's reference law.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeLengthStats {
    pub n_edges: u64,
    pub mean: f64,
    /// KS distance to the reference CDF.
    pub ks: f64,
    /// Largest signed gap (reference − empirical) over the upper tail;
    /// positive means the sample is right-tail heavy.
    pub tail_gap: f64,
    pub reference: &'static str,
}

fn reference_cdf(lambda: f64, r: f64) -> (impl Fn(f64) -> f64, &'static str) {
    let name = if lambda == 0.0 {
        "disk"
    } else if r.is_infinite() {
        "rayleigh"
    } else {
        "rayleigh_truncated"
    };
    let cdf = move |x: f64| -> f64 {
        if lambda == 0.0 {
            analytics::disk_edge_cdf(r, x)
        } else if r.is_infinite() {
            analytics::rayleigh_edge_cdf(lambda, x)
        } else {
            (analytics::rayleigh_edge_cdf(lambda, x) / analytics::rayleigh_edge_cdf(lambda, r))
                .clamp(0.0, 1.0)
        }
    };
    (cdf, name)
}

/// Pools directed-edge lengths over the study's runs and compares them to
/// the reference law (Rayleigh of mean 1/(2√λ) at r = ∞, the disk law
/// 2x/r² at λ = 0, the r-truncated Rayleigh otherwise).
pub fn run_edge_length_study(cfg: &StudyConfig) -> Result<(EdgeLengthStats, Vec<f64>)> {
    let per_run: Vec<Result<Vec<f64>>> = (0..cfg.runs)
        .into_par_iter()
        .map(|i| {
            let (gwin, ewin) = cfg.windows()?;
            let seed = cfg.seed.with_run(cfg.seed.run_index + i);
            let goods = sample_ppp(1.0, gwin, seed, streams::GOODS)?;
            let eaves = sample_ppp(cfg.lambda, ewin, seed, streams::EAVES)?;
            let g = build_directed(&goods, &eaves, cfg.r)?;
            Ok(edge_lengths(&g).lengths)
        })
        .collect();
    let mut lengths = Vec::new();
    for run in per_run {
        lengths.extend(run?);
    }
    if lengths.is_empty() {
        return param_err("no edges sampled; enlarge the window or runs");
    }
    let (cdf, reference) = reference_cdf(cfg.lambda, cfg.r);
    let ks = ks_statistic(&lengths, &cdf);
    let tail_gap = ks_signed_tail(&lengths, &cdf, 0.9);
    let mean = lengths.iter().sum::<f64>() / lengths.len() as f64;
    Ok((EdgeLengthStats { n_edges: lengths.len() as u64, mean, ks, tail_gap, reference }, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(i: u64) -> SeedSpec {
        SeedSpec::new(555, i)
    }

    #[test]
    fn study_is_deterministic_and_identities_hold() {
        let cfg = StudyConfig::torus(0.3, 1.5, 20.0, 4, seed(0)).unwrap();
        let a = run_degree_study(&cfg).unwrap();
        let b = run_degree_study(&cfg).unwrap();
        assert_eq!(a.full_sums, b.full_sums);
        assert_eq!(a.counts[0], b.counts[0]);
        assert!(a.exact_identities_hold());
        assert_eq!(a.interior_nodes, a.total_nodes, "torus has no boundary");
    }

    #[test]
    fn out_isolation_tracks_closed_form() {
        // λ=1, r=∞: P[N^out = 0] = 1/2
        let cfg = StudyConfig::torus(1.0, f64::INFINITY, 25.0, 10, seed(1)).unwrap();
        let res = run_degree_study(&cfg).unwrap();
        let se = res.isolation_se(DegreeKind::Out).max(1e-3);
        let gap = (res.isolation(DegreeKind::Out) - 0.5).abs();
        assert!(gap < 4.0 * se + 0.01, "gap {gap}, se {se}");
    }

    #[test]
    fn plain_inflated_restricts_to_interior() {
        let cfg = StudyConfig::new(
            0.2,
            1.0,
            20.0,
            3,
            seed(2),
            StudyBoundary::PlainInflated,
        )
        .unwrap();
        let res = run_degree_study(&cfg).unwrap();
        assert!(res.interior_nodes < res.total_nodes);
        assert!(res.exact_identities_hold());
    }

    #[test]
    fn disk_edge_lengths_match_reference() {
        let cfg = StudyConfig::torus(0.0, 1.0, 20.0, 10, seed(3)).unwrap();
        let (stats, lengths) = run_edge_length_study(&cfg).unwrap();
        assert_eq!(stats.reference, "disk");
        assert!(stats.ks < 0.03, "ks = {}", stats.ks);
        assert!(!lengths.is_empty());
        assert!(lengths.iter().all(|&x| x <= 1.0));
    }
}
