//! Continuum oriented out-percolation on Poisson secrecy graphs:
//! θ(λ, r) estimation, bisection for λ_c(r), r_c(λ), λ∞, and the Gilbert
//! radius, sweep orchestration, and critical-graph statistics.
//!
//! The finite surrogate for "the out-component of the origin is
//! infinite": on a plain window, the out-component of the good node
//! nearest the window center must contain a node within one hop scale of
//! the window boundary. Eavesdroppers are sampled on an inflated window
//! so guard radii near the boundary stay unbiased.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytics;
use crate::error::{param_err, Result};
use crate::pointprocess::{sample_ppp, Window};
use crate::secgraph::{build_directed, degree_summary, DegreeKind, SecrecyGraph};
use crate::seed::{streams, SeedSpec};
use crate::stats::{mean_and_se, wilson_interval};
use crate::threshold::{BisectOptions, Direction, LadderSearch, ThresholdEstimate};

pub use crate::threshold::{ProbeRecord, Rung};

/// Default window-side ladder for threshold searches.
pub const DEFAULT_WINDOW_LADDER: [f64; 3] = [40.0, 60.0, 80.0];

/// Boundary-shell width of the crossing criterion: the hop scale
/// min(r, 2/√λ) over the constraints that actually apply. A shell wider
/// than the hop scale (the literal max of the two) degenerates the
/// criterion at small λ with finite r.
pub fn shell_width(lambda: f64, r: f64) -> f64 {
    let mut w = f64::INFINITY;
    if r.is_finite() {
        w = w.min(r);
    }
    if lambda > 0.0 {
        w = w.min(2.0 / lambda.max(1e-6).sqrt());
    }
    w
}

/// Margin for the eavesdropper window in percolation runs: covers the
/// hop scale so boundary guard radii are unbiased, without blowing up the
/// sampling area.
fn perc_margin(lambda: f64, r: f64, side: f64) -> f64 {
    let r_term = if r.is_finite() { r } else { 0.0 };
    let guard_term = if lambda > 0.0 { 2.0 / lambda.sqrt() } else { 0.0 };
    r_term.max(guard_term).min(side / 4.0)
}

/// One percolation experiment configuration.
#[derive(Debug, Clone, Copy)]
pub struct PercRunParams {
    pub lambda: f64,
    pub r: f64,
    pub side: f64,
    pub runs: u64,
    /// Overrides the default boundary-shell width.
    pub shell_width: Option<f64>,
    pub seed: SeedSpec,
}

impl PercRunParams {
    pub fn new(lambda: f64, r: f64, side: f64, runs: u64, seed: SeedSpec) -> Result<Self> {
        let p = Self { lambda, r, side, runs, shell_width: None, seed };
        p.validate()?;
        Ok(p)
    }

    pub fn effective_shell(&self) -> f64 {
        self.shell_width.unwrap_or_else(|| shell_width(self.lambda, self.r))
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.is_nan() || self.lambda < 0.0 || self.lambda.is_infinite() {
            return param_err(format!("lambda must be finite and >= 0, got {}", self.lambda));
        }
        if self.r.is_nan() || self.r <= 0.0 {
            return param_err(format!("r must be > 0, got {}", self.r));
        }
        if self.lambda == 0.0 && self.r.is_infinite() {
            return param_err("(lambda, r) = (0, inf) is degenerate");
        }
        if self.side.is_nan() || self.side <= 0.0 || self.side.is_infinite() {
            return param_err(format!("window side must be positive, got {}", self.side));
        }
        if self.runs == 0 {
            return param_err("runs must be >= 1");
        }
        let hop = self.effective_shell();
        if self.side < 4.0 * hop {
            return param_err(format!(
                "window side {} too small for the crossing criterion (hop scale {hop})",
                self.side
            ));
        }
        Ok(())
    }
}

/// Outcome of the crossing criterion on one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PercOutcome {
    pub crossed: bool,
    /// The sample had no good nodes (reported as a diagnostic, not an
    /// error).
    pub empty_sample: bool,
}

/// True iff the out-component of the good node nearest the window center
/// contains a node within `shell` of the window boundary.
pub fn percolates(g: &SecrecyGraph, shell: f64) -> PercOutcome {
    let window = g.goods.window;
    assert!(!window.is_torus(), "crossing criterion requires a plain window");
    if g.goods.is_empty() {
        return PercOutcome { crossed: false, empty_sample: true };
    }
    let center = window.center();
    let mut start = 0usize;
    let mut best = f64::INFINITY;
    for (i, &p) in g.goods.points.iter().enumerate() {
        let d = window.distance(p, center);
        if d < best {
            best = d;
            start = i;
        }
    }
    let in_shell = |i: usize| window.dist_to_edge(g.goods.points[i]) <= shell;
    if in_shell(start) {
        return PercOutcome { crossed: true, empty_sample: false };
    }
    let mut seen = vec![false; g.node_count()];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start as u32]);
    while let Some(u) = queue.pop_front() {
        for &v in &g.out_adj[u as usize] {
            if !seen[v as usize] {
                if in_shell(v as usize) {
                    return PercOutcome { crossed: true, empty_sample: false };
                }
                seen[v as usize] = true;
                queue.push_back(v);
            }
        }
    }
    PercOutcome { crossed: false, empty_sample: false }
}

/// Samples one secrecy graph at (λ, r) on a plain window (inflated
/// eavesdroppers) and applies the crossing criterion.
pub fn run_once(lambda: f64, r: f64, side: f64, shell: f64, seed: SeedSpec) -> Result<PercOutcome> {
    let window = Window::plain(side)?;
    let goods = sample_ppp(1.0, window, seed, streams::GOODS)?;
    let ewin = Window::inflated(side, perc_margin(lambda, r, side))?;
    let eaves = sample_ppp(lambda, ewin, seed, streams::EAVES)?;
    if r.is_infinite() && eaves.is_empty() {
        // Degenerate draw: with no eavesdroppers and no range cap the
        // graph is complete, so the center component is everything.
        let crossed = !goods.is_empty()
            && goods.points.iter().any(|&p| window.dist_to_edge(p) <= shell);
        return Ok(PercOutcome { crossed, empty_sample: goods.is_empty() });
    }
    let g = build_directed(&goods, &eaves, r)?;
    Ok(percolates(&g, shell))
}

/// θ̂(λ, r) with a Wilson 95% CI.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaEstimate {
    pub theta_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub successes: u64,
    pub runs: u64,
    pub empty_samples: u64,
    pub shell_width: f64,
    pub criterion: &'static str,
}

/// Fraction of independent runs in which the sample percolates. Runs use
/// independent seed streams and aggregate order-independently.
pub fn estimate_theta(params: &PercRunParams) -> Result<ThetaEstimate> {
    params.validate()?;
    let shell = params.effective_shell();
    let outcomes: Vec<PercOutcome> = (0..params.runs)
        .into_par_iter()
        .map(|i| {
            run_once(
                params.lambda,
                params.r,
                params.side,
                shell,
                params.seed.with_run(params.seed.run_index + i),
            )
            .expect("validated parameters")
        })
        .collect();
    let successes = outcomes.iter().filter(|o| o.crossed).count() as u64;
    let empty_samples = outcomes.iter().filter(|o| o.empty_sample).count() as u64;
    let (ci_lo, ci_hi) = wilson_interval(successes, params.runs);
    Ok(ThetaEstimate {
        theta_hat: successes as f64 / params.runs as f64,
        ci_lo,
        ci_hi,
        successes,
        runs: params.runs,
        empty_samples,
        shell_width: shell,
        criterion: "center out-component reaches the boundary shell",
    })
}

fn theta_probe(lambda: f64, r: f64, side: f64, runs: u64, seed: SeedSpec, run_base: u64) -> (u64, u64) {
    let shell = shell_width(lambda, r);
    let successes = (0..runs)
        .into_par_iter()
        .map(|i| {
            let outcome = run_once(
                lambda,
                r,
                side,
                shell,
                seed.with_run(seed.run_index + run_base + i),
            )
            .expect("validated parameters");
            u64::from(outcome.crossed)
        })
        .sum();
    (successes, runs)
}

/// Warns when a probe trace is non-monotone beyond statistical noise.
fn monotonicity_flag(est: &ThresholdEstimate, falling: bool) -> Option<String> {
    let probes = &est.rungs.last()?.probes;
    let mut sorted = probes.clone();
    sorted.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    for w in sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slack = 3.0 * (crate::stats::binomial_se(a.successes, a.runs)
            + crate::stats::binomial_se(b.successes, b.runs));
        let delta = b.fraction() - a.fraction();
        if (falling && delta > slack) || (!falling && delta < -slack) {
            return Some(format!(
                "theta not monotone beyond noise between x={} and x={}",
                a.x, b.x
            ));
        }
    }
    None
}

/// Bisection for λ_c(r) = inf{λ : θ(λ, r) = 0}. For r ≤ r_G the answer
/// is 0 by definition and is returned immediately with a flag.
pub fn estimate_lambda_c(
    r: f64,
    ladder: &[f64],
    runs_per_probe: u64,
    seed: SeedSpec,
) -> Result<ThresholdEstimate> {
    if r.is_nan() || r <= 0.0 || r.is_infinite() {
        return param_err(format!("r must be finite and > 0, got {r}"));
    }
    if runs_per_probe < 30 {
        return param_err(format!("threshold estimation needs runs >= 30, got {runs_per_probe}"));
    }
    if r <= analytics::constants::R_GILBERT_REF {
        return Ok(ThresholdEstimate::resolved(0.0, Direction::LambdaCOfR, "subcritical_range"));
    }
    let search = LadderSearch {
        direction: Direction::LambdaCOfR,
        scales: ladder,
        lo: 0.0,
        hi: 0.30,
        opts: BisectOptions::falling(0.004),
        runs_per_probe,
        seed,
        bootstrap_reps: 400,
    };
    let mut est = search.run(|side, lambda, run_base| {
        theta_probe(lambda, r, side, runs_per_probe, seed, run_base)
    })?;
    est.flag = monotonicity_flag(&est, true);
    Ok(est)
}

/// Bisection for r_c(λ) = sup{r : θ(λ, r) = 0}; at λ = 0 this estimates
/// Gilbert's critical radius. Rejects λ at or above the λ∞ reference
/// (vertical asymptote).
pub fn estimate_r_c(
    lambda: f64,
    ladder: &[f64],
    runs_per_probe: u64,
    seed: SeedSpec,
) -> Result<ThresholdEstimate> {
    if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
        return param_err(format!("lambda must be finite and >= 0, got {lambda}"));
    }
    if runs_per_probe < 30 {
        return param_err(format!("threshold estimation needs runs >= 30, got {runs_per_probe}"));
    }
    if lambda >= analytics::constants::LAMBDA_INF_REF {
        return param_err(format!(
            "lambda = {lambda} is at or above the lambda_inf asymptote {}; r_c diverges",
            analytics::constants::LAMBDA_INF_REF
        ));
    }
    let hi = analytics::r_c_approx(lambda).map(|r| (r + 0.8).clamp(2.0, 6.0)).unwrap_or(6.0);
    let direction = if lambda == 0.0 { Direction::GilbertR } else { Direction::RCOfLambda };
    let search = LadderSearch {
        direction,
        scales: ladder,
        lo: 0.8,
        hi,
        opts: BisectOptions::rising(0.006),
        runs_per_probe,
        seed,
        bootstrap_reps: 400,
    };
    let mut est = search.run(|side, r, run_base| {
        theta_probe(lambda, r, side, runs_per_probe, seed, run_base)
    })?;
    est.flag = monotonicity_flag(&est, false);
    Ok(est)
}

/// Bisection for λ∞ on r = ∞ graphs (edges limited by guard radius only).
pub fn estimate_lambda_inf(
    ladder: &[f64],
    runs_per_probe: u64,
    seed: SeedSpec,
) -> Result<ThresholdEstimate> {
    if runs_per_probe < 30 {
        return param_err(format!("threshold estimation needs runs >= 30, got {runs_per_probe}"));
    }
    let search = LadderSearch {
        direction: Direction::LambdaInf,
        scales: ladder,
        lo: 0.05,
        hi: 0.30,
        opts: BisectOptions::falling(0.004),
        runs_per_probe,
        seed,
        bootstrap_reps: 400,
    };
    let mut est = search.run(|side, lambda, run_base| {
        theta_probe(lambda, f64::INFINITY, side, runs_per_probe, seed, run_base)
    })?;
    est.flag = monotonicity_flag(&est, true);
    Ok(est)
}

/// Isolation fraction and mean out-degree measured on graphs at
/// (λ, r_c_est), with standard errors across runs.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalGraphStats {
    pub lambda: f64,
    pub r_c: f64,
    pub isolation: f64,
    pub isolation_se: f64,
    pub mean_out: f64,
    pub mean_out_se: f64,
    pub runs: u64,
}

/// Measures P[N^out = 0] and E[N^out] at the estimated critical point on
/// torus windows (no boundary bias).
pub fn critical_graph_stats(
    lambda: f64,
    r_c_est: f64,
    side: f64,
    runs: u64,
    seed: SeedSpec,
) -> Result<CriticalGraphStats> {
    if lambda.is_nan() || lambda < 0.0 || r_c_est.is_nan() || r_c_est <= 0.0 || r_c_est.is_infinite() {
        return param_err("critical-graph stats need lambda >= 0 and finite r_c > 0");
    }
    if runs == 0 {
        return param_err("runs must be >= 1");
    }
    let window = Window::torus(side)?;
    let per_run: Vec<(f64, f64)> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let s = seed.with_run(seed.run_index + i);
            let goods = sample_ppp(1.0, window, s, streams::GOODS).expect("valid");
            let eaves = sample_ppp(lambda, window, s, streams::EAVES).expect("valid");
            let g = build_directed(&goods, &eaves, r_c_est).expect("valid");
            let summary = degree_summary(&g);
            let counts = summary.interior_counts(DegreeKind::Out);
            (counts.frequency(0), counts.mean())
        })
        .collect();
    let isolations: Vec<f64> = per_run.iter().map(|x| x.0).collect();
    let means: Vec<f64> = per_run.iter().map(|x| x.1).collect();
    let (isolation, isolation_se) = mean_and_se(&isolations);
    let (mean_out, mean_out_se) = mean_and_se(&means);
    Ok(CriticalGraphStats {
        lambda,
        r_c: r_c_est,
        isolation,
        isolation_se,
        mean_out,
        mean_out_se,
        runs,
    })
}

/// Sweep direction over a parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepDirection {
    LambdaCOfR,
    RCOfLambda,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub ladder: Vec<f64>,
    pub runs_per_probe: u64,
    pub seed: SeedSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Exponential-fit approximation of the estimated quantity.
    pub approx: f64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub direction: SweepDirection,
    pub rows: Vec<SweepRow>,
}

// Seed stride between sweep points; far larger than any single
// threshold search consumes.
const SWEEP_SEED_STRIDE: u64 = 10_000_000;

/// Threshold estimates across a sorted grid, with approximation
/// residuals. Per-point failures are recorded and the sweep continues.
pub fn sweep(direction: SweepDirection, grid: &[f64], cfg: &SweepConfig) -> SweepResult {
    let mut rows = Vec::with_capacity(grid.len());
    for (i, &x) in grid.iter().enumerate() {
        let seed = cfg.seed.with_run(cfg.seed.run_index + i as u64 * SWEEP_SEED_STRIDE);
        let est = match direction {
            SweepDirection::LambdaCOfR => {
                estimate_lambda_c(x, &cfg.ladder, cfg.runs_per_probe, seed)
            }
            SweepDirection::RCOfLambda => {
                estimate_r_c(x, &cfg.ladder, cfg.runs_per_probe, seed)
            }
        };
        let approx = match direction {
            SweepDirection::LambdaCOfR => analytics::lambda_c_approx(x),
            SweepDirection::RCOfLambda => analytics::r_c_approx(x),
        }
        .unwrap_or(f64::NAN);
        rows.push(match est {
            Ok(e) => SweepRow {
                x,
                estimate: e.value,
                ci_lo: e.ci_lo,
                ci_hi: e.ci_hi,
                approx,
                residual: e.value - approx,
                error: None,
            },
            Err(err) => SweepRow {
                x,
                estimate: f64::NAN,
                ci_lo: f64::NAN,
                ci_hi: f64::NAN,
                approx,
                residual: f64::NAN,
                error: Some(err.to_string()),
            },
        });
    }
    SweepResult { direction, rows }
}

fn csv_real(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.11e}")
    }
}

impl SweepResult {
    pub fn had_failures(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    /// Plot-ready CSV: `x,estimate,ci_lo,ci_hi,approx,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,estimate,ci_lo,ci_hi,approx,residual\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_real(r.x),
                csv_real(r.estimate),
                csv_real(r.ci_lo),
                csv_real(r.ci_hi),
                csv_real(r.approx),
                csv_real(r.residual),
            ));
        }
        out
    }
}
