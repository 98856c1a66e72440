//! Threshold estimation shared by the lattice and continuum percolation
//! modules: bisection of a monotone crossing probability against a target
//! (usually 1/2), refined across a ladder of system sizes, with a
//! parametric-bootstrap confidence interval.

use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seed::{streams, SeedSpec};

/// Which critical parameter a `ThresholdEstimate` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    LambdaCOfR,
    RCOfLambda,
    LambdaInf,
    GilbertR,
    LatticePc,
}

/// One Monte Carlo probe of the crossing probability.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeRecord {
    /// Probed parameter value (p, λ, or r).
    pub x: f64,
    pub successes: u64,
    pub runs: u64,
}

impl ProbeRecord {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.runs as f64
    }
}

/// Bisection outcome at one ladder rung.
#[derive(Debug, Clone, Serialize)]
pub struct Rung {
    /// System scale of this rung (window side or lattice size).
    pub scale: f64,
    pub estimate: f64,
    pub probes: Vec<ProbeRecord>,
}

/// A critical-parameter estimate with a 95% confidence interval and the
/// full search metadata.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdEstimate {
    pub value: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub direction: Direction,
    pub runs_per_probe: u64,
    pub rungs: Vec<Rung>,
    /// Diagnostic such as "subcritical_range" or a monotonicity warning.
    pub flag: Option<String>,
}

impl ThresholdEstimate {
    /// Immediate estimate for cases decided by definition (no search).
    pub fn resolved(value: f64, direction: Direction, flag: &str) -> Self {
        Self {
            value,
            ci_lo: value,
            ci_hi: value,
            direction,
            runs_per_probe: 0,
            rungs: Vec::new(),
            flag: Some(flag.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BisectOptions {
    /// Crossing-probability target, 1/2 by default.
    pub target: f64,
    /// Stop when the bracket is narrower than this.
    pub tol: f64,
    /// Also stop once the last probe's Wilson CI brackets the target and
    /// the bracket is already narrower than `coarse_tol`.
    pub coarse_tol: f64,
    pub max_probes: usize,
    pub min_probes: usize,
    /// True when the crossing probability rises with the parameter
    /// (the r direction); false when it falls (p and λ directions).
    pub rising: bool,
}

impl BisectOptions {
    pub fn falling(tol: f64) -> Self {
        Self { target: 0.5, tol, coarse_tol: 8.0 * tol, max_probes: 14, min_probes: 5, rising: false }
    }

    pub fn rising(tol: f64) -> Self {
        Self { rising: true, ..Self::falling(tol) }
    }
}

fn above(theta: f64, opts: &BisectOptions) -> bool {
    theta > opts.target
}

/// `true` when the probe outcome says the threshold lies to the right.
fn threshold_is_right(theta: f64, opts: &BisectOptions) -> bool {
    // falling curve: still above target → move right
    // rising curve: still below target → move right
    above(theta, opts) != opts.rising
}

/// Result of one bisection: the interpolated estimate, the final
/// bracket, and the full probe trace.
#[derive(Debug, Clone)]
pub struct BisectOutcome {
    pub estimate: f64,
    pub bracket: (f64, f64),
    pub trace: Vec<ProbeRecord>,
}

/// Bisects `[lo, hi]` against the probe function. The estimate is the
/// linear interpolation through the target on the final bracket. Fails
/// when the endpoints do not bracket the target.
pub fn bisect_crossing(
    mut lo: f64,
    mut hi: f64,
    opts: &BisectOptions,
    mut probe: impl FnMut(f64) -> (u64, u64),
) -> Result<BisectOutcome> {
    assert!(lo < hi);
    let mut trace = Vec::new();
    let mut run_probe = |x: f64, trace: &mut Vec<ProbeRecord>| -> f64 {
        let (successes, runs) = probe(x);
        let rec = ProbeRecord { x, successes, runs };
        trace.push(rec);
        rec.fraction()
    };
    let mut theta_lo = run_probe(lo, &mut trace);
    let mut theta_hi = run_probe(hi, &mut trace);
    if !threshold_is_right(theta_lo, opts) || threshold_is_right(theta_hi, opts) {
        return Err(Error::Bracket(format!(
            "no crossing of {} in [{lo}, {hi}]: theta({lo}) = {theta_lo:.3}, theta({hi}) = {theta_hi:.3}",
            opts.target
        )));
    }
    let mut probes = 2;
    while hi - lo > opts.tol && probes < opts.max_probes {
        let mid = 0.5 * (lo + hi);
        let theta = run_probe(mid, &mut trace);
        if threshold_is_right(theta, opts) {
            lo = mid;
            theta_lo = theta;
        } else {
            hi = mid;
            theta_hi = theta;
        }
        probes += 1;
        if probes >= opts.min_probes && hi - lo < opts.coarse_tol {
            let last = trace.last().unwrap();
            let (wl, wh) = crate::stats::wilson_interval(last.successes, last.runs);
            if wl <= opts.target && opts.target <= wh {
                break;
            }
        }
    }
    // Interpolate through the target on the final bracket when the probe
    // values straddle it; otherwise take the midpoint.
    let est = if (theta_lo - opts.target) * (theta_hi - opts.target) < 0.0 {
        lo + (opts.target - theta_lo) / (theta_hi - theta_lo) * (hi - lo)
    } else {
        0.5 * (lo + hi)
    };
    Ok(BisectOutcome { estimate: est, bracket: (lo, hi), trace })
}

/// Parametric bootstrap over a probe trace: resamples each probe's
/// success count, interpolates every crossing of the target, keeps the
/// crossing nearest the point estimate (noise far from the transition
/// produces spurious distant crossings), and returns the 2.5%/97.5%
/// percentiles.
pub fn bootstrap_ci(
    trace: &[ProbeRecord],
    center: f64,
    opts: &BisectOptions,
    reps: usize,
    seed: SeedSpec,
) -> (f64, f64) {
    let mut sorted: Vec<ProbeRecord> = trace.to_vec();
    sorted.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    sorted.dedup_by(|a, b| a.x == b.x);
    if sorted.len() < 2 {
        let x = sorted.first().map(|p| p.x).unwrap_or(f64::NAN);
        return (x, x);
    }
    let mut rng = seed.stream(streams::BOOTSTRAP);
    let mut draws = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut prev: Option<(f64, f64)> = None;
        let mut best: Option<f64> = None;
        for p in &sorted {
            let k = if p.runs == 0 {
                0
            } else {
                Binomial::new(p.runs, p.fraction().clamp(0.0, 1.0))
                    .map(|b| b.sample(&mut rng))
                    .unwrap_or(0)
            };
            let theta = if p.runs == 0 { 0.0 } else { k as f64 / p.runs as f64 };
            if let Some((px, pt)) = prev {
                let crossed = if opts.rising {
                    pt <= opts.target && theta > opts.target
                } else {
                    pt >= opts.target && theta < opts.target
                };
                if crossed {
                    let est = if (theta - pt).abs() > 0.0 {
                        px + (opts.target - pt) / (theta - pt) * (p.x - px)
                    } else {
                        0.5 * (px + p.x)
                    };
                    if best.is_none_or(|b| (est - center).abs() < (b - center).abs()) {
                        best = Some(est);
                    }
                }
            }
            prev = Some((p.x, theta));
        }
        let est = best.unwrap_or_else(|| {
            // replicate never crossed: clamp to the appropriate end
            let first = sorted.first().unwrap().x;
            let last = sorted.last().unwrap().x;
            let final_theta = prev.unwrap().1;
            if threshold_is_right(final_theta, opts) {
                last
            } else {
                first
            }
        });
        draws.push(est);
    }
    draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pick = |q: f64| draws[((q * (reps - 1) as f64).round() as usize).min(reps - 1)];
    (pick(0.025), pick(0.975))
}

/// Full ladder search: bisect at each scale, narrowing the bracket around
/// the previous rung's estimate. The returned estimate and CI come from
/// the final (largest) rung; earlier rungs document finite-size drift.
///
/// `probe` maps `(scale, x, run_base)` to `(successes, runs)`; `run_base`
/// is a cumulative run-index offset so every Monte Carlo run in the whole
/// search uses a distinct seed stream.
pub struct LadderSearch<'a> {
    pub direction: Direction,
    pub scales: &'a [f64],
    pub lo: f64,
    pub hi: f64,
    pub opts: BisectOptions,
    pub runs_per_probe: u64,
    pub seed: SeedSpec,
    pub bootstrap_reps: usize,
}

impl LadderSearch<'_> {
    pub fn run(
        &self,
        mut probe: impl FnMut(f64, f64, u64) -> (u64, u64),
    ) -> Result<ThresholdEstimate> {
        assert!(!self.scales.is_empty());
        let mut run_base = 0u64;
        let mut lo = self.lo;
        let mut hi = self.hi;
        let mut rungs: Vec<Rung> = Vec::new();
        for (i, &scale) in self.scales.iter().enumerate() {
            let result = bisect_crossing(lo, hi, &self.opts, |x| {
                let out = probe(scale, x, run_base);
                run_base += self.runs_per_probe;
                out
            });
            let outcome = match result {
                Ok(v) => v,
                Err(Error::Bracket(_)) if i > 0 => {
                    // The narrowed bracket missed at the larger scale;
                    // retry once from the original full bracket.
                    bisect_crossing(self.lo, self.hi, &self.opts, |x| {
                        let out = probe(scale, x, run_base);
                        run_base += self.runs_per_probe;
                        out
                    })?
                }
                Err(e) => return Err(e),
            };
            // next rung searches a widened neighborhood of this estimate
            let width = outcome.bracket.1 - outcome.bracket.0;
            let slack = (6.0 * self.opts.tol).max(1.5 * width);
            lo = (outcome.estimate - slack).max(self.lo);
            hi = (outcome.estimate + slack).min(self.hi);
            rungs.push(Rung { scale, estimate: outcome.estimate, probes: outcome.trace });
        }
        let last = rungs.last().unwrap();
        let value = last.estimate;
        let (ci_lo, ci_hi) =
            bootstrap_ci(&last.probes, value, &self.opts, self.bootstrap_reps, self.seed);
        Ok(ThresholdEstimate {
            value,
            ci_lo: ci_lo.min(value),
            ci_hi: ci_hi.max(value),
            direction: self.direction,
            runs_per_probe: self.runs_per_probe,
            rungs,
            flag: None,
        })
    }
}
