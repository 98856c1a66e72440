//! Command handlers. Each builds a canonical config echo, runs the
//! experiment through the library, and writes CSV or JSON output.

use serde_json::json;

use secrograph::analytics::{self, constants, ModelParams};
use secrograph::experiment::{run_degree_study, run_edge_length_study, StudyBoundary, StudyConfig};
use secrograph::lattice::{
    crossing_fraction, estimate_pc, BallRule, EdgeRule, Placement,
};
use secrograph::percolation::{
    estimate_lambda_c, estimate_lambda_inf, estimate_r_c, estimate_theta, sweep, PercRunParams,
    SweepConfig, SweepDirection,
};
use secrograph::pointprocess::{
    add_center_node, eaves_margin, sample_eaves, sample_goods, sample_ppp, write_points_csv,
    Window,
};
use secrograph::secgraph::{build_directed, dump_json, DegreeKind, UndirectedKind};
use secrograph::seed::{streams, SeedSpec};
use secrograph::stats::wilson_interval;

use crate::record::{csv_document, emit, json_record, real, ExperimentConfig};
use crate::{
    AnalyticCmd, BallArg, BoundaryArg, Cli, Cmd, CmdError, DegreesCmd, DirectionArg, EdgesCmd,
    Format, GraphCmd, GraphKindArg, IsolationCmd, LatticeCmd, PercolateCmd, PlacementArg,
    Quantity, RatiosCmd, RegimesCmd, RuleArg, SampleCmd, SweepCmd, ThresholdCmd,
};

pub fn dispatch(cli: &Cli) -> Result<(), CmdError> {
    match &cli.cmd {
        Cmd::Analytic(c) => cmd_analytic(cli, c),
        Cmd::Sample(c) => cmd_sample(cli, c),
        Cmd::Graph(c) => cmd_graph(cli, c),
        Cmd::Degrees(c) => cmd_degrees(cli, c),
        Cmd::Isolation(c) => cmd_isolation(cli, c),
        Cmd::Ratios(c) => cmd_ratios(cli, c),
        Cmd::Edges(c) => cmd_edges(cli, c),
        Cmd::Regimes(c) => cmd_regimes(cli, c),
        Cmd::Lattice(c) => cmd_lattice(cli, c),
        Cmd::Percolate(c) => cmd_percolate(cli, c),
        Cmd::Threshold(c) => cmd_threshold(cli, c),
        Cmd::Sweep(c) => cmd_sweep(cli, c),
    }
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn range_json(r: f64) -> serde_json::Value {
    if r.is_finite() {
        json!(r)
    } else {
        json!("inf")
    }
}

// ---------------------------------------------------------------- analytic

/// Named inputs an analytic quantity may consume.
#[derive(Debug, Clone, Copy, Default)]
struct Inputs {
    lambda: Option<f64>,
    r: Option<f64>,
    n: Option<i64>,
    a: Option<f64>,
    eps: Option<f64>,
    power: Option<f64>,
    theta: Option<f64>,
    noise: Option<f64>,
    alpha: Option<f64>,
}

impl Inputs {
    fn lambda(&self) -> Result<f64, CmdError> {
        self.lambda.ok_or_else(|| usage("missing --lambda"))
    }

    fn r(&self) -> Result<f64, CmdError> {
        self.r.ok_or_else(|| usage("missing --r"))
    }

    fn params(&self) -> Result<ModelParams, CmdError> {
        Ok(ModelParams::new(self.lambda()?, self.r()?)?)
    }

    fn n(&self) -> Result<u32, CmdError> {
        let n = self.n.ok_or_else(|| usage("missing --n"))?;
        u32::try_from(n).map_err(|_| usage(format!("n must be a non-negative integer, got {n}")))
    }
}

/// Evaluates one quantity; multi-valued quantities return several named
/// columns.
fn eval_quantity(q: Quantity, inp: &Inputs) -> Result<Vec<(&'static str, f64)>, CmdError> {
    let out = match q {
        Quantity::OutIsolation => {
            vec![("out_isolation", analytics::out_isolation(inp.params()?))]
        }
        Quantity::BasicIsolation => {
            vec![("basic_isolation", analytics::basic_isolation(inp.lambda()?)?)]
        }
        Quantity::OutPmf => {
            vec![("out_pmf", analytics::out_degree_pmf(inp.params()?, inp.n()?))]
        }
        Quantity::GammaQ => {
            let a = inp.a.ok_or_else(|| usage("missing --a"))?;
            vec![("gamma_q", analytics::regularized_upper_gamma_int(inp.n()?, a)?)]
        }
        Quantity::MeanOut => vec![("mean_out", analytics::mean_out_degree(inp.params()?))],
        Quantity::MeanBasic => vec![("mean_basic", analytics::mean_basic_degree(inp.params()?))],
        Quantity::MeanEnhanced => {
            vec![("mean_enhanced", analytics::mean_enhanced_degree(inp.params()?))]
        }
        Quantity::Eta => vec![("eta", analytics::secrecy_ratios(inp.params()?)?.0)],
        Quantity::EtaPrime => vec![("eta_prime", analytics::secrecy_ratios(inp.params()?)?.1)],
        Quantity::CdfBounds => {
            let (lo, hi) = analytics::basic_cdf_bounds(inp.lambda()?, inp.n()?)?;
            vec![("cdf_lower", lo), ("cdf_upper", hi)]
        }
        Quantity::MeanBounds => {
            let (lo, hi) = analytics::basic_mean_bounds(inp.lambda()?)?;
            vec![("mean_lower", lo), ("mean_upper", hi)]
        }
        Quantity::RT => vec![("r_t", analytics::regime_descriptors(inp.lambda()?)?.r_t)],
        Quantity::Slope => vec![("slope", analytics::regime_descriptors(inp.lambda()?)?.slope)],
        Quantity::REps => {
            let eps = inp.eps.ok_or_else(|| usage("missing --eps"))?;
            vec![("r_eps", analytics::regime_descriptors(inp.lambda()?)?.r_eps(eps)?)]
        }
        Quantity::PiecewiseBound => {
            let d = analytics::regime_descriptors(inp.lambda()?)?;
            vec![("piecewise_bound", d.piecewise_bound(inp.r()?))]
        }
        Quantity::LambdaC => vec![("lambda_c", analytics::lambda_c_approx(inp.r()?)?)],
        Quantity::RC => vec![("r_c", analytics::r_c_approx(inp.lambda()?)?)],
        Quantity::RcLowerBound => {
            vec![("rc_lower_bound", analytics::r_c_linear_lower_bound(inp.lambda()?))]
        }
        Quantity::CritIsolation => {
            vec![("crit_isolation", analytics::critical_graph_approx(inp.lambda()?)?.isolation)]
        }
        Quantity::CritMeanLower => {
            vec![(
                "crit_mean_lower",
                analytics::critical_graph_approx(inp.lambda()?)?.mean_out_lower,
            )]
        }
        Quantity::Range => {
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| usage(format!("missing --{name}")))
            };
            vec![(
                "range",
                analytics::range_from_power(
                    need(inp.power, "power")?,
                    need(inp.theta, "theta")?,
                    need(inp.noise, "noise")?,
                    need(inp.alpha, "alpha")?,
                )?,
            )]
        }
        Quantity::RayleighMean => {
            vec![("rayleigh_mean", analytics::rayleigh_edge_mean(inp.lambda()?))]
        }
    };
    Ok(out)
}

fn parse_cell(name: &str, text: &str) -> Result<f64, CmdError> {
    if text.eq_ignore_ascii_case("inf") || text.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    text.trim()
        .parse::<f64>()
        .map_err(|e| usage(format!("bad value {text:?} in column {name}: {e}")))
}

fn cmd_analytic(cli: &Cli, c: &AnalyticCmd) -> Result<(), CmdError> {
    let base = Inputs {
        lambda: c.lambda,
        r: c.r.map(|r| r.0),
        n: c.n,
        a: c.a,
        eps: c.eps,
        power: c.power,
        theta: c.theta,
        noise: c.noise,
        alpha: c.alpha,
    };
    match &c.batch {
        None => {
            let values = eval_quantity(c.quantity, &base)?;
            let mut text = String::new();
            for (_, v) in values {
                text.push_str(&format!("{v}\n"));
            }
            emit(cli, &text)
        }
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let mut lines = raw.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
            let header = lines.next().ok_or_else(|| usage("batch CSV is empty"))?;
            let cols: Vec<&str> = header.split(',').map(str::trim).collect();
            let mut out_rows: Vec<Vec<String>> = Vec::new();
            let mut out_cols: Option<Vec<&'static str>> = None;
            for line in lines {
                let cells: Vec<&str> = line.split(',').collect();
                if cells.len() != cols.len() {
                    return Err(usage(format!("row has {} cells, header has {}", cells.len(), cols.len())));
                }
                let mut inp = base;
                for (name, cell) in cols.iter().zip(&cells) {
                    let v = parse_cell(name, cell)?;
                    match *name {
                        "lambda" => inp.lambda = Some(v),
                        "r" => inp.r = Some(v),
                        "n" => inp.n = Some(v as i64),
                        "a" => inp.a = Some(v),
                        "eps" => inp.eps = Some(v),
                        "power" => inp.power = Some(v),
                        "theta" => inp.theta = Some(v),
                        "noise" => inp.noise = Some(v),
                        "alpha" => inp.alpha = Some(v),
                        _ => {}
                    }
                }
                let values = eval_quantity(c.quantity, &inp)?;
                if out_cols.is_none() {
                    out_cols = Some(values.iter().map(|(n, _)| *n).collect());
                }
                let mut row: Vec<String> = cells.iter().map(|s| s.to_string()).collect();
                row.extend(values.iter().map(|(_, v)| v.to_string()));
                out_rows.push(row);
            }
            let added = out_cols.unwrap_or_default().join(",");
            let header = if added.is_empty() {
                header.to_string()
            } else {
                format!("{header},{added}")
            };
            let config = ExperimentConfig::new(
                "analytic",
                cli.seed,
                json!({"quantity": c.quantity, "batch": path.display().to_string()}),
            );
            emit(cli, &csv_document(&header, &out_rows, &config))
        }
    }
}

// ------------------------------------------------------------------ sample

fn cmd_sample(cli: &Cli, c: &SampleCmd) -> Result<(), CmdError> {
    let window = match c.boundary {
        BoundaryArg::Plain => Window::plain(c.side)?,
        BoundaryArg::Torus => Window::torus(c.side)?,
    };
    let mut ps = sample_ppp(c.intensity, window, SeedSpec::new(cli.seed, 0), streams::GOODS)?;
    if c.center {
        ps = add_center_node(&ps);
    }
    let mut buf = Vec::new();
    write_points_csv(&ps, &mut buf).map_err(CmdError::from)?;
    // the dump format is pinned to exactly `x,y` rows; config goes to stderr
    eprintln!(
        "secrograph: sample config {}",
        ExperimentConfig::new(
            "sample",
            cli.seed,
            json!({"intensity": c.intensity, "L": c.side, "boundary": c.boundary, "center": c.center}),
        )
        .to_json()
    );
    emit(cli, &String::from_utf8(buf).expect("utf8 csv"))
}

// ------------------------------------------------------------------- graph

fn cmd_graph(cli: &Cli, c: &GraphCmd) -> Result<(), CmdError> {
    let seed = SeedSpec::new(cli.seed, 0);
    let r = c.r.0;
    let (goods, eaves) = match c.boundary {
        BoundaryArg::Plain => {
            let gw = Window::plain(c.side)?;
            let ew = Window::inflated(c.side, eaves_margin(c.lambda, r, c.side))?;
            (sample_goods(1.0, gw, seed)?, sample_eaves(c.lambda, ew, seed)?)
        }
        BoundaryArg::Torus => {
            let w = Window::torus(c.side)?;
            (sample_goods(1.0, w, seed)?, sample_eaves(c.lambda, w, seed)?)
        }
    };
    let g = build_directed(&goods, &eaves, r)?;
    let mut text = dump_json(&g);
    text.push('\n');
    emit(cli, &text)
}

// ----------------------------------------------------------------- degrees

fn degree_study(
    lambda: f64,
    r: f64,
    side: f64,
    runs: u64,
    seed: u64,
    boundary: StudyBoundary,
) -> Result<secrograph::experiment::DegreeStudyResult, CmdError> {
    let cfg = StudyConfig::new(lambda, r, side, runs, SeedSpec::new(seed, 0), boundary)?;
    Ok(run_degree_study(&cfg)?)
}

fn cmd_degrees(cli: &Cli, c: &DegreesCmd) -> Result<(), CmdError> {
    let r = c.r.0;
    let params = ModelParams::new(c.lambda, r)?;
    let res = degree_study(c.lambda, r, c.side, c.runs, cli.seed, StudyBoundary::Torus)?;
    let poisson_ref = if r.is_finite() { Some(ModelParams::new(0.0, r)?) } else { None };
    let geom_ref =
        if c.lambda > 0.0 { Some(ModelParams::new(c.lambda, f64::INFINITY)?) } else { None };

    let mut n_max = res.interior_counts(DegreeKind::Out).counts.len();
    for kind in [DegreeKind::In, DegreeKind::Basic, DegreeKind::Enhanced] {
        n_max = n_max.max(res.interior_counts(kind).counts.len());
    }
    let mut cum = 0.0;
    let mut n_analytic = 0usize;
    while cum < 1.0 - 1e-9 && n_analytic < 400 {
        cum += analytics::out_degree_pmf(params, n_analytic as u32);
        n_analytic += 1;
    }
    n_max = n_max.max(n_analytic);

    let rows: Vec<Vec<String>> = (0..n_max)
        .map(|n| {
            vec![
                n.to_string(),
                real(res.interior_counts(DegreeKind::Out).frequency(n)),
                real(res.interior_counts(DegreeKind::In).frequency(n)),
                real(res.interior_counts(DegreeKind::Basic).frequency(n)),
                real(res.interior_counts(DegreeKind::Enhanced).frequency(n)),
                real(analytics::out_degree_pmf(params, n as u32)),
                real(poisson_ref.map_or(f64::NAN, |p| analytics::out_degree_pmf(p, n as u32))),
                real(geom_ref.map_or(f64::NAN, |p| analytics::out_degree_pmf(p, n as u32))),
            ]
        })
        .collect();
    let config = ExperimentConfig::new(
        "degrees",
        cli.seed,
        json!({"lambda": c.lambda, "r": range_json(r), "L": c.side, "runs": c.runs}),
    );
    let tv = res
        .interior_counts(DegreeKind::Out)
        .tv_distance(|n| analytics::out_degree_pmf(params, n as u32));
    match cli.format {
        Format::Csv => {
            let header = "n,out_emp,in_emp,basic_emp,enhanced_emp,out_analytic,poisson_ref,geometric_ref";
            emit(cli, &csv_document(header, &rows, &config))?;
        }
        Format::Json => {
            let result = json!({
                "interior_nodes": res.interior_nodes,
                "tv_out_vs_analytic": tv,
                "mean_out_emp": res.mean(DegreeKind::Out),
                "mean_out_analytic": analytics::mean_out_degree(params),
                "mean_basic_emp": res.mean(DegreeKind::Basic),
                "mean_basic_analytic": analytics::mean_basic_degree(params),
                "mean_enhanced_emp": res.mean(DegreeKind::Enhanced),
                "mean_enhanced_analytic": analytics::mean_enhanced_degree(params),
                "rows": rows,
            });
            emit(cli, &json_record(&config, result))?;
        }
    }
    eprintln!("secrograph: degrees tv(out, analytic) = {tv:.5}");
    Ok(())
}

// --------------------------------------------------------------- isolation

fn cmd_isolation(cli: &Cli, c: &IsolationCmd) -> Result<(), CmdError> {
    let r = c.r.0;
    let mut rows = Vec::new();
    let mut ordering_violated = false;
    for (i, &lambda) in c.lambda.iter().enumerate() {
        let params = ModelParams::new(lambda, r)?;
        let res = degree_study(
            lambda,
            r,
            c.side,
            c.runs,
            cli.seed.wrapping_add(i as u64 * 1_000_003),
            StudyBoundary::Torus,
        )?;
        let out = res.isolation(DegreeKind::Out);
        let inn = res.isolation(DegreeKind::In);
        let basic = res.isolation(DegreeKind::Basic);
        let enh = res.isolation(DegreeKind::Enhanced);
        let slack = 3.0 * (res.isolation_se(DegreeKind::In) + res.isolation_se(DegreeKind::Out));
        let ok = enh <= inn + 1e-12 && inn <= out + slack;
        ordering_violated |= !ok;
        let basic_analytic =
            if r.is_infinite() { analytics::basic_isolation(lambda)? } else { f64::NAN };
        rows.push(vec![
            real(lambda),
            real(out),
            real(inn),
            real(basic),
            real(enh),
            real(analytics::out_isolation(params)),
            real(basic_analytic),
            (ok as u8).to_string(),
        ]);
    }
    let config = ExperimentConfig::new(
        "isolation",
        cli.seed,
        json!({"lambda": c.lambda, "r": range_json(r), "L": c.side, "runs": c.runs}),
    );
    let header = "lambda,out_emp,in_emp,basic_emp,enhanced_emp,out_analytic,basic_analytic,ordering_ok";
    match cli.format {
        Format::Csv => emit(cli, &csv_document(header, &rows, &config))?,
        Format::Json => emit(cli, &json_record(&config, json!({"rows": rows})))?,
    }
    if ordering_violated {
        return Err(CmdError::Partial(
            "isolation ordering P[N'=0] <= P[N_in=0] <= P[N_out=0] violated beyond CI".into(),
        ));
    }
    Ok(())
}

// ------------------------------------------------------------------ ratios

fn cmd_ratios(cli: &Cli, c: &RatiosCmd) -> Result<(), CmdError> {
    let floor = constants::basic_to_enhanced_floor();
    let mut rows = Vec::new();
    for &lambda in &c.lambda {
        for &r in &c.r {
            let params = ModelParams::new(lambda, r)?;
            let (eta, eta_prime) = analytics::secrecy_ratios(params)?;
            rows.push(vec![
                real(lambda),
                real(r),
                real(eta),
                real(eta_prime),
                real(eta / eta_prime),
                real(floor),
            ]);
        }
    }
    let config = ExperimentConfig::new(
        "ratios",
        cli.seed,
        json!({"lambda": c.lambda, "r": c.r}),
    );
    let header = "lambda,r,eta,eta_prime,eta_over_eta_prime,floor";
    match cli.format {
        Format::Csv => emit(cli, &csv_document(header, &rows, &config)),
        Format::Json => emit(cli, &json_record(&config, json!({"rows": rows}))),
    }
}

// ------------------------------------------------------------------- edges

fn cmd_edges(cli: &Cli, c: &EdgesCmd) -> Result<(), CmdError> {
    let r = c.r.0;
    let boundary = match c.boundary {
        BoundaryArg::Plain => StudyBoundary::PlainShared,
        BoundaryArg::Torus => StudyBoundary::Torus,
    };
    let cfg = StudyConfig::new(c.lambda, r, c.side, c.runs, SeedSpec::new(cli.seed, 0), boundary)?;
    let (stats, lengths) = run_edge_length_study(&cfg)?;
    let hi = lengths.iter().cloned().fold(0.0f64, f64::max) * (1.0 + 1e-12);
    let bins = c.bins.max(1);
    let width = hi / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in &lengths {
        let b = ((x / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let total = lengths.len() as f64;
    let rows: Vec<Vec<String>> = (0..bins)
        .map(|b| {
            let lo = b as f64 * width;
            let mid = lo + width / 2.0;
            let rayleigh = if c.lambda > 0.0 {
                analytics::nearest_eaves_pdf(c.lambda, mid)
            } else {
                f64::NAN
            };
            let disk = if r.is_finite() {
                if mid <= r { 2.0 * mid / (r * r) } else { 0.0 }
            } else {
                f64::NAN
            };
            vec![
                real(lo),
                real(lo + width),
                counts[b].to_string(),
                real(counts[b] as f64 / (total * width)),
                real(rayleigh),
                real(disk),
            ]
        })
        .collect();
    let config = ExperimentConfig::new(
        "edges",
        cli.seed,
        json!({
            "lambda": c.lambda, "r": range_json(r), "L": c.side, "runs": c.runs,
            "bins": bins, "boundary": c.boundary,
        }),
    );
    eprintln!(
        "secrograph: edges n={} mean={:.5} ks({})={:.5} tail_gap={:+.5}",
        stats.n_edges, stats.mean, stats.reference, stats.ks, stats.tail_gap
    );
    match cli.format {
        Format::Csv => {
            let header = "bin_lo,bin_hi,count,density,rayleigh_ref,disk_ref";
            emit(cli, &csv_document(header, &rows, &config))
        }
        Format::Json => emit(
            cli,
            &json_record(
                &config,
                json!({
                    "n_edges": stats.n_edges,
                    "mean": stats.mean,
                    "ks": stats.ks,
                    "tail_gap": stats.tail_gap,
                    "reference": stats.reference,
                    "rows": rows,
                }),
            ),
        ),
    }
}

// ----------------------------------------------------------------- regimes

fn cmd_regimes(cli: &Cli, c: &RegimesCmd) -> Result<(), CmdError> {
    if c.points < 2 {
        return Err(usage("need at least 2 grid points"));
    }
    let d = analytics::regime_descriptors(c.lambda)?;
    if !(c.r_min > 0.0 && c.r_max > c.r_min) {
        return Err(usage("need 0 < r_min < r_max"));
    }
    let step = (c.r_max - c.r_min) / (c.points - 1) as f64;
    let rows: Vec<Vec<String>> = (0..c.points)
        .map(|i| {
            let r = c.r_min + i as f64 * step;
            let params = ModelParams::new(c.lambda, r).expect("validated");
            vec![
                real(r),
                real(analytics::mean_out_degree(params)),
                real(d.piecewise_bound(r)),
                real(d.r_t),
                (d.power_limited(r) as u8).to_string(),
            ]
        })
        .collect();
    let config = ExperimentConfig::new(
        "regimes",
        cli.seed,
        json!({"lambda": c.lambda, "r_min": c.r_min, "r_max": c.r_max, "points": c.points}),
    );
    let header = "r,mean_out,piecewise_bound,r_t,power_limited";
    match cli.format {
        Format::Csv => emit(cli, &csv_document(header, &rows, &config)),
        Format::Json => emit(cli, &json_record(&config, json!({"rows": rows}))),
    }
}

// ----------------------------------------------------------------- lattice

fn lattice_rule(c: &LatticeCmd) -> EdgeRule {
    match c.rule {
        RuleArg::Analogy => EdgeRule::Analogy,
        RuleArg::Geometric => EdgeRule::Geometric {
            kind: match c.graph {
                GraphKindArg::Basic => UndirectedKind::Basic,
                GraphKindArg::Enhanced => UndirectedKind::Enhanced,
            },
            ball: match c.ball {
                BallArg::Open => BallRule::Open,
                BallArg::Closed => BallRule::Closed,
            },
        },
    }
}

fn cmd_lattice(cli: &Cli, c: &LatticeCmd) -> Result<(), CmdError> {
    let placement = match c.placement {
        PlacementArg::Midpoints => Placement::EdgeMidpoints,
        PlacementArg::Sites => Placement::Sites,
    };
    let rule = lattice_rule(c);
    let config = ExperimentConfig::new(
        "lattice",
        cli.seed,
        json!({
            "placement": c.placement, "rule": c.rule, "graph": c.graph, "ball": c.ball,
            "p": c.p, "n": c.sides, "runs": c.runs,
        }),
    );
    let header = "p,n,crossing_fraction,ci_lo,ci_hi";
    if let Some(p) = c.p {
        // fixed-p crossing experiment over the n ladder
        let mut rows = Vec::new();
        for &n in &c.sides {
            let (k, runs) =
                crossing_fraction(n, p, placement, rule, c.runs, SeedSpec::new(cli.seed, 0), 0)?;
            let (lo, hi) = wilson_interval(k, runs);
            rows.push(vec![
                real(p),
                n.to_string(),
                real(k as f64 / runs as f64),
                real(lo),
                real(hi),
            ]);
        }
        return match cli.format {
            Format::Csv => emit(cli, &csv_document(header, &rows, &config)),
            Format::Json => emit(cli, &json_record(&config, json!({"rows": rows}))),
        };
    }
    // p_c search
    let est = estimate_pc(placement, rule, &c.sides, c.runs, SeedSpec::new(cli.seed, 0))?;
    eprintln!(
        "secrograph: p_c = {:.5} ci [{:.5}, {:.5}]",
        est.value, est.ci_lo, est.ci_hi
    );
    match cli.format {
        Format::Csv => {
            let mut rows = Vec::new();
            for rung in &est.rungs {
                for probe in &rung.probes {
                    let (lo, hi) = wilson_interval(probe.successes, probe.runs);
                    rows.push(vec![
                        real(probe.x),
                        (rung.scale as u64).to_string(),
                        real(probe.fraction()),
                        real(lo),
                        real(hi),
                    ]);
                }
            }
            rows.push(vec![
                real(est.value),
                "0".to_string(),
                "0.5".to_string(),
                real(est.ci_lo),
                real(est.ci_hi),
            ]);
            emit(cli, &csv_document(header, &rows, &config))
        }
        Format::Json => emit(
            cli,
            &json_record(&config, serde_json::to_value(&est).expect("serializable")),
        ),
    }
}

// --------------------------------------------------------------- percolate

fn cmd_percolate(cli: &Cli, c: &PercolateCmd) -> Result<(), CmdError> {
    let mut params = PercRunParams::new(c.lambda, c.r.0, c.side, c.runs, SeedSpec::new(cli.seed, 0))?;
    params.shell_width = c.shell;
    params.validate()?;
    let est = estimate_theta(&params)?;
    let config = ExperimentConfig::new(
        "percolate",
        cli.seed,
        json!({
            "lambda": c.lambda, "r": range_json(c.r.0), "L": c.side, "runs": c.runs,
            "shell": est.shell_width,
        }),
    );
    match cli.format {
        Format::Json => {
            let result = json!({
                "theta_hat": est.theta_hat,
                "ci": [est.ci_lo, est.ci_hi],
                "runs": est.runs,
                "criterion": est.criterion,
                "successes": est.successes,
                "empty_samples": est.empty_samples,
            });
            emit(cli, &json_record(&config, result))
        }
        Format::Csv => {
            let header = "theta_hat,ci_lo,ci_hi,successes,runs,shell";
            let rows = vec![vec![
                real(est.theta_hat),
                real(est.ci_lo),
                real(est.ci_hi),
                est.successes.to_string(),
                est.runs.to_string(),
                real(est.shell_width),
            ]];
            emit(cli, &csv_document(header, &rows, &config))
        }
    }
}

// --------------------------------------------------------------- threshold

fn cmd_threshold(cli: &Cli, c: &ThresholdCmd) -> Result<(), CmdError> {
    let seed = SeedSpec::new(cli.seed, 0);
    let est = match c.direction {
        DirectionArg::LambdaC => {
            let r = c.r.ok_or_else(|| usage("lambda_c needs --r"))?;
            estimate_lambda_c(r, &c.ladder, c.runs, seed)?
        }
        DirectionArg::RC => {
            let lambda = c.lambda.ok_or_else(|| usage("r_c needs --lambda"))?;
            estimate_r_c(lambda, &c.ladder, c.runs, seed)?
        }
        DirectionArg::LambdaInf => estimate_lambda_inf(&c.ladder, c.runs, seed)?,
    };
    let config = ExperimentConfig::new(
        "threshold",
        cli.seed,
        json!({
            "direction": c.direction, "r": c.r, "lambda": c.lambda,
            "L": c.ladder, "runs": c.runs,
        }),
    );
    eprintln!(
        "secrograph: threshold = {:.5} ci [{:.5}, {:.5}] flag {:?}",
        est.value, est.ci_lo, est.ci_hi, est.flag
    );
    match cli.format {
        Format::Json => emit(
            cli,
            &json_record(&config, serde_json::to_value(&est).expect("serializable")),
        ),
        Format::Csv => {
            let header = "direction,value,ci_lo,ci_hi,runs_per_probe";
            let rows = vec![vec![
                format!("{:?}", est.direction),
                real(est.value),
                real(est.ci_lo),
                real(est.ci_hi),
                est.runs_per_probe.to_string(),
            ]];
            emit(cli, &csv_document(header, &rows, &config))
        }
    }
}

// ------------------------------------------------------------------- sweep

fn cmd_sweep(cli: &Cli, c: &SweepCmd) -> Result<(), CmdError> {
    let direction = match c.direction {
        DirectionArg::LambdaC => SweepDirection::LambdaCOfR,
        DirectionArg::RC => SweepDirection::RCOfLambda,
        DirectionArg::LambdaInf => {
            return Err(usage("sweep direction must be lambda_c or r_c"));
        }
    };
    let cfg = SweepConfig {
        ladder: c.ladder.clone(),
        runs_per_probe: c.runs,
        seed: SeedSpec::new(cli.seed, 0),
    };
    let result = sweep(direction, &c.grid, &cfg);
    let config = ExperimentConfig::new(
        "sweep",
        cli.seed,
        json!({
            "direction": c.direction, "grid": c.grid, "L": c.ladder, "runs": c.runs,
        }),
    );
    match cli.format {
        Format::Csv => {
            let mut text = result.to_csv();
            text.push_str("# config ");
            text.push_str(&config.to_json());
            text.push('\n');
            emit(cli, &text)?;
        }
        Format::Json => {
            emit(cli, &json_record(&config, serde_json::to_value(&result).expect("serializable")))?;
        }
    }
    if result.had_failures() {
        let msgs: Vec<String> = result
            .rows
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| format!("x={}: {e}", r.x)))
            .collect();
        return Err(CmdError::Partial(format!("sweep had per-point failures: {}", msgs.join("; "))));
    }
    Ok(())
}
