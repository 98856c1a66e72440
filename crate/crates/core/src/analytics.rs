//! Closed-form quantities of the Poisson secrecy graph: degree
//! distributions, isolation probabilities, mean degrees, secrecy ratios,
//! regime boundaries, and critical-curve approximations.
//!
//! Everything here is a pure function of `(λ, r)` (eavesdropper intensity
//! relative to good-node intensity 1, and transmission range). `λ = 0`
//! and `r = +∞` are first-class values with their own closed forms, not
//! numerical limits. These functions double as the reference oracles for
//! the Monte Carlo modules.

use crate::error::{param_err, Result};

/// Reference constants of the model.
pub mod constants {
    /// Limiting eavesdropper intensity above which no range percolates
    /// (simulation-derived reference value).
    pub const LAMBDA_INF_REF: f64 = 0.1499;
    /// Gilbert's critical disk-graph radius (known bounds 1.1979..1.1988).
    pub const R_GILBERT_REF: f64 = 1.198;
    /// Exponential-fit rate of the critical curve λ_c(r) ≈ λ∞ − exp(a − b·r).
    pub const FIT_B: f64 = 4.0;
    /// Exponential-fit offset a = 2√2.
    pub const FIT_A: f64 = 2.0 * std::f64::consts::SQRT_2;
    /// Lower geometric-bound area factor for the basic degree CDF.
    pub const BOUND_B: f64 = 0.25;

    /// Area of two overlapping unit disks at unit center distance,
    /// relative to one disk: c = 4/3 + √3/(2π).
    pub fn two_disk_c() -> f64 {
        4.0 / 3.0 + 3.0f64.sqrt() / (2.0 * std::f64::consts::PI)
    }

    /// Upper geometric-bound area factor a = 2/3 + √3/(4π) ≈ 0.80
    /// (disk minus a segment of height R/2).
    pub fn bound_a() -> f64 {
        2.0 / 3.0 + 3.0f64.sqrt() / (4.0 * std::f64::consts::PI)
    }

    /// Floor of the edge-count ratio basic/enhanced: 3π/(5π + 3√3),
    /// equal to 1/(2c − 1).
    pub fn basic_to_enhanced_floor() -> f64 {
        let pi = std::f64::consts::PI;
        3.0 * pi / (5.0 * pi + 3.0 * 3.0f64.sqrt())
    }

    /// Slope of the conjectured linear lower bound r_c(λ) ≥ r_G + (5/3)λ,
    /// i.e. 1/(FIT_B · λ∞) rounded to the stated 5/3.
    pub const RC_LOWER_SLOPE: f64 = 5.0 / 3.0;
}

/// Model parameters: eavesdropper intensity λ ≥ 0 (good nodes have
/// intensity 1) and transmission range r > 0, possibly `+∞`.
///
/// The degenerate pair (λ = 0, r = ∞) is rejected: the graph would be
/// complete and every distributional query meaningless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    r: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, r: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
            return param_err(format!("lambda must be finite and >= 0, got {lambda}"));
        }
        if r.is_nan() || r <= 0.0 {
            return param_err(format!("r must be > 0 (possibly inf), got {r}"));
        }
        if lambda == 0.0 && r.is_infinite() {
            return param_err("(lambda, r) = (0, inf) is degenerate: the graph is complete");
        }
        Ok(Self { lambda, r })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// a = πr²(λ+1), the combined-process disk mass.
    fn disk_mass(&self) -> f64 {
        std::f64::consts::PI * self.r * self.r * (self.lambda + 1.0)
    }
}

fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 1024 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    // Stirling with two correction terms; plenty below f64 noise here.
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x * x)
}

/// Poisson pmf e^{-m} m^n / n!, stable for large m via log space.
fn poisson_pmf(n: u32, m: f64) -> f64 {
    if m == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if m <= 700.0 && n <= 512 {
        let mut t = (-m).exp();
        for k in 1..=n as u64 {
            t *= m / k as f64;
        }
        t
    } else {
        (-m + n as f64 * m.ln() - ln_factorial(n as u64)).exp()
    }
}

/// Regularized upper incomplete gamma function of integer order,
/// Γ(n, a)/Γ(n) = e^{-a} Σ_{k<n} a^k/k!, i.e. P[Poisson(a) ≤ n−1].
///
/// Defined as 0 for n = 0, which makes the two-parameter degree pmf at
/// n = 0 reduce exactly to the out-isolation probability.
pub fn regularized_upper_gamma_int(n: u32, a: f64) -> Result<f64> {
    if a.is_nan() || a < 0.0 || a.is_infinite() {
        return param_err(format!("gamma argument must be finite and >= 0, got {a}"));
    }
    if n == 0 {
        return Ok(0.0);
    }
    // Sum of its own (all-positive) terms: no cancellation. Start at the
    // largest term in range and walk down so an underflowing e^{-a}
    // cannot zero out a representable result.
    let top = (n - 1) as u64;
    let start = top.min(a.floor() as u64);
    let mut t = poisson_pmf(start as u32, a);
    let mut sum = t;
    // downward from the mode-capped start
    let mut k = start;
    while k > 0 && t > 0.0 {
        t *= k as f64 / a;
        sum += t;
        k -= 1;
    }
    // upward remainder (start < top only when a < n-1)
    if start < top {
        let mut t = poisson_pmf(start as u32, a);
        for k in start + 1..=top {
            t *= a / k as f64;
            sum += t;
            if t < sum * 1e-18 {
                // terms past the mode side decay geometrically
                if k as f64 > a {
                    break;
                }
            }
        }
    }
    Ok(sum.min(1.0))
}

/// P[Poisson(a) ≥ n] = 1 − Γ(n,a)/Γ(n), computed on its small side to
/// keep relative accuracy in the pmf tail.
fn regularized_lower_tail(n: u32, a: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if (n as f64) > a {
        // right tail is the small side: sum it directly
        let mut t = poisson_pmf(n, a);
        let mut sum = t;
        let mut k = n as u64 + 1;
        while t > 0.0 {
            t *= a / k as f64;
            sum += t;
            if t < sum * 1e-18 {
                break;
            }
            k += 1;
        }
        sum.min(1.0)
    } else {
        1.0 - regularized_upper_gamma_int(n, a).expect("validated")
    }
}

/// Probability that a node is out-isolated:
/// (e^{-πr²(λ+1)} + λ)/(1+λ); for r = ∞ this is λ/(λ+1).
pub fn out_isolation(p: ModelParams) -> f64 {
    if p.r.is_infinite() {
        return p.lambda / (1.0 + p.lambda);
    }
    ((-p.disk_mass()).exp() + p.lambda) / (1.0 + p.lambda)
}

/// Probability of isolation in the basic graph at r = ∞: cλ/(cλ+1).
/// Zero at λ = 0 (without eavesdroppers a node always has a mutual
/// nearest neighbor in range ∞).
pub fn basic_isolation(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
        return param_err(format!("lambda must be finite and >= 0, got {lambda}"));
    }
    let cl = constants::two_disk_c() * lambda;
    Ok(cl / (cl + 1.0))
}

/// Out-degree pmf of the secrecy graph:
/// [λ(1 − Γ(n,a)/Γ(n)) + e^{-a} aⁿ/n!] / (λ+1)^{n+1} with a = πr²(λ+1).
///
/// Reduces to Poisson(πr²) at λ = 0 and to the geometric law
/// λ/(1+λ) · (1/(1+λ))ⁿ at r = ∞.
pub fn out_degree_pmf(p: ModelParams, n: u32) -> f64 {
    let lambda = p.lambda;
    if lambda == 0.0 {
        return poisson_pmf(n, std::f64::consts::PI * p.r * p.r);
    }
    let log_denom = (n + 1) as f64 * lambda.ln_1p();
    if p.r.is_infinite() {
        if log_denom > 700.0 {
            return (lambda.ln() - log_denom).exp();
        }
        return lambda / (1.0 + lambda).powi(n as i32 + 1);
    }
    let a = p.disk_mass();
    let numer = lambda * regularized_lower_tail(n, a) + poisson_pmf(n, a);
    if log_denom > 700.0 {
        (numer.ln() - log_denom).exp()
    } else {
        numer / (1.0 + lambda).powi(n as i32 + 1)
    }
}

/// Mean out-degree (equal to the mean in-degree):
/// (1/λ)(1 − e^{-λπr²}); πr² at λ = 0; 1/λ at r = ∞.
pub fn mean_out_degree(p: ModelParams) -> f64 {
    let area = std::f64::consts::PI * p.r * p.r;
    if p.lambda == 0.0 {
        return area;
    }
    if p.r.is_infinite() {
        return 1.0 / p.lambda;
    }
    -(-p.lambda * area).exp_m1() / p.lambda
}

/// Mean degree of the basic graph: (1/(cλ))(1 − e^{-cλπr²}).
pub fn mean_basic_degree(p: ModelParams) -> f64 {
    let area = std::f64::consts::PI * p.r * p.r;
    if p.lambda == 0.0 {
        return area;
    }
    let cl = constants::two_disk_c() * p.lambda;
    if p.r.is_infinite() {
        return 1.0 / cl;
    }
    -(-cl * area).exp_m1() / cl
}

/// Mean degree of the enhanced graph, 2·E[N^out] − E[N],
/// consistent with the mean-degree relation by construction.
pub fn mean_enhanced_degree(p: ModelParams) -> f64 {
    2.0 * mean_out_degree(p) - mean_basic_degree(p)
}

/// Secrecy ratios (η, η′): mean degree of the basic / enhanced graph
/// relative to the unconstrained disk graph's πr². Requires finite r.
pub fn secrecy_ratios(p: ModelParams) -> Result<(f64, f64)> {
    if p.r.is_infinite() {
        return param_err("secrecy ratios are undefined at r = inf (disk-graph degree diverges)");
    }
    // g(t) = (1 - e^{-t})/t with g(0) = 1
    let g = |t: f64| if t == 0.0 { 1.0 } else { -(-t).exp_m1() / t };
    let area = std::f64::consts::PI * p.r * p.r;
    let x = constants::two_disk_c() * p.lambda * area;
    let y = p.lambda * area;
    let eta = g(x);
    let eta_prime = 2.0 * g(y) - g(x);
    Ok((eta, eta_prime))
}

/// Geometric bounds on the basic-degree CDF at r = ∞:
/// 1 − (a/(a+λ))^{n+1} < P[N ≤ n] < 1 − (b/(b+λ))^{n+1}.
pub fn basic_cdf_bounds(lambda: f64, n: u32) -> Result<(f64, f64)> {
    if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
        return param_err(format!("lambda must be finite and > 0, got {lambda}"));
    }
    let a = constants::bound_a();
    let b = constants::BOUND_B;
    let lower = 1.0 - (a / (a + lambda)).powi(n as i32 + 1);
    let upper = 1.0 - (b / (b + lambda)).powi(n as i32 + 1);
    Ok((lower, upper))
}

/// Implied bounds on the basic mean degree: b/λ < E[N] < a/λ.
pub fn basic_mean_bounds(lambda: f64) -> Result<(f64, f64)> {
    if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
        return param_err(format!("lambda must be finite and > 0, got {lambda}"));
    }
    Ok((constants::BOUND_B / lambda, constants::bound_a() / lambda))
}

/// Power-limited / secrecy-limited regime descriptors at intensity λ.
#[derive(Debug, Clone, Copy)]
pub struct RegimeDescriptors {
    lambda: f64,
    /// Regime boundary r_T = (2πλ)^{-1/2}, the inflection of E[N^out](r).
    pub r_t: f64,
    /// Maximum slope s = √(2π/(eλ)) of E[N^out](r).
    pub slope: f64,
}

impl RegimeDescriptors {
    /// Piecewise-linear upper bound min{s·r, 1/λ} on the mean out-degree.
    pub fn piecewise_bound(&self, r: f64) -> f64 {
        (self.slope * r).min(1.0 / self.lambda)
    }

    /// Range that achieves a mean out-degree within ε of the r = ∞
    /// maximum 1/λ: r_ε = √(−ln ε / (λπ)).
    pub fn r_eps(&self, eps: f64) -> Result<f64> {
        if eps.is_nan() || eps <= 0.0 || eps >= 1.0 {
            return param_err(format!("eps must lie in (0,1), got {eps}"));
        }
        Ok((-eps.ln() / (self.lambda * std::f64::consts::PI)).sqrt())
    }

    /// True when (λ, r) sits in the power-limited regime 2πr²λ < 1.
    pub fn power_limited(&self, r: f64) -> bool {
        r.is_finite() && 2.0 * std::f64::consts::PI * r * r * self.lambda < 1.0
    }
}

pub fn regime_descriptors(lambda: f64) -> Result<RegimeDescriptors> {
    if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
        return param_err(format!("lambda must be finite and > 0, got {lambda}"));
    }
    Ok(RegimeDescriptors {
        lambda,
        r_t: 1.0 / (2.0 * std::f64::consts::PI * lambda).sqrt(),
        slope: (2.0 * std::f64::consts::PI / (std::f64::consts::E * lambda)).sqrt(),
    })
}

/// Exponential approximation of the critical curve in the λ direction:
/// λ_c(r) ≈ λ∞ − exp(a − b·r) for r ≥ r_G.
pub fn lambda_c_approx(r: f64) -> Result<f64> {
    if r.is_nan() || r < constants::R_GILBERT_REF {
        return param_err(format!("lambda_c approximation needs r >= r_G, got {r}"));
    }
    Ok(constants::LAMBDA_INF_REF - (constants::FIT_A - constants::FIT_B * r).exp())
}

/// The same approximation solved for the r direction:
/// r_c(λ) ≈ a/b − (1/b)·ln(λ∞ − λ) for λ < λ∞.
pub fn r_c_approx(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || !(0.0..constants::LAMBDA_INF_REF).contains(&lambda) {
        return param_err(format!("r_c approximation needs 0 <= lambda < lambda_inf, got {lambda}"));
    }
    Ok(constants::FIT_A / constants::FIT_B
        - (constants::LAMBDA_INF_REF - lambda).ln() / constants::FIT_B)
}

/// Conjectured linear lower bound r_c(λ) ≥ r_G + (5/3)λ.
pub fn r_c_linear_lower_bound(lambda: f64) -> f64 {
    constants::R_GILBERT_REF + constants::RC_LOWER_SLOPE * lambda
}

/// Empirical approximations for the graph at criticality (λ, r_c(λ)).
#[derive(Debug, Clone, Copy)]
pub struct CriticalGraphApprox {
    /// P[N^out = 0] ≈ 1/80 + (4/5)λ.
    pub isolation: f64,
    /// Lower bound on the critical mean out-degree: πr_G² + (11/4)λ.
    pub mean_out_lower: f64,
}

pub fn critical_graph_approx(lambda: f64) -> Result<CriticalGraphApprox> {
    if lambda.is_nan() || !(0.0..constants::LAMBDA_INF_REF).contains(&lambda) {
        return param_err(format!("critical-graph approximation needs 0 <= lambda < lambda_inf, got {lambda}"));
    }
    let rg = constants::R_GILBERT_REF;
    Ok(CriticalGraphApprox {
        isolation: 1.0 / 80.0 + 0.8 * lambda,
        mean_out_lower: std::f64::consts::PI * rg * rg + 2.75 * lambda,
    })
}

/// Transmission range from link-budget parameters: r = (P/(ΘW))^{1/α}.
pub fn range_from_power(power: f64, theta: f64, noise: f64, alpha: f64) -> Result<f64> {
    for (name, v) in [("P", power), ("Theta", theta), ("W", noise), ("alpha", alpha)] {
        if v.is_nan() || v <= 0.0 || v.is_infinite() {
            return param_err(format!("{name} must be finite and > 0, got {v}"));
        }
    }
    Ok((power / (theta * noise)).powf(1.0 / alpha))
}

/// Distance law of the nearest eavesdropper: pdf 2πλx·e^{-λπx²}.
pub fn nearest_eaves_pdf(lambda: f64, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    2.0 * std::f64::consts::PI * lambda * x * (-lambda * std::f64::consts::PI * x * x).exp()
}

/// Mean of the nearest-point (Rayleigh) law at intensity λ: 1/(2√λ).
pub fn rayleigh_edge_mean(lambda: f64) -> f64 {
    1.0 / (2.0 * lambda.sqrt())
}

/// CDF of the Rayleigh edge-length reference at intensity λ:
/// 1 − e^{-λπx²} (the same law as the nearest-eavesdropper distance).
pub fn rayleigh_edge_cdf(lambda: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    -(-lambda * std::f64::consts::PI * x * x).exp_m1()
}

/// Edge-length CDF of the plain disk graph of radius r: (x/r)².
pub fn disk_edge_cdf(r: f64, x: f64) -> f64 {
    ((x / r) * (x / r)).clamp(0.0, 1.0)
}
