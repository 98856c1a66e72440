//! Small statistics toolbox: binomial intervals, empirical distributions,
//! goodness-of-fit distances, and quadrature.

/// Wilson 95% score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    wilson_interval_z(k, n, 1.96)
}

/// Wilson score interval at a given normal quantile `z`.
pub fn wilson_interval_z(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Standard error of a binomial proportion estimate `k/n`.
pub fn binomial_se(k: u64, n: u64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let p = k as f64 / n as f64;
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::INFINITY);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::INFINITY);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Kolmogorov-Smirnov statistic of a sample against a reference CDF.
/// Sorts a copy of the sample.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    sup
}

/// Largest signed gap `cdf(x) - ecdf(x)` over the sample points with
/// `cdf(x) >= tail_from`. Positive values mean the sample puts more mass
/// in the right tail than the reference does.
pub fn ks_signed_tail(sample: &[f64], cdf: impl Fn(f64) -> f64, tail_from: f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut worst = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        if f >= tail_from {
            worst = worst.max(f - (i + 1) as f64 / n);
        }
    }
    if worst == f64::NEG_INFINITY {
        0.0
    } else {
        worst
    }
}

/// Counts of a non-negative integer variable, indexed by value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscreteCounts {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl DiscreteCounts {
    pub fn record(&mut self, value: usize) {
        if value >= self.counts.len() {
            self.counts.resize(value + 1, 0);
        }
        self.counts[value] += 1;
        self.total += 1;
    }

    /// Order-independent merge, so per-run tallies can be combined in any
    /// scheduling order.
    pub fn merge(&mut self, other: &DiscreteCounts) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (i, &c) in other.counts.iter().enumerate() {
            self.counts[i] += c;
        }
        self.total += other.total;
    }

    pub fn frequency(&self, value: usize) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.get(value).copied().unwrap_or(0) as f64 / self.total as f64
    }

    pub fn mean(&self) -> f64 {
        if self.total == 0 {
            return f64::NAN;
        }
        let s: f64 = self.counts.iter().enumerate().map(|(v, &c)| v as f64 * c as f64).sum();
        s / self.total as f64
    }

    /// Empirical CDF at `value` (P[X <= value]).
    pub fn cdf(&self, value: usize) -> f64 {
        if self.total == 0 {
            return f64::NAN;
        }
        let s: u64 = self.counts.iter().take(value + 1).sum();
        s as f64 / self.total as f64
    }

    /// Total-variation distance to a reference pmf, summing the reference
    /// tail beyond the observed support.
    pub fn tv_distance(&self, pmf: impl Fn(usize) -> f64) -> f64 {
        let mut acc = 0.0;
        let mut ref_mass = 0.0;
        for (v, &c) in self.counts.iter().enumerate() {
            let p = pmf(v);
            ref_mass += p;
            acc += (c as f64 / self.total as f64 - p).abs();
        }
        // Reference mass beyond the largest observed value.
        acc += (1.0 - ref_mass).max(0.0);
        acc / 2.0
    }
}

/// Composite Simpson quadrature of `f` on `[a, b]` with `n` panels
/// (rounded up to even).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = if n.is_multiple_of(2) { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn wilson_brackets_point_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!(lo > 0.2 && hi < 0.4);
    }

    #[test]
    fn wilson_degenerate_cases() {
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
        let (lo, _) = wilson_interval(0, 50);
        assert_eq!(lo, 0.0);
        let (_, hi) = wilson_interval(50, 50);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn ks_of_exact_uniform_grid_is_small() {
        // Points at (i+0.5)/n have KS 1/(2n) against U(0,1).
        let n = 100;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0));
        assert_relative_eq!(d, 0.005, epsilon = 1e-12);
    }

    #[test]
    fn tv_distance_of_matching_pmf_is_zero() {
        let mut c = DiscreteCounts::default();
        for _ in 0..3 {
            c.record(0);
        }
        c.record(1);
        let d = c.tv_distance(|v| match v {
            0 => 0.75,
            1 => 0.25,
            _ => 0.0,
        });
        assert_relative_eq!(d, 0.0);
    }

    #[test]
    fn discrete_counts_merge_is_commutative() {
        let mut a = DiscreteCounts::default();
        a.record(2);
        a.record(0);
        let mut b = DiscreteCounts::default();
        b.record(5);
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.total, 3);
    }

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        // Simpson is exact on cubics.
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 10);
        assert_relative_eq!(v, 2.0, epsilon = 1e-12);
    }
}
