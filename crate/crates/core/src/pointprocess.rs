//! Poisson point-process sampling in a bounded window, boundary handling,
//! and nearest-eavesdropper (guard radius) computation.
//!
//! The infinite-plane model is emulated on a finite square window. Three
//! boundary modes exist:
//!
//! - `Plain`: points in `[0, L)²`, Euclidean distance.
//! - `Torus`: points in `[0, L)²`, min-image (wrap-around) distance.
//! - `Inflated`: points in `[-m, L+m)²`. Used for eavesdropper sets so
//!   guard radii of nodes near the window edge are unbiased; distances
//!   stay Euclidean.

use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{param_err, Error, Result};
use crate::grid::UniformGrid;
use crate::seed::{streams, SeedSpec};

/// A planar location, in the same length units as the window side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Boundary handling of a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    Plain,
    Torus,
    /// Plain distances, but sampling extends `margin` beyond each side.
    Inflated { margin: f64 },
}

/// Square simulation window of side `L` with a boundary mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    side: f64,
    boundary: Boundary,
}

impl Window {
    pub fn new(side: f64, boundary: Boundary) -> Result<Self> {
        if side.is_nan() || side <= 0.0 || side.is_infinite() {
            return param_err(format!("window side must be positive and finite, got {side}"));
        }
        if let Boundary::Inflated { margin } = boundary {
            if margin.is_nan() || margin < 0.0 || margin.is_infinite() {
                return param_err(format!("inflation margin must be >= 0, got {margin}"));
            }
        }
        Ok(Self { side, boundary })
    }

    pub fn plain(side: f64) -> Result<Self> {
        Self::new(side, Boundary::Plain)
    }

    pub fn torus(side: f64) -> Result<Self> {
        Self::new(side, Boundary::Torus)
    }

    pub fn inflated(side: f64, margin: f64) -> Result<Self> {
        Self::new(side, Boundary::Inflated { margin })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.boundary, Boundary::Torus)
    }

    pub fn center(&self) -> Point {
        Point::new(self.side / 2.0, self.side / 2.0)
    }

    /// Lower corner and extent of the region points are sampled on.
    pub fn sampling_region(&self) -> (f64, f64) {
        match self.boundary {
            Boundary::Plain | Boundary::Torus => (0.0, self.side),
            Boundary::Inflated { margin } => (-margin, self.side + 2.0 * margin),
        }
    }

    pub fn sampling_area(&self) -> f64 {
        let (_, extent) = self.sampling_region();
        extent * extent
    }

    /// Distance between two points under this window's metric.
    pub fn distance(&self, p: Point, q: Point) -> f64 {
        match self.boundary {
            Boundary::Plain | Boundary::Inflated { .. } => (p.x - q.x).hypot(p.y - q.y),
            Boundary::Torus => {
                // |Δ| first so both argument orders hit identical floats
                let l = self.side;
                let dx = (p.x - q.x).abs().rem_euclid(l);
                let dy = (p.y - q.y).abs().rem_euclid(l);
                dx.min(l - dx).hypot(dy.min(l - dy))
            }
        }
    }

    /// Distance from `p` to the edge of the base `[0, L]²` square.
    /// A torus has no edge; every point is infinitely interior.
    pub fn dist_to_edge(&self, p: Point) -> f64 {
        match self.boundary {
            Boundary::Torus => f64::INFINITY,
            _ => p.x.min(self.side - p.x).min(p.y).min(self.side - p.y),
        }
    }
}

/// Euclidean distance between two points of a window.
pub fn pairwise_distance(p: Point, q: Point, window: &Window) -> f64 {
    window.distance(p, q)
}

/// A sampled point pattern together with its generating parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
    /// Generating intensity (points per unit area).
    pub intensity: f64,
    pub window: Window,
    pub seed: SeedSpec,
    /// Index of the node pinned at the window center, if any.
    pub origin: Option<u32>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples a Poisson point process of the given intensity on the window's
/// sampling region: the count is Poisson with mean `intensity · area`,
/// positions are i.i.d. uniform. Deterministic given the seed.
pub fn sample_ppp(intensity: f64, window: Window, seed: SeedSpec, stream_id: u64) -> Result<PointSet> {
    if intensity.is_nan() || intensity < 0.0 || intensity.is_infinite() {
        return param_err(format!("intensity must be finite and >= 0, got {intensity}"));
    }
    let mut rng = seed.stream(stream_id);
    let mean = intensity * window.sampling_area();
    let count = if mean > 0.0 {
        let pois = Poisson::new(mean)
            .map_err(|e| Error::Parameter(format!("poisson mean {mean}: {e}")))?;
        pois.sample(&mut rng) as u64
    } else {
        0
    };
    let (lo, extent) = window.sampling_region();
    let points = (0..count)
        .map(|_| {
            let x = lo + rng.random::<f64>() * extent;
            let y = lo + rng.random::<f64>() * extent;
            Point::new(x, y)
        })
        .collect();
    Ok(PointSet { points, intensity, window, seed, origin: None })
}

/// Convenience wrapper sampling on the default good-node stream.
pub fn sample_goods(intensity: f64, window: Window, seed: SeedSpec) -> Result<PointSet> {
    sample_ppp(intensity, window, seed, streams::GOODS)
}

/// Convenience wrapper sampling on the eavesdropper stream.
pub fn sample_eaves(intensity: f64, window: Window, seed: SeedSpec) -> Result<PointSet> {
    sample_ppp(intensity, window, seed, streams::EAVES)
}

/// Independent thinning: keeps each point with probability `keep`, on the
/// given stream of `seed`. Thinning a Poisson sample of intensity μ gives
/// a coupled sample of intensity `keep`·μ whose points are a subset of
/// the original — the device that turns distributional monotonicity
/// claims into per-sample subset assertions.
pub fn thin(ps: &PointSet, keep: f64, seed: SeedSpec, stream_id: u64) -> Result<PointSet> {
    if !(0.0..=1.0).contains(&keep) {
        return param_err(format!("keep probability must lie in [0,1], got {keep}"));
    }
    let mut rng = seed.stream(stream_id);
    let points: Vec<Point> =
        ps.points.iter().copied().filter(|_| rng.random::<f64>() < keep).collect();
    Ok(PointSet {
        points,
        intensity: ps.intensity * keep,
        window: ps.window,
        seed: ps.seed,
        origin: None,
    })
}

/// Returns `ps` plus one node pinned at the window center, flagged as the
/// origin for Palm-style (conditioned-on-a-node) statistics.
pub fn add_center_node(ps: &PointSet) -> PointSet {
    let mut out = ps.clone();
    out.points.push(out.window.center());
    out.origin = Some((out.points.len() - 1) as u32);
    out
}

/// Margin by which the eavesdropper window is inflated for degree
/// statistics: wide enough that guard radii of nodes near the window edge
/// are unbiased. The intensity term is capped at `L/2`.
pub fn eaves_margin(lambda: f64, r: f64, side: f64) -> f64 {
    let guard_term = if lambda > 0.0 { (5.0 / lambda.sqrt()).min(side / 2.0) } else { 0.0 };
    let r_term = if r.is_finite() { r } else { 0.0 };
    r_term.max(guard_term)
}

/// Grid cell size for spatial indexing: the larger of the range and the
/// mean point spacing, clamped to `[L/1024, L]`.
pub(crate) fn index_cell_size(r: f64, intensity: f64, side: f64) -> f64 {
    let r_term = if r.is_finite() { r } else { 0.0 };
    let spacing = 1.0 / intensity.max(1e-12).sqrt();
    r_term.max(spacing).clamp(side / 1024.0, side)
}

/// For each good node, the distance to its nearest eavesdropper
/// (`+∞` when there are none), via a uniform-grid index.
pub fn guard_radii(goods: &PointSet, eaves: &PointSet) -> Result<Vec<f64>> {
    if goods.window.side() != eaves.window.side() {
        return param_err("good and eavesdropper windows must share the same side length");
    }
    if goods.window.is_torus() != eaves.window.is_torus() {
        return param_err("good and eavesdropper windows must agree on torus mode");
    }
    if eaves.is_empty() {
        return Ok(vec![f64::INFINITY; goods.len()]);
    }
    let metric = goods.window;
    let (lo, extent) = eaves.window.sampling_region();
    let cell = index_cell_size(f64::INFINITY, eaves.intensity, extent);
    let grid = UniformGrid::build(&eaves.points, lo, extent, cell, metric.is_torus());
    Ok(goods
        .points
        .iter()
        .map(|&p| {
            grid.nearest(p, &eaves.points, |a, b| metric.distance(a, b))
                .map(|(_, d)| d)
                .unwrap_or(f64::INFINITY)
        })
        .collect())
}

/// Writes a point set as CSV (`x,y` header, one point per row,
/// 17-significant-digit reals).
pub fn write_points_csv<W: Write>(ps: &PointSet, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "x,y")?;
    for p in &ps.points {
        writeln!(out, "{:.16e},{:.16e}", p.x, p.y)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seed(i: u64) -> SeedSpec {
        SeedSpec::new(42, i)
    }

    #[test]
    fn zero_intensity_is_empty() {
        let w = Window::plain(10.0).unwrap();
        let ps = sample_ppp(0.0, w, seed(0), 0).unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn negative_intensity_rejected() {
        let w = Window::plain(10.0).unwrap();
        assert!(sample_ppp(-1.0, w, seed(0), 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let w = Window::plain(25.0).unwrap();
        let a = sample_ppp(1.0, w, seed(3), 0).unwrap();
        let b = sample_ppp(1.0, w, seed(3), 0).unwrap();
        assert_eq!(a, b);
        let c = sample_ppp(1.0, w, seed(4), 0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn empirical_intensity_matches_mean() {
        // intensity 1 on L=10: mean count 100; 10^4 seeds give a standard
        // error of 0.1, so a 4-SE band is [99.6, 100.4].
        let w = Window::plain(10.0).unwrap();
        let n_runs = 10_000u64;
        let total: u64 = (0..n_runs)
            .map(|i| sample_ppp(1.0, w, seed(i), 0).unwrap().len() as u64)
            .sum();
        let mean = total as f64 / n_runs as f64;
        assert!((mean - 100.0).abs() < 0.4, "mean count {mean}");
    }

    #[test]
    fn empirical_intensity_large_window() {
        // lambda = 1/5 on L=50: mean 500 per sample.
        let w = Window::plain(50.0).unwrap();
        let n_runs = 2_000u64;
        let total: u64 = (0..n_runs)
            .map(|i| sample_ppp(0.2, w, seed(i), 0).unwrap().len() as u64)
            .sum();
        let mean = total as f64 / n_runs as f64;
        // SE = sqrt(500/2000) = 0.5; allow 4 SE.
        assert!((mean - 500.0).abs() < 2.0, "mean count {mean}");
    }

    #[test]
    fn plain_distance_three_four_five() {
        let w = Window::plain(10.0).unwrap();
        let d = pairwise_distance(Point::new(0.0, 0.0), Point::new(3.0, 4.0), &w);
        assert_relative_eq!(d, 5.0);
    }

    #[test]
    fn torus_distance_wraps() {
        let w = Window::torus(10.0).unwrap();
        let d = pairwise_distance(Point::new(0.5, 0.5), Point::new(9.5, 0.5), &w);
        assert_relative_eq!(d, 1.0);
    }

    #[test]
    fn torus_distance_bounded_by_diameter() {
        let w = Window::torus(10.0).unwrap();
        let bound = 10.0 * 2.0f64.sqrt() / 2.0;
        let mut rng = seed(9).stream(0);
        for _ in 0..500 {
            let p = Point::new(rng.random::<f64>() * 10.0, rng.random::<f64>() * 10.0);
            let q = Point::new(rng.random::<f64>() * 10.0, rng.random::<f64>() * 10.0);
            assert!(w.distance(p, q) <= bound + 1e-12);
        }
    }

    #[test]
    fn add_center_to_empty_set() {
        let w = Window::plain(8.0).unwrap();
        let ps = sample_ppp(0.0, w, seed(0), 0).unwrap();
        let with = add_center_node(&ps);
        assert_eq!(with.len(), 1);
        assert_eq!(with.points[0], Point::new(4.0, 4.0));
        assert_eq!(with.origin, Some(0));
    }

    #[test]
    fn add_center_increases_count_by_one() {
        let w = Window::plain(20.0).unwrap();
        let ps = sample_ppp(1.0, w, seed(1), 0).unwrap();
        let with = add_center_node(&ps);
        assert_eq!(with.len(), ps.len() + 1);
        assert_eq!(with.origin, Some(ps.len() as u32));
    }

    #[test]
    fn guard_radii_no_eaves_is_infinite() {
        let w = Window::plain(10.0).unwrap();
        let goods = sample_ppp(1.0, w, seed(2), 0).unwrap();
        let eaves = sample_ppp(0.0, w, seed(2), 1).unwrap();
        let r = guard_radii(&goods, &eaves).unwrap();
        assert_eq!(r.len(), goods.len());
        assert!(r.iter().all(|&d| d == f64::INFINITY));
    }

    #[test]
    fn guard_radius_single_pair() {
        let w = Window::plain(10.0).unwrap();
        let mk = |pts: Vec<Point>| PointSet {
            points: pts,
            intensity: 1.0,
            window: w,
            seed: seed(0),
            origin: None,
        };
        let goods = mk(vec![Point::new(2.0, 2.0)]);
        let eaves = mk(vec![Point::new(5.0, 6.0)]);
        let r = guard_radii(&goods, &eaves).unwrap();
        assert_relative_eq!(r[0], 5.0);
    }

    #[test]
    fn guard_radii_match_brute_force() {
        for run in 0..20u64 {
            let torus = run % 2 == 0;
            let w = if torus { Window::torus(12.0).unwrap() } else { Window::plain(12.0).unwrap() };
            let goods = sample_ppp(1.0, w, seed(run), 0).unwrap();
            let eaves = sample_ppp(0.4, w, seed(run), 1).unwrap();
            let fast = guard_radii(&goods, &eaves).unwrap();
            for (i, &p) in goods.points.iter().enumerate() {
                let slow = eaves
                    .points
                    .iter()
                    .map(|&q| w.distance(p, q))
                    .fold(f64::INFINITY, f64::min);
                assert_eq!(fast[i], slow, "node {i} run {run}");
            }
        }
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let w = Window::plain(4.0).unwrap();
        let ps = PointSet {
            points: vec![Point::new(1.0, 2.0)],
            intensity: 1.0,
            window: w,
            seed: seed(0),
            origin: None,
        };
        let mut buf = Vec::new();
        write_points_csv(&ps, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y"));
        assert_eq!(lines.next(), Some("1.0000000000000000e0,2.0000000000000000e0"));
    }
}
