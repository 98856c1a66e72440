//! Uniform-grid spatial index over a square region.
//!
//! Supports disk queries and exact nearest-neighbor lookup, both on plain
//! windows and on the flat torus (min-image wrap). Queries return the same
//! distances an exhaustive scan would, so grid-backed results can be
//! compared bit-for-bit against brute force.

use crate::pointprocess::Point;

pub(crate) struct UniformGrid {
    lo: f64,
    cell: f64,
    n: usize,
    torus: bool,
    buckets: Vec<Vec<u32>>,
}

impl UniformGrid {
    /// Builds an index over `points`, all lying in `[lo, lo+extent)²`.
    /// For torus mode the region must be the full `[0, period)²` square.
    pub fn build(points: &[Point], lo: f64, extent: f64, desired_cell: f64, torus: bool) -> Self {
        assert!(extent > 0.0 && desired_cell > 0.0);
        if torus {
            assert_eq!(lo, 0.0, "torus grid must cover the full window");
        }
        let n = ((extent / desired_cell).ceil() as usize).max(1);
        let cell = extent / n as f64;
        let mut buckets = vec![Vec::new(); n * n];
        for (i, p) in points.iter().enumerate() {
            let (ix, iy) = Self::cell_of_raw(p, lo, cell, n);
            buckets[iy * n + ix].push(i as u32);
        }
        Self { lo, cell, n, torus, buckets }
    }

    fn cell_of_raw(p: &Point, lo: f64, cell: f64, n: usize) -> (usize, usize) {
        let ix = (((p.x - lo) / cell) as isize).clamp(0, n as isize - 1) as usize;
        let iy = (((p.y - lo) / cell) as isize).clamp(0, n as isize - 1) as usize;
        (ix, iy)
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        Self::cell_of_raw(&p, self.lo, self.cell, self.n)
    }

    /// Visits every point whose bucket intersects the disk of `radius`
    /// around `center`. Candidates are a superset of the disk; callers
    /// filter by exact distance.
    pub fn for_disk(&self, center: Point, radius: f64, mut f: impl FnMut(u32)) {
        let span = (radius / self.cell).ceil() as isize + 1;
        let (cx, cy) = self.cell_of(center);
        let n = self.n as isize;
        let (x0, x1, y0, y1) = if 2 * span + 1 >= n {
            (0, n - 1, 0, n - 1)
        } else {
            (
                cx as isize - span,
                cx as isize + span,
                cy as isize - span,
                cy as isize + span,
            )
        };
        for iy in y0..=y1 {
            let wy = if self.torus {
                iy.rem_euclid(n)
            } else if !(0..n).contains(&iy) {
                continue;
            } else {
                iy
            };
            for ix in x0..=x1 {
                let wx = if self.torus {
                    ix.rem_euclid(n)
                } else if !(0..n).contains(&ix) {
                    continue;
                } else {
                    ix
                };
                for &id in &self.buckets[wy as usize * self.n + wx as usize] {
                    f(id);
                }
            }
        }
    }

    /// Exact nearest neighbor of `p` under `dist`, or `None` if the index
    /// is empty. Expands Chebyshev rings of cells; a cell at ring `k`
    /// cannot hold a point closer than `(k-1)·cell`, which bounds the
    /// search.
    pub fn nearest(
        &self,
        p: Point,
        points: &[Point],
        dist: impl Fn(Point, Point) -> f64,
    ) -> Option<(u32, f64)> {
        let (cx, cy) = self.cell_of(p);
        let n = self.n as isize;
        // Past this ring the wrap would fold cells back onto ones already
        // visited (torus), or the ring leaves the region entirely (plain).
        let k_max = if self.torus {
            (self.n / 2) as isize + 1
        } else {
            n
        };
        let mut best: Option<(u32, f64)> = None;
        for k in 0..=k_max {
            if let Some((_, d)) = best {
                if (k - 1) as f64 * self.cell > d {
                    break;
                }
            }
            let mut scan = |ix: isize, iy: isize| {
                let (wx, wy) = if self.torus {
                    (ix.rem_euclid(n), iy.rem_euclid(n))
                } else {
                    if !(0..n).contains(&ix) || !(0..n).contains(&iy) {
                        return;
                    }
                    (ix, iy)
                };
                for &id in &self.buckets[wy as usize * self.n + wx as usize] {
                    let d = dist(p, points[id as usize]);
                    if best.is_none_or(|(bi, bd)| d < bd || (d == bd && id < bi)) {
                        best = Some((id, d));
                    }
                }
            };
            let (cx, cy) = (cx as isize, cy as isize);
            if k == 0 {
                scan(cx, cy);
                continue;
            }
            for ix in cx - k..=cx + k {
                scan(ix, cy - k);
                scan(ix, cy + k);
            }
            for iy in cy - k + 1..=cy + k - 1 {
                scan(cx - k, iy);
                scan(cx + k, iy);
            }
        }
        best
    }
}
