//! Measuring instruments: Hausdorff distance between finite point sets,
//! hyperbolic distance on half-planes and real-centered discs, Euclidean
//! set diameter, and the orbit-contraction experiments built on them.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::geom::{DiscSpec, HalfPlaneSpec};
use crate::maps;
use crate::verify;
use crate::{Error, Result};

/// Hausdorff distance together with the two directed witnesses: for each
/// direction, the point of the source set farthest from the target set and
/// its nearest-neighbor distance. `distance` is the larger of the two
/// directed values; it is zero exactly when the two inputs are equal as
/// point sets.
#[derive(Debug, Clone, Copy)]
pub struct HausdorffResult {
    pub distance: f64,
    pub witness_a_to_b: (Complex64, f64),
    pub witness_b_to_a: (Complex64, f64),
}

/// Squared nearest-neighbor distance from `p` into `set`, by linear scan.
fn nearest_sqr_brute(p: Complex64, set: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for &q in set {
        let d = (p - q).norm_sqr();
        if d < best {
            best = d;
        }
    }
    best
}

/// Directed Hausdorff data: per-point squared nearest distances reduced to
/// the argmax (first index wins ties, independent of thread count).
fn directed_sup(from: &[Complex64], nearest_sqr: impl Fn(Complex64) -> f64 + Sync) -> (Complex64, f64) {
    let dists = from
        .par_iter()
        .map(|&p| nearest_sqr(p))
        .collect::<Vec<f64>>();
    let mut best = 0;
    for (i, v) in dists.iter().enumerate() {
        if v.total_cmp(&dists[best]) == std::cmp::Ordering::Greater {
            best = i;
        }
    }
    (from[best], dists[best].sqrt())
}

fn require_nonempty(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet(
            "hausdorff distance needs two non-empty point sets".to_string(),
        ));
    }
    Ok(())
}

/// Exact Hausdorff distance by the O(|A|·|B|) scan. Serves as the oracle
/// for the bucketed kernel, which must agree bit-for-bit.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> Result<HausdorffResult> {
    require_nonempty(a, b)?;
    let witness_a_to_b = directed_sup(a, |p| nearest_sqr_brute(p, b));
    let witness_b_to_a = directed_sup(b, |p| nearest_sqr_brute(p, a));
    Ok(HausdorffResult {
        distance: witness_a_to_b.1.max(witness_b_to_a.1),
        witness_a_to_b,
        witness_b_to_a,
    })
}

/// Uniform-grid spatial index over a point set. Nearest-neighbor queries
/// expand Chebyshev rings of cells outward until the ring's conservative
/// lower bound exceeds the best squared distance found, so the scanned cell
/// set always contains the true nearest neighbor and the returned squared
/// distance is the same f64 the brute-force scan produces (a minimum of
/// identical per-pair values is order-independent).
struct BucketIndex<'a> {
    points: &'a [Complex64],
    buckets: Vec<Vec<u32>>,
    x0: f64,
    y0: f64,
    cell_w: f64,
    cell_h: f64,
    nx: usize,
    ny: usize,
}

impl<'a> BucketIndex<'a> {
    fn build(points: &'a [Complex64]) -> Self {
        debug_assert!(!points.is_empty());
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for p in points {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        let per_axis = ((points.len() as f64 / 2.0).sqrt().ceil() as usize).clamp(1, 1 << 12);
        let nx = if x1 > x0 { per_axis } else { 1 };
        let ny = if y1 > y0 { per_axis } else { 1 };
        let cell_w = if nx > 1 { (x1 - x0) / nx as f64 } else { f64::INFINITY };
        let cell_h = if ny > 1 { (y1 - y0) / ny as f64 } else { f64::INFINITY };
        let mut index = BucketIndex {
            points,
            buckets: vec![Vec::new(); nx * ny],
            x0,
            y0,
            cell_w,
            cell_h,
            nx,
            ny,
        };
        for (i, p) in points.iter().enumerate() {
            let (ix, iy) = index.locate(*p);
            index.buckets[iy * nx + ix].push(i as u32);
        }
        index
    }

    fn locate(&self, p: Complex64) -> (usize, usize) {
        let ix = if self.cell_w.is_finite() {
            (((p.re - self.x0) / self.cell_w) as isize).clamp(0, self.nx as isize - 1) as usize
        } else {
            0
        };
        let iy = if self.cell_h.is_finite() {
            (((p.im - self.y0) / self.cell_h) as isize).clamp(0, self.ny as isize - 1) as usize
        } else {
            0
        };
        (ix, iy)
    }

    fn nearest_sqr(&self, p: Complex64) -> f64 {
        let (cx, cy) = self.locate(p);
        let min_dim = self.cell_w.min(self.cell_h);
        let max_ring = self.nx.max(self.ny);
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            if ring >= 2 && min_dim.is_finite() {
                // every point in a cell at Chebyshev ring r lies at least
                // (r-1) * min_dim away from p
                let lower = (ring - 1) as f64 * min_dim;
                if lower * lower > best {
                    break;
                }
            }
            let r = ring as isize;
            for dy in -r..=r {
                for dx in -r..=r {
                    if dx.abs() != r && dy.abs() != r {
                        continue; // interior cells were scanned in earlier rings
                    }
                    let ix = cx as isize + dx;
                    let iy = cy as isize + dy;
                    if ix < 0 || iy < 0 || ix >= self.nx as isize || iy >= self.ny as isize {
                        continue;
                    }
                    for &i in &self.buckets[iy as usize * self.nx + ix as usize] {
                        let d = (p - self.points[i as usize]).norm_sqr();
                        if d < best {
                            best = d;
                        }
                    }
                }
            }
        }
        best
    }
}

/// Hausdorff distance through the bucketed nearest-neighbor index. Returns
/// exactly the same result as [`hausdorff_distance`] (identical squared
/// distances, identical argmax selection), in roughly linear time for
/// well-spread sets.
pub fn hausdorff_distance_bucketed(a: &[Complex64], b: &[Complex64]) -> Result<HausdorffResult> {
    require_nonempty(a, b)?;
    let index_b = BucketIndex::build(b);
    let witness_a_to_b = directed_sup(a, |p| index_b.nearest_sqr(p));
    let index_a = BucketIndex::build(a);
    let witness_b_to_a = directed_sup(b, |p| index_a.nearest_sqr(p));
    Ok(HausdorffResult {
        distance: witness_a_to_b.1.max(witness_b_to_a.1),
        witness_a_to_b,
        witness_b_to_a,
    })
}

/// Ambient geometry for a hyperbolic distance computation.
#[derive(Debug, Clone, Copy)]
pub enum HyperbolicFrame {
    HalfPlane(HalfPlaneSpec),
    /// Disc with real center; distances route through the reciprocal map to
    /// the half-plane frame, which is a hyperbolic isometry. A disc of
    /// radius R tangent to the vertical line through `center - R` maps to
    /// the half-plane with wall at `1/(2R)` via `x -> 1/(x - (center - R))`.
    Disc(DiscSpec),
}

/// Hyperbolic distance between two real points of the frame, with the
/// half-plane density `1/(Re z - a)`, so that points on the common
/// perpendicular satisfy `d = |log((x2-a)/(x1-a))|`. Both points must lie
/// strictly inside the frame; only real points (on the geodesic through the
/// disc diameter / the real axis of the half-plane) are supported.
pub fn hyperbolic_distance_real(frame: HyperbolicFrame, x1: f64, x2: f64) -> Result<f64> {
    match frame {
        HyperbolicFrame::HalfPlane(h) => {
            if x1 <= h.a || x2 <= h.a {
                return Err(Error::OutsideFrame(format!(
                    "points {x1}, {x2} not strictly right of the wall at {}",
                    h.a
                )));
            }
            Ok(((x2 - h.a) / (x1 - h.a)).ln().abs())
        }
        HyperbolicFrame::Disc(d) => {
            if d.center.im != 0.0 {
                return Err(Error::OutsideFrame(
                    "disc frames must be centered on the real axis".to_string(),
                ));
            }
            for x in [x1, x2] {
                if (x - d.center.re).abs() >= d.radius {
                    return Err(Error::OutsideFrame(format!(
                        "point {x} not strictly inside the disc at {} radius {}",
                        d.center.re, d.radius
                    )));
                }
            }
            let base = d.center.re - d.radius;
            let wall = 1.0 / (2.0 * d.radius);
            hyperbolic_distance_real(
                HyperbolicFrame::HalfPlane(HalfPlaneSpec { a: wall }),
                1.0 / (x1 - base),
                1.0 / (x2 - base),
            )
        }
    }
}

/// Runs the half-plane orbit `t_{n+1} = w_{m+n}(t_n)` from a real seed and
/// returns the hyperbolic step sizes `d_n` measured in the half-plane with
/// wall `3(m+n+1)pi`, for n = 0..N-1.
///
/// Asserts along the way that the orbit is strictly increasing and that
/// `t_n` stays strictly right of the wall it is measured against.
pub fn contraction_experiment(m: u32, t0: f64, steps: usize) -> Result<Vec<f64>> {
    assert!(m >= 5, "certified range starts at index 5");
    assert!(steps >= 1);
    let first_wall = 3.0 * f64::from(m + 1) * PI;
    if t0 <= first_wall {
        return Err(Error::PreconditionViolated(format!(
            "seed {t0} not strictly right of the wall at {first_wall}"
        )));
    }
    let mut t = Vec::with_capacity(steps + 1);
    t.push(t0);
    for n in 0..steps {
        let next = maps::w(m + n as u32, Complex64::new(t[n], 0.0))?;
        debug_assert_eq!(next.im, 0.0, "real seeds have real orbits");
        assert!(next.re > t[n], "orbit must increase strictly at step {n}");
        t.push(next.re);
    }
    let mut d = Vec::with_capacity(steps);
    for n in 0..steps {
        let wall = 3.0 * f64::from(m + n as u32 + 1) * PI;
        assert!(
            t[n] > wall,
            "t_{n} = {} fell behind the wall at {wall}",
            t[n]
        );
        d.push(hyperbolic_distance_real(
            HyperbolicFrame::HalfPlane(HalfPlaneSpec { a: wall }),
            t[n],
            t[n + 1],
        )?);
    }
    Ok(d)
}

/// Upper bounds for the hyperbolic distance between the coupled real orbits
/// `x_n`, `y_n` inside the trap disc of index m+n, for n = 1..N.
///
/// The pair `x_n <= y_n <= T(x_{n-1})` lies on the disc diameter, so the
/// distance from `x_n` to `T(x_{n-1})` dominates the pair distance; that
/// domination is asserted at every step. The bounds themselves typically
/// rise over the first few indices — the ambient trap discs shrink like
/// `1/(m+n)`, which inflates hyperbolic lengths — before the chain
/// contraction takes over and drives them to zero, so overall decay is a
/// property of long horizons that callers check at the horizon they care
/// about, not an invariant of this function.
pub fn wandering_contraction(m: u32, y0: f64, steps: usize) -> Result<Vec<f64>> {
    assert!(steps >= 2);
    let seq = verify::ordering_sequences(m, y0, steps)?;
    let mut bounds = Vec::with_capacity(steps);
    for n in 1..=steps {
        let frame = HyperbolicFrame::Disc(DiscSpec::trap(m + n as u32));
        let translated = seq.x[n - 1] + TAU;
        let bound = hyperbolic_distance_real(frame, seq.x[n], translated)?;
        let pair = hyperbolic_distance_real(frame, seq.x[n], seq.y[n])?;
        assert!(
            pair <= bound + 1e-12,
            "step {n}: pair distance {pair} above its bound {bound}"
        );
        bounds.push(bound);
    }
    Ok(bounds)
}

/// Euclidean diameter by the O(N^2) pairwise scan.
pub fn diameter(points: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let d = (p - q).norm_sqr();
            if d > best {
                best = d;
            }
        }
    }
    best.sqrt()
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by the monotone chain. The lower and upper chains are built
/// in separate vectors so that popping while building one chain can never
/// consume vertices of the other.
fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_unstable_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    pts.dedup_by(|p, q| p.re == q.re && p.im == q.im);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Euclidean diameter through the convex hull: the maximum pairwise
/// distance is attained at hull vertices, and hulls of grid discretizations
/// are tiny, so the pairwise scan over the hull is cheap. Agrees with
/// [`diameter`] up to rounding of the norm evaluations (1 ulp class).
pub fn diameter_hull(points: &[Complex64]) -> f64 {
    let hull = convex_hull(points);
    diameter(&hull)
}
