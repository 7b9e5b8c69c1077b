//! Pixel-grid classification of basins: the bounded component of the
//! quadratic `q`, the small components of `f` near each window line, and
//! the heuristic variants for the one-parameter family.
//!
//! Inside/Outside verdicts rest on terminating certificates: entering a
//! trap disc that provably lies in the component, or violating an enclosure
//! that provably contains it. Pixels with neither certificate within the
//! iteration budget stay Undecided. Trap and escape events are permanent,
//! so raising the budget can only turn Undecided pixels into decided ones.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::geom::{CircleSpec, DiscSpec};
use crate::maps;
use crate::{Error, Result, N0};

/// Default iteration budget for the quadratic classifier; the parabolic
/// approach to the fixed point is slow (like 1/(pi*k)), so budgets are
/// generous.
pub const CAULIFLOWER_MAX_ITER: u32 = 5000;

/// Default step budget for the wandering classifier; trap or escape
/// resolves quickly except in a thin boundary band.
pub const WANDERING_MAX_STEPS: u32 = 1000;

/// Absolute guard subtracted from trap-disc radii before certifying Inside.
/// Orbit rounding accumulates a few ulp per step; the guard keeps a point
/// that merely grazes the disc boundary (in particular the window point
/// 2n*pi itself) from ever being certified. It is orders of magnitude
/// smaller than every margin the construction provides.
pub const TRAP_GUARD: f64 = 1e-8;

/// Exploration radius for the heuristic family classifier: how far from the
/// active window line an orbit may stray and still count as bounded.
pub const R_EXPLORE: f64 = 1.0;

/// Classification outcome of one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelClass {
    Inside,
    Outside,
    Undecided,
}

impl PixelClass {
    /// Fixed color triple used by every PPM writer: Inside yellow, Outside
    /// dark blue-gray, Undecided mid gray.
    pub fn ppm_triple(self) -> &'static str {
        match self {
            PixelClass::Inside => "255 220 0",
            PixelClass::Outside => "20 20 40",
            PixelClass::Undecided => "128 128 128",
        }
    }
}

/// Outcome plus the step index at which it was reached. Undecided verdicts
/// carry the exhausted budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelVerdict {
    pub class: PixelClass,
    pub decided_at: u32,
}

/// Axis-aligned pixel grid; pixel centers are the sample points. Centers at
/// `center + (hw*(2i+1-nx)/nx, hh*(2j+1-ny)/ny)` are mirror-exact about the
/// real axis when `center` is real, so conjugation-symmetric maps yield
/// mirror-symmetric verdicts bit for bit.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub center: Complex64,
    pub half_width: f64,
    pub half_height: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(center: Complex64, half_width: f64, half_height: f64, nx: usize, ny: usize) -> Self {
        assert!(nx >= 2 && ny >= 2, "grids need at least 2x2 pixels");
        assert!(half_width > 0.0 && half_height > 0.0);
        GridSpec {
            center,
            half_width,
            half_height,
            nx,
            ny,
        }
    }

    /// Square window over the enclosure of the bounded quadratic component:
    /// center 0, half-size 2/pi.
    pub fn for_cauliflower(resolution: usize) -> Self {
        let half = 2.0 / PI;
        GridSpec::new(Complex64::new(0.0, 0.0), half, half, resolution, resolution)
    }

    /// Square window around the component at index n: centered a little
    /// right of the window line so the enclosing circle of radius 2/(n*pi)
    /// fits with margin at every n.
    pub fn for_component(n: u32, resolution: usize) -> Self {
        let npi = f64::from(n) * PI;
        let center = Complex64::new(maps::two_n_pi(n) + 1.0 / npi, 0.0);
        let half = 2.2 / npi;
        GridSpec::new(center, half, half, resolution, resolution)
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!(i < self.nx && j < self.ny);
        // The offset numerators are formed in integers: swapping j for
        // ny-1-j negates the numerator exactly, so the two offsets are
        // exact floating-point negations of each other and mirror rows
        // sample exactly conjugate points.
        let dx = self.half_width * (2 * i as i64 + 1 - self.nx as i64) as f64 / self.nx as f64;
        let dy = self.half_height * (2 * j as i64 + 1 - self.ny as i64) as f64 / self.ny as f64;
        Complex64::new(self.center.re + dx, self.center.im + dy)
    }

    pub fn pixel_width(&self) -> f64 {
        2.0 * self.half_width / self.nx as f64
    }

    pub fn pixel_height(&self) -> f64 {
        2.0 * self.half_height / self.ny as f64
    }

    pub fn pixel_diagonal(&self) -> f64 {
        self.pixel_width().hypot(self.pixel_height())
    }
}

/// Finite set of complex points with a human-readable origin trail.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub points: Vec<Complex64>,
    pub provenance: String,
}

/// Verdict matrix over a grid, row-major with j = 0 the bottom row.
#[derive(Debug, Clone)]
pub struct ClassifiedGrid {
    pub spec: GridSpec,
    pub verdicts: Vec<PixelVerdict>,
    pub map_id: String,
}

impl ClassifiedGrid {
    pub fn verdict(&self, i: usize, j: usize) -> PixelVerdict {
        self.verdicts[j * self.spec.nx + i]
    }

    /// (inside, outside, undecided) pixel counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut counts = (0usize, 0usize, 0usize);
        for v in &self.verdicts {
            match v.class {
                PixelClass::Inside => counts.0 += 1,
                PixelClass::Outside => counts.1 += 1,
                PixelClass::Undecided => counts.2 += 1,
            }
        }
        counts
    }

    pub fn undecided_fraction(&self) -> f64 {
        let (_, _, undecided) = self.counts();
        undecided as f64 / self.verdicts.len() as f64
    }

    /// Plain PPM (P3) serialization: Inside yellow (255,220,0), Outside
    /// dark (20,20,40), Undecided gray (128,128,128). One pixel per line,
    /// rows written top to bottom.
    pub fn to_ppm(&self) -> String {
        let mut out = String::with_capacity(self.verdicts.len() * 12 + 32);
        out.push_str("P3\n");
        out.push_str(&format!("{} {}\n255\n", self.spec.nx, self.spec.ny));
        for j in (0..self.spec.ny).rev() {
            for i in 0..self.spec.nx {
                out.push_str(self.verdict(i, j).class.ppm_triple());
                out.push('\n');
            }
        }
        out
    }

    /// Run-length text dump, one row per line from the top, tokens like
    /// `I12 O5 U3`.
    pub fn to_rle(&self) -> String {
        let mut out = format!("RLE {} {}\n", self.spec.nx, self.spec.ny);
        for j in (0..self.spec.ny).rev() {
            let mut run_char = ' ';
            let mut run_len = 0usize;
            let mut row = String::new();
            for i in 0..self.spec.nx {
                let c = match self.verdict(i, j).class {
                    PixelClass::Inside => 'I',
                    PixelClass::Outside => 'O',
                    PixelClass::Undecided => 'U',
                };
                if c == run_char {
                    run_len += 1;
                } else {
                    if run_len > 0 {
                        row.push_str(&format!("{run_char}{run_len} "));
                    }
                    run_char = c;
                    run_len = 1;
                }
            }
            row.push_str(&format!("{run_char}{run_len}"));
            out.push_str(row.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Classifies a point for the bounded component of `q(z) = z - pi z^2`:
/// Inside once the orbit enters the trap disc tangent to the origin from
/// the right, Outside once it leaves the enclosing circle of radius 2/pi.
pub fn classify_cauliflower(z: Complex64, max_iter: u32) -> PixelVerdict {
    assert!(max_iter >= 1);
    let trap = DiscSpec::tangent(1);
    let escape_sqr = (2.0 / PI) * (2.0 / PI);
    let mut z = z;
    for k in 0..=max_iter {
        if (z - trap.center).norm() < trap.radius - TRAP_GUARD {
            return PixelVerdict {
                class: PixelClass::Inside,
                decided_at: k,
            };
        }
        if z.norm_sqr() > escape_sqr {
            return PixelVerdict {
                class: PixelClass::Outside,
                decided_at: k,
            };
        }
        if k < max_iter {
            z = maps::q(z);
        }
    }
    PixelVerdict {
        class: PixelClass::Undecided,
        decided_at: max_iter,
    }
}

/// Classifies a point for the component at index `n >= N0` under `f`:
/// Inside once the orbit enters the trap disc at the current index, Outside
/// once it leaves the translated enclosing circle of radius 2/(idx*pi)
/// around the current window point.
pub fn classify_wandering(z: Complex64, n: u32, max_steps: u32) -> PixelVerdict {
    assert!(n >= N0, "sound classification needs the certified trap chain");
    let mut z = z;
    for k in 0..=max_steps {
        let idx = n + k;
        let trap = DiscSpec::trap(idx);
        if (z - trap.center).norm() < trap.radius - TRAP_GUARD {
            return PixelVerdict {
                class: PixelClass::Inside,
                decided_at: k,
            };
        }
        let circle = CircleSpec::translated(idx, idx);
        if circle.strictly_outside(z) {
            return PixelVerdict {
                class: PixelClass::Outside,
                decided_at: k,
            };
        }
        if k < max_steps {
            z = maps::f(z);
        }
    }
    PixelVerdict {
        class: PixelClass::Undecided,
        decided_at: max_steps,
    }
}

/// One-sided classifier for component indices below the certified chain:
/// Inside once the forward orbit demonstrably enters a trap disc at an
/// index at or past the certified start, never Outside (no enclosure
/// certificate exists down here).
///
/// Unlike the certified classifier there is no escape test to stop runaway
/// orbits, and iterates can overflow double range; once an orbit goes
/// non-finite no future trap entry can be attested, so the point is
/// released as Undecided at that step.
pub fn classify_wandering_best_effort(z: Complex64, n: u32, max_steps: u32) -> PixelVerdict {
    assert!(n >= 1);
    let mut z = z;
    for k in 0..=max_steps {
        if !z.re.is_finite() || !z.im.is_finite() {
            return PixelVerdict {
                class: PixelClass::Undecided,
                decided_at: k,
            };
        }
        let idx = n + k;
        if idx >= N0 {
            let trap = DiscSpec::trap(idx);
            if (z - trap.center).norm() < trap.radius - TRAP_GUARD {
                return PixelVerdict {
                    class: PixelClass::Inside,
                    decided_at: k,
                };
            }
        }
        if k < max_steps {
            z = maps::f(z);
        }
    }
    PixelVerdict {
        class: PixelClass::Undecided,
        decided_at: max_steps,
    }
}

/// Bounded-orbit heuristic for the one-parameter family: tentatively Inside
/// when the orbit stays within [`R_EXPLORE`] of the active window point for
/// the whole budget, Outside the first time it strays. Neither verdict is a
/// certificate for nonzero parameters; grids built from this classifier are
/// flagged HEURISTIC in run metadata.
pub fn classify_lambda_heuristic(
    z: Complex64,
    lambda: Complex64,
    n: u32,
    max_iter: u32,
) -> PixelVerdict {
    assert!(n >= 1);
    let mut z = z;
    for k in 0..=max_iter {
        let window = maps::two_n_pi(n + k);
        if (z - Complex64::new(window, 0.0)).norm() > R_EXPLORE {
            return PixelVerdict {
                class: PixelClass::Outside,
                decided_at: k,
            };
        }
        if k < max_iter {
            z = maps::f_lambda(z, lambda);
        }
    }
    PixelVerdict {
        class: PixelClass::Inside,
        decided_at: max_iter,
    }
}

/// Bounded-orbit set of the family quadratic: Outside is certified (past
/// radius (1 + |1+lambda|)/pi the modulus grows strictly and the orbit
/// escapes), Inside means bounded for the whole budget.
pub fn classify_quadratic_bounded(z: Complex64, lambda: Complex64, max_iter: u32) -> PixelVerdict {
    let escape = (1.0 + (Complex64::new(1.0, 0.0) + lambda).norm()) / PI;
    let escape_sqr = escape * escape;
    let mut z = z;
    for k in 0..=max_iter {
        if z.norm_sqr() > escape_sqr {
            return PixelVerdict {
                class: PixelClass::Outside,
                decided_at: k,
            };
        }
        if k < max_iter {
            z = maps::q_lambda(z, lambda);
        }
    }
    PixelVerdict {
        class: PixelClass::Inside,
        decided_at: max_iter,
    }
}

/// Applies a pointwise classifier to every pixel center. Pixels are
/// independent, so any partitioning yields the same verdict matrix; the
/// parallel map preserves index order.
pub fn classify_grid(
    spec: GridSpec,
    map_id: &str,
    classifier: impl Fn(Complex64) -> PixelVerdict + Sync,
) -> ClassifiedGrid {
    let verdicts = (0..spec.nx * spec.ny)
        .into_par_iter()
        .map(|idx| classifier(spec.pixel_center(idx % spec.nx, idx / spec.nx)))
        .collect::<Vec<PixelVerdict>>();
    ClassifiedGrid {
        spec,
        verdicts,
        map_id: map_id.to_string(),
    }
}

/// Pixel centers with verdict Inside, in row-major order.
pub fn extract_inside_points(grid: &ClassifiedGrid) -> Result<PointSet> {
    let mut points = Vec::new();
    for j in 0..grid.spec.ny {
        for i in 0..grid.spec.nx {
            if grid.verdict(i, j).class == PixelClass::Inside {
                points.push(grid.spec.pixel_center(i, j));
            }
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySet(format!(
            "no Inside pixels in {} grid {}x{}",
            grid.map_id, grid.spec.nx, grid.spec.ny
        )));
    }
    Ok(PointSet {
        points,
        provenance: format!(
            "inside pixels of {} on {}x{} grid centered {} half {}x{}",
            grid.map_id,
            grid.spec.nx,
            grid.spec.ny,
            grid.spec.center,
            grid.spec.half_width,
            grid.spec.half_height
        ),
    })
}

/// Recenters a component discretization at its window point and scales by
/// n: `p -> n*(p - 2n*pi)`.
pub fn rescale_component(set: &PointSet, n: u32) -> PointSet {
    let shift = maps::two_n_pi(n);
    let scale = f64::from(n);
    PointSet {
        points: set
            .points
            .iter()
            .map(|p| Complex64::new(scale * (p.re - shift), scale * p.im))
            .collect(),
        provenance: format!("{} | recentered at {shift} and scaled by {n}", set.provenance),
    }
}
