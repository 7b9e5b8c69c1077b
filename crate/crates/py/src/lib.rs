//! Python bindings for the wandering-domain numerical laboratory: the
//! auxiliary maps, real fixed-point data, inequality checks, orbit
//! classifiers, and the Hausdorff/hyperbolic metric kernels.
//!
//! Complex arguments and results use Python's native `complex`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wandering_lab::basin::{self, PixelClass};
use wandering_lab::geom::{DiscSpec, HalfPlaneSpec};
use wandering_lab::metrics::{self, HyperbolicFrame};
use wandering_lab::{maps, real_dynamics, verify};

fn py_err(e: wandering_lab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn class_name(class: PixelClass) -> &'static str {
    match class {
        PixelClass::Inside => "inside",
        PixelClass::Outside => "outside",
        PixelClass::Undecided => "undecided",
    }
}

/// The base map f(z) = z cos z + 2π.
#[pyfunction]
fn f(z: Complex64) -> Complex64 {
    maps::f(z)
}

/// The one-parameter family f_λ(z) = z cos z + λ sin z + 2π.
#[pyfunction]
fn f_lambda(z: Complex64, lam: Complex64) -> Complex64 {
    maps::f_lambda(z, lam)
}

/// The translated conjugate h_n(z) = (z + 2nπ) cos z − 2nπ.
#[pyfunction]
fn h(n: u32, z: Complex64) -> Complex64 {
    maps::h(n, z)
}

/// The reciprocal-frame map w_n(t) = 1 / h_n(1/t); rejects t = 0 and
/// arguments whose image is undefined.
#[pyfunction]
fn w(n: u32, t: Complex64) -> PyResult<Complex64> {
    maps::w(n, t).map_err(py_err)
}

/// The rescaled single step g_n(z) = (n+1) h_n(z/n).
#[pyfunction]
fn g(n: u32, z: Complex64) -> Complex64 {
    maps::g(n, z)
}

/// The n-fold composition h_{m+n−1} ∘ … ∘ h_m.
#[pyfunction]
fn psi(m: u32, n: u32, z: Complex64) -> Complex64 {
    maps::psi(m, n, z)
}

/// The rescaled composition φ_{m,n}(z) = (m+n) ψ_{m,n}(z/m).
#[pyfunction]
fn phi(m: u32, n: u32, z: Complex64) -> Complex64 {
    maps::phi(m, n, z)
}

/// The limit quadratic q(z) = z − πz².
#[pyfunction]
fn q(z: Complex64) -> Complex64 {
    maps::q(z)
}

/// The family limit quadratic q_λ(z) = (1+λ)z − πz².
#[pyfunction]
fn q_lambda(z: Complex64, lam: Complex64) -> Complex64 {
    maps::q_lambda(z, lam)
}

/// Parameter of the affinely conjugate quadratic z² + c for q_λ;
/// λ = 0 gives exactly 1/4.
#[pyfunction]
fn mandelbrot_parameter(lam: Complex64) -> Complex64 {
    maps::mandelbrot_c(lam)
}

/// Real fixed points for windows 1..=max_n as (x, multiplier, window,
/// eta) tuples, two per window, ordered left to right.
#[pyfunction]
fn fixed_points(max_n: u32) -> PyResult<Vec<(f64, f64, u32, f64)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in real_dynamics::find_real_fixed_points(n).map_err(py_err)? {
            out.push((r.x, r.multiplier, r.window, r.eta));
        }
    }
    Ok(out)
}

/// Finds (x0, n, value) with x0 in (−delta, 0) and the n-th iterate at or
/// below 2nπ − π/2.
#[pyfunction]
fn escape_witness(delta: f64, max_n: u32) -> PyResult<(f64, u32, f64)> {
    let w = real_dynamics::find_escaping_negative(delta, max_n).map_err(py_err)?;
    Ok((w.x0, w.n, w.value))
}

/// Drift band of w_n on the half-plane right of 3nπ: (pass, worst margin).
#[pyfunction]
fn check_drift_band(n: u32, samples: usize) -> PyResult<(bool, f64)> {
    let r = verify::check_halfplane_drift(n, samples).map_err(py_err)?;
    Ok((r.pass, r.worst_margin))
}

/// Image of the trap disc at n inside the trap disc at n+1:
/// (pass, worst margin) over the sampled boundary.
#[pyfunction]
fn check_disc_inclusion(n: u32, samples: usize) -> (bool, f64) {
    let r = verify::check_disc_inclusion(n, samples);
    (r.pass, r.worst_margin)
}

/// Expansion of h_{m+n} on the circle of radius 2/(mπ): (pass, worst
/// margin).
#[pyfunction]
fn check_circle_expansion(m: u32, n: u32, samples: usize) -> (bool, f64) {
    let r = verify::check_circle_expansion(m, n, samples);
    (r.pass, r.worst_margin)
}

/// Uniform 1/m decay of |g_m − q| on |z| ≤ r with the constant fit at
/// m = 1: (pass, worst margin) over m = 2..=m_max.
#[pyfunction]
fn check_deviation_decay(r: f64, m_max: u32) -> (bool, f64) {
    let rep = verify::check_g_uniform_convergence(r, m_max);
    (rep.pass, rep.worst_margin)
}

/// Least sampled index M with sup |qⁿ − φ_{M,n}| < epsilon on |z| ≤ r
/// (its predecessor still fails).
#[pyfunction]
fn approximation_threshold(n: u32, r: f64, epsilon: f64) -> PyResult<u32> {
    verify::check_phi_approximates_qn(n, r, epsilon).map_err(py_err)
}

/// The six ordering conclusions for the coupled real orbits from y0 at
/// base index m: (pass, worst margin).
#[pyfunction]
fn check_orderings(m: u32, y0: f64, steps: usize) -> PyResult<(bool, f64)> {
    let r = verify::check_ordering_sequences(m, y0, steps).map_err(py_err)?;
    Ok((r.pass, r.worst_margin))
}

/// Classifies a point against the bounded quadratic component:
/// ("inside" | "outside" | "undecided", step decided at).
#[pyfunction]
fn classify_cauliflower(z: Complex64, max_iter: u32) -> (String, u32) {
    let v = basin::classify_cauliflower(z, max_iter);
    (class_name(v.class).to_string(), v.decided_at)
}

/// Classifies a point against the component window at index n (sound
/// trap/escape classifier): ("inside" | "outside" | "undecided", step).
#[pyfunction]
fn classify_component(z: Complex64, n: u32, max_steps: u32) -> (String, u32) {
    let v = basin::classify_wandering(z, n, max_steps);
    (class_name(v.class).to_string(), v.decided_at)
}

/// Hausdorff distance between two finite point sets.
#[pyfunction]
fn hausdorff_distance(a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<f64> {
    metrics::hausdorff_distance_bucketed(&a, &b)
        .map(|r| r.distance)
        .map_err(py_err)
}

/// Hyperbolic distance between two real points of the half-plane
/// Re z > wall.
#[pyfunction]
fn hyperbolic_distance_halfplane(wall: f64, x1: f64, x2: f64) -> PyResult<f64> {
    metrics::hyperbolic_distance_real(
        HyperbolicFrame::HalfPlane(HalfPlaneSpec { a: wall }),
        x1,
        x2,
    )
    .map_err(py_err)
}

/// Hyperbolic distance between two real points of the disc with real
/// center and the given radius.
#[pyfunction]
fn hyperbolic_distance_disc(center: f64, radius: f64, x1: f64, x2: f64) -> PyResult<f64> {
    metrics::hyperbolic_distance_real(
        HyperbolicFrame::Disc(DiscSpec::new(Complex64::new(center, 0.0), radius)),
        x1,
        x2,
    )
    .map_err(py_err)
}

/// Hyperbolic step sizes of the real half-plane orbit t_{k+1} = w_{m+k}(t_k)
/// from t0, each measured against the wall 3(m+k+1)π.
#[pyfunction]
fn contraction_steps(m: u32, t0: f64, steps: usize) -> PyResult<Vec<f64>> {
    metrics::contraction_experiment(m, t0, steps).map_err(py_err)
}

/// Per-step hyperbolic upper bounds for the coupled real orbit pair from
/// y0, measured in the shrinking trap discs.
#[pyfunction]
fn pair_bounds(m: u32, y0: f64, steps: usize) -> PyResult<Vec<f64>> {
    metrics::wandering_contraction(m, y0, steps).map_err(py_err)
}

/// Euclidean diameter of a finite point set.
#[pyfunction]
fn diameter(points: Vec<Complex64>) -> f64 {
    metrics::diameter_hull(&points)
}

#[pymodule]
fn wanderlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CERTIFIED_BASE_INDEX", wandering_lab::N0)?;
    m.add_function(wrap_pyfunction!(f, m)?)?;
    m.add_function(wrap_pyfunction!(f_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(h, m)?)?;
    m.add_function(wrap_pyfunction!(w, m)?)?;
    m.add_function(wrap_pyfunction!(g, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(q, m)?)?;
    m.add_function(wrap_pyfunction!(q_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(mandelbrot_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(escape_witness, m)?)?;
    m.add_function(wrap_pyfunction!(check_drift_band, m)?)?;
    m.add_function(wrap_pyfunction!(check_disc_inclusion, m)?)?;
    m.add_function(wrap_pyfunction!(check_circle_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(check_deviation_decay, m)?)?;
    m.add_function(wrap_pyfunction!(approximation_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(check_orderings, m)?)?;
    m.add_function(wrap_pyfunction!(classify_cauliflower, m)?)?;
    m.add_function(wrap_pyfunction!(classify_component, m)?)?;
    m.add_function(wrap_pyfunction!(hausdorff_distance, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_distance_halfplane, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_distance_disc, m)?)?;
    m.add_function(wrap_pyfunction!(contraction_steps, m)?)?;
    m.add_function(wrap_pyfunction!(pair_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(diameter, m)?)?;
    Ok(())
}
