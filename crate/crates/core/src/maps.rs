//! The map under study and its change-of-variable relatives.
//!
//! Everything here is a pure function of its arguments. The base map is
//! `f(z) = z cos z + 2π`; shifting the plane by multiples of `2π` and
//! rescaling by the component index produces the translated maps `h_n`,
//! their reciprocal conjugates `w_n`, the scaled maps `g_n`, and the
//! compositions `psi` and `phi` that shadow iterates of `f`. The scaled
//! maps converge to the quadratic `q(z) = z - π z²`, whose parabolic basin
//! is the cauliflower the wandering components are compared against.
//!
//! Compositions are evaluated strictly left to right with no algebraic
//! reassociation, so a result is reproducible bit for bit.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::{Error, Result};

/// `2nπ` with a single rounding, shared by every module so that disc
/// centers, grid anchors, and map translations agree exactly.
pub(crate) fn two_n_pi(n: u32) -> f64 {
    TAU * n as f64
}

/// The base map `f(z) = z cos z + 2π`.
///
/// Non-finite inputs propagate by IEEE semantics (the result is NaN or
/// infinite); callers that iterate unboundedly must police their own
/// orbits.
pub fn f(z: Complex64) -> Complex64 {
    z * z.cos() + TAU
}

/// The perturbed family `f_λ(z) = z cos z + λ sin z + 2π`.
///
/// `λ = 0` takes the exact evaluation path of [`f`], so the base map is
/// reproduced bit for bit rather than up to a rounded `0·sin z` term.
pub fn f_lambda(z: Complex64, lambda: Complex64) -> Complex64 {
    if lambda == Complex64::ZERO {
        return f(z);
    }
    z * z.cos() + lambda * z.sin() + TAU
}

/// The translation `T^k(z) = z + 2kπ`; `k` may be negative.
pub fn translate(z: Complex64, k: i32) -> Complex64 {
    z + TAU * f64::from(k)
}

/// The translated map `h_n(z) = (z + 2nπ) cos z - 2nπ`, the conjugate
/// `T^{-(n+1)} ∘ f ∘ T^n` of the base map by the shift to window `n`.
///
/// Like [`f`], non-finite inputs propagate by IEEE semantics.
pub fn h(n: u32, z: Complex64) -> Complex64 {
    let shift = two_n_pi(n);
    (z + shift) * z.cos() - shift
}

/// The reciprocal conjugate `w_n(t) = 1 / h_n(1/t)`, which carries right
/// half-planes to right half-planes.
///
/// Errors with [`Error::DegenerateInput`] at `t = 0` and at poles where
/// `h_n(1/t)` is zero or non-finite, rather than returning infinities.
pub fn w(n: u32, t: Complex64) -> Result<Complex64> {
    if t == Complex64::ZERO {
        return Err(Error::DegenerateInput(format!("w_{n} at t = 0")));
    }
    let hv = h(n, t.inv());
    if hv == Complex64::ZERO || !hv.re.is_finite() || !hv.im.is_finite() {
        return Err(Error::DegenerateInput(format!(
            "w_{n} pole: h_{n}(1/t) = {hv} at t = {t}"
        )));
    }
    Ok(hv.inv())
}

/// The scaled map `g_n(z) = (n+1) h_n(z/n)` for `n >= 1`; these converge
/// uniformly on bounded discs to the quadratic [`q`] at rate `O(1/n)`.
pub fn g(n: u32, z: Complex64) -> Complex64 {
    debug_assert!(n >= 1, "g_n is defined for n >= 1");
    f64::from(n + 1) * h(n, z / f64::from(n))
}

/// The composition `psi_{m,n} = h_{m+n-1} ∘ … ∘ h_m`, the identity when
/// `n = 0`. Factors are applied sequentially left to right.
///
/// For `n >= 1` this equals `T^{-(m+n)} ∘ f^n ∘ T^m`, which the tests use
/// as an independent oracle.
pub fn psi(m: u32, n: u32, z: Complex64) -> Complex64 {
    let mut acc = z;
    for j in m..m + n {
        acc = h(j, acc);
    }
    acc
}

/// The scaled composition `phi_{m,n}(z) = (m+n) psi_{m,n}(z/m)` for
/// `m >= 1`; iterating the scaled maps from index `m` approximates the
/// `n`-th iterate of the quadratic [`q`].
pub fn phi(m: u32, n: u32, z: Complex64) -> Complex64 {
    debug_assert!(m >= 1, "phi_{{m,n}} is defined for m >= 1");
    f64::from(m + n) * psi(m, n, z / f64::from(m))
}

/// The limiting quadratic `q(z) = z - π z²` with a parabolic fixed point
/// at the origin; its bounded basin is the cauliflower.
pub fn q(z: Complex64) -> Complex64 {
    z - PI * z * z
}

/// The perturbed quadratic `q_λ(z) = (1+λ) z - π z²`.
///
/// `λ = 0` takes the exact evaluation path of [`q`].
pub fn q_lambda(z: Complex64, lambda: Complex64) -> Complex64 {
    if lambda == Complex64::ZERO {
        return q(z);
    }
    (Complex64::new(1.0, 0.0) + lambda) * z - PI * z * z
}

/// Parameter of the affinely conjugate map `z² + c` for [`q_lambda`]:
/// `c = (1+λ)/2 - (1+λ)²/4`. At `λ = 0` this is exactly `1/4`, the cusp
/// of the main cardioid.
pub fn mandelbrot_c(lambda: Complex64) -> Complex64 {
    let a = Complex64::new(1.0, 0.0) + lambda;
    a / 2.0 - a * a / 4.0
}

/// Which indexed map a value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    H,
    W,
    G,
    Psi,
    Phi,
}

/// An indexed map reference: single-index kinds (`h`, `w`, `g`) read their
/// index from `n`; the compositions use the pair `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapId {
    pub kind: MapKind,
    pub m: u32,
    pub n: u32,
}

impl MapId {
    /// Checks the index constraints: `w` and `g` need `n >= 1`, `phi`
    /// needs `m >= 1`, and a nontrivial composition (`n >= 1`) needs
    /// `m >= 1` to name a well-defined starting window.
    pub fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            MapKind::H => true,
            MapKind::W | MapKind::G => self.n >= 1,
            MapKind::Psi => self.n == 0 || self.m >= 1,
            MapKind::Phi => self.m >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!("invalid indices {self}")))
        }
    }

    /// Applies the referenced map at `z`.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        self.validate()?;
        Ok(match self.kind {
            MapKind::H => h(self.n, z),
            MapKind::W => return w(self.n, z),
            MapKind::G => g(self.n, z),
            MapKind::Psi => psi(self.m, self.n, z),
            MapKind::Phi => phi(self.m, self.n, z),
        })
    }
}

impl std::fmt::Display for MapId {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            MapKind::H => write!(fm, "h[{}]", self.n),
            MapKind::W => write!(fm, "w[{}]", self.n),
            MapKind::G => write!(fm, "g[{}]", self.n),
            MapKind::Psi => write!(fm, "psi[{},{}]", self.m, self.n),
            MapKind::Phi => write!(fm, "phi[{},{}]", self.m, self.n),
        }
    }
}
