//! Discs, half-planes, and circles the construction keeps returning to.
//!
//! The tangent disc at index `n` touches the origin from the right with
//! radius `1/(6nπ)`; its translate by `2nπ` is the trap disc sitting just
//! right of the `n`-th window point on the real axis. The index-`n`
//! circle has radius `2/(nπ)` and encloses the component the trap disc
//! certifies, so leaving its translate certifies a point is outside.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::maps::two_n_pi;

/// An open disc `|z - center| < radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscSpec {
    pub center: Complex64,
    pub radius: f64,
}

impl DiscSpec {
    pub fn new(center: Complex64, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        DiscSpec { center, radius }
    }

    /// Tangent disc at index `n >= 1`: center and radius both `1/(6nπ)`,
    /// so the closure touches the origin.
    pub fn tangent(n: u32) -> Self {
        debug_assert!(n >= 1);
        let r = 1.0 / (6.0 * f64::from(n) * PI);
        DiscSpec { center: Complex64::new(r, 0.0), radius: r }
    }

    /// Trap disc at index `n >= 1`: the tangent disc translated by `2nπ`,
    /// touching the window point `2nπ` from the right.
    pub fn trap(n: u32) -> Self {
        debug_assert!(n >= 1);
        let r = 1.0 / (6.0 * f64::from(n) * PI);
        DiscSpec { center: Complex64::new(two_n_pi(n) + r, 0.0), radius: r }
    }

    /// Strict membership test.
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm_sqr() < self.radius * self.radius
    }

    /// Signed distance from the boundary, positive inside.
    pub fn margin(&self, z: Complex64) -> f64 {
        self.radius - (z - self.center).norm()
    }

    /// Boundary point at angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// Intersection with the real axis for a real-centered disc.
    pub fn real_interval(&self) -> (f64, f64) {
        debug_assert!(self.center.im == 0.0);
        (self.center.re - self.radius, self.center.re + self.radius)
    }
}

/// An open right half-plane `Re z > a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneSpec {
    pub a: f64,
}

impl HalfPlaneSpec {
    /// The half-plane `Re z > 3nπ` paired with the index-`n` maps.
    pub fn for_index(n: u32) -> Self {
        HalfPlaneSpec { a: 3.0 * PI * f64::from(n) }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.a
    }

    pub fn margin(&self, z: Complex64) -> f64 {
        z.re - self.a
    }
}

/// The circle `|z - 2kπ| = 2/(nπ)`: the index-`n` circle translated `k`
/// windows to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleSpec {
    pub n: u32,
    pub k: u32,
}

impl CircleSpec {
    /// The origin-centered circle of index `n >= 1`.
    pub fn origin(n: u32) -> Self {
        debug_assert!(n >= 1);
        CircleSpec { n, k: 0 }
    }

    /// The same circle translated to the window at `2kπ`.
    pub fn translated(n: u32, k: u32) -> Self {
        debug_assert!(n >= 1);
        CircleSpec { n, k }
    }

    pub fn radius(&self) -> f64 {
        2.0 / (f64::from(self.n) * PI)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(two_n_pi(self.k), 0.0)
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        self.center() + Complex64::from_polar(self.radius(), theta)
    }

    /// True when `z` lies strictly outside the circle.
    pub fn strictly_outside(&self, z: Complex64) -> bool {
        let r = self.radius();
        (z - self.center()).norm_sqr() > r * r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn tangent_disc_touches_origin() {
        let d = DiscSpec::tangent(3);
        assert_eq!(d.center.re, d.radius);
        assert!(!d.contains(Complex64::ZERO), "tangency point is boundary");
        assert!(d.contains(d.center));
        let (lo, hi) = d.real_interval();
        assert_eq!(lo, 0.0);
        assert!((hi - 1.0 / (9.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn trap_disc_sits_right_of_window_point() {
        let d = DiscSpec::trap(7);
        let (lo, hi) = d.real_interval();
        assert_eq!(lo, TAU * 7.0);
        assert!(hi > lo);
        assert!(d.contains(Complex64::new(TAU * 7.0 + 1.0 / (42.0 * PI), 0.0)));
        assert!(!d.contains(Complex64::new(TAU * 7.0, 0.0)));
    }

    #[test]
    fn circle_membership() {
        let c = CircleSpec::translated(4, 9);
        assert_eq!(c.center().re, TAU * 9.0);
        assert!((c.radius() - 2.0 / (4.0 * PI)).abs() < 1e-18);
        assert!(c.strictly_outside(c.center() + Complex64::new(c.radius() * 1.01, 0.0)));
        assert!(!c.strictly_outside(c.center()));
        let p = c.point(1.2);
        assert!(((p - c.center()).norm() - c.radius()).abs() < 1e-15);
    }

    #[test]
    fn half_plane_margin() {
        let hp = HalfPlaneSpec::for_index(2);
        assert_eq!(hp.a, 6.0 * PI);
        assert!(hp.contains(Complex64::new(6.0 * PI + 0.1, -3.0)));
        assert!(!hp.contains(Complex64::new(6.0 * PI, 0.0)));
        assert!((hp.margin(Complex64::new(6.0 * PI + 0.25, 1.0)) - 0.25).abs() < 1e-12);
    }
}
