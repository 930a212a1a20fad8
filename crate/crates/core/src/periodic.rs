//! Negative-energy band of an infinite lattice of equal delta wells.
//!
//! Imposing the Bloch condition phi(x + d) = e^{iKd} phi(x) on the two-sided
//! exponential ansatz and summing the lattice contributions in closed form
//! (two geometric series) yields the dispersion relation
//!
//!   cos(K d) = cosh(b d) - (a / 2b) sinh(b d),
//!
//! whose roots b(K) trace the bound band. For fixed K in [0, pi/d] the right
//! side starts at 1 - ad/2 as b -> 0+, is eventually increasing, and grows
//! without bound, so a root exists iff cos(Kd) > 1 - ad/2 and is then
//! unique. The finite-chain solver provides the numerical cross-check that
//! this derivation is correct (band containment tests).

use crate::numerics::bisect;
use serde::Serialize;

/// One point of the dispersion curve: decay rate b at Bloch wavenumber K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandPoint {
    pub k_bloch: f64,
    pub b: f64,
    pub a: f64,
    pub d: f64,
}

impl BandPoint {
    /// Band energy E = -b^2/2 in natural units.
    pub fn energy(&self) -> f64 {
        -0.5 * self.b * self.b
    }
}

/// cos(Kd) - [cosh(bd) - (a/2b) sinh(bd)]; zero exactly on the band.
pub fn dispersion_residual(b: f64, k_bloch: f64, a: f64, d: f64) -> f64 {
    assert!(b > 0.0 && b.is_finite(), "decay rate must be positive");
    assert!(d > 0.0 && d.is_finite(), "lattice spacing must be positive");
    (k_bloch * d).cos() - ((b * d).cosh() - a / (2.0 * b) * (b * d).sinh())
}

/// Root floor: roots below this are indistinguishable from the continuum
/// edge b = 0 and are reported as absent.
const B_FLOOR: f64 = 1e-12;

/// Solves the dispersion relation at fixed Bloch wavenumber, refining b to
/// `tol`. Returns the unique root with b > 0, or none when the band has
/// merged into the continuum at this K (cos(Kd) <= 1 - ad/2).
pub fn solve_at_k(a: f64, d: f64, k_bloch: f64, tol: f64) -> Option<BandPoint> {
    assert!(d > 0.0 && d.is_finite(), "lattice spacing must be positive");
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    // b -> 0+ limit of the residual; no root beyond the floor when <= 0
    if (k_bloch * d).cos() - 1.0 + a * d / 2.0 <= 0.0 {
        return None;
    }
    let residual = |b: f64| dispersion_residual(b, k_bloch, a, d);
    if residual(B_FLOOR) <= 0.0 {
        return None; // root sits below the floor: effectively zero binding
    }
    // the residual is eventually negative; double until bracketed
    let mut hi = (a / 2.0).max(1.0 / d);
    let mut doublings = 0;
    while residual(hi) > 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return None;
        }
    }
    let b = bisect(residual, B_FLOOR, hi, tol)?;
    Some(BandPoint { k_bloch, b, a, d })
}

/// Extremal decay rates of the band: b_top at K = 0 (always present for
/// a > 0) and b_bottom at K = pi/d (absent when ad <= 4, where the band top
/// touches the continuum). Both refined to `tol`.
pub fn band_edges(a: f64, d: f64, tol: f64) -> (Option<f64>, Option<f64>) {
    let top = solve_at_k(a, d, 0.0, tol).map(|p| p.b);
    let bottom = solve_at_k(a, d, std::f64::consts::PI / d, tol).map(|p| p.b);
    (top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Root of cosh(b) - (1/b) sinh(b) = 1 (a = 2, d = 1, K = 0), frozen from
    // an independent bisection of that equation.
    const B_TOP_A2_D1: f64 = 1.5434046384182083;

    #[test]
    fn residual_small_b_series_limit() {
        // K = pi/d, b -> 0+: residual -> -2 + ad/2
        let r = dispersion_residual(1e-6, std::f64::consts::PI, 3.0, 1.0);
        assert!((r - (-2.0 + 1.5)).abs() < 1e-9, "residual {r}");
    }

    #[test]
    fn zone_center_root_for_unit_spacing() {
        let point = solve_at_k(2.0, 1.0, 0.0, 1e-12).unwrap();
        assert!((point.b - B_TOP_A2_D1).abs() < 1e-10, "b = {}", point.b);
        assert!(dispersion_residual(point.b, 0.0, 2.0, 1.0).abs() < 1e-10);
        assert!((point.energy() + 0.5 * point.b * point.b).abs() == 0.0);
    }

    #[test]
    fn zone_center_binds_deeper_than_an_isolated_well() {
        let (top, _) = band_edges(2.0, 1.0, 1e-12);
        assert!(top.unwrap() > 1.0); // isolated well binds at b = a/2 = 1
    }

    #[test]
    fn wide_spacing_approaches_the_isolated_well() {
        // d = 40/a: every K root collapses onto b = a/2
        for k in [0.0, 0.3, std::f64::consts::PI / 20.0] {
            let point = solve_at_k(2.0, 20.0, k, 1e-12).unwrap();
            assert!((point.b - 1.0).abs() < 1e-6, "K={k}: b={}", point.b);
        }
        let (top, bottom) = band_edges(2.0, 40.0, 1e-12);
        let width = top.unwrap() - bottom.unwrap();
        assert!(width.abs() < 1e-6, "bandwidth {width}");
    }

    #[test]
    fn zone_edge_root_requires_enough_binding() {
        // ad <= 4: the K = pi/d state merges into the continuum
        let (top, bottom) = band_edges(2.0, 1.0, 1e-12); // ad = 2
        assert!(top.is_some() && bottom.is_none());

        let (top, bottom) = band_edges(2.0, 1.999, 1e-12); // ad just below 4
        assert!(top.is_some() && bottom.is_none());

        let (top, bottom) = band_edges(2.0, 2.001, 1e-12); // ad just above 4
        let (top, bottom) = (top.unwrap(), bottom.unwrap());
        assert!(bottom > 0.0 && bottom < top);
    }

    #[test]
    fn repulsive_lattice_has_no_band() {
        assert!(solve_at_k(-1.0, 1.0, 0.0, 1e-12).is_none());
        assert_eq!(band_edges(-1.0, 1.0, 1e-12), (None, None));
    }

    #[test]
    fn band_is_monotone_in_bloch_number() {
        let d = 3.0; // ad = 6: both edges present
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let k = std::f64::consts::PI / d * i as f64 / 20.0;
            let b = solve_at_k(2.0, d, k, 1e-12).unwrap().b;
            assert!(b <= prev + 1e-10, "b(K) increased at sample {i}: {b} > {prev}");
            prev = b;
        }
    }
}
