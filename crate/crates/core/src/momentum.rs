//! Momentum-space representation of bound states.
//!
//! The Fourier image of a bound state is a superposition of shifted
//! Lorentzians: Phi(k) = sum_j w_j e^{i k x_j} / (k^2 + b^2) with
//! w_j = a_j c_j / sqrt(2 pi). This module evaluates that closed form,
//! cross-checks it by direct quadrature of the position-space
//! reconstruction, and exposes parity and Parseval diagnostics.

use crate::model::{BoundState, DeltaPotential, Parity};
use crate::ndelta;
use crate::numerics::{integrate, integrate_split};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Panel budget for the adaptive quadratures in this module.
const MAX_PANELS: usize = 20_000;

/// Internal absolute tolerance for the Parseval momentum-side integral.
const PARSEVAL_QUAD_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MomentumError {
    #[error("quadrature did not converge: achieved error estimate {achieved:.3e} exceeds requested {requested:.3e}")]
    QuadratureNotConverged { achieved: f64, requested: f64 },
}

/// Closed-form momentum profile Phi(k) = sum_j w_j e^{i k x_j} / (k^2 + b^2).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumProfile {
    b: f64,
    terms: Vec<(f64, f64)>, // (weight w_j, position x_j)
}

impl MomentumProfile {
    /// Builds the profile for a state: w_j = a_j c_j / sqrt(2 pi).
    pub fn from_state(state: &BoundState, pot: &DeltaPotential) -> Self {
        let wells = pot.wells();
        assert_eq!(state.coeffs().len(), wells.len(), "state does not match potential");
        let norm = (2.0 * PI).sqrt();
        let terms = wells
            .iter()
            .zip(state.coeffs())
            .map(|(w, &c)| (w.strength * c / norm, w.position))
            .collect();
        Self { b: state.b(), terms }
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Sum of |w_j|; bounds |Phi(k)|·(k^2+b^2) for every k.
    pub fn weight_abs_sum(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w.abs()).sum()
    }

    pub fn eval(&self, k: f64) -> Complex64 {
        let lorentz = 1.0 / (k * k + self.b * self.b);
        self.terms
            .iter()
            .map(|&(w, x)| Complex64::from_polar(w, k * x))
            .sum::<Complex64>()
            * lorentz
    }
}

/// Closed-form Phi(k) for a bound state of the given potential.
pub fn phi_k(state: &BoundState, pot: &DeltaPotential, k: f64) -> Complex64 {
    MomentumProfile::from_state(state, pot).eval(k)
}

/// Break points for quadrature over the reconstruction: every well position
/// (derivative kink) plus a truncation radius of 40/b beyond the outermost
/// wells (relative truncation error below e^{-40}).
fn quadrature_break_points(pot: &DeltaPotential, b: f64) -> Vec<f64> {
    let wells = pot.wells();
    let radius = 40.0 / b;
    let mut points = Vec::with_capacity(wells.len() + 2);
    points.push(wells.first().unwrap().position - radius);
    points.extend(wells.iter().map(|w| w.position));
    points.push(wells.last().unwrap().position + radius);
    points
}

/// Phi(k) by adaptive quadrature of (1/sqrt(2 pi)) int e^{ikx} phi(x) dx,
/// independent of the closed form except for the shared reconstruction.
pub fn numerical_ft(
    state: &BoundState,
    pot: &DeltaPotential,
    k: f64,
    quad_tol: f64,
) -> Result<Complex64, MomentumError> {
    assert!(quad_tol > 0.0, "quadrature tolerance must be positive");
    let points = quadrature_break_points(pot, state.b());
    let norm = 1.0 / (2.0 * PI).sqrt();
    let part_tol = 0.5 * quad_tol;

    let re = integrate_split(
        |x| norm * (k * x).cos() * ndelta::reconstruct(state, pot, x),
        &points,
        part_tol,
        MAX_PANELS,
    );
    let im = integrate_split(
        |x| norm * (k * x).sin() * ndelta::reconstruct(state, pot, x),
        &points,
        part_tol,
        MAX_PANELS,
    );
    let achieved = re.abs_err + im.abs_err;
    if achieved > quad_tol {
        return Err(MomentumError::QuadratureNotConverged { achieved, requested: quad_tol });
    }
    Ok(Complex64::new(re.value, im.value))
}

/// Norm checks on both sides of the transform: returns
/// (int |phi|^2 dx via closed-form overlaps, int |Phi|^2 dk via quadrature).
/// Both equal 1 for a normalized state.
pub fn parseval_check(
    state: &BoundState,
    pot: &DeltaPotential,
) -> Result<(f64, f64), MomentumError> {
    let position_side = ndelta::norm_squared(state, pot);

    let profile = MomentumProfile::from_state(state, pot);
    // |Phi(k)|^2 <= W^2/k^4 for the tail, so cutting at K leaves at most
    // 2 W^2 / (3 K^3); choose K so that bound is well under the quad tolerance
    let w = profile.weight_abs_sum();
    let k_max = (4.0 * w * w / (3.0 * PARSEVAL_QUAD_TOL)).cbrt().max(10.0 * profile.b());
    let quad = integrate(
        |k| profile.eval(k).norm_sqr(),
        -k_max,
        k_max,
        PARSEVAL_QUAD_TOL,
        MAX_PANELS,
    );
    if !quad.converged(PARSEVAL_QUAD_TOL) {
        return Err(MomentumError::QuadratureNotConverged {
            achieved: quad.abs_err,
            requested: PARSEVAL_QUAD_TOL,
        });
    }
    Ok((position_side, quad.value))
}

/// Classifies Phi under k -> -k by sampling a symmetric grid of 16 points up
/// to 8b: even when Phi(-k) = Phi(k) within tol (relative to the largest
/// sampled magnitude), odd when Phi(-k) = -Phi(k), none otherwise. Assumes
/// the well layout is centered on the origin.
pub fn parity_of_profile(profile: &MomentumProfile, tol: f64) -> Parity {
    let b = profile.b();
    let samples: Vec<(Complex64, Complex64)> = (1..=16)
        .map(|i| {
            let k = b * i as f64 / 2.0;
            (profile.eval(k), profile.eval(-k))
        })
        .collect();
    let scale = samples
        .iter()
        .fold(0.0f64, |m, (p, q)| m.max(p.norm()).max(q.norm()));
    let bound = tol * scale;
    if samples.iter().all(|(p, q)| (p - q).norm() <= bound) {
        return Parity::Even;
    }
    if samples.iter().all(|(p, q)| (p + q).norm() <= bound) {
        return Parity::Odd;
    }
    Parity::None
}
