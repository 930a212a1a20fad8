//! General N-well bound-state solver.
//!
//! Evaluating the reconstruction formula at the well positions turns the
//! bound-state problem into a self-consistency system: the vector of node
//! values c_j = phi(x_j) must satisfy M(b) c = c with
//! M_ij = (a_j / 2b) e^{-b |x_i - x_j|}. Decay rates are the roots of
//! det(M(b) - I); this module scans for them, extracts the null-space
//! coefficients at each root, and normalizes the resulting eigenfunctions.

use crate::model::{BoundState, DeltaPotential, Parity};
use crate::numerics::bisect;

/// Residual magnitude below which a sign-preserving local minimum of the
/// characteristic determinant is flagged as a suspected tangent root.
pub const DEGENERATE_RESIDUAL_TOL: f64 = 1e-10;

/// Coefficient tolerance used when the scan classifies state parity.
pub const PARITY_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum NdeltaError {
    #[error("scan step must be positive and smaller than b_max (step={step}, b_max={b_max})")]
    InvalidStep { step: f64, b_max: f64 },
    #[error("b_max={b_max} does not cover the deepest possible state (need >= {required})")]
    ScanCeilingTooLow { b_max: f64, required: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("state has zero norm and cannot be normalized")]
    ZeroNorm,
}

/// The self-consistency system M(b) c = c frozen at a trial decay rate.
#[derive(Debug, Clone)]
pub struct CharacteristicSystem {
    b: f64,
    n: usize,
    matrix: Vec<f64>, // row-major, M_ij = (a_j/2b) e^{-b|x_i-x_j|}
    residual: f64,
}

impl CharacteristicSystem {
    pub fn new(pot: &DeltaPotential, b: f64) -> Self {
        assert!(b > 0.0 && b.is_finite(), "trial decay rate must be positive");
        let wells = pot.wells();
        let n = wells.len();
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            matrix[i * n + i] = wells[i].strength / (2.0 * b);
            for j in (i + 1)..n {
                let decay = (-b * (wells[i].position - wells[j].position).abs()).exp();
                matrix[i * n + j] = wells[j].strength / (2.0 * b) * decay;
                matrix[j * n + i] = wells[i].strength / (2.0 * b) * decay;
            }
        }
        let residual = det_minus_identity(&matrix, n);
        Self { b, n, matrix, residual }
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.n + j]
    }

    /// det(M(b) - I); zero exactly at bound-state decay rates.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Direction spanning the (numerical) null space of M - I, found by
    /// elimination with full pivoting; the smallest pivot seeds
    /// back-substitution. Only meaningful when `residual` is near zero.
    pub fn null_direction(&self) -> Vec<f64> {
        let n = self.n;
        if n == 1 {
            return vec![1.0];
        }
        let mut a = self.matrix.clone();
        for i in 0..n {
            a[i * n + i] -= 1.0;
        }
        let mut col_of = (0..n).collect::<Vec<_>>();
        for k in 0..n {
            let (mut pi, mut pj, mut best) = (k, k, 0.0);
            for i in k..n {
                for j in k..n {
                    let v = a[i * n + j].abs();
                    if v > best {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best == 0.0 {
                break;
            }
            if pi != k {
                for j in 0..n {
                    a.swap(k * n + j, pi * n + j);
                }
            }
            if pj != k {
                for i in 0..n {
                    a.swap(i * n + k, i * n + pj);
                }
                col_of.swap(k, pj);
            }
            let pivot = a[k * n + k];
            for i in (k + 1)..n {
                let f = a[i * n + k] / pivot;
                a[i * n + k] = 0.0;
                for j in (k + 1)..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        // back-substitute with the last (smallest-pivot) variable set to 1
        let mut z = vec![0.0; n];
        z[n - 1] = 1.0;
        for i in (0..n - 1).rev() {
            let mut s = 0.0;
            for j in (i + 1)..n {
                s += a[i * n + j] * z[j];
            }
            let pivot = a[i * n + i];
            z[i] = if pivot != 0.0 { -s / pivot } else { 0.0 };
        }
        let mut c = vec![0.0; n];
        for (k, &col) in col_of.iter().enumerate() {
            c[col] = z[k];
        }
        c
    }
}

/// det(M - I) by LU elimination with partial pivoting. Falls back to a
/// log-magnitude reconstruction when the plain pivot product over- or
/// underflows, preserving the sign for bracketing.
fn det_minus_identity(matrix: &[f64], n: usize) -> f64 {
    let mut a = matrix.to_vec();
    for i in 0..n {
        a[i * n + i] -= 1.0;
    }
    det_in_place(&mut a, n)
}

fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    let mut swap_sign = 1.0_f64;
    let mut prod = 1.0_f64;
    let mut log_abs = 0.0_f64;
    let mut sign = 1.0_f64;
    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if a[i * n + k].abs() > a[piv * n + k].abs() {
                piv = i;
            }
        }
        let pivot = a[piv * n + k];
        if pivot == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in k..n {
                a.swap(k * n + j, piv * n + j);
            }
            swap_sign = -swap_sign;
        }
        prod *= pivot;
        log_abs += pivot.abs().ln();
        sign *= pivot.signum();
        for i in (k + 1)..n {
            let f = a[i * n + k] / pivot;
            for j in (k + 1)..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    let det = swap_sign * prod;
    if det.is_finite() && det != 0.0 {
        det
    } else {
        // magnitude clamped into f64 range; only the sign matters out here
        swap_sign * sign * log_abs.clamp(-700.0, 700.0).exp()
    }
}

/// det(M(b) - I) for the given potential and trial decay rate.
pub fn char_residual(pot: &DeltaPotential, b: f64) -> f64 {
    CharacteristicSystem::new(pot, b).residual()
}

/// Scan parameters with the library defaults: ceiling above the deepest
/// possible state and a step fine enough not to straddle two roots.
#[derive(Debug, Clone, Copy)]
pub struct ScanParams {
    pub b_max: f64,
    pub step: f64,
    pub tol: f64,
}

impl ScanParams {
    pub fn defaults_for(pot: &DeltaPotential) -> Self {
        let tol: f64 = 1e-12;
        let b_max = pot.strength_abs_sum() / 2.0 + 1.0;
        let step = (tol * 1e6).min(b_max / 1000.0);
        Self { b_max, step, tol }
    }
}

/// Non-fatal findings produced while scanning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanWarning {
    /// |det(M-I)| dipped below [`DEGENERATE_RESIDUAL_TOL`] without changing
    /// sign: two roots closer than the scan step, typically a nearly
    /// degenerate even/odd pair of well-separated wells.
    DegeneratePairSuspected { b: f64, residual: f64 },
}

impl std::fmt::Display for ScanWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanWarning::DegeneratePairSuspected { b, residual } => write!(
                f,
                "suspected degenerate root pair near b = {b} (|residual| = {residual:.3e} without sign change); decrease the scan step to resolve it"
            ),
        }
    }
}

/// Outcome of [`scan_bound_states`]: states sorted by energy ascending plus
/// any degeneracy warnings.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub states: Vec<BoundState>,
    pub warnings: Vec<ScanWarning>,
}

/// Finds all bound states with decay rates in (tol, b_max] by stepping the
/// characteristic residual, bisecting every sign change to |Δb| <= tol, and
/// extracting normalized null-space coefficients at each root.
pub fn scan_bound_states(
    pot: &DeltaPotential,
    b_max: f64,
    step: f64,
    tol: f64,
) -> Result<ScanResult, NdeltaError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(NdeltaError::InvalidTolerance(tol));
    }
    if !(step.is_finite() && step > 0.0) || step >= b_max {
        return Err(NdeltaError::InvalidStep { step, b_max });
    }
    let required = pot.attractive_strength_sum() / 2.0 + step;
    if !(b_max.is_finite() && b_max >= required) {
        return Err(NdeltaError::ScanCeilingTooLow { b_max, required });
    }
    Ok(scan_range(pot, tol, b_max, step, tol))
}

/// Scan driver over an arbitrary window [b_lo, b_hi]; b_lo must be > 0.
fn scan_range(pot: &DeltaPotential, b_lo: f64, b_hi: f64, step: f64, tol: f64) -> ScanResult {
    let residual = |b: f64| char_residual(pot, b);
    let sign_of = |r: f64| -> i8 {
        if r == 0.0 {
            0
        } else if r > 0.0 {
            1
        } else {
            -1
        }
    };

    let mut roots: Vec<f64> = Vec::new();
    let mut warnings: Vec<ScanWarning> = Vec::new();

    let mut b_prev = b_lo;
    let mut r_prev = residual(b_prev);
    if r_prev == 0.0 {
        roots.push(b_prev);
    }
    // sliding window of |residual| for tangency detection
    let mut window: [(f64, f64); 3] = [(b_prev, r_prev); 3];
    let mut filled = 1usize;

    let mut k = 1u64;
    loop {
        let b = (b_lo + k as f64 * step).min(b_hi);
        let r = residual(b);
        match (sign_of(r_prev), sign_of(r)) {
            (sp, sc) if sp * sc == -1 => {
                let root = bisect(residual, b_prev, b, tol).unwrap_or(0.5 * (b_prev + b));
                roots.push(root);
            }
            (_, 0) => roots.push(b),
            _ => {}
        }

        window.rotate_left(1);
        window[2] = (b, r);
        if filled < 3 {
            filled += 1;
        } else {
            let (s0, s1, s2) = (sign_of(window[0].1), sign_of(window[1].1), sign_of(window[2].1));
            let (a0, a1, a2) = (window[0].1.abs(), window[1].1.abs(), window[2].1.abs());
            if s0 == s1 && s1 == s2 && s1 != 0 && a1 <= a0 && a1 <= a2 && a1 < DEGENERATE_RESIDUAL_TOL
            {
                warnings.push(ScanWarning::DegeneratePairSuspected {
                    b: window[1].0,
                    residual: a1,
                });
            }
        }

        if b >= b_hi {
            break;
        }
        b_prev = b;
        r_prev = r;
        k += 1;
    }

    let mut states: Vec<BoundState> = Vec::with_capacity(roots.len());
    for b in roots {
        let system = CharacteristicSystem::new(pot, b);
        let coeffs = system.null_direction();
        let Ok(raw) = BoundState::new(b, coeffs, Parity::None) else {
            continue; // null direction degenerate to zero; skip
        };
        let Ok(normalized) = normalize(&raw, pot) else {
            continue;
        };
        let parity = parity_classify(&normalized, pot, PARITY_TOL);
        states.push(normalized.with_parity(parity));
    }
    states.sort_by(|p, q| p.energy().total_cmp(&q.energy()));
    ScanResult { states, warnings }
}

/// Evaluates the reconstructed eigenfunction
/// phi(x) = sum_j (a_j / 2b) c_j e^{-b |x - x_j|}.
pub fn reconstruct(state: &BoundState, pot: &DeltaPotential, x: f64) -> f64 {
    let wells = pot.wells();
    assert_eq!(state.coeffs().len(), wells.len(), "state does not match potential");
    let b = state.b();
    wells
        .iter()
        .zip(state.coeffs())
        .map(|(w, &c)| w.strength / (2.0 * b) * c * (-b * (x - w.position).abs()).exp())
        .sum()
}

/// L2 norm squared of the reconstruction, using the closed-form overlap
/// integral of two exponentials e^{-b|x-xi|}, e^{-b|x-xj|}:
/// e^{-b d}(d + 1/b) with d = |xi - xj|.
pub fn norm_squared(state: &BoundState, pot: &DeltaPotential) -> f64 {
    let wells = pot.wells();
    assert_eq!(state.coeffs().len(), wells.len(), "state does not match potential");
    let b = state.b();
    let weights: Vec<f64> = wells
        .iter()
        .zip(state.coeffs())
        .map(|(w, &c)| w.strength * c / (2.0 * b))
        .collect();
    let mut total = 0.0;
    for (i, wi) in weights.iter().enumerate() {
        for (j, wj) in weights.iter().enumerate() {
            let d = (wells[i].position - wells[j].position).abs();
            total += wi * wj * (-b * d).exp() * (d + 1.0 / b);
        }
    }
    total
}

/// Rescales the coefficients so the reconstructed eigenfunction has unit L2
/// norm, with the sign fixed so the first nonzero coefficient is positive.
pub fn normalize(state: &BoundState, pot: &DeltaPotential) -> Result<BoundState, NdeltaError> {
    let norm2 = norm_squared(state, pot);
    if !(norm2.is_finite() && norm2 > 0.0) {
        return Err(NdeltaError::ZeroNorm);
    }
    let mut scale = 1.0 / norm2.sqrt();
    if let Some(&first) = state.coeffs().iter().find(|&&c| c != 0.0) {
        if first < 0.0 {
            scale = -scale;
        }
    }
    let coeffs = state.coeffs().iter().map(|&c| c * scale).collect();
    Ok(state.with_coeffs(coeffs))
}

/// Classifies the state under reflection about the layout centroid: even or
/// odd when the reflected coefficient sequence matches coeffs or -coeffs
/// within `tol` (relative to the largest coefficient), none otherwise or for
/// asymmetric layouts.
pub fn parity_classify(state: &BoundState, pot: &DeltaPotential, tol: f64) -> Parity {
    if state.coeffs().len() != pot.len() || !pot.is_mirror_symmetric(tol) {
        return Parity::None;
    }
    let coeffs = state.coeffs();
    let scale = coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let bound = tol * scale;
    let n = coeffs.len();
    let even = (0..n).all(|i| (coeffs[i] - coeffs[n - 1 - i]).abs() <= bound);
    if even {
        return Parity::Even;
    }
    let odd = (0..n).all(|i| (coeffs[i] + coeffs[n - 1 - i]).abs() <= bound);
    if odd {
        return Parity::Odd;
    }
    Parity::None
}
