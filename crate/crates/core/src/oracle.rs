//! Independent finite-difference verification.
//!
//! Discretizes -(1/2) d^2/dx^2 - sum_j a_j delta(x - x_j) on a uniform grid
//! (each delta becomes an on-site potential -a_j/(2h) at the nearest node)
//! and extracts the lowest eigenvalues of the resulting symmetric
//! tridiagonal matrix by Sturm-sequence bisection. Nothing here touches the
//! exponential-superposition machinery, so agreement with the scan solver is
//! a genuine cross-check between unrelated discretizations.

use crate::model::DeltaPotential;
use crate::ndelta::{self, NdeltaError};
use serde::Serialize;

/// Absolute eigenvalue tolerance used by [`compare`]; far below the
/// discretization error of any sensible grid.
const EIGENVALUE_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("grid needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("padding must be positive and finite, got {0}")]
    InvalidPadding(f64),
    #[error("grid too coarse: wells at {x1} and {x2} snap to the same node (h = {h})")]
    GridTooCoarse { x1: f64, x2: f64, h: f64 },
    #[error("requested {count} eigenvalues from an {n}-point grid")]
    CountExceedsSize { count: usize, n: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("bound-state scan failed: {0}")]
    Scan(#[from] NdeltaError),
}

/// Symmetric tridiagonal discretization of the Hamiltonian on
/// [x_lo, x_hi] with zero boundary values just outside the ends.
#[derive(Debug, Clone)]
pub struct GridHamiltonian {
    h: f64,
    n: usize,
    x_lo: f64,
    x_hi: f64,
    diagonal: Vec<f64>,
    off_diagonal: f64,
}

/// Builds the grid Hamiltonian: domain [min x_j - padding, max x_j + padding],
/// diagonal 1/h^2 - a_j/(2h) at the node nearest each well and 1/h^2
/// elsewhere, constant off-diagonal -1/(2h^2).
pub fn build_grid(
    pot: &DeltaPotential,
    padding: f64,
    n: usize,
) -> Result<GridHamiltonian, OracleError> {
    if n < 3 {
        return Err(OracleError::TooFewPoints(n));
    }
    if !(padding.is_finite() && padding > 0.0) {
        return Err(OracleError::InvalidPadding(padding));
    }
    let (min_x, max_x) = pot.span();
    let x_lo = min_x - padding;
    let x_hi = max_x + padding;
    let h = (x_hi - x_lo) / (n - 1) as f64;

    let mut diagonal = vec![1.0 / (h * h); n];
    let mut occupied: Vec<Option<f64>> = vec![None; n];
    for well in pot.wells() {
        let idx = (((well.position - x_lo) / h).round() as usize).min(n - 1);
        if let Some(other) = occupied[idx] {
            return Err(OracleError::GridTooCoarse { x1: other, x2: well.position, h });
        }
        occupied[idx] = Some(well.position);
        diagonal[idx] -= well.strength / (2.0 * h);
    }
    Ok(GridHamiltonian { h, n, x_lo, x_hi, diagonal, off_diagonal: -1.0 / (2.0 * h * h) })
}

impl GridHamiltonian {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x_lo, self.x_hi)
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    /// Number of eigenvalues strictly below `x`, from the sign count of the
    /// LDL^T pivots (Sturm sequence).
    pub fn sturm_count(&self, x: f64) -> usize {
        let e2 = self.off_diagonal * self.off_diagonal;
        // guard against an exactly-zero pivot poisoning the recurrence
        let pivmin = f64::MIN_POSITIVE.max(e2 * f64::MIN_POSITIVE);
        let mut count = 0;
        let mut d = 1.0;
        for (i, &di) in self.diagonal.iter().enumerate() {
            d = if i == 0 { di - x } else { di - x - e2 / d };
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `count` smallest eigenvalues, each bracketed by Gershgorin bounds
    /// and bisected to absolute tolerance `tol`; non-decreasing.
    pub fn lowest_eigenvalues(&self, count: usize, tol: f64) -> Result<Vec<f64>, OracleError> {
        if count > self.n {
            return Err(OracleError::CountExceedsSize { count, n: self.n });
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(OracleError::InvalidTolerance(tol));
        }
        let radius = 2.0 * self.off_diagonal.abs();
        let hi_global = self.diagonal.iter().fold(f64::MIN, |m, &d| m.max(d)) + radius;
        let mut lo_floor = self.diagonal.iter().fold(f64::MAX, |m, &d| m.min(d)) - radius;

        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let (mut lo, mut hi) = (lo_floor, hi_global);
            for _ in 0..200 {
                if hi - lo <= tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if self.sturm_count(mid) > i {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push(0.5 * (lo + hi));
            lo_floor = lo; // eigenvalues are ordered; never search below this
        }
        Ok(out)
    }
}

/// Grid resolution knobs for [`compare`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridParams {
    pub h: f64,
    pub padding: f64,
}

impl GridParams {
    /// Defaults: padding 25/b_expected (b_expected = half the total |a|),
    /// spacing at most 5e-3 and at most a tenth of the closest well spacing.
    pub fn defaults_for(pot: &DeltaPotential) -> Self {
        let b_expected = pot.strength_abs_sum() / 2.0;
        let padding = if b_expected > 0.0 { 25.0 / b_expected } else { 25.0 };
        let h = match pot.min_spacing() {
            Some(l_min) => (l_min / 10.0).min(5e-3),
            None => 5e-3,
        };
        Self { h, padding }
    }
}

/// One spectrum comparison row: a scan-solver energy paired with the nearest
/// negative grid eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub index: usize,
    pub fourier_b: f64,
    pub fourier_energy: f64,
    pub oracle_energy: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Side-by-side spectrum report from the two independent solvers.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub h: f64,
    pub padding: f64,
    pub n: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub fourier_count: usize,
    pub oracle_negative_count: usize,
    pub rows: Vec<OracleRow>,
}

impl OracleReport {
    pub fn max_rel_error(&self) -> Option<f64> {
        self.rows.iter().map(|r| r.rel_error).fold(None, |m, e| Some(m.map_or(e, |v: f64| v.max(e))))
    }
}

/// Runs both solvers on the same potential and pairs their spectra. `count`
/// is the number of grid eigenvalues to extract (defaults to the number of
/// scan states, at least one).
pub fn compare(
    pot: &DeltaPotential,
    count: Option<usize>,
    params: GridParams,
) -> Result<OracleReport, OracleError> {
    let b_max = pot.strength_abs_sum() / 2.0 + 1.0;
    let step = (b_max / 5000.0).min(1.0);
    let states = ndelta::scan_bound_states(pot, b_max, step, 1e-12)?.states;

    let (min_x, max_x) = pot.span();
    let span = (max_x - min_x) + 2.0 * params.padding;
    let n = ((span / params.h).ceil() as usize + 1).max(3);
    let grid = build_grid(pot, params.padding, n)?;

    let count = count.unwrap_or_else(|| states.len().max(1));
    let eigenvalues = grid.lowest_eigenvalues(count, EIGENVALUE_TOL)?;
    let negatives: Vec<f64> = eigenvalues.iter().copied().filter(|&e| e < 0.0).collect();

    let rows = states
        .iter()
        .enumerate()
        .filter_map(|(index, st)| {
            let fe = st.energy();
            let oracle_energy = negatives
                .iter()
                .copied()
                .min_by(|p, q| (p - fe).abs().total_cmp(&(q - fe).abs()))?;
            let abs_error = (fe - oracle_energy).abs();
            Some(OracleRow {
                index,
                fourier_b: st.b(),
                fourier_energy: fe,
                oracle_energy,
                abs_error,
                rel_error: abs_error / fe.abs(),
            })
        })
        .collect();

    Ok(OracleReport {
        h: grid.h(),
        padding: params.padding,
        n: grid.size(),
        x_lo: grid.domain().0,
        x_hi: grid.domain().1,
        fourier_count: states.len(),
        oracle_negative_count: grid.sturm_count(0.0),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Well;

    fn single(a: f64) -> DeltaPotential {
        DeltaPotential::single(a).unwrap()
    }

    fn pair(a: f64, l: f64) -> DeltaPotential {
        DeltaPotential::symmetric_pair(a, l).unwrap()
    }

    #[test]
    fn grid_carries_one_loaded_diagonal_entry() {
        let grid = build_grid(&single(2.0), 20.0, 4001).unwrap();
        let h = grid.h();
        assert!((h - 0.01).abs() < 1e-15);
        let plain = 1.0 / (h * h);
        let loaded: Vec<usize> = (0..grid.size())
            .filter(|&i| grid.diagonal()[i] != plain)
            .collect();
        assert_eq!(loaded, vec![2000]); // x = 0 sits exactly mid-grid
        assert!((grid.diagonal()[2000] - (plain - 2.0 / (2.0 * h))).abs() < 1e-9);
        assert!((grid.off_diagonal() + 1.0 / (2.0 * h * h)).abs() < 1e-9);
    }

    #[test]
    fn coarse_grid_snap_collision_is_rejected() {
        let err = build_grid(&pair(2.0, 1.0), 2.0, 3).unwrap_err();
        assert!(matches!(err, OracleError::GridTooCoarse { .. }));
    }

    #[test]
    fn repulsive_wells_keep_the_diagonal_positive() {
        let grid = build_grid(&pair(-1.0, 1.0), 10.0, 2001).unwrap();
        assert!(grid.diagonal().iter().all(|&d| d > 0.0));
    }

    #[test]
    fn grid_construction_rejects_bad_arguments() {
        assert!(matches!(build_grid(&single(2.0), 20.0, 2), Err(OracleError::TooFewPoints(2))));
        assert!(matches!(build_grid(&single(2.0), -1.0, 100), Err(OracleError::InvalidPadding(_))));
        let grid = build_grid(&single(2.0), 20.0, 101).unwrap();
        assert!(matches!(
            grid.lowest_eigenvalues(102, 1e-10),
            Err(OracleError::CountExceedsSize { .. })
        ));
        assert!(matches!(
            grid.lowest_eigenvalues(1, 0.0),
            Err(OracleError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn single_well_ground_state_energy() {
        let grid = build_grid(&single(2.0), 20.0, 8001).unwrap();
        let eigs = grid.lowest_eigenvalues(1, 1e-10).unwrap();
        assert!((eigs[0] + 0.5).abs() < 5e-3, "E = {}", eigs[0]);
    }

    #[test]
    fn double_well_finds_both_states() {
        // decay rates of the a=2, L=1 pair, frozen from bisection of the
        // quantization condition
        let b_even = 1.1088575528785451;
        let b_odd = 0.79681213002002;
        let grid = build_grid(&pair(2.0, 1.0), 12.5, 5401).unwrap();
        let eigs = grid.lowest_eigenvalues(2, 1e-10).unwrap();
        assert!(eigs[0] < 0.0 && eigs[1] < 0.0);
        assert!((eigs[0] + b_even * b_even / 2.0).abs() / (b_even * b_even / 2.0) < 1e-2);
        assert!((eigs[1] + b_odd * b_odd / 2.0).abs() / (b_odd * b_odd / 2.0) < 1e-2);
    }

    #[test]
    fn free_grid_spectrum_is_positive() {
        // zero-strength well leaves the kinetic matrix untouched
        let pot = DeltaPotential::new(vec![Well { strength: 0.0, position: 0.0 }]).unwrap();
        let grid = build_grid(&pot, 10.0, 1001).unwrap();
        let eigs = grid.lowest_eigenvalues(1, 1e-10).unwrap();
        assert!(eigs[0] > 0.0);
        assert_eq!(grid.sturm_count(0.0), 0);
    }

    #[test]
    fn eigenvalues_are_ordered_and_sturm_consistent() {
        let grid = build_grid(&pair(2.0, 1.0), 12.5, 2001).unwrap();
        let eigs = grid.lowest_eigenvalues(5, 1e-10).unwrap();
        for w in eigs.windows(2) {
            assert!(w[0] <= w[1]);
        }
        for (i, &lambda) in eigs.iter().enumerate() {
            assert_eq!(grid.sturm_count(lambda - 1e-8), i, "below eigenvalue {i}");
            assert!(grid.sturm_count(lambda + 1e-8) > i, "above eigenvalue {i}");
        }
    }

    #[test]
    fn refinement_shrinks_the_ground_state_error() {
        // halving h must cut the error roughly quadratically; accept any
        // ratio comfortably below 1 to stay robust to the delta snapping
        let exact = -0.5;
        let err_at = |n: usize| {
            let grid = build_grid(&single(2.0), 20.0, n).unwrap();
            (grid.lowest_eigenvalues(1, 1e-10).unwrap()[0] - exact).abs()
        };
        let coarse = err_at(4001); // h = 1e-2
        let fine = err_at(8001); // h = 5e-3
        let ratio = fine / coarse;
        assert!((0.2..=0.7).contains(&ratio), "ratio = {ratio} ({coarse} -> {fine})");
    }

    #[test]
    fn compare_pairs_the_two_spectra() {
        let report = compare(&single(2.0), None, GridParams::defaults_for(&single(2.0))).unwrap();
        assert_eq!(report.fourier_count, 1);
        assert_eq!(report.oracle_negative_count, 1);
        assert_eq!(report.rows.len(), 1);
        assert!(report.rows[0].rel_error < 1e-2, "rel error {}", report.rows[0].rel_error);

        let report = compare(&pair(2.0, 1.0), None, GridParams::defaults_for(&pair(2.0, 1.0))).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.max_rel_error().unwrap() < 1e-2);
    }

    #[test]
    fn compare_on_repulsive_wells_reports_nothing() {
        let pot = pair(-1.0, 1.0);
        let report = compare(&pot, None, GridParams::defaults_for(&pot)).unwrap();
        assert_eq!(report.fourier_count, 0);
        assert_eq!(report.oracle_negative_count, 0);
        assert!(report.rows.is_empty());
        assert_eq!(report.max_rel_error(), None);
    }
}
