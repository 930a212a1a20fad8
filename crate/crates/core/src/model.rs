//! Domain types for delta-well potentials and the unit reduction that maps
//! physical constants onto the dimensionless solver parameters.
//!
//! All solvers in this crate work in natural units (hbar = m = 1), where a
//! well of physical strength alpha becomes `a = 2 m alpha / hbar^2` and a
//! bound state of energy E has decay rate `b = sqrt(2 m |E| / hbar^2)`, so
//! that `E = -b^2 / 2`. Physical units enter only through [`PhysicalSpec`]
//! and leave only through [`energy_physical`].

use serde::{Deserialize, Serialize};

/// Absolute tolerance below which two well positions are treated as
/// coincident and merged (strengths add).
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),
    #[error("hbar must be positive and finite, got {0}")]
    InvalidHbar(f64),
    #[error("potential must contain at least one well")]
    EmptyWells,
    #[error("non-finite {field}: {value}")]
    NonFinite { field: &'static str, value: f64 },
    #[error("decay rate b must be positive and finite, got {0}")]
    InvalidDecayRate(f64),
    #[error("coefficients must not be all zero")]
    ZeroCoefficients,
    #[error("invalid potential JSON: {0}")]
    Json(String),
}

/// A single delta well in natural units: strength `a` (1/length) at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Well {
    pub strength: f64,
    pub position: f64,
}

/// A single delta well in physical units: strength `alpha` (energy·length)
/// at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalWell {
    pub alpha: f64,
    pub position: f64,
}

/// Physical problem statement before unit reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSpec {
    mass: f64,
    hbar: f64,
    wells: Vec<PhysicalWell>,
}

impl PhysicalSpec {
    pub fn new(mass: f64, hbar: f64, wells: Vec<PhysicalWell>) -> Result<Self, ModelError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(ModelError::InvalidMass(mass));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(ModelError::InvalidHbar(hbar));
        }
        if wells.is_empty() {
            return Err(ModelError::EmptyWells);
        }
        for w in &wells {
            if !w.alpha.is_finite() {
                return Err(ModelError::NonFinite { field: "alpha", value: w.alpha });
            }
            if !w.position.is_finite() {
                return Err(ModelError::NonFinite { field: "position", value: w.position });
            }
        }
        Ok(Self { mass, hbar, wells })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn wells(&self) -> &[PhysicalWell] {
        &self.wells
    }
}

/// A collection of delta wells in natural units, sorted by position with
/// coincident positions merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaPotential {
    wells: Vec<Well>,
}

impl DeltaPotential {
    /// Builds a potential from raw wells: sorts by position and merges wells
    /// closer than [`MERGE_TOL`] by summing their strengths.
    pub fn new(wells: Vec<Well>) -> Result<Self, ModelError> {
        if wells.is_empty() {
            return Err(ModelError::EmptyWells);
        }
        for w in &wells {
            if !w.strength.is_finite() {
                return Err(ModelError::NonFinite { field: "strength", value: w.strength });
            }
            if !w.position.is_finite() {
                return Err(ModelError::NonFinite { field: "position", value: w.position });
            }
        }
        let mut sorted = wells;
        sorted.sort_by(|p, q| p.position.total_cmp(&q.position));
        let mut merged: Vec<Well> = Vec::with_capacity(sorted.len());
        for w in sorted {
            match merged.last_mut() {
                Some(last) if (w.position - last.position).abs() <= MERGE_TOL => {
                    last.strength += w.strength;
                }
                _ => merged.push(w),
            }
        }
        Ok(Self { wells: merged })
    }

    /// Convenience constructor for a single well of strength `a` at the origin.
    pub fn single(a: f64) -> Result<Self, ModelError> {
        Self::new(vec![Well { strength: a, position: 0.0 }])
    }

    /// Convenience constructor for two wells of equal strength `a` at `-l` and `+l`.
    pub fn symmetric_pair(a: f64, l: f64) -> Result<Self, ModelError> {
        Self::new(vec![
            Well { strength: a, position: -l },
            Well { strength: a, position: l },
        ])
    }

    pub fn wells(&self) -> &[Well] {
        &self.wells
    }

    pub fn len(&self) -> usize {
        self.wells.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one well by construction
    }

    /// Sum of the positive strengths; an upper bound on 2b for any bound state.
    pub fn attractive_strength_sum(&self) -> f64 {
        self.wells.iter().map(|w| w.strength.max(0.0)).sum()
    }

    /// Sum of |a_j|, used for the default scan ceiling.
    pub fn strength_abs_sum(&self) -> f64 {
        self.wells.iter().map(|w| w.strength.abs()).sum()
    }

    /// Smallest gap between adjacent wells, if there is more than one well.
    pub fn min_spacing(&self) -> Option<f64> {
        self.wells
            .windows(2)
            .map(|p| p[1].position - p[0].position)
            .min_by(f64::total_cmp)
    }

    /// Geometric span [min position, max position].
    pub fn span(&self) -> (f64, f64) {
        (
            self.wells.first().expect("non-empty").position,
            self.wells.last().expect("non-empty").position,
        )
    }

    /// True when the layout is mirror-symmetric about its centroid: positions
    /// reflect onto positions and strengths match, all within `tol`.
    pub fn is_mirror_symmetric(&self, tol: f64) -> bool {
        let n = self.wells.len();
        let centroid = self.wells.iter().map(|w| w.position).sum::<f64>() / n as f64;
        (0..n).all(|i| {
            let j = n - 1 - i;
            let reflected = 2.0 * centroid - self.wells[j].position;
            (self.wells[i].position - reflected).abs() <= tol
                && (self.wells[i].strength - self.wells[j].strength).abs() <= tol
        })
    }
}

/// Maps a physical spec onto natural-units well parameters, a_j = 2 m alpha_j / hbar^2.
pub fn to_natural(spec: &PhysicalSpec) -> DeltaPotential {
    let scale = 2.0 * spec.mass / (spec.hbar * spec.hbar);
    let wells = spec
        .wells
        .iter()
        .map(|w| Well { strength: scale * w.alpha, position: w.position })
        .collect();
    DeltaPotential::new(wells).expect("validated by PhysicalSpec")
}

/// Parity of an eigenfunction under reflection about the layout centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
            Parity::None => write!(f, "none"),
        }
    }
}

/// A bound state in natural units: decay rate `b`, energy `-b^2/2`, and the
/// node coefficients c_j = phi(x_j), one per well.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    b: f64,
    energy: f64,
    coeffs: Vec<f64>,
    parity: Parity,
}

impl BoundState {
    pub fn new(b: f64, coeffs: Vec<f64>, parity: Parity) -> Result<Self, ModelError> {
        if !(b.is_finite() && b > 0.0) {
            return Err(ModelError::InvalidDecayRate(b));
        }
        for &c in &coeffs {
            if !c.is_finite() {
                return Err(ModelError::NonFinite { field: "coefficient", value: c });
            }
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(ModelError::ZeroCoefficients);
        }
        Ok(Self { b, energy: -b * b / 2.0, coeffs, parity })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Energy in natural units, always exactly -b^2/2.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub(crate) fn with_coeffs(&self, coeffs: Vec<f64>) -> Self {
        Self { b: self.b, energy: self.energy, coeffs, parity: self.parity }
    }

    pub(crate) fn with_parity(&self, parity: Parity) -> Self {
        Self { b: self.b, energy: self.energy, coeffs: self.coeffs.clone(), parity }
    }
}

/// Converts a natural-units bound state back to the physical energy
/// -hbar^2 b^2 / (2 m) of the given spec.
pub fn energy_physical(state: &BoundState, spec: &PhysicalSpec) -> f64 {
    -spec.hbar * spec.hbar * state.b * state.b / (2.0 * spec.mass)
}

/// JSON input accepted by the CLI and library consumers: either physical
/// `{"mass": .., "hbar": .., "wells": [{"alpha": .., "x": ..}]}` or natural
/// `{"wells": [{"a": .., "x": ..}]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PotentialInput {
    Physical {
        mass: f64,
        hbar: f64,
        wells: Vec<PhysicalWellInput>,
    },
    Natural {
        wells: Vec<NaturalWellInput>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalWellInput {
    pub alpha: f64,
    pub x: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NaturalWellInput {
    pub a: f64,
    pub x: f64,
}

impl PotentialInput {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }

    /// Validates and reduces the input to natural units, keeping the physical
    /// spec around when one was given.
    pub fn resolve(&self) -> Result<(DeltaPotential, Option<PhysicalSpec>), ModelError> {
        match self {
            PotentialInput::Physical { mass, hbar, wells } => {
                let spec = PhysicalSpec::new(
                    *mass,
                    *hbar,
                    wells
                        .iter()
                        .map(|w| PhysicalWell { alpha: w.alpha, position: w.x })
                        .collect(),
                )?;
                Ok((to_natural(&spec), Some(spec)))
            }
            PotentialInput::Natural { wells } => {
                let pot = DeltaPotential::new(
                    wells
                        .iter()
                        .map(|w| Well { strength: w.a, position: w.x })
                        .collect(),
                )?;
                Ok((pot, None))
            }
        }
    }
}
