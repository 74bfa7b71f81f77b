//! Central tolerance constants.
//!
//! All comparisons are expressed relative to the largest magnitude entry of
//! the data involved, with an absolute floor of [`ABS_FLOOR`].

/// Absolute floor below which differences are treated as zero.
pub const ABS_FLOOR: f64 = 1e-14;

/// Relative slack attributed to a dense Hermitian eigensolve.
pub const EIG_REL: f64 = 1e-11;

/// Hermitian symmetry defect allowed before an input is rejected.
pub const HERMITIAN_REL: f64 = 1e-12;

/// Unitarity defect allowed for basis-rotation inputs.
pub const UNITARY_REL: f64 = 1e-12;

/// Entrywise tolerance for the canonical anticommutation relations.
pub const CAR_TOL: f64 = 1e-12;

/// Slack when normalizing an element onto the unit ball.
pub const BALL_TOL: f64 = 1e-12;

/// Smoothing constant for square-root terms inside optimizers.
pub const SQRT_SMOOTHING: f64 = 1e-9;

/// Tolerance scaled to the magnitude of the quantity under test.
pub fn rel(scale: f64) -> f64 {
    (scale.abs() * EIG_REL).max(ABS_FLOOR)
}
