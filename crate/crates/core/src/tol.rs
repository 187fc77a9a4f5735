//! Numeric tolerances shared by the floating-point checks.

/// Zero test for pairings of dual vectors with roots.
pub const ZERO: f64 = 1e-9;

/// Lower bound for quantities asserted to be nonzero.
pub const NONZERO: f64 = 1e-6;

/// Jacobi sweep convergence threshold on off-diagonal mass.
pub const JACOBI: f64 = 1e-12;

/// Geodesic circles orthogonal to the unit circle.
pub const ORTHOGONAL: f64 = 1e-6;
