//! Numerical tolerances shared by the library self-checks, the invariant
//! suite and the acceptance tests.

/// Default absolute tolerance on matrix entries.
pub const DEFAULT: f64 = 1e-10;

/// Identities that hold exactly up to rounding (CAR/CCR, `G² = H`, …).
pub const EXACT: f64 = 1e-12;

/// Agreement of two independent routes to the same unitary.
pub const EVOLUTION: f64 = 1e-9;

/// Unitarity of a computed evolution operator.
pub const UNITARITY: f64 = 1e-10;

/// Hermiticity of built generators.
pub const HERMITIAN: f64 = 1e-14;

/// θ matrix model relations.
pub const THETA_MODEL: f64 = 1e-14;

/// Numerically integrated Ib flow against its closed form.
pub const ODE: f64 = 1e-8;

/// Wess–Zumino identities on the margin-4 subspace.
pub const WESS_ZUMINO: f64 = 1e-9;

/// Low-lying Wess–Zumino spectrum, `Λ` against `Λ + 4`.
pub const WZ_CONVERGENCE: f64 = 1e-8;

/// Density-matrix trace and positivity.
pub const DENSITY: f64 = 1e-12;

/// Minimum of the entanglement surface over `φ`.
pub const ENTROPY_EXTREMUM: f64 = 1e-6;

/// Root bracketing of the extremal equation.
pub const ROOT: f64 = 1e-8;

/// Central-difference stationarity of a returned root.
pub const STATIONARY: f64 = 1e-6;

/// Thermal invariance under the Ia flow.
pub const THERMAL_INVARIANCE: f64 = 1e-8;

/// Floating floor added to analytic truncation tails.
pub const TAIL_FLOOR: f64 = 1e-13;

/// KMS condition of a Gibbs state.
pub const KMS: f64 = 1e-8;

/// Lower bound for defects that must be visibly nonzero.
pub const NONZERO_DEFECT: f64 = 0.5;

/// Lower bound for the perturbed-evolution defects of `a` and `b`.
pub const PERTURBED_DEFECT: f64 = 0.1;
