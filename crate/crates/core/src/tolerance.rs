//! Fixed numerical tolerances.
//!
//! Validation tolerances are not configurable. The reporting tolerance used by
//! the command-line tool defaults to [`REPORT`].

/// Max entrywise asymmetry accepted for a Hermitian input.
pub const HERMITIAN: f64 = 1e-9;

/// Eigenvalues in `[-PSD_CLIP, 0)` are treated as zero.
pub const PSD_CLIP: f64 = 1e-10;

/// Entrywise tolerance on `Σ X_i = I`.
pub const COMPLETENESS: f64 = 1e-8;

/// Entrywise tolerance on `X² = X`.
pub const PROJECTIVE: f64 = 1e-8;

/// Tolerance on `‖ψ‖ = 1` and `tr ρ = 1`.
pub const NORMALIZATION: f64 = 1e-9;

/// Probabilities above `-PROBABILITY_CLIP` are clipped to zero.
pub const PROBABILITY_CLIP: f64 = 1e-12;

/// A pair `(i, j)` enters the state-dependent max only if both squared
/// denominators exceed this.
pub const ADMISSIBLE: f64 = 1e-12;

/// Orthonormality tolerance for isometry inputs.
pub const ISOMETRY: f64 = 1e-9;

/// Residual columns below this norm are dropped during isometry completion.
pub const COMPLETION_DROP: f64 = 1e-8;

/// Operators whose largest entry is below this are treated as zero outcomes.
pub const ZERO_OPERATOR: f64 = 1e-12;

/// Default slack allowed on every asserted inequality.
pub const REPORT: f64 = 1e-9;
