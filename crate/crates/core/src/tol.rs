//! Numerical tolerances shared across the crate.

/// Hermiticity, trace and PSD acceptance for density matrices.
pub const STATE: f64 = 1e-9;
/// Orthonormality of basis vectors / unitarity.
pub const UNITARY: f64 = 1e-10;
/// Identity checks (sum rules, budgets).
pub const IDENTITY: f64 = 1e-9;
/// Slack for Bloch vector norms.
pub const BLOCH: f64 = 1e-12;
/// Probability vectors: sum tolerance.
pub const PROB_SUM: f64 = 1e-9;
/// Probability vectors: most negative entry tolerated (clamped to zero).
pub const PROB_NEG: f64 = 1e-12;
/// Eigenvalues of sigma below this count as outside its support.
pub const SUPPORT_EIG: f64 = 1e-12;
/// rho-weight on a null direction of sigma that makes S(rho||sigma) infinite.
pub const SUPPORT_WEIGHT: f64 = 1e-10;
/// Channel completeness.
pub const CHANNEL: f64 = 1e-9;
/// Relative grouping tolerance for Hamiltonian eigenvalues.
pub const ENERGY: f64 = 1e-9;

/// Clamp values in `[-tol, 0)` to zero; anything else passes through.
pub(crate) fn clamp_small_negative(x: f64, tol: f64) -> f64 {
    if x < 0.0 && x >= -tol {
        0.0
    } else {
        x
    }
}
