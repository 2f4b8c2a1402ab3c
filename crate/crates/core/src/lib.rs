//! Basis-independent quantum coherence.
//!
//! Density-matrix numerics for the BI coherence `C(rho) = log2 d - S(rho)`,
//! its exact split against any basis, wave-particle duality budgets,
//! Bell-diagonal coherence/discord/entanglement closed forms and the
//! thermodynamic corollaries. Every quantity is in bits.

pub mod basis;
pub mod channels;
pub mod cli;
pub mod coherence;
pub mod correlations;
pub mod duality;
pub mod entropy;
pub mod error;
pub mod figures;
pub mod io;
pub mod linalg;
pub mod qstate;
pub mod rng;
pub mod thermo;
pub mod tol;
pub mod verify;

pub use basis::Basis;
pub use error::{QcohError, Result};
pub use qstate::{BlochVector, DensityMatrix, PureState};
