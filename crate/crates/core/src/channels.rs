//! Kraus channels and the bit-flip example.

use serde::Serialize;

use crate::basis::Basis;
use crate::duality::duality_budget;
use crate::error::{QcohError, Result};
use crate::linalg::{identity, max_abs_diff, pauli, CMatrix};
use crate::qstate::{bloch_to_qubit, check_dim, BlochVector, DensityMatrix};
use crate::tol;

/// A CPTP map given by Kraus operators with `sum K^dagger K = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    pub fn new(dim: usize, operators: Vec<CMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(QcohError::IncompleteChannel { deviation: 1.0, tol: tol::CHANNEL });
        }
        let mut acc = CMatrix::zeros(dim, dim);
        for k in &operators {
            if k.shape() != (dim, dim) {
                return Err(QcohError::DimensionMismatch { expected: dim, found: k.nrows().max(k.ncols()) });
            }
            acc += k.adjoint() * k;
        }
        let deviation = max_abs_diff(&acc, &identity(dim));
        if deviation > tol::CHANNEL {
            return Err(QcohError::IncompleteChannel { deviation, tol: tol::CHANNEL });
        }
        Ok(KrausChannel { dim, operators })
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel { dim, operators: vec![identity(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }
}

/// Random channel with `k` Kraus operators: the `d x d` blocks of the first
/// `d` columns of a Haar unitary on `C^{k d}`.
pub fn random_kraus_channel<R: rand::Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> KrausChannel {
    let u = Basis::haar_with(d * k, rng);
    let operators = (0..k).map(|i| u.unitary().view((i * d, 0), (d, d)).into_owned()).collect();
    KrausChannel { dim: d, operators }
}

/// `sum_k K rho K^dagger`.
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel) -> Result<DensityMatrix> {
    check_dim(ch.dim(), rho.dim())?;
    let out = ch.operators.iter().fold(CMatrix::zeros(ch.dim, ch.dim), |acc, k| acc + k * rho.matrix() * k.adjoint());
    Ok(DensityMatrix::from_trusted(out))
}

/// `E0 = sqrt(p) I`, `E1 = sqrt(1-p) X`.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QcohError::ProbabilityOutOfRange { p });
    }
    Ok(KrausChannel { dim: 2, operators: vec![pauli(0).scale(p.sqrt()), pauli(1).scale((1.0 - p).sqrt())] })
}

/// Bloch vector `(1/sqrt 2, 1/sqrt 3, 1/sqrt 6)` of the worked example.
pub fn bitflip_example_input() -> BlochVector {
    BlochVector { x: 0.5f64.sqrt(), y: (1.0f64 / 3.0).sqrt(), z: (1.0f64 / 6.0).sqrt() }
}

/// The example input after `bit_flip(p)`: Bloch `(x, (2p-1) y, (2p-1) z)`.
pub fn bitflip_example_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QcohError::ProbabilityOutOfRange { p });
    }
    let v = bitflip_example_input();
    let s = 2.0 * p - 1.0;
    bloch_to_qubit(BlochVector { x: v.x, y: s * v.y, z: s * v.z })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub wave: f64,
    pub particle: f64,
    pub entanglement: f64,
}

pub fn bitflip_duality_sweep(p_grid: &[f64], b: &Basis) -> Result<Vec<SweepRow>> {
    p_grid
        .iter()
        .map(|&p| {
            let budget = duality_budget(&bitflip_example_state(p)?, b)?;
            Ok(SweepRow { p, wave: budget.wave, particle: budget.particle, entanglement: budget.entanglement })
        })
        .collect()
}
