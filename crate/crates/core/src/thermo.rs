//! Thermodynamic readings of BI coherence: extractable work, Hamiltonian
//! pinching and asymptotic distillation.

use serde::Serialize;

use crate::coherence::bi_coherence;
use crate::entropy::von_neumann;
use crate::error::{QcohError, Result};
use crate::linalg::{hermitian_eigen, hermiticity_defect, CMatrix};
use crate::qstate::{check_dim, DensityMatrix};
use crate::tol;

/// Boltzmann constant, J/K (SI exact).
pub const K_B: f64 = 1.380649e-23;

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    mat: CMatrix,
}

impl Hamiltonian {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(QcohError::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        let deviation = hermiticity_defect(&mat);
        if deviation > tol::STATE {
            return Err(QcohError::NotHermitian { deviation, tol: tol::STATE });
        }
        Ok(Hamiltonian { mat: crate::linalg::hermitize(&mat) })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Projectors onto the eigenspaces, grouping energies that agree to a
    /// relative tolerance of `1e-9`.
    pub fn eigenprojectors(&self) -> Vec<(f64, CMatrix)> {
        let (vals, vecs) = hermitian_eigen(&self.mat);
        let scale = vals.iter().fold(1.0f64, |m, e| m.max(e.abs()));
        let mut out: Vec<(f64, CMatrix)> = Vec::new();
        for (k, &e) in vals.iter().enumerate() {
            let v = vecs.column(k);
            let proj = v * v.adjoint();
            match out.last_mut() {
                Some((e0, p)) if (*e0 - e).abs() <= tol::ENERGY * scale => *p += proj,
                _ => out.push((e, proj)),
            }
        }
        out
    }
}

/// Unit convention for work values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WorkUnits {
    /// `k_B T` times a coherence in bits, exactly as `W = k_B T C(rho)`.
    #[default]
    BitsKT,
    /// Physical joules: `k_B T ln 2` per bit.
    Joules,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorkResult {
    pub value: f64,
    pub units: WorkUnits,
}

fn scale(temperature: f64, units: WorkUnits) -> Result<f64> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(QcohError::NonpositiveTemperature { temperature });
    }
    Ok(match units {
        WorkUnits::BitsKT => K_B * temperature,
        WorkUnits::Joules => K_B * temperature * std::f64::consts::LN_2,
    })
}

/// `W = k_B T (log2 d - S(rho)) = k_B T C(rho)`.
pub fn extractable_work(rho: &DensityMatrix, temperature: f64, units: WorkUnits) -> Result<WorkResult> {
    Ok(WorkResult { value: scale(temperature, units)? * bi_coherence(rho), units })
}

/// `sum_k P_k rho P_k` over the eigenspace projectors of `h`.
pub fn hamiltonian_pinch(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    check_dim(h.dim(), rho.dim())?;
    let out =
        h.eigenprojectors().iter().fold(CMatrix::zeros(rho.dim(), rho.dim()), |acc, (_, p)| acc + p * rho.matrix() * p);
    Ok(DensityMatrix::from_trusted(out))
}

/// Work from the coherence that pinching removes: `k_B T (S(sigma^H) - S(rho))`.
pub fn coherence_to_work(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    temperature: f64,
    units: WorkUnits,
) -> Result<WorkResult> {
    let k = scale(temperature, units)?;
    let pinched = hamiltonian_pinch(rho, h)?;
    let gain = tol::clamp_small_negative(von_neumann(&pinched) - von_neumann(rho), tol::IDENTITY);
    Ok(WorkResult { value: k * gain, units })
}

/// Asymptotic rate `C(rho)` of maximally coherent qubits per copy and the
/// (unfloored) count from `n` copies.
pub fn distillable_pure_count(rho: &DensityMatrix, n: u64) -> (f64, f64) {
    let rate = bi_coherence(rho);
    (rate, rate * n as f64)
}
