//! Coherence, discord and entanglement of Bell-diagonal two-qubit states.
//!
//! For `rho = (I⊗I + sum_j c_j s_j⊗s_j) / 4` with Bell spectrum `l`:
//!
//! * BI coherence `C = 2 - H(l)`
//! * computational-basis coherence `C^B = 2 - H(l) - f(c3)`
//! * symmetric discord `D = 2 - H(l) - f(max |c_i|)`
//! * relative entropy of entanglement `E = 1 - H2(l_max)` for `l_max >= 1/2`, else 0
//!
//! where `f(c) = sum_{j=1,2} (1 + (-1)^j c)/2 log2(1 + (-1)^j c)`, and these
//! obey `C >= C^B >= D >= E`.
//!
//! [`discord_oracle`] minimizes over product projective measurements by brute
//! force and works for any two-qubit state.

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::Basis;
use crate::coherence::{bi_coherence, rel_ent_coherence};
use crate::entropy::{shannon_raw, von_neumann};
use crate::error::{QcohError, Result};
use crate::linalg::{c64, hermitian_eigenvalues, identity, max_abs_diff, pauli, CMatrix};
use crate::qstate::{check_dim, DensityMatrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellDiagonalParams {
    c: [f64; 3],
}

impl BellDiagonalParams {
    /// Each `c_i` must lie in `[-1, 1]` and the induced state must be PSD.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, v) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
                return Err(QcohError::InvalidArgument(format!("{name} = {v} not in [-1, 1]")));
            }
        }
        let p = BellDiagonalParams { c: [c1, c2, c3] };
        let min = *hermitian_eigenvalues(&p.raw_matrix()).last().unwrap();
        if min < -tol::STATE {
            return Err(QcohError::NotPositive { min_eigenvalue: min, tol: tol::STATE });
        }
        Ok(p)
    }

    pub fn c(&self) -> [f64; 3] {
        self.c
    }

    /// `max |c_i|`.
    pub fn c_max(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    fn raw_matrix(&self) -> CMatrix {
        let mut m = identity(4);
        for j in 0..3 {
            m += pauli(j + 1).kronecker(&pauli(j + 1)).scale(self.c[j]);
        }
        m.scale(0.25)
    }
}

pub fn bell_diagonal(params: &BellDiagonalParams) -> DensityMatrix {
    DensityMatrix::new(params.raw_matrix()).expect("params validated on construction")
}

/// Eigenvalues of the induced state, descending.
pub fn bell_spectrum(params: &BellDiagonalParams) -> Vec<f64> {
    bell_diagonal(params).spectrum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub bi_coherence: f64,
    pub comp_coherence: f64,
    pub discord: f64,
    pub entanglement: f64,
    pub hierarchy_ok: bool,
}

impl CorrelationReport {
    fn new(bi_coherence: f64, comp_coherence: f64, discord: f64, entanglement: f64) -> Self {
        let s = tol::IDENTITY;
        CorrelationReport {
            bi_coherence,
            comp_coherence,
            discord,
            entanglement,
            hierarchy_ok: bi_coherence + s >= comp_coherence
                && comp_coherence + s >= discord
                && discord + s >= entanglement,
        }
    }
}

/// `t log2 t` with the `0 log 0 = 0` limit.
fn xlog2x(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * t.log2()
    }
}

/// `sum_{j=1,2} (1 + (-1)^j c)/2 log2(1 + (-1)^j c)`.
fn measured_term(c: f64) -> f64 {
    // (1±c)/2 log2(1±c) = xlog2x(1±c) / 2
    (xlog2x(1.0 - c) + xlog2x(1.0 + c)) / 2.0
}

/// `1 + l log2 l + (1-l) log2 (1-l)` above the separability threshold `1/2`.
fn entanglement_from_largest(l: f64) -> f64 {
    if l >= 0.5 {
        1.0 + xlog2x(l) + xlog2x(1.0 - l)
    } else {
        0.0
    }
}

/// Closed-form report for a Bell-diagonal state.
pub fn bd_report(params: &BellDiagonalParams) -> CorrelationReport {
    let lambda = bell_spectrum(params);
    let base = 2.0 - shannon_raw(&lambda);
    let clamp = |x: f64| tol::clamp_small_negative(x, tol::IDENTITY);
    let entanglement = clamp(entanglement_from_largest(lambda[0]));
    CorrelationReport::new(
        clamp(base),
        clamp(base - measured_term(params.c[2])),
        clamp(base - measured_term(params.c_max())),
        entanglement,
    )
}

/// Unit vectors covering the upper hemisphere (a projective qubit
/// measurement along `n` equals the one along `-n`): polar angle in
/// `grid_steps` even steps over `[0, pi/2]`, azimuth in `grid_steps` steps
/// over `[0, 2 pi)`, plus the three coordinate axes.
fn hemisphere_grid(grid_steps: usize) -> Vec<[f64; 3]> {
    use std::f64::consts::PI;
    let mut dirs = vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for i in 1..grid_steps {
        let theta = i as f64 * (PI / 2.0) / (grid_steps - 1) as f64;
        for j in 0..grid_steps {
            let phi = j as f64 * 2.0 * PI / grid_steps as f64;
            dirs.push([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
        }
    }
    dirs
}

/// Real Pauli correlation tensor `T[m][n] = Tr(rho s_m ⊗ s_n)`, `m, n = 0..4`.
fn correlation_tensor(rho: &DensityMatrix) -> [[f64; 4]; 4] {
    let mut t = [[0.0; 4]; 4];
    for (m, row) in t.iter_mut().enumerate() {
        for (n, v) in row.iter_mut().enumerate() {
            *v = (rho.matrix() * pauli(m).kronecker(&pauli(n))).trace().re;
        }
    }
    t
}

/// Brute-force symmetric discord of a two-qubit state:
/// `min_{a,b} S(Phi_a ⊗ Phi_b(rho)) - S(rho)` over local projective
/// measurements along grid directions `a`, `b`.
pub fn discord_oracle(rho: &DensityMatrix, grid_steps: usize) -> Result<f64> {
    check_dim(4, rho.dim())?;
    if grid_steps < 2 {
        return Err(QcohError::InvalidArgument(format!("grid_steps must be >= 2, got {grid_steps}")));
    }
    let t = correlation_tensor(rho);
    let dirs = hemisphere_grid(grid_steps);
    let best_per_a: Vec<f64> = dirs
        .par_iter()
        .map(|a| {
            let ra: f64 = (0..3).map(|i| a[i] * t[i + 1][0]).sum();
            let ta: [f64; 3] = std::array::from_fn(|j| (0..3).map(|i| a[i] * t[i + 1][j + 1]).sum());
            dirs.iter()
                .map(|b| {
                    let rb: f64 = (0..3).map(|j| b[j] * t[0][j + 1]).sum();
                    let corr: f64 = (0..3).map(|j| ta[j] * b[j]).sum();
                    let p = [
                        0.25 * (1.0 + ra + rb + corr),
                        0.25 * (1.0 + ra - rb - corr),
                        0.25 * (1.0 - ra + rb - corr),
                        0.25 * (1.0 - ra - rb + corr),
                    ];
                    shannon_raw(&p)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let best = best_per_a.into_iter().fold(f64::INFINITY, f64::min);
    Ok(tol::clamp_small_negative(best - von_neumann(rho), tol::IDENTITY))
}

/// Recover `(c1, c2, c3)` when `rho` is Bell-diagonal.
pub fn as_bell_diagonal(rho: &DensityMatrix) -> Option<BellDiagonalParams> {
    if rho.dim() != 4 {
        return None;
    }
    let t = correlation_tensor(rho);
    let p = BellDiagonalParams::new(t[1][1], t[2][2], t[3][3]).ok()?;
    (max_abs_diff(&p.raw_matrix(), rho.matrix()) <= tol::STATE).then_some(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HierarchyCheck {
    pub c: f64,
    pub c_b: f64,
    pub ordering_ok: bool,
    /// Closed-form four-way report when the input is Bell-diagonal.
    pub bell: Option<CorrelationReport>,
}

/// `C >= C^B` for any state; the discord and entanglement legs are added for
/// Bell-diagonal inputs.
pub fn hierarchy_check(rho: &DensityMatrix, b: &Basis) -> Result<HierarchyCheck> {
    let c = bi_coherence(rho);
    let c_b = rel_ent_coherence(rho, b)?;
    let bell = as_bell_diagonal(rho).map(|p| bd_report(&p));
    let ordering_ok = c + tol::IDENTITY >= c_b && bell.is_none_or(|r| r.hierarchy_ok);
    Ok(HierarchyCheck { c, c_b, ordering_ok, bell })
}

/// `|beta_ab> = (I ⊗ X^b Z^a) |Phi+>`, for display.
pub fn bell_vector(a: usize, b: usize) -> crate::linalg::CVector {
    let s = 0.5f64.sqrt();
    let phi = crate::linalg::CVector::from_vec(vec![c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)]);
    let mut local = identity(2);
    if b == 1 {
        local *= pauli(1);
    }
    if a == 1 {
        local *= pauli(3);
    }
    identity(2).kronecker(&local) * phi
}
