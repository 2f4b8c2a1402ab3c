//! Wave-particle duality in terms of coherence.
//!
//! For a basis `B` the particle measure is `P = log2 d - S(Phi^B(rho))` (how
//! sharp the "which path" statistics are) and the wave measure is
//! `W = C(rho) - C(Phi^B(rho))`, the coherence destroyed by measuring. With
//! the entanglement `E` between `rho` and any purifying reference they satisfy
//! `W + P + E = log2 d`.

use serde::Serialize;

use crate::basis::Basis;
use crate::coherence::{bi_coherence, dephase};
use crate::entropy::von_neumann;
use crate::error::{QcohError, Result};
use crate::qstate::{check_dim, purify, DensityMatrix, PureState};
use crate::tol;

pub fn particle_measure(rho: &DensityMatrix, b: &Basis) -> Result<f64> {
    let deph = dephase(rho, b)?;
    Ok(tol::clamp_small_negative(bi_coherence(&deph), tol::IDENTITY))
}

pub fn wave_measure(rho: &DensityMatrix, b: &Basis) -> Result<f64> {
    let deph = dephase(rho, b)?;
    Ok(tol::clamp_small_negative(bi_coherence(rho) - bi_coherence(&deph), tol::IDENTITY))
}

/// `(P, W)` divided by `C(rho)`; they sum to one. Undefined at `I/d`.
pub fn normalized_tradeoff(rho: &DensityMatrix, b: &Basis) -> Result<(f64, f64)> {
    check_dim(rho.dim(), b.dim())?;
    let c = bi_coherence(rho);
    if c <= tol::IDENTITY {
        return Err(QcohError::MaximallyMixedInput { coherence: c });
    }
    Ok((particle_measure(rho, b)? / c, wave_measure(rho, b)? / c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityBudget {
    pub wave: f64,
    pub particle: f64,
    pub entanglement: f64,
    pub total: f64,
}

impl DualityBudget {
    /// `wave + particle + entanglement - total`.
    pub fn defect(&self) -> f64 {
        self.wave + self.particle + self.entanglement - self.total
    }
}

/// Budget of `rho` against `b`. The entanglement term is the entropy of the
/// reference half of an explicit purification.
pub fn duality_budget(rho: &DensityMatrix, b: &Basis) -> Result<DualityBudget> {
    check_dim(rho.dim(), b.dim())?;
    let d = rho.dim();
    let psi = purify(rho);
    let reference = psi.reduced(&[d, d], &[1])?;
    Ok(DualityBudget {
        wave: wave_measure(rho, b)?,
        particle: particle_measure(rho, b)?,
        entanglement: tol::clamp_small_negative(von_neumann(&reference), tol::IDENTITY),
        total: (d as f64).log2(),
    })
}

/// One line `W_X + P_X + E(X | rest) = log2 d_X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetLine {
    pub label: String,
    pub dim: usize,
    pub budget: DualityBudget,
}

/// `lhs <= rhs` check with an equality flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub equal: bool,
}

impl InequalityCheck {
    fn new(label: &str, lhs: f64, rhs: f64) -> Self {
        InequalityCheck {
            label: label.into(),
            lhs,
            rhs,
            holds: lhs <= rhs + tol::IDENTITY,
            equal: (lhs - rhs).abs() <= tol::IDENTITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultipartiteReport {
    pub dims: Vec<usize>,
    pub lines: Vec<BudgetLine>,
    /// Bipartite: `log2 dA + (W+P)_B - log2 dB - (W+P)_A`, which vanishes.
    /// Tripartite: `None`.
    pub bipartite_relation_defect: Option<f64>,
    pub inequalities: Vec<InequalityCheck>,
    /// Tripartite only: `d_C >= d_A d_B`, under which both inequalities hold.
    pub reference_large_enough: Option<bool>,
    /// Tripartite only: `d_C == d_A d_B`.
    pub equality_dims: Option<bool>,
}

fn line(psi: &PureState, dims: &[usize], part: &[usize], b: &Basis, label: &str) -> Result<BudgetLine> {
    let rho = psi.reduced(dims, part)?;
    let rest: Vec<usize> = (0..dims.len()).filter(|i| !part.contains(i)).collect();
    let complement = psi.reduced(dims, &rest)?;
    let total = (rho.dim() as f64).log2();
    Ok(BudgetLine {
        label: label.into(),
        dim: rho.dim(),
        budget: DualityBudget {
            wave: wave_measure(&rho, b)?,
            particle: particle_measure(&rho, b)?,
            entanglement: tol::clamp_small_negative(von_neumann(&complement), tol::IDENTITY),
            total,
        },
    })
}

/// Budgets of every single-party (and, for three parties, the `AB|C`)
/// bipartition of a pure global state, plus the derived inequalities.
/// `bases[k]` is the reference basis of subsystem `k`.
pub fn multipartite_budget(state: &PureState, dims: &[usize], bases: &[Basis]) -> Result<MultipartiteReport> {
    if dims.len() != 2 && dims.len() != 3 {
        return Err(QcohError::InvalidArgument(format!("expected 2 or 3 subsystems, got {}", dims.len())));
    }
    check_dim(dims.iter().product(), state.dim())?;
    if bases.len() != dims.len() {
        return Err(QcohError::LengthMismatch { left: dims.len(), right: bases.len() });
    }
    for (d, b) in dims.iter().zip(bases) {
        check_dim(*d, b.dim())?;
    }
    let wp = |l: &BudgetLine| l.budget.wave + l.budget.particle;
    if dims.len() == 2 {
        let a = line(state, dims, &[0], &bases[0], "A|B")?;
        let b = line(state, dims, &[1], &bases[1], "B|A")?;
        let defect = a.budget.total + wp(&b) - b.budget.total - wp(&a);
        let mut inequalities = Vec::new();
        if dims[0] <= dims[1] {
            inequalities.push(InequalityCheck::new("(W+P)_A <= (W+P)_B", wp(&a), wp(&b)));
        } else {
            inequalities.push(InequalityCheck::new("(W+P)_B <= (W+P)_A", wp(&b), wp(&a)));
        }
        return Ok(MultipartiteReport {
            dims: dims.to_vec(),
            lines: vec![a, b],
            bipartite_relation_defect: Some(defect),
            inequalities,
            reference_large_enough: None,
            equality_dims: None,
        });
    }
    let a = line(state, dims, &[0], &bases[0], "A|BC")?;
    let b = line(state, dims, &[1], &bases[1], "B|AC")?;
    let c = line(state, dims, &[2], &bases[2], "C|AB")?;
    let ab = line(state, dims, &[0, 1], &bases[0].tensor(&bases[1]), "AB|C")?;
    let inequalities = vec![
        InequalityCheck::new("(W+P)_A + (W+P)_B <= (W+P)_C", wp(&a) + wp(&b), wp(&c)),
        InequalityCheck::new("(W+P)_AB <= (W+P)_C", wp(&ab), wp(&c)),
    ];
    Ok(MultipartiteReport {
        dims: dims.to_vec(),
        lines: vec![a, b, c, ab],
        bipartite_relation_defect: None,
        inequalities,
        reference_large_enough: Some(dims[2] >= dims[0] * dims[1]),
        equality_dims: Some(dims[2] == dims[0] * dims[1]),
    })
}

/// As [`multipartite_budget`] for a density matrix that must be pure.
pub fn multipartite_budget_from_density(
    rho: &DensityMatrix,
    dims: &[usize],
    bases: &[Basis],
) -> Result<MultipartiteReport> {
    let (vals, vecs) = rho.eigen();
    if (vals[0] - 1.0).abs() > tol::STATE {
        return Err(QcohError::NotPure { norm: rho.purity().sqrt(), tol: tol::STATE });
    }
    let psi = PureState::normalized(vecs.column(0).into_owned())?;
    multipartite_budget(&psi, dims, bases)
}
