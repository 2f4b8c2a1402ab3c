//! Entropy functionals in bits: Shannon, binary, von Neumann, quantum
//! relative entropy, and majorization.

use crate::error::{QcohError, Result};
use crate::qstate::{check_dim, DensityMatrix};
use crate::tol;

/// A validated probability vector. Entries in `[-1e-12, 0)` are clamped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(QcohError::InvalidDistribution { reason: "empty vector".into() });
        }
        if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < -tol::PROB_NEG) {
            return Err(QcohError::InvalidDistribution { reason: format!("entry {w} is negative or not finite") });
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > tol::PROB_SUM {
            return Err(QcohError::InvalidDistribution { reason: format!("entries sum to {s}, not 1") });
        }
        Ok(ProbVector(weights.into_iter().map(|w| w.max(0.0)).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        ProbVector(vec![1.0 / n as f64; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn shannon(p: &ProbVector) -> f64 {
    shannon_raw(p.weights())
}

pub(crate) fn shannon_raw(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

/// `H2(t) = -t log2 t - (1-t) log2 (1-t)`.
pub fn binary_entropy(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(QcohError::OutOfRange { name: "t", value: t });
    }
    Ok(shannon_raw(&[t, 1.0 - t]))
}

/// Von Neumann entropy of the clamped spectrum.
pub fn von_neumann(rho: &DensityMatrix) -> f64 {
    shannon_raw(&rho.spectrum())
}

/// Result of `S(rho || sigma)`: finite bits or the infinite sentinel raised
/// when `supp(rho)` is not contained in `supp(sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelEntropy {
    Finite(f64),
    Infinite,
}

impl RelEntropy {
    pub fn is_infinite(&self) -> bool {
        matches!(self, RelEntropy::Infinite)
    }

    /// Value as `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        match *self {
            RelEntropy::Finite(v) => v,
            RelEntropy::Infinite => f64::INFINITY,
        }
    }
}

/// `S(rho || sigma) = Tr rho log2 rho - Tr rho log2 sigma`.
///
/// `Tr rho log2 sigma` is evaluated in the eigenbasis of sigma; eigenvalues of
/// sigma below `1e-12` carrying rho-weight above `1e-10` give `Infinite`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<RelEntropy> {
    check_dim(rho.dim(), sigma.dim())?;
    let neg_s = -von_neumann(rho);
    let (mu, vecs) = sigma.eigen();
    let mut cross = 0.0;
    for (k, &m) in mu.iter().enumerate() {
        let v = vecs.column(k);
        let w = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        if m < tol::SUPPORT_EIG {
            if w > tol::SUPPORT_WEIGHT {
                return Ok(RelEntropy::Infinite);
            }
            continue;
        }
        cross += w * m.log2();
    }
    Ok(RelEntropy::Finite(tol::clamp_small_negative(neg_s - cross, tol::IDENTITY)))
}

/// True iff `y ≺ x`: the descending partial sums of `y` never exceed those
/// of `x`, and the totals agree.
pub fn majorizes(x: &ProbVector, y: &ProbVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(QcohError::LengthMismatch { left: x.len(), right: y.len() });
    }
    let sorted = |v: &ProbVector| {
        let mut s = v.weights().to_vec();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    };
    let (xs, ys) = (sorted(x), sorted(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sy > sx + tol::PROB_NEG {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= tol::PROB_SUM)
}
