//! Orthonormal bases, stored as the unitary whose columns are the basis
//! vectors. A basis is its own transition matrix from the computational one.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{QcohError, Result};
use crate::linalg::{c64, identity, max_abs_diff, CMatrix, CVector};
use crate::rng;
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    unitary: CMatrix,
}

impl Basis {
    /// Wrap a matrix whose columns are the basis vectors. Fails unless the
    /// columns are orthonormal within `1e-10`.
    pub fn from_unitary(unitary: CMatrix) -> Result<Self> {
        let (r, c) = unitary.shape();
        if r != c {
            return Err(QcohError::NotSquare { rows: r, cols: c });
        }
        if r == 0 {
            return Err(QcohError::Empty);
        }
        let deviation = max_abs_diff(&(unitary.adjoint() * &unitary), &identity(r));
        if deviation > tol::UNITARY {
            return Err(QcohError::NotUnitary { deviation, tol: tol::UNITARY });
        }
        Ok(Basis { unitary })
    }

    pub(crate) fn from_unitary_unchecked(unitary: CMatrix) -> Self {
        Basis { unitary }
    }

    /// Build from a list of column vectors.
    pub fn from_vectors(vectors: &[CVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(QcohError::Empty);
        }
        let d = vectors[0].len();
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(QcohError::DimensionMismatch { expected: d, found: v.len() });
        }
        if vectors.len() != d {
            return Err(QcohError::DimensionMismatch { expected: d, found: vectors.len() });
        }
        Self::from_unitary(CMatrix::from_columns(vectors))
    }

    /// `{|0>, ..., |d-1>}`.
    pub fn computational(d: usize) -> Self {
        Basis { unitary: identity(d) }
    }

    /// Discrete Fourier basis: column `k` is `d^{-1/2} sum_j w^{jk} |j>` with
    /// `w = exp(2 pi i / d)`. Mutually unbiased with the computational basis.
    pub fn fourier(d: usize) -> Self {
        let norm = 1.0 / (d as f64).sqrt();
        let unitary = CMatrix::from_fn(d, d, |j, k| {
            // reduce the exponent mod d before converting to an angle
            let m = (j * k) % d;
            let ang = 2.0 * PI * m as f64 / d as f64;
            c64(norm * ang.cos(), norm * ang.sin())
        });
        Basis { unitary }
    }

    /// Haar-distributed random basis drawn from `rng`.
    ///
    /// QR of a complex Ginibre matrix with the phases of `diag(R)` absorbed
    /// into `Q`, which makes the distribution exactly Haar.
    pub fn haar_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z = CMatrix::from_fn(d, d, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            c64(s * re, s * im)
        });
        let qr = z.qr();
        let mut q = qr.q();
        let r = qr.r();
        for k in 0..d {
            let rk = r[(k, k)];
            let ph = if rk.norm() > 0.0 { rk / rk.norm() } else { c64(1.0, 0.0) };
            for i in 0..d {
                q[(i, k)] *= ph;
            }
        }
        Basis { unitary: q }
    }

    /// Haar random basis, deterministic for a fixed seed.
    pub fn haar_random(d: usize, seed: u64) -> Self {
        Self::haar_with(d, &mut rng::rng(seed))
    }

    /// `self ⊗ other` as a basis of the product space.
    pub fn tensor(&self, other: &Basis) -> Basis {
        Basis { unitary: self.unitary.kronecker(&other.unitary) }
    }

    /// Columns of `self.unitary() * other.unitary()`: `other` expressed
    /// relative to `self`.
    pub fn rotate(&self, other: &Basis) -> Basis {
        Basis { unitary: &self.unitary * &other.unitary }
    }

    /// Same vectors in a different order: vector `k` of the result is vector
    /// `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Basis> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(QcohError::InvalidArgument(format!("not a permutation of 0..{d}: {perm:?}")));
        }
        let cols: Vec<CVector> = perm.iter().map(|&p| self.unitary.column(p).into_owned()).collect();
        Ok(Basis { unitary: CMatrix::from_columns(&cols) })
    }

    pub fn dim(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.unitary.column(k).into_owned()
    }

    /// Matrix of squared overlaps `|<beta_j|alpha_i>|^2` (rows: self, cols: other).
    pub fn overlaps(&self, other: &Basis) -> Result<nalgebra::DMatrix<f64>> {
        if self.dim() != other.dim() {
            return Err(QcohError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let g = self.unitary.adjoint() * &other.unitary;
        Ok(g.map(|z| z.norm_sqr()))
    }
}
