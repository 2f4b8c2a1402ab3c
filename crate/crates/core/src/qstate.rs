//! Quantum states: validated density matrices, pure states, Bloch vectors,
//! purification, partial trace and seeded random sampling.

use rand::Rng;
use rand_distr::Exp1;

use crate::basis::Basis;
use crate::error::{QcohError, Result};
use crate::linalg::{self, c64, hermitian_eigen, hermitian_eigenvalues, CMatrix, CVector};
use crate::rng;
use crate::tol;

/// A d×d Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validate `entries` as a density matrix.
    ///
    /// The trace is renormalized only when it is already within `1e-9` of one.
    /// The stored matrix is the Hermitian part of the input.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c {
            return Err(QcohError::NotSquare { rows: r, cols: c });
        }
        if r == 0 {
            return Err(QcohError::Empty);
        }
        let deviation = linalg::hermiticity_defect(&entries);
        if deviation > tol::STATE {
            return Err(QcohError::NotHermitian { deviation, tol: tol::STATE });
        }
        let tr = linalg::trace(&entries).re;
        let deviation = (tr - 1.0).abs();
        if deviation > tol::STATE {
            return Err(QcohError::NotUnitTrace { trace: tr, deviation, tol: tol::STATE });
        }
        let mat = linalg::hermitize(&entries).unscale(tr);
        let min = *hermitian_eigenvalues(&mat).last().unwrap();
        if min < -tol::STATE {
            return Err(QcohError::NotPositive { min_eigenvalue: min, tol: tol::STATE });
        }
        Ok(DensityMatrix { mat })
    }

    /// Internal constructor for matrices that are valid by construction
    /// (images of valid states under CPTP maps). Stored as given.
    pub(crate) fn from_trusted(mat: CMatrix) -> Self {
        DensityMatrix { mat }
    }

    /// Diagonal state with the given (validated) probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let m = CMatrix::from_diagonal(&CVector::from_iterator(probs.len(), probs.iter().map(|&p| c64(p, 0.0))));
        Self::new(m)
    }

    /// `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix { mat: linalg::identity(d).unscale(d as f64) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Eigenvalues, descending, with in-tolerance negatives clamped to zero
    /// and the result renormalized to sum to one.
    pub fn spectrum(&self) -> Vec<f64> {
        clamp_spectrum(hermitian_eigenvalues(&self.mat))
    }

    /// Clamped spectrum together with the matching eigenvectors (columns).
    pub fn eigen(&self) -> (Vec<f64>, CMatrix) {
        let (vals, vecs) = hermitian_eigen(&self.mat);
        (clamp_spectrum(vals), vecs)
    }

    /// `U rho U^dagger` for a unitary `U` given as a basis.
    pub fn rotated(&self, u: &Basis) -> Result<Self> {
        check_dim(self.dim(), u.dim())?;
        Ok(Self::from_trusted(linalg::conjugate(u.unitary(), &self.mat)))
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { mat: self.mat.kronecker(&other.mat) }
    }

    /// `sum_i w_i rho_i`. Weights must form a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(QcohError::Empty)?.1;
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, r) in parts {
            check_dim(first.dim(), r.dim())?;
            acc += r.matrix().scale(*w);
        }
        Self::new(acc)
    }

    /// Purity `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }
}

fn clamp_spectrum(vals: Vec<f64>) -> Vec<f64> {
    let clamped: Vec<f64> = vals.into_iter().map(|l| if l < 0.0 { 0.0 } else { l }).collect();
    let s: f64 = clamped.iter().sum();
    clamped.into_iter().map(|l| l / s).collect()
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(QcohError::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: CVector,
}

impl PureState {
    /// Accepts vectors with norm within `1e-9` of one and renormalizes them.
    pub fn new(amps: CVector) -> Result<Self> {
        if amps.is_empty() {
            return Err(QcohError::Empty);
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::STATE {
            return Err(QcohError::NotPure { norm, tol: tol::STATE });
        }
        Ok(PureState { amps: amps.unscale(norm) })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if amps.is_empty() || norm == 0.0 {
            return Err(QcohError::Empty);
        }
        Ok(PureState { amps: amps.unscale(norm) })
    }

    /// Computational basis ket `|k>` in dimension `d`.
    pub fn basis_ket(d: usize, k: usize) -> Self {
        let mut v = CVector::zeros(d);
        v[k] = c64(1.0, 0.0);
        PureState { amps: v }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState { amps: self.amps.kronecker(&other.amps) }
    }

    /// `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { mat: &self.amps * self.amps.adjoint() }
    }

    /// Reduced state on the subsystems listed in `keep`, for a state on the
    /// tensor product with local dimensions `dims`.
    pub fn reduced(&self, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
        reduce_matrix(&self.density().mat, dims, keep).map(DensityMatrix::from_trusted)
    }

    /// Schmidt coefficients across the cut `dims.0 | dims.1`, descending.
    pub fn schmidt_coefficients(&self, dims: (usize, usize)) -> Result<Vec<f64>> {
        check_dim(dims.0 * dims.1, self.dim())?;
        // row-major reshape: amplitude index = a * dB + b
        let m = CMatrix::from_fn(dims.0, dims.1, |a, b| self.amps[a * dims.1 + b]);
        let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
        s.sort_by(|x, y| y.partial_cmp(x).unwrap());
        Ok(s)
    }
}

/// Real Bloch vector of a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = BlochVector { x, y, z };
        let norm = v.norm();
        if !norm.is_finite() || norm > 1.0 + tol::BLOCH {
            return Err(QcohError::BlochNormExceeded { norm });
        }
        Ok(v)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// `(I + x X + y Y + z Z) / 2`.
pub fn bloch_to_qubit(v: BlochVector) -> Result<DensityMatrix> {
    let v = BlochVector::new(v.x, v.y, v.z)?;
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            c64((1.0 + v.z) / 2.0, 0.0),
            c64(v.x / 2.0, -v.y / 2.0),
            c64(v.x / 2.0, v.y / 2.0),
            c64((1.0 - v.z) / 2.0, 0.0),
        ],
    );
    Ok(DensityMatrix { mat: m })
}

/// Bloch vector `(Tr rho X, Tr rho Y, Tr rho Z)` of a qubit state.
pub fn qubit_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    check_dim(2, rho.dim())?;
    let m = rho.matrix();
    Ok(BlochVector { x: 2.0 * m[(1, 0)].re, y: 2.0 * m[(1, 0)].im, z: (m[(0, 0)] - m[(1, 1)]).re })
}

/// Purification `sum_k sqrt(l_k) |psi_k> ⊗ |k>_R` on system ⊗ reference.
///
/// The reference system has the same dimension as the input and uses its
/// computational basis; eigenvalues are ordered descending with ties broken
/// by eigenvector lexicographic order.
pub fn purify(rho: &DensityMatrix) -> PureState {
    let d = rho.dim();
    let (vals, vecs) = rho.eigen();
    let mut amps = CVector::zeros(d * d);
    for (k, &l) in vals.iter().enumerate() {
        let w = l.sqrt();
        if w == 0.0 {
            continue;
        }
        for i in 0..d {
            amps[i * d + k] += vecs[(i, k)] * w;
        }
    }
    PureState::normalized(amps).expect("purification of a valid state is nonzero")
}

/// Which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// Partial trace of a state on `A ⊗ B`.
pub fn partial_trace(rho_ab: &DensityMatrix, dims: (usize, usize), keep: Keep) -> Result<DensityMatrix> {
    check_dim(dims.0 * dims.1, rho_ab.dim())?;
    let k = match keep {
        Keep::A => 0,
        Keep::B => 1,
    };
    reduce_matrix(rho_ab.matrix(), &[dims.0, dims.1], &[k]).map(DensityMatrix::from_trusted)
}

/// Partial trace over every subsystem not listed in `keep` (kept in
/// ascending order). `dims` are the local dimensions, row-major.
pub fn reduce(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    reduce_matrix(rho.matrix(), dims, keep).map(DensityMatrix::from_trusted)
}

fn reduce_matrix(m: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    check_dim(total, m.nrows())?;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&k| k >= dims.len()) {
        return Err(QcohError::InvalidArgument(format!("subsystem index out of range for {} subsystems", dims.len())));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let dk: usize = keep.iter().map(|&i| dims[i]).product();
    let dt: usize = traced.iter().map(|&i| dims[i]).product();

    // strides of each subsystem in the global row-major index
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let global = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut g = 0;
        let mut r = kept_idx;
        for &i in keep.iter().rev() {
            g += (r % dims[i]) * strides[i];
            r /= dims[i];
        }
        let mut r = traced_idx;
        for &i in traced.iter().rev() {
            g += (r % dims[i]) * strides[i];
            r /= dims[i];
        }
        g
    };
    let mut out = CMatrix::zeros(dk, dk);
    for i in 0..dk {
        for j in 0..dk {
            let mut s = c64(0.0, 0.0);
            for t in 0..dt {
                s += m[(global(i, t), global(j, t))];
            }
            out[(i, j)] = s;
        }
    }
    Ok(out)
}

/// Haar random unitary in dimension `d` (returned as a basis).
pub fn haar_random_unitary(d: usize, seed: u64) -> Basis {
    Basis::haar_random(d, seed)
}

/// Random state of the given rank: spectrum uniform on the simplex, eigenbasis Haar.
pub fn random_density_matrix(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_matrix_with(d, rank, &mut rng::rng(seed))
}

pub fn random_density_matrix_with<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(QcohError::RankOutOfRange { rank, dim: d });
    }
    let mut w: Vec<f64> = (0..rank).map(|_| rng.sample::<f64, _>(Exp1) + 1e-300).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    w.resize(d, 0.0);
    let u = Basis::haar_with(d, rng);
    Ok(state_with_spectrum(&w, &u))
}

/// Random full-rank state with spectrum drawn uniformly on the simplex.
pub fn random_state_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    random_density_matrix_with(d, d, rng).expect("rank d is in range")
}

/// `U diag(spectrum) U^dagger` for a valid probability vector `spectrum`.
pub fn state_with_spectrum(spectrum: &[f64], u: &Basis) -> DensityMatrix {
    let d = spectrum.len();
    let diag = CMatrix::from_diagonal(&CVector::from_iterator(d, spectrum.iter().map(|&p| c64(p, 0.0))));
    DensityMatrix::from_trusted(linalg::conjugate(u.unitary(), &diag))
}

/// Random state with a prescribed spectrum (e.g. uniform gives I/d).
pub fn random_density_matrix_with_spectrum(spectrum: &[f64], seed: u64) -> Result<DensityMatrix> {
    let p = crate::entropy::ProbVector::new(spectrum.to_vec())?;
    Ok(state_with_spectrum(p.weights(), &Basis::haar_random(spectrum.len(), seed)))
}
