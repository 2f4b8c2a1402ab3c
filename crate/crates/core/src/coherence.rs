//! Basis-dependent and basis-independent (BI) coherence.
//!
//! The BI coherence `C(rho) = log2 d - S(rho)` is the relative entropy from
//! `rho` to `I/d`, the only state diagonal in every basis. For any basis `B`
//! it splits exactly into the relative entropy of coherence `C^B(rho)` and the
//! BI coherence left in the dephased state `Phi^B(rho)`; chaining dephasings
//! telescopes the same way. Ordering for reference:
//! `C = C_U >= C^B >= C^free`, where `C_U` is the maximum of `C^B` over global
//! unitaries (attained constructively below) and `C^free` is a basis-free
//! measure minimized over local unitaries, not computed here.

use rand::Rng;

use crate::basis::Basis;
use crate::entropy::{binary_entropy, von_neumann, ProbVector};
use crate::error::{QcohError, Result};
use crate::linalg::{self, c64, CMatrix};
use crate::qstate::{bloch_to_qubit, check_dim, state_with_spectrum, BlochVector, DensityMatrix};
use crate::rng;
use crate::tol;

/// `Phi^B(rho) = sum_i |a_i><a_i| rho |a_i><a_i|`.
pub fn dephase(rho: &DensityMatrix, b: &Basis) -> Result<DensityMatrix> {
    check_dim(b.dim(), rho.dim())?;
    let u = b.unitary();
    let in_b = u.adjoint() * rho.matrix() * u;
    let diag = CMatrix::from_diagonal(&in_b.diagonal().map(|z| c64(z.re, 0.0)));
    Ok(DensityMatrix::from_trusted(linalg::conjugate(u, &diag)))
}

/// Probabilities `<a_i| rho |a_i>` of measuring in `b`.
pub fn diagonal_in(rho: &DensityMatrix, b: &Basis) -> Result<Vec<f64>> {
    check_dim(b.dim(), rho.dim())?;
    let u = b.unitary();
    let in_b = u.adjoint() * rho.matrix() * u;
    Ok(in_b.diagonal().iter().map(|z| z.re.max(0.0)).collect())
}

/// Sum of moduli of the off-diagonal entries of `rho` written in `b`.
pub fn off_diagonal_mass(rho: &DensityMatrix, b: &Basis) -> Result<f64> {
    check_dim(b.dim(), rho.dim())?;
    let u = b.unitary();
    Ok(linalg::off_diagonal_mass(&(u.adjoint() * rho.matrix() * u)))
}

/// `C(rho) = log2 d - S(rho)`.
pub fn bi_coherence(rho: &DensityMatrix) -> f64 {
    let c = (rho.dim() as f64).log2() - von_neumann(rho);
    tol::clamp_small_negative(c, tol::IDENTITY)
}

/// `C^B(rho) = S(Phi^B(rho)) - S(rho)`.
pub fn rel_ent_coherence(rho: &DensityMatrix, b: &Basis) -> Result<f64> {
    let deph = dephase(rho, b)?;
    Ok(tol::clamp_small_negative(von_neumann(&deph) - von_neumann(rho), tol::IDENTITY))
}

/// `total = basis_part + residual`, all in bits.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CoherenceSplit {
    pub total: f64,
    pub basis_part: f64,
    pub residual: f64,
}

/// `(C(rho), C^B(rho), C(Phi^B(rho)))`.
pub fn theorem1_split(rho: &DensityMatrix, b: &Basis) -> Result<CoherenceSplit> {
    let deph = dephase(rho, b)?;
    let s_rho = von_neumann(rho);
    let s_deph = von_neumann(&deph);
    let log_d = (rho.dim() as f64).log2();
    Ok(CoherenceSplit {
        total: tol::clamp_small_negative(log_d - s_rho, tol::IDENTITY),
        basis_part: tol::clamp_small_negative(s_deph - s_rho, tol::IDENTITY),
        residual: tol::clamp_small_negative(log_d - s_deph, tol::IDENTITY),
    })
}

/// Successive dephasing through a list of bases.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    /// `C^{B_k}` of the state entering step `k`.
    pub contributions: Vec<f64>,
    /// `C` of the state leaving step `k`; non-increasing in `k`.
    pub residuals: Vec<f64>,
    /// State leaving step `k`.
    pub states: Vec<DensityMatrix>,
    /// `C` of the input.
    pub total: f64,
}

impl ChainReport {
    pub fn terminal_residual(&self) -> f64 {
        *self.residuals.last().expect("chain is nonempty")
    }

    /// `sum contributions + terminal residual`; equals `total`.
    pub fn telescoped(&self) -> f64 {
        self.contributions.iter().sum::<f64>() + self.terminal_residual()
    }
}

pub fn chain_split(rho: &DensityMatrix, bases: &[Basis]) -> Result<ChainReport> {
    if bases.is_empty() {
        return Err(QcohError::EmptyChain);
    }
    for b in bases {
        check_dim(rho.dim(), b.dim())?;
    }
    let mut contributions = Vec::with_capacity(bases.len());
    let mut residuals = Vec::with_capacity(bases.len());
    let mut states = Vec::with_capacity(bases.len());
    let mut cur = rho.clone();
    for b in bases {
        let split = theorem1_split(&cur, b)?;
        contributions.push(split.basis_part);
        residuals.push(split.residual);
        cur = dephase(&cur, b)?;
        states.push(cur.clone());
    }
    Ok(ChainReport { contributions, residuals, states, total: bi_coherence(rho) })
}

pub fn fourier_basis(d: usize) -> Basis {
    Basis::fourier(d)
}

/// Every squared overlap lies within `tol` of `1/d`.
pub fn is_mub(b1: &Basis, b2: &Basis, tol: f64) -> Result<bool> {
    let ov = b1.overlaps(b2)?;
    let target = 1.0 / b1.dim() as f64;
    Ok(ov.iter().all(|&o| (o - target).abs() <= tol))
}

/// `||rho - I/d||_max <= tol`.
pub fn is_bi_incoherent(rho: &DensityMatrix, tol: f64) -> bool {
    linalg::max_abs_diff(rho.matrix(), DensityMatrix::maximally_mixed(rho.dim()).matrix()) <= tol
}

/// Maximum of `C^B(U rho U^dagger)` over global unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySupremum {
    /// `C(rho)`, the supremum.
    pub supremum: f64,
    /// `C^B` reached by the constructed unitary.
    pub attained: f64,
    /// Best `C^B` over the Haar samples; 0 when there are none.
    pub sample_max: f64,
    /// Unitary taking the eigenbasis of rho onto a basis unbiased to `b`.
    pub unitary: Basis,
}

/// Unitary sending eigenvector `k` of `rho` to Fourier vector `k` of `b`.
/// Any orthonormal eigenbasis works for degenerate spectra.
pub fn mub_rotating_unitary(rho: &DensityMatrix, b: &Basis) -> Result<Basis> {
    check_dim(rho.dim(), b.dim())?;
    let (_, eigvecs) = rho.eigen();
    let target = b.rotate(&Basis::fourier(b.dim()));
    Ok(Basis::from_unitary_unchecked(target.unitary() * eigvecs.adjoint()))
}

pub fn max_coherence_over_unitaries(
    rho: &DensityMatrix,
    b: &Basis,
    n_samples: usize,
    seed: u64,
) -> Result<UnitarySupremum> {
    check_dim(rho.dim(), b.dim())?;
    let u = mub_rotating_unitary(rho, b)?;
    let attained = rel_ent_coherence(&rho.rotated(&u)?, b)?;
    let mut r = rng::rng(seed);
    let mut sample_max: f64 = 0.0;
    for _ in 0..n_samples {
        let h = Basis::haar_with(rho.dim(), &mut r);
        sample_max = sample_max.max(rel_ent_coherence(&rho.rotated(&h)?, b)?);
    }
    Ok(UnitarySupremum { supremum: bi_coherence(rho), attained, sample_max, unitary: u })
}

/// `sum_j p_j |j'><j'|` with `{|j'>}` the Fourier rotation of `b`.
pub fn max_coherent_mixed_state(spectrum: &ProbVector, b: &Basis) -> Result<DensityMatrix> {
    check_dim(b.dim(), spectrum.len())?;
    let rotated = b.rotate(&Basis::fourier(b.dim()));
    Ok(state_with_spectrum(spectrum.weights(), &rotated))
}

/// Reference axis for the qubit closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Computational basis.
    Z,
    /// `{|+>, |->}`.
    X,
}

impl Axis {
    pub fn basis(self) -> Basis {
        match self {
            Axis::Z => Basis::computational(2),
            Axis::X => Basis::fourier(2),
        }
    }
}

/// Closed-form split for a qubit with Bloch vector `v` along `axis`:
/// `(1 - H2((1+|r|)/2), H2((1+r_a)/2) - H2((1+|r|)/2), 1 - H2((1+r_a)/2))`.
pub fn qubit_closed_forms(v: BlochVector, axis: Axis) -> Result<CoherenceSplit> {
    let v = BlochVector::new(v.x, v.y, v.z)?;
    let r = v.norm().min(1.0);
    let ra = match axis {
        Axis::Z => v.z,
        Axis::X => v.x,
    };
    let h_r = binary_entropy((1.0 + r) / 2.0)?;
    let h_a = binary_entropy(((1.0 + ra) / 2.0).clamp(0.0, 1.0))?;
    Ok(CoherenceSplit {
        total: 1.0 - h_r,
        basis_part: tol::clamp_small_negative(h_a - h_r, tol::IDENTITY),
        residual: 1.0 - h_a,
    })
}

/// Numerical counterpart of [`qubit_closed_forms`].
pub fn qubit_split(v: BlochVector, axis: Axis) -> Result<CoherenceSplit> {
    theorem1_split(&bloch_to_qubit(v)?, &axis.basis())
}

/// Probabilistic witness that `rho` is not BI-incoherent: the first of
/// `draws` Haar bases in which rho has off-diagonal mass above `tol`.
pub fn incoherence_witness<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    draws: usize,
    tol: f64,
    rng: &mut R,
) -> Option<(Basis, f64)> {
    (0..draws).find_map(|_| {
        let b = Basis::haar_with(rho.dim(), rng);
        let m = off_diagonal_mass(rho, &b).ok()?;
        (m > tol).then_some((b, m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::binary_entropy;
    use crate::linalg::max_abs_diff;
    use crate::qstate::{qubit_to_bloch, random_density_matrix, PureState};

    fn bloch(x: f64, y: f64, z: f64) -> DensityMatrix {
        bloch_to_qubit(BlochVector::new(x, y, z).unwrap()).unwrap()
    }

    #[test]
    fn dephase_examples() {
        let rho = bloch(0.3, -0.4, 0.5);
        let d = dephase(&rho, &Basis::computational(2)).unwrap();
        let v = qubit_to_bloch(&d).unwrap();
        assert!(v.x.abs() < 1e-15 && v.y.abs() < 1e-15 && (v.z - 0.5).abs() < 1e-15);
        let b = Basis::haar_random(3, 2);
        let rho = random_density_matrix(3, 3, 8).unwrap();
        let once = dephase(&rho, &b).unwrap();
        let twice = dephase(&once, &b).unwrap();
        assert!(max_abs_diff(once.matrix(), twice.matrix()) < 1e-12);
        let mm = DensityMatrix::maximally_mixed(3);
        assert!(max_abs_diff(dephase(&mm, &b).unwrap().matrix(), mm.matrix()) < 1e-12);
        assert!(matches!(dephase(&mm, &Basis::computational(2)), Err(QcohError::DimensionMismatch { .. })));
    }

    #[test]
    fn bi_coherence_examples() {
        assert_eq!(bi_coherence(&DensityMatrix::maximally_mixed(5)), 0.0);
        assert!((bi_coherence(&random_density_matrix(4, 1, 1).unwrap()) - 2.0).abs() < 1e-9);
        let want = 1.0 - binary_entropy((1.0 + 0.2f64.sqrt()) / 2.0).unwrap();
        assert!((bi_coherence(&bloch(0.4, 0.2, 0.0)) - want).abs() < 1e-12);
    }

    #[test]
    fn rel_ent_coherence_examples() {
        let rho = random_density_matrix(3, 3, 21).unwrap();
        let (_, vecs) = rho.eigen();
        let eb = Basis::from_unitary(vecs).unwrap();
        assert!(rel_ent_coherence(&rho, &eb).unwrap() < 1e-9);
        let plus = bloch(1.0, 0.0, 0.0);
        assert!((rel_ent_coherence(&plus, &Basis::computational(2)).unwrap() - 1.0).abs() < 1e-9);
        let mm = DensityMatrix::maximally_mixed(4);
        assert!(rel_ent_coherence(&mm, &Basis::haar_random(4, 1)).unwrap() < 1e-12);
    }

    #[test]
    fn split_examples() {
        let s = theorem1_split(&PureState::basis_ket(2, 0).density(), &Basis::computational(2)).unwrap();
        assert!((s.total - 1.0).abs() < 1e-12 && s.basis_part.abs() < 1e-12 && (s.residual - 1.0).abs() < 1e-12);
        for &z in &[-0.8, -0.3, 0.0, 0.5, 0.89] {
            let s = theorem1_split(&bloch(0.4, 0.2, z), &Basis::fourier(2)).unwrap();
            assert!((s.residual - 0.1187).abs() < 5e-4, "z={z}: {}", s.residual);
        }
        let rho = random_density_matrix(4, 3, 5).unwrap();
        let s = theorem1_split(&rho, &Basis::haar_random(4, 6)).unwrap();
        assert!((s.total - s.basis_part - s.residual).abs() < 1e-9);
    }

    #[test]
    fn chain_examples() {
        let rho = random_density_matrix(3, 3, 31).unwrap();
        let b = Basis::haar_random(3, 32);
        let rep = chain_split(&rho, &[b.clone(), b.clone()]).unwrap();
        let single = theorem1_split(&rho, &b).unwrap();
        assert!(rep.contributions[1].abs() < 1e-9);
        assert!((rep.contributions[0] - single.basis_part).abs() < 1e-12);
        assert!((rep.terminal_residual() - single.residual).abs() < 1e-9);

        let q = bloch(0.1, 0.5, -0.6);
        let rep = chain_split(&q, &[Basis::computational(2), Basis::fourier(2)]).unwrap();
        assert!(rep.terminal_residual().abs() < 1e-9);
        assert!(max_abs_diff(rep.states[1].matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-12);

        let bases: Vec<Basis> = (0..5).map(|k| Basis::haar_random(3, 100 + k)).collect();
        let rep = chain_split(&rho, &bases).unwrap();
        assert!((rep.telescoped() - rep.total).abs() < 1e-8);
        assert!(rep.residuals.windows(2).all(|w| w[1] <= w[0] + 1e-9));

        assert_eq!(chain_split(&rho, &[]).unwrap_err(), QcohError::EmptyChain);
        assert!(matches!(chain_split(&rho, &[Basis::computational(2)]), Err(QcohError::DimensionMismatch { .. })));
    }

    #[test]
    fn mub_examples() {
        let ov = Basis::computational(3).overlaps(&fourier_basis(3)).unwrap();
        assert!(ov.iter().all(|o| (o - 1.0 / 3.0).abs() < 1e-12));
        assert!(is_mub(&Basis::computational(4), &fourier_basis(4), 1e-10).unwrap());
        assert!(is_mub(&Basis::computational(5), &fourier_basis(5), 1e-10).unwrap());
        let b = Basis::haar_random(3, 1);
        assert!(!is_mub(&b, &b, 1e-6).unwrap());
        let (c, s) = (30f64.to_radians().cos(), 30f64.to_radians().sin());
        let rot =
            Basis::from_unitary(CMatrix::from_row_slice(2, 2, &[c64(c, 0.0), c64(-s, 0.0), c64(s, 0.0), c64(c, 0.0)]))
                .unwrap();
        assert!(!is_mub(&Basis::computational(2), &rot, 1e-6).unwrap());
        assert!(is_mub(&Basis::computational(2), &Basis::computational(3), 1e-6).is_err());
    }

    #[test]
    fn bi_incoherent_examples() {
        assert!(is_bi_incoherent(&DensityMatrix::maximally_mixed(4), 1e-12));
        assert!(!is_bi_incoherent(&PureState::basis_ket(3, 1).density(), 1e-6));
        let rho = random_density_matrix(3, 3, 77).unwrap();
        assert!(!is_bi_incoherent(&rho, 1e-6));
        assert!(incoherence_witness(&rho, 50, 1e-6, &mut rng::rng(1)).is_some());
        assert!(incoherence_witness(&DensityMatrix::maximally_mixed(3), 50, 1e-9, &mut rng::rng(1)).is_none());
    }

    #[test]
    fn unitary_supremum_examples() {
        let pure = random_density_matrix(4, 1, 2).unwrap();
        let r = max_coherence_over_unitaries(&pure, &Basis::computational(4), 10, 1).unwrap();
        assert!((r.supremum - 2.0).abs() < 1e-9 && (r.attained - 2.0).abs() < 1e-9);
        let r =
            max_coherence_over_unitaries(&DensityMatrix::maximally_mixed(3), &Basis::computational(3), 20, 1).unwrap();
        assert!(r.supremum.abs() < 1e-12 && r.sample_max.abs() < 1e-9);
        let rho = random_density_matrix(3, 2, 17).unwrap();
        let r = max_coherence_over_unitaries(&rho, &Basis::haar_random(3, 4), 200, 3).unwrap();
        assert!(r.sample_max <= 3f64.log2() - von_neumann(&rho) + 1e-9);
        assert!((r.attained - r.supremum).abs() < 1e-9);
    }

    #[test]
    fn unitary_supremum_with_degenerate_spectrum() {
        let rho = crate::qstate::random_density_matrix_with_spectrum(&[0.4, 0.4, 0.2], 5).unwrap();
        let r = max_coherence_over_unitaries(&rho, &Basis::computational(3), 0, 0).unwrap();
        assert!((r.attained - r.supremum).abs() < 1e-9);
    }

    #[test]
    fn max_coherent_mixed_state_examples() {
        let c = Basis::computational(3);
        let r = max_coherent_mixed_state(&ProbVector::uniform(3), &c).unwrap();
        assert!(rel_ent_coherence(&r, &c).unwrap() < 1e-12);
        let r = max_coherent_mixed_state(&ProbVector::new(vec![1.0, 0.0, 0.0]).unwrap(), &c).unwrap();
        assert!((rel_ent_coherence(&r, &c).unwrap() - 3f64.log2()).abs() < 1e-9);
        let r = max_coherent_mixed_state(&ProbVector::new(vec![0.7, 0.3]).unwrap(), &Basis::computational(2)).unwrap();
        assert!((rel_ent_coherence(&r, &Basis::computational(2)).unwrap() - 0.1187).abs() < 5e-4);
    }

    #[test]
    fn qubit_closed_form_examples() {
        let s = qubit_closed_forms(BlochVector::new(0.0, 0.0, 1.0).unwrap(), Axis::Z).unwrap();
        assert!((s.total - 1.0).abs() < 1e-12 && s.basis_part.abs() < 1e-12 && (s.residual - 1.0).abs() < 1e-12);
        for k in -17..=17 {
            let z = k as f64 * 0.05;
            let v = BlochVector::new(0.4, 0.2, z).unwrap();
            let s = qubit_closed_forms(v, Axis::X).unwrap();
            assert!((s.residual - 0.1187).abs() < 5e-4);
            for axis in [Axis::X, Axis::Z] {
                let a = qubit_closed_forms(v, axis).unwrap();
                let n = qubit_split(v, axis).unwrap();
                assert!((a.total - n.total).abs() < 1e-9);
                assert!((a.basis_part - n.basis_part).abs() < 1e-9);
                assert!((a.residual - n.residual).abs() < 1e-9);
            }
        }
        assert!(qubit_closed_forms(BlochVector { x: 1.0, y: 1.0, z: 0.0 }, Axis::Z).is_err());
    }
}
