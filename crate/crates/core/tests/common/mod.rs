//! Reference implementations used as test oracles. They avoid the library's
//! own eigensolver and dephasing code paths.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CM = DMatrix<Complex64>;

/// Eigenvalues of a Hermitian matrix via its real 2d x 2d embedding,
/// in which every eigenvalue appears twice.
pub fn eigvals(m: &CM) -> Vec<f64> {
    let d = m.nrows();
    let mut r = DMatrix::<f64>::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            let z = m[(i, j)];
            r[(i, j)] = z.re;
            r[(i + d, j + d)] = z.re;
            r[(i, j + d)] = -z.im;
            r[(i + d, j)] = z.im;
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(r).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev.into_iter().step_by(2).collect()
}

pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-300).map(|&x| -x * x.log2()).sum()
}

pub fn entropy(m: &CM) -> f64 {
    shannon(&eigvals(m).into_iter().map(|x| x.max(0.0)).collect::<Vec<_>>())
}

/// Populations `<u_k| rho |u_k>` for the columns `u_k` of `u`.
pub fn populations(rho: &CM, u: &CM) -> Vec<f64> {
    (0..u.ncols())
        .map(|k| {
            let v = u.column(k);
            (v.adjoint() * rho * v)[(0, 0)].re
        })
        .collect()
}

/// `sum_k p_k |u_k><u_k|`.
pub fn from_populations(p: &[f64], u: &CM) -> CM {
    let d = u.nrows();
    let mut out = CM::zeros(d, d);
    for (k, &pk) in p.iter().enumerate() {
        let v = u.column(k);
        out += v * v.adjoint() * Complex64::new(pk, 0.0);
    }
    out
}

pub fn fourier(d: usize) -> CM {
    CM::from_fn(d, d, |j, k| {
        let ang = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
        Complex64::from_polar(1.0 / (d as f64).sqrt(), ang)
    })
}

pub fn ginibre<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CM {
    CM::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// `rho = G G^dagger / tr` along with the factor `A = G / sqrt(tr)`.
pub fn random_state<R: Rng>(d: usize, rank: usize, rng: &mut R) -> (CM, CM) {
    let g = ginibre(d, rank, rng);
    let rho = &g * g.adjoint();
    let tr: f64 = (0..d).map(|i| rho[(i, i)].re).sum();
    let a = g / Complex64::new(tr.sqrt(), 0.0);
    (&a * a.adjoint(), a)
}

/// Reference reduced state of `|psi> = sum_{ik} A_ik |i>|k>` by explicit partial trace.
pub fn reference_reduced(a: &CM) -> CM {
    let (d, r) = (a.nrows(), a.ncols());
    let psi: Vec<Complex64> = (0..d * r).map(|n| a[(n / r, n % r)]).collect();
    CM::from_fn(r, r, |k, l| (0..d).map(|i| psi[i * r + k] * psi[i * r + l].conj()).sum())
}

pub fn max_abs(a: &CM, b: &CM) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn bell_valid(c: [f64; 3]) -> bool {
    bell_weights(c).iter().all(|&l| l >= -1e-12)
}

/// Weights on the four Bell states.
pub fn bell_weights(c: [f64; 3]) -> [f64; 4] {
    let [c1, c2, c3] = c;
    [(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0, (1.0 + c1 + c2 - c3) / 4.0]
}

pub fn binary_h(t: f64) -> f64 {
    shannon(&[t, 1.0 - t])
}
