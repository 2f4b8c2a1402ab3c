mod common;

use approx::abs_diff_eq;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use qcoh::channels::{apply_channel, bit_flip, random_kraus_channel};
use qcoh::coherence::{bi_coherence, chain_split, dephase, rel_ent_coherence, theorem1_split};
use qcoh::correlations::{bd_report, BellDiagonalParams};
use qcoh::entropy::{majorizes, relative_entropy, shannon as lib_shannon, von_neumann, ProbVector};
use qcoh::figures::format_sig10;
use qcoh::io::{parse_state, state_to_json};
use qcoh::qstate::{bloch_to_qubit, partial_trace, purify, qubit_to_bloch, Keep};
use qcoh::rng::rng;
use qcoh::{Basis, BlochVector, DensityMatrix, PureState};

fn sample(seed: u64, d: usize, full_rank: bool) -> (DensityMatrix, CM) {
    let mut r = rng(seed);
    let rank = if full_rank { d } else { 1 + (seed as usize % d) };
    let (m, a) = random_state(d, rank, &mut r);
    (DensityMatrix::new(m).unwrap(), a)
}

fn basis(seed: u64, d: usize) -> Basis {
    Basis::haar_random(d, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_bounds_and_spectrum(seed in any::<u64>(), d in 1usize..7, full in any::<bool>()) {
        let (rho, _) = sample(seed, d, full);
        let s = von_neumann(&rho);
        prop_assert!(s >= -1e-12 && s <= (d as f64).log2() + 1e-12);
        prop_assert!(abs_diff_eq!(s, entropy(rho.matrix()), epsilon = 1e-9));
        let rotated = rho.rotated(&basis(seed, d)).unwrap();
        prop_assert!(abs_diff_eq!(s, von_neumann(&rotated), epsilon = 1e-9));
    }

    #[test]
    fn coherence_split_and_ordering(seed in any::<u64>(), d in 2usize..7, full in any::<bool>()) {
        let (rho, _) = sample(seed, d, full);
        let b = basis(seed, d);
        let split = theorem1_split(&rho, &b).unwrap();
        prop_assert!(abs_diff_eq!(split.total, split.basis_part + split.residual, epsilon = 1e-9));
        prop_assert!(split.basis_part >= -1e-12 && split.residual >= -1e-12);
        prop_assert!(split.total <= (d as f64).log2() + 1e-12);
        let pinched = dephase(&rho, &b).unwrap();
        prop_assert!(rel_ent_coherence(&pinched, &b).unwrap().abs() < 1e-9);
        let d_rel = relative_entropy(&rho, &pinched).unwrap();
        prop_assert!(abs_diff_eq!(d_rel.value(), split.basis_part, epsilon = 1e-9));
    }

    #[test]
    fn chain_telescopes(seed in any::<u64>(), d in 2usize..6, k in 1usize..5) {
        let (rho, _) = sample(seed, d, true);
        let bases: Vec<Basis> = (0..k as u64).map(|i| basis(seed ^ (i + 1), d)).collect();
        let rep = chain_split(&rho, &bases).unwrap();
        prop_assert!(abs_diff_eq!(rep.telescoped(), rep.total, epsilon = 1e-9));
        for w in rep.residuals.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn majorization_reverses_entropy(seed in any::<u64>(), n in 2usize..8, t in 0.0f64..1.0) {
        let mut r = rng(seed);
        let (m, _) = random_state(n, n, &mut r);
        let x: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        // y = T x with T a convex mix of the identity and a cyclic shift
        let y: Vec<f64> = (0..n).map(|i| t * x[i] + (1.0 - t) * x[(i + 1) % n]).collect();
        let (px, py) = (ProbVector::new(x).unwrap(), ProbVector::new(y).unwrap());
        prop_assert!(majorizes(&px, &py).unwrap());
        prop_assert!(lib_shannon(&py) >= lib_shannon(&px) - 1e-12);
        prop_assert!(majorizes(&px, &ProbVector::uniform(n)).unwrap());
    }

    #[test]
    fn relative_entropy_nonnegative(seed in any::<u64>(), d in 1usize..6) {
        let (rho, _) = sample(seed, d, false);
        let (sigma, _) = sample(seed ^ 1, d, true);
        prop_assert!(relative_entropy(&rho, &sigma).unwrap().value() >= -1e-12);
        prop_assert!(relative_entropy(&sigma, &sigma).unwrap().value().abs() < 1e-9);
        let mixed = DensityMatrix::maximally_mixed(d);
        let to_mixed = relative_entropy(&rho, &mixed).unwrap().value();
        prop_assert!(abs_diff_eq!(to_mixed, bi_coherence(&rho), epsilon = 1e-9));
    }

    #[test]
    fn purification_reduces_back(seed in any::<u64>(), d in 1usize..6, full in any::<bool>()) {
        let (rho, _) = sample(seed, d, full);
        let psi = purify(&rho);
        let back = partial_trace(&psi.density(), (d, d), Keep::A).unwrap();
        prop_assert!(max_abs(back.matrix(), rho.matrix()) < 1e-9);
        let reference = partial_trace(&psi.density(), (d, d), Keep::B).unwrap();
        prop_assert!(abs_diff_eq!(entropy(reference.matrix()), von_neumann(&rho), epsilon = 1e-9));
    }

    #[test]
    fn schmidt_and_entanglement(seed in any::<u64>(), da in 1usize..5, db in 1usize..5) {
        let mut r = rng(seed);
        let g = ginibre(da * db, 1, &mut r);
        let psi = PureState::normalized(g.column(0).into_owned()).unwrap();
        let sc = psi.schmidt_coefficients((da, db)).unwrap();
        let probs: Vec<f64> = sc.iter().map(|s| s * s).collect();
        prop_assert!(abs_diff_eq!(probs.iter().sum::<f64>(), 1.0, epsilon = 1e-12));
        let ra = psi.reduced(&[da, db], &[0]).unwrap();
        let rb = psi.reduced(&[da, db], &[1]).unwrap();
        prop_assert!(abs_diff_eq!(von_neumann(&ra), von_neumann(&rb), epsilon = 1e-9));
        prop_assert!(abs_diff_eq!(von_neumann(&ra), shannon(&probs), epsilon = 1e-9));
    }

    #[test]
    fn channels_preserve_states(seed in any::<u64>(), d in 1usize..5, k in 1usize..4) {
        let (rho, _) = sample(seed, d, true);
        let mut r = rng(seed ^ 7);
        let ch = random_kraus_channel(d, k, &mut r);
        let out = apply_channel(&rho, &ch).unwrap();
        let tr: Complex64 = out.matrix().trace();
        prop_assert!((tr - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        prop_assert!(eigvals(out.matrix()).iter().all(|&l| l > -1e-10));
    }

    #[test]
    fn bit_flip_is_unital_and_contractive(x in -0.57f64..0.57, y in -0.57f64..0.57, z in -0.57f64..0.57, p in 0.0f64..=1.0) {
        let rho = bloch_to_qubit(BlochVector::new(x, y, z).unwrap()).unwrap();
        let out = apply_channel(&rho, &bit_flip(p).unwrap()).unwrap();
        let v = qubit_to_bloch(&out).unwrap();
        prop_assert!(abs_diff_eq!(v.x, x, epsilon = 1e-12));
        prop_assert!(abs_diff_eq!(v.y, (2.0 * p - 1.0) * y, epsilon = 1e-12));
        prop_assert!(abs_diff_eq!(v.z, (2.0 * p - 1.0) * z, epsilon = 1e-12));
        prop_assert!(bi_coherence(&out) <= bi_coherence(&rho) + 1e-12);
    }

    #[test]
    fn bell_hierarchy_random(c1 in -1.0f64..1.0, c2 in -1.0f64..1.0, c3 in -1.0f64..1.0) {
        prop_assume!(bell_valid([c1, c2, c3]));
        let r = bd_report(&BellDiagonalParams::new(c1, c2, c3).unwrap());
        prop_assert!(r.hierarchy_ok);
        prop_assert!(r.bi_coherence + 1e-9 >= r.comp_coherence);
        prop_assert!(r.comp_coherence + 1e-9 >= r.discord);
        prop_assert!(r.discord + 1e-9 >= r.entanglement);
        prop_assert!(r.entanglement >= -1e-12);
    }

    #[test]
    fn json_and_csv_round_trips(seed in any::<u64>(), d in 1usize..5, v in -1e12f64..1e12) {
        let (rho, _) = sample(seed, d, true);
        let back = parse_state(&state_to_json(&rho)).unwrap();
        prop_assert!(max_abs(back.matrix(), rho.matrix()) < 1e-15);
        let parsed: f64 = format_sig10(v).parse().unwrap();
        prop_assert!((parsed - v).abs() <= 1e-9 * v.abs().max(1e-300));
    }
}
