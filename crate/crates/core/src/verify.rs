//! Property-suite runner behind `qcoh verify`.
//!
//! Each suite draws its samples from its own ChaCha20 stream of the run seed,
//! so a run is reproducible and suites are independent of each other. Checks
//! that need an entropy on the "independent" side of an identity go through
//! [`Backend::von_neumann`], which lets a deliberately broken entropy be
//! injected as a negative control.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::basis::Basis;
use crate::channels::{apply_channel, bit_flip, bitflip_duality_sweep, random_kraus_channel};
use crate::coherence::{
    bi_coherence, chain_split, dephase, is_mub, max_coherence_over_unitaries, off_diagonal_mass, rel_ent_coherence,
    theorem1_split,
};
use crate::correlations::{bd_report, bell_diagonal, discord_oracle, BellDiagonalParams};
use crate::duality::{particle_measure, wave_measure};
use crate::entropy::{majorizes, relative_entropy, von_neumann, ProbVector};
use crate::linalg::{c64, hermiticity_defect, max_abs_diff, trace, CMatrix};
use crate::qstate::{
    bloch_to_qubit, purify, qubit_to_bloch, random_density_matrix_with, reduce, BlochVector, DensityMatrix, PureState,
};
use crate::rng::{split, QRng};
use crate::thermo::{coherence_to_work, extractable_work, hamiltonian_pinch, Hamiltonian, WorkUnits, K_B};

/// Entropy implementation used on the independent side of identity checks.
#[derive(Clone, Copy)]
pub struct Backend {
    pub name: &'static str,
    pub von_neumann: fn(&DensityMatrix) -> f64,
}

impl Default for Backend {
    fn default() -> Self {
        Backend { name: "von_neumann", von_neumann }
    }
}

fn entropy_in_nats(rho: &DensityMatrix) -> f64 {
    von_neumann(rho) * std::f64::consts::LN_2
}

impl Backend {
    /// Negative control: entropy in nats instead of bits.
    pub fn broken_natural_log() -> Self {
        Backend { name: "broken_natural_log", von_neumann: entropy_in_nats }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    /// Grid steps for the discord oracle suite.
    pub discord_grid: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, trials: 200, discord_grid: 60 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub violations: usize,
    pub worst_error: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub trials: usize,
    pub discord_grid: usize,
    pub backend: String,
    pub all_passed: bool,
    pub suites: Vec<SuiteResult>,
}

struct Acc {
    name: &'static str,
    tol: f64,
    cases: usize,
    violations: usize,
    worst: f64,
}

impl Acc {
    fn new(name: &'static str, tol: f64) -> Self {
        Acc { name, tol, cases: 0, violations: 0, worst: 0.0 }
    }

    /// A nonnegative error magnitude compared against the tolerance.
    fn err(&mut self, e: f64) {
        self.cases += 1;
        if e.is_nan() || e > self.tol {
            self.violations += 1;
        }
        if e.is_nan() || e > self.worst {
            self.worst = e;
        }
    }

    fn flag(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.into(),
            passed: self.violations == 0 && self.cases > 0,
            cases: self.cases,
            violations: self.violations,
            worst_error: self.worst,
            tolerance: self.tol,
        }
    }
}

type Suite = fn(&mut QRng, &VerifyConfig, &Backend) -> SuiteResult;

const SUITES: &[Suite] = &[
    purify_round_trip,
    unitary_spectrum_invariance,
    bloch_round_trip,
    schur_concavity,
    relative_entropy_to_maximally_mixed,
    uniform_is_majorized,
    entropy_bounds,
    theorem1_identity,
    coherence_ordering,
    mub_collapse,
    rel_ent_coherence_oracle,
    chain_monotonicity,
    commutant_characterization,
    unitary_supremum,
    duality_budget_identity,
    particle_criteria,
    wave_criteria,
    subadditivity,
    bell_closed_form_consistency,
    bell_discord_oracle,
    bell_hierarchy,
    bell_entanglement_continuity,
    channel_preservation,
    fig5_shape,
    pinching_monotonicity,
    work_decomposition,
];

pub fn run_verify(config: &VerifyConfig) -> VerifySummary {
    run_with_backend(config, &Backend::default())
}

pub fn run_with_backend(config: &VerifyConfig, backend: &Backend) -> VerifySummary {
    let suites: Vec<SuiteResult> =
        SUITES.iter().enumerate().map(|(k, suite)| suite(&mut split(config.seed, k as u64), config, backend)).collect();
    VerifySummary {
        seed: config.seed,
        trials: config.trials,
        discord_grid: config.discord_grid,
        backend: backend.name.into(),
        all_passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

fn pick<T: Copy>(rng: &mut QRng, xs: &[T]) -> T {
    xs[rng.random_range(0..xs.len())]
}

fn random_state_any_rank(rng: &mut QRng, d: usize) -> DensityMatrix {
    let rank = rng.random_range(1..=d);
    random_density_matrix_with(d, rank, rng).expect("rank in range")
}

fn max_spectrum_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// ---- qstate ---------------------------------------------------------------

fn purify_round_trip(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("qstate.purify_partial_trace_round_trip", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let back = purify(&rho).reduced(&[d, d], &[0]).expect("dims match");
        acc.err(max_abs_diff(back.matrix(), rho.matrix()));
    }
    acc.finish()
}

fn unitary_spectrum_invariance(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("qstate.unitary_spectrum_invariance", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4, 5]);
        let rho = random_state_any_rank(rng, d);
        let u = Basis::haar_with(d, rng);
        acc.err(max_spectrum_diff(&rho.spectrum(), &rho.rotated(&u).expect("dims").spectrum()));
    }
    acc.finish()
}

fn bloch_round_trip(_: &mut QRng, _: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("qstate.bloch_round_trip", 1e-12);
    let n = 20;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (coord(i), coord(j), coord(k));
                let Ok(v) = BlochVector::new(x, y, z) else { continue };
                let w = qubit_to_bloch(&bloch_to_qubit(v).expect("in ball")).expect("qubit");
                acc.err((w.x - x).abs().max((w.y - y).abs()).max((w.z - z).abs()));
            }
        }
    }
    acc.finish()
}

// ---- entropy --------------------------------------------------------------

fn random_simplex(rng: &mut QRng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

fn diag_entropy(backend: &Backend, p: &[f64]) -> f64 {
    (backend.von_neumann)(&DensityMatrix::diagonal(p).expect("probability vector"))
}

fn schur_concavity(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("entropy.schur_concavity", 1e-9);
    let pairs = cfg.trials * 5 / 2;
    for k in 0..pairs {
        let n = rng.random_range(2..=6);
        let x = random_simplex(rng, n);
        let y = if k % 2 == 0 {
            // a T-transform of x is majorized by x
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            let t: f64 = rng.random();
            let mut y = x.clone();
            y[i] = t * x[i] + (1.0 - t) * x[j];
            y[j] = (1.0 - t) * x[i] + t * x[j];
            if i == j {
                y[i] = x[i];
            }
            y
        } else {
            random_simplex(rng, n)
        };
        let (px, py) = (ProbVector::new(x.clone()).unwrap(), ProbVector::new(y.clone()).unwrap());
        if majorizes(&px, &py).unwrap() {
            acc.err((diag_entropy(backend, &x) - diag_entropy(backend, &y)).max(0.0));
        }
    }
    acc.finish()
}

fn relative_entropy_to_maximally_mixed(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("entropy.relative_entropy_to_maximally_mixed", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4, 6]);
        let rho = random_state_any_rank(rng, d);
        let rel = relative_entropy(&rho, &DensityMatrix::maximally_mixed(d)).unwrap().value();
        acc.err((rel - ((d as f64).log2() - (backend.von_neumann)(&rho))).abs());
    }
    acc.finish()
}

fn uniform_is_majorized(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("entropy.uniform_is_majorized", 0.0);
    for _ in 0..cfg.trials {
        let n = rng.random_range(1..=8);
        let p = ProbVector::new(random_simplex(rng, n)).unwrap();
        acc.flag(majorizes(&p, &ProbVector::uniform(n)).unwrap());
    }
    acc.finish()
}

fn entropy_bounds(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("entropy.bounds_and_pure_states", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4, 8]);
        let rho = random_state_any_rank(rng, d);
        let s = (backend.von_neumann)(&rho);
        acc.err((-s).max(s - (d as f64).log2()).max(0.0));
        let pure = random_density_matrix_with(d, 1, rng).unwrap();
        acc.err((backend.von_neumann)(&pure).abs());
        acc.err(((backend.von_neumann)(&DensityMatrix::maximally_mixed(d)) - (d as f64).log2()).abs());
    }
    acc.finish()
}

// ---- coherence ------------------------------------------------------------

fn theorem1_identity(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.theorem1_identity", 1e-9);
    for _ in 0..cfg.trials * 5 {
        let d = pick(rng, &[2, 3, 4, 8]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let s = theorem1_split(&rho, &b).unwrap();
        acc.err((s.total - s.basis_part - s.residual).abs());
    }
    acc.finish()
}

fn coherence_ordering(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.ordering", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4, 8]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let cb = rel_ent_coherence(&rho, &b).unwrap();
        acc.err((cb - bi_coherence(&rho)).max(-cb).max(0.0));
    }
    acc.finish()
}

fn mub_collapse(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.mub_collapse", 1e-10);
    for k in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 5]);
        let rho = random_state_any_rank(rng, d);
        // alternate the fixed pair with a Haar-rotated copy of it
        let (b1, b2) = if k % 2 == 0 {
            (Basis::computational(d), Basis::fourier(d))
        } else {
            let u = Basis::haar_with(d, rng);
            (u.clone(), u.rotate(&Basis::fourier(d)))
        };
        acc.flag(is_mub(&b1, &b2, 1e-10).unwrap());
        let out = dephase(&dephase(&rho, &b1).unwrap(), &b2).unwrap();
        acc.err(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(d).matrix()));
    }
    acc.finish()
}

fn rel_ent_coherence_oracle(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.rel_ent_coherence_vs_grid_minimum", 2e-3);
    for _ in 0..(cfg.trials / 4).max(1) {
        let rho = random_state_any_rank(rng, 2);
        let b = Basis::haar_with(2, rng);
        let mut best = f64::INFINITY;
        for i in 0..=1000 {
            let t = i as f64 * 1e-3;
            let sigma = crate::qstate::state_with_spectrum(&[t, 1.0 - t], &b);
            best = best.min(relative_entropy(&rho, &sigma).unwrap().value());
        }
        acc.err((best - rel_ent_coherence(&rho, &b).unwrap()).abs());
    }
    acc.finish()
}

fn chain_monotonicity(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.chain_telescoping_and_monotonicity", 1e-8);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let len = rng.random_range(1..=5);
        let bases: Vec<Basis> = (0..len).map(|_| Basis::haar_with(d, rng)).collect();
        let rep = chain_split(&rho, &bases).unwrap();
        acc.err((rep.telescoped() - rep.total).abs());
        let mut prev = rep.total;
        for &r in &rep.residuals {
            acc.err((r - prev).max(0.0));
            prev = r;
        }
    }
    acc.finish()
}

fn commutant_characterization(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.only_maximally_mixed_is_diagonal_everywhere", 1e-9);
    for _ in 0..(cfg.trials / 4).max(1) {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let mm = DensityMatrix::maximally_mixed(d);
        let mut witnessed = false;
        for _ in 0..50 {
            let b = Basis::haar_with(d, rng);
            witnessed |= off_diagonal_mass(&rho, &b).unwrap() > 1e-6;
            acc.err(off_diagonal_mass(&mm, &b).unwrap());
        }
        acc.flag(witnessed);
    }
    acc.finish()
}

fn unitary_supremum(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("coherence.unitary_supremum", 1e-9);
    for _ in 0..(cfg.trials / 2).max(1) {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let r = max_coherence_over_unitaries(&rho, &b, 200, rng.random()).unwrap();
        acc.err((r.sample_max - r.supremum).max(0.0));
        acc.err((r.attained - r.supremum).abs());
    }
    acc.finish()
}

// ---- duality --------------------------------------------------------------

fn duality_budget_identity(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("duality.budget_identity", 1e-9);
    for _ in 0..cfg.trials * 5 / 2 {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let reference = purify(&rho).reduced(&[d, d], &[1]).unwrap();
        let e = (backend.von_neumann)(&reference);
        let sum = wave_measure(&rho, &b).unwrap() + particle_measure(&rho, &b).unwrap() + e;
        acc.err((sum - (d as f64).log2()).abs());
    }
    acc.finish()
}

fn random_permutation(rng: &mut QRng, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.shuffle(rng);
    p
}

fn convexity_defect(rng: &mut QRng, d: usize, f: fn(&DensityMatrix, &Basis) -> crate::Result<f64>) -> f64 {
    let (r1, r2) = (random_state_any_rank(rng, d), random_state_any_rank(rng, d));
    let b = Basis::haar_with(d, rng);
    let t: f64 = rng.random();
    let mix = DensityMatrix::mixture(&[(t, &r1), (1.0 - t, &r2)]).unwrap();
    (f(&mix, &b).unwrap() - t * f(&r1, &b).unwrap() - (1.0 - t) * f(&r2, &b).unwrap()).max(0.0)
}

fn particle_criteria(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("duality.particle_permutation_invariance_and_convexity", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let perm = random_permutation(rng, d);
        let pb = b.permuted(&perm).unwrap();
        acc.err((particle_measure(&rho, &b).unwrap() - particle_measure(&rho, &pb).unwrap()).abs());
        acc.err(convexity_defect(rng, d, particle_measure));
        // certain path and uniform path
        acc.err(
            (particle_measure(&PureState::basis_ket(d, perm[0]).density(), &Basis::computational(d)).unwrap()
                - (d as f64).log2())
            .abs(),
        );
    }
    acc.finish()
}

fn wave_criteria(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("duality.wave_relabeling_invariance_and_convexity", 1e-9);
    for _ in 0..cfg.trials {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let b = Basis::haar_with(d, rng);
        let pb = b.permuted(&random_permutation(rng, d)).unwrap();
        acc.err((wave_measure(&rho, &b).unwrap() - wave_measure(&rho, &pb).unwrap()).abs());
        acc.err(convexity_defect(rng, d, wave_measure));
        acc.err((wave_measure(&rho, &b).unwrap() - rel_ent_coherence(&rho, &b).unwrap()).abs());
    }
    acc.finish()
}

fn subadditivity(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("duality.subadditivity_of_pure_tripartite_states", 1e-9);
    for _ in 0..cfg.trials {
        let dims = pick(rng, &[[2, 2, 2], [2, 2, 4], [2, 3, 6], [3, 2, 2]]);
        let total: usize = dims.iter().product();
        let pure = random_density_matrix_with(total, 1, rng).unwrap();
        let sa = von_neumann(&reduce(&pure, &dims, &[0]).unwrap());
        let sb = von_neumann(&reduce(&pure, &dims, &[1]).unwrap());
        let sab = von_neumann(&reduce(&pure, &dims, &[0, 1]).unwrap());
        acc.err((sab - sa - sb).max(0.0));
    }
    acc.finish()
}

// ---- correlations ---------------------------------------------------------

/// Valid points of the 9x9x9 grid over `[-1, 1]^3`.
pub fn bell_grid() -> Vec<BellDiagonalParams> {
    let v = |i: usize| -1.0 + 0.25 * i as f64;
    let mut out = Vec::new();
    for i in 0..9 {
        for j in 0..9 {
            for k in 0..9 {
                if let Ok(p) = BellDiagonalParams::new(v(i), v(j), v(k)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn bell_closed_form_consistency(_: &mut QRng, _: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("correlations.closed_form_consistency", 1e-9);
    let comp = Basis::computational(4);
    for p in bell_grid() {
        let rho = bell_diagonal(&p);
        let r = bd_report(&p);
        acc.err((r.comp_coherence - rel_ent_coherence(&rho, &comp).unwrap()).abs());
        acc.err((r.bi_coherence - bi_coherence(&rho)).abs());
    }
    acc.finish()
}

fn bell_discord_oracle(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("correlations.discord_oracle_vs_closed_form", 1e-3);
    let mut grid = bell_grid();
    grid.shuffle(rng);
    for p in grid.iter().take(50.min(cfg.trials.max(1))) {
        let oracle = discord_oracle(&bell_diagonal(p), cfg.discord_grid).unwrap();
        let closed = bd_report(p).discord;
        // the oracle minimizes over a subset, so it may only overshoot
        acc.flag(oracle >= closed - 1e-9);
        acc.err((oracle - closed).abs());
    }
    acc.finish()
}

fn bell_hierarchy(_: &mut QRng, _: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("correlations.four_way_ordering", 1e-9);
    for p in bell_grid() {
        let r = bd_report(&p);
        acc.flag(r.hierarchy_ok);
        acc.err(
            (r.comp_coherence - r.bi_coherence)
                .max(r.discord - r.comp_coherence)
                .max(r.entanglement - r.discord)
                .max(0.0),
        );
    }
    acc.finish()
}

fn bell_entanglement_continuity(_: &mut QRng, _: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("correlations.entanglement_continuity_at_half", 1e-9);
    // largest Bell eigenvalue (1 + c1 - c2 + c3)/4 = 1/2 along c1 - c2 + c3 = 1
    for &(c1, c2, c3) in &[(1.0, 0.0, 0.0), (0.5, -0.5, 0.0), (0.0, 0.0, 1.0), (0.4, -0.2, 0.4)] {
        let p = BellDiagonalParams::new(c1, c2, c3).unwrap();
        acc.err(bd_report(&p).entanglement.abs());
        let nudged = BellDiagonalParams::new(c1 + 1e-7 * (1.0 - c1).signum(), c2, c3);
        if let Ok(q) = nudged {
            acc.err(bd_report(&q).entanglement.abs());
        }
    }
    acc.finish()
}

// ---- channels -------------------------------------------------------------

fn channel_preservation(rng: &mut QRng, cfg: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("channels.trace_and_hermiticity_preservation", 1e-10);
    for k in 0..cfg.trials {
        let (rho, ch) = if k % 2 == 0 {
            (random_state_any_rank(rng, 2), bit_flip(rng.random()).unwrap())
        } else {
            let d = pick(rng, &[2, 3]);
            let n = rng.random_range(1..=4);
            (random_state_any_rank(rng, d), random_kraus_channel(d, n, rng))
        };
        let out = apply_channel(&rho, &ch).unwrap();
        acc.err((trace(out.matrix()) - c64(1.0, 0.0)).norm());
        acc.err(hermiticity_defect(out.matrix()));
        let min = *crate::linalg::hermitian_eigenvalues(out.matrix()).last().unwrap();
        acc.err((-min).max(0.0));
    }
    acc.finish()
}

fn fig5_shape(_: &mut QRng, _: &VerifyConfig, _: &Backend) -> SuiteResult {
    let mut acc = Acc::new("channels.fig5_shape", 1e-9);
    let grid: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
    let rows = bitflip_duality_sweep(&grid, &Basis::computational(2)).unwrap();
    for r in &rows {
        acc.err((r.wave + r.particle + r.entanglement - 1.0).abs());
    }
    for k in 0..=100 {
        acc.err((rows[k].entanglement - rows[100 - k].entanglement).abs());
        acc.err((rows[k].wave - rows[100 - k].wave).abs());
    }
    for k in 0..50 {
        acc.err((rows[k + 1].wave - rows[k].wave).max(0.0));
        acc.err((rows[k + 50].wave - rows[k + 51].wave).max(0.0));
    }
    let argmax = (0..=100).fold(0, |m, k| if rows[k].entanglement > rows[m].entanglement { k } else { m });
    acc.flag(argmax == 50);
    let range = |f: fn(&crate::channels::SweepRow) -> f64| {
        let v: Vec<f64> = rows.iter().map(f).collect();
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    acc.flag(range(|r| r.wave) > range(|r| r.particle));
    acc.err(rows[0].entanglement.abs());
    acc.err(rows[100].entanglement.abs());
    acc.finish()
}

// ---- thermo ---------------------------------------------------------------

fn random_hamiltonian(rng: &mut QRng, d: usize) -> Hamiltonian {
    let u = Basis::haar_with(d, rng);
    // one time in three, force a degenerate level
    let degenerate = rng.random_range(0..3) == 0;
    let mut e: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
    if degenerate && d > 1 {
        e[1] = e[0];
    }
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(d, e.iter().map(|&x| c64(x, 0.0))));
    Hamiltonian::new(u.unitary() * diag * u.unitary().adjoint()).unwrap()
}

fn pinching_monotonicity(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("thermo.pinching_entropy_monotonicity", 1e-9);
    for _ in 0..cfg.trials * 3 / 2 {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let h = random_hamiltonian(rng, d);
        let pinched = hamiltonian_pinch(&rho, &h).unwrap();
        acc.err(((backend.von_neumann)(&rho) - (backend.von_neumann)(&pinched)).max(0.0));
        acc.err((trace(pinched.matrix()).re - 1.0).abs());
    }
    acc.finish()
}

fn work_decomposition(rng: &mut QRng, cfg: &VerifyConfig, backend: &Backend) -> SuiteResult {
    let mut acc = Acc::new("thermo.work_decomposition", 1e-9);
    for _ in 0..cfg.trials * 3 / 2 {
        let d = pick(rng, &[2, 3, 4]);
        let rho = random_state_any_rank(rng, d);
        let h = random_hamiltonian(rng, d);
        let t = rng.random_range(1.0..500.0);
        let kt = K_B * t;
        let pinched = hamiltonian_pinch(&rho, &h).unwrap();
        let w = coherence_to_work(&rho, &h, t, WorkUnits::BitsKT).unwrap().value / kt;
        let diff = (extractable_work(&rho, t, WorkUnits::BitsKT).unwrap().value
            - extractable_work(&pinched, t, WorkUnits::BitsKT).unwrap().value)
            / kt;
        acc.err((w - diff).abs());
        acc.err((w - ((backend.von_neumann)(&pinched) - (backend.von_neumann)(&rho))).abs());
        acc.err((w - (bi_coherence(&rho) - bi_coherence(&pinched))).abs());
    }
    acc.finish()
}
