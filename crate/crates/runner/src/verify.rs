//! Self-checks run by `qwalk verify`.
//!
//! Every check takes the stepper under test as a parameter, so the same
//! battery can be pointed at a deliberately broken implementation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use qwalk_core::measures::{
    full_density, interference_for_step, l1_coherence, reduce_to_coin, reduce_to_position, relative_entropy_coherence,
    shannon_bits, trace_out_coin, trace_out_position, von_neumann_entropy, DensityMatrix,
};
use qwalk_core::symmetry::{build_step_unitary, max_abs_diff};
use qwalk_core::walk::{flat_index, InitialCoinState, Lattice, Spin, WalkSpec, WalkState};
use qwalk_core::{apply_step, Result as WalkResult, WalkState64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Advances a state by step `t` of a spec.
pub type Stepper<'a> = &'a (dyn Fn(&WalkState64, &WalkSpec<f64>, usize) -> WalkResult<WalkState64> + Sync);

pub const STEPPER_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-10;
pub const INEQUALITY_TOL: f64 = 1e-10;
pub const ENTROPY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn bound(name: &'static str, worst: f64, tol: f64) -> Self {
        Self {
            name,
            passed: worst < tol,
            detail: format!("max deviation {worst:.3e} (tolerance {tol:.0e})"),
        }
    }

    fn failed(name: &'static str, err: impl std::fmt::Display) -> Self {
        Self {
            name,
            passed: false,
            detail: format!("error: {err}"),
        }
    }
}

fn run_check(name: &'static str, tol: f64, f: impl FnOnce() -> WalkResult<f64>) -> CheckOutcome {
    match f() {
        Ok(worst) => CheckOutcome::bound(name, worst, tol),
        Err(e) => CheckOutcome::failed(name, e),
    }
}

/// Random pure state supported on sites `1..n-1`.
pub fn random_interior_state(rng: &mut impl Rng, lattice: Lattice) -> WalkState64 {
    let n = lattice.site_count();
    let mut amps = vec![Complex64::new(0.0, 0.0); lattice.dim()];
    for site in 1..n - 1 {
        for spin in Spin::ALL {
            amps[flat_index(spin, site)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    WalkState::from_amplitudes(lattice, amps).expect("normalized state")
}

/// One spec per walk family, with random disorder tables of length `steps`.
pub fn walk_variants(rng: &mut impl Rng, lattice: Lattice, steps: usize) -> Vec<WalkSpec<f64>> {
    vec![
        WalkSpec::Homogeneous { theta: FRAC_PI_4 },
        WalkSpec::SpatialDisorder {
            theta_x: (0..lattice.site_count()).map(|_| rng.gen_range(0.0..=PI)).collect(),
        },
        WalkSpec::TemporalDisorder {
            theta_t: (0..steps.max(1)).map(|_| rng.gen_range(0.0..=PI)).collect(),
        },
        WalkSpec::split_step(-1.5 * PI, 1.25 * PI, 0.75 * PI),
    ]
}

fn trajectory(stepper: Stepper, spec: &WalkSpec<f64>, steps: usize, lattice: Lattice) -> WalkResult<Vec<WalkState64>> {
    let mut traj = vec![WalkState::localized(lattice, InitialCoinState::symmetric())];
    for t in 0..steps {
        let next = stepper(&traj[t], spec, t)?;
        traj.push(next);
    }
    Ok(traj)
}

/// Stepper against the assembled dense unitary on 9 sites, 100 random
/// interior states per walk family.
pub fn check_stepper_vs_matrix(stepper: Stepper) -> CheckOutcome {
    run_check("stepper matches dense unitary", STEPPER_TOL, || {
        let lattice = Lattice::new(4)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, 5) {
            let t = 3;
            let w = build_step_unitary(&spec, lattice, t)?;
            for _ in 0..100 {
                let psi = random_interior_state(&mut rng, lattice);
                let fast = stepper(&psi, &spec, t)?;
                let dense = w.apply(psi.amplitudes());
                for (a, b) in fast.amplitudes().iter().zip(&dense) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
        Ok(worst)
    })
}

/// Direct reductions against partial traces of the full density matrix.
pub fn check_partial_trace() -> CheckOutcome {
    run_check("reduced density matrices match partial traces", STEPPER_TOL, || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut worst: f64 = 0.0;
        for half_width in [1, 4, 10] {
            let lattice = Lattice::new(half_width)?;
            let mut amps: Vec<Complex64> = (0..lattice.dim())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|z| *z /= norm);
            let s = WalkState::from_amplitudes(lattice, amps)?;
            let full = full_density(&s);
            worst = worst.max(max_abs_diff(trace_out_position(&full, lattice)?.matrix(), reduce_to_coin(&s).matrix()));
            worst = worst.max(max_abs_diff(trace_out_coin(&full, lattice)?.matrix(), reduce_to_position(&s).matrix()));
        }
        Ok(worst)
    })
}

/// `P(x, t+1)` rebuilt from the coin-basis terms at `t`, together with the
/// interference column, for the coin walks up to `t = 50`.
pub fn check_probability_decomposition(stepper: Stepper) -> CheckOutcome {
    run_check("probability update decomposes into direct and cross terms", STEPPER_TOL, || {
        let steps = 51;
        let lattice = Lattice::new(steps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, steps).into_iter().take(3) {
            let traj = trajectory(stepper, &spec, steps, lattice)?;
            for t in 0..steps {
                let (now, next) = (&traj[t], &traj[t + 1]);
                let mu = interference_for_step(now, &spec, t)?;
                let angle = |site: usize| spec.coin_angle(site, t).map(|a| a.expect("coin walk"));
                let term = |a: Spin, b: Spin, site: usize| now.amp_at(a, site) * now.amp_at(b, site).conj();
                for i in 0..lattice.site_count() {
                    let (mut direct, mut cross) = (0.0, 0.0);
                    if i + 1 < lattice.site_count() {
                        let (s, c) = angle(i + 1)?.sin_cos();
                        direct += c * c * term(Spin::Up, Spin::Up, i + 1).re + s * s * term(Spin::Down, Spin::Down, i + 1).re;
                        cross += s * c * (term(Spin::Up, Spin::Down, i + 1) + term(Spin::Down, Spin::Up, i + 1)).re;
                    }
                    if i > 0 {
                        let (s, c) = angle(i - 1)?.sin_cos();
                        direct += s * s * term(Spin::Up, Spin::Up, i - 1).re + c * c * term(Spin::Down, Spin::Down, i - 1).re;
                        cross -= s * c * (term(Spin::Up, Spin::Down, i - 1) + term(Spin::Down, Spin::Up, i - 1)).re;
                    }
                    let p = next.probability(lattice.coord(i));
                    worst = worst.max((p - direct - cross).abs());
                    worst = worst.max((mu[i] - (p - direct).abs()).abs());
                }
            }
        }
        Ok(worst)
    })
}

/// Split-step interference column against `P(x, t+1)` minus the incoherent
/// sum through the dense one-step map.
pub fn check_split_step_interference(stepper: Stepper) -> CheckOutcome {
    run_check("split-step interference matches dense map", STEPPER_TOL, || {
        let steps = 25;
        let lattice = Lattice::new(30)?;
        let spec = WalkSpec::split_step(-1.5 * PI, 1.25 * PI, 0.75 * PI);
        let w = build_step_unitary(&spec, lattice, 0)?;
        let traj = trajectory(stepper, &spec, steps, lattice)?;
        let mut worst: f64 = 0.0;
        for t in 0..steps {
            let psi = traj[t].amplitudes();
            let mu = interference_for_step(&traj[t], &spec, t)?;
            for i in 0..lattice.site_count() {
                let direct: f64 = [2 * i, 2 * i + 1]
                    .iter()
                    .flat_map(|&row| psi.iter().enumerate().map(move |(j, z)| (row, j, z)))
                    .map(|(row, j, z)| w.matrix[[row, j]].norm_sqr() * z.norm_sqr())
                    .sum();
                let p = traj[t + 1].probability(lattice.coord(i));
                worst = worst.max((mu[i] - (p - direct).abs()).abs());
            }
        }
        Ok(worst)
    })
}

/// `C_l1(ρ_c) >= C_r(ρ_c)` and `E >= S(ρ_c,diag) - C_l1(ρ_c)` along
/// trajectories of every walk family. Reports the largest violation.
pub fn check_inequality_chain(stepper: Stepper) -> CheckOutcome {
    run_check("coin coherence inequality chain", INEQUALITY_TOL, || {
        let steps = 120;
        let lattice = Lattice::new(steps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, steps) {
            for s in trajectory(stepper, &spec, steps, lattice)? {
                let rc = reduce_to_coin(&s);
                let cl1 = l1_coherence(&rc);
                let cr = relative_entropy_coherence(&rc)?;
                let e = von_neumann_entropy(&rc)?;
                let sdiag = shannon_bits(&rc.diagonal())?;
                worst = worst.max(cr - cl1).max(sdiag - cl1 - e);
            }
        }
        Ok(worst.max(0.0))
    })
}

/// Norm and total probability over 500 steps of every walk family.
pub fn check_norm_conservation(stepper: Stepper) -> CheckOutcome {
    run_check("norm conserved over 500 steps", NORM_TOL, || {
        let steps = 500;
        let lattice = Lattice::new(steps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, steps) {
            let mut s = WalkState::localized(lattice, InitialCoinState::symmetric());
            for t in 0..steps {
                s = stepper(&s, &spec, t)?;
                worst = worst.max((s.norm_sqr() - 1.0).abs());
                worst = worst.max((s.probabilities().iter().sum::<f64>() - 1.0).abs());
            }
        }
        Ok(worst)
    })
}

/// `W†W = I` for the assembled step of every walk family on 21 sites.
pub fn check_unitarity() -> CheckOutcome {
    run_check("assembled steps are unitary", STEPPER_TOL, || {
        let lattice = Lattice::new(10)?;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut specs = walk_variants(&mut rng, lattice, 4);
        specs.push(WalkSpec::split_step(FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4));
        specs.push(WalkSpec::split_step(-1.5 * PI, -PI, PI));
        let mut worst: f64 = 0.0;
        for spec in &specs {
            for t in 0..4 {
                worst = worst.max(build_step_unitary(spec, lattice, t)?.unitarity_residual());
            }
        }
        Ok(worst)
    })
}

/// No probability outside `|x| <= t`.
pub fn check_light_cone(stepper: Stepper) -> CheckOutcome {
    run_check("support stays inside the light cone", f64::MIN_POSITIVE, || {
        let steps = 30;
        let lattice = Lattice::new(40)?;
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, steps) {
            for (t, s) in trajectory(stepper, &spec, steps, lattice)?.iter().enumerate() {
                for x in lattice.coords().filter(|x| x.unsigned_abs() as usize > t) {
                    worst = worst.max(s.probability(x));
                }
            }
        }
        Ok(worst)
    })
}

/// The full density matrix of a pure walk state has zero entropy.
pub fn check_pure_state_entropy(stepper: Stepper) -> CheckOutcome {
    run_check("pure full state has zero entropy", ENTROPY_TOL, || {
        let steps = 8;
        let lattice = Lattice::new(steps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut worst: f64 = 0.0;
        for spec in walk_variants(&mut rng, lattice, steps) {
            let traj = trajectory(stepper, &spec, steps, lattice)?;
            let rho: DensityMatrix<f64> = full_density(&traj[steps]);
            worst = worst.max(von_neumann_entropy(&rho)?.abs());
        }
        Ok(worst)
    })
}

/// Runs the whole battery against `stepper`.
pub fn verify_with(stepper: Stepper) -> Vec<CheckOutcome> {
    vec![
        check_stepper_vs_matrix(stepper),
        check_partial_trace(),
        check_probability_decomposition(stepper),
        check_split_step_interference(stepper),
        check_inequality_chain(stepper),
        check_norm_conservation(stepper),
        check_unitarity(),
        check_light_cone(stepper),
        check_pure_state_entropy(stepper),
    ]
}

/// Runs the battery against the library stepper.
pub fn verify() -> Vec<CheckOutcome> {
    verify_with(&apply_step)
}
