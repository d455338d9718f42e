use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::symmetry::build_step_unitary;
use qwalk_core::walk::{apply_split_step, apply_step, evolve, flat_index, InitialCoinState, Lattice, Spin, WalkSpec, WalkState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_interior_state(rng: &mut impl Rng, lattice: Lattice) -> WalkState<f64> {
    let n = lattice.site_count();
    let mut amps = vec![Complex64::new(0.0, 0.0); lattice.dim()];
    for site in 1..n - 1 {
        for spin in Spin::ALL {
            amps[flat_index(spin, site)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    WalkState::from_amplitudes(lattice, amps).unwrap()
}

fn four_variants(rng: &mut impl Rng, lattice: Lattice) -> Vec<WalkSpec<f64>> {
    vec![
        WalkSpec::Homogeneous { theta: FRAC_PI_4 },
        WalkSpec::SpatialDisorder {
            theta_x: (0..lattice.site_count()).map(|_| rng.gen_range(0.0..PI)).collect(),
        },
        WalkSpec::TemporalDisorder {
            theta_t: (0..5).map(|_| rng.gen_range(0.0..PI)).collect(),
        },
        WalkSpec::split_step(-1.5 * PI, 1.25 * PI, 0.75 * PI),
    ]
}

#[test]
fn stepper_matches_assembled_unitary() {
    let lattice = Lattice::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for spec in four_variants(&mut rng, lattice) {
        let t = 3;
        let w = build_step_unitary(&spec, lattice, t).unwrap();
        for _ in 0..100 {
            let psi = random_interior_state(&mut rng, lattice);
            let fast = apply_step(&psi, &spec, t).unwrap();
            let dense = w.apply(psi.amplitudes());
            for (a, b) in fast.amplitudes().iter().zip(&dense) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    assert!(worst < 1e-12, "max deviation {worst:e}");
}

#[test]
fn split_step_single_step_vector() {
    // R(-3π/2)(1,1)/√2 = (-1, 0); ↑ moves to -1, R(-π) turns it into +↓,
    // which S+ returns to the origin.
    let lattice = Lattice::new(2).unwrap();
    let spec = WalkSpec::split_step(-1.5 * PI, -PI, PI);
    let s0 = WalkState::localized(lattice, InitialCoinState::plus());
    let mut want = vec![Complex64::new(0.0, 0.0); lattice.dim()];
    want[flat_index(Spin::Down, lattice.index(0).unwrap())] = Complex64::new(1.0, 0.0);

    let fast = apply_split_step(&s0, &spec).unwrap();
    let dense = build_step_unitary(&spec, lattice, 0).unwrap().apply(s0.amplitudes());
    for ((a, b), w) in fast.amplitudes().iter().zip(&dense).zip(&want) {
        assert!((a - w).norm() < 1e-15, "{:?}", fast.amplitudes());
        assert!((b - w).norm() < 1e-15);
    }
}

#[test]
fn spatial_recursion_matches_coin_then_shift() {
    // Left/right-mover recursion with the coin angle of the source site.
    let lattice = Lattice::new(12).unwrap();
    let n = lattice.site_count();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let theta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..PI)).collect();
    let spec = WalkSpec::SpatialDisorder { theta_x: theta.clone() };
    let mut state = WalkState::localized(lattice, InitialCoinState::symmetric());
    for t in 0..12 {
        let next = apply_step(&state, &spec, t).unwrap();
        for x in 0..n {
            let mut up = Complex64::new(0.0, 0.0);
            let mut down = Complex64::new(0.0, 0.0);
            if x + 1 < n {
                let (s, c) = theta[x + 1].sin_cos();
                up = c * state.amp_at(Spin::Up, x + 1) + s * state.amp_at(Spin::Down, x + 1);
            }
            if x > 0 {
                let (s, c) = theta[x - 1].sin_cos();
                down = s * state.amp_at(Spin::Up, x - 1) - c * state.amp_at(Spin::Down, x - 1);
            }
            assert!((next.amp_at(Spin::Up, x) - up).norm() < 1e-14);
            assert!((next.amp_at(Spin::Down, x) - down).norm() < 1e-14);
        }
        state = next;
    }
}

#[test]
fn norm_drift_over_500_steps() {
    let lattice = Lattice::for_steps(500);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let specs = vec![
        WalkSpec::Homogeneous { theta: FRAC_PI_4 },
        WalkSpec::SpatialDisorder {
            theta_x: (0..lattice.site_count()).map(|_| rng.gen_range(0.0..PI)).collect(),
        },
        WalkSpec::TemporalDisorder {
            theta_t: (0..500).map(|_| rng.gen_range(0.0..PI)).collect(),
        },
        WalkSpec::split_step(FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4),
    ];
    for spec in specs {
        let traj = evolve(InitialCoinState::symmetric(), &spec, 500, lattice).unwrap();
        let drift = traj.iter().map(|s| (s.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-10, "{:?}: drift {drift:e}", spec.kind());
    }
}

#[test]
fn light_cone() {
    let steps = 30;
    let lattice = Lattice::new(40).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for spec in four_variants(&mut rng, lattice).into_iter().map(|s| match s {
        WalkSpec::TemporalDisorder { .. } => WalkSpec::TemporalDisorder {
            theta_t: (0..steps).map(|_| rng.gen_range(0.0..PI)).collect(),
        },
        other => other,
    }) {
        let traj = evolve(InitialCoinState::plus(), &spec, steps, lattice).unwrap();
        for (t, s) in traj.iter().enumerate() {
            for x in lattice.coords().filter(|x| x.unsigned_abs() as usize > t) {
                assert_eq!(s.probability(x), 0.0, "t={t} x={x}");
            }
        }
    }
}

#[test]
fn symmetric_initial_state_gives_mirror_distribution() {
    let traj = evolve(
        InitialCoinState::symmetric(),
        &WalkSpec::Homogeneous { theta: FRAC_PI_4 },
        150,
        Lattice::for_steps(150),
    )
    .unwrap();
    for s in &traj {
        for x in 0..=150 {
            assert!((s.probability(x) - s.probability(-x)).abs() < 1e-10);
        }
    }
}

#[test]
fn constant_disorder_tables_reproduce_homogeneous_walk() {
    let steps = 60;
    let lattice = Lattice::for_steps(steps);
    let theta = 0.9;
    let hqw = evolve(InitialCoinState::symmetric(), &WalkSpec::Homogeneous { theta }, steps, lattice).unwrap();
    let sqw = evolve(
        InitialCoinState::symmetric(),
        &WalkSpec::SpatialDisorder { theta_x: vec![theta; lattice.site_count()] },
        steps,
        lattice,
    )
    .unwrap();
    let tqw = evolve(
        InitialCoinState::symmetric(),
        &WalkSpec::TemporalDisorder { theta_t: vec![theta; steps] },
        steps,
        lattice,
    )
    .unwrap();
    assert_eq!(hqw, sqw);
    assert_eq!(hqw, tqw);
}

#[test]
fn homogeneous_walk_has_two_outer_peaks() {
    let traj = evolve(
        InitialCoinState::symmetric(),
        &WalkSpec::Homogeneous { theta: FRAC_PI_4 },
        100,
        Lattice::for_steps(100),
    )
    .unwrap();
    let p = traj[100].probabilities();
    let lattice = traj[100].lattice();
    let (imax, _) = p
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let peak = lattice.coord(imax).abs();
    assert!((60..=80).contains(&peak), "peak at {peak}");
    assert!(p[lattice.index(0).unwrap()] < p[imax] / 5.0);
}

#[test]
fn split_step_without_interface_peak() {
    let traj = evolve(
        InitialCoinState::plus(),
        &WalkSpec::split_step(FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4),
        100,
        Lattice::for_steps(100),
    )
    .unwrap();
    let s = &traj[100];
    let near: f64 = (-2..=2).map(|x| s.probability(x)).sum();
    let pmax = s.probabilities().into_iter().fold(0.0, f64::max);
    assert!(near < 0.1, "mass near interface {near}");
    assert!(s.probability(0) < pmax);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_step_preserves_norm(seed in any::<u64>(), theta in -10.0f64..10.0, t1 in -10.0f64..10.0, t2m in -10.0f64..10.0, t2p in -10.0f64..10.0) {
        let lattice = Lattice::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_interior_state(&mut rng, lattice);
        let specs = [
            WalkSpec::Homogeneous { theta },
            WalkSpec::SpatialDisorder { theta_x: (0..lattice.site_count()).map(|_| rng.gen_range(0.0..PI)).collect() },
            WalkSpec::TemporalDisorder { theta_t: vec![theta] },
            WalkSpec::split_step(t1, t2m, t2p),
        ];
        for spec in &specs {
            let next = apply_step(&psi, spec, 0).unwrap();
            prop_assert!((next.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
