use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use qwalk_core::symmetry::{build_step_unitary, chiral_report, chirality_residual, ChiralOperator, StepUnitary};
use qwalk_core::walk::{Lattice, WalkSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPLIT_STEP_SETS: [(f64, f64, f64); 4] = [
    (FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4),
    (FRAC_PI_2, -3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4),
    (-1.5 * PI, 1.25 * PI, 0.75 * PI),
    (-1.5 * PI, -PI, PI),
];

#[test]
fn every_assembled_step_is_unitary() {
    let lattice = Lattice::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let specs = [
            WalkSpec::Homogeneous { theta: rng.gen_range(-PI..PI) },
            WalkSpec::SpatialDisorder {
                theta_x: (0..lattice.site_count()).map(|_| rng.gen_range(0.0..PI)).collect(),
            },
            WalkSpec::TemporalDisorder {
                theta_t: (0..3).map(|_| rng.gen_range(0.0..PI)).collect(),
            },
            WalkSpec::split_step(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)),
        ];
        for spec in &specs {
            let w = build_step_unitary(spec, lattice, 2).unwrap();
            assert!(w.unitarity_residual() < 1e-10);
        }
    }
}

#[test]
fn split_step_matrices_are_real() {
    let lattice = Lattice::new(25).unwrap();
    for (t1, t2m, t2p) in SPLIT_STEP_SETS {
        let w = build_step_unitary(&WalkSpec::split_step(t1, t2m, t2p), lattice, 0).unwrap();
        assert!(w.realness_residual() < 1e-12);
    }
}

#[test]
fn residual_formulations_agree() {
    let lattice = Lattice::new(25).unwrap();
    assert_eq!(lattice.site_count(), 51);
    for (t1, t2m, t2p) in SPLIT_STEP_SETS {
        let report = chiral_report(&WalkSpec::split_step(t1, t2m, t2p), lattice).unwrap();
        for check in [report.full, report.bulk_minus, report.bulk_plus] {
            let r = check.chirality;
            assert!((r.direct_frobenius - r.product_frobenius).abs() < 1e-10);
            assert!(check.unitarity < 1e-10);
            assert!(r.direct_max.is_finite() && r.product_max.is_finite());
        }
    }
}

#[test]
fn gamma_conjugation_leaves_residual_unchanged() {
    let lattice = Lattice::new(5).unwrap();
    let gamma = ChiralOperator::new(lattice);
    for (t1, t2m, t2p) in SPLIT_STEP_SETS {
        let w = build_step_unitary(&WalkSpec::split_step(t1, t2m, t2p), lattice, 0).unwrap();
        let conj = StepUnitary { lattice, matrix: gamma.conjugate(&w.matrix) };
        let (a, b) = (chirality_residual(&w).unwrap(), chirality_residual(&conj).unwrap());
        assert!((a.direct_max - b.direct_max).abs() < 1e-12);
    }
}
