//! Dense one-step unitaries on a periodic lattice and the chirality check
//! `Γ W Γ⁻¹ = W⁻¹` with `Γ = σ_x ⊗ 1`.
//!
//! The matrices here are assembled from the individual coin, rotation and
//! shift operators by matrix multiplication, independently of the fast
//! steppers in [`crate::walk`], so they double as an oracle for them.

use ndarray::Array2;

use crate::error::{Result, WalkError};
use crate::scalar::{czero, creal, Scalar, C};
use crate::walk::{Coin, Lattice, Spin, WalkSpec};

/// Dense `2N × 2N` one-step evolution with periodic wrap, in the walk's
/// site-major amplitude layout.
#[derive(Debug, Clone, PartialEq)]
pub struct StepUnitary<T> {
    pub lattice: Lattice,
    pub matrix: Array2<C<T>>,
}

impl<T: Scalar> StepUnitary<T> {
    pub fn apply(&self, psi: &[C<T>]) -> Vec<C<T>> {
        let v = ndarray::ArrayView1::from(psi);
        self.matrix.dot(&v).to_vec()
    }

    pub fn adjoint(&self) -> Array2<C<T>> {
        adjoint(&self.matrix)
    }

    /// `‖W†W - I‖_max`.
    pub fn unitarity_residual(&self) -> T {
        max_abs_diff(&self.adjoint().dot(&self.matrix), &identity(self.matrix.nrows()))
    }

    /// Largest magnitude of an imaginary part.
    pub fn realness_residual(&self) -> T {
        self.matrix.iter().fold(T::zero(), |acc, z| acc.max(z.im.abs()))
    }
}

pub(crate) fn adjoint<T: Scalar>(m: &Array2<C<T>>) -> Array2<C<T>> {
    m.t().mapv(|z| z.conj())
}

pub(crate) fn identity<T: Scalar>(n: usize) -> Array2<C<T>> {
    Array2::from_shape_fn((n, n), |(i, j)| if i == j { creal(T::one()) } else { czero() })
}

pub fn max_abs_diff<T: Scalar>(a: &Array2<C<T>>, b: &Array2<C<T>>) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()))
}

fn frobenius_diff<T: Scalar>(a: &Array2<C<T>>, b: &Array2<C<T>>) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc + (*x - *y).norm_sqr())
        .sqrt()
}

/// Block-diagonal coin with a (possibly site-dependent) 2×2 block per site.
fn coin_layer<T: Scalar>(lattice: Lattice, mut coin_at: impl FnMut(usize) -> Result<Coin<T>>) -> Result<Array2<C<T>>> {
    let dim = lattice.dim();
    let mut m = Array2::from_elem((dim, dim), czero());
    for i in 0..lattice.site_count() {
        let block = coin_at(i)?.to_matrix();
        for r in 0..2 {
            for c in 0..2 {
                m[[2 * i + r, 2 * i + c]] = block[[r, c]];
            }
        }
    }
    Ok(m)
}

/// Periodic spin-conditioned shift: `↑` by `up_by` sites, `↓` by `down_by`.
fn shift_layer<T: Scalar>(lattice: Lattice, up_by: i64, down_by: i64) -> Array2<C<T>> {
    let n = lattice.site_count() as i64;
    let dim = lattice.dim();
    let mut m = Array2::from_elem((dim, dim), czero());
    for i in 0..n {
        for (spin, by) in [(Spin::Up, up_by), (Spin::Down, down_by)] {
            let dest = (i + by).rem_euclid(n) as usize;
            m[[2 * dest + spin.index(), 2 * i as usize + spin.index()]] = creal(T::one());
        }
    }
    m
}

/// Assembles step `t` of `spec` as a dense matrix on the periodic lattice.
pub fn build_step_unitary<T: Scalar>(spec: &WalkSpec<T>, lattice: Lattice, t: usize) -> Result<StepUnitary<T>> {
    let matrix = match spec {
        WalkSpec::SplitStep { theta1, .. } => {
            let r1 = Coin::half(*theta1)?;
            let rot1 = coin_layer(lattice, |_| Ok(r1))?;
            let rot2 = coin_layer(lattice, |i| {
                Coin::half(spec.theta2_at(lattice.coord(i)).expect("split-step spec"))
            })?;
            let s_minus = shift_layer(lattice, -1, 0);
            let s_plus = shift_layer(lattice, 0, 1);
            s_plus.dot(&rot2).dot(&s_minus).dot(&rot1)
        }
        _ => {
            spec.validate(lattice, 0)?;
            let coins = coin_layer(lattice, |i| {
                let theta = spec.coin_angle(i, t)?.expect("coin walk");
                Coin::full(theta)
            })?;
            shift_layer(lattice, -1, 1).dot(&coins)
        }
    };
    Ok(StepUnitary { lattice, matrix })
}

/// `Γ = σ_x ⊗ 1`: swaps the two spin components at every site.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiralOperator<T> {
    pub matrix: Array2<C<T>>,
}

impl<T: Scalar> ChiralOperator<T> {
    pub fn new(lattice: Lattice) -> Self {
        let dim = lattice.dim();
        let mut m = Array2::from_elem((dim, dim), czero());
        for i in 0..lattice.site_count() {
            m[[2 * i, 2 * i + 1]] = creal(T::one());
            m[[2 * i + 1, 2 * i]] = creal(T::one());
        }
        Self { matrix: m }
    }

    pub fn conjugate(&self, w: &Array2<C<T>>) -> Array2<C<T>> {
        self.matrix.dot(w).dot(&self.matrix)
    }
}

/// Distance of `W` from satisfying `Γ W Γ = W†`, in two formulations.
///
/// `direct` is `ΓWΓ - W†`, `product` is `ΓWΓW - I`. The max-norm values are
/// what gets reported; the Frobenius values are unitarily invariant, so for
/// unitary `W` the two formulations agree exactly there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralityResidual<T> {
    pub direct_max: T,
    pub product_max: T,
    pub direct_frobenius: T,
    pub product_frobenius: T,
}

pub fn chirality_residual<T: Scalar>(w: &StepUnitary<T>) -> Result<ChiralityResidual<T>> {
    let tol = T::density_tol();
    let unitarity = w.unitarity_residual();
    if unitarity > tol {
        return Err(WalkError::InvalidInput(format!(
            "step matrix is not unitary (residual {unitarity:e})"
        )));
    }
    let gamma = ChiralOperator::new(w.lattice);
    let conj = gamma.conjugate(&w.matrix);
    let adj = w.adjoint();
    let prod = conj.dot(&w.matrix);
    let id = identity(w.matrix.nrows());
    let r = ChiralityResidual {
        direct_max: max_abs_diff(&conj, &adj),
        product_max: max_abs_diff(&prod, &id),
        direct_frobenius: frobenius_diff(&conj, &adj),
        product_frobenius: frobenius_diff(&prod, &id),
    };
    let scale = T::one().max(r.direct_frobenius);
    if (r.direct_frobenius - r.product_frobenius).abs() > tol * scale {
        return Err(WalkError::Numerical(format!(
            "chirality formulations disagree: {:e} vs {:e}",
            r.direct_frobenius, r.product_frobenius
        )));
    }
    Ok(r)
}

/// Unitarity, chirality and realness of one assembled step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryCheck<T> {
    pub unitarity: T,
    pub chirality: ChiralityResidual<T>,
    pub realness: T,
}

pub fn check_step<T: Scalar>(spec: &WalkSpec<T>, lattice: Lattice) -> Result<SymmetryCheck<T>> {
    let w = build_step_unitary(spec, lattice, 0)?;
    Ok(SymmetryCheck {
        unitarity: w.unitarity_residual(),
        chirality: chirality_residual(&w)?,
        realness: w.realness_residual(),
    })
}

/// Split-step symmetry report: the full interface walk plus the two
/// homogeneous bulk walks with `θ2 = θ2−` and `θ2 = θ2+` everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralReport<T> {
    pub theta1: T,
    pub theta2_minus: T,
    pub theta2_plus: T,
    pub interface: i64,
    pub sites: usize,
    pub full: SymmetryCheck<T>,
    pub bulk_minus: SymmetryCheck<T>,
    pub bulk_plus: SymmetryCheck<T>,
}

pub fn chiral_report<T: Scalar>(spec: &WalkSpec<T>, lattice: Lattice) -> Result<ChiralReport<T>> {
    let WalkSpec::SplitStep {
        theta1,
        theta2_minus,
        theta2_plus,
        interface,
    } = *spec
    else {
        return Err(WalkError::InvalidParameter {
            name: "spec",
            reason: "chirality report needs a split-step spec".into(),
        });
    };
    let bulk = |theta2: T| WalkSpec::SplitStep {
        theta1,
        theta2_minus: theta2,
        theta2_plus: theta2,
        interface,
    };
    Ok(ChiralReport {
        theta1,
        theta2_minus,
        theta2_plus,
        interface,
        sites: lattice.site_count(),
        full: check_step(spec, lattice)?,
        bulk_minus: check_step(&bulk(theta2_minus), lattice)?,
        bulk_plus: check_step(&bulk(theta2_plus), lattice)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn theta_zero_is_signed_permutation() {
        let lat = Lattice::new(1).unwrap();
        let w = build_step_unitary(&WalkSpec::Homogeneous { theta: 0.0 }, lat, 0).unwrap();
        let want = |r: usize, c: usize| -> f64 {
            // ↑ at site i goes to i-1, ↓ to i+1 with a sign from B(0).
            let (site, spin) = (c / 2, c % 2);
            let dest = if spin == 0 { (site + 2) % 3 } else { (site + 1) % 3 };
            let sign = if spin == 0 { 1.0 } else { -1.0 };
            if r == 2 * dest + spin { sign } else { 0.0 }
        };
        for ((r, c), z) in w.matrix.indexed_iter() {
            assert_eq!(*z, creal(want(r, c)), "entry ({r},{c})");
        }
    }

    #[test]
    fn gamma_is_an_involution() {
        let g = ChiralOperator::<f64>::new(Lattice::new(3).unwrap());
        assert_eq!(g.matrix.dot(&g.matrix), identity(14));
        assert_eq!(adjoint(&g.matrix), g.matrix);
    }

    #[test]
    fn split_step_unitary_and_real() {
        let lat = Lattice::new(4).unwrap();
        let w = build_step_unitary(&WalkSpec::split_step(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2), lat, 0).unwrap();
        assert!(w.unitarity_residual() < 1e-12);
        assert!(w.realness_residual() < 1e-12);
    }

    #[test]
    fn residual_invariant_under_gamma_conjugation() {
        let lat = Lattice::new(4).unwrap();
        let w = build_step_unitary(&WalkSpec::split_step(-1.5 * PI, 1.25 * PI, 0.75 * PI), lat, 0).unwrap();
        let g = ChiralOperator::new(lat);
        let wc = StepUnitary { lattice: lat, matrix: g.conjugate(&w.matrix) };
        let a = chirality_residual(&w).unwrap();
        let b = chirality_residual(&wc).unwrap();
        assert!((a.direct_max - b.direct_max).abs() < 1e-12);
        assert!((a.direct_frobenius - b.direct_frobenius).abs() < 1e-12);
    }

    #[test]
    fn non_unitary_rejected() {
        let lat = Lattice::new(1).unwrap();
        let mut w = build_step_unitary(&WalkSpec::Homogeneous { theta: 0.3 }, lat, 0).unwrap();
        w.matrix[[0, 0]] += creal(0.5);
        assert!(matches!(chirality_residual(&w), Err(WalkError::InvalidInput(_))));
    }

    #[test]
    fn report_needs_split_step() {
        let lat = Lattice::new(2).unwrap();
        assert!(chiral_report(&WalkSpec::Homogeneous { theta: 0.1 }, lat).is_err());
        let r = chiral_report(&WalkSpec::split_step(FRAC_PI_2, -0.25 * PI, 0.25 * PI), lat).unwrap();
        assert_eq!(r.sites, 5);
        assert!(r.full.unitarity < 1e-12);
    }
}
