use super::coherence::{l1_coherence_normalized, position_coherence, pure_state_coherence};
use super::density::reduce_to_coin;
use super::entropy::{correlated_coherence, relative_entropy_coherence, von_neumann_entropy};
use super::interference::interference_for_step;
use super::spread::std_dev;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::walk::{WalkSpec, WalkState};

/// Every measure of one state along a trajectory.
///
/// The coin-space quantities (`i_c`, `entanglement`, `c_r`, `i_cc*`) are
/// computed on the coin density matrix; `i_full` on the full pure state and
/// `i_p` on the position density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecord<T> {
    pub t: usize,
    pub i_full: T,
    pub i_p: T,
    pub i_c: T,
    pub entanglement: T,
    pub c_r: T,
    pub i_cc_raw: T,
    pub i_cc: T,
    pub sigma: T,
    pub prob: Vec<T>,
    pub mu: Vec<T>,
}

impl<T: Scalar> MeasureRecord<T> {
    /// Scalar columns in table order.
    pub fn scalars(&self) -> [T; 8] {
        [
            self.i_full,
            self.i_p,
            self.i_c,
            self.entanglement,
            self.c_r,
            self.i_cc_raw,
            self.i_cc,
            self.sigma,
        ]
    }

    pub(crate) fn zeroed(t: usize, sites: usize) -> Self {
        Self {
            t,
            i_full: T::zero(),
            i_p: T::zero(),
            i_c: T::zero(),
            entanglement: T::zero(),
            c_r: T::zero(),
            i_cc_raw: T::zero(),
            i_cc: T::zero(),
            sigma: T::zero(),
            prob: vec![T::zero(); sites],
            mu: vec![T::zero(); sites],
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        self.i_full += other.i_full;
        self.i_p += other.i_p;
        self.i_c += other.i_c;
        self.entanglement += other.entanglement;
        self.c_r += other.c_r;
        self.i_cc_raw += other.i_cc_raw;
        self.i_cc += other.i_cc;
        self.sigma += other.sigma;
        for (a, b) in self.prob.iter_mut().zip(&other.prob) {
            *a += *b;
        }
        for (a, b) in self.mu.iter_mut().zip(&other.mu) {
            *a += *b;
        }
    }

    pub(crate) fn scale(&mut self, k: T) {
        for v in [
            &mut self.i_full,
            &mut self.i_p,
            &mut self.i_c,
            &mut self.entanglement,
            &mut self.c_r,
            &mut self.i_cc_raw,
            &mut self.i_cc,
            &mut self.sigma,
        ] {
            *v *= k;
        }
        self.prob.iter_mut().chain(self.mu.iter_mut()).for_each(|v| *v *= k);
    }
}

/// Computes every measure of `state`, the state after `t` steps of `spec`.
/// `mu` refers to the step `t -> t+1`.
pub fn measure_record<T: Scalar>(state: &WalkState<T>, t: usize, spec: &WalkSpec<T>) -> Result<MeasureRecord<T>> {
    let rho_c = reduce_to_coin(state);
    let prob = state.probabilities();
    let corr = correlated_coherence(&rho_c)?;
    Ok(MeasureRecord {
        t,
        i_full: pure_state_coherence(state.amplitudes())?.value,
        i_p: position_coherence(state)?.value,
        i_c: l1_coherence_normalized(&rho_c)?.value,
        entanglement: von_neumann_entropy(&rho_c)?,
        c_r: relative_entropy_coherence(&rho_c)?,
        i_cc_raw: corr.raw,
        i_cc: corr.clamped,
        sigma: std_dev(&prob, state.lattice())?,
        mu: interference_for_step(state, spec, t)?,
        prob,
    })
}

/// Measures along a whole run of `steps` steps.
pub fn measure_trajectory<T: Scalar>(
    initial: crate::walk::InitialCoinState<T>,
    spec: &WalkSpec<T>,
    steps: usize,
    lattice: crate::walk::Lattice,
) -> Result<Vec<MeasureRecord<T>>> {
    let mut out = Vec::with_capacity(steps + 1);
    crate::walk::evolve_with(initial, spec, steps, lattice, |t, s| {
        out.push(measure_record(s, t, spec)?);
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{InitialCoinState, Lattice};

    #[test]
    fn initial_record() {
        let lat = Lattice::new(3).unwrap();
        let s = WalkState::localized(lat, InitialCoinState::symmetric());
        let r = measure_record(&s, 0, &WalkSpec::Homogeneous { theta: std::f64::consts::FRAC_PI_4 }).unwrap();
        // Only the two coin components at the origin: |ψ_i| = 1/√2.
        assert!((r.i_full - 1.0 / 13.0).abs() < 1e-15);
        assert_eq!(r.i_p, 0.0);
        assert!((r.i_c - 1.0).abs() < 1e-15);
        assert!(r.entanglement.abs() < 1e-12);
        assert!((r.c_r - 1.0).abs() < 1e-12);
        assert!(r.i_cc_raw.abs() < 1e-15);
        assert_eq!(r.sigma, 0.0);
        assert_eq!(r.prob.len(), 7);
    }

    #[test]
    fn first_step_record() {
        let lat = Lattice::new(3).unwrap();
        let recs = measure_trajectory(
            InitialCoinState::symmetric(),
            &WalkSpec::Homogeneous { theta: std::f64::consts::FRAC_PI_4 },
            1,
            lat,
        )
        .unwrap();
        let r = &recs[1];
        assert!((r.sigma - 1.0).abs() < 1e-15);
        assert!((r.entanglement - 1.0).abs() < 1e-12);
        assert!(r.i_c.abs() < 1e-15);
        assert!((r.i_cc - 1.0).abs() < 1e-15);
        // ρ_p has |ρ_{-1,1}| = 0 since different spins occupy the two sites.
        assert!(r.i_p.abs() < 1e-15);
    }
}
