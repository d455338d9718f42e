use super::coherence::l1_coherence;
use super::density::{reduce_to_coin, DensityMatrix};
use crate::error::{Result, WalkError};
use crate::scalar::Scalar;
use crate::walk::WalkState;

/// `-Σ p log₂ p` over eigenvalues or probabilities. Values in
/// `[-tol, 0)` are taken as zero, values above one as one; anything more
/// negative is rejected.
pub fn shannon_bits<T: Scalar>(values: &[T]) -> Result<T> {
    let tol = T::density_tol();
    let mut h = T::zero();
    for &p in values {
        if p < -tol {
            return Err(WalkError::Numerical(format!("negative eigenvalue {p}")));
        }
        let p = p.max(T::zero()).min(T::one());
        if p > T::zero() {
            h -= p * p.log2();
        }
    }
    Ok(h.max(T::zero()))
}

/// `S(ρ) = -Tr ρ log₂ ρ`, in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    shannon_bits(&rho.eigenvalues())
}

/// Coin–position entanglement `S(ρ_c)`.
pub fn entanglement<T: Scalar>(state: &WalkState<T>) -> Result<T> {
    von_neumann_entropy(&reduce_to_coin(state))
}

/// `C_r(ρ) = S(ρ_diag) - S(ρ)`.
pub fn relative_entropy_coherence<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(shannon_bits(&rho.diagonal())? - von_neumann_entropy(rho)?)
}

/// Coin-space lower bound `S(ρ_diag) - C_l1(ρ)` on the entanglement entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedCoherence<T> {
    pub raw: T,
    /// `raw` clamped below at zero.
    pub clamped: T,
}

pub fn correlated_coherence<T: Scalar>(rho_c: &DensityMatrix<T>) -> Result<CorrelatedCoherence<T>> {
    if rho_c.dim() != 2 {
        return Err(WalkError::InvalidDimension(format!(
            "correlated coherence is defined on the coin space, got dim {}",
            rho_c.dim()
        )));
    }
    let raw = shannon_bits(&rho_c.diagonal())? - l1_coherence(rho_c);
    Ok(CorrelatedCoherence {
        raw,
        clamped: raw.max(T::zero()),
    })
}
