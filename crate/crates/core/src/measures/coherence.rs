use super::density::DensityMatrix;
use crate::error::{Result, WalkError};
use crate::scalar::{Scalar, C};
use crate::walk::{Spin, WalkState};

/// Normalized l1 coherence together with the divisor `dim - 1` it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedCoherence<T> {
    pub value: T,
    pub normalization: usize,
}

/// Unnormalized l1 coherence `Σ_{i≠j} |ρ_ij|`.
pub fn l1_coherence<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    rho.matrix()
        .indexed_iter()
        .filter(|((i, j), _)| i != j)
        .fold(T::zero(), |acc, (_, z)| acc + z.norm())
}

fn normalization(dim: usize) -> Result<usize> {
    if dim < 2 {
        return Err(WalkError::InvalidDimension(format!(
            "l1 coherence needs dim >= 2, got {dim}"
        )));
    }
    Ok(dim - 1)
}

/// `I(ρ) = Σ_{i≠j} |ρ_ij| / (dim - 1)`.
pub fn l1_coherence_normalized<T: Scalar>(rho: &DensityMatrix<T>) -> Result<NormalizedCoherence<T>> {
    let normalization = normalization(rho.dim())?;
    Ok(NormalizedCoherence {
        value: l1_coherence(rho) / T::from_usize_lossy(normalization),
        normalization,
    })
}

/// l1 coherence of the pure state `|ψ⟩⟨ψ|` without forming the matrix:
/// `((Σ|ψ_i|)² - Σ|ψ_i|²) / (dim - 1)`.
pub fn pure_state_coherence<T: Scalar>(psi: &[C<T>]) -> Result<NormalizedCoherence<T>> {
    let normalization = normalization(psi.len())?;
    let (abs_sum, sqr_sum) = psi
        .iter()
        .fold((T::zero(), T::zero()), |(a, s), z| (a + z.norm(), s + z.norm_sqr()));
    Ok(NormalizedCoherence {
        value: (abs_sum * abs_sum - sqr_sum) / T::from_usize_lossy(normalization),
        normalization,
    })
}

/// Normalized l1 coherence of the position density matrix, summed over the
/// occupied sites only.
pub fn position_coherence<T: Scalar>(state: &WalkState<T>) -> Result<NormalizedCoherence<T>> {
    let normalization = normalization(state.lattice().site_count())?;
    let support = state.support();
    let occupied: Vec<(C<T>, C<T>)> = support
        .iter()
        .map(|&i| (state.amp_at(Spin::Up, i), state.amp_at(Spin::Down, i)))
        .collect();
    let mut total = T::zero();
    for (k, (ux, dx)) in occupied.iter().enumerate() {
        for (uy, dy) in &occupied[k + 1..] {
            total += (ux * uy.conj() + dx * dy.conj()).norm();
        }
    }
    Ok(NormalizedCoherence {
        value: total * T::lit(2.0) / T::from_usize_lossy(normalization),
        normalization,
    })
}
