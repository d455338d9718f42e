use ndarray::Array2;

use super::eigen::hermitian_eigenvalues;
use crate::error::{Result, WalkError};
use crate::scalar::{czero, creal, Scalar, C};
use crate::walk::{Lattice, Spin, WalkState};

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    data: Array2<C<T>>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates shape, Hermiticity and trace within [`Scalar::density_tol`].
    /// Positivity is checked separately by [`DensityMatrix::check_positive`].
    pub fn new(data: Array2<C<T>>) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c || r == 0 {
            return Err(WalkError::InvalidDimension(format!("density matrix must be square and nonempty, got {r}x{c}")));
        }
        let tol = T::density_tol();
        for i in 0..r {
            for j in i..r {
                if (data[[i, j]] - data[[j, i]].conj()).norm() > tol {
                    return Err(WalkError::InvalidInput(format!("not Hermitian at ({i}, {j})")));
                }
            }
        }
        let rho = Self { data };
        let tr = rho.trace();
        if (tr - T::one()).abs() > tol {
            return Err(WalkError::InvalidInput(format!("trace is {tr}, expected 1")));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(data: Array2<C<T>>) -> Self {
        Self { data }
    }

    pub fn from_diagonal(diag: &[T]) -> Result<Self> {
        let mut m = Array2::from_elem((diag.len(), diag.len()), czero());
        for (i, p) in diag.iter().enumerate() {
            m[[i, i]] = creal(*p);
        }
        Self::new(m)
    }

    /// `|ψ⟩⟨ψ|` for an arbitrary normalized vector.
    pub fn projector(psi: &[C<T>]) -> Result<Self> {
        let n = psi.len();
        Self::new(Array2::from_shape_fn((n, n), |(i, j)| psi[i] * psi[j].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    #[inline]
    pub fn matrix(&self) -> &Array2<C<T>> {
        &self.data
    }

    pub fn trace(&self) -> T {
        self.data.diag().iter().fold(T::zero(), |acc, z| acc + z.re)
    }

    pub fn diagonal(&self) -> Vec<T> {
        self.data.diag().iter().map(|z| z.re).collect()
    }

    /// `ρ_diag`: the matrix with all off-diagonal entries removed.
    pub fn dephased(&self) -> Self {
        let n = self.dim();
        let mut m = Array2::from_elem((n, n), czero());
        for i in 0..n {
            m[[i, i]] = creal(self.data[[i, i]].re);
        }
        Self { data: m }
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(&self.data)
    }

    pub fn check_positive(&self) -> Result<()> {
        let tol = T::density_tol();
        match self.eigenvalues().into_iter().find(|l| *l < -tol) {
            Some(l) => Err(WalkError::InvalidInput(format!("negative eigenvalue {l}"))),
            None => Ok(()),
        }
    }
}

/// `ρ = |ψ⟩⟨ψ|` on the full coin ⊗ position space (dimension `2N`).
///
/// Quadratic in the lattice size; hot paths use the reduced matrices.
pub fn full_density<T: Scalar>(state: &WalkState<T>) -> DensityMatrix<T> {
    let psi = state.amplitudes();
    let n = psi.len();
    DensityMatrix::from_raw(Array2::from_shape_fn((n, n), |(i, j)| psi[i] * psi[j].conj()))
}

/// Coin density matrix `(ρ_c)_{ss'} = Σ_x ψ_s(x) ψ_{s'}(x)*`.
pub fn reduce_to_coin<T: Scalar>(state: &WalkState<T>) -> DensityMatrix<T> {
    let mut m = Array2::from_elem((2, 2), czero());
    for pair in state.amplitudes().chunks_exact(2) {
        for s in 0..2 {
            for sp in 0..2 {
                m[[s, sp]] += pair[s] * pair[sp].conj();
            }
        }
    }
    DensityMatrix::from_raw(m)
}

/// Position density matrix `(ρ_p)_{xy} = Σ_s ψ_s(x) ψ_s(y)*`.
pub fn reduce_to_position<T: Scalar>(state: &WalkState<T>) -> DensityMatrix<T> {
    let n = state.lattice().site_count();
    DensityMatrix::from_raw(Array2::from_shape_fn((n, n), |(x, y)| {
        Spin::ALL
            .iter()
            .fold(czero(), |acc, s| acc + state.amp_at(*s, x) * state.amp_at(*s, y).conj())
    }))
}

/// Partial trace over position of a full-space matrix in the walk's
/// site-major layout.
pub fn trace_out_position<T: Scalar>(full: &DensityMatrix<T>, lattice: Lattice) -> Result<DensityMatrix<T>> {
    check_full_dim(full, lattice)?;
    let m = full.matrix();
    let mut out = Array2::from_elem((2, 2), czero());
    for s in 0..2 {
        for sp in 0..2 {
            for x in 0..lattice.site_count() {
                out[[s, sp]] += m[[2 * x + s, 2 * x + sp]];
            }
        }
    }
    Ok(DensityMatrix::from_raw(out))
}

/// Partial trace over the coin of a full-space matrix.
pub fn trace_out_coin<T: Scalar>(full: &DensityMatrix<T>, lattice: Lattice) -> Result<DensityMatrix<T>> {
    check_full_dim(full, lattice)?;
    let m = full.matrix();
    let n = lattice.site_count();
    let mut out = Array2::from_elem((n, n), czero());
    for x in 0..n {
        for y in 0..n {
            for s in 0..2 {
                out[[x, y]] += m[[2 * x + s, 2 * y + s]];
            }
        }
    }
    Ok(DensityMatrix::from_raw(out))
}

fn check_full_dim<T: Scalar>(full: &DensityMatrix<T>, lattice: Lattice) -> Result<()> {
    if full.dim() != lattice.dim() {
        return Err(WalkError::InvalidDimension(format!(
            "full matrix has dim {}, lattice needs {}",
            full.dim(),
            lattice.dim()
        )));
    }
    Ok(())
}
