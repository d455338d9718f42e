use num_complex::Complex;

use super::lattice::{flat_index, Lattice, Spin};
use crate::error::{Result, WalkError};
use crate::scalar::{czero, Scalar, C};

/// Coin part `α|↑⟩ + β|↓⟩` of the initial product state at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCoinState<T> {
    pub alpha: C<T>,
    pub beta: C<T>,
}

impl<T: Scalar> InitialCoinState<T> {
    pub fn new(alpha: C<T>, beta: C<T>) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        let tol = if std::mem::size_of::<T>() >= 8 {
            T::lit(1e-12)
        } else {
            T::lit(1e-6)
        };
        if !(norm - T::one()).abs().le(&tol) {
            return Err(WalkError::InvalidParameter {
                name: "initial",
                reason: format!("|alpha|^2 + |beta|^2 = {norm}, expected 1"),
            });
        }
        Ok(Self { alpha, beta })
    }

    /// `(|↑⟩ + i|↓⟩)/√2`, the reflection-symmetric initial state.
    pub fn symmetric() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self {
            alpha: Complex::new(h, T::zero()),
            beta: Complex::new(T::zero(), h),
        }
    }

    /// `(|↑⟩ + |↓⟩)/√2`.
    pub fn plus() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self {
            alpha: Complex::new(h, T::zero()),
            beta: Complex::new(h, T::zero()),
        }
    }

    pub fn up() -> Self {
        Self {
            alpha: Complex::new(T::one(), T::zero()),
            beta: czero(),
        }
    }

    pub fn down() -> Self {
        Self {
            alpha: czero(),
            beta: Complex::new(T::one(), T::zero()),
        }
    }
}

/// Pure walker state: one complex amplitude per `(spin, site)`.
///
/// Amplitudes live in a dense flat vector, site-major with the spin index
/// fastest, so entry `2*i + s` is `ψ_s(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    lattice: Lattice,
    amps: Vec<C<T>>,
}

impl<T: Scalar> WalkState<T> {
    pub fn zeros(lattice: Lattice) -> Self {
        Self {
            lattice,
            amps: vec![czero(); lattice.dim()],
        }
    }

    /// `(α|↑⟩ + β|↓⟩) ⊗ |x = 0⟩`.
    pub fn localized(lattice: Lattice, coin: InitialCoinState<T>) -> Self {
        let mut s = Self::zeros(lattice);
        let origin = lattice.half_width();
        s.amps[flat_index(Spin::Up, origin)] = coin.alpha;
        s.amps[flat_index(Spin::Down, origin)] = coin.beta;
        s
    }

    pub fn from_amplitudes(lattice: Lattice, amps: Vec<C<T>>) -> Result<Self> {
        if amps.len() != lattice.dim() {
            return Err(WalkError::InvalidDimension(format!(
                "expected {} amplitudes, got {}",
                lattice.dim(),
                amps.len()
            )));
        }
        Ok(Self { lattice, amps })
    }

    #[inline]
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    #[inline]
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C<T>] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amps
    }

    /// `ψ_s(x)`; zero outside the lattice.
    pub fn amp(&self, spin: Spin, x: i64) -> C<T> {
        self.lattice
            .index(x)
            .map_or_else(czero, |i| self.amps[flat_index(spin, i)])
    }

    #[inline]
    pub fn amp_at(&self, spin: Spin, site: usize) -> C<T> {
        self.amps[flat_index(spin, site)]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// `P(x) = |ψ↑(x)|² + |ψ↓(x)|²`, indexed by site.
    pub fn probabilities(&self) -> Vec<T> {
        self.amps
            .chunks_exact(2)
            .map(|p| p[0].norm_sqr() + p[1].norm_sqr())
            .collect()
    }

    pub fn probability(&self, x: i64) -> T {
        self.amp(Spin::Up, x).norm_sqr() + self.amp(Spin::Down, x).norm_sqr()
    }

    /// Site indices carrying any nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        self.amps
            .chunks_exact(2)
            .enumerate()
            .filter(|(_, p)| p[0] != czero() || p[1] != czero())
            .map(|(i, _)| i)
            .collect()
    }
}
