use ndarray::{arr2, Array2};

use crate::error::{Result, WalkError};
use crate::scalar::{creal, Scalar, C};

fn check_finite<T: Scalar>(name: &'static str, theta: T) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(WalkError::InvalidParameter {
            name,
            reason: format!("angle must be finite, got {theta}"),
        })
    }
}

/// Real 2×2 reflection-type coin `[[cos θ, sin θ], [sin θ, -cos θ]]`, as
/// `[[a, b], [c, d]]` entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Coin<T> {
    /// Full-angle coin used by the coin-then-shift walks.
    pub fn full(theta: T) -> Result<Self> {
        check_finite("theta", theta)?;
        let (s, c) = theta.sin_cos();
        Ok(Self { a: c, b: s, c: s, d: -c })
    }

    /// Half-angle rotation used by the split-step walk.
    pub fn half(theta: T) -> Result<Self> {
        check_finite("theta", theta)?;
        Self::full(theta / T::lit(2.0))
    }

    #[inline]
    pub fn apply(&self, up: C<T>, down: C<T>) -> (C<T>, C<T>) {
        (up * self.a + down * self.b, up * self.c + down * self.d)
    }

    pub fn to_matrix(&self) -> Array2<C<T>> {
        arr2(&[
            [creal(self.a), creal(self.b)],
            [creal(self.c), creal(self.d)],
        ])
    }
}

/// `[[cos θ, sin θ], [sin θ, -cos θ]]`.
pub fn coin_matrix<T: Scalar>(theta: T) -> Result<Array2<C<T>>> {
    Coin::full(theta).map(|c| c.to_matrix())
}

/// Half-angle matrix `[[cos θ/2, sin θ/2], [sin θ/2, -cos θ/2]]`.
pub fn rotation_matrix<T: Scalar>(theta: T) -> Result<Array2<C<T>>> {
    Coin::half(theta).map(|c| c.to_matrix())
}
