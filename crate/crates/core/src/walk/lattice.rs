use crate::error::{Result, WalkError};

/// Internal (coin) basis state. `Up` is index 0, `Down` is index 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Up, Spin::Down];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// Finite line of sites `-L..=L`, with site `x` stored at index `x + L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    half_width: usize,
}

impl Lattice {
    pub fn new(half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(WalkError::InvalidParameter {
                name: "half_width",
                reason: "must be positive".into(),
            });
        }
        Ok(Self { half_width })
    }

    /// Lattice with exactly enough room for `steps` steps from the origin.
    pub fn for_steps(steps: usize) -> Self {
        Self {
            half_width: steps.max(1),
        }
    }

    #[inline]
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    #[inline]
    pub fn site_count(&self) -> usize {
        2 * self.half_width + 1
    }

    /// Dimension of the full coin ⊗ position space.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.site_count()
    }

    #[inline]
    pub fn coord(&self, index: usize) -> i64 {
        index as i64 - self.half_width as i64
    }

    #[inline]
    pub fn index(&self, x: i64) -> Option<usize> {
        let i = x + self.half_width as i64;
        (0..self.site_count() as i64).contains(&i).then_some(i as usize)
    }

    pub fn coords(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.site_count()).map(|i| self.coord(i))
    }
}

/// Flat amplitude index of `(spin, site index)`; site-major, spin-minor.
#[inline]
pub fn flat_index(spin: Spin, site: usize) -> usize {
    2 * site + spin.index()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coord_index_bijection() {
        let lat = Lattice::new(4).unwrap();
        assert_eq!(lat.site_count(), 9);
        assert_eq!(lat.index(0), Some(4));
        for i in 0..lat.site_count() {
            assert_eq!(lat.index(lat.coord(i)), Some(i));
        }
        assert_eq!(lat.index(5), None);
        assert_eq!(lat.index(-5), None);
    }

    #[test]
    fn zero_width_rejected() {
        assert!(Lattice::new(0).is_err());
    }
}
