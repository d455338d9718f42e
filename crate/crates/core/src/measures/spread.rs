use crate::error::{Result, WalkError};
use crate::scalar::Scalar;
use crate::walk::Lattice;

/// Standard deviation of position, in lattice sites.
pub fn std_dev<T: Scalar>(prob: &[T], lattice: Lattice) -> Result<T> {
    if prob.len() != lattice.site_count() {
        return Err(WalkError::InvalidDimension(format!(
            "{} probabilities for {} sites",
            prob.len(),
            lattice.site_count()
        )));
    }
    let total = prob.iter().fold(T::zero(), |a, p| a + *p);
    let tol = if std::mem::size_of::<T>() >= 8 { T::lit(1e-8) } else { T::lit(1e-4) };
    if (total - T::one()).abs() > tol {
        return Err(WalkError::InvalidInput(format!("probabilities sum to {total}")));
    }
    let (m1, m2) = prob.iter().enumerate().fold((T::zero(), T::zero()), |(m1, m2), (i, p)| {
        let x = T::from_i64(lattice.coord(i)).expect("coordinate fits scalar");
        (m1 + x * *p, m2 + x * x * *p)
    });
    let var = m2 - m1 * m1;
    if var < T::lit(-1e-12) * (T::one() + m2) {
        return Err(WalkError::Numerical(format!("negative variance {var}")));
    }
    Ok(var.max(T::zero()).sqrt())
}

/// `1 - max_t I_p(t)`: near 1 for a localized walk, near 0 for maximal spread.
pub fn localization_indicator<T: Scalar>(position_coherence: &[T]) -> Result<T> {
    let max = position_coherence
        .iter()
        .copied()
        .reduce(T::max)
        .ok_or_else(|| WalkError::InvalidInput("empty coherence trajectory".into()))?;
    Ok(T::one() - max)
}
