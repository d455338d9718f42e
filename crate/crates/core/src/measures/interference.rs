use crate::error::{Result, WalkError};
use crate::scalar::{czero, Scalar, C};
use crate::walk::{Coin, Spin, WalkSpec, WalkState};

/// Per-site degree of interference `μ_i` for a coin-then-shift step.
///
/// `μ_i = |s c (ρ↑↓ + ρ↓↑)(i+1) - s c (ρ↑↓ + ρ↓↑)(i-1)|` with
/// `ρ^{ss'}(x) = ψ_s(x) ψ_{s'}(x)*`, where `s c = sin θ cos θ` is evaluated
/// with the angle of the source site. `local_angles` holds one angle per
/// site; neighbors outside the lattice contribute zero.
pub fn degree_of_interference<T: Scalar>(state: &WalkState<T>, local_angles: &[T]) -> Result<Vec<T>> {
    let n = state.lattice().site_count();
    if local_angles.len() != n {
        return Err(WalkError::AngleTableMissing(format!(
            "{} local angles for {} sites",
            local_angles.len(),
            n
        )));
    }
    let cross: Vec<C<T>> = (0..n)
        .map(|x| {
            let (u, d) = (state.amp_at(Spin::Up, x), state.amp_at(Spin::Down, x));
            if u == czero() || d == czero() {
                return czero();
            }
            let (s, c) = local_angles[x].sin_cos();
            (u * d.conj() + d * u.conj()) * (s * c)
        })
        .collect();
    Ok((0..n)
        .map(|i| {
            let right = if i + 1 < n { cross[i + 1] } else { czero() };
            let left = if i > 0 { cross[i - 1] } else { czero() };
            (right - left).norm()
        })
        .collect())
}

/// Interference term of `P(x, t+1)` for a split-step walk: for each output
/// component, `|Σ_j a_j|² - Σ_j |a_j|²` where `a_j` are the contributions of
/// the individual source components through the composed one-step map.
pub fn split_step_interference<T: Scalar>(state: &WalkState<T>, spec: &WalkSpec<T>) -> Result<Vec<T>> {
    let WalkSpec::SplitStep { theta1, .. } = spec else {
        return Err(WalkError::InvalidParameter {
            name: "spec",
            reason: "split-step spec required".into(),
        });
    };
    let lattice = state.lattice();
    let n = lattice.site_count();
    let r1 = Coin::half(*theta1)?;
    let r2 = |site: usize| -> Result<Coin<T>> {
        Coin::half(spec.theta2_at(lattice.coord(site)).expect("split-step spec"))
    };
    let psi = |spin: Spin, site: Option<usize>| site.map_or_else(czero, |i| state.amp_at(spin, i));
    let cross = |terms: [C<T>; 4]| {
        let total = terms.iter().fold(czero::<T>(), |acc, z| acc + *z);
        total.norm_sqr() - terms.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    };
    let mut mu = Vec::with_capacity(n);
    for x in 0..n {
        let right = (x + 1 < n).then_some(x + 1);
        let left = x.checked_sub(1);
        let b = r2(x)?;
        let up = cross([
            psi(Spin::Up, right) * (b.a * r1.a),
            psi(Spin::Down, right) * (b.a * r1.b),
            psi(Spin::Up, Some(x)) * (b.b * r1.c),
            psi(Spin::Down, Some(x)) * (b.b * r1.d),
        ]);
        let down = match left {
            Some(l) => {
                let bl = r2(l)?;
                cross([
                    psi(Spin::Up, Some(x)) * (bl.c * r1.a),
                    psi(Spin::Down, Some(x)) * (bl.c * r1.b),
                    psi(Spin::Up, left) * (bl.d * r1.c),
                    psi(Spin::Down, left) * (bl.d * r1.d),
                ])
            }
            None => T::zero(),
        };
        mu.push((up + down).abs());
    }
    Ok(mu)
}

/// `μ` for the step that follows state `t` under `spec`.
///
/// Homogeneous and spatial walks use the site angles, temporal walks use
/// `theta_t[t]`, split-step walks use [`split_step_interference`].
pub fn interference_for_step<T: Scalar>(state: &WalkState<T>, spec: &WalkSpec<T>, t: usize) -> Result<Vec<T>> {
    let n = state.lattice().site_count();
    match spec {
        WalkSpec::Homogeneous { theta } => degree_of_interference(state, &vec![*theta; n]),
        WalkSpec::SpatialDisorder { theta_x } => degree_of_interference(state, theta_x),
        WalkSpec::TemporalDisorder { theta_t } => {
            let theta = theta_t
                .get(t)
                .ok_or_else(|| WalkError::AngleTableMissing(format!("no angle for step {t}")))?;
            degree_of_interference(state, &vec![*theta; n])
        }
        WalkSpec::SplitStep { .. } => split_step_interference(state, spec),
    }
}
