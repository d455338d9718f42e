use super::coin::Coin;
use super::lattice::{flat_index, Lattice, Spin};
use super::spec::WalkSpec;
use super::state::{InitialCoinState, WalkState};
use crate::error::{Result, WalkError};
use crate::scalar::{czero, Scalar, C};

fn overflow<T: Scalar>(lattice: Lattice, site: usize, amp: C<T>) -> Result<()> {
    if amp.norm() > T::edge_zero_tol() {
        Err(WalkError::BoundaryOverflow {
            site: lattice.coord(site),
            half_width: lattice.half_width(),
            magnitude: amp.norm().to_f64().unwrap_or(f64::NAN),
        })
    } else {
        Ok(())
    }
}

/// Coin at every site followed by the spin-conditioned shift: `↑` moves to
/// `x - 1`, `↓` moves to `x + 1`.
fn coin_then_shift<T, F>(state: &WalkState<T>, mut coin_at: F) -> Result<WalkState<T>>
where
    T: Scalar,
    F: FnMut(usize) -> Result<Coin<T>>,
{
    let lattice = state.lattice();
    let n = lattice.site_count();
    let src = state.amplitudes();
    let mut out = WalkState::zeros(lattice);
    let dst = out.amplitudes_mut();
    for i in 0..n {
        let (up, down) = (src[2 * i], src[2 * i + 1]);
        if up == czero() && down == czero() {
            continue;
        }
        let (up, down) = coin_at(i)?.apply(up, down);
        if i == 0 {
            overflow(lattice, i, up)?;
        } else {
            dst[flat_index(Spin::Up, i - 1)] = up;
        }
        if i + 1 == n {
            overflow(lattice, i, down)?;
        } else {
            dst[flat_index(Spin::Down, i + 1)] = down;
        }
    }
    Ok(out)
}

fn check_norm<T: Scalar>(before: T, after: &WalkState<T>, t: usize) -> Result<()> {
    let drift = (after.norm_sqr() - before).abs();
    if drift > T::step_norm_tol() {
        return Err(WalkError::NormDrift {
            step: t,
            drift: drift.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Applies step `t` (0-based) of `spec` to `state`.
///
/// For the coin walks, step `t` is `S_x B(θ)`, with `θ` taken from the
/// source site for spatial disorder and from `theta_t[t]` for temporal
/// disorder. Split-step specs are forwarded to [`apply_split_step`].
pub fn apply_step<T: Scalar>(state: &WalkState<T>, spec: &WalkSpec<T>, t: usize) -> Result<WalkState<T>> {
    let before = state.norm_sqr();
    let next = match spec {
        WalkSpec::Homogeneous { theta } => {
            let coin = Coin::full(*theta)?;
            coin_then_shift(state, |_| Ok(coin))?
        }
        WalkSpec::SpatialDisorder { theta_x } => {
            if theta_x.len() != state.lattice().site_count() {
                return Err(WalkError::AngleTableMissing(format!(
                    "spatial table has {} entries for {} sites",
                    theta_x.len(),
                    state.lattice().site_count()
                )));
            }
            coin_then_shift(state, |i| Coin::full(theta_x[i]))?
        }
        WalkSpec::TemporalDisorder { theta_t } => {
            let theta = theta_t
                .get(t)
                .ok_or_else(|| WalkError::AngleTableMissing(format!("no angle for step {t}")))?;
            let coin = Coin::full(*theta)?;
            coin_then_shift(state, |_| Ok(coin))?
        }
        WalkSpec::SplitStep { .. } => return apply_split_step(state, spec),
    };
    check_norm(before, &next, t)?;
    Ok(next)
}

/// One split-step `S+ R(θ2(x)) S− R(θ1)`, applied right to left.
pub fn apply_split_step<T: Scalar>(state: &WalkState<T>, spec: &WalkSpec<T>) -> Result<WalkState<T>> {
    let WalkSpec::SplitStep {
        theta1,
        theta2_minus,
        theta2_plus,
        interface,
    } = spec
    else {
        return Err(WalkError::InvalidParameter {
            name: "spec",
            reason: "apply_split_step needs a split-step spec".into(),
        });
    };
    let lattice = state.lattice();
    let n = lattice.site_count();
    let before = state.norm_sqr();
    let r1 = Coin::half(*theta1)?;
    let r2_minus = Coin::half(*theta2_minus)?;
    let r2_plus = Coin::half(*theta2_plus)?;

    let mut amps = state.amplitudes().to_vec();
    for pair in amps.chunks_exact_mut(2) {
        let (u, d) = r1.apply(pair[0], pair[1]);
        pair[0] = u;
        pair[1] = d;
    }
    // S−: up moves one site left, down stays.
    overflow(lattice, 0, amps[flat_index(Spin::Up, 0)])?;
    for i in 0..n - 1 {
        amps[flat_index(Spin::Up, i)] = amps[flat_index(Spin::Up, i + 1)];
    }
    amps[flat_index(Spin::Up, n - 1)] = czero();

    for (i, pair) in amps.chunks_exact_mut(2).enumerate() {
        let r2 = if lattice.coord(i) < *interface {
            &r2_minus
        } else {
            &r2_plus
        };
        let (u, d) = r2.apply(pair[0], pair[1]);
        pair[0] = u;
        pair[1] = d;
    }
    // S+: down moves one site right, up stays.
    overflow(lattice, n - 1, amps[flat_index(Spin::Down, n - 1)])?;
    for i in (1..n).rev() {
        amps[flat_index(Spin::Down, i)] = amps[flat_index(Spin::Down, i - 1)];
    }
    amps[flat_index(Spin::Down, 0)] = czero();

    let next = WalkState::from_amplitudes(lattice, amps)?;
    check_norm(before, &next, 0)?;
    Ok(next)
}

/// Runs `steps` steps from `(α|↑⟩ + β|↓⟩) ⊗ |0⟩`, calling `visit` on the state
/// at every `t = 0..=steps`, and returns the final state.
pub fn evolve_with<T, F>(
    initial: InitialCoinState<T>,
    spec: &WalkSpec<T>,
    steps: usize,
    lattice: Lattice,
    mut visit: F,
) -> Result<WalkState<T>>
where
    T: Scalar,
    F: FnMut(usize, &WalkState<T>) -> Result<()>,
{
    if lattice.half_width() < steps {
        return Err(WalkError::LatticeTooSmall {
            half_width: lattice.half_width(),
            steps,
        });
    }
    spec.validate(lattice, steps)?;
    let mut state = WalkState::localized(lattice, initial);
    visit(0, &state)?;
    for t in 0..steps {
        state = apply_step(&state, spec, t).map_err(|e| match e {
            WalkError::NormDrift { drift, .. } => WalkError::NormDrift { step: t, drift },
            other => other,
        })?;
        visit(t + 1, &state)?;
    }
    Ok(state)
}

/// Full trajectory `t = 0..=steps`.
pub fn evolve<T: Scalar>(
    initial: InitialCoinState<T>,
    spec: &WalkSpec<T>,
    steps: usize,
    lattice: Lattice,
) -> Result<Vec<WalkState<T>>> {
    let mut traj = Vec::with_capacity(steps + 1);
    evolve_with(initial, spec, steps, lattice, |_, s| {
        traj.push(s.clone());
        Ok(())
    })?;
    Ok(traj)
}
