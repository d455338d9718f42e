//! Seeded disorder tables and ensemble averaging of measure trajectories.
//!
//! Realization `i` of an ensemble with master seed `m` draws its angles from
//! a ChaCha8 stream seeded with [`RealizationSeed::derive`]`(m, i)`:
//!
//! ```text
//! seed(m, i) = splitmix64_finalize(m + (i + 1) * 0x9E3779B97F4A7C15)   (mod 2^64)
//! ```
//!
//! Angles are `Uniform::new_inclusive(0, π)` draws in `f64`, converted to the
//! working scalar. The finalizer is a bijection and the golden-ratio
//! increment is odd, so seeds never collide within one master seed.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, WalkError};
use crate::measures::{measure_record, MeasureRecord};
use crate::scalar::Scalar;
use crate::walk::{evolve_with, InitialCoinState, Lattice, WalkKind, WalkSpec};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealizationSeed(pub u64);

impl RealizationSeed {
    pub fn derive(master_seed: u64, index: u64) -> Self {
        let z = master_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
        Self(splitmix64_finalize(z))
    }

    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn uniform_angles<T: Scalar>(seed: RealizationSeed, len: usize) -> Vec<T> {
    let dist = Uniform::new_inclusive(0.0f64, std::f64::consts::PI);
    let mut rng = seed.rng();
    (0..len).map(|_| T::lit(dist.sample(&mut rng))).collect()
}

/// One i.i.d. uniform `[0, π]` angle per lattice site.
pub fn sample_spatial_angles<T: Scalar>(seed: RealizationSeed, lattice: Lattice) -> Vec<T> {
    uniform_angles(seed, lattice.site_count())
}

/// `steps` i.i.d. uniform `[0, π]` angles. Longer tables extend shorter ones
/// drawn from the same seed.
pub fn sample_temporal_angles<T: Scalar>(seed: RealizationSeed, steps: usize) -> Vec<T> {
    uniform_angles(seed, steps)
}

/// Walk family plus whatever angles are fixed across realizations.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkTemplate<T> {
    Homogeneous {
        theta: T,
    },
    SpatialDisorder,
    TemporalDisorder,
    SplitStep {
        theta1: T,
        theta2_minus: T,
        theta2_plus: T,
        interface: i64,
    },
}

impl<T: Scalar> WalkTemplate<T> {
    pub fn kind(&self) -> WalkKind {
        match self {
            WalkTemplate::Homogeneous { .. } => WalkKind::Homogeneous,
            WalkTemplate::SpatialDisorder => WalkKind::SpatialDisorder,
            WalkTemplate::TemporalDisorder => WalkKind::TemporalDisorder,
            WalkTemplate::SplitStep { .. } => WalkKind::SplitStep,
        }
    }

    /// Concrete spec, with the disorder table (if any) supplied by `table`.
    pub fn with_table(&self, table: Vec<T>) -> WalkSpec<T> {
        match self {
            WalkTemplate::Homogeneous { theta } => WalkSpec::Homogeneous { theta: *theta },
            WalkTemplate::SpatialDisorder => WalkSpec::SpatialDisorder { theta_x: table },
            WalkTemplate::TemporalDisorder => WalkSpec::TemporalDisorder { theta_t: table },
            WalkTemplate::SplitStep {
                theta1,
                theta2_minus,
                theta2_plus,
                interface,
            } => WalkSpec::SplitStep {
                theta1: *theta1,
                theta2_minus: *theta2_minus,
                theta2_plus: *theta2_plus,
                interface: *interface,
            },
        }
    }
}

/// Table length a template needs for a run of `steps` steps: one angle per
/// site for spatial disorder, `steps + 1` for temporal disorder (the last
/// one only enters the interference vector of the final state), none
/// otherwise.
pub fn table_len(kind: WalkKind, lattice: Lattice, steps: usize) -> usize {
    match kind {
        WalkKind::SpatialDisorder => lattice.site_count(),
        WalkKind::TemporalDisorder => steps + 1,
        WalkKind::Homogeneous | WalkKind::SplitStep => 0,
    }
}

/// The default sampler: seeded uniform `[0, π]` tables.
pub fn sample_table<T: Scalar>(kind: WalkKind, seed: RealizationSeed, len: usize) -> Vec<T> {
    match kind {
        WalkKind::SpatialDisorder | WalkKind::TemporalDisorder => uniform_angles(seed, len),
        WalkKind::Homogeneous | WalkKind::SplitStep => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig<T> {
    pub runs: usize,
    pub master_seed: u64,
    pub template: WalkTemplate<T>,
    pub steps: usize,
    pub lattice: Lattice,
    pub initial: InitialCoinState<T>,
}

impl<T: Scalar> EnsembleConfig<T> {
    /// Realization count actually used: deterministic walks run once.
    pub fn effective_runs(&self) -> usize {
        if self.template.kind().is_disordered() {
            self.runs
        } else {
            1
        }
    }

    pub fn seeds(&self) -> Vec<RealizationSeed> {
        (0..self.effective_runs() as u64)
            .map(|i| RealizationSeed::derive(self.master_seed, i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleOutput<T> {
    /// Mean record at each `t = 0..=steps`.
    pub records: Vec<MeasureRecord<T>>,
    pub seeds: Vec<RealizationSeed>,
}

/// Measures of a single realization under an explicit spec.
pub fn realization_records<T: Scalar>(config: &EnsembleConfig<T>, spec: &WalkSpec<T>) -> Result<Vec<MeasureRecord<T>>> {
    let mut out = Vec::with_capacity(config.steps + 1);
    evolve_with(config.initial, spec, config.steps, config.lattice, |t, s| {
        out.push(measure_record(s, t, spec)?);
        Ok(())
    })?;
    Ok(out)
}

/// [`run_ensemble_with`] using the seeded uniform sampler.
pub fn run_ensemble<T: Scalar>(config: &EnsembleConfig<T>) -> Result<EnsembleOutput<T>> {
    run_ensemble_with(config, sample_table::<T>)
}

/// Averages measure trajectories over realizations.
///
/// `sampler(kind, seed, len)` produces each realization's angle table.
/// Realizations run in parallel batches but are summed strictly in index
/// order, so the output does not depend on thread scheduling.
pub fn run_ensemble_with<T, F>(config: &EnsembleConfig<T>, sampler: F) -> Result<EnsembleOutput<T>>
where
    T: Scalar,
    F: Fn(WalkKind, RealizationSeed, usize) -> Vec<T> + Sync,
{
    if config.runs == 0 {
        return Err(WalkError::InvalidParameter {
            name: "runs",
            reason: "must be at least 1".into(),
        });
    }
    let seeds = config.seeds();
    let kind = config.template.kind();
    let len = table_len(kind, config.lattice, config.steps);
    let sites = config.lattice.site_count();
    let mut sum: Vec<MeasureRecord<T>> = (0..=config.steps).map(|t| MeasureRecord::zeroed(t, sites)).collect();

    let batch = rayon::current_num_threads().max(1) * 2;
    for (chunk_no, chunk) in seeds.chunks(batch).enumerate() {
        let results: Vec<Result<Vec<MeasureRecord<T>>>> = chunk
            .par_iter()
            .enumerate()
            .map(|(k, seed)| {
                let spec = config.template.with_table(sampler(kind, *seed, len));
                realization_records(config, &spec).map_err(|e| WalkError::Realization {
                    index: chunk_no * batch + k,
                    source: Box::new(e),
                })
            })
            .collect();
        for run in results {
            for (acc, rec) in sum.iter_mut().zip(&run?) {
                acc.add_assign(rec);
            }
        }
    }
    let inv = T::one() / T::from_usize_lossy(seeds.len());
    if seeds.len() > 1 {
        sum.iter_mut().for_each(|r| r.scale(inv));
    }
    Ok(EnsembleOutput { records: sum, seeds })
}
