use std::path::{Path, PathBuf};

use anyhow::Context;
use qwalk_core::disorder::run_ensemble;
use qwalk_core::symmetry::chiral_report;
use qwalk_core::{Lattice, MeasureRecord64, RealizationSeed, WalkKind, WalkSpec, WalkTemplate64};

use crate::output::{
    write_distribution, write_measures, write_toml, AnglesMeta, ChiralDoc, ColumnsMeta, ConventionsMeta, InitialMeta,
    Metadata, NormalizationMeta, ScenarioMeta, SeedsMeta, CHIRAL_FILE, DISTRIBUTION_FILE, DISTRIBUTION_HEADER,
    MEASURES_FILE, MEASURES_HEADER, METADATA_FILE,
};
use crate::scenario::Scenario;

/// Half width of the periodic lattice used for split-step chirality reports.
pub const CHIRAL_HALF_WIDTH: usize = 25;

#[derive(Debug, Clone)]
pub struct Simulation {
    pub records: Vec<MeasureRecord64>,
    pub seeds: Vec<RealizationSeed>,
}

#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub dir: PathBuf,
    pub metadata: PathBuf,
    pub measures: PathBuf,
    pub distribution: PathBuf,
    pub chiral: Option<PathBuf>,
    pub simulation: Simulation,
}

/// Runs the scenario (single walk or ensemble) without touching the disk.
pub fn simulate(scenario: &Scenario) -> anyhow::Result<Simulation> {
    scenario.validate()?;
    let out = run_ensemble(&scenario.ensemble_config()).with_context(|| format!("scenario `{}`", scenario.name))?;
    Ok(Simulation {
        records: out.records,
        seeds: out.seeds,
    })
}

pub fn chiral_doc(template: &WalkTemplate64, half_width: usize) -> anyhow::Result<ChiralDoc> {
    let spec: WalkSpec<f64> = template.with_table(Vec::new());
    Ok(chiral_report(&spec, Lattice::new(half_width)?)?.into())
}

pub fn metadata(scenario: &Scenario, seeds: &[RealizationSeed]) -> Metadata {
    let lattice = scenario.lattice();
    let kind = scenario.kind();
    let mut angles = AnglesMeta::default();
    match &scenario.template {
        WalkTemplate64::Homogeneous { theta } => angles.theta = Some(*theta),
        WalkTemplate64::SpatialDisorder => {
            angles.disorder = Some("per-site theta_x, i.i.d. uniform on closed [0, pi]".into());
            angles.table_len = Some(lattice.site_count());
        }
        WalkTemplate64::TemporalDisorder => {
            angles.disorder = Some("per-step theta_t, i.i.d. uniform on closed [0, pi]".into());
            angles.table_len = Some(scenario.steps + 1);
        }
        WalkTemplate64::SplitStep {
            theta1,
            theta2_minus,
            theta2_plus,
            interface,
        } => {
            angles.theta1 = Some(*theta1);
            angles.theta2_minus = Some(*theta2_minus);
            angles.theta2_plus = Some(*theta2_plus);
            angles.interface = Some(*interface);
        }
    }
    let split = kind == WalkKind::SplitStep;
    Metadata {
        tool: "qwalk".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario: ScenarioMeta {
            name: scenario.name.clone(),
            walk: kind.short_name().into(),
            steps: scenario.steps,
            runs: seeds.len(),
            master_seed: scenario.master_seed.to_string(),
            half_width: lattice.half_width(),
            sites: lattice.site_count(),
            full_dim: lattice.dim(),
        },
        initial: InitialMeta {
            alpha_re: scenario.initial.alpha.re,
            alpha_im: scenario.initial.alpha.im,
            beta_re: scenario.initial.beta.re,
            beta_im: scenario.initial.beta.im,
            position: 0,
        },
        angles,
        normalization: NormalizationMeta {
            i_full: lattice.dim() - 1,
            i_p: lattice.site_count() - 1,
            i_c: 1,
        },
        conventions: ConventionsMeta {
            boundary: "open lattice of half width L >= steps; amplitude reaching the edge is an error".into(),
            step_order: if split {
                "S+ R(theta2(x)) S- R(theta1), half-angle rotations".into()
            } else {
                "coin then shift: up moves to x-1, down moves to x+1".into()
            },
            interface_rule: split.then(|| "theta2_minus for x < interface, theta2_plus for x >= interface".into()),
            mu: if split {
                "|sum over output components of |sum_j a_j|^2 - sum_j |a_j|^2| through the one-step map, for the step t -> t+1".into()
            } else {
                "|sin cos (rho_ud + rho_du)(x+1) - sin cos (rho_ud + rho_du)(x-1)|, source-site angle, for the step t -> t+1".into()
            },
            mu_extension: split,
            coin_measures: "I_c, E, C_r and I_cc are computed on the coin density matrix".into(),
            i_cc: "S(rho_c,diag) - C_l1(rho_c); I_cc_raw unclamped, I_cc clamped at 0".into(),
            averaging: "arithmetic mean of per-realization measures in realization order".into(),
            rng: "ChaCha8 seeded with splitmix64_finalize(master_seed + (i+1)*0x9E3779B97F4A7C15)".into(),
        },
        seeds: SeedsMeta {
            realization: seeds.iter().map(|s| format!("{:#018x}", s.0)).collect(),
        },
        columns: ColumnsMeta {
            measures: MEASURES_HEADER.into(),
            distribution: DISTRIBUTION_HEADER.into(),
        },
    }
}

/// Runs `scenario` and writes its artifacts into `output_dir`.
pub fn run_scenario(scenario: &Scenario, output_dir: &Path) -> anyhow::Result<RunArtifacts> {
    let simulation = simulate(scenario)?;
    std::fs::create_dir_all(output_dir).with_context(|| format!("creating {}", output_dir.display()))?;
    let lattice = scenario.lattice();
    let measures = output_dir.join(MEASURES_FILE);
    let distribution = output_dir.join(DISTRIBUTION_FILE);
    let meta_path = output_dir.join(METADATA_FILE);
    write_measures(&measures, &simulation.records).with_context(|| format!("writing {}", measures.display()))?;
    write_distribution(&distribution, &simulation.records, lattice)
        .with_context(|| format!("writing {}", distribution.display()))?;
    write_toml(&meta_path, &metadata(scenario, &simulation.seeds))
        .with_context(|| format!("writing {}", meta_path.display()))?;
    let chiral = if scenario.kind() == WalkKind::SplitStep {
        let path = output_dir.join(CHIRAL_FILE);
        write_toml(&path, &chiral_doc(&scenario.template, CHIRAL_HALF_WIDTH)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Some(path)
    } else {
        None
    };
    Ok(RunArtifacts {
        dir: output_dir.to_path_buf(),
        metadata: meta_path,
        measures,
        distribution,
        chiral,
        simulation,
    })
}
