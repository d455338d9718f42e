use std::collections::HashSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use qwalk_core::{EnsembleConfig64, InitialCoinState, InitialCoinState64, Lattice, WalkKind, WalkTemplate64};
use serde::Deserialize;

use crate::angle::Angle;
use crate::error::ConfigError;

pub const DEFAULT_SEED: u64 = 1;

/// Built-in scenario names, in catalog order.
pub const BUILTIN: [&str; 7] = ["hqw", "sqw", "tqw", "ss-a", "ss-b", "ss-c", "ss-d"];

/// Split-step angle sets `(θ1, θ2−, θ2+)` of the four topological scenarios.
pub const SPLIT_STEP_ANGLES: [(&str, f64, f64, f64); 4] = [
    ("ss-a", FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4),
    ("ss-b", FRAC_PI_2, -3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4),
    ("ss-c", -1.5 * PI, 1.25 * PI, 0.75 * PI),
    ("ss-d", -1.5 * PI, -PI, PI),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub template: WalkTemplate64,
    pub steps: usize,
    pub runs: usize,
    pub initial: InitialCoinState64,
    pub master_seed: u64,
    pub half_width: usize,
}

impl Scenario {
    pub fn builtin(name: &str) -> Result<Self, ConfigError> {
        let coin_walk = |template, runs| Scenario {
            name: name.to_string(),
            template,
            steps: 200,
            runs,
            initial: InitialCoinState::symmetric(),
            master_seed: DEFAULT_SEED,
            half_width: 200,
        };
        match name {
            "hqw" => Ok(coin_walk(WalkTemplate64::Homogeneous { theta: FRAC_PI_4 }, 1)),
            "sqw" => Ok(coin_walk(WalkTemplate64::SpatialDisorder, 100)),
            "tqw" => Ok(coin_walk(WalkTemplate64::TemporalDisorder, 100)),
            _ => {
                let (_, theta1, theta2_minus, theta2_plus) = SPLIT_STEP_ANGLES
                    .iter()
                    .find(|(n, ..)| *n == name)
                    .ok_or_else(|| ConfigError::UnknownScenario(name.to_string()))?;
                Ok(Scenario {
                    name: name.to_string(),
                    template: WalkTemplate64::SplitStep {
                        theta1: *theta1,
                        theta2_minus: *theta2_minus,
                        theta2_plus: *theta2_plus,
                        interface: 0,
                    },
                    steps: 100,
                    runs: 1,
                    initial: InitialCoinState::plus(),
                    master_seed: DEFAULT_SEED,
                    half_width: 100,
                })
            }
        }
    }

    pub fn catalog() -> Vec<Self> {
        BUILTIN.iter().map(|n| Self::builtin(n).expect("built-in scenario")).collect()
    }

    pub fn kind(&self) -> WalkKind {
        self.template.kind()
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.half_width).expect("validated half width")
    }

    pub fn effective_runs(&self) -> usize {
        if self.kind().is_disordered() {
            self.runs
        } else {
            1
        }
    }

    pub fn ensemble_config(&self) -> EnsembleConfig64 {
        EnsembleConfig64 {
            runs: self.runs,
            master_seed: self.master_seed,
            template: self.template.clone(),
            steps: self.steps,
            lattice: self.lattice(),
            initial: self.initial,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let check = || -> Result<(), ConfigError> {
            if self.name.is_empty() {
                return Err(ConfigError::field("name", "must not be empty"));
            }
            if self.runs == 0 {
                return Err(ConfigError::field("runs", "must be at least 1"));
            }
            if self.half_width == 0 {
                return Err(ConfigError::field("half_width", "must be positive"));
            }
            if self.half_width < self.steps {
                return Err(ConfigError::field(
                    "half_width",
                    format!("{} is smaller than steps = {}", self.half_width, self.steps),
                ));
            }
            let angles: Vec<f64> = match &self.template {
                WalkTemplate64::Homogeneous { theta } => vec![*theta],
                WalkTemplate64::SplitStep {
                    theta1,
                    theta2_minus,
                    theta2_plus,
                    ..
                } => vec![*theta1, *theta2_minus, *theta2_plus],
                _ => vec![],
            };
            if angles.iter().any(|a| !a.is_finite()) {
                return Err(ConfigError::field("theta", "angles must be finite"));
            }
            Ok(())
        };
        check().map_err(|e| e.in_scenario(&self.name))
    }
}

/// One scenario entry of a sweep file or the `run` flags; everything but
/// the name is optional and overrides the base scenario.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    /// Built-in scenario to start from; defaults to `name` if that is built in.
    pub base: Option<String>,
    pub walk: Option<String>,
    pub theta: Option<Angle>,
    pub theta1: Option<Angle>,
    pub theta2_minus: Option<Angle>,
    pub theta2_plus: Option<Angle>,
    pub interface: Option<i64>,
    pub steps: Option<usize>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub half_width: Option<usize>,
    /// `[alpha_re, alpha_im, beta_re, beta_im]`.
    pub initial: Option<[f64; 4]>,
}

pub fn parse_walk(name: &str) -> Result<WalkKind, ConfigError> {
    match name {
        "hqw" | "homogeneous" => Ok(WalkKind::Homogeneous),
        "sqw" | "spatial" => Ok(WalkKind::SpatialDisorder),
        "tqw" | "temporal" => Ok(WalkKind::TemporalDisorder),
        "split-step" | "ss" | "split" => Ok(WalkKind::SplitStep),
        other => Err(ConfigError::field(
            "walk",
            format!("unknown walk `{other}` (expected hqw, sqw, tqw or split-step)"),
        )),
    }
}

impl ScenarioConfig {
    pub fn resolve(&self) -> Result<Scenario, ConfigError> {
        self.resolve_inner().map_err(|e| match e {
            e @ ConfigError::Scenario { .. } => e,
            e => e.in_scenario(&self.name),
        })
    }

    fn resolve_inner(&self) -> Result<Scenario, ConfigError> {
        let base_name = self
            .base
            .clone()
            .or_else(|| BUILTIN.contains(&self.name.as_str()).then(|| self.name.clone()));
        let base = base_name.as_deref().map(Scenario::builtin).transpose()?;
        let kind = match (&self.walk, &base) {
            (Some(w), _) => parse_walk(w)?,
            (None, Some(b)) => b.kind(),
            (None, None) => return Err(ConfigError::field("walk", "required when no built-in base is given")),
        };
        let angle = |field: &'static str, v: &Option<Angle>| v.as_ref().map(|a| a.radians(field)).transpose();
        let (theta, theta1, theta2_minus, theta2_plus) = (
            angle("theta", &self.theta)?,
            angle("theta1", &self.theta1)?,
            angle("theta2_minus", &self.theta2_minus)?,
            angle("theta2_plus", &self.theta2_plus)?,
        );
        let base_template = base.as_ref().map(|b| &b.template).filter(|t| t.kind() == kind);

        let template = match kind {
            WalkKind::Homogeneous => {
                let theta = match (theta, base_template) {
                    (Some(t), _) => t,
                    (None, Some(WalkTemplate64::Homogeneous { theta })) => *theta,
                    (None, _) => FRAC_PI_4,
                };
                WalkTemplate64::Homogeneous { theta }
            }
            WalkKind::SpatialDisorder => WalkTemplate64::SpatialDisorder,
            WalkKind::TemporalDisorder => WalkTemplate64::TemporalDisorder,
            WalkKind::SplitStep => {
                let from_base = match base_template {
                    Some(WalkTemplate64::SplitStep {
                        theta1,
                        theta2_minus,
                        theta2_plus,
                        interface,
                    }) => Some((*theta1, *theta2_minus, *theta2_plus, *interface)),
                    _ => None,
                };
                let pick = |field: &'static str, v: Option<f64>, b: Option<f64>| {
                    v.or(b)
                        .ok_or_else(|| ConfigError::field(field, "required for walk `split-step`"))
                };
                WalkTemplate64::SplitStep {
                    theta1: pick("theta1", theta1, from_base.map(|b| b.0))?,
                    theta2_minus: pick("theta2_minus", theta2_minus, from_base.map(|b| b.1))?,
                    theta2_plus: pick("theta2_plus", theta2_plus, from_base.map(|b| b.2))?,
                    interface: self.interface.or(from_base.map(|b| b.3)).unwrap_or(0),
                }
            }
        };
        if kind != WalkKind::SplitStep && self.interface.is_some() {
            return Err(ConfigError::field("interface", "only meaningful for split-step walks"));
        }

        let default_steps = if kind == WalkKind::SplitStep { 100 } else { 200 };
        let steps = self
            .steps
            .or(base.as_ref().map(|b| b.steps))
            .unwrap_or(default_steps);
        let runs = self
            .runs
            .or(base.as_ref().filter(|b| b.kind() == kind).map(|b| b.runs))
            .unwrap_or(if kind.is_disordered() { 100 } else { 1 });
        let initial = match (self.initial, &base) {
            (Some([ar, ai, br, bi]), _) => InitialCoinState::new(Complex64::new(ar, ai), Complex64::new(br, bi))
                .map_err(|e| ConfigError::field("initial", e.to_string()))?,
            (None, Some(b)) => b.initial,
            (None, None) if kind == WalkKind::SplitStep => InitialCoinState::plus(),
            (None, None) => InitialCoinState::symmetric(),
        };
        let scenario = Scenario {
            name: self.name.clone(),
            template,
            steps,
            runs,
            initial,
            master_seed: self.seed.or(base.as_ref().map(|b| b.master_seed)).unwrap_or(DEFAULT_SEED),
            half_width: self.half_width.unwrap_or(steps),
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

/// `[[scenario]]` tables of a sweep file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub scenario: Vec<ScenarioConfig>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn resolve(&self) -> Result<Vec<Scenario>, ConfigError> {
        let mut seen = HashSet::new();
        self.scenario
            .iter()
            .map(|c| {
                if !seen.insert(c.name.clone()) {
                    return Err(ConfigError::DuplicateName(c.name.clone()));
                }
                c.resolve()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contents() {
        let cat = Scenario::catalog();
        assert_eq!(cat.len(), 7);
        let hqw = &cat[0];
        assert_eq!((hqw.steps, hqw.half_width, hqw.effective_runs()), (200, 200, 1));
        assert_eq!(cat[1].runs, 100);
        let ssd = Scenario::builtin("ss-d").unwrap();
        assert_eq!(ssd.steps, 100);
        assert_eq!(
            ssd.template,
            WalkTemplate64::SplitStep { theta1: -1.5 * PI, theta2_minus: -PI, theta2_plus: PI, interface: 0 }
        );
        assert!(Scenario::builtin("nope").is_err());
    }

    #[test]
    fn overrides_apply_to_builtin() {
        let cfg = ScenarioConfig {
            name: "sqw".into(),
            steps: Some(50),
            runs: Some(7),
            seed: Some(9),
            ..Default::default()
        };
        let s = cfg.resolve().unwrap();
        assert_eq!((s.steps, s.runs, s.master_seed, s.half_width), (50, 7, 9, 50));
        assert_eq!(s.kind(), WalkKind::SpatialDisorder);
    }

    #[test]
    fn custom_split_step_needs_all_angles() {
        let mut cfg = ScenarioConfig {
            name: "mine".into(),
            walk: Some("split-step".into()),
            theta1: Some(Angle::Expr("pi/2".into())),
            theta2_minus: Some(Angle::Radians(0.1)),
            ..Default::default()
        };
        let err = cfg.resolve().unwrap_err().to_string();
        assert!(err.contains("mine") && err.contains("theta2_plus"), "{err}");
        cfg.theta2_plus = Some(Angle::Expr("-3pi/4".into()));
        let s = cfg.resolve().unwrap();
        assert_eq!(s.steps, 100);
        assert_eq!(s.initial, InitialCoinState::plus());
    }

    #[test]
    fn field_level_errors() {
        let bad = |cfg: ScenarioConfig, field: &str| {
            let msg = cfg.resolve().unwrap_err().to_string();
            assert!(msg.contains(field), "{msg}");
        };
        bad(ScenarioConfig { name: "x".into(), ..Default::default() }, "walk");
        bad(ScenarioConfig { name: "hqw".into(), runs: Some(0), ..Default::default() }, "runs");
        bad(ScenarioConfig { name: "hqw".into(), half_width: Some(10), ..Default::default() }, "half_width");
        bad(ScenarioConfig { name: "hqw".into(), initial: Some([1.0, 0.0, 1.0, 0.0]), ..Default::default() }, "initial");
        bad(ScenarioConfig { name: "hqw".into(), theta: Some(Angle::Expr("two".into())), ..Default::default() }, "theta");
        bad(ScenarioConfig { name: "hqw".into(), interface: Some(3), ..Default::default() }, "interface");
        bad(ScenarioConfig { name: "q".into(), walk: Some("ctqw".into()), ..Default::default() }, "walk");
    }

    #[test]
    fn sweep_parsing() {
        let text = r#"
            [[scenario]]
            name = "hqw"
            steps = 20

            [[scenario]]
            name = "small-ss"
            base = "ss-b"
            theta2_plus = "pi/2"
        "#;
        let sweep = SweepConfig::parse(text).unwrap().resolve().unwrap();
        assert_eq!(sweep[0].steps, 20);
        match sweep[1].template {
            WalkTemplate64::SplitStep { theta1, theta2_plus, .. } => {
                assert_eq!(theta1, FRAC_PI_2);
                assert_eq!(theta2_plus, FRAC_PI_2);
            }
            _ => panic!(),
        }
        let dup = "[[scenario]]\nname = \"hqw\"\n[[scenario]]\nname = \"hqw\"\n";
        assert!(matches!(SweepConfig::parse(dup).unwrap().resolve(), Err(ConfigError::DuplicateName(_))));
        assert!(SweepConfig::parse("[[scenario]]\nname = \"a\"\nbogus = 1\n").is_err());
    }
}
