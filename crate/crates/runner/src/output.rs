//! Table and metadata writers.
//!
//! Tables are UTF-8 CSV with a header row. Every float is written as
//! `{:.16e}` (17 significant digits), which round-trips `f64` exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use qwalk_core::symmetry::{ChiralReport, SymmetryCheck};
use qwalk_core::{Lattice, MeasureRecord64};
use serde::Serialize;

pub const MEASURES_HEADER: &str = "step,I_full,I_p,I_c,E,C_r,I_cc_raw,I_cc,sigma";
pub const DISTRIBUTION_HEADER: &str = "step,x,prob,mu";

pub const MEASURES_FILE: &str = "measures.csv";
pub const DISTRIBUTION_FILE: &str = "distribution.csv";
pub const METADATA_FILE: &str = "metadata.toml";
pub const CHIRAL_FILE: &str = "chiral.toml";

#[inline]
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_measures(path: &Path, records: &[MeasureRecord64]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{MEASURES_HEADER}")?;
    for r in records {
        write!(w, "{}", r.t)?;
        for v in r.scalars() {
            write!(w, ",{}", fmt_float(v))?;
        }
        writeln!(w)?;
    }
    w.flush()
}

pub fn write_distribution(path: &Path, records: &[MeasureRecord64], lattice: Lattice) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{DISTRIBUTION_HEADER}")?;
    for r in records {
        for (i, (p, mu)) in r.prob.iter().zip(&r.mu).enumerate() {
            writeln!(w, "{},{},{},{}", r.t, lattice.coord(i), fmt_float(*p), fmt_float(*mu))?;
        }
    }
    w.flush()
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub scenario: ScenarioMeta,
    pub initial: InitialMeta,
    pub angles: AnglesMeta,
    pub normalization: NormalizationMeta,
    pub conventions: ConventionsMeta,
    pub seeds: SeedsMeta,
    pub columns: ColumnsMeta,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioMeta {
    pub name: String,
    pub walk: String,
    pub steps: usize,
    pub runs: usize,
    /// Decimal string; TOML integers cannot hold every `u64`.
    pub master_seed: String,
    pub half_width: usize,
    pub sites: usize,
    pub full_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InitialMeta {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub position: i64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AnglesMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interface: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disorder: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_len: Option<usize>,
}

/// Divisors used by the normalized l1 coherences.
#[derive(Debug, Clone, Serialize)]
pub struct NormalizationMeta {
    pub i_full: usize,
    pub i_p: usize,
    pub i_c: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConventionsMeta {
    pub boundary: String,
    pub step_order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interface_rule: Option<String>,
    pub mu: String,
    pub mu_extension: bool,
    pub coin_measures: String,
    pub i_cc: String,
    pub averaging: String,
    pub rng: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedsMeta {
    pub realization: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnsMeta {
    pub measures: String,
    pub distribution: String,
}

pub fn write_toml<S: Serialize>(path: &Path, doc: &S) -> std::io::Result<()> {
    let text = toml::to_string(doc).map_err(std::io::Error::other)?;
    std::fs::write(path, text)
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryDoc {
    pub unitarity_residual: f64,
    pub chirality_residual_max: f64,
    pub chirality_product_residual_max: f64,
    pub chirality_residual_frobenius: f64,
    pub chirality_product_residual_frobenius: f64,
    pub realness_residual: f64,
}

impl From<SymmetryCheck<f64>> for SymmetryDoc {
    fn from(c: SymmetryCheck<f64>) -> Self {
        Self {
            unitarity_residual: c.unitarity,
            chirality_residual_max: c.chirality.direct_max,
            chirality_product_residual_max: c.chirality.product_max,
            chirality_residual_frobenius: c.chirality.direct_frobenius,
            chirality_product_residual_frobenius: c.chirality.product_frobenius,
            realness_residual: c.realness,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiralDoc {
    pub theta1: f64,
    pub theta2_minus: f64,
    pub theta2_plus: f64,
    pub interface: i64,
    pub sites: usize,
    pub boundary: String,
    pub full: SymmetryDoc,
    pub bulk_minus: SymmetryDoc,
    pub bulk_plus: SymmetryDoc,
}

impl From<ChiralReport<f64>> for ChiralDoc {
    fn from(r: ChiralReport<f64>) -> Self {
        Self {
            theta1: r.theta1,
            theta2_minus: r.theta2_minus,
            theta2_plus: r.theta2_plus,
            interface: r.interface,
            sites: r.sites,
            boundary: "periodic".into(),
            full: r.full.into(),
            bulk_minus: r.bulk_minus.into(),
            bulk_plus: r.bulk_plus.into(),
        }
    }
}

impl ChiralDoc {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "split-step chirality report\n  theta1 = {}, theta2- = {}, theta2+ = {}, interface = {}\n  sites = {} (periodic)\n",
            self.theta1, self.theta2_minus, self.theta2_plus, self.interface, self.sites
        );
        s.push_str(&format!(
            "  {:<12} {:>14} {:>14} {:>14} {:>14}\n",
            "operator", "unitarity", "|GWG-W^+|max", "|GWGW-I|max", "realness"
        ));
        for (label, d) in [("interface", &self.full), ("bulk theta2-", &self.bulk_minus), ("bulk theta2+", &self.bulk_plus)] {
            s.push_str(&format!(
                "  {:<12} {:>14.3e} {:>14.3e} {:>14.3e} {:>14.3e}\n",
                label, d.unitarity_residual, d.chirality_residual_max, d.chirality_product_residual_max, d.realness_residual
            ));
        }
        s
    }
}
