use serde::Deserialize;

use crate::error::ConfigError;

/// Angle given either as a number of radians or as a multiple of π such as
/// `"-3pi/2"`, `"pi/4"` or `"0.75*pi"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    Expr(String),
}

impl Angle {
    pub fn radians(&self, field: &'static str) -> Result<f64, ConfigError> {
        match self {
            Angle::Radians(v) => Ok(*v),
            Angle::Expr(s) => parse_angle(s).ok_or_else(|| ConfigError::field(field, format!("cannot parse angle `{s}`"))),
        }
    }
}

pub fn parse_angle(input: &str) -> Option<f64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (coef, rest) = s.split_once("pi")?;
    let coef = coef.trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().ok()?,
    };
    let den = match rest {
        "" => 1.0,
        r => r.strip_prefix('/')?.parse::<f64>().ok()?,
    };
    let v = coef * std::f64::consts::PI / den;
    v.is_finite().then_some(v)
}
