use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },

    #[error("scenario `{scenario}`: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<ConfigError>,
    },

    #[error("unknown scenario `{0}` (built-in: hqw, sqw, tqw, ss-a, ss-b, ss-c, ss-d)")]
    UnknownScenario(String),

    #[error("duplicate scenario name `{0}`")]
    DuplicateName(String),

    #[error("config parse error: {0}")]
    Parse(String),
}

impl ConfigError {
    pub fn field(field: &'static str, message: impl Into<String>) -> Self {
        ConfigError::Field {
            field,
            message: message.into(),
        }
    }

    pub fn in_scenario(self, scenario: &str) -> Self {
        ConfigError::Scenario {
            scenario: scenario.to_string(),
            source: Box::new(self),
        }
    }
}
