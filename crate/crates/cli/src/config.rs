//! Line-oriented `section.key = value` run configuration with strict
//! unknown-key rejection, so a typo in a sweep study fails loudly instead
//! of silently running defaults.

use dpts_core::baseline::Protocol;
use dpts_core::model::{
    ChannelParams, EncodingParams, ReceiverParams, SourceParams, SystemParams,
};
use std::fmt;
use thiserror::Error;

/// Variable swept by `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    DistanceKm,
    Visibility,
    Mu,
}

impl SweepVariable {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "distance_km" => Some(Self::DistanceKm),
            "visibility" => Some(Self::Visibility),
            "mu" => Some(Self::Mu),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::DistanceKm => "distance_km",
            Self::Visibility => "visibility",
            Self::Mu => "mu",
        }
    }
}

/// Full run configuration: system parameters plus run controls.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub sweep: SweepVariable,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub protocols: Vec<Protocol>,
    pub seed: u64,
    pub n_subblocks: usize,
    pub out: Option<String>,
    pub optimize_mu: bool,
    pub mu_bounds: (f64, f64),
}

impl Default for RunConfig {
    /// Defaults mirror the medium-distance operating point used throughout
    /// the library tests: eta_d = 0.1, p_d = 1e-7, alpha = 0.2 dB/km,
    /// p_decoy = 0.02, mu = 0.2 at 50 km.
    fn default() -> Self {
        RunConfig {
            params: SystemParams {
                source: SourceParams {
                    mu: 0.2,
                    pulse_rate_hz: 1e10,
                },
                encoding: EncodingParams {
                    n_max: 4,
                    p_decoy: 0.02,
                },
                channel: ChannelParams {
                    length_km: 50.0,
                    attenuation_db_per_km: 0.2,
                },
                receiver: ReceiverParams {
                    efficiency: 0.1,
                    dark_count_prob: 1e-7,
                    visibility: 0.9,
                    dead_time_s: 0.0,
                },
            },
            sweep: SweepVariable::DistanceKm,
            from: 0.0,
            to: 200.0,
            steps: 41,
            protocols: vec![Protocol::Dpts, Protocol::Dps, Protocol::Cow],
            seed: 1,
            n_subblocks: 1_000_000,
            out: None,
            optimize_mu: false,
            mu_bounds: (1e-3, 1.0),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `section.key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {value}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
}

/// All keys understood by the parser, also shown in `--help`.
pub const KNOWN_KEYS: &[&str] = &[
    "source.mu",
    "source.pulse_rate_hz",
    "encoding.n_max",
    "encoding.p_decoy",
    "channel.length_km",
    "channel.attenuation_db_per_km",
    "receiver.efficiency",
    "receiver.dark_count_prob",
    "receiver.visibility",
    "receiver.dead_time_s",
    "run.sweep",
    "run.from",
    "run.to",
    "run.steps",
    "run.protocols",
    "run.seed",
    "run.n_subblocks",
    "run.out",
    "run.optimize_mu",
    "run.mu_lo",
    "run.mu_hi",
];

impl RunConfig {
    /// Parses a config file body on top of the defaults. `#` starts a
    /// comment; blank lines are skipped; unknown keys are hard errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line,
                text: raw.trim().to_string(),
            })?;
            config.apply(key.trim(), value.trim(), line)?;
        }
        Ok(config)
    }

    /// Applies one `section.key = value` assignment (file line or CLI
    /// override).
    pub fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let bad = |key: &str, value: &str| ConfigError::BadValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        };
        macro_rules! num {
            ($ty:ty) => {
                value.parse::<$ty>().map_err(|_| bad(key, value))?
            };
        }

        match key {
            "source.mu" => self.params.source.mu = num!(f64),
            "source.pulse_rate_hz" => self.params.source.pulse_rate_hz = num!(f64),
            "encoding.n_max" => self.params.encoding.n_max = num!(u32),
            "encoding.p_decoy" => self.params.encoding.p_decoy = num!(f64),
            "channel.length_km" => self.params.channel.length_km = num!(f64),
            "channel.attenuation_db_per_km" => {
                self.params.channel.attenuation_db_per_km = num!(f64)
            }
            "receiver.efficiency" => self.params.receiver.efficiency = num!(f64),
            "receiver.dark_count_prob" => self.params.receiver.dark_count_prob = num!(f64),
            "receiver.visibility" => self.params.receiver.visibility = num!(f64),
            "receiver.dead_time_s" => self.params.receiver.dead_time_s = num!(f64),
            "run.sweep" => {
                self.sweep = SweepVariable::parse(value).ok_or_else(|| bad(key, value))?
            }
            "run.from" => self.from = num!(f64),
            "run.to" => self.to = num!(f64),
            "run.steps" => self.steps = num!(usize),
            "run.protocols" => self.protocols = parse_protocols(value).ok_or_else(|| bad(key, value))?,
            "run.seed" => self.seed = num!(u64),
            "run.n_subblocks" => self.n_subblocks = num!(usize),
            "run.out" => self.out = Some(value.to_string()),
            "run.optimize_mu" => self.optimize_mu = value.parse().map_err(|_| bad(key, value))?,
            "run.mu_lo" => self.mu_bounds.0 = num!(f64),
            "run.mu_hi" => self.mu_bounds.1 = num!(f64),
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Run-control invariants; system parameters are validated separately
    /// through [`SystemParams::validate`].
    pub fn check_run_controls(&self) -> Result<(), String> {
        if self.from >= self.to {
            return Err(format!(
                "run.from must be less than run.to (got {} .. {})",
                self.from, self.to
            ));
        }
        if self.steps < 2 {
            return Err(format!("run.steps must be at least 2 (got {})", self.steps));
        }
        if self.protocols.is_empty() {
            return Err("run.protocols must name at least one protocol".to_string());
        }
        if self.sweep == SweepVariable::Mu && self.optimize_mu {
            return Err("run.optimize_mu cannot be combined with a mu sweep".to_string());
        }
        Ok(())
    }
}

fn parse_protocols(value: &str) -> Option<Vec<Protocol>> {
    let mut protocols = Vec::new();
    for part in value.split(',') {
        let p = match part.trim() {
            "dpts" => Protocol::Dpts,
            "dps" => Protocol::Dps,
            "cow" => Protocol::Cow,
            _ => return None,
        };
        if !protocols.contains(&p) {
            protocols.push(p);
        }
    }
    if protocols.is_empty() {
        None
    } else {
        Some(protocols)
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
