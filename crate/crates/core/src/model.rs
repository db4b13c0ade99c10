//! System parameter records shared by the analytic stack and the simulator.
//!
//! All records are plain immutable values. Construction is unchecked; call
//! [`SystemParams::validate`] once at the boundary and treat the result as
//! the validated value from then on. Validation is strict-reject: nothing is
//! clamped, every violated invariant is reported.

use thiserror::Error;

/// Weak-coherent-pulse source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceParams {
    /// Mean photon number of non-empty pulses, `mu > 0`.
    pub mu: f64,
    /// Laser repetition rate in Hz. One sub-block spans two pulse slots,
    /// so the interferometer delay is `T = 2 / pulse_rate_hz`.
    pub pulse_rate_hz: f64,
}

/// Block/decoy encoding choices made by the transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingParams {
    /// Maximum block length in pulses. Block lengths are drawn uniformly
    /// from `{4, 6, ..., n_max}`; must be even and at least 4.
    pub n_max: u32,
    /// Probability that a block is a decoy sequence (all pulses non-empty),
    /// in `[0, 1)`.
    pub p_decoy: f64,
}

/// Fiber channel: length and attenuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub length_km: f64,
    pub attenuation_db_per_km: f64,
}

/// Receiver imperfections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverParams {
    /// Detector efficiency in `(0, 1]`, common to both detectors.
    pub efficiency: f64,
    /// Dark-count probability per detector per pulse slot, in `[0, 1)`.
    pub dark_count_prob: f64,
    /// Interferometer visibility in `[0, 1]`.
    pub visibility: f64,
    /// Detector dead time in seconds; 0 models ideal detectors.
    pub dead_time_s: f64,
}

/// Full parameter record driving both analytics and simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub source: SourceParams,
    pub encoding: EncodingParams,
    pub channel: ChannelParams,
    pub receiver: ReceiverParams,
}

/// A block-length bound that cannot index the uniform set `{4, 6, ..., n_max}`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockLengthError {
    #[error("n_max must be even (got {0})")]
    Odd(u32),
    #[error("n_max must be at least 4 (got {0})")]
    TooSmall(u32),
}

/// Aggregated validation failures; one message per violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid parameters: {}", violations.join("; "))]
pub struct ValidationError {
    pub violations: Vec<String>,
}

/// Channel transmittance `t = 10^(-alpha * L / 10)`.
///
/// Equals 1 at zero length and decays multiplicatively with distance.
pub fn transmittance(channel: &ChannelParams) -> f64 {
    10f64.powf(-channel.attenuation_db_per_km * channel.length_km / 10.0)
}

/// Arithmetic mean of the uniform block-length set `{4, 6, ..., n_max}`,
/// i.e. `(4 + n_max) / 2`.
pub fn mean_block_length(n_max: u32) -> Result<f64, BlockLengthError> {
    if n_max < 4 {
        return Err(BlockLengthError::TooSmall(n_max));
    }
    if !n_max.is_multiple_of(2) {
        return Err(BlockLengthError::Odd(n_max));
    }
    Ok((4 + n_max) as f64 / 2.0)
}

impl ChannelParams {
    pub fn transmittance(&self) -> f64 {
        transmittance(self)
    }
}

impl EncodingParams {
    /// Mean block length of validated encoding parameters.
    pub fn mean_block_length(&self) -> f64 {
        mean_block_length(self.n_max).expect("encoding parameters validated")
    }

    /// Number of distinct block lengths in `{4, 6, ..., n_max}`.
    pub fn block_length_choices(&self) -> u32 {
        (self.n_max - 4) / 2 + 1
    }
}

impl SourceParams {
    /// Sub-block period `T = 2 / nu` in seconds.
    pub fn sub_block_period_s(&self) -> f64 {
        2.0 / self.pulse_rate_hz
    }
}

impl SystemParams {
    /// Checks every invariant and returns the record unchanged when all hold.
    ///
    /// On failure the error lists each violated invariant; nothing is clamped
    /// or coerced, since silent coercion would corrupt sweep studies.
    pub fn validate(self) -> Result<Self, ValidationError> {
        let mut violations = Vec::new();
        let mut check = |ok: bool, msg: String| {
            if !ok {
                violations.push(msg);
            }
        };

        check(
            self.source.mu > 0.0 && self.source.mu.is_finite(),
            format!("mu must be positive (got {})", self.source.mu),
        );
        check(
            self.source.pulse_rate_hz > 0.0 && self.source.pulse_rate_hz.is_finite(),
            format!(
                "pulse_rate_hz must be positive (got {})",
                self.source.pulse_rate_hz
            ),
        );
        if let Err(e) = mean_block_length(self.encoding.n_max) {
            check(false, e.to_string());
        }
        check(
            (0.0..1.0).contains(&self.encoding.p_decoy),
            format!("p_decoy must be in [0, 1) (got {})", self.encoding.p_decoy),
        );
        check(
            self.channel.length_km >= 0.0 && self.channel.length_km.is_finite(),
            format!(
                "length_km must be non-negative (got {})",
                self.channel.length_km
            ),
        );
        check(
            self.channel.attenuation_db_per_km >= 0.0 && self.channel.attenuation_db_per_km.is_finite(),
            format!(
                "attenuation_db_per_km must be non-negative (got {})",
                self.channel.attenuation_db_per_km
            ),
        );
        check(
            self.receiver.efficiency > 0.0 && self.receiver.efficiency <= 1.0,
            format!(
                "efficiency must be in (0, 1] (got {})",
                self.receiver.efficiency
            ),
        );
        check(
            (0.0..1.0).contains(&self.receiver.dark_count_prob),
            format!(
                "dark_count_prob must be in [0, 1) (got {})",
                self.receiver.dark_count_prob
            ),
        );
        check(
            (0.0..=1.0).contains(&self.receiver.visibility),
            format!(
                "visibility must be in [0, 1] (got {})",
                self.receiver.visibility
            ),
        );
        check(
            self.receiver.dead_time_s >= 0.0 && self.receiver.dead_time_s.is_finite(),
            format!(
                "dead_time_s must be non-negative (got {})",
                self.receiver.dead_time_s
            ),
        );

        if violations.is_empty() {
            Ok(self)
        } else {
            Err(ValidationError { violations })
        }
    }
}
