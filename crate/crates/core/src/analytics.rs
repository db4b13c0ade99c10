//! Closed-form DPTS rate and security stack under the collective
//! beam-splitting attack.
//!
//! Everything here is a pure function of validated [`SystemParams`]; the
//! quantities and their relations are:
//!
//! * per-measurement signal click probability `R = [1 - exp(-mu t eta)] / 2`
//!   and total detection rate `R_B = R + 4 p_d (1 - R)` (2 detectors times
//!   2 time slots per measurement window),
//! * sifting prefactor `f = (1 - p_decoy)(<N> - 1)/<N>`,
//! * the four sifted-outcome probabilities and the base-4 mutual information
//!   `I_AB = 1 - H(A|B)`,
//! * the eavesdropper bound `chi = chi0 + (1 - chi0) chi1`, where `chi0` is
//!   the Holevo quantity of the tapped four-pulse states and `chi1` corrects
//!   for a secondary temporal-discrimination attack,
//! * the secret key rate `f R_B max(0, I_AB - chi)` in several
//!   normalizations, including a dead-time-limited throughput in bits/s.
//!
//! Base-4 units throughout (1 unit = one quaternary symbol = 2 bits); the
//! binary-entropy factor inside `chi1` is a dimensionless channel capacity
//! and stays base-2. Conversion to bits happens only in [`KeyRateReport`].

use crate::entropy::{h2, h4, s4, DomainError};
use crate::model::SystemParams;

/// All intermediate analytic quantities of the detection/sifting chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBreakdown {
    /// Per-measurement signal detection probability `R`.
    pub r_click: f64,
    /// Total detection rate `R_B` including dark counts.
    pub r_total: f64,
    /// Sifting prefactor `f`.
    pub prefactor_f: f64,
    /// Outcome probabilities `e_r^(1..4)`: total error, phase-only error,
    /// and the two time-error classes. `err[0] = err[1] + err[2] + err[3]`
    /// holds algebraically.
    pub err: [f64; 4],
    /// Conditional entropy `H(A|B)` in base-4 units.
    pub h_a_given_b: f64,
    /// Mutual information `I_AB = 1 - H(A|B)` in base-4 units.
    pub i_ab: f64,
}

/// Beam-splitting-attack bound on the eavesdropper's information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EveBound {
    /// Elementary overlap `gamma = exp(-mu (1 - t))` between tapped states
    /// of opposite sign.
    pub gamma: f64,
    /// Success probability of the secondary attack's temporal guess,
    /// `p_E = (<N> - 2)/(<N> - 1)`.
    pub p_eve: f64,
    /// Primary Holevo bound (base-4 units).
    pub chi0: f64,
    /// Secondary-attack correction term.
    pub chi1: f64,
    /// Total bound `chi = chi0 + (1 - chi0) chi1`.
    pub chi: f64,
}

/// Final secret-key rates in the three normalizations used by the figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyRateReport {
    /// Secret quaternary symbols per sub-block-pair measurement,
    /// `f R_B (I_AB - chi)`.
    pub rsk_per_measurement: f64,
    /// Secret bits per emitted pulse slot. One measurement spans 2 pulse
    /// slots and carries 2 bits, so this is numerically equal to
    /// `rsk_per_measurement`.
    pub rsk_bits_per_pulse: f64,
    /// Throughput in bits/s including detector dead time.
    pub rsk_bits_per_second: f64,
    /// False when `I_AB <= chi`; all rates are clamped to 0 in that case,
    /// since a negative bound just means no extractable key.
    pub secure: bool,
}

/// Bits extracted per DPTS detection event (time bit + phase bit).
pub const DPTS_BITS_PER_CLICK: f64 = 2.0;

/// Detection/sifting chain for validated parameters.
pub fn rate_breakdown(params: &SystemParams) -> RateBreakdown {
    let t = params.channel.transmittance();
    let mu = params.source.mu;
    let eta = params.receiver.efficiency;
    let pd = params.receiver.dark_count_prob;
    let v = params.receiver.visibility;
    let mean_n = params.encoding.mean_block_length();

    let r = (1.0 - (-mu * t * eta).exp()) / 2.0;
    let r_b = r + 4.0 * pd * (1.0 - r);
    let f = (1.0 - params.encoding.p_decoy) * (mean_n - 1.0) / mean_n;

    let dark = pd * (1.0 - r);
    let flip = r * (1.0 - v) / 2.0;
    let e1 = (flip + 3.0 * dark) / r_b;
    let e2 = (flip + dark) / r_b;
    let e3 = dark / r_b;
    let e4 = e3;

    let h_ab = s4(1.0 - e1) + s4(e2) + s4(e3) + s4(e4);

    RateBreakdown {
        r_click: r,
        r_total: r_b,
        prefactor_f: f,
        err: [e1, e2, e3, e4],
        h_a_given_b: h_ab,
        i_ab: 1.0 - h_ab,
    }
}

/// Overlap parameter `gamma = exp(-mu (1 - t))` of Eve's tapped coherent
/// states (`|alpha_E|^2 = mu (1 - t)`).
pub fn gamma(mu: f64, transmittance: f64) -> f64 {
    (-mu * (1.0 - transmittance)).exp()
}

/// Eigenvalues of Eve's eight-state mixture, with multiplicities 1, 3, 4.
/// They sum to 1 for any `gamma` in `[0, 1]`.
pub fn eve_mixture_eigenvalues(gamma: f64) -> (f64, f64, f64) {
    let g2 = gamma * gamma;
    let g4 = g2 * g2;
    (
        ((1.0 + g2).powi(2) + 4.0 * g2) / 8.0,
        (1.0 - g2).powi(2) / 8.0,
        (1.0 - g4) / 8.0,
    )
}

/// Primary Holevo bound `chi0 = S(rho_E) - h_4((1 - gamma^4)/2)` in base-4
/// units, from the closed-form eigenvalue set of the tapped four-pulse
/// states.
///
/// The mean conditioned entropy enters with a minus sign: each conditioned
/// state is a balanced mixture of two pure states with overlap `gamma^4`
/// and contributes `h_4((1 - gamma^4)/2)`, and `chi0` must interpolate
/// between 0 at `gamma = 1` and 1 at `gamma = 0`.
pub fn holevo_primary(gamma: f64) -> Result<f64, DomainError> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(DomainError(gamma));
    }
    let (l1, l2, l3) = eve_mixture_eigenvalues(gamma);
    let s_rho = s4(l1) + 3.0 * s4(l2) + 4.0 * s4(l3);
    let g4 = gamma.powi(4);
    Ok(s_rho - h4((1.0 - g4) / 2.0))
}

/// Probability that the secondary attack's temporal bit is correct,
/// `p_E = (<N> - 2)/(<N> - 1)`; tends to 1 for long blocks.
pub fn eve_success_prob(mean_block_length: f64) -> Result<f64, DomainError> {
    if mean_block_length < 4.0 {
        return Err(DomainError(mean_block_length));
    }
    Ok((mean_block_length - 2.0) / (mean_block_length - 1.0))
}

/// States part of the secondary-attack correction: Holevo bracket of the
/// four fixed-phase alphabet states grouped by temporal class,
/// `S_4((1+3g^2)/4) + 3 S_4((1-g^2)/4) - h_4((1-g^2)/2)`.
pub fn holevo_secondary_bracket(gamma: f64) -> f64 {
    let g2 = gamma * gamma;
    s4((1.0 + 3.0 * g2) / 4.0) + 3.0 * s4((1.0 - g2) / 4.0) - h4((1.0 - g2) / 2.0)
}

/// Secondary-attack correction
/// `chi1 = (1/2) [1 - h_2(p_E)] * holevo_secondary_bracket(gamma)`.
///
/// The 1/2 enters because the attack reads only the temporal half of the
/// symbol; `1 - h_2(p_E)` is the capacity of the binary symmetric channel
/// formed by Eve's block-boundary confusion (base-2, dimensionless).
pub fn holevo_secondary(gamma: f64, p_eve: f64) -> Result<f64, DomainError> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(DomainError(gamma));
    }
    if !(0.0..=1.0).contains(&p_eve) {
        return Err(DomainError(p_eve));
    }
    Ok(0.5 * (1.0 - h2(p_eve)) * holevo_secondary_bracket(gamma))
}

/// Total bound `chi = chi0 + (1 - chi0) chi1`: the secondary attack is
/// conditioned on the primary measurement being inconclusive.
pub fn holevo_total(chi0: f64, chi1: f64) -> f64 {
    chi0 + (1.0 - chi0) * chi1
}

/// Assembles the full beam-splitting-attack bound for validated parameters.
pub fn eve_bound(params: &SystemParams) -> EveBound {
    let t = params.channel.transmittance();
    let g = gamma(params.source.mu, t);
    let p_e = eve_success_prob(params.encoding.mean_block_length())
        .expect("mean block length >= 4 for validated parameters");
    let chi0 = holevo_primary(g).expect("gamma in [0, 1] by construction");
    let chi1 = holevo_secondary(g, p_e).expect("arguments in range by construction");
    EveBound {
        gamma: g,
        p_eve: p_e,
        chi0,
        chi1,
        chi: holevo_total(chi0, chi1),
    }
}

/// Dead-time-limited throughput shared by all protocols.
///
/// Measurement windows arrive at rate `nu / 2` (one window spans two pulse
/// slots), each clicking with probability `click_prob`, and the raw click
/// rate splits evenly over the two detectors. Each detector is
/// non-paralyzable: `r_det = (r/2) / (1 + (r/2) t_d)`. The throughput is
/// `prefactor * extractable * info_bits_per_click * 2 r_det`.
pub fn throughput_bits_per_second(
    pulse_rate_hz: f64,
    click_prob: f64,
    prefactor: f64,
    extractable: f64,
    info_bits_per_click: f64,
    dead_time_s: f64,
) -> f64 {
    if extractable <= 0.0 {
        return 0.0;
    }
    let raw = pulse_rate_hz / 2.0 * click_prob;
    let per_detector = (raw / 2.0) / (1.0 + (raw / 2.0) * dead_time_s);
    prefactor * extractable * info_bits_per_click * 2.0 * per_detector
}

/// Saturated-detector limit of [`throughput_bits_per_second`]: both
/// detectors pegged at `1 / t_d` clicks per second, so the throughput is
/// `prefactor * extractable * info_bits_per_click * (2 / t_d)`. Requires
/// `dead_time_s > 0`.
pub fn saturated_throughput_bits_per_second(
    prefactor: f64,
    extractable: f64,
    info_bits_per_click: f64,
    dead_time_s: f64,
) -> f64 {
    if extractable <= 0.0 {
        return 0.0;
    }
    prefactor * extractable * info_bits_per_click * 2.0 / dead_time_s
}

/// DPTS throughput in bits/s for a given extractable information per click
/// (base-4 units), using the chain's own `R_B` and `f`.
pub fn dead_time_throughput(params: &SystemParams, info_per_click_bits: f64) -> f64 {
    let breakdown = rate_breakdown(params);
    let bound = eve_bound(params);
    throughput_bits_per_second(
        params.source.pulse_rate_hz,
        breakdown.r_total,
        breakdown.prefactor_f,
        breakdown.i_ab - bound.chi,
        info_per_click_bits,
        params.receiver.dead_time_s,
    )
}

/// Full DPTS secret-key-rate report for validated parameters.
pub fn secret_key_rate(params: &SystemParams) -> KeyRateReport {
    let breakdown = rate_breakdown(params);
    let bound = eve_bound(params);
    let secure = breakdown.i_ab > bound.chi;
    if !secure {
        return KeyRateReport {
            rsk_per_measurement: 0.0,
            rsk_bits_per_pulse: 0.0,
            rsk_bits_per_second: 0.0,
            secure: false,
        };
    }
    let per_measurement = breakdown.prefactor_f * breakdown.r_total * (breakdown.i_ab - bound.chi);
    KeyRateReport {
        rsk_per_measurement: per_measurement,
        rsk_bits_per_pulse: per_measurement,
        rsk_bits_per_second: dead_time_throughput(params, DPTS_BITS_PER_CLICK),
        secure: true,
    }
}
