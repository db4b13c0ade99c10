//! Seedable Monte-Carlo simulation of the full prepare-transmit-measure-sift
//! pipeline, used as an end-to-end cross-check of the analytic chain.
//!
//! The click model operates at the measurement-window level with the same
//! elementary probabilities the rate formulas use (signal click probability
//! `R` per interfering slot, dark probability `p_d` per detector per slot,
//! visibility-driven detector flips), so agreement on `R_B` and the four
//! outcome classes checks the sifting combinatorics and dark-count
//! bookkeeping rather than re-deriving optics. Eve is not simulated; her
//! information enters only through the analytic bound.
//!
//! Every run is fully determined by `(params, seed, n_subblocks)`: one
//! master seed is split into independent encoder and receiver streams, so
//! changing receiver noise never perturbs the transmitted sequence.

use crate::analytics::{eve_bound, rate_breakdown};
use crate::entropy::s4;
use crate::model::SystemParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

/// Time slot within a sub-block (which of the two pulse positions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Early,
    Late,
}

/// Bob's two interferometer output detectors. At perfect visibility a
/// phase difference of 0 lands in `D1`, pi in `D2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    D1,
    D2,
}

/// Ground-truth tag for a click; never consulted by sifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClickCause {
    Signal,
    Dark,
}

/// One transmitted sub-block: two pulse slots, one non-empty (both for
/// decoys), with a phase sign on the non-empty pulse(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubBlock {
    pub index: usize,
    /// Which slot holds the non-empty pulse; shared within a block,
    /// meaningless for decoy sub-blocks.
    pub temporal_position: Slot,
    /// +1 or -1 (phase 0 or pi).
    pub phase_sign: i8,
    pub block_id: usize,
    pub is_decoy: bool,
}

/// Alice's full transmission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PulseTrain {
    pub sub_blocks: Vec<SubBlock>,
    /// Block length in pulses drawn for each block, in emission order.
    pub block_lengths: Vec<u32>,
}

/// One resolved click at a sub-block-pair measurement window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectionRecord {
    /// Index of the earlier sub-block of the measured pair.
    pub pair_index: usize,
    pub slot: Slot,
    pub detector: Detector,
    pub cause: ClickCause,
}

/// Aligned key strings and sifting counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiftedKeyPair {
    /// Quaternary symbols 0..=3: bit 1 is the time bit (early=0, late=1),
    /// bit 0 the phase bit (0 for equal signs, 1 for opposite).
    pub alice_symbols: Vec<u8>,
    pub bob_symbols: Vec<u8>,
    /// Clicks discarded because the pair spanned a block boundary with
    /// flipped temporal sequence.
    pub discarded_boundary_count: usize,
    /// Clicks routed to visibility estimation because the pair touched a
    /// decoy block.
    pub decoy_detection_count: usize,
}

/// Aggregated empirical estimates of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimStats {
    pub measurements_attempted: usize,
    pub clicks: usize,
    pub dark_clicks: usize,
    pub sifted_length: usize,
    /// Empirical outcome-class frequencies e1..e4 among kept pairs
    /// (total error, phase-only, time-only, both).
    pub qber: [f64; 4],
    /// Decoy-line visibility estimate; `None` when no decoy clicks.
    pub visibility: Option<f64>,
    /// Clicks per measurement window.
    pub detection_rate: f64,
    /// Simulated emission time in seconds.
    pub elapsed_s: f64,
    /// Empirical sifting prefactor (kept fraction of clicks).
    pub prefactor: f64,
    /// `prefactor * detection_rate * max(0, I_AB(qber) - chi)` with the
    /// analytic Holevo bound.
    pub secret_rate_estimate: f64,
}

/// Stats plus the sifted key of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub stats: SimStats,
    pub key: SiftedKeyPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("detection at pair {0} does not match the train ({1} sub-blocks)")]
    MismatchedDetections(usize, usize),
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws blocks until at least `n_subblocks` sub-blocks exist.
///
/// Per block: length uniform over `{4, 6, ..., n_max}`, decoy with
/// probability `p_decoy`, temporal position uniform; every sub-block gets
/// an independent uniform phase sign. Byte-identical output for a fixed
/// seed.
pub fn alice_encode(params: &SystemParams, seed: u64, n_subblocks: usize) -> PulseTrain {
    let mut rng = stream_rng(seed, 0);
    let choices = params.encoding.block_length_choices();
    let mut sub_blocks = Vec::with_capacity(n_subblocks + params.encoding.n_max as usize / 2);
    let mut block_lengths = Vec::new();

    let mut block_id = 0;
    while sub_blocks.len() < n_subblocks {
        let n = 4 + 2 * rng.gen_range(0..choices);
        let is_decoy = rng.gen_bool(params.encoding.p_decoy);
        let temporal_position = if rng.gen::<bool>() { Slot::Early } else { Slot::Late };
        for _ in 0..n / 2 {
            let phase_sign = if rng.gen::<bool>() { 1 } else { -1 };
            sub_blocks.push(SubBlock {
                index: sub_blocks.len(),
                temporal_position,
                phase_sign,
                block_id,
                is_decoy,
            });
        }
        block_lengths.push(n);
        block_id += 1;
    }

    PulseTrain {
        sub_blocks,
        block_lengths,
    }
}

enum PairKind {
    /// Neither sub-block is a decoy and both share a temporal position:
    /// one interfering slot with a well-defined phase difference.
    Aligned { slot: Slot, phase: i8 },
    /// Exactly one side is a decoy; the non-decoy side's slot interferes.
    MixedDecoy { slot: Slot, phase: i8 },
    /// Both sub-blocks are decoys: both slots interfere.
    BothDecoy { phase: i8 },
    /// Block boundary with flipped temporal sequence; no interference.
    Flipped,
}

fn classify(a: &SubBlock, b: &SubBlock) -> PairKind {
    let phase = a.phase_sign * b.phase_sign;
    match (a.is_decoy, b.is_decoy) {
        (true, true) => PairKind::BothDecoy { phase },
        (true, false) => PairKind::MixedDecoy {
            slot: b.temporal_position,
            phase,
        },
        (false, true) => PairKind::MixedDecoy {
            slot: a.temporal_position,
            phase,
        },
        (false, false) => {
            if a.temporal_position == b.temporal_position {
                PairKind::Aligned {
                    slot: a.temporal_position,
                    phase,
                }
            } else {
                PairKind::Flipped
            }
        }
    }
}

fn slot_rank(slot: Slot) -> u8 {
    match slot {
        Slot::Early => 0,
        Slot::Late => 1,
    }
}

fn other(det: Detector) -> Detector {
    match det {
        Detector::D1 => Detector::D2,
        Detector::D2 => Detector::D1,
    }
}

/// Measures every adjacent sub-block pair of the train.
///
/// Interfering slots click with probability `R = [1 - exp(-mu t eta)]/2`;
/// the detector follows the pair's phase difference and flips with
/// probability `(1 - V)/2`. Flipped-boundary clicks land in a uniformly
/// random detector and slot. Each of the four (slot, detector) cells also
/// dark-clicks with probability `p_d`. Multiple clicks in a window resolve
/// to the earliest slot with a uniform detector tie-break; with a positive
/// dead time, clicks within `t_d` of the previous click on the same
/// detector are then removed.
pub fn bob_detect(train: &PulseTrain, params: &SystemParams, seed: u64) -> Vec<DetectionRecord> {
    let mut rng = stream_rng(seed, 1);
    let t = params.channel.transmittance();
    let r_click =
        (1.0 - (-params.source.mu * t * params.receiver.efficiency).exp()) / 2.0;
    let flip_prob = (1.0 - params.receiver.visibility) / 2.0;
    let pd = params.receiver.dark_count_prob;

    let n = train.sub_blocks.len();
    let mut records = Vec::new();
    // (slot, detector, cause) candidates of the current window
    let mut candidates: Vec<(Slot, Detector, ClickCause)> = Vec::with_capacity(6);

    for pair_index in 0..n.saturating_sub(1) {
        let a = &train.sub_blocks[pair_index];
        let b = &train.sub_blocks[pair_index + 1];
        candidates.clear();

        let interfere = |slot: Slot, phase: i8, rng: &mut ChaCha12Rng,
                         candidates: &mut Vec<(Slot, Detector, ClickCause)>| {
            if rng.gen_bool(r_click) {
                let expected = if phase > 0 { Detector::D1 } else { Detector::D2 };
                let detector = if flip_prob > 0.0 && rng.gen_bool(flip_prob) {
                    other(expected)
                } else {
                    expected
                };
                candidates.push((slot, detector, ClickCause::Signal));
            }
        };

        match classify(a, b) {
            PairKind::Aligned { slot, phase } | PairKind::MixedDecoy { slot, phase } => {
                interfere(slot, phase, &mut rng, &mut candidates);
            }
            PairKind::BothDecoy { phase } => {
                interfere(Slot::Early, phase, &mut rng, &mut candidates);
                interfere(Slot::Late, phase, &mut rng, &mut candidates);
            }
            PairKind::Flipped => {
                if rng.gen_bool(r_click) {
                    let slot = if rng.gen::<bool>() { Slot::Early } else { Slot::Late };
                    let detector = if rng.gen::<bool>() { Detector::D1 } else { Detector::D2 };
                    candidates.push((slot, detector, ClickCause::Signal));
                }
            }
        }

        if pd > 0.0 {
            for slot in [Slot::Early, Slot::Late] {
                for detector in [Detector::D1, Detector::D2] {
                    if rng.gen_bool(pd) {
                        candidates.push((slot, detector, ClickCause::Dark));
                    }
                }
            }
        }

        if candidates.is_empty() {
            continue;
        }

        // earliest slot wins; simultaneous clicks on both detectors break
        // the tie uniformly
        let first_slot = if candidates.iter().any(|(s, _, _)| *s == Slot::Early) {
            Slot::Early
        } else {
            Slot::Late
        };
        let d1 = candidates
            .iter()
            .find(|(s, d, _)| *s == first_slot && *d == Detector::D1);
        let d2 = candidates
            .iter()
            .find(|(s, d, _)| *s == first_slot && *d == Detector::D2);
        let &(slot, detector, cause) = match (d1, d2) {
            (Some(c1), Some(c2)) => {
                if rng.gen::<bool>() {
                    c1
                } else {
                    c2
                }
            }
            (Some(c), None) | (None, Some(c)) => c,
            (None, None) => unreachable!("first_slot chosen from candidates"),
        };
        records.push(DetectionRecord {
            pair_index,
            slot,
            detector,
            cause,
        });
    }

    let dead_time = params.receiver.dead_time_s;
    if dead_time > 0.0 {
        let period = params.source.sub_block_period_s();
        let slot_offset = 1.0 / params.source.pulse_rate_hz;
        let mut last_click: [Option<f64>; 2] = [None, None];
        records.retain(|rec| {
            let time = (rec.pair_index + 1) as f64 * period
                + slot_rank(rec.slot) as f64 * slot_offset;
            let det = match rec.detector {
                Detector::D1 => 0,
                Detector::D2 => 1,
            };
            match last_click[det] {
                Some(prev) if time - prev < dead_time => false,
                _ => {
                    last_click[det] = Some(time);
                    true
                }
            }
        });
    }

    records
}

fn symbol(time_late: bool, phase_pi: bool) -> u8 {
    2 * time_late as u8 + phase_pi as u8
}

/// Public sifting: decoy-touching clicks go to the visibility estimate,
/// flipped-boundary clicks are discarded, everything else yields one
/// quaternary symbol on each side.
///
/// Boundary pairs whose blocks happen to share a temporal sequence are
/// kept; this is what makes the kept fraction come out at `1 - 1/<N>`.
pub fn sift(
    train: &PulseTrain,
    detections: &[DetectionRecord],
    _params: &SystemParams,
) -> Result<SiftedKeyPair, SimError> {
    let n = train.sub_blocks.len();
    let mut alice_symbols = Vec::new();
    let mut bob_symbols = Vec::new();
    let mut discarded_boundary_count = 0;
    let mut decoy_detection_count = 0;

    for rec in detections {
        if rec.pair_index + 1 >= n {
            return Err(SimError::MismatchedDetections(rec.pair_index, n));
        }
        let a = &train.sub_blocks[rec.pair_index];
        let b = &train.sub_blocks[rec.pair_index + 1];

        if a.is_decoy || b.is_decoy {
            decoy_detection_count += 1;
            continue;
        }
        if a.temporal_position != b.temporal_position {
            discarded_boundary_count += 1;
            continue;
        }

        alice_symbols.push(symbol(
            a.temporal_position == Slot::Late,
            a.phase_sign != b.phase_sign,
        ));
        bob_symbols.push(symbol(rec.slot == Slot::Late, rec.detector == Detector::D2));
    }

    Ok(SiftedKeyPair {
        alice_symbols,
        bob_symbols,
        discarded_boundary_count,
        decoy_detection_count,
    })
}

/// Interferometer visibility estimate from decoy-line clicks with a known
/// phase difference: `(n_expected - n_other) / (n_expected + n_other)`.
/// `None` when no decoy click exists.
pub fn estimate_visibility(train: &PulseTrain, detections: &[DetectionRecord]) -> Option<f64> {
    let mut expected = 0u64;
    let mut unexpected = 0u64;
    for rec in detections {
        let a = &train.sub_blocks[rec.pair_index];
        let b = &train.sub_blocks[rec.pair_index + 1];
        if !(a.is_decoy || b.is_decoy) {
            continue;
        }
        let phase = a.phase_sign * b.phase_sign;
        let expected_det = if phase > 0 { Detector::D1 } else { Detector::D2 };
        if rec.detector == expected_det {
            expected += 1;
        } else {
            unexpected += 1;
        }
    }
    let total = expected + unexpected;
    if total == 0 {
        return None;
    }
    Some((expected as f64 - unexpected as f64) / total as f64)
}

/// Runs encode -> detect -> sift and aggregates all empirical estimates.
/// Deterministic for a fixed `(params, seed, n_subblocks)`.
pub fn run_experiment(params: &SystemParams, seed: u64, n_subblocks: usize) -> ExperimentOutcome {
    let train = alice_encode(params, seed, n_subblocks);
    let detections = bob_detect(&train, params, seed);
    let key = sift(&train, &detections, params).expect("detections produced from this train");
    let visibility = estimate_visibility(&train, &detections);

    let attempts = train.sub_blocks.len().saturating_sub(1);
    let clicks = detections.len();
    let dark_clicks = detections
        .iter()
        .filter(|r| r.cause == ClickCause::Dark)
        .count();

    let kept = key.alice_symbols.len();
    let mut class_counts = [0usize; 3]; // phase-only, time-only, both
    for (&a, &b) in key.alice_symbols.iter().zip(&key.bob_symbols) {
        let time_err = (a >> 1) != (b >> 1);
        let phase_err = (a & 1) != (b & 1);
        match (phase_err, time_err) {
            (true, false) => class_counts[0] += 1,
            (false, true) => class_counts[1] += 1,
            (true, true) => class_counts[2] += 1,
            (false, false) => {}
        }
    }
    let qber = if kept == 0 {
        [0.0; 4]
    } else {
        let e2 = class_counts[0] as f64 / kept as f64;
        let e3 = class_counts[1] as f64 / kept as f64;
        let e4 = class_counts[2] as f64 / kept as f64;
        [e2 + e3 + e4, e2, e3, e4]
    };

    let detection_rate = if attempts == 0 {
        0.0
    } else {
        clicks as f64 / attempts as f64
    };
    let prefactor = if clicks == 0 {
        0.0
    } else {
        kept as f64 / clicks as f64
    };
    let i_ab_emp = 1.0 - (s4(1.0 - qber[0]) + s4(qber[1]) + s4(qber[2]) + s4(qber[3]));
    let chi = eve_bound(params).chi;
    let secret_rate_estimate = prefactor * detection_rate * (i_ab_emp - chi).max(0.0);

    let stats = SimStats {
        measurements_attempted: attempts,
        clicks,
        dark_clicks,
        sifted_length: kept,
        qber,
        visibility,
        detection_rate,
        elapsed_s: train.sub_blocks.len() as f64 * params.source.sub_block_period_s(),
        prefactor,
        secret_rate_estimate,
    };

    ExperimentOutcome { stats, key }
}

/// Expected analytic counterparts of the empirical estimates, for
/// comparison columns.
pub fn analytic_expectations(params: &SystemParams) -> (f64, [f64; 4], f64) {
    let b = rate_breakdown(params);
    let discard = 1.0 / params.encoding.mean_block_length();
    (b.r_total, b.err, discard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ChannelParams, EncodingParams, ReceiverParams, SourceParams};

    fn params(v: f64, pd: f64, n_max: u32, p_decoy: f64) -> SystemParams {
        SystemParams {
            source: SourceParams {
                mu: 0.2,
                pulse_rate_hz: 1e9,
            },
            encoding: EncodingParams { n_max, p_decoy },
            channel: ChannelParams {
                length_km: 10.0,
                attenuation_db_per_km: 0.2,
            },
            receiver: ReceiverParams {
                efficiency: 0.1,
                dark_count_prob: pd,
                visibility: v,
                dead_time_s: 0.0,
            },
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn degenerate_encoding_gives_fixed_blocks() {
        let p = params(1.0, 0.0, 4, 0.0);
        let train = alice_encode(&p, 7, 100);
        assert!(train.block_lengths.iter().all(|&n| n == 4));
        assert!(train.sub_blocks.len() >= 100);
        // two sub-blocks per block, same temporal position within a block
        for pair in train.sub_blocks.chunks(2) {
            assert_eq!(pair[0].block_id, pair[1].block_id);
            assert_eq!(pair[0].temporal_position, pair[1].temporal_position);
        }
    }

    #[test]
    fn encoding_is_deterministic() {
        let p = params(0.9, 1e-6, 8, 0.05);
        assert_eq!(alice_encode(&p, 42, 5000), alice_encode(&p, 42, 5000));
        assert_ne!(alice_encode(&p, 42, 5000), alice_encode(&p, 43, 5000));
    }

    #[test]
    fn block_length_histogram_is_uniform() {
        // chi-square against uniform over {4, 6, 8} at 3-sigma-ish bounds
        let p = params(1.0, 0.0, 8, 0.0);
        let train = alice_encode(&p, 1, 300_000);
        let mut counts = [0u64; 3];
        for &n in &train.block_lengths {
            counts[(n as usize - 4) / 2] += 1;
        }
        let total: u64 = counts.iter().sum();
        let expected = total as f64 / 3.0;
        let sigma = (total as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - expected).abs() < 3.0 * sigma,
                "count {c} vs expected {expected}"
            );
        }
    }

    #[test]
    fn blocks_are_internally_consistent() {
        let p = params(0.9, 0.0, 8, 0.15);
        let train = alice_encode(&p, 2, 30_000);
        let mut start = 0;
        for (block_id, &n) in train.block_lengths.iter().enumerate() {
            let members = &train.sub_blocks[start..start + n as usize / 2];
            assert!(members.iter().all(|s| s.block_id == block_id));
            assert!(members.iter().all(|s| s.is_decoy == members[0].is_decoy));
            assert!(members
                .iter()
                .all(|s| s.temporal_position == members[0].temporal_position));
            start += n as usize / 2;
        }
        assert_eq!(start, train.sub_blocks.len());
    }

    #[test]
    fn bright_source_saturates_click_probability_at_half() {
        // mu t eta -> infinity drives the per-window click probability to
        // R -> 1/2 (every pair clicks at R, aligned or not)
        let mut p = params(1.0, 0.0, 4, 0.0);
        p.source.mu = 200.0;
        p.receiver.efficiency = 1.0;
        let o = run_experiment(&p, 9, 100_000);
        let n = o.stats.measurements_attempted as f64;
        let sigma = (n * 0.25f64).sqrt();
        assert!((o.stats.clicks as f64 - 0.5 * n).abs() < 3.0 * sigma);
    }

    #[test]
    fn perfect_interference_lands_in_expected_detector() {
        let p = params(1.0, 0.0, 4, 0.0);
        let train = alice_encode(&p, 3, 20_000);
        let detections = bob_detect(&train, &p, 3);
        assert!(!detections.is_empty());
        // one record at most per measurement window
        for pair in detections.windows(2) {
            assert!(pair[0].pair_index < pair[1].pair_index);
        }
        for rec in &detections {
            let a = &train.sub_blocks[rec.pair_index];
            let b = &train.sub_blocks[rec.pair_index + 1];
            if a.temporal_position == b.temporal_position {
                let expected = if a.phase_sign * b.phase_sign > 0 {
                    Detector::D1
                } else {
                    Detector::D2
                };
                assert_eq!(rec.detector, expected);
                assert_eq!(rec.slot, a.temporal_position);
            }
        }
    }

    #[test]
    fn noiseless_keys_agree_exactly() {
        let p = params(1.0, 0.0, 8, 0.1);
        for seed in [1, 2, 3] {
            let outcome = run_experiment(&p, seed, 50_000);
            assert!(!outcome.key.alice_symbols.is_empty());
            assert_eq!(outcome.key.alice_symbols, outcome.key.bob_symbols);
            assert_eq!(outcome.stats.qber, [0.0; 4]);
        }
    }

    #[test]
    fn run_experiment_is_deterministic() {
        let p = params(0.9, 1e-5, 6, 0.02);
        let a = run_experiment(&p, 99, 20_000);
        let b = run_experiment(&p, 99, 20_000);
        assert_eq!(a, b);
    }

    #[test]
    fn sift_rejects_foreign_detections() {
        let p = params(1.0, 0.0, 4, 0.0);
        let train = alice_encode(&p, 5, 10);
        let bogus = [DetectionRecord {
            pair_index: 10_000,
            slot: Slot::Early,
            detector: Detector::D1,
            cause: ClickCause::Signal,
        }];
        assert!(matches!(
            sift(&train, &bogus, &p),
            Err(SimError::MismatchedDetections(10_000, _))
        ));
    }

    #[test]
    fn visibility_estimate_exact_at_unit_visibility() {
        let p = params(1.0, 0.0, 4, 0.3);
        let train = alice_encode(&p, 11, 50_000);
        let detections = bob_detect(&train, &p, 11);
        let v = estimate_visibility(&train, &detections).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn no_decoys_means_no_visibility_estimate() {
        let p = params(1.0, 0.0, 4, 0.0);
        let train = alice_encode(&p, 11, 1000);
        let detections = bob_detect(&train, &p, 11);
        assert_eq!(estimate_visibility(&train, &detections), None);
    }

    #[test]
    fn dead_time_never_increases_clicks() {
        let mut p = params(0.95, 1e-5, 6, 0.02);
        let train = alice_encode(&p, 17, 30_000);
        let without = bob_detect(&train, &p, 17);
        p.receiver.dead_time_s = 1e-7;
        let with = bob_detect(&train, &p, 17);
        assert!(with.len() <= without.len());
        // and with an enormous dead time, almost everything dies
        p.receiver.dead_time_s = 1.0;
        let strangled = bob_detect(&train, &p, 17);
        assert!(strangled.len() <= 2);
    }

    #[test]
    fn stats_counts_are_consistent() {
        let p = params(0.9, 1e-4, 8, 0.05);
        let o = run_experiment(&p, 8, 40_000);
        assert!(o.stats.sifted_length <= o.stats.clicks);
        assert!(o.stats.clicks <= o.stats.measurements_attempted);
        assert_eq!(o.stats.sifted_length, o.key.alice_symbols.len());
        // every click is sifted, boundary-discarded, or routed to decoys
        assert_eq!(
            o.stats.clicks,
            o.stats.sifted_length
                + o.key.discarded_boundary_count
                + o.key.decoy_detection_count
        );
    }
}
