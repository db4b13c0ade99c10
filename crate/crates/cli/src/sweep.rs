//! Grid sweeps over distance, visibility, or mean photon number, written as
//! RFC-4180-style CSV with a fixed, documented column order.

use crate::config::{RunConfig, SweepVariable};
use dpts_core::analytics::{eve_bound, rate_breakdown, secret_key_rate};
use dpts_core::baseline::{baseline_cow, baseline_dps, Protocol};
use dpts_core::model::{transmittance, SystemParams};
use dpts_core::optimize::optimize_mu;
use rayon::prelude::*;

/// One protocol's column group of a sweep row. For the baselines, `e1`
/// carries the QBER, `e2..e4` are 0, and `chi0 = chi` with `chi1 = 0`;
/// information quantities are in the protocol's own units (base-4 for
/// DPTS, bits for DPS/COW).
#[derive(Debug, Clone, Copy)]
pub struct ProtocolColumns {
    pub mu: f64,
    pub t: f64,
    pub r_click: f64,
    pub r_total: f64,
    pub prefactor: f64,
    pub e: [f64; 4],
    pub i_ab: f64,
    pub chi0: f64,
    pub chi1: f64,
    pub chi: f64,
    pub bits_per_pulse: f64,
    pub bits_per_second: f64,
    pub secure: bool,
}

/// Evaluates one protocol at one parameter point.
pub fn protocol_columns(params: &SystemParams, protocol: Protocol) -> ProtocolColumns {
    let t = transmittance(&params.channel);
    match protocol {
        Protocol::Dpts => {
            let b = rate_breakdown(params);
            let e = eve_bound(params);
            let report = secret_key_rate(params);
            ProtocolColumns {
                mu: params.source.mu,
                t,
                r_click: b.r_click,
                r_total: b.r_total,
                prefactor: b.prefactor_f,
                e: b.err,
                i_ab: b.i_ab,
                chi0: e.chi0,
                chi1: e.chi1,
                chi: e.chi,
                bits_per_pulse: report.rsk_bits_per_pulse,
                bits_per_second: report.rsk_bits_per_second,
                secure: report.secure,
            }
        }
        Protocol::Dps | Protocol::Cow => {
            let r = if protocol == Protocol::Dps {
                baseline_dps(params)
            } else {
                baseline_cow(params)
            };
            ProtocolColumns {
                mu: params.source.mu,
                t,
                r_click: r.click_prob,
                r_total: r.click_total,
                prefactor: r.prefactor,
                e: [r.qber, 0.0, 0.0, 0.0],
                i_ab: r.i_ab_bits,
                chi0: r.chi_bits,
                chi1: 0.0,
                chi: r.chi_bits,
                bits_per_pulse: r.secret_bits_per_pulse,
                bits_per_second: r.secret_bits_per_second,
                secure: r.secure,
            }
        }
    }
}

/// Floating-point serialization used everywhere in the CSV output:
/// 9 significant digits, exponent notation, byte-deterministic.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

const PER_PROTOCOL_COLUMNS: &[&str] = &[
    "mu",
    "t",
    "r_click",
    "r_total",
    "prefactor",
    "e1",
    "e2",
    "e3",
    "e4",
    "i_ab",
    "chi0",
    "chi1",
    "chi",
    "bits_per_pulse",
    "bits_per_second",
    "secure",
];

pub fn header(config: &RunConfig) -> Vec<String> {
    let mut cols = vec![config.sweep.name().to_string()];
    for p in &config.protocols {
        for c in PER_PROTOCOL_COLUMNS {
            cols.push(format!("{}_{}", p.name(), c));
        }
    }
    cols
}

fn point_params(config: &RunConfig, value: f64) -> SystemParams {
    let mut params = config.params;
    match config.sweep {
        SweepVariable::DistanceKm => params.channel.length_km = value,
        SweepVariable::Visibility => params.receiver.visibility = value,
        SweepVariable::Mu => params.source.mu = value,
    }
    params
}

/// A fully evaluated sweep: ordered rows plus whether any point was secure.
#[derive(Debug)]
pub struct SweepResult {
    pub rows: Vec<Vec<String>>,
    pub any_secure: bool,
}

/// Evaluates the grid. Points run in a parallel worker pool; rows are
/// collected in grid order so parallelism never changes the output bytes.
/// Grid-point parameters must validate (checked per point; the first
/// failure is reported).
pub fn run_sweep(config: &RunConfig) -> Result<SweepResult, String> {
    let steps = config.steps;
    let values: Vec<f64> = (0..steps)
        .map(|i| config.from + (config.to - config.from) * i as f64 / (steps - 1) as f64)
        .collect();

    let evaluated: Vec<Result<Vec<String>, String>> = values
        .par_iter()
        .map(|&value| {
            let params = point_params(config, value)
                .validate()
                .map_err(|e| format!("at {} = {value}: {e}", config.sweep))?;
            let mut row = vec![sig9(value)];
            for &protocol in &config.protocols {
                let params = if config.optimize_mu {
                    let opt = optimize_mu(&params, protocol, config.mu_bounds)
                        .map_err(|e| e.to_string())?;
                    let mut p = params;
                    p.source.mu = opt.mu;
                    p
                } else {
                    params
                };
                let c = protocol_columns(&params, protocol);
                row.extend_from_slice(&[
                    sig9(c.mu),
                    sig9(c.t),
                    sig9(c.r_click),
                    sig9(c.r_total),
                    sig9(c.prefactor),
                    sig9(c.e[0]),
                    sig9(c.e[1]),
                    sig9(c.e[2]),
                    sig9(c.e[3]),
                    sig9(c.i_ab),
                    sig9(c.chi0),
                    sig9(c.chi1),
                    sig9(c.chi),
                    sig9(c.bits_per_pulse),
                    sig9(c.bits_per_second),
                    c.secure.to_string(),
                ]);
            }
            Ok(row)
        })
        .collect();

    let mut rows = Vec::with_capacity(steps);
    for r in evaluated {
        rows.push(r?);
    }
    let any_secure = rows
        .iter()
        .any(|row| row.iter().any(|cell| cell == "true"));
    Ok(SweepResult { rows, any_secure })
}

/// Serializes header + rows as CSV bytes.
pub fn to_csv(header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}
