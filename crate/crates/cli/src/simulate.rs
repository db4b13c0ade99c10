//! Monte-Carlo run driver: one experiment, one CSV row of empirical
//! estimates next to their analytic counterparts with sigma-distances.

use crate::config::RunConfig;
use crate::sweep::sig9;
use dpts_core::model::mean_block_length;
use dpts_core::sim::{run_experiment, ExperimentOutcome};

/// `|count - n p| / sqrt(n p (1-p))`; 0 when the binomial is degenerate and
/// the count matches exactly, infinite otherwise.
pub fn sigma_distance(count: f64, n: f64, p: f64) -> f64 {
    let expected = n * p;
    let sigma = (n * p * (1.0 - p)).sqrt();
    if sigma == 0.0 {
        if (count - expected).abs() < 1e-9 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (count - expected).abs() / sigma
    }
}

pub struct SimulationReport {
    pub outcome: ExperimentOutcome,
    pub header: Vec<String>,
    pub row: Vec<String>,
    /// sigma-distances for click rate, the four outcome classes, and the
    /// boundary-discard fraction, in that order.
    pub sigma_distances: Vec<(String, f64)>,
}

/// Runs the configured experiment and assembles the comparison columns.
pub fn run_simulation(config: &RunConfig) -> SimulationReport {
    let params = &config.params;
    let outcome = run_experiment(params, config.seed, config.n_subblocks);
    let (r_total, err, _) = dpts_core::sim::analytic_expectations(params);
    let discard_expected = 1.0 / mean_block_length(params.encoding.n_max).expect("validated");

    let stats = &outcome.stats;
    let attempts = stats.measurements_attempted as f64;
    let clicks = stats.clicks as f64;
    let kept = stats.sifted_length as f64;

    let mut sigma_distances = vec![(
        "click_rate".to_string(),
        sigma_distance(clicks, attempts, r_total),
    )];
    for (i, &e) in err.iter().enumerate() {
        sigma_distances.push((
            format!("e{}", i + 1),
            sigma_distance(stats.qber[i] * kept, kept, e),
        ));
    }
    sigma_distances.push((
        "discard_fraction".to_string(),
        sigma_distance(
            outcome.key.discarded_boundary_count as f64,
            clicks,
            discard_expected,
        ),
    ));

    let mut header = vec![
        "seed".to_string(),
        "n_subblocks".to_string(),
        "measurements".to_string(),
        "clicks".to_string(),
        "dark_clicks".to_string(),
        "sifted_length".to_string(),
        "discarded_boundary".to_string(),
        "decoy_detections".to_string(),
        "elapsed_s".to_string(),
        "visibility_emp".to_string(),
        "prefactor_emp".to_string(),
        "secret_rate_emp".to_string(),
        "detection_rate_emp".to_string(),
        "detection_rate_analytic".to_string(),
        "detection_rate_sigma".to_string(),
    ];
    let mut row = vec![
        config.seed.to_string(),
        config.n_subblocks.to_string(),
        stats.measurements_attempted.to_string(),
        stats.clicks.to_string(),
        stats.dark_clicks.to_string(),
        stats.sifted_length.to_string(),
        outcome.key.discarded_boundary_count.to_string(),
        outcome.key.decoy_detection_count.to_string(),
        sig9(stats.elapsed_s),
        match stats.visibility {
            Some(v) => sig9(v),
            None => "undefined".to_string(),
        },
        sig9(stats.prefactor),
        sig9(stats.secret_rate_estimate),
        sig9(stats.detection_rate),
        sig9(r_total),
        sig9(sigma_distances[0].1),
    ];
    for (i, &e) in err.iter().enumerate() {
        header.push(format!("e{}_emp", i + 1));
        header.push(format!("e{}_analytic", i + 1));
        header.push(format!("e{}_sigma", i + 1));
        row.push(sig9(stats.qber[i]));
        row.push(sig9(e));
        row.push(sig9(sigma_distances[i + 1].1));
    }
    header.push("discard_fraction_emp".to_string());
    header.push("discard_fraction_expected".to_string());
    header.push("discard_fraction_sigma".to_string());
    let discard_emp = if clicks == 0.0 {
        0.0
    } else {
        outcome.key.discarded_boundary_count as f64 / clicks
    };
    row.push(sig9(discard_emp));
    row.push(sig9(discard_expected));
    row.push(sig9(sigma_distances[5].1));

    SimulationReport {
        outcome,
        header,
        row,
        sigma_distances,
    }
}
