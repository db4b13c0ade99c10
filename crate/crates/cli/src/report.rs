//! Human-readable point reports: `analyze`, `compare`, `optimize-mu`.

use crate::config::RunConfig;
use crate::sweep::{protocol_columns, sig9};
use dpts_core::analytics::saturated_throughput_bits_per_second;
use dpts_core::baseline::Protocol;
use dpts_core::optimize::optimize_mu;

/// Deterministic `key = value` dump of every analytic quantity for the
/// configured protocols at the configured operating point.
pub fn analyze(config: &RunConfig) -> String {
    let mut out = String::new();
    let p = &config.params;
    out.push_str(&format!(
        "point: L = {} km, alpha = {} dB/km, mu = {}, nu = {} Hz\n",
        p.channel.length_km,
        p.channel.attenuation_db_per_km,
        p.source.mu,
        p.source.pulse_rate_hz
    ));
    out.push_str(&format!(
        "receiver: eta_d = {}, p_d = {}, V = {}, t_d = {} s\n",
        p.receiver.efficiency,
        p.receiver.dark_count_prob,
        p.receiver.visibility,
        p.receiver.dead_time_s
    ));
    out.push_str(&format!(
        "encoding: n_max = {}, <N> = {}, p_decoy = {}\n",
        p.encoding.n_max,
        p.encoding.mean_block_length(),
        p.encoding.p_decoy
    ));
    for &protocol in &config.protocols {
        let c = protocol_columns(p, protocol);
        let name = protocol.name();
        out.push_str(&format!("{name}.mu = {}\n", sig9(c.mu)));
        out.push_str(&format!("{name}.t = {}\n", sig9(c.t)));
        out.push_str(&format!("{name}.r_click = {}\n", sig9(c.r_click)));
        out.push_str(&format!("{name}.r_total = {}\n", sig9(c.r_total)));
        out.push_str(&format!("{name}.prefactor = {}\n", sig9(c.prefactor)));
        for (i, e) in c.e.iter().enumerate() {
            out.push_str(&format!("{name}.e{} = {}\n", i + 1, sig9(*e)));
        }
        out.push_str(&format!("{name}.i_ab = {}\n", sig9(c.i_ab)));
        out.push_str(&format!("{name}.chi0 = {}\n", sig9(c.chi0)));
        out.push_str(&format!("{name}.chi1 = {}\n", sig9(c.chi1)));
        out.push_str(&format!("{name}.chi = {}\n", sig9(c.chi)));
        out.push_str(&format!(
            "{name}.bits_per_pulse = {}\n",
            sig9(c.bits_per_pulse)
        ));
        out.push_str(&format!(
            "{name}.bits_per_second = {}\n",
            sig9(c.bits_per_second)
        ));
        out.push_str(&format!("{name}.secure = {}\n", c.secure));
    }
    out
}

/// Side-by-side protocol summary, with throughput ratios against DPS when
/// both DPTS and DPS are requested (raw, plus the saturated-detector limit
/// when a dead time is configured). With `optimize_mu` set, each protocol
/// is evaluated at its own optimal mean photon number.
pub fn compare(config: &RunConfig) -> Result<String, String> {
    let mut out = String::new();
    out.push_str("protocol,mu,bits_per_pulse,bits_per_second,secure\n");
    let mut dpts = None;
    let mut dps = None;
    for &protocol in &config.protocols {
        let mut params = config.params;
        if config.optimize_mu {
            let opt = optimize_mu(&params, protocol, config.mu_bounds)
                .map_err(|e| e.to_string())?;
            params.source.mu = opt.mu;
        }
        let c = protocol_columns(&params, protocol);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            protocol.name(),
            sig9(c.mu),
            sig9(c.bits_per_pulse),
            sig9(c.bits_per_second),
            c.secure
        ));
        match protocol {
            Protocol::Dpts => dpts = Some(c),
            Protocol::Dps => dps = Some(c),
            Protocol::Cow => {}
        }
    }
    if let (Some(a), Some(b)) = (dpts, dps) {
        if b.bits_per_second > 0.0 {
            out.push_str(&format!(
                "ratio dpts/dps bits_per_second = {}\n",
                sig9(a.bits_per_second / b.bits_per_second)
            ));
        }
        let td = config.params.receiver.dead_time_s;
        if td > 0.0 {
            let sat_dpts = saturated_throughput_bits_per_second(
                a.prefactor,
                a.i_ab - a.chi,
                Protocol::Dpts.bits_per_click(),
                td,
            );
            let sat_dps = saturated_throughput_bits_per_second(
                b.prefactor,
                b.i_ab - b.chi,
                Protocol::Dps.bits_per_click(),
                td,
            );
            if sat_dps > 0.0 {
                out.push_str(&format!(
                    "ratio dpts/dps saturated = {}\n",
                    sig9(sat_dpts / sat_dps)
                ));
            }
        }
    }
    Ok(out)
}

/// Per-protocol mean-photon-number optimization at the configured point.
pub fn optimize_report(config: &RunConfig) -> Result<String, String> {
    let mut out = String::new();
    out.push_str("protocol,mu_opt,bits_per_second,secure\n");
    for &protocol in &config.protocols {
        let opt = optimize_mu(&config.params, protocol, config.mu_bounds)
            .map_err(|e| e.to_string())?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            protocol.name(),
            sig9(opt.mu),
            sig9(opt.rate),
            opt.secure
        ));
    }
    Ok(out)
}
