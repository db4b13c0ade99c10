//! Mean-photon-number optimization.
//!
//! The secret key rate is unimodal in `mu` over practical ranges but can be
//! identically zero on part of the bracket (no extractable key), where a
//! bare golden-section search may collapse onto the wrong side. The
//! optimizer therefore scans a coarse grid first, then refines around the
//! best grid point with golden-section.

use crate::analytics::secret_key_rate;
use crate::baseline::{baseline_cow, baseline_dps, Protocol};
use crate::model::SystemParams;
use thiserror::Error;

/// Grid resolution of the bracketing pre-scan.
pub const PRE_GRID_POINTS: usize = 64;
/// Termination tolerance on `mu`.
pub const MU_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("mu bounds must satisfy 0 < lo < hi <= 2 (got {lo}..{hi})")]
    BadBounds { lo: f64, hi: f64 },
}

/// Result of a mean-photon-number search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuOptimum {
    pub mu: f64,
    /// Secret bits per second at the optimum (the optimization objective;
    /// proportional to bits per pulse when the dead time is zero).
    pub rate: f64,
    /// False when the rate was zero over the whole bracket, in which case
    /// `mu` is the lower bound.
    pub secure: bool,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x_max, f_max)` once the bracket shrinks below `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    while (b - a) > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Secret bits/s of `protocol` at the given parameters; the shared
/// optimization objective.
pub fn protocol_bits_per_second(params: &SystemParams, protocol: Protocol) -> f64 {
    match protocol {
        Protocol::Dpts => secret_key_rate(params).rsk_bits_per_second,
        Protocol::Dps => baseline_dps(params).secret_bits_per_second,
        Protocol::Cow => baseline_cow(params).secret_bits_per_second,
    }
}

/// Finds the `mu` in `[mu_lo, mu_hi]` maximizing the protocol's secret key
/// rate, to within [`MU_TOLERANCE`].
pub fn optimize_mu(
    params: &SystemParams,
    protocol: Protocol,
    mu_bounds: (f64, f64),
) -> Result<MuOptimum, OptimizeError> {
    let (lo, hi) = mu_bounds;
    if !(lo > 0.0 && lo < hi && hi <= 2.0) {
        return Err(OptimizeError::BadBounds { lo, hi });
    }

    let rate_at = |mu: f64| {
        let mut p = *params;
        p.source.mu = mu;
        protocol_bits_per_second(&p, protocol)
    };

    // Coarse bracketing scan; guards against zero plateaus at the edges.
    let n = PRE_GRID_POINTS;
    let step = (hi - lo) / (n - 1) as f64;
    let mut best_idx = 0;
    let mut best_rate = f64::NEG_INFINITY;
    for i in 0..n {
        let rate = rate_at(lo + step * i as f64);
        if rate > best_rate {
            best_rate = rate;
            best_idx = i;
        }
    }

    if best_rate <= 0.0 {
        return Ok(MuOptimum {
            mu: lo,
            rate: 0.0,
            secure: false,
        });
    }

    let a = lo + step * best_idx.saturating_sub(1) as f64;
    let b = (lo + step * (best_idx + 1) as f64).min(hi);
    let (mu, rate) = golden_section_max(rate_at, a, b, MU_TOLERANCE);
    Ok(MuOptimum {
        mu,
        rate,
        secure: rate > 0.0,
    })
}
