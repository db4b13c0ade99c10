//! Closed-form vs Gram-matrix agreement check over a `(mu, t)` grid.

use dpts_core::analytics::{gamma, holevo_primary, holevo_secondary_bracket};
use dpts_core::entropy::entropy_h4;
use dpts_core::oracle::holevo_brute;

/// Agreement threshold between the closed forms and the eigen-solver route.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

/// Default grid: 5 mean photon numbers times 5 transmittances, 25 points.
pub const MU_GRID: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];
pub const T_GRID: [f64; 5] = [0.001, 0.01, 0.1, 0.5, 0.9];

pub struct OracleCheck {
    pub max_chi0_deviation: f64,
    pub max_bracket_deviation: f64,
    pub points: usize,
    pub pass: bool,
}

/// Compares `holevo_primary` and the secondary-attack bracket against the
/// numeric eigendecomposition at every grid point.
///
/// `flip_sign` evaluates the closed form with the conditioned-entropy term
/// added instead of subtracted (the uncorrected sign); the oracle then
/// disagrees by O(0.1) at small `gamma`, which is the check that the
/// corrected sign is the right one.
pub fn run_oracle_check(flip_sign: bool) -> OracleCheck {
    let mut max_chi0 = 0.0f64;
    let mut max_bracket = 0.0f64;
    let mut points = 0;
    for &mu in &MU_GRID {
        for &t in &T_GRID {
            let g = gamma(mu, t);
            let mut closed_chi0 = holevo_primary(g).expect("gamma in [0, 1]");
            if flip_sign {
                // + h4 instead of - h4 moves the term by 2 h4
                closed_chi0 += 2.0
                    * entropy_h4((1.0 - g.powi(4)) / 2.0).expect("probability argument");
            }
            let closed_bracket = holevo_secondary_bracket(g);
            let brute = holevo_brute(mu, t);
            max_chi0 = max_chi0.max((closed_chi0 - brute.chi0).abs());
            max_bracket = max_bracket.max((closed_bracket - brute.chi1_bracket).abs());
            points += 1;
        }
    }
    OracleCheck {
        max_chi0_deviation: max_chi0,
        max_bracket_deviation: max_bracket,
        points,
        pass: max_chi0 <= ORACLE_TOLERANCE && max_bracket <= ORACLE_TOLERANCE,
    }
}
