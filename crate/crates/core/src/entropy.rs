//! Entropy helpers in the two logarithm bases used by the rate stack.
//!
//! Quaternary-alphabet quantities are measured in base-4 units (one unit =
//! one quaternary symbol = 2 bits); binary-channel quantities use bits.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("entropy argument must be a probability in [0, 1] (got {0})")]
pub struct DomainError(pub f64);

const LN4: f64 = 1.3862943611198906; // ln 4

/// `S_4(x) = -x log_4 x`, with the `x = 0` limit defined as 0.
pub fn entropy_s4(x: f64) -> Result<f64, DomainError> {
    check(x)?;
    Ok(s4(x))
}

/// Base-4 binary entropy `h_4(x) = S_4(x) + S_4(1 - x)`; peaks at 1/2.
pub fn entropy_h4(x: f64) -> Result<f64, DomainError> {
    check(x)?;
    Ok(h4(x))
}

/// Base-2 binary entropy in bits; peaks at 1.
pub fn entropy_h2(x: f64) -> Result<f64, DomainError> {
    check(x)?;
    Ok(h2(x))
}

fn check(x: f64) -> Result<(), DomainError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(DomainError(x))
    }
}

// Unchecked variants for callers whose arguments are probabilities by
// construction (rate formulas, Gram eigenvalues).
pub(crate) fn s4(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln() / LN4
    }
}

pub(crate) fn h4(x: f64) -> f64 {
    s4(x) + s4(1.0 - x)
}

pub(crate) fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -(x * x.log2() + (1.0 - x) * (1.0 - x).log2())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_limit_conventions() {
        assert_eq!(entropy_s4(0.0).unwrap(), 0.0);
        assert_eq!(entropy_s4(1.0).unwrap(), 0.0);
    }

    #[test]
    fn s4_quarter_is_quarter() {
        // -(1/4) log_4 (1/4) = 1/4
        assert!((entropy_s4(0.25).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn h4_and_h2_maxima() {
        assert!((entropy_h4(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((entropy_h2(0.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn h2_two_thirds() {
        // frozen from the arbitrary-precision recomputation
        assert!((entropy_h2(2.0 / 3.0).unwrap() - 0.918_295_834_054_489_6).abs() < 1e-14);
    }

    #[test]
    fn domain_errors_outside_unit_interval() {
        assert!(entropy_s4(-0.1).is_err());
        assert!(entropy_h4(1.1).is_err());
        assert!(entropy_h2(f64::NAN).is_err());
    }

    #[test]
    fn h4_symmetric() {
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            assert!((h4(x) - h4(1.0 - x)).abs() < 1e-15);
        }
    }
}
