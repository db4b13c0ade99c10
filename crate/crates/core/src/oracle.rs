//! Brute-force Holevo quantities for finite mixtures of multimode coherent
//! states, computed from Gram-matrix eigenvalues.
//!
//! For a mixture `rho = sum_i p_i |psi_i><psi_i|` of pure states, the
//! nonzero spectrum of `rho` equals the spectrum of the weighted Gram
//! matrix `G_ij = sqrt(p_i p_j) <psi_i|psi_j>`, so the von Neumann entropy
//! of any such mixture reduces to a small symmetric eigenproblem. No Fock
//! truncation, no density matrices. This module is the numeric check for
//! every closed-form bound in [`crate::analytics`]; it must never share
//! code with the formulas it validates.
//!
//! The protocol only uses phases 0 and pi, so amplitudes are real and all
//! inner products are real: `<a|b> = exp(-(a - b)^2 / 2)` per slot.

use crate::entropy::s4;
use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

/// Eigenvalues below this are treated as exact zeros of the spectrum
/// (`0 log 0 = 0` convention).
const EIGENVALUE_FLOOR: f64 = 1e-15;
/// Tolerance on the total probability of an ensemble.
const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("coherent sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("amplitudes must be finite and non-empty")]
    BadAmplitudes,
    #[error("ensemble probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("grouping must partition the members exactly once each")]
    BadGrouping,
}

/// A tensor product of single-mode coherent states with real amplitudes,
/// one per pulse slot; 0 encodes vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSequence {
    amplitudes: Vec<f64>,
}

impl CoherentSequence {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self, OracleError> {
        if amplitudes.is_empty() || amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(OracleError::BadAmplitudes);
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }
}

/// `<a|b>` for real-amplitude coherent sequences: the product over slots of
/// `exp(-(a_k - b_k)^2 / 2)`. Symmetric, 1 for identical sequences.
pub fn overlap(a: &CoherentSequence, b: &CoherentSequence) -> Result<f64, OracleError> {
    if a.amplitudes.len() != b.amplitudes.len() {
        return Err(OracleError::LengthMismatch(
            a.amplitudes.len(),
            b.amplitudes.len(),
        ));
    }
    let exponent: f64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| (x - y).powi(2))
        .sum();
    Ok((-exponent / 2.0).exp())
}

/// A finite pure-state mixture with a partition into conditioned
/// sub-ensembles.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, CoherentSequence)>,
    grouping: Vec<Vec<usize>>,
}

impl Ensemble {
    /// Builds an ensemble, checking normalization and that `grouping` is an
    /// exact partition of the member indices.
    pub fn new(
        members: Vec<(f64, CoherentSequence)>,
        grouping: Vec<Vec<usize>>,
    ) -> Result<Self, OracleError> {
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(OracleError::NotNormalized(total));
        }
        let mut seen = vec![false; members.len()];
        for group in &grouping {
            for &idx in group {
                if idx >= members.len() || seen[idx] {
                    return Err(OracleError::BadGrouping);
                }
                seen[idx] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(OracleError::BadGrouping);
        }
        Ok(Self { members, grouping })
    }

    /// Uniform mixture with each member its own group.
    pub fn uniform(sequences: Vec<CoherentSequence>) -> Result<Self, OracleError> {
        let n = sequences.len();
        let p = 1.0 / n as f64;
        let grouping = (0..n).map(|i| vec![i]).collect();
        Self::new(sequences.into_iter().map(|s| (p, s)).collect(), grouping)
    }

    pub fn members(&self) -> &[(f64, CoherentSequence)] {
        &self.members
    }

    /// Base-4 von Neumann entropy of the full mixture.
    pub fn mixture_entropy(&self) -> f64 {
        weighted_entropy(&self.members)
    }

    /// Spectrum of the weighted Gram matrix, descending. Equals the nonzero
    /// spectrum of the density operator; sums to 1 for a normalized
    /// ensemble.
    pub fn gram_eigenvalues(&self) -> Vec<f64> {
        let mut eigenvalues = gram_spectrum(&self.members);
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        eigenvalues
    }

    /// Holevo quantity `S(rho) - sum_g p_g S(rho|g)` over the grouping,
    /// in base-4 units.
    pub fn holevo(&self) -> f64 {
        let mut conditioned = 0.0;
        for group in &self.grouping {
            let p_group: f64 = group.iter().map(|&i| self.members[i].0).sum();
            if p_group <= 0.0 {
                continue;
            }
            let sub: Vec<(f64, CoherentSequence)> = group
                .iter()
                .map(|&i| (self.members[i].0 / p_group, self.members[i].1.clone()))
                .collect();
            conditioned += p_group * weighted_entropy(&sub);
        }
        self.mixture_entropy() - conditioned
    }
}

/// Base-4 entropy of the mixture described by `members`.
pub fn mixture_entropy(ensemble: &Ensemble) -> f64 {
    ensemble.mixture_entropy()
}

fn gram_spectrum(members: &[(f64, CoherentSequence)]) -> Vec<f64> {
    let n = members.len();
    let gram = DMatrix::from_fn(n, n, |i, j| {
        let (pi, si) = &members[i];
        let (pj, sj) = &members[j];
        (pi * pj).sqrt() * overlap(si, sj).expect("ensemble members share a slot count")
    });
    SymmetricEigen::new(gram).eigenvalues.iter().copied().collect()
}

fn weighted_entropy(members: &[(f64, CoherentSequence)]) -> f64 {
    gram_spectrum(members)
        .into_iter()
        .filter(|&lambda| lambda > EIGENVALUE_FLOOR)
        .map(s4)
        .sum()
}

/// Numeric Holevo quantities for the beam-splitting attack at `(mu, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteHolevo {
    /// Primary bound: Holevo quantity of the eight tapped four-pulse states
    /// conditioned on the prepared symbol.
    pub chi0: f64,
    /// States part of the secondary-attack correction: Holevo quantity of
    /// the four fixed-phase alphabet states grouped by temporal class.
    pub chi1_bracket: f64,
}

/// Builds Eve's tapped ensembles with amplitude `alpha_E = sqrt(mu (1-t))`
/// and computes both Holevo quantities by Gram-matrix eigendecomposition.
pub fn holevo_brute(mu: f64, transmittance: f64) -> BruteHolevo {
    let a = (mu * (1.0 - transmittance)).sqrt();
    let seq = |amps: [f64; 4]| CoherentSequence::new(amps.to_vec()).expect("finite amplitudes");

    // Eight four-slot states; each prepared symbol j maps to a balanced
    // pair of opposite global sign.
    let states = vec![
        seq([a, 0.0, a, 0.0]),
        seq([-a, 0.0, -a, 0.0]),
        seq([a, 0.0, -a, 0.0]),
        seq([-a, 0.0, a, 0.0]),
        seq([0.0, a, 0.0, a]),
        seq([0.0, -a, 0.0, -a]),
        seq([0.0, a, 0.0, -a]),
        seq([0.0, -a, 0.0, a]),
    ];
    let members = states.into_iter().map(|s| (1.0 / 8.0, s)).collect();
    let grouping = vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
    let primary = Ensemble::new(members, grouping).expect("static ensemble is well-formed");

    // Temporal discrimination: the phase bit is worthless to this attack,
    // so the four alphabet states enter with a fixed leading sign, grouped
    // into the two temporal classes. All pairwise overlaps are gamma^2.
    let temporal_states = vec![
        seq([a, 0.0, a, 0.0]),
        seq([a, 0.0, -a, 0.0]),
        seq([0.0, a, 0.0, a]),
        seq([0.0, a, 0.0, -a]),
    ];
    let members = temporal_states.into_iter().map(|s| (0.25, s)).collect();
    let secondary =
        Ensemble::new(members, vec![vec![0, 1], vec![2, 3]]).expect("static ensemble is well-formed");

    BruteHolevo {
        chi0: primary.holevo(),
        chi1_bracket: secondary.holevo(),
    }
}
