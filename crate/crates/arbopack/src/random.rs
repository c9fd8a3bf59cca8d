//! The random digraph model `D(n,p)` with reproducible, independently seeded
//! trial substreams, plus the probability regimes used by the experiments.

use crate::digraph::Digraph;
use crate::Scalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Master seed type for experiments.
pub type Seed = u64;

#[derive(Debug, Error, PartialEq)]
pub enum RandomError {
    #[error("need at least one vertex")]
    NoVertices,
    #[error("probability {0} outside [0,1]")]
    ProbabilityOutOfRange(f64),
    #[error("regime {regime} needs n >= 3 so that log log n is positive, got n={n}")]
    NeedsLargerN { regime: &'static str, n: usize },
    #[error("constant_factor regime needs phi > 1, got {0}")]
    PhiTooSmall(f64),
}

/// Derives the RNG for one `(master, n, trial)` cell.
///
/// The 32-byte ChaCha8 key is `master`, `n`, and `trial` as little-endian
/// u64 words followed by a zero word, so every cell of an experiment grid
/// gets an independent stream and any single trial can be regenerated
/// without replaying the sweep.
pub fn trial_rng(master: Seed, n: usize, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&master.to_le_bytes());
    key[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Samples `D(n,p)`: each of the `n(n-1)` ordered pairs becomes an arc
/// independently with probability `p`.
///
/// The draw order is part of the reproducibility contract: one uniform
/// `f64` per ordered pair `(u,v)`, iterating `u` from `0` to `n-1` and, for
/// each `u`, `v` from `0` to `n-1` skipping `v = u`; the arc is present when
/// the draw is `< p`.
pub fn sample_with<R: Rng>(n: usize, p: Scalar, rng: &mut R) -> Result<Digraph, RandomError> {
    if n == 0 {
        return Err(RandomError::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::ProbabilityOutOfRange(p));
    }
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if v == u {
                continue;
            }
            if rng.gen::<Scalar>() < p {
                arcs.push((u, v));
            }
        }
    }
    Ok(Digraph::build(n, arcs).expect("generated arcs are in range and loop-free"))
}

/// Samples trial 0 of the `(seed, n)` cell; see [`sample_with`] and
/// [`trial_rng`].
pub fn sample(n: usize, p: Scalar, seed: Seed) -> Result<Digraph, RandomError> {
    sample_with(n, p, &mut trial_rng(seed, n, 0))
}

/// Arc-probability regimes for the experiment sweeps. Every regime resolves
/// to a concrete `p` for a given `n` via [`Regime::p_of`], clamped to
/// `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime {
    /// `p = (log n - h * log log n) / (n - 1)`
    SubcriticalA { h_scale: Scalar },
    /// `p = (log n + h * log log n) / (n - 1)`
    CriticalB { h_scale: Scalar },
    /// `p = (log n + h * (log log n)^2) / (n - 1)`
    NearcriticalC { h_scale: Scalar },
    /// `p = phi * log n / (n - 1)` with `phi > 1`
    ConstantFactor { phi: Scalar },
    /// `p = psi * (log log n) * log n / (n - 1)`
    Dense { psi_scale: Scalar },
    /// Fixed `p`, independent of `n`
    Explicit { p: Scalar },
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::SubcriticalA { .. } => "subcritical_a",
            Regime::CriticalB { .. } => "critical_b",
            Regime::NearcriticalC { .. } => "nearcritical_c",
            Regime::ConstantFactor { .. } => "constant_factor",
            Regime::Dense { .. } => "dense",
            Regime::Explicit { .. } => "explicit",
        }
    }

    /// Resolves the regime at size `n`, clamping the result into `[0,1]`.
    pub fn p_of(&self, n: usize) -> Result<Scalar, RandomError> {
        let needs_loglog = !matches!(self, Regime::Explicit { .. });
        if needs_loglog && n < 3 {
            return Err(RandomError::NeedsLargerN { regime: self.name(), n });
        }
        let raw = match *self {
            Regime::SubcriticalA { h_scale } => {
                let ln_n = (n as Scalar).ln();
                (ln_n - h_scale * ln_n.ln()) / (n as Scalar - 1.0)
            }
            Regime::CriticalB { h_scale } => {
                let ln_n = (n as Scalar).ln();
                (ln_n + h_scale * ln_n.ln()) / (n as Scalar - 1.0)
            }
            Regime::NearcriticalC { h_scale } => {
                let ln_n = (n as Scalar).ln();
                (ln_n + h_scale * ln_n.ln().powi(2)) / (n as Scalar - 1.0)
            }
            Regime::ConstantFactor { phi } => {
                if !(phi > 1.0) {
                    return Err(RandomError::PhiTooSmall(phi));
                }
                phi * (n as Scalar).ln() / (n as Scalar - 1.0)
            }
            Regime::Dense { psi_scale } => {
                let ln_n = (n as Scalar).ln();
                psi_scale * ln_n.ln() * ln_n / (n as Scalar - 1.0)
            }
            Regime::Explicit { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(RandomError::ProbabilityOutOfRange(p));
                }
                p
            }
        };
        Ok(raw.clamp(0.0, 1.0))
    }
}
