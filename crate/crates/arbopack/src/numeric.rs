//! Scalar abstraction for the analytic layer.
//!
//! The combinatorial side of the crate works in integers; everything that is
//! genuinely scalar (the rate shape `F`, expected degree-class sizes, the
//! typical minimum in-degree) is generic over [`Real`] so it runs at any
//! float width. The crate root exports [`crate::Scalar`] = `f64` as the
//! concrete default.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the analytic functions (`f32`, `f64`, ...).
pub trait Real: Float + FromPrimitive + core::fmt::Debug {
    /// Shorthand for lossy conversion from `usize` counts.
    fn from_count(c: usize) -> Self {
        Self::from_usize(c).expect("count representable")
    }
}

impl<T: Float + FromPrimitive + core::fmt::Debug> Real for T {}

/// Natural log of the binomial coefficient `C(m, k)`, by direct summation.
///
/// Exact enough for the crate's tolerances: the summation error stays below
/// `~m * eps`, which is orders of magnitude under the 1e-9 relative error
/// budget of its callers at any feasible `m`.
pub fn ln_choose<R: Real>(m: usize, k: usize) -> R {
    assert!(k <= m, "ln_choose({m}, {k})");
    let k = k.min(m - k);
    let mut acc = R::zero();
    for i in 1..=k {
        acc = acc + (R::from_count(m - k + i) / R::from_count(i)).ln();
    }
    acc
}
