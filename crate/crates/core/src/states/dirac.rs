//! The coupled first-order radial system in `rho = E r`:
//!
//! ```text
//! (k/s + m/E) F2 = ( d/drho + s/rho - gamma/s) F1
//! (k/s - m/E) F1 = (-d/drho + s/rho - gamma/s) F2
//! ```
//!
//! with `F1` the upper (`rho^{s+1}`) and `F2` the lower (`rho^s`) component.

use super::{apply_bound, QuasiPolynomial};
use crate::spectrum::{QuantumNumbers, SpectralParams};
use crate::symbolic::{BoundOp, BoundTerm};
use crate::Result;

/// Number of sample points used by the ratio fit and residual checks.
pub const DIRAC_SAMPLES: usize = 301;

/// `±d/drho + s/rho - gamma/s`.
pub fn first_order_operator(sign: f64, s: f64, gamma: f64) -> BoundOp {
    BoundOp::new(vec![
        BoundTerm::new(1, 0, sign),
        BoundTerm::new(0, -1, s),
        BoundTerm::new(0, 0, -gamma / s),
    ])
}

/// `(k/s + m/E, k/s - m/E)`.
pub fn coupling_factors(q: &QuantumNumbers, p: &SpectralParams) -> (f64, f64) {
    let k_over_s = q.k as f64 / p.s;
    let m_over_e = q.mass / p.energy;
    (k_over_s + m_over_e, k_over_s - m_over_e)
}

/// Sample points spanning `rho in [0.1, 30] / E`.
pub fn dirac_grid(energy: f64) -> Vec<f64> {
    let (lo, hi) = (0.1 / energy, 30.0 / energy);
    let step = (hi - lo) / (DIRAC_SAMPLES - 1) as f64;
    (0..DIRAC_SAMPLES).map(|i| lo + step * i as f64).collect()
}

/// Least-squares `c` in `(k/s + m/E) F2 = c (d/drho + s/rho - gamma/s) F1`
/// over [`dirac_grid`]. `upper` is `None` for the null component, for which
/// the ratio is irrelevant and `0` is returned.
pub fn fit_component_ratio(
    q: &QuantumNumbers,
    p: &SpectralParams,
    upper: Option<&QuasiPolynomial>,
    lower: &QuasiPolynomial,
) -> Result<f64> {
    let Some(upper) = upper else {
        return Ok(0.0);
    };
    let (kp, _) = coupling_factors(q, p);
    let rhs = apply_bound(&first_order_operator(1.0, p.s, q.gamma), upper)?;
    let (mut ab, mut bb) = (0.0, 0.0);
    for rho in dirac_grid(p.energy) {
        let a = kp * lower.eval(rho);
        let b = rhs.eval(rho);
        ab += a * b;
        bb += b * b;
    }
    Ok(if bb > 0.0 { ab / bb } else { 0.0 })
}
