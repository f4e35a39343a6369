use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::gamma_fn;
use crate::{Error, Result};

/// Gauss rule for `∫_0^∞ f(x) x^alpha e^{-x} dx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

const MAX_COUNT: usize = 200;
const MAX_NEWTON: usize = 100;

/// Recurrence coefficients of the orthonormal Laguerre polynomials:
/// diagonal `2k + alpha + 1`, off-diagonal `sqrt(k (k + alpha))`.
fn diag(k: usize, alpha: f64) -> f64 {
    2.0 * k as f64 + alpha + 1.0
}

fn offdiag(k: usize, alpha: f64) -> f64 {
    (k as f64 * (k as f64 + alpha)).sqrt()
}

struct OrthonormalEval {
    p: f64,
    dp: f64,
    /// `ln sum_{k<n} p_k(x)^2`
    log_christoffel: f64,
}

/// Runs the orthonormal recurrence up to degree `n` at `x`, rescaling as
/// needed so that large nodes of high-order rules do not overflow.
fn orthonormal(n: usize, alpha: f64, mu0: f64, x: f64) -> OrthonormalEval {
    let mut p_prev = 0.0;
    let mut dp_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut dp = 0.0;
    let mut sum = 0.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        sum += p * p;
        let b_next = offdiag(k + 1, alpha);
        let b_k = offdiag(k, alpha);
        let a_k = diag(k, alpha);
        let p_next = ((x - a_k) * p - b_k * p_prev) / b_next;
        let dp_next = (p + (x - a_k) * dp - b_k * dp_prev) / b_next;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        let big = p.abs().max(p_prev.abs());
        if big > 1e100 {
            p /= big;
            p_prev /= big;
            dp /= big;
            dp_prev /= big;
            sum /= big * big;
            log_scale += big.ln();
        }
    }
    OrthonormalEval {
        p,
        dp,
        log_christoffel: sum.ln() + 2.0 * log_scale,
    }
}

/// Generalized Gauss-Laguerre nodes and weights.
///
/// Nodes start from the eigenvalues of the Jacobi matrix (Golub-Welsch) and
/// are polished by Newton iteration on the recurrence; weights come from the
/// Christoffel function `1 / sum_k p_k(x)^2`, which keeps small weights
/// accurate in a relative sense. For the largest rules the outermost weights
/// can underflow.
pub fn gauss_laguerre(count: usize, alpha: f64) -> Result<QuadratureRule> {
    if count == 0 || count > MAX_COUNT {
        return Err(Error::InvalidQuadrature(format!("count must be in 1..={MAX_COUNT}, got {count}")));
    }
    if !(alpha > -1.0) {
        return Err(Error::InvalidQuadrature(format!("alpha must exceed -1, got {alpha}")));
    }
    let mu0 = gamma_fn(alpha + 1.0)?;

    let mut jacobi = DMatrix::<f64>::zeros(count, count);
    for k in 0..count {
        jacobi[(k, k)] = diag(k, alpha);
        if k + 1 < count {
            let b = offdiag(k + 1, alpha);
            jacobi[(k, k + 1)] = b;
            jacobi[(k + 1, k)] = b;
        }
    }
    let mut guesses: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    guesses.sort_by(|a, b| a.total_cmp(b));

    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for (index, &guess) in guesses.iter().enumerate() {
        let mut x = guess;
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let e = orthonormal(count, alpha, mu0, x);
            let dx = e.p / e.dp;
            x -= dx;
            if dx.abs() <= 1e-12 * x.abs() {
                // quadratic convergence: one more step reaches rounding level
                let e = orthonormal(count, alpha, mu0, x);
                x -= e.p / e.dp;
                converged = true;
                break;
            }
        }
        if !converged || !(x > 0.0) {
            return Err(Error::QuadratureConvergence { count, index });
        }
        nodes.push(x);
        weights.push((-orthonormal(count, alpha, mu0, x).log_christoffel).exp());
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidQuadrature("nodes are not strictly increasing".into()));
    }
    Ok(QuadratureRule { nodes, weights, alpha })
}
