use serde::{Deserialize, Serialize};

use super::QuasiPolynomial;
use crate::symbolic::{Binding, DiffOp};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    pub count: usize,
}

impl FdGrid {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.rho_max - self.rho_min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.rho_min + step * i as f64).collect()
    }
}

/// Central 4th-order stencils: weights at offsets `-3..=3` and the
/// denominator, to be multiplied by `h^order`.
fn stencil(order: u32) -> (&'static [f64], f64) {
    match order {
        1 => (&[0.0, 1.0, -8.0, 0.0, 8.0, -1.0, 0.0], 12.0),
        2 => (&[0.0, -1.0, 16.0, -30.0, 16.0, -1.0, 0.0], 12.0),
        3 => (&[1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0], 8.0),
        4 => (&[-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0], 6.0),
        _ => unreachable!(),
    }
}

/// Step size per derivative order, balancing truncation against rounding.
fn step(order: u32, rho: f64) -> f64 {
    let h: f64 = match order {
        1 => 1e-3,
        2 => 2e-3,
        3 => 5e-3,
        _ => 1e-2,
    };
    h.min(rho / 8.0)
}

fn derivative(f: &QuasiPolynomial, order: u32, rho: f64) -> f64 {
    if order == 0 {
        return f.eval(rho);
    }
    let h = step(order, rho);
    let (w, den) = stencil(order);
    let sum: f64 = w
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| c * f.eval(rho + (i as f64 - 3.0) * h))
        .sum();
    sum / (den * h.powi(order as i32))
}

/// Samples `op f` on `grid` using finite differences of the exact point
/// values of `f`. Independent of [`super::apply_diffop`].
pub fn apply_fd(op: &DiffOp, f: &QuasiPolynomial, binding: &Binding, grid: &FdGrid) -> Result<Vec<(f64, f64)>> {
    if !(grid.rho_min > 0.0 && grid.rho_max > grid.rho_min && grid.rho_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid [{}, {}] must satisfy 0 < rho_min < rho_max",
            grid.rho_min, grid.rho_max
        )));
    }
    if grid.count < 5 {
        return Err(Error::InvalidArgument(format!("grid needs at least 5 points, got {}", grid.count)));
    }
    let bound = op.bind(binding);
    if bound.max_order() > 4 {
        return Err(Error::InvalidArgument("finite differences support order <= 4".into()));
    }
    Ok(grid
        .points()
        .into_iter()
        .map(|rho| {
            let v = bound
                .terms()
                .iter()
                .map(|t| t.coeff * rho.powi(t.rho_exp) * derivative(f, t.order, rho))
                .sum();
            (rho, v)
        })
        .collect())
}
