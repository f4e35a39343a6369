use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arguments of the confluent hypergeometric function `1F1(a; b; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerParams {
    pub fn new(a: f64, b: f64, z: f64) -> Self {
        KummerParams { a, b, z }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Kummer's function `M(a, b, z) = 1F1(a; b; z)` for terminating series,
/// `a = -n`.
///
/// The finite sum is evaluated in nested form
/// `1 + t1 (1 + t2 (1 + ...))` starting from the innermost (highest) term.
/// Non-terminating `a` is rejected rather than approximated.
pub fn kummer_m(p: KummerParams) -> Result<f64> {
    let KummerParams { a, b, z } = p;
    if is_nonpositive_integer(b) {
        return Err(Error::KummerDomain(b));
    }
    if !is_nonpositive_integer(a) {
        return Err(Error::NonTerminating(a));
    }
    let n = (-a) as u32;
    let mut acc = 1.0;
    for j in (0..n).rev() {
        let jf = j as f64;
        acc = 1.0 + acc * (a + jf) * z / ((b + jf) * (jf + 1.0));
    }
    Ok(acc)
}

/// Monomial coefficients of `z -> 1F1(-n; b; z)`; entry `j` is
/// `(-n)_j / ((b)_j j!)`. Requires `b > 0`.
pub fn kummer_coeffs(n: u32, b: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0;
    out.push(c);
    for j in 0..n {
        let jf = j as f64;
        c *= (jf - n as f64) / ((b + jf) * (jf + 1.0));
        out.push(c);
    }
    out
}

/// `sum_j |c_j| z^j`, the magnitude scale of the terminating series at `z`.
/// Rounding error of any evaluation is proportional to this, not to the
/// (possibly vanishing) value itself.
pub fn kummer_term_scale(n: u32, b: f64, z: f64) -> f64 {
    kummer_coeffs(n, b)
        .iter()
        .enumerate()
        .map(|(j, c)| c.abs() * z.abs().powi(j as i32))
        .sum()
}

/// Generalized Laguerre polynomial `L_n^(alpha)(x)` by the three-term
/// recurrence `(k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}`.
pub fn laguerre_l(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_a_is_one() {
        assert_eq!(kummer_m(KummerParams::new(0.0, 1.7, 3.2)).unwrap(), 1.0);
        assert_eq!(kummer_coeffs(0, 4.2), vec![1.0]);
    }

    #[test]
    fn two_term_series() {
        let s = 0.8660254037844386;
        let y = 1.3;
        let m = kummer_m(KummerParams::new(-1.0, 2.0 * s, y)).unwrap();
        assert_relative_eq!(m, 1.0 - y / (2.0 * s), max_relative = 1e-15);
    }

    #[test]
    fn three_term_series_by_hand() {
        // 1 - 2/3 + (-2)(-1)/(3*4*2) = 5/12
        let m = kummer_m(KummerParams::new(-2.0, 3.0, 1.0)).unwrap();
        assert_relative_eq!(m, 5.0 / 12.0, max_relative = 1e-15);
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(kummer_coeffs(1, 2.0), vec![1.0, -0.5]);
        let c = kummer_coeffs(2, 3.0);
        assert_relative_eq!(c[1], -2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(c[2], 1.0 / 12.0, max_relative = 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(kummer_m(KummerParams::new(-1.0, 0.0, 1.0)), Err(Error::KummerDomain(_))));
        assert!(matches!(kummer_m(KummerParams::new(-1.0, -2.0, 1.0)), Err(Error::KummerDomain(_))));
        assert!(matches!(kummer_m(KummerParams::new(0.5, 2.0, 1.0)), Err(Error::NonTerminating(_))));
        assert!(matches!(kummer_m(KummerParams::new(1.0, 2.0, 1.0)), Err(Error::NonTerminating(_))));
    }

    #[test]
    fn laguerre_low_orders() {
        let (a, x) = (0.7, 1.9);
        assert_eq!(laguerre_l(0, a, x), 1.0);
        assert_relative_eq!(laguerre_l(1, a, x), 1.0 + a - x, max_relative = 1e-15);
        let l2 = (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / 2.0;
        assert_relative_eq!(laguerre_l(2, a, x), l2, max_relative = 1e-14);
    }
}
