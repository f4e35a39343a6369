use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::symbolic::{Binding, BoundOp, DiffOp};
use crate::{Error, Result};

/// Two base exponents are treated as differing by an integer when the
/// remainder is below this (relative to the exponents).
const ALIGN_TOL: f64 = 1e-10;

/// Output coefficients whose magnitude is below this fraction of the sum of
/// the magnitudes of their contributions are rounding noise and set to zero.
const CANCEL_RTOL: f64 = 256.0 * f64::EPSILON;

/// `f(rho) = rho^sigma e^{-xi rho} sum_j c_j rho^j`.
///
/// Canonical form: `c_0 != 0` (leading zeros are absorbed into `sigma`) and
/// no trailing zeros. The zero function has no coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    base_exponent: f64,
    decay: f64,
    coeffs: Vec<f64>,
}

impl QuasiPolynomial {
    pub fn new(base_exponent: f64, decay: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(decay > 0.0 && decay.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay must be positive, got {decay}")));
        }
        if !base_exponent.is_finite() {
            return Err(Error::InvalidArgument(format!("base exponent {base_exponent}")));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        let Some(first) = coeffs.iter().position(|c| *c != 0.0) else {
            return Self::zero(base_exponent.max(f64::MIN_POSITIVE), decay);
        };
        let last = coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(first);
        let sigma = base_exponent + first as f64;
        if sigma <= 0.0 {
            return Err(Error::ExponentUnderflow(sigma));
        }
        Ok(QuasiPolynomial { base_exponent: sigma, decay, coeffs: coeffs[first..=last].to_vec() })
    }

    pub fn zero(base_exponent: f64, decay: f64) -> Result<Self> {
        if !(base_exponent > 0.0) {
            return Err(Error::ExponentUnderflow(base_exponent));
        }
        if !(decay > 0.0 && decay.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay must be positive, got {decay}")));
        }
        Ok(QuasiPolynomial { base_exponent, decay, coeffs: Vec::new() })
    }

    pub fn base_exponent(&self) -> f64 {
        self.base_exponent
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Polynomial degree; `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of the lowest power `rho^sigma`.
    pub fn lowest_coeff(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, rho: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * rho + c);
        poly * self.envelope(rho)
    }

    /// `rho^sigma e^{-xi rho} sum_j |c_j| rho^j`; the scale against which
    /// rounding in [`QuasiPolynomial::eval`] is measured.
    pub fn eval_abs(&self, rho: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * rho + c.abs());
        poly * self.envelope(rho)
    }

    fn envelope(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        (self.base_exponent * rho.ln() - self.decay * rho).exp()
    }

    pub fn scaled(&self, factor: f64) -> QuasiPolynomial {
        if factor == 0.0 {
            return QuasiPolynomial { coeffs: Vec::new(), ..self.clone() };
        }
        QuasiPolynomial { coeffs: self.coeffs.iter().map(|c| c * factor).collect(), ..self.clone() }
    }

    pub fn negated(&self) -> QuasiPolynomial {
        self.scaled(-1.0)
    }

    /// Multiplication by `rho^p`.
    pub fn mul_rho_pow(&self, p: i32) -> Result<QuasiPolynomial> {
        let sigma = self.base_exponent + p as f64;
        if sigma <= 0.0 {
            return Err(Error::ExponentUnderflow(sigma));
        }
        Ok(QuasiPolynomial { base_exponent: sigma, ..self.clone() })
    }

    /// Integer offset of `other`'s base exponent relative to ours.
    fn offset_of(&self, other: &QuasiPolynomial) -> Result<i64> {
        let scale = self.decay.abs().max(other.decay.abs());
        if (self.decay - other.decay).abs() > ALIGN_TOL * scale {
            return Err(Error::Incompatible(format!("decays {} and {}", self.decay, other.decay)));
        }
        let diff = other.base_exponent - self.base_exponent;
        let d = diff.round();
        let tol = ALIGN_TOL * self.base_exponent.abs().max(other.base_exponent.abs()).max(1.0);
        if (diff - d).abs() > tol {
            return Err(Error::Incompatible(format!(
                "base exponents {} and {} differ by a non-integer",
                self.base_exponent, other.base_exponent
            )));
        }
        Ok(d as i64)
    }

    /// `a * self + b * other`; both must share the decay and have base
    /// exponents differing by an integer.
    pub fn combine(&self, a: f64, other: &QuasiPolynomial, b: f64) -> Result<QuasiPolynomial> {
        let d = self.offset_of(other)?;
        if self.is_zero() {
            return Ok(other.scaled(b));
        }
        if other.is_zero() {
            return Ok(self.scaled(a));
        }
        let lo = d.min(0);
        let base = self.base_exponent + lo as f64;
        let len = (self.coeffs.len() as i64).max(d + other.coeffs.len() as i64) - lo;
        let mut out = vec![0.0; len as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[(j as i64 - lo) as usize] += a * c;
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            out[(j as i64 + d - lo) as usize] += b * c;
        }
        QuasiPolynomial::new(base, self.decay, out)
    }

    pub fn add(&self, other: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        self.combine(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        self.combine(1.0, other, -1.0)
    }

    /// Largest coefficient magnitude.
    pub fn coeff_sup(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest aligned coefficient difference.
    pub fn coeff_distance(&self, other: &QuasiPolynomial) -> Result<f64> {
        Ok(self.sub(other)?.coeff_sup())
    }

    /// `coeff_distance(self, reference) / coeff_sup(reference)`; the plain
    /// distance when the reference is zero.
    pub fn relative_coeff_error(&self, reference: &QuasiPolynomial) -> Result<f64> {
        let d = self.coeff_distance(reference)?;
        let r = reference.coeff_sup();
        Ok(if r > 0.0 { d / r } else { d })
    }
}

fn falling_factorial(p: f64, i: u32) -> (f64, f64) {
    let mut v = 1.0;
    let mut mag = 1.0;
    for k in 0..i {
        v *= p - k as f64;
        mag *= p.abs() + k as f64;
    }
    (v, mag)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Applies a numerically bound operator term by term.
///
/// `D^d [rho^p e^{-xi rho}] = e^{-xi rho} sum_i C(d,i) (-xi)^{d-i} p^(i) rho^{p-i}`
/// with `p^(i)` the falling factorial. Coefficients that cancel to rounding
/// level are set to zero before the base exponent of the result is chosen,
/// so algebraically cancelling `rho^{sigma-1}` terms do not underflow.
pub fn apply_bound(op: &BoundOp, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let xi = f.decay;
    let mut acc: BTreeMap<i64, (f64, f64)> = BTreeMap::new();
    for t in op.terms() {
        for i in 0..=t.order {
            let c_di = binomial(t.order, i) * (-xi).powi((t.order - i) as i32);
            for (j, cj) in f.coeffs.iter().enumerate() {
                if *cj == 0.0 {
                    continue;
                }
                let (ff, ff_mag) = falling_factorial(f.base_exponent + j as f64, i);
                let offset = j as i64 - i as i64 + t.rho_exp as i64;
                let slot = acc.entry(offset).or_insert((0.0, 0.0));
                slot.0 += t.coeff * cj * c_di * ff;
                slot.1 += (t.magnitude * cj * c_di).abs() * ff_mag;
            }
        }
    }
    let kept: Vec<(i64, f64)> = acc
        .into_iter()
        .filter(|(_, (v, mag))| v.abs() > CANCEL_RTOL * mag)
        .map(|(o, (v, _))| (o, v))
        .collect();
    let Some(&(lo, _)) = kept.first() else {
        return Ok(QuasiPolynomial { coeffs: Vec::new(), ..f.clone() });
    };
    let sigma = f.base_exponent + lo as f64;
    if sigma <= 0.0 {
        return Err(Error::ExponentUnderflow(sigma));
    }
    let hi = kept.last().map(|(o, _)| *o).unwrap_or(lo);
    let mut coeffs = vec![0.0; (hi - lo + 1) as usize];
    for (o, v) in kept {
        coeffs[(o - lo) as usize] = v;
    }
    QuasiPolynomial::new(sigma, xi, coeffs)
}

/// Exact action of a symbolic operator after binding `(s, xi, gamma)`.
pub fn apply_diffop(op: &DiffOp, f: &QuasiPolynomial, binding: &Binding) -> Result<QuasiPolynomial> {
    apply_bound(&op.bind(binding), f)
}
