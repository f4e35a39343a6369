//! Radial functions as quasi-polynomials `rho^sigma e^{-xi rho} p(rho)`.
//!
//! Two families live here. The fixed-`xi` basis `χ_s^m` (all `m` share one
//! decay) is what the su(1,1) ladder acts on and what is orthonormal under
//! the `rho^{-1}` measure. Physical states `ψ_s^n` carry their own
//! `xi_n = gamma / (n + s)`; they coincide with a basis state at that decay
//! but states of different `n` are not mutually orthogonal.

mod dd;
pub mod dirac;
mod fd;
mod inner;
mod quasi;

pub use fd::{apply_fd, FdGrid};
pub use inner::{gram_matrix, inner_product, norm, normalize, normalized_basis_state, GRAM_MAX};
pub use quasi::{apply_bound, apply_diffop, QuasiPolynomial};

use serde::{Deserialize, Serialize};

use crate::special::kummer_coeffs;
use crate::spectrum::{energy_of, QuantumNumbers, SpectralParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    Upper,
    Lower,
}

/// A radial component that may be the explicit zero function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadialComponent {
    Null,
    Function(QuasiPolynomial),
}

impl RadialComponent {
    pub fn is_null(&self) -> bool {
        matches!(self, RadialComponent::Null)
    }

    pub fn function(&self) -> Option<&QuasiPolynomial> {
        match self {
            RadialComponent::Null => None,
            RadialComponent::Function(f) => Some(f),
        }
    }

    pub fn eval(&self, rho: f64) -> f64 {
        self.function().map_or(0.0, |f| f.eval(rho))
    }
}

/// `χ_s^m = rho^s e^{-xi rho} 1F1(-m, 2s; 2 xi rho)`.
pub fn basis_state(m: u32, s: f64, xi: f64) -> Result<QuasiPolynomial> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {s}")));
    }
    let z = 2.0 * xi;
    let coeffs = kummer_coeffs(m, 2.0 * s)
        .into_iter()
        .enumerate()
        .map(|(j, c)| c * z.powi(j as i32))
        .collect();
    QuasiPolynomial::new(s, xi, coeffs)
}

/// Unnormalized physical component at the decay `xi(E)` of `q`: lower is
/// `χ_s^n`, upper is `χ_{s+1}^{n-1}` and the explicit zero for `n = 0`.
pub fn physical_component(q: &QuantumNumbers, which: Component) -> Result<RadialComponent> {
    q.require_bound_state()?;
    let p = energy_of(q)?;
    Ok(match which {
        Component::Lower => RadialComponent::Function(basis_state(q.n, p.s, p.xi)?),
        Component::Upper if q.n == 0 => RadialComponent::Null,
        Component::Upper => RadialComponent::Function(basis_state(q.n - 1, p.s + 1.0, p.xi)?),
    })
}

/// Both radial components of a bound state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorState {
    /// `F1`, proportional to `rho^{s+1}`; null iff `n = 0`.
    pub upper: RadialComponent,
    /// `F2`, proportional to `rho^s`.
    pub lower: QuasiPolynomial,
    pub q: QuantumNumbers,
    pub params: SpectralParams,
}

impl SpinorState {
    /// Components with the relative factor fixed by the coupled first-order
    /// system, jointly normalized so that `(F1,F1) + (F2,F2) = 1`, with the
    /// lower component's lowest coefficient positive.
    pub fn normalized(q: &QuantumNumbers) -> Result<SpinorState> {
        let params = energy_of(q)?;
        let lower = physical_component(q, Component::Lower)?;
        let upper = physical_component(q, Component::Upper)?;
        let lower = lower.function().cloned().ok_or(Error::ZeroFunction)?;
        let ratio = dirac::fit_component_ratio(q, &params, upper.function(), &lower)?;
        let upper = upper.function().map(|f| f.scaled(ratio));
        let mut total = inner_product(&lower, &lower)?;
        if let Some(u) = &upper {
            total += inner_product(u, u)?;
        }
        if !(total > 0.0) {
            return Err(Error::ZeroFunction);
        }
        let sign = if lower.lowest_coeff() < 0.0 { -1.0 } else { 1.0 };
        let factor = sign / total.sqrt();
        Ok(SpinorState {
            upper: upper.map_or(RadialComponent::Null, |u| RadialComponent::Function(u.scaled(factor))),
            lower: lower.scaled(factor),
            q: *q,
            params,
        })
    }

    /// `(rho, F1, F2)` at each point.
    pub fn sample(&self, rhos: &[f64]) -> Vec<(f64, f64, f64)> {
        rhos.iter().map(|&r| (r, self.upper.eval(r), self.lower.eval(r))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{build_generator, Binding, Generator};

    const S: f64 = 0.8660254037844386;

    #[test]
    fn basis_state_low_orders() {
        let xi = 0.4;
        let chi0 = basis_state(0, S, xi).unwrap();
        assert_eq!(chi0.coeffs(), &[1.0]);
        let chi1 = basis_state(1, S, xi).unwrap();
        assert_eq!(chi1.base_exponent(), S);
        assert!((chi1.coeffs()[1] + 2.0 * xi / (2.0 * S)).abs() < 1e-16);
    }

    #[test]
    fn physical_ground_state() {
        let q = QuantumNumbers::new(-1, 0, 0.5, 1.0).unwrap();
        let lower = physical_component(&q, Component::Lower).unwrap();
        let f = lower.function().unwrap();
        assert!((f.base_exponent() - S).abs() < 1e-15);
        assert!((f.decay() - 0.5 / S).abs() < 1e-15);
        assert_eq!(f.coeffs(), &[1.0]);
        assert!(physical_component(&q, Component::Upper).unwrap().is_null());
    }

    #[test]
    fn positive_k_has_no_ground_state() {
        let q = QuantumNumbers::new(1, 0, 0.5, 1.0).unwrap();
        assert!(matches!(
            physical_component(&q, Component::Lower),
            Err(Error::NoGroundState { k: 1 })
        ));
    }

    #[test]
    fn sigma3_on_ground_state() {
        let xi = 0.37;
        let chi0 = basis_state(0, S, xi).unwrap();
        let b = Binding { s: S, xi, gamma: 0.5 };
        let out = apply_diffop(&build_generator(Generator::Sigma3), &chi0, &b).unwrap();
        assert!(out.relative_coeff_error(&chi0.scaled(S)).unwrap() < 1e-15);
    }

    #[test]
    fn b_minus_annihilates_ground_state() {
        let xi = 0.5 / S;
        let psi = basis_state(0, S, xi).unwrap();
        let b = Binding { s: S, xi, gamma: 0.5 };
        assert!(apply_diffop(&build_generator(Generator::BMinus), &psi, &b).unwrap().is_zero());
    }

    #[test]
    fn spinor_normalization() {
        let q = QuantumNumbers::new(-1, 2, 0.5, 1.0).unwrap();
        let st = SpinorState::normalized(&q).unwrap();
        let u = st.upper.function().unwrap();
        let total = inner_product(u, u).unwrap() + inner_product(&st.lower, &st.lower).unwrap();
        assert!((total - 1.0).abs() < 1e-13);
        assert!(st.lower.lowest_coeff() > 0.0);
    }
}
