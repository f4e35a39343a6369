use nalgebra::DMatrix;

use super::dd::Dd;
use super::{basis_state, QuasiPolynomial};
use crate::special::gamma_fn;
use crate::{Error, Result};

/// Largest `m_max` accepted by [`gram_matrix`].
pub const GRAM_MAX: u32 = 30;

/// `∫_0^∞ f g rho^{-1} drho` as the closed-form Gamma sum
/// `Γ(a)/c^a · sum_k h_k (a)_k / c^k`, `a = σ_f + σ_g`, `c = ξ_f + ξ_g`,
/// `h_k = sum_{j+j'=k} c_j d_j'`.
///
/// The alternating sum cancels heavily for orthogonal states, so `h_k`,
/// the Pochhammer ratios and the final sum are carried in double-double.
pub fn inner_product(f: &QuasiPolynomial, g: &QuasiPolynomial) -> Result<f64> {
    let a = f.base_exponent() + g.base_exponent();
    if !(a > 0.0) {
        return Err(Error::Divergent(a));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(0.0);
    }
    let a_dd = Dd::sum(f.base_exponent(), g.base_exponent());
    let c_dd = Dd::sum(f.decay(), g.decay());
    let (fc, gc) = (f.coeffs(), g.coeffs());
    let len = fc.len() + gc.len() - 1;
    let mut h = vec![Dd::ZERO; len];
    for (j, x) in fc.iter().enumerate() {
        for (jj, y) in gc.iter().enumerate() {
            h[j + jj] = h[j + jj].add(Dd::prod(*x, *y));
        }
    }
    let mut ratio = Dd::from_f64(1.0);
    let mut sum = Dd::ZERO;
    for (k, hk) in h.iter().enumerate() {
        if k > 0 {
            let num = a_dd.add_f64((k - 1) as f64);
            ratio = ratio.mul(num).div(c_dd);
        }
        sum = sum.add(hk.mul(ratio));
    }
    let prefactor = gamma_fn(a)? * (-a * c_dd.to_f64().ln()).exp();
    Ok(prefactor * sum.to_f64())
}

pub fn norm(f: &QuasiPolynomial) -> Result<f64> {
    Ok(inner_product(f, f)?.max(0.0).sqrt())
}

/// Unit norm with a positive lowest-power coefficient.
pub fn normalize(f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let n = norm(f)?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::ZeroFunction);
    }
    let sign = if f.lowest_coeff() < 0.0 { -1.0 } else { 1.0 };
    Ok(f.scaled(sign / n))
}

/// Normalized fixed-`xi` basis state.
pub fn normalized_basis_state(m: u32, s: f64, xi: f64) -> Result<QuasiPolynomial> {
    normalize(&basis_state(m, s, xi)?)
}

/// Inner products of the normalized basis states `0 <= m, m' <= m_max`.
pub fn gram_matrix(s: f64, xi: f64, m_max: u32) -> Result<DMatrix<f64>> {
    if m_max > GRAM_MAX {
        return Err(Error::InvalidArgument(format!("m_max {m_max} exceeds {GRAM_MAX}")));
    }
    let states = (0..=m_max)
        .map(|m| normalized_basis_state(m, s, xi))
        .collect::<Result<Vec<_>>>()?;
    let n = states.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = inner_product(&states[i], &states[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gauss_laguerre;

    const S: f64 = 0.8660254037844386;
    const XI: f64 = 0.5773502691896258;

    #[test]
    fn ground_state_norm_matches_gamma_closed_form() {
        let chi0 = basis_state(0, S, XI).unwrap();
        let v = inner_product(&chi0, &chi0).unwrap();
        // mpmath: gamma(2s) / (2 xi)^(2s)
        assert!((v - 0.713295568107084358).abs() < 1e-14);
    }

    #[test]
    fn first_two_states_are_orthogonal() {
        let a = basis_state(0, S, XI).unwrap();
        let b = basis_state(1, S, XI).unwrap();
        assert!(inner_product(&a, &b).unwrap().abs() < 1e-15);
    }

    #[test]
    fn symmetric() {
        let f = QuasiPolynomial::new(1.2, 0.4, vec![1.0, -0.5, 0.1]).unwrap();
        let g = QuasiPolynomial::new(2.2, 0.9, vec![0.3, 2.0]).unwrap();
        assert_eq!(inner_product(&f, &g).unwrap(), inner_product(&g, &f).unwrap());
    }

    #[test]
    fn quadrature_oracle_agrees() {
        let f = basis_state(4, S, XI).unwrap();
        let g = QuasiPolynomial::new(S + 1.0, XI, vec![1.0, 0.2, -0.03]).unwrap();
        let exact = inner_product(&f, &g).unwrap();
        // ∫ rho^{a-1} e^{-c rho} p(rho): substitute x = c rho
        let a = f.base_exponent() + g.base_exponent();
        let c = 2.0 * XI;
        let rule = gauss_laguerre(40, a - 1.0).unwrap();
        let quad = rule.integrate(|x| {
            let rho = x / c;
            let env = (f.base_exponent() + g.base_exponent()) * rho.ln() - c * rho;
            f.eval(rho) * g.eval(rho) / env.exp()
        }) / c.powf(a);
        assert!((quad - exact).abs() <= 1e-12 * exact.abs().max(1e-3), "{quad} vs {exact}");
    }

    #[test]
    fn normalize_sets_unit_norm_and_sign() {
        let f = basis_state(2, S, XI).unwrap().scaled(-3.0);
        let n = normalize(&f).unwrap();
        assert!((norm(&n).unwrap() - 1.0).abs() < 1e-14);
        assert!(n.lowest_coeff() > 0.0);
        let again = normalize(&n.scaled(2.0)).unwrap();
        assert!(again.relative_coeff_error(&n).unwrap() < 1e-15);
    }

    #[test]
    fn normalize_rejects_zero() {
        let z = QuasiPolynomial::zero(1.0, 1.0).unwrap();
        assert!(matches!(normalize(&z), Err(Error::ZeroFunction)));
    }

    #[test]
    fn gram_matrix_is_identity() {
        let g = gram_matrix(S, XI, 10).unwrap();
        let err = (&g - DMatrix::identity(11, 11)).amax();
        assert!(err < 1e-11, "{err}");
        let one = gram_matrix(S, XI, 0).unwrap();
        assert_eq!(one.shape(), (1, 1));
        assert!((one[(0, 0)] - 1.0).abs() < 1e-15);
        assert!(gram_matrix(S, XI, 31).is_err());
    }
}
