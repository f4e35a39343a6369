//! Numeric verification of the su(1,1) structure on radial states: ladder
//! actions, eigenvalue equations, hermiticity, the `B±`/`Σ±` equivalence and
//! the coupled first-order radial system.
//!
//! Every check returns a [`VerificationReport`]; computational failures
//! become failing entries rather than errors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::report::{params, Params, VerificationReport};
use crate::spectrum::{energy_of, s_of, QuantumNumbers};
use crate::states::dirac::{coupling_factors, dirac_grid, first_order_operator};
use crate::states::{
    apply_bound, apply_diffop, basis_state, inner_product, normalize, normalized_basis_state, physical_component,
    Component, QuasiPolynomial, SpinorState,
};
use crate::symbolic::{b_sigma_residual, build_generator, verify_algebra, verify_algebra_perturbed};
use crate::symbolic::{Binding, BoundOp, BoundTerm, DiffOp, Generator, GeneratorSet, Sector};
use crate::{Error, Result};

pub const LADDER_TOL: f64 = 1e-10;
pub const ANNIHILATION_TOL: f64 = 1e-12;
pub const HERMITICITY_TOL: f64 = 1e-10;
pub const DIRAC_TOL: f64 = 1e-8;
/// Largest `m_max` accepted by [`check_ladder`] and [`check_eigen`].
pub const LADDER_M_MAX: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// Measured phases: `K± χ̂^m = σ± Q± χ̂^{m±1}` with both normalized states
/// having a positive lowest coefficient. Same in both sectors and for every
/// `m` and `s` tested.
pub const SIGN_PLUS: f64 = -1.0;
pub const SIGN_MINUS: f64 = -1.0;

pub fn ladder_sign(sign: Sign) -> f64 {
    match sign {
        Sign::Plus => SIGN_PLUS,
        Sign::Minus => SIGN_MINUS,
    }
}

/// `|⟨χ̂^{m±1}, K± χ̂^m⟩|` for lowest weight `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderCoefficient {
    pub m: u32,
    pub s: f64,
    pub sign: Sign,
    pub value: f64,
}

/// `Q+^2 = (m+1)(m+2s)`, `Q-^2 = m(m+2s-1)`: the matrix elements of the
/// discrete series with Casimir `s(s-1)` and `K3 χ^m = (m+s) χ^m`.
pub fn q_coeff_squared(m: i64, s: f64, sign: Sign) -> f64 {
    let mf = m as f64;
    match sign {
        Sign::Plus => (mf + 1.0) * (mf + 2.0 * s),
        Sign::Minus => mf * (mf + 2.0 * s - 1.0),
    }
}

/// Ladder coefficient; a negative radicand (e.g. lowering below the lowest
/// weight of the shifted sector) is rejected as complex.
pub fn q_coeff(m: i64, s: f64, sign: Sign) -> Result<LadderCoefficient> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("s must be positive, got {s}")));
    }
    let sq = q_coeff_squared(m, s, sign);
    if sq < 0.0 {
        return Err(Error::ComplexLadderCoefficient { m, s });
    }
    let m = u32::try_from(m).map_err(|_| Error::InvalidArgument(format!("m = {m} is below the lowest weight")))?;
    Ok(LadderCoefficient { m, s, sign, value: sq.sqrt() })
}

fn record_result(report: &mut VerificationReport, name: &str, p: Params, tol: f64, r: Result<f64>) {
    match r {
        Ok(e) => report.record(name, p, e, tol),
        Err(err) => report.record_failure(name, p, tol, &err.to_string()),
    }
}

/// `‖A f - λ f‖ / (max(|λ|, 1) ‖f‖)` in coefficient sup-norm.
fn eigen_error(af: &QuasiPolynomial, f: &QuasiPolynomial, lambda: f64) -> Result<f64> {
    let d = af.coeff_distance(&f.scaled(lambda))?;
    Ok(d / (lambda.abs().max(1.0) * f.coeff_sup()))
}

fn sector_s(sector: Sector, s: f64) -> f64 {
    s + sector.s_shift() as f64
}

fn check_m_max(m_max: u32) -> Result<()> {
    if m_max > LADDER_M_MAX {
        return Err(Error::InvalidArgument(format!("m_max {m_max} exceeds {LADDER_M_MAX}")));
    }
    Ok(())
}

/// Ladder actions on the normalized fixed-`xi` basis of both sectors.
pub fn check_ladder(s: f64, xi: f64, m_max: u32) -> Result<VerificationReport> {
    check_m_max(m_max)?;
    let mut report = VerificationReport::new();
    for sector in [Sector::Sigma, Sector::Xi] {
        let g = GeneratorSet::new(sector);
        let se = sector_s(sector, s);
        let b = Binding { s, xi, gamma: s * xi };
        let states = (0..=m_max + 1)
            .map(|m| normalized_basis_state(m, se, xi))
            .collect::<Result<Vec<_>>>()?;
        for m in 0..=m_max {
            let chi = &states[m as usize];
            let base = |op: &str| -> Params {
                params([("sector", json!(sector.name())), ("s", json!(se)), ("m", json!(m)), ("op", json!(op))])
            };
            for (sign, op) in [(Sign::Plus, &g.plus), (Sign::Minus, &g.minus)] {
                let r = apply_diffop(op, chi, &b);
                let p = base(sign.name());
                if sign == Sign::Minus && m == 0 {
                    let res = r.map(|r| r.coeff_sup() / chi.coeff_sup());
                    record_result(&mut report, "ladder_annihilation", p, ANNIHILATION_TOL, res);
                    continue;
                }
                let target = &states[if sign == Sign::Plus { m + 1 } else { m - 1 } as usize];
                let q = q_coeff(m as i64, se, sign).map(|c| c.value);
                let colinear = r.as_ref().map_err(Clone::clone).and_then(|r| {
                    let q = q.clone()?;
                    let expected = target.scaled(ladder_sign(sign) * q);
                    Ok(r.coeff_distance(&expected)? / (q.max(1.0) * target.coeff_sup()))
                });
                record_result(&mut report, "ladder_colinearity", p.clone(), LADDER_TOL, colinear);
                let overlap = r.as_ref().map_err(Clone::clone).and_then(|r| inner_product(target, r));
                let magnitude = overlap.clone().and_then(|o| {
                    let q = q.clone()?;
                    Ok((o.abs() - q).abs() / q.max(1.0))
                });
                record_result(&mut report, "ladder_magnitude", p.clone(), LADDER_TOL, magnitude);
                let sign_ok = overlap.map(|o| if o.signum() == ladder_sign(sign) { 0.0 } else { 1.0 });
                record_result(&mut report, "ladder_sign", p, 0.0, sign_ok);
            }
            // K+K- χ̂ = Q-^2 χ̂, K-K+ χ̂ = Q+^2 χ̂
            for (label, outer, inner_op, sign) in
                [("plus_minus", &g.plus, &g.minus, Sign::Minus), ("minus_plus", &g.minus, &g.plus, Sign::Plus)]
            {
                let res = apply_diffop(inner_op, chi, &b)
                    .and_then(|x| apply_diffop(outer, &x, &b))
                    .and_then(|y| eigen_error(&y, chi, q_coeff_squared(m as i64, se, sign)));
                record_result(&mut report, "ladder_product", base(label), LADDER_TOL, res);
            }
        }
    }
    Ok(report)
}

/// Eigenvalue equations of `K3`, the Casimir and the radial operator, and
/// the irrep labels `nu = m + s`, `mu = s - 1` read back from them.
pub fn check_eigen(s: f64, gamma: f64, m_max: u32) -> Result<VerificationReport> {
    check_m_max(m_max)?;
    if !(gamma > 0.0 && s > 0.0) {
        return Err(Error::InvalidArgument(format!("need s > 0 and gamma > 0, got s = {s}, gamma = {gamma}")));
    }
    let mut report = VerificationReport::new();
    let radial_h = build_generator(Generator::RadialH);
    for sector in [Sector::Sigma, Sector::Xi] {
        let g = GeneratorSet::new(sector);
        let casimir = g.casimir();
        let se = sector_s(sector, s);
        let xi = gamma / se;
        let fixed = Binding { s, xi, gamma };
        let c_expected = se * (se - 1.0);
        for m in 0..=m_max {
            let base = |extra: Option<(&str, Value)>| -> Params {
                let mut p = params([("sector", json!(sector.name())), ("s", json!(se)), ("m", json!(m))]);
                if let Some((k, v)) = extra {
                    p.insert(k.into(), v);
                }
                p
            };
            let nu = m as f64 + se;
            let res = basis_state(m, se, xi)
                .and_then(|chi| eigen_error(&apply_diffop(&g.k3, &chi, &fixed)?, &chi, nu));
            record_result(&mut report, "eigen_k3", base(Some(("xi", json!(xi)))), LADDER_TOL, res);

            let res = basis_state(m, se, xi)
                .and_then(|chi| eigen_error(&apply_diffop(&casimir, &chi, &fixed)?, &chi, c_expected));
            record_result(&mut report, "eigen_casimir", base(None), LADDER_TOL, res);

            // physical decay xi = gamma / (m + s)
            let xi_m = gamma / nu;
            let phys = Binding { s, xi: xi_m, gamma };
            let res = basis_state(m, se, xi_m)
                .and_then(|psi| eigen_error(&apply_diffop(&g.k3, &psi, &phys)?, &psi, gamma / xi_m));
            record_result(&mut report, "eigen_physical", base(Some(("xi", json!(xi_m)))), LADDER_TOL, res);

            let res = basis_state(m, se, xi_m)
                .and_then(|psi| eigen_error(&apply_diffop(&radial_h, &psi, &phys)?, &psi, -c_expected));
            record_result(&mut report, "eigen_radial", base(Some(("xi", json!(xi_m)))), LADDER_TOL, res);

            let chi_hat = normalized_basis_state(m, se, xi);
            let res = chi_hat
                .clone()
                .and_then(|c| inner_product(&c, &apply_diffop(&g.k3, &c, &fixed)?))
                .map(|measured| (measured - nu).abs() / nu);
            record_result(&mut report, "irrep_nu", base(None), LADDER_TOL, res);

            let mu = se - 1.0;
            let res = chi_hat
                .and_then(|c| inner_product(&c, &apply_diffop(&casimir, &c, &fixed)?))
                .map(|measured| (measured - mu * (mu + 1.0)).abs() / measured.abs().max(1.0));
            record_result(&mut report, "irrep_mu", base(None), LADDER_TOL, res);
        }
    }
    Ok(report)
}

fn random_state(rng: &mut ChaCha8Rng, s: f64, xi: f64) -> Result<QuasiPolynomial> {
    let degree = rng.gen_range(0..=6usize);
    let mut coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if coeffs[0] == 0.0 {
        coeffs[0] = 1.0;
    }
    QuasiPolynomial::new(s, xi, coeffs)
}

/// `(f, A g)` against `(A† f, g)` for `A = K3, K+, K-` (with `K±† = K∓`) on
/// seeded random quasi-polynomials of degree `<= 6` and base exponent `s`.
pub fn check_hermiticity(s: f64, xi: f64, trials: u32) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut report = VerificationReport::new();
    let g = GeneratorSet::new(Sector::Sigma);
    let b = Binding { s, xi, gamma: s * xi };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let pairs: [(&str, &DiffOp, &DiffOp); 3] =
        [("k3", &g.k3, &g.k3), ("plus", &g.plus, &g.minus), ("minus", &g.minus, &g.plus)];
    for trial in 0..trials {
        let f = random_state(&mut rng, s, xi)?;
        let h = random_state(&mut rng, s, xi)?;
        for (name, op, adjoint) in pairs {
            let res = (|| {
                let lhs = inner_product(&f, &apply_diffop(op, &h, &b)?)?;
                let rhs = inner_product(&apply_diffop(adjoint, &f, &b)?, &h)?;
                Ok((lhs - rhs).abs() / (1.0 + lhs.abs()))
            })();
            let p = params([("s", json!(s)), ("xi", json!(xi)), ("trial", json!(trial)), ("op", json!(name))]);
            record_result(&mut report, "hermiticity", p, HERMITICITY_TOL, res);
        }
    }
    Ok(report)
}

fn qn_params(q: &QuantumNumbers) -> Params {
    params([("k", json!(q.k)), ("n", json!(q.n)), ("gamma", json!(q.gamma))])
}

/// `(B± - K±) ψ = 0` on both components of a physical state, ground-state
/// annihilation for `n = 0`, and the exact symbolic identity
/// `B± - Σ± - Σ3 + gamma/xi = 0`.
pub fn check_b_equivalence(q: &QuantumNumbers) -> Result<VerificationReport> {
    q.require_bound_state()?;
    let p = energy_of(q)?;
    let mut report = VerificationReport::new();
    let b = Binding { s: p.s, xi: p.xi, gamma: q.gamma };
    let b_ops = [(Sign::Plus, build_generator(Generator::BPlus)), (Sign::Minus, build_generator(Generator::BMinus))];
    let mut components = Vec::new();
    if let Some(lower) = physical_component(q, Component::Lower)?.function() {
        components.push(("lower", GeneratorSet::new(Sector::Sigma), normalize(lower)?));
    }
    if let Some(upper) = physical_component(q, Component::Upper)?.function() {
        components.push(("upper", GeneratorSet::new(Sector::Xi), normalize(upper)?));
    }
    for (label, g, psi) in &components {
        for (sign, b_op) in &b_ops {
            let k_op = if *sign == Sign::Plus { &g.plus } else { &g.minus };
            let res = (|| {
                let bp = apply_diffop(b_op, psi, &b)?;
                let kp = apply_diffop(k_op, psi, &b)?;
                Ok(bp.coeff_distance(&kp)? / bp.coeff_sup().max(psi.coeff_sup()))
            })();
            let mut pp = qn_params(q);
            pp.insert("component".into(), json!(label));
            pp.insert("op".into(), json!(sign.name()));
            record_result(&mut report, "b_equivalence", pp, LADDER_TOL, res);
        }
    }
    if q.n == 0 {
        let psi = &components[0].2;
        for (name, op) in [("ground_annihilation_b", &b_ops[1].1), ("ground_annihilation_sigma", &components[0].1.minus)] {
            let res = apply_diffop(op, psi, &b).map(|r| r.coeff_sup() / psi.coeff_sup());
            record_result(&mut report, name, qn_params(q), ANNIHILATION_TOL, res);
        }
        let null = physical_component(q, Component::Upper)?.is_null();
        report.record("ground_upper_null", qn_params(q), if null { 0.0 } else { 1.0 }, 0.0);
    }
    for (raising, label) in [(true, "plus"), (false, "minus")] {
        let residual = b_sigma_residual(raising).term_count() as f64;
        report.record("b_sigma_identity", params([("op", json!(label))]), residual, 0.0);
    }
    Ok(report)
}

fn sup_on(grid: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    grid.iter().fold(0.0, |m, &r| m.max(f(r).abs()))
}

/// `sup |residual| / sum of term sups` over the grid.
fn relative_residual(grid: &[f64], residual: &QuasiPolynomial, terms: &[&dyn Fn(f64) -> f64]) -> f64 {
    let scale: f64 = terms.iter().map(|t| sup_on(grid, t)).sum();
    let r = sup_on(grid, |x| residual.eval(x));
    if scale > 0.0 {
        r / scale
    } else {
        r
    }
}

fn apply_terms(terms: Vec<BoundTerm>, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    apply_bound(&BoundOp::new(terms), f)
}

/// The coupled first-order system on the normalized spinor, then the inverse
/// of `D = [[k+s, -gamma], [-gamma, k+s]]` and the original system
/// `dG/drho + M G / rho = E^{-1} [[0, m+E], [m-E, 0]] G`,
/// `M = [[k, -gamma], [gamma, -k]]`, checked in the form multiplied by `rho`.
pub fn check_dirac_system(q: &QuantumNumbers) -> Result<VerificationReport> {
    q.require_bound_state()?;
    let p = energy_of(q)?;
    let k = q.k as f64;
    let det = 2.0 * p.s * (p.s + k);
    if det.abs() < 1e-12 {
        return Err(Error::SingularTransform(det));
    }
    let mut report = VerificationReport::new();
    let grid = dirac_grid(p.energy);
    let st = SpinorState::normalized(q)?;
    let f2 = st.lower.clone();
    let f1 = match st.upper.function() {
        Some(u) => u.clone(),
        None => QuasiPolynomial::zero(p.s + 1.0, p.xi)?,
    };
    let (kp, km) = coupling_factors(q, &p);
    let abs_k_s = (k / p.s).abs();
    let m_e = q.mass / p.energy;
    let wall = |x: f64| p.s / x + q.gamma / p.s;

    let res = (|| {
        let rhs = apply_bound(&first_order_operator(1.0, p.s, q.gamma), &f1)?;
        let residual = f2.scaled(kp).sub(&rhs)?;
        Ok(relative_residual(
            &grid,
            &residual,
            &[&|x| (abs_k_s + m_e) * f2.eval(x), &|x| rhs.eval(x), &|x| wall(x) * f1.eval(x)],
        ))
    })();
    record_result(&mut report, "dirac_upper_equation", qn_params(q), DIRAC_TOL, res);

    let res = (|| {
        let rhs = apply_bound(&first_order_operator(-1.0, p.s, q.gamma), &f2)?;
        let residual = f1.scaled(km).sub(&rhs)?;
        Ok(relative_residual(
            &grid,
            &residual,
            &[&|x| (abs_k_s + m_e) * f1.eval(x), &|x| rhs.eval(x), &|x| wall(x) * f2.eval(x)],
        ))
    })();
    record_result(&mut report, "dirac_lower_equation", qn_params(q), DIRAC_TOL, res);

    let ks = k + p.s;
    let g = (|| {
        let g1 = f1.combine(ks / det, &f2, q.gamma / det)?;
        let g2 = f1.combine(q.gamma / det, &f2, ks / det)?;
        Ok::<_, Error>((g1, g2))
    })();
    let (g1, g2) = match g {
        Ok(g) => g,
        Err(e) => {
            report.record_failure("dirac_transform", qn_params(q), DIRAC_TOL, &e.to_string());
            return Ok(report);
        }
    };

    let res = (|| {
        let back1 = g1.combine(ks, &g2, -q.gamma)?;
        let back2 = g1.combine(-q.gamma, &g2, ks)?;
        let scale = f1.coeff_sup().max(f2.coeff_sup());
        Ok(back1.coeff_distance(&f1)?.max(back2.coeff_distance(&f2)?) / scale)
    })();
    record_result(&mut report, "dirac_transform_round_trip", qn_params(q), DIRAC_TOL, res);

    let a1 = p.alpha1 / p.energy;
    let a2 = p.alpha2 / p.energy;
    // rho R1 = rho G1' + k G1 - gamma G2 - a1 rho G2
    // rho R2 = rho G2' + gamma G1 - k G2 - a2 rho G1
    for (name, ga, gb, own, cross, a) in
        [("dirac_original_first", &g1, &g2, k, -q.gamma, a1), ("dirac_original_second", &g2, &g1, -k, q.gamma, a2)]
    {
        let res = (|| {
            let deriv = apply_terms(vec![BoundTerm::new(1, 1, 1.0)], ga)?;
            let coupled = apply_terms(vec![BoundTerm::new(0, 0, cross), BoundTerm::new(0, 1, -a)], gb)?;
            let residual = deriv.combine(1.0, &ga.scaled(own), 1.0)?.add(&coupled)?;
            Ok(relative_residual(
                &grid,
                &residual,
                &[
                    &|x| deriv.eval(x),
                    &|x| own * ga.eval(x),
                    &|x| cross * gb.eval(x),
                    &|x| a * x * gb.eval(x),
                ],
            ))
        })();
        record_result(&mut report, name, qn_params(q), DIRAC_TOL, res);
    }
    Ok(report)
}

/// Parameters of a full verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub gamma: f64,
    pub k: i32,
    pub n_max: u32,
    pub mass: f64,
    pub hermiticity_trials: u32,
    /// Negative control: verify a deliberately broken operator algebra.
    pub perturb: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { gamma: 0.5, k: -1, n_max: 5, mass: 1.0, hermiticity_trials: 8, perturb: false }
    }
}

/// Runs every check for one `(gamma, k)`: exact algebra, ladder and
/// eigenvalue checks up to `m = n_max`, hermiticity, and the `B±` and Dirac
/// checks for each admissible `n <= n_max`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let s = s_of(cfg.k, cfg.gamma)?;
    QuantumNumbers::new(cfg.k, 0, cfg.gamma, cfg.mass)?;
    check_m_max(cfg.n_max)?;
    let mut report = if cfg.perturb { verify_algebra_perturbed() } else { verify_algebra() };
    let xi = cfg.gamma / s;
    report.merge(check_ladder(s, xi, cfg.n_max)?);
    report.merge(check_eigen(s, cfg.gamma, cfg.n_max)?);
    report.merge(check_hermiticity(s, xi, cfg.hermiticity_trials)?);
    for n in 0..=cfg.n_max {
        let q = QuantumNumbers::new(cfg.k, n, cfg.gamma, cfg.mass)?;
        if !q.is_bound_state() {
            continue;
        }
        report.merge(check_b_equivalence(&q)?);
        report.merge(check_dirac_system(&q)?);
    }
    Ok(report)
}
