//! Exact operator algebra in the scaled radius `rho`.
//!
//! Operators are [`DiffOp`]s whose coefficients are [`ScalarPoly`]s in the
//! formal indeterminates `rho`, `xi`, `s` and `gamma`. The relations
//! `s^2 = k^2 - gamma^2` and `xi = xi(E)` are never used here; they enter only
//! when an operator is bound to numbers with a [`Binding`].

mod op;
pub mod poly;

pub use op::{BoundOp, BoundTerm, DiffOp};
pub use poly::{Monomial, ScalarPoly};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::{params, VerificationReport};
use poly::rational;

/// Numeric values substituted for the formal indeterminates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Binding {
    pub s: f64,
    pub xi: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Sigma3,
    SigmaPlus,
    SigmaMinus,
    Xi3,
    XiPlus,
    XiMinus,
    BPlus,
    BMinus,
    /// `-rho^2 D^2 + xi^2 rho^2 - 2 gamma rho`; radial states satisfy
    /// `RadialH f = -s(s-1) f` (lower component) or `-s(s+1) f` (upper).
    RadialH,
}

/// Which su(1,1) realization: `Σ` acts on the lower spinor component with
/// parameter `s`, `Ξ` on the upper one with `s + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    Sigma,
    Xi,
}

impl Sector {
    pub fn s_shift(self) -> i64 {
        match self {
            Sector::Sigma => 0,
            Sector::Xi => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Sigma => "Sigma",
            Sector::Xi => "Xi",
        }
    }
}

fn rho(e: i32) -> ScalarPoly {
    ScalarPoly::rho_pow(e)
}

fn xi(e: i32) -> ScalarPoly {
    ScalarPoly::xi_pow(e)
}

/// `rho d/drho`
fn euler() -> DiffOp {
    DiffOp::from_terms([(1, rho(1))])
}

/// `(1/2xi)(-rho D^2 + xi^2 rho + centrifugal / rho)`.
fn sigma3_with(centrifugal: ScalarPoly) -> DiffOp {
    let half_inv_xi = xi(-1).scale(&rational(1, 2));
    DiffOp::from_terms([
        (2, -rho(1)),
        (0, &xi(2) * &rho(1) + &centrifugal * &rho(-1)),
    ])
    .scale(&half_inv_xi)
}

fn s_times_s_minus_one() -> ScalarPoly {
    &ScalarPoly::s() * &(ScalarPoly::s() - ScalarPoly::one())
}

/// `∓ rho D + xi rho - Σ3`
fn ladder_from(sigma3: &DiffOp, raising: bool) -> DiffOp {
    let e = if raising { -euler() } else { euler() };
    &(&e + &DiffOp::multiplication(&xi(1) * &rho(1))) - sigma3
}

/// `∓ rho D + xi rho - gamma/xi`
fn b_operator(raising: bool) -> DiffOp {
    let e = if raising { -euler() } else { euler() };
    &e + &DiffOp::multiplication(&xi(1) * &rho(1) - &ScalarPoly::gamma() * &xi(-1))
}

pub fn build_generator(which: Generator) -> DiffOp {
    let sigma3 = sigma3_with(s_times_s_minus_one());
    match which {
        Generator::Sigma3 => sigma3,
        Generator::SigmaPlus => ladder_from(&sigma3, true),
        Generator::SigmaMinus => ladder_from(&sigma3, false),
        Generator::Xi3 => sigma3.shift_s(1),
        Generator::XiPlus => ladder_from(&sigma3, true).shift_s(1),
        Generator::XiMinus => ladder_from(&sigma3, false).shift_s(1),
        Generator::BPlus => b_operator(true),
        Generator::BMinus => b_operator(false),
        Generator::RadialH => DiffOp::from_terms([
            (2, -rho(2)),
            (0, &xi(2) * &rho(2) - &ScalarPoly::gamma() * &rho(1).scale(&rational(2, 1))),
        ]),
    }
}

/// The `(3, +, -)` generators of one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub sector: Sector,
    pub k3: DiffOp,
    pub plus: DiffOp,
    pub minus: DiffOp,
}

impl GeneratorSet {
    pub fn new(sector: Sector) -> Self {
        let (k3, plus, minus) = match sector {
            Sector::Sigma => (Generator::Sigma3, Generator::SigmaPlus, Generator::SigmaMinus),
            Sector::Xi => (Generator::Xi3, Generator::XiPlus, Generator::XiMinus),
        };
        GeneratorSet {
            sector,
            k3: build_generator(k3),
            plus: build_generator(plus),
            minus: build_generator(minus),
        }
    }

    /// Negative control: `K3` rebuilt with centrifugal constant `s^2` while
    /// `K±` keep `s(s-1)`.
    pub fn perturbed(sector: Sector) -> Self {
        let mut g = GeneratorSet::new(sector);
        g.k3 = sigma3_with(&ScalarPoly::s() * &ScalarPoly::s()).shift_s(sector.s_shift());
        g
    }

    /// Quadratic Casimir `-K+ K- + K3^2 - K3`.
    pub fn casimir(&self) -> DiffOp {
        let pm = self.plus.compose(&self.minus);
        let k3k3 = self.k3.compose(&self.k3);
        &(&k3k3 - &pm) - &self.k3
    }
}

pub fn casimir(sector: Sector) -> DiffOp {
    GeneratorSet::new(sector).casimir()
}

/// `C - s(s-1)` for `Σ`, `C - (s+1)s` for `Ξ`.
pub fn casimir_residual(sector: Sector) -> DiffOp {
    let value = s_times_s_minus_one().shift_s(sector.s_shift());
    &casimir(sector) - &DiffOp::multiplication(value)
}

fn record_exact(report: &mut VerificationReport, name: &str, sector: &str, residual: &DiffOp) {
    report.record(
        name,
        params([("sector", json!(sector))]),
        residual.term_count() as f64,
        0.0,
    );
}

fn su11_relations(report: &mut VerificationReport, g: &GeneratorSet) {
    let sector = g.sector.name();
    // [K±, K3] = ∓K±
    let plus = &g.plus.commutator(&g.k3) + &g.plus;
    record_exact(report, "commutator_plus_3", sector, &plus);
    let minus = &g.minus.commutator(&g.k3) - &g.minus;
    record_exact(report, "commutator_minus_3", sector, &minus);
    // [K+, K-] = -2 K3
    let pm = &g.plus.commutator(&g.minus) + &g.k3.scale(&ScalarPoly::integer(2));
    record_exact(report, "commutator_plus_minus", sector, &pm);
}

/// Residual `(B∓ ∓ 1) B± - RadialH - (gamma^2/xi^2 ± gamma/xi)`; exactly
/// zero when the factorization holds.
pub fn factorization_residual(raising: bool) -> DiffOp {
    let (first, second, shift) = if raising {
        (Generator::BMinus, Generator::BPlus, -1)
    } else {
        (Generator::BPlus, Generator::BMinus, 1)
    };
    let outer = &build_generator(first) + &DiffOp::multiplication(ScalarPoly::integer(shift));
    let product = outer.compose(&build_generator(second));
    let g_over_xi = &ScalarPoly::gamma() * &xi(-1);
    let linear = if raising { g_over_xi.clone() } else { -&g_over_xi };
    let constant = &(&g_over_xi * &g_over_xi) + &linear;
    &(&product - &build_generator(Generator::RadialH)) - &DiffOp::multiplication(constant)
}

/// `(gamma/xi ± 1/2)^2 - (s - 1/2)^2 - (gamma^2/xi^2 ± gamma/xi - s(s-1))`,
/// i.e. the on-shell constant of the factorization agrees with the
/// off-shell one because `(s - 1/2)^2 - s(s-1) = 1/4`.
pub fn factorization_constant_residual(raising: bool) -> ScalarPoly {
    let half = ScalarPoly::constant(rational(1, 2));
    let g_over_xi = &ScalarPoly::gamma() * &xi(-1);
    let shifted = if raising { &g_over_xi + &half } else { &g_over_xi - &half };
    let s_half = &ScalarPoly::s() - &half;
    let printed = &(&shifted * &shifted) - &(&s_half * &s_half);
    let linear = if raising { g_over_xi.clone() } else { -&g_over_xi };
    let off_shell = &(&(&g_over_xi * &g_over_xi) + &linear) - &s_times_s_minus_one();
    &printed - &off_shell
}

/// Checks the su(1,1) relations and Casimir value of both sectors and the
/// factorization identities as exact polynomial identities. Each entry's
/// measured error is the number of monomials left in the residual.
pub fn verify_algebra() -> VerificationReport {
    verify_with(&GeneratorSet::new(Sector::Sigma), &GeneratorSet::new(Sector::Xi))
}

/// Same as [`verify_algebra`] with a deliberately wrong `Σ3`/`Ξ3`.
pub fn verify_algebra_perturbed() -> VerificationReport {
    verify_with(&GeneratorSet::perturbed(Sector::Sigma), &GeneratorSet::perturbed(Sector::Xi))
}

fn verify_with(sigma: &GeneratorSet, xi_set: &GeneratorSet) -> VerificationReport {
    let mut report = VerificationReport::new();
    su11_relations(&mut report, sigma);
    su11_relations(&mut report, xi_set);
    for g in [sigma, xi_set] {
        let value = s_times_s_minus_one().shift_s(g.sector.s_shift());
        let residual = &g.casimir() - &DiffOp::multiplication(value);
        record_exact(&mut report, "casimir", g.sector.name(), &residual);
    }
    for (raising, label) in [(true, "(B- - 1)B+"), (false, "(B+ + 1)B-")] {
        report.record(
            "factorization",
            params([("product", json!(label))]),
            factorization_residual(raising).term_count() as f64,
            0.0,
        );
        report.record(
            "factorization_constant",
            params([("product", json!(label))]),
            factorization_constant_residual(raising).len() as f64,
            0.0,
        );
    }
    report
}

/// `B± - Σ± - Σ3 + gamma/xi`, identically zero.
pub fn b_sigma_residual(raising: bool) -> DiffOp {
    let (b, sig) = if raising {
        (Generator::BPlus, Generator::SigmaPlus)
    } else {
        (Generator::BMinus, Generator::SigmaMinus)
    };
    let diff = &(&build_generator(b) - &build_generator(sig)) - &build_generator(Generator::Sigma3);
    &diff + &DiffOp::multiplication(&ScalarPoly::gamma() * &xi(-1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma3_matches_closed_form() {
        let expected = DiffOp::from_terms([
            (2, rho(1).scale(&rational(-1, 2)) * xi(-1)),
            (
                0,
                (xi(1) * rho(1)).scale(&rational(1, 2))
                    + (s_times_s_minus_one() * xi(-1) * rho(-1)).scale(&rational(1, 2)),
            ),
        ]);
        assert_eq!(build_generator(Generator::Sigma3), expected);
    }

    #[test]
    fn b_plus_closed_form() {
        let expected = DiffOp::from_terms([
            (1, -rho(1)),
            (0, xi(1) * rho(1) - ScalarPoly::gamma() * xi(-1)),
        ]);
        assert_eq!(build_generator(Generator::BPlus), expected);
    }

    #[test]
    fn sigma_plus_plus_sigma3_is_first_order() {
        let sum = &build_generator(Generator::SigmaPlus) + &build_generator(Generator::Sigma3);
        let expected = DiffOp::from_terms([(1, -rho(1)), (0, xi(1) * rho(1))]);
        assert_eq!(sum, expected);
    }

    #[test]
    fn xi_generators_are_shifted_sigma() {
        let xi3 = build_generator(Generator::Xi3);
        let centrifugal = xi3.coeff(0).unwrap();
        // (1/2xi) s(s+1)/rho appears with s -> s+1
        let expected = (&ScalarPoly::s() * &(ScalarPoly::s() + ScalarPoly::one()))
            * xi(-1)
            * rho(-1);
        let expected = expected.scale(&rational(1, 2)) + (xi(1) * rho(1)).scale(&rational(1, 2));
        assert_eq!(centrifugal, &expected);
    }

    #[test]
    fn factorization_oracle_by_hand() {
        // Hand expansion of (rho D + xi rho - c - 1)(-rho D + xi rho - c), c = gamma/xi:
        // -rho^2 D^2 + xi^2 rho^2 - 2 gamma rho + c^2 + c
        let c = ScalarPoly::gamma() * xi(-1);
        let hand = DiffOp::from_terms([
            (2, -rho(2)),
            (
                0,
                xi(2) * rho(2) - (ScalarPoly::gamma() * rho(1)).scale(&rational(2, 1)) + &c * &c + c.clone(),
            ),
        ]);
        let outer = &build_generator(Generator::BMinus) - &DiffOp::identity();
        let product = outer.compose(&build_generator(Generator::BPlus));
        assert!((&product - &hand).is_zero());
    }

    #[test]
    fn algebra_holds() {
        let report = verify_algebra();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.len(), 12);
    }

    #[test]
    fn perturbed_k3_breaks_commutators() {
        let report = verify_algebra_perturbed();
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|e| e.check_name.starts_with("commutator")));
    }

    #[test]
    fn b_minus_sigma_identity() {
        assert!(b_sigma_residual(true).is_zero());
        assert!(b_sigma_residual(false).is_zero());
    }

    #[test]
    fn casimir_is_a_multiple_of_identity() {
        assert!(casimir_residual(Sector::Sigma).is_zero());
        assert!(casimir_residual(Sector::Xi).is_zero());
        assert_eq!(casimir(Sector::Sigma).order(), Some(0));
    }
}
