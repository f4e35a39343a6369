use proptest::prelude::*;

use dirac_su11::ladder::{q_coeff_squared, Sign};
use dirac_su11::special::{gamma_fn, gauss_laguerre, kummer_coeffs, kummer_m, kummer_term_scale, KummerParams};
use dirac_su11::spectrum::{energy_of, sector_energy};
use dirac_su11::states::apply_diffop;
use dirac_su11::symbolic::poly::{rational, Monomial};
use dirac_su11::{Binding, DiffOp, QuantumNumbers, QuasiPolynomial, ScalarPoly};

fn poly() -> impl Strategy<Value = ScalarPoly> {
    let term = (-6i64..=6, 1i64..=4, -2i32..=2, -1i32..=1, 0u32..=2, 0u32..=1);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        terms.into_iter().fold(ScalarPoly::zero(), |acc, (num, den, rho, xi, s, g)| {
            &acc + &ScalarPoly::term(rational(num, den), Monomial::new(rho, xi, s, g))
        })
    })
}

fn op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0u32..=2, poly()), 1..3).prop_map(DiffOp::from_terms)
}

fn quasi() -> impl Strategy<Value = QuasiPolynomial> {
    prop::collection::vec(-2.0f64..2.0, 1..5)
        .prop_map(|mut c| {
            c[0] = if c[0].abs() < 0.1 { 1.0 } else { c[0] };
            QuasiPolynomial::new(12.3, XI, c).unwrap()
        })
}

const BINDING: Binding = Binding { s: 0.8660254037844386, xi: XI, gamma: 0.5 };
const XI: f64 = 0.5773502691896258;

/// Coefficient distance scaled by the size of the pieces being compared.
fn scaled_distance(a: &QuasiPolynomial, b: &QuasiPolynomial, scale: f64) -> f64 {
    let d = a.coeff_distance(b).unwrap();
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws_are_exact(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn leibniz_rule_holds_exactly(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).d_drho(), &(&a.d_drho() * &b) + &(&a * &b.d_drho()));
    }

    #[test]
    fn commutator_is_antisymmetric(a in op(), b in op()) {
        prop_assert_eq!(a.commutator(&b), -b.commutator(&a));
    }

    #[test]
    fn jacobi_identity(a in op(), b in op(), c in op()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn composition_is_associative(a in op(), b in op(), c in op()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn apply_is_linear(a in op(), f in quasi(), g in quasi(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let lhs = apply_diffop(&a, &f.combine(alpha, &g, beta).unwrap(), &BINDING).unwrap();
        let af = apply_diffop(&a, &f, &BINDING).unwrap();
        let ag = apply_diffop(&a, &g, &BINDING).unwrap();
        let rhs = af.combine(alpha, &ag, beta).unwrap();
        let scale = alpha.abs() * af.coeff_sup() + beta.abs() * ag.coeff_sup();
        prop_assert!(scaled_distance(&lhs, &rhs, scale) <= 1e-10);
    }

    #[test]
    fn apply_respects_composition(a in op(), b in op(), f in quasi()) {
        let direct = apply_diffop(&a.compose(&b), &f, &BINDING).unwrap();
        let staged = apply_diffop(&a, &apply_diffop(&b, &f, &BINDING).unwrap(), &BINDING).unwrap();
        let scale = direct.coeff_sup().max(staged.coeff_sup());
        prop_assert!(scaled_distance(&direct, &staged, scale) <= 1e-10);
    }

    #[test]
    fn ladder_coefficients_pair_up(m in 0i64..30, s in 0.05f64..4.0) {
        // raising from m and lowering from m + 1 carry the same weight
        let up = q_coeff_squared(m, s, Sign::Plus);
        let down = q_coeff_squared(m + 1, s, Sign::Minus);
        prop_assert!((up - down).abs() <= 1e-12 * up.abs().max(1.0));
        prop_assert!(up > 0.0);
    }

    #[test]
    fn energy_degenerate_in_sign_of_k(abs_k in 1i32..5, n in 1u32..12, frac in 0.01f64..0.99) {
        let gamma = frac * abs_k as f64;
        let neg = energy_of(&QuantumNumbers::new(-abs_k, n, gamma, 1.0).unwrap()).unwrap().energy;
        let pos = energy_of(&QuantumNumbers::new(abs_k, n, gamma, 1.0).unwrap()).unwrap().energy;
        prop_assert!((neg - pos).abs() <= 1e-14);
    }

    #[test]
    fn energy_increases_with_n(k in prop::sample::select(vec![-3i32, -2, -1, 1, 2, 3]), n in 1u32..20, frac in 0.01f64..0.99) {
        let gamma = frac * k.unsigned_abs().min(1) as f64;
        let e = |n| energy_of(&QuantumNumbers::new(k, n, gamma, 1.0).unwrap()).unwrap().energy;
        let (lo, hi) = (e(n), e(n + 1));
        prop_assert!(hi > lo && hi < 1.0 && lo > 0.0);
    }

    #[test]
    fn quasi_eval_matches_direct_sum(f in quasi(), rho in 0.1f64..20.0) {
        let direct: f64 = f.coeffs().iter().enumerate()
            .map(|(j, c)| c * rho.powf(f.base_exponent() + j as f64))
            .sum::<f64>() * (-f.decay() * rho).exp();
        let scale: f64 = f.coeffs().iter().enumerate()
            .map(|(j, c)| (c * rho.powf(f.base_exponent() + j as f64)).abs())
            .sum::<f64>() * (-f.decay() * rho).exp();
        prop_assert!((f.eval(rho) - direct).abs() <= 1e-12 * scale);
    }

    #[test]
    fn relabeling_n_and_s_preserves_energy(n in 1i64..15, s in 0.05f64..4.0, gamma in 0.01f64..0.99) {
        let a = sector_energy(n, s, gamma, 1.0);
        let b = sector_energy(n - 1, s + 1.0, gamma, 1.0);
        prop_assert!((a - b).abs() <= 1e-14);
    }

    #[test]
    fn kummer_matches_its_coefficient_list(n in 0u32..=20, b in 0.1f64..8.0, z in 0.0f64..50.0) {
        let m = kummer_m(KummerParams::new(-(n as f64), b, z)).unwrap();
        let sum = kummer_coeffs(n, b).iter().rev().fold(0.0, |acc, c| acc * z + c);
        prop_assert!((m - sum).abs() <= 1e-14 * kummer_term_scale(n, b, z));
    }

    #[test]
    fn gamma_recurrence(x in 0.5f64..30.0) {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs);
    }

    #[test]
    fn laguerre_rule_integrates_monomials(count in 1usize..25, alpha in -0.9f64..4.0) {
        let rule = gauss_laguerre(count, alpha).unwrap();
        prop_assert!(rule.nodes.windows(2).all(|w| w[1] > w[0]));
        for j in 0..2 * count as i32 {
            let exact = gamma_fn(alpha + 1.0 + j as f64).unwrap();
            let quad = rule.integrate(|x| x.powi(j));
            prop_assert!((quad - exact).abs() <= 1e-12 * exact, "count {} j {}: {} vs {}", count, j, quad, exact);
        }
    }
}
