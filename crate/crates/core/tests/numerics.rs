use evscale_core::numerics::{
    bisect, find_root, log_beta, log_binomial_coeff, log_gamma, regularized_incomplete_beta,
    RootBracket,
};
use evscale_testkit::{adaptive_simpson, factorial, pascal_triangle};
use proptest::prelude::*;

#[test]
fn log_gamma_matches_factorials() {
    assert!((log_gamma(5.0).unwrap() - factorial(4).ln()).abs() < 1e-13);
    for n in 1..=30u32 {
        let want = factorial(n - 1).ln();
        let got = log_gamma(f64::from(n)).unwrap();
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "Γ({n})");
    }
}

#[test]
fn log_gamma_relative_accuracy_over_range() {
    // Stirling series with four correction terms is accurate to well below
    // 1e-15 relative once x >= 20.
    let stirling = |x: f64| {
        let x2 = x * x;
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x * x2)
            + 1.0 / (1260.0 * x2 * x2 * x)
            - 1.0 / (1680.0 * x2 * x2 * x2 * x)
    };
    for &x in &[20.5, 77.7, 1e3, 12345.6, 1e5, 999_999.5, 1e6] {
        let got = log_gamma(x).unwrap();
        let want = stirling(x);
        assert!(((got - want) / want).abs() < 1e-12, "x = {x}: {got} vs {want}");
    }
    // half-integers below the Stirling regime: Γ(n + 1/2) = (2n)! √π / (4^n n!)
    for n in 0..=10u32 {
        let want = (factorial(2 * n) * std::f64::consts::PI.sqrt()
            / (4f64.powi(n as i32) * factorial(n)))
        .ln();
        let got = log_gamma(f64::from(n) + 0.5).unwrap();
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "Γ({n}.5)");
    }
}

#[test]
fn log_gamma_recurrence() {
    for &x in &[0.5, 1.0, 2.5, 10.0, 100.0] {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + f64::ln(x);
        assert!((lhs - rhs).abs() < 1e-10, "x = {x}");
    }
}

#[test]
fn log_beta_examples() {
    assert!(log_beta(1.0, 1.0).unwrap().abs() < 1e-14);
    assert!((log_beta(2.0, 2.0).unwrap() - (1.0f64 / 6.0).ln()).abs() < 1e-13);
    let want = (factorial(5) * factorial(5) / factorial(11)).ln();
    assert!((log_beta(6.0, 6.0).unwrap() - want).abs() < 1e-12);
    assert!((want - (14400.0f64 / 39916800.0).ln()).abs() < 1e-14);
}

#[test]
fn binomial_coefficients_match_pascal() {
    let triangle = pascal_triangle(60);
    for (n, row) in triangle.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            let got = log_binomial_coeff(n as f64, k as f64).unwrap().exp();
            let want = c as f64;
            assert!(((got - want) / want).abs() < 1e-10, "C({n},{k})");
        }
    }
    assert!((log_binomial_coeff(4.0, 2.0).unwrap() - 6f64.ln()).abs() < 1e-13);
    assert!((log_binomial_coeff(10.0, 5.0).unwrap() - 252f64.ln()).abs() < 1e-12);
}

#[test]
fn incomplete_beta_matches_quadrature() {
    let shapes = [(1.0, 1.0), (2.0, 3.0), (3.0, 3.0), (7.5, 2.25), (30.0, 12.0), (1.0, 4.5)];
    let xs = [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99];
    for &(a, b) in &shapes {
        let ln_b = log_beta(a, b).unwrap();
        let xlnp = |c: f64, p: f64| if c == 0.0 { 0.0 } else { c * p.ln() };
        let density = |t: f64| (xlnp(a - 1.0, t) + xlnp(b - 1.0, 1.0 - t) - ln_b).exp();
        for &x in &xs {
            let want = adaptive_simpson(&density, 0.0, x, 1e-15);
            let got = regularized_incomplete_beta(x, a, b).unwrap();
            assert!((got - want).abs() < 1e-12, "I_{x}({a},{b}): {got} vs {want}");
        }
    }
    // arcsine law: I_x(1/2, 1/2) = (2/π) asin(√x)
    for &x in &xs {
        let want = 2.0 / std::f64::consts::PI * x.sqrt().asin();
        let got = regularized_incomplete_beta(x, 0.5, 0.5).unwrap();
        assert!((got - want).abs() < 1e-12, "arcsine at {x}");
    }
}

#[test]
fn incomplete_beta_symmetry_grid() {
    for &(a, b) in &[(0.5, 2.0), (1.0, 1.0), (2.0, 5.0), (10.0, 3.0), (50.0, 60.0), (400.0, 600.0)] {
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let s = regularized_incomplete_beta(x, a, b).unwrap()
                + regularized_incomplete_beta(1.0 - x, b, a).unwrap();
            assert!((s - 1.0).abs() < 1e-10, "x={x}, a={a}, b={b}");
        }
    }
}

#[test]
fn sqrt_two_by_bisection() {
    let b = RootBracket::with_tol(1.0, 2.0, 1e-10).unwrap();
    let r = bisect(|x| x * x - 2.0, &b).unwrap();
    assert!((r.x - std::f64::consts::SQRT_2).abs() <= 1e-10);
    assert!(r.width <= 1e-10);
}

proptest! {
    #[test]
    fn incomplete_beta_monotone_in_x(a in 0.2f64..40.0, b in 0.2f64..40.0, x in 0.0f64..1.0, dx in 0.0f64..0.5) {
        let x2 = (x + dx).min(1.0);
        let lo = regularized_incomplete_beta(x, a, b).unwrap();
        let hi = regularized_incomplete_beta(x2, a, b).unwrap();
        prop_assert!(lo <= hi + 1e-15);
        prop_assert!((0.0..=1.0).contains(&lo));
    }

    #[test]
    fn incomplete_beta_reflection(a in 0.2f64..200.0, b in 0.2f64..200.0, x in 0.0f64..=1.0) {
        let s = regularized_incomplete_beta(x, a, b).unwrap()
            + regularized_incomplete_beta(1.0 - x, b, a).unwrap();
        prop_assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn root_stable_under_tighter_settings(c in -0.9f64..0.9, p in 1u32..6, tol_exp in 4i32..12) {
        let tol = 10f64.powi(-tol_exp);
        let f = |x: f64| (x - c).powi(2 * p as i32 - 1);
        let coarse = RootBracket::new(-1.0, 1.0, tol, 200).unwrap();
        let fine = RootBracket::new(-1.0, 1.0, tol / 2.0, 400).unwrap();
        let r1 = find_root(f, &coarse).unwrap();
        let r2 = find_root(f, &fine).unwrap();
        prop_assert!((r1 - r2).abs() <= tol);
    }
}
