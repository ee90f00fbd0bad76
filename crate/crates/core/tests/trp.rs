use evscale_core::trp::{
    against_both, geometric_grid, log_slr_at, trp_composite, trp_curve, trp_simple,
    trp_two_sided, zero_path, ZeroPathConfig, DEFAULT_TOL, MAX_RESIDUAL,
};
use evscale_core::{
    BinomialOutcome, CompositeHypothesis, Error, PointHypothesis, TrpSide, ZeroPathKind,
};
use evscale_testkit::{quadrature_log_bf, reference_bisection};
use proptest::prelude::*;

// trp_y for uniform[0, 1/2] vs θ = 1/2, from an mpmath root solve at 40 digits
#[allow(clippy::excessive_precision)]
const ONE_SIDED_TRP: [(f64, f64); 7] = [
    (10.0, 0.33803993063820209),
    (20.0, 0.36179805104671132),
    (40.0, 0.38594226035533881),
    (80.0, 0.40836845821129037),
    (100.0, 0.41500598982053685),
    (160.0, 0.42791207883334173),
    (1000.0, 0.46430584723848134),
];

fn one_sided() -> (CompositeHypothesis, PointHypothesis) {
    (CompositeHypothesis::uniform(0.0, 0.5).unwrap(), PointHypothesis::new(0.5).unwrap())
}

#[test]
fn symmetric_points_transition_at_one_half() {
    assert_eq!(trp_simple(0.25, 0.75).unwrap(), 0.5);
    for n in [1.0, 10.0, 100.0, 1000.0] {
        assert!(log_slr_at(n, 0.5, 0.25, 0.75).unwrap().abs() < 1e-12, "n={n}");
    }
}

#[test]
fn simple_trp_matches_reference_bisection() {
    for &(t1, t2) in &[(0.1f64, 0.5f64), (0.2, 0.9), (0.6, 0.95), (0.01, 0.02)] {
        let lo = t1.min(t2);
        let hi = t1.max(t2);
        let want = reference_bisection(|y| log_slr_at(50.0, y, t1, t2).unwrap(), lo, hi, 1e-15);
        let got = trp_simple(t1, t2).unwrap();
        assert!((got - want).abs() < 1e-12, "({t1},{t2}): {got} vs {want}");
        assert!(lo < got && got < hi);
    }
}

#[test]
fn simple_trp_symmetries() {
    assert!((trp_simple(0.3, 0.7).unwrap() - trp_simple(0.7, 0.3).unwrap()).abs() < 1e-15);
    let a = trp_simple(0.1, 0.5).unwrap();
    let b = trp_simple(0.9, 0.5).unwrap();
    assert!((a + b - 1.0).abs() < 1e-14);
    assert!(matches!(trp_simple(0.4, 0.4), Err(Error::DegenerateHypotheses(_))));
}

#[test]
fn composite_trp_matches_quadrature_oracle() {
    let (h1, h0) = one_sided();
    for &(n, frozen) in &ONE_SIDED_TRP {
        let r = trp_composite(n, &h1, &h0, DEFAULT_TOL).unwrap();
        assert!((r.trp_y - frozen).abs() < 1e-10, "n={n}: {} vs frozen {frozen}", r.trp_y);
        assert!(r.residual < MAX_RESIDUAL);
        assert_eq!(r.side, TrpSide::Below);
        if n <= 160.0 {
            let oracle = reference_bisection(
                |y| quadrature_log_bf(n, n * y, 1.0, 1.0, 0.0, 0.5, 0.5),
                0.0 + 1e-6,
                0.5 - 1e-6,
                1e-14,
            );
            assert!((r.trp_y - oracle).abs() < 1e-9, "n={n}: {} vs quadrature {oracle}", r.trp_y);
        }
    }
}

#[test]
fn trp_drifts_toward_null() {
    let (h1, h0) = one_sided();
    let ns = [10.0, 20.0, 40.0, 80.0, 160.0];
    let curve = trp_curve(&ns, &h1, &h0, DEFAULT_TOL).unwrap();
    let ys: Vec<f64> = curve.iter().map(|e| e.result.as_ref().unwrap().trp_y).collect();
    assert!(ys.windows(2).all(|w| w[0] < w[1]), "{ys:?}");
    assert!(ys.iter().all(|&y| y < 0.5));
    assert_eq!(curve.iter().map(|e| e.n).collect::<Vec<_>>(), ns);
}

#[test]
fn trp_curve_rejects_unsorted_n() {
    let (h1, h0) = one_sided();
    assert!(matches!(
        trp_curve(&[10.0, 5.0], &h1, &h0, DEFAULT_TOL),
        Err(Error::InvalidSequence(_))
    ));
}

#[test]
fn two_sided_pair_is_mirror_image() {
    let h1 = CompositeHypothesis::uniform(0.0, 1.0).unwrap();
    let h0 = PointHypothesis::new(0.5).unwrap();
    let (below, above) = trp_two_sided(100.0, &h1, &h0, DEFAULT_TOL).unwrap();
    assert_eq!(below.side, TrpSide::Below);
    assert_eq!(above.side, TrpSide::Above);
    assert!((below.trp_y + above.trp_y - 1.0).abs() < 1e-10);
    let oracle = reference_bisection(
        |y| quadrature_log_bf(100.0, 100.0 * y, 1.0, 1.0, 0.0, 1.0, 0.5),
        1e-6,
        0.5 - 1e-6,
        1e-14,
    );
    assert!((below.trp_y - oracle).abs() < 1e-9);
    // a straddling support has no single TrP
    assert!(matches!(
        trp_composite(100.0, &h1, &h0, DEFAULT_TOL),
        Err(Error::UnsupportedHypothesis(_))
    ));
}

#[test]
fn shrink_n_path_reaches_zero_from_above() {
    let cfg = ZeroPathConfig::shrink_n_default();
    let report = zero_path(ZeroPathKind::ShrinkN, &cfg).unwrap();
    let abs: Vec<f64> = report.trace.iter().map(|r| r.log_bf.abs()).collect();
    assert!(abs.windows(2).all(|w| w[0] > w[1]), "{abs:?}");
    assert!(report.endpoint_summary.final_log_bf.abs() < 0.05);
    let ab: Vec<f64> = report.trace.iter().map(|r| r.against_both).collect();
    assert!(ab.windows(2).all(|w| w[0] > w[1]));
    assert!(report.endpoint_summary.final_against_both < 0.05 * ab[0]);
    // the trace records the configured proportion and n sequence
    assert!(report.trace.iter().all(|r| r.y == 0.9));
    assert_eq!(report.trace.len(), 12);
}

#[test]
fn ride_trp_path_holds_log_bf_at_zero() {
    let cfg = ZeroPathConfig::ride_trp_default();
    let report = zero_path(ZeroPathKind::RideTrP, &cfg).unwrap();
    assert!(report.trace.iter().all(|r| r.log_bf.abs() < 1e-8));
    let ab: Vec<f64> = report.trace.iter().map(|r| r.against_both).collect();
    assert!(ab.windows(2).all(|w| w[0] < w[1]));
    assert!(ab[2] >= 10.0 * ab[0], "{ab:?}");
    for (row, &(_, y)) in report.trace.iter().zip([ONE_SIDED_TRP[0], ONE_SIDED_TRP[4], ONE_SIDED_TRP[6]].iter()) {
        assert!((row.y - y).abs() < 1e-10);
    }
}

#[test]
fn zero_path_validates_sequences() {
    let mut cfg = ZeroPathConfig::shrink_n_default();
    cfg.n_values = vec![1.0, 2.0];
    assert!(matches!(zero_path(ZeroPathKind::ShrinkN, &cfg), Err(Error::InvalidSequence(_))));
    let mut cfg = ZeroPathConfig::ride_trp_default();
    cfg.n_values = vec![100.0, 10.0];
    assert!(matches!(zero_path(ZeroPathKind::RideTrP, &cfg), Err(Error::InvalidSequence(_))));
    cfg.n_values = vec![];
    assert!(zero_path(ZeroPathKind::RideTrP, &cfg).is_err());
}

#[test]
fn shrink_n_to_zero_trials() {
    let mut cfg = ZeroPathConfig::shrink_n_default();
    cfg.n_values = vec![4.0, 1.0, 0.0];
    let report = zero_path(ZeroPathKind::ShrinkN, &cfg).unwrap();
    assert_eq!(report.endpoint_summary.final_log_bf, 0.0);
    assert_eq!(report.endpoint_summary.final_against_both, 0.0);
}

#[test]
fn geometric_grid_endpoints() {
    let g = geometric_grid(8.0, 0.1, 12).unwrap();
    assert_eq!(g[0], 8.0);
    assert_eq!(g[11], 0.1);
    let r = g[1] / g[0];
    assert!(g.windows(2).all(|w| (w[1] / w[0] - r).abs() < 1e-12));
}

proptest! {
    #[test]
    fn against_both_linear_in_n(n in 1.0f64..500.0, y in 0.0f64..=1.0, t1 in 0.05f64..0.45, t2 in 0.55f64..0.95, c in 1.0f64..20.0) {
        let d1 = BinomialOutcome::from_proportion(n, y).unwrap();
        let d2 = BinomialOutcome::from_proportion(c * n, y).unwrap();
        let a = against_both(&d1, t1, t2).unwrap();
        let b = against_both(&d2, t1, t2).unwrap();
        prop_assert!((b - c * a).abs() <= 1e-9 * (1.0 + b.abs()));
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn simple_trp_zeroes_slr_for_any_n(t1 in 0.01f64..0.99, t2 in 0.01f64..0.99, n in 0.5f64..1e4) {
        prop_assume!((t1 - t2).abs() > 1e-3);
        let y = trp_simple(t1, t2).unwrap();
        prop_assert!(log_slr_at(n, y, t1, t2).unwrap().abs() <= 1e-10 * n.max(1.0));
    }

    #[test]
    fn composite_trp_residual_small(n in 2.0f64..2000.0) {
        let (h1, h0) = one_sided();
        let r = trp_composite(n, &h1, &h0, DEFAULT_TOL).unwrap();
        prop_assert!(r.residual < MAX_RESIDUAL);
        prop_assert!(r.trp_y > 0.0 && r.trp_y < 0.5);
    }
}
