//! Special functions and a bracketed root finder.
//!
//! Everything here works in log-space where it matters so that binomial
//! likelihoods with large trial counts never overflow.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

// Lanczos approximation, g = 10.900511 with 11 coefficients (Pugh 2004).
const LANCZOS_G: f64 = 10.900511;

// published digits, kept verbatim
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

/// ln(2 * sqrt(e / pi))
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

const BETA_CF_MAX_ITER: usize = 300;
const BETA_CF_EPS: f64 = 1e-15;
const BETA_CF_FPMIN: f64 = 1e-300;

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return PI.ln() - (PI * x).sin().ln() - ln_gamma_unchecked(1.0 - x);
    }
    let s = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |s, (i, &c)| s + c / (x + i as f64 - 1.0));
    s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_G) / E).ln()
}

/// Natural log of the beta function B(a, b).
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!(
            "log_beta requires a > 0 and b > 0, got a = {a}, b = {b}"
        )));
    }
    Ok(ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b))
}

/// Log of the generalized binomial coefficient Γ(n+1) / (Γ(k+1) Γ(n-k+1)).
///
/// Real-valued `n` and `k` are accepted so that the continuous relaxation of
/// the binomial model can be evaluated.
pub fn log_binomial_coeff(n: f64, k: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::domain(format!("binomial coefficient requires n >= 0, got {n}")));
    }
    if !(k >= 0.0 && k <= n) {
        return Err(Error::domain(format!(
            "binomial coefficient requires 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if k == 0.0 || k == n {
        return Ok(0.0);
    }
    Ok(ln_gamma_unchecked(n + 1.0) - ln_gamma_unchecked(k + 1.0) - ln_gamma_unchecked(n - k + 1.0))
}

fn check_beta_args(x: f64, a: f64, b: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("incomplete beta requires 0 <= x <= 1, got {x}")));
    }
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "incomplete beta requires a > 0 and b > 0, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// Regularized incomplete beta function I_x(a, b).
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    Ok(ln_regularized_incomplete_beta(x, a, b)?.exp())
}

/// Natural log of I_x(a, b).
///
/// The continued fraction is evaluated on whichever side of the mean it
/// converges quickly; the other side goes through I_x(a,b) = 1 - I_{1-x}(b,a).
/// Small tail values therefore keep full relative precision.
pub fn ln_regularized_incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_beta_args(x, a, b)?;
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    let ln_b = log_beta(a, b)?;
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_lower_tail(x, a, b, ln_b)
    } else {
        let upper = ln_lower_tail(1.0 - x, b, a, ln_b)?;
        Ok(ln_one_minus_exp(upper))
    }
}

fn ln_lower_tail(x: f64, a: f64, b: f64, ln_beta_ab: f64) -> Result<f64> {
    let front = a * x.ln() + b * (-x).ln_1p() - ln_beta_ab - a.ln();
    Ok(front + beta_continued_fraction(x, a, b)?.ln())
}

/// ln(1 - e^v) for v <= 0.
fn ln_one_minus_exp(v: f64) -> f64 {
    if v > -std::f64::consts::LN_2 {
        (-v.exp_m1()).ln()
    } else {
        (-v.exp()).ln_1p()
    }
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
fn beta_continued_fraction(x: f64, a: f64, b: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < BETA_CF_FPMIN {
        d = BETA_CF_FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=BETA_CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < BETA_CF_FPMIN {
            d = BETA_CF_FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < BETA_CF_FPMIN {
            c = BETA_CF_FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < BETA_CF_FPMIN {
            d = BETA_CF_FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < BETA_CF_FPMIN {
            c = BETA_CF_FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < BETA_CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence { iterations: BETA_CF_MAX_ITER, last: h })
}

/// Natural log of the Beta(a, b) probability mass on `[lo, hi]`, that is
/// ln(I_hi(a,b) - I_lo(a,b)).
///
/// The difference is taken between lower tails or between upper tails,
/// whichever pair is smaller, to limit cancellation.
pub fn ln_beta_interval_mass(lo: f64, hi: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(Error::domain(format!(
            "interval mass requires 0 <= lo < hi <= 1, got [{lo}, {hi}]"
        )));
    }
    check_beta_args(lo, a, b)?;
    if lo == 0.0 {
        return ln_regularized_incomplete_beta(hi, a, b);
    }
    if hi == 1.0 {
        return ln_regularized_incomplete_beta(1.0 - lo, b, a);
    }
    let ln_hi = ln_regularized_incomplete_beta(hi, a, b)?;
    if ln_hi <= -std::f64::consts::LN_2 {
        let ln_lo = ln_regularized_incomplete_beta(lo, a, b)?;
        Ok(ln_hi + ln_one_minus_exp(ln_lo - ln_hi))
    } else {
        let up_lo = ln_regularized_incomplete_beta(1.0 - lo, b, a)?;
        let up_hi = ln_regularized_incomplete_beta(1.0 - hi, b, a)?;
        Ok(up_lo + ln_one_minus_exp(up_hi - up_lo))
    }
}

/// Search interval and stopping rule for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
}

impl RootBracket {
    pub const DEFAULT_MAX_ITER: usize = 200;

    pub fn new(lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
        }
        if !(tol > 0.0) {
            return Err(Error::domain(format!("bracket tolerance must be positive, got {tol}")));
        }
        if max_iter == 0 {
            return Err(Error::domain("bracket max_iter must be at least 1"));
        }
        Ok(RootBracket { lo, hi, tol, max_iter })
    }

    pub fn with_tol(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        Self::new(lo, hi, tol, Self::DEFAULT_MAX_ITER)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

/// Outcome of a bisection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    /// Width of the final bracket.
    pub width: f64,
    pub iterations: usize,
}

/// Bisection root finder; see [`bisect`] for the diagnostics-returning form.
pub fn find_root<F>(f: F, bracket: &RootBracket) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    bisect(f, bracket).map(|r| r.x)
}

/// Plain bisection on a sign-changing bracket.
///
/// Stops once the bracket is no wider than `tol`, when the midpoint hits an
/// exact zero, or when the bracket can no longer be split in floating point.
pub fn bisect<F>(mut f: F, bracket: &RootBracket) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    if f_lo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, width: 0.0, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, width: 0.0, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    let lo_negative = f_lo < 0.0;

    let mut iterations = 0;
    loop {
        let mid = lo + 0.5 * (hi - lo);
        let f_mid = f(mid);
        let width = hi - lo;
        if width <= bracket.tol || f_mid == 0.0 || mid <= lo || mid >= hi {
            return Ok(Root { x: mid, fx: f_mid, width, iterations });
        }
        if iterations >= bracket.max_iter {
            return Err(Error::NonConvergence { iterations, last: mid });
        }
        iterations += 1;
        if f_mid.is_nan() {
            return Err(Error::domain(format!("function returned NaN at x = {mid}")));
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_small_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-14);
        assert!((log_gamma(0.25).unwrap() - 1.288_022_524_698_077_5).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(-1.5), Err(Error::Domain(_))));
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn log_beta_domain() {
        assert!(log_beta(0.0, 1.0).is_err());
        assert!(log_beta(1.0, -2.0).is_err());
        assert!(log_beta(1.0, 1.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn binomial_coeff_domain() {
        assert!(log_binomial_coeff(3.0, 4.0).is_err());
        assert!(log_binomial_coeff(3.0, -0.1).is_err());
        assert!(log_binomial_coeff(-1.0, 0.0).is_err());
        assert_eq!(log_binomial_coeff(10.0, 0.0).unwrap(), 0.0);
        assert_eq!(log_binomial_coeff(0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn incomplete_beta_endpoints() {
        assert_eq!(regularized_incomplete_beta(0.0, 2.0, 3.0).unwrap(), 0.0);
        assert_eq!(regularized_incomplete_beta(1.0, 2.0, 3.0).unwrap(), 1.0);
        assert!((regularized_incomplete_beta(0.5, 3.0, 3.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn incomplete_beta_domain() {
        assert!(regularized_incomplete_beta(-0.1, 1.0, 1.0).is_err());
        assert!(regularized_incomplete_beta(1.1, 1.0, 1.0).is_err());
        assert!(regularized_incomplete_beta(0.5, 0.0, 1.0).is_err());
        assert!(regularized_incomplete_beta(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn incomplete_beta_uniform_is_identity() {
        for &x in &[0.1, 0.25, 0.5, 0.9] {
            assert!((regularized_incomplete_beta(x, 1.0, 1.0).unwrap() - x).abs() < 1e-14);
        }
    }

    #[test]
    fn incomplete_beta_small_tail_keeps_relative_precision() {
        // I_{1/2}(31, 1) = 2^-31
        let v = ln_regularized_incomplete_beta(0.5, 31.0, 1.0).unwrap();
        assert!((v - (-31.0 * 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn interval_mass_matches_tail_differences() {
        let ln_m = ln_beta_interval_mass(0.2, 0.7, 2.0, 5.0).unwrap();
        let direct = regularized_incomplete_beta(0.7, 2.0, 5.0).unwrap()
            - regularized_incomplete_beta(0.2, 2.0, 5.0).unwrap();
        assert!((ln_m.exp() - direct).abs() < 1e-14);
        assert!(ln_beta_interval_mass(0.5, 0.5, 1.0, 1.0).is_err());
        assert_eq!(ln_beta_interval_mass(0.0, 1.0, 3.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn bracket_validation() {
        assert!(RootBracket::new(1.0, 1.0, 1e-6, 10).is_err());
        assert!(RootBracket::new(0.0, 1.0, 0.0, 10).is_err());
        assert!(RootBracket::new(0.0, 1.0, 1e-6, 0).is_err());
    }

    #[test]
    fn bisection_examples() {
        let b = RootBracket::with_tol(0.0, 1.0, 1e-10).unwrap();
        assert!((find_root(|x| x - 0.5, &b).unwrap() - 0.5).abs() < 1e-10);

        let b = RootBracket::with_tol(1.0, 2.0, 1e-10).unwrap();
        assert!((find_root(|x| x * x - 2.0, &b).unwrap() - 2f64.sqrt()).abs() < 1e-10);

        let b = RootBracket::with_tol(-1.0, 2.0, 1e-10).unwrap();
        assert!(find_root(|x| x, &b).unwrap().abs() < 1e-10);
    }

    #[test]
    fn bisection_errors() {
        let b = RootBracket::with_tol(1.0, 2.0, 1e-10).unwrap();
        assert!(matches!(find_root(|x| x, &b), Err(Error::InvalidBracket { .. })));

        let b = RootBracket::new(0.0, 1.0, 1e-12, 5).unwrap();
        assert!(matches!(
            find_root(|x| x - 0.3, &b),
            Err(Error::NonConvergence { iterations: 5, .. })
        ));
    }

    #[test]
    fn bisection_stops_at_float_resolution() {
        let b = RootBracket::new(1.0, 2.0, 1e-300, 10_000).unwrap();
        let r = bisect(|x| x * x - 2.0, &b).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.iterations < 100);
    }
}
