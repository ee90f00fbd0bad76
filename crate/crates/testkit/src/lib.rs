//! Independent reference computations for tests.
//!
//! Nothing here calls into `evscale-core`: the oracles use brute-force
//! enumeration, exact integer arithmetic and adaptive quadrature so they can
//! check the closed forms the library uses.

/// n! as f64 (exact for n <= 22, correctly rounded beyond to n = 170).
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * f64::from(i))
}

/// Pascal's triangle rows 0..=max_n as exact integers.
pub fn pascal_triangle(max_n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Number of length-n coin sequences with each head count, by enumerating
/// all 2^n sequences.
pub fn head_count_histogram(n: u32) -> Vec<u64> {
    assert!(n < 40, "enumeration of 2^{n} sequences is too large");
    let mut counts = vec![0u64; n as usize + 1];
    for seq in 0u64..(1u64 << n) {
        counts[seq.count_ones() as usize] += 1;
    }
    counts
}

/// Two-sided fair-coin p-value by full enumeration of outcomes:
/// the fraction of all sequences whose head count is at least as far from
/// n/2 as `k`.
pub fn enumerated_p_value(n: u32, k: u32, histogram: &[u64]) -> f64 {
    let observed = (2 * i64::from(k) - i64::from(n)).abs();
    let extreme: u64 = histogram
        .iter()
        .enumerate()
        .filter(|(heads, _)| (2 * *heads as i64 - i64::from(n)).abs() >= observed)
        .map(|(_, c)| *c)
        .sum();
    extreme as f64 / (1u64 << n) as f64
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let settled = delta.abs() <= 15.0 * tol || delta.abs() <= 8.0 * f64::EPSILON * (left + right).abs();
    if depth == 0 || (settled && depth < 46) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

fn xlnp(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * p.ln()
    }
}

/// ln ∫_lo^hi θ^k (1-θ)^(n-k) π(θ) dθ for a Beta(a, b) prior truncated to
/// `[lo, hi]`, by quadrature of both the numerator and the prior mass.
///
/// The integrand is divided by its maximum over the support before
/// integrating so large n does not underflow.
pub fn quadrature_log_marginal(n: f64, k: f64, a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    let log_integrand = |t: f64| {
        xlnp(k + a - 1.0, t) + xlnp(n - k + b - 1.0, 1.0 - t)
    };
    let log_prior = |t: f64| xlnp(a - 1.0, t) + xlnp(b - 1.0, 1.0 - t);
    log_integral(&log_integrand, k + a, n - k + b, lo, hi)
        - log_integral(&log_prior, a, b, lo, hi)
}

// ln ∫ exp(g) over [lo, hi], g the log of a Beta(alpha, beta) kernel.
fn log_integral<G: Fn(f64) -> f64>(g: &G, alpha: f64, beta: f64, lo: f64, hi: f64) -> f64 {
    let mode = if alpha >= 1.0 && beta >= 1.0 && alpha + beta > 2.0 {
        ((alpha - 1.0) / (alpha + beta - 2.0)).clamp(lo, hi)
    } else {
        0.5 * (lo + hi)
    };
    let peak = g(mode).max(g(lo)).max(g(hi));
    let peak = if peak.is_finite() { peak } else { 0.0 };
    let scaled = |t: f64| {
        let v = (g(t) - peak).exp();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    // split at the mode so the peak is always a node
    let mut total = 0.0;
    if mode > lo {
        total += adaptive_simpson(&scaled, lo, mode, 1e-15);
    }
    if mode < hi {
        total += adaptive_simpson(&scaled, mode, hi, 1e-15);
    }
    total.ln() + peak
}

/// Log Bayes factor of a truncated-Beta composite against a point θ0, by
/// quadrature.
pub fn quadrature_log_bf(n: f64, k: f64, a: f64, b: f64, lo: f64, hi: f64, theta0: f64) -> f64 {
    if n == 0.0 {
        return 0.0;
    }
    quadrature_log_marginal(n, k, a, b, lo, hi) - (xlnp(k, theta0) + xlnp(n - k, 1.0 - theta0))
}

/// Plain bisection, kept separate from the library's root finder.
pub fn reference_bisection<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    assert!(f_lo * f(hi) < 0.0, "oracle bracket must change sign");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
