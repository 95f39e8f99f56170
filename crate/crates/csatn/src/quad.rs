//! Adaptive Simpson quadrature shared by the analytic expressions.
//!
//! Panels are refined until the local Richardson error estimate meets the
//! combined absolute/relative tolerance; callers split integrands at known
//! kinks (distance-law case boundaries) before integrating.

use crate::error::Error;

#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-8, rel_tol: 1e-6, max_depth: 40 }
    }
}

struct Tracker {
    worst_a: f64,
    worst_b: f64,
    worst_err: f64,
    failed: bool,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    spec: &QuadratureSpec,
    tracker: &mut Tracker,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let err = (left + right - whole) / 15.0;
    // a minimum depth guards against accepting a panel off coincidental
    // agreement between the coarse and refined estimates
    if (depth >= 3 && err.abs() <= tol) || (b - a) < 1e-14 * (1.0 + a.abs()) {
        return left + right + err;
    }
    if depth >= spec.max_depth {
        if err.abs() > tracker.worst_err {
            tracker.worst_err = err.abs();
            tracker.worst_a = a;
            tracker.worst_b = b;
        }
        tracker.failed = true;
        return left + right + err;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, spec, tracker)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, spec, tracker)
}

/// Adaptive Simpson integral of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64, Error> {
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let tol = spec.abs_tol.max(spec.rel_tol * whole.abs());
    let mut tracker = Tracker { worst_a: a, worst_b: b, worst_err: 0.0, failed: false };
    let value = refine(f, a, b, fa, fm, fb, whole, tol, 0, spec, &mut tracker);
    if tracker.failed && tracker.worst_err > spec.abs_tol.max(spec.rel_tol * value.abs()) {
        return Err(Error::QuadratureNonConvergent {
            a,
            b,
            worst_a: tracker.worst_a,
            worst_b: tracker.worst_b,
            err: tracker.worst_err,
        });
    }
    Ok(value)
}

/// Integrates over consecutive panels split at the supplied interior points.
pub fn integrate_split<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    splits: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64, Error> {
    let mut edges = vec![a];
    for &s in splits {
        if s > a && s < b {
            edges.push(s);
        }
    }
    edges.push(b);
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += integrate(f, w[0], w[1], spec)?;
    }
    Ok(total)
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Cached for the panel size used by the coverage
/// integrals.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th positive root
        let mut x =
            (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// The cached 64-point rule shared by the coverage integrands.
pub fn gl64() -> &'static (Vec<f64>, Vec<f64>) {
    use std::sync::OnceLock;
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}
