//! Closed-form and semi-closed-form performance expressions: interference
//! Laplace transforms, per-link coverage probabilities, and ergodic rates.
//!
//! The terrestrial-aerial coverage is a double integral over the aerial
//! node's projection distance and the target user's distance, with the
//! interference Laplace transform inside; the aerial-satellite coverage is a
//! fully closed series built on the shadowed-Rician MGF.

use serde::Serialize;

use crate::channel::{ln_gamma, nakagami_mgf_term, sr_mgf, SrPower};
use crate::config::ScenarioConfig;
use crate::error::Error;
use crate::quad::{integrate, integrate_split, QuadratureSpec};
use crate::spatial::{mhcpp_density, projection_distance_pdf, DistanceLaw, GeomCase};

#[derive(Debug, Clone, Copy)]
pub struct AnalyticOptions {
    /// Include the zero-interferer term of the interference Laplace
    /// transform. With it the transform is a true Laplace transform
    /// (L(0) = 1); without it the expression reproduces the published
    /// summation, which starts at one interferer.
    pub include_zero_term: bool,
    pub quad: QuadratureSpec,
}

impl Default for AnalyticOptions {
    fn default() -> Self {
        AnalyticOptions { include_zero_term: true, quad: QuadratureSpec::default() }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)).exp()
}

/// Conditional expectation of the per-interferer MGF factor
/// `D2(r) = (1 + s P_T / (N (H^2 + r^2)^(a1/2)))^(-N)` over the lens
/// distance law. Always in (0, 1].
fn interferer_mgf_mean(
    s: f64,
    law: &DistanceLaw,
    cfg: &ScenarioConfig,
    quad: &QuadratureSpec,
) -> Result<f64, Error> {
    if s == 0.0 {
        return Ok(1.0);
    }
    let d2 = |r: f64| {
        let t = s * cfg.p_t * (cfg.h_a * cfg.h_a + r * r).powf(-cfg.alpha_1 / 2.0);
        nakagami_mgf_term(t, cfg.n_ta) * law.pdf(r)
    };
    let (lo, hi) = law.support;
    let v = if law.case == GeomCase::PartialCenterIn {
        integrate_split(&d2, lo, hi, &[law.ring_break()], quad)?
    } else {
        integrate(&d2, lo, hi, quad)?
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Laplace transform of the aggregate terrestrial interference, conditioned
/// on the projection distance `m0`.
///
/// The binomial mixture over the interferer count collapses exactly to
/// `(1 - P_I (1 - J))^(N0 - 1)` with `J` the conditional per-interferer MGF
/// mean; the zero-interferer mass `(1 - P_I)^(N0-1)` is subtracted when the
/// published form (which omits it) is requested.
pub fn laplace_it(
    s: f64,
    m0: f64,
    cfg: &ScenarioConfig,
    include_zero_term: bool,
    quad: &QuadratureSpec,
) -> Result<f64, Error> {
    if s < 0.0 {
        return Err(Error::Domain { what: "laplace argument s", value: s, lo: 0.0, hi: f64::INFINITY });
    }
    let law = DistanceLaw::new(m0, cfg.r_u, cfg.r_a)?;
    let p_i = law.gamma / (std::f64::consts::PI * cfg.r_u * cfg.r_u);
    let j = interferer_mgf_mean(s, &law, cfg, quad)?;
    let n_others = cfg.n_0().saturating_sub(1) as f64;
    let mut value = (1.0 - p_i * (1.0 - j)).powf(n_others);
    if !include_zero_term {
        value -= (1.0 - p_i).powf(n_others);
    }
    Ok(value)
}

/// Explicit binomial-sum route for the same transform, in log space with
/// early termination. Retained as the independent cross-check of the
/// closed-form product used by `laplace_it`.
pub fn laplace_it_binomial_sum(
    s: f64,
    m0: f64,
    cfg: &ScenarioConfig,
    include_zero_term: bool,
    quad: &QuadratureSpec,
) -> Result<f64, Error> {
    let law = DistanceLaw::new(m0, cfg.r_u, cfg.r_a)?;
    let p_i = law.gamma / (std::f64::consts::PI * cfg.r_u * cfg.r_u);
    let j = interferer_mgf_mean(s, &law, cfg, quad)?;
    let n = cfg.n_0().saturating_sub(1);
    let ln_n1 = ln_gamma(n as f64 + 1.0);
    let (ln_p, ln_1p) = ((p_i * j.max(1e-300)).ln(), (1.0 - p_i).ln());
    let start = if include_zero_term { 0 } else { 1 };
    let mut sum = 0.0f64;
    let mut peak = f64::NEG_INFINITY;
    for k in start..=n {
        let ln_term = ln_n1 - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
            + k as f64 * ln_p
            + (n - k) as f64 * ln_1p;
        peak = peak.max(ln_term);
        sum += ln_term.exp();
        // the binomial mass is unimodal: once terms fall far below the
        // running peak they never recover
        if ln_term < peak - 34.5 && k as f64 > n as f64 * p_i {
            break;
        }
    }
    Ok(sum)
}

/// Lens distance law discretized on per-segment Gauss-Legendre nodes.
/// Weights are renormalized to unit mass so every expectation taken through
/// them is a true convex combination; this keeps the assembled coverage in
/// [0, 1] by construction.
fn law_nodes(law: &DistanceLaw) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = crate::quad::gl64();
    let (lo, hi) = law.support;
    let mut segments = vec![(lo, hi)];
    if law.case == GeomCase::PartialCenterIn {
        let brk = law.ring_break();
        segments = vec![(lo, brk), (brk, hi)];
    }
    let mut rs = Vec::with_capacity(gx.len() * segments.len());
    let mut vs = Vec::with_capacity(rs.capacity());
    for (a, b) in segments {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in gx.iter().zip(gw) {
            let r = mid + half * x;
            rs.push(r);
            vs.push(w * half * law.pdf(r));
        }
    }
    let mass: f64 = vs.iter().sum();
    for v in &mut vs {
        *v /= mass;
    }
    (rs, vs)
}

/// Terrestrial-aerial coverage probability at linear SINR threshold `t_h1`,
/// before clamping to [0, 1].
pub fn coverage_ta_raw(
    t_h1: f64,
    cfg: &ScenarioConfig,
    opts: &AnalyticOptions,
) -> Result<f64, Error> {
    if !(t_h1 > 0.0) {
        return Err(Error::Domain { what: "threshold t_h1", value: t_h1, lo: 0.0, hi: f64::INFINITY });
    }
    let n_ta = cfg.n_ta;
    let eta = n_ta as f64 * (ln_gamma(n_ta as f64 + 1.0)).exp().powf(-1.0 / n_ta as f64);
    let rc = cfg.r_c();

    let per_target = |m0: f64| -> Result<f64, Error> {
        let law = DistanceLaw::new(m0, cfg.r_u, cfg.r_a)?;
        let p_i = law.gamma / (std::f64::consts::PI * cfg.r_u * cfg.r_u);
        let n_others = cfg.n_0().saturating_sub(1) as f64;
        // both the interferer and target distances follow the same law; one
        // node set serves the per-interferer MGF mean and the outer average
        let (rs, vs) = law_nodes(&law);
        let cs: Vec<f64> = rs
            .iter()
            .map(|r| cfg.p_t * (cfg.h_a * cfg.h_a + r * r).powf(-cfg.alpha_1 / 2.0) / n_ta as f64)
            .collect();
        let j_mean = |s: f64| -> f64 {
            vs.iter().zip(&cs).map(|(v, c)| v * (1.0 + s * c).powi(-(n_ta as i32))).sum()
        };
        let alzer_sum = |r_m: f64| {
            let mut total = 0.0;
            for n in 1..=n_ta {
                let s = n as f64 * eta * t_h1 * (cfg.h_a * cfg.h_a + r_m * r_m).powf(cfg.alpha_1 / 2.0)
                    / cfg.p_t;
                let mut l = (1.0 - p_i * (1.0 - j_mean(s))).powf(n_others);
                if !opts.include_zero_term {
                    l -= (1.0 - p_i).powf(n_others);
                }
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                total += sign * binomial(n_ta, n) * (-s * cfg.noise_t).exp() * l;
            }
            total
        };
        Ok(rs.iter().zip(&vs).map(|(r, v)| v * alzer_sum(*r)).sum())
    };

    let outer = |m0: f64| {
        if m0 <= 0.0 {
            return 0.0;
        }
        let m0 = m0.min(rc * (1.0 - 1e-12));
        projection_distance_pdf(m0, cfg.r_u, cfg.r_a) * per_target(m0).unwrap_or(f64::NAN)
    };
    let v = integrate_split(&outer, 0.0, rc, &[cfg.r_u - cfg.r_a, cfg.r_u], &opts.quad)?;
    if v.is_nan() {
        return Err(Error::Overflow("coverage_ta integrand"));
    }
    Ok(v)
}

/// Terrestrial-aerial coverage probability, clamped to [0, 1].
pub fn coverage_ta(t_h1: f64, cfg: &ScenarioConfig, opts: &AnalyticOptions) -> Result<f64, Error> {
    Ok(coverage_ta_raw(t_h1, cfg, opts)?.clamp(0.0, 1.0))
}

/// Laplace transform of the aggregate aerial interference at the satellite:
/// `exp(lambda_A S_A (M2 - 1))` with `M2` the beam-gain mixture of the SR
/// MGF and `S_A` the aerial deployment area.
pub fn laplace_ia(s_prime: f64, cfg: &ScenarioConfig) -> f64 {
    let lambda_a = mhcpp_density(cfg.lambda_1, cfg.d_min);
    let s_a = std::f64::consts::PI * cfg.r_c() * cfg.r_c();
    let path = cfg.d_0.powf(-cfg.alpha_2);
    let t1 = s_prime * cfg.p_a * path * cfg.g_t_main * cfg.g_r;
    let t2 = s_prime * cfg.p_a * path * cfg.g_t_side * cfg.g_r;
    let frac = cfg.theta / (2.0 * std::f64::consts::PI);
    let m2 = sr_mgf(t1, &cfg.sr) * frac + sr_mgf(t2, &cfg.sr) * (1.0 - frac);
    (lambda_a * s_a * (m2 - 1.0)).exp()
}

/// Aerial-satellite coverage probability at linear SINR threshold `t_h2`,
/// before clamping.
pub fn coverage_as_raw(t_h2: f64, cfg: &ScenarioConfig) -> Result<f64, Error> {
    if !(t_h2 > 0.0) {
        return Err(Error::Domain { what: "threshold t_h2", value: t_h2, lo: 0.0, hi: f64::INFINITY });
    }
    let sr = SrPower::new(cfg.sr)?;
    let rate = sr.constants.rate();
    let g_ms = cfg.g_t_main * cfg.g_r;
    let d_pow = cfg.d_0.powf(cfg.alpha_2);
    let mut series = 0.0f64;
    for k in 0..sr.series_len() {
        let kf = k as f64;
        let zeta = (-(ln_gamma(kf + 2.0)) / (kf + 1.0)).exp();
        let mut inner = 0.0f64;
        for t in 0..=(k + 1) as u32 {
            let s_prime = t as f64 * zeta * rate * t_h2 * d_pow / (cfg.p_m * g_ms);
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            inner += sign
                * binomial((k + 1) as u32, t)
                * (-s_prime * cfg.noise_a).exp()
                * laplace_ia(s_prime, cfg);
        }
        series += sr.psi(k) / rate.powi(k as i32 + 1) * (ln_gamma(kf + 2.0)).exp() * inner;
    }
    Ok(1.0 - series)
}

/// Aerial-satellite coverage probability, clamped to [0, 1].
pub fn coverage_as(t_h2: f64, cfg: &ScenarioConfig) -> Result<f64, Error> {
    Ok(coverage_as_raw(t_h2, cfg)?.clamp(0.0, 1.0))
}

/// End-to-end coverage: product of the two link coverages (the two hops are
/// independent under the association policy).
pub fn coverage_joint(
    t_h1: f64,
    t_h2: f64,
    cfg: &ScenarioConfig,
    opts: &AnalyticOptions,
) -> Result<f64, Error> {
    Ok(coverage_ta(t_h1, cfg, opts)? * coverage_as(t_h2, cfg)?)
}

fn layer_cake<F: Fn(f64) -> Result<f64, Error>>(
    coverage_at: F,
    k_rate: f64,
    quad: &QuadratureSpec,
) -> Result<f64, Error> {
    // expand the upper limit until the integrand is negligible
    let mut t_max = 1.0;
    while coverage_at(t_max)? > 1e-6 && t_max < 64.0 {
        t_max *= 2.0;
    }
    let spec = QuadratureSpec {
        abs_tol: 1e-9,
        rel_tol: quad.rel_tol.min(1e-8),
        max_depth: quad.max_depth,
    };
    let f = |t: f64| {
        if t <= 0.0 {
            return 1.0; // threshold 2^t - 1 -> 0
        }
        coverage_at(t).unwrap_or(f64::NAN)
    };
    let v = integrate(&f, 0.0, t_max, &spec)?;
    if v.is_nan() {
        return Err(Error::Overflow("rate integrand"));
    }
    Ok(v / k_rate)
}

/// Average ergodic rate of the terrestrial-aerial link (bit/s/Hz), as the
/// layer-cake integral of the coverage curve over thresholds `2^t - 1`.
///
/// The interference-free atom (an empty lens beyond the target, noiseless
/// receiver) has infinite SINR, so its layer-cake contribution never decays;
/// the rate integral therefore always uses the interferer-conditioned
/// coverage (zero term excluded), mirroring the simulator's exclusion of
/// infinite-SINR runs from the rate average.
pub fn rate_ta(cfg: &ScenarioConfig, opts: &AnalyticOptions) -> Result<f64, Error> {
    let opts = AnalyticOptions { include_zero_term: false, quad: opts.quad };
    layer_cake(|t| coverage_ta(2f64.powf(t) - 1.0, cfg, &opts), cfg.k_rate, &opts.quad)
}

/// Average ergodic rate of the aerial-satellite link (bit/s/Hz).
pub fn rate_as(cfg: &ScenarioConfig, opts: &AnalyticOptions) -> Result<f64, Error> {
    layer_cake(|t| coverage_as(2f64.powf(t) - 1.0, cfg), cfg.k_rate, &opts.quad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MethodTag {
    Analytic,
    MonteCarlo,
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodTag::Analytic => write!(f, "analytic"),
            MethodTag::MonteCarlo => write!(f, "monte_carlo"),
        }
    }
}

/// A coverage-vs-threshold curve with its provenance.
#[derive(Debug, Clone)]
pub struct CoverageCurve {
    pub thresholds_db: Vec<f64>,
    pub values: Vec<f64>,
    pub method: MethodTag,
    pub config_hash: String,
}

impl CoverageCurve {
    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0] + 1e-9)
    }

    /// CSV rows `threshold_db,value,method,config_hash`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("threshold_db,value,method,config_hash\n");
        for (t, v) in self.thresholds_db.iter().zip(&self.values) {
            out.push_str(&format!("{t},{v},{},{}\n", self.method, self.config_hash));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::db_to_linear;

    fn cfg() -> ScenarioConfig {
        ScenarioConfig::default()
    }

    #[test]
    fn laplace_it_at_zero() {
        let c = cfg();
        let q = QuadratureSpec::default();
        let v = laplace_it(0.0, 5_000.0, &c, true, &q).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // without the zero term: 1 - (1 - P_I)^(N0-1)
        let p_i = (500.0f64 / 9_500.0).powi(2);
        let expect = 1.0 - (1.0 - p_i).powf(c.n_0() as f64 - 1.0);
        let v = laplace_it(0.0, 5_000.0, &c, false, &q).unwrap();
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn laplace_it_monotone_in_s() {
        let c = cfg();
        let q = QuadratureSpec::default();
        let mut prev = f64::INFINITY;
        for s in [0.0, 1e4, 1e5, 1e6, 1e7] {
            let v = laplace_it(s, 5_000.0, &c, true, &q).unwrap();
            assert!(v <= prev + 1e-12 && v > 0.0 && v <= 1.0);
            prev = v;
        }
    }

    #[test]
    fn laplace_it_matches_binomial_sum() {
        let c = cfg();
        let q = QuadratureSpec::default();
        for m0 in [3_000.0, 9_300.0, 9_700.0] {
            for s in [0.0, 2e5, 2e6] {
                for zt in [true, false] {
                    let a = laplace_it(s, m0, &c, zt, &q).unwrap();
                    let b = laplace_it_binomial_sum(s, m0, &c, zt, &q).unwrap();
                    assert!(
                        (a - b).abs() < 1e-9,
                        "m0={m0} s={s} zt={zt}: closed {a} vs sum {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn laplace_it_empirical_oracle() {
        // direct Monte Carlo of E[exp(-s I_T)] over lens realizations
        use crate::channel::NakagamiPower;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        use rand_distr::{Binomial, Distribution};

        let c = cfg();
        let q = QuadratureSpec::default();
        let m0 = 5_000.0;
        let r_m = 300.0;
        // a weak threshold keeps the transform O(1), where a direct sample
        // mean of exp(-s I) has usable relative error
        let t_h1 = 1e-3; // -30 dB
        let n_ta = c.n_ta as f64;
        let eta = n_ta * 6f64.powf(-1.0 / 3.0);
        let s = eta * t_h1 * (c.h_a * c.h_a + r_m * r_m) / c.p_t; // n = 1, alpha_1 = 2
        let analytic = laplace_it(s, m0, &c, true, &q).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let nak = NakagamiPower::new(c.n_ta);
        let p_i = (c.r_a / c.r_u).powi(2); // fully-inside regime
        let bin = Binomial::new(c.n_0() - 1, p_i).unwrap();
        let reps = 200_000;
        let mut acc = 0.0;
        for _ in 0..reps {
            let k = bin.sample(&mut rng);
            let mut i_t = 0.0;
            for _ in 0..k {
                let r = c.r_a * rng.gen::<f64>().sqrt();
                i_t += c.p_t * nak.sample(&mut rng) / (c.h_a * c.h_a + r * r);
            }
            acc += (-s * i_t).exp();
        }
        let emp = acc / reps as f64;
        let rel = (analytic - emp).abs() / emp;
        assert!(rel < 0.01, "analytic {analytic} vs empirical {emp} (rel {rel})");
    }

    #[test]
    fn coverage_ta_vanishing_threshold() {
        let c = cfg();
        let opts = AnalyticOptions::default();
        let v = coverage_ta(db_to_linear(-60.0), &c, &opts).unwrap();
        assert!(v > 0.999, "coverage at -60 dB = {v}");
    }

    #[test]
    fn coverage_ta_monotone_in_threshold() {
        let c = cfg();
        let opts = AnalyticOptions::default();
        let mut prev = f64::INFINITY;
        for db in [-10.0, -5.0, 0.0, 5.0, 10.0] {
            let v = coverage_ta(db_to_linear(db), &c, &opts).unwrap();
            assert!(v <= prev + 1e-9, "not monotone at {db} dB");
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn laplace_ia_limits() {
        let c = cfg();
        assert!((laplace_ia(0.0, &c) - 1.0).abs() < 1e-12);
        // all-mainlobe degenerate mixture
        let mut c2 = c.clone();
        c2.theta = 2.0 * std::f64::consts::PI;
        let s = 1e5;
        let lambda_a = mhcpp_density(c2.lambda_1, c2.d_min);
        let s_a = std::f64::consts::PI * c2.r_c() * c2.r_c();
        let t1 = s * c2.p_a * c2.d_0.powf(-2.0) * c2.g_t_main * c2.g_r;
        let expect = (lambda_a * s_a * (sr_mgf(t1, &c2.sr) - 1.0)).exp();
        assert!((laplace_ia(s, &c2) - expect).abs() < 1e-12);
        // monotone nonincreasing in s
        let mut prev = f64::INFINITY;
        for s in [0.0, 1e4, 1e5, 1e6] {
            let v = laplace_ia(s, &c);
            assert!(v <= prev && v > 0.0 && v <= 1.0);
            prev = v;
        }
    }

    #[test]
    fn laplace_ia_empirical_oracle() {
        // E[exp(-s' I_A)] over hard-core + SR + sectored-gain realizations;
        // tolerance absorbs the Poisson-count approximation in the closed
        // form and the finite-disk retention bias of the hard-core process
        use crate::channel::SrPower;
        use crate::spatial::{sample_mhcpp2, Disk};
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        let c = cfg();
        let sr = SrPower::new(c.sr).unwrap();
        let t_h2 = db_to_linear(-20.0);
        let s_prime =
            sr.constants.rate() * t_h2 * c.d_0.powf(c.alpha_2) / (c.p_m * c.g_t_main * c.g_r);
        let analytic = laplace_ia(s_prime, &c);

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let region = Disk::centered(c.r_c());
        let path = c.d_0.powf(-c.alpha_2);
        let frac = c.theta / (2.0 * std::f64::consts::PI);
        let reps = 100_000;
        let mut acc = 0.0;
        for _ in 0..reps {
            let ans = sample_mhcpp2(c.lambda_1, c.d_min, region, &mut rng);
            let mut i_a = 0.0;
            // exclude one node as the (non-interfering) target
            let skip = if ans.is_empty() { 0 } else { rng.gen_range(0..ans.len()) };
            for i in 0..ans.len() {
                if i == skip {
                    continue;
                }
                let g = if rng.gen::<f64>() < frac { c.g_t_main } else { c.g_t_side };
                i_a += c.p_a * g * c.g_r * sr.sample(&mut rng) * path;
            }
            acc += (-s_prime * i_a).exp();
        }
        let emp = acc / reps as f64;
        let rel = (analytic - emp).abs() / emp;
        assert!(rel < 0.01, "analytic {analytic} vs empirical {emp} (rel {rel})");
    }

    #[test]
    fn coverage_as_q1_collapse() {
        // q = 1: the whole series collapses to L_IA at the t = 1 abscissa
        let c = cfg();
        let sr = SrPower::new(c.sr).unwrap();
        let rate = sr.constants.rate();
        for db in [-30.0, -20.0, -10.0, 0.0] {
            let t_h2 = db_to_linear(db);
            let s1 = rate * t_h2 * c.d_0.powf(c.alpha_2) / (c.p_m * c.g_t_main * c.g_r);
            let collapse = laplace_ia(s1, &c);
            let v = coverage_as(t_h2, &c).unwrap();
            assert!((v - collapse).abs() < 1e-10, "{db} dB: {v} vs {collapse}");
        }
    }

    #[test]
    fn coverage_as_vanishing_threshold() {
        let c = cfg();
        assert!(coverage_as(db_to_linear(-60.0), &c).unwrap() > 0.999);
    }

    #[test]
    fn coverage_as_generic_q_well_behaved() {
        let mut c = cfg();
        c.sr = crate::config::SrParams { c: 0.126, q: 5.0, omega: 0.835 };
        let mut prev = f64::INFINITY;
        for db in [-30.0, -20.0, -10.0, 0.0] {
            let v = coverage_as(db_to_linear(db), &c).unwrap();
            assert!((0.0..=1.0).contains(&v));
            assert!(v <= prev + 1e-9);
            prev = v;
        }
    }

    #[test]
    fn coverage_joint_reduces_and_vanishes() {
        let c = cfg();
        let opts = AnalyticOptions::default();
        let lo = db_to_linear(-60.0);
        let joint = coverage_joint(lo, db_to_linear(-20.0), &c, &opts).unwrap();
        let as_only = coverage_as(db_to_linear(-20.0), &c).unwrap();
        assert!((joint - as_only).abs() < 2e-3);
        let hi = db_to_linear(40.0);
        assert!(coverage_joint(hi, hi, &c, &opts).unwrap() < 1e-3);
    }

    #[test]
    fn rate_prefactor_scales() {
        let c = cfg();
        let opts = AnalyticOptions::default();
        let r1 = rate_as(&c, &opts).unwrap();
        let mut c2 = c.clone();
        c2.k_rate = 2.0;
        let r2 = rate_as(&c2, &opts).unwrap();
        assert!((r1 / r2 - 2.0).abs() < 1e-9);
        assert!(r1 > 0.0);
    }

    #[test]
    fn curve_csv_and_monotonicity() {
        let curve = CoverageCurve {
            thresholds_db: vec![-10.0, 0.0, 10.0],
            values: vec![0.9, 0.5, 0.1],
            method: MethodTag::Analytic,
            config_hash: "abc".into(),
        };
        assert!(curve.is_nonincreasing());
        let csv = curve.to_csv();
        assert!(csv.starts_with("threshold_db,value,method,config_hash\n"));
        assert!(csv.contains("-10,0.9,analytic,abc"));
    }
}
