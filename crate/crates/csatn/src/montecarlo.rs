//! Monte Carlo simulator: samples full network realizations (aerial hard-core
//! process, terminal placement, fading) and estimates coverage and rate
//! directly from SINR draws.
//!
//! Reproducibility contract: run `i` of a simulation with master seed `s`
//! always consumes the same RNG stream (`ChaCha8`, stream id = run index),
//! so results are byte-identical for any worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::channel::{NakagamiPower, SrPower};
use crate::config::{linear_to_db, ScenarioConfig};
use crate::error::Error;
use crate::spatial::{lens_area, sample_mhcpp2, Disk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    Ta,
    As,
}

impl std::fmt::Display for Link {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Link::Ta => write!(f, "ta"),
            Link::As => write!(f, "as"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct McOptions {
    /// Condition on at least one interfering terminal sharing the lens
    /// (resampling realizations with a lone target). Off by default: the
    /// baseline conditioning is only "the target lens is non-empty".
    pub require_interferer: bool,
    /// Realization resampling budget before giving up.
    pub realization_budget: u64,
    /// Per-realization budget for rejection-sampling terminal positions.
    pub rejection_budget: u64,
    /// Materialize every terminal on the user disk and intersect with the
    /// target lens, instead of sampling the lens population directly. Slower;
    /// exists as a cross-check of the lens-local shortcut.
    pub full_scenario: bool,
    /// Worker threads; `None` uses the global pool (or sequential build).
    pub workers: Option<usize>,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            require_interferer: false,
            realization_budget: 100_000,
            rejection_budget: 10_000_000,
            full_scenario: false,
            workers: None,
        }
    }
}

/// One sampled network state, with everything needed to evaluate both links.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Retained aerial nodes in this realization.
    pub n_an: usize,
    /// Projection distance of the target aerial node from the user-disk center.
    pub m0: f64,
    /// Target terminal to aerial-node horizontal distance.
    pub r_m: f64,
    /// Horizontal distances of the co-lens interfering terminals.
    pub interferer_r: Vec<f64>,
    /// Nakagami power fade of the target terminal link.
    pub fade_t_target: f64,
    /// Nakagami power fades of the interfering terminals.
    pub fade_t_interf: Vec<f64>,
    /// Shadowed-Rician power fade of the target aerial-satellite link.
    pub fade_a_target: f64,
    /// Shadowed-Rician power fades of the interfering aerial nodes.
    pub fade_a_interf: Vec<f64>,
    /// Transmit beam gain of each interfering aerial node (main or side lobe).
    pub gain_a_interf: Vec<f64>,
}

impl Realization {
    /// Uplink SINR at the target aerial node. Infinite when there is neither
    /// interference nor noise.
    pub fn sinr_ta(&self, cfg: &ScenarioConfig) -> f64 {
        let path = |r: f64| (cfg.h_a * cfg.h_a + r * r).powf(-cfg.alpha_1 / 2.0);
        let sig = cfg.p_t * self.fade_t_target * path(self.r_m);
        let mut den = cfg.noise_t;
        for (r, h) in self.interferer_r.iter().zip(&self.fade_t_interf) {
            den += cfg.p_t * h * path(*r);
        }
        if den == 0.0 {
            f64::INFINITY
        } else {
            sig / den
        }
    }

    /// Uplink SINR at the satellite. All aerial nodes sit at the common
    /// satellite distance `d_0`.
    pub fn sinr_as(&self, cfg: &ScenarioConfig) -> f64 {
        let path = cfg.d_0.powf(-cfg.alpha_2);
        let sig = cfg.p_m * cfg.g_t_main * cfg.g_r * self.fade_a_target * path;
        let mut den = cfg.noise_a;
        for (h, g) in self.fade_a_interf.iter().zip(&self.gain_a_interf) {
            den += cfg.p_a * g * cfg.g_r * h * path;
        }
        if den == 0.0 {
            f64::INFINITY
        } else {
            sig / den
        }
    }
}

/// Samples one realization: hard-core aerial nodes, a uniformly chosen target
/// node, binomial terminals in its coverage lens, uniform target terminal,
/// and all fades. Resamples until the lens is non-empty.
pub fn realize<R: Rng + ?Sized>(
    cfg: &ScenarioConfig,
    opts: &McOptions,
    rng: &mut R,
) -> Result<Realization, Error> {
    let rc = cfg.r_c();
    let region = Disk::centered(rc);
    let user_r2 = cfg.r_u * cfg.r_u;
    let nak = NakagamiPower::new(cfg.n_ta);
    let sr = SrPower::new(cfg.sr)?;
    let n_0 = cfg.n_0();
    let min_lens = if opts.require_interferer { 2 } else { 1 };

    for _attempt in 0..opts.realization_budget {
        let ans = sample_mhcpp2(cfg.lambda_1, cfg.d_min, region, rng);
        if ans.is_empty() {
            continue;
        }
        let target = rng.gen_range(0..ans.len());
        let (ax, ay) = ans.points[target];
        let m0 = (ax * ax + ay * ay).sqrt().clamp(1e-9, rc * (1.0 - 1e-12));
        let mut dists: Vec<f64>;
        if opts.full_scenario {
            // place the whole terminal population, keep those in the lens
            let user_disk = Disk::centered(cfg.r_u);
            let ra2 = cfg.r_a * cfg.r_a;
            dists = Vec::new();
            for _ in 0..n_0 {
                let (x, y) = user_disk.sample_uniform(rng);
                let (dx, dy) = (x - ax, y - ay);
                let d2 = dx * dx + dy * dy;
                if d2 <= ra2 {
                    dists.push(d2.sqrt());
                }
            }
            if dists.len() < min_lens {
                continue;
            }
        } else {
            let p_i = lens_area(m0, cfg.r_u, cfg.r_a) / (std::f64::consts::PI * user_r2);
            let n_lens = Binomial::new(n_0, p_i.clamp(0.0, 1.0))
                .expect("valid binomial")
                .sample(rng) as usize;
            if n_lens < min_lens {
                continue;
            }
            // terminal positions: uniform on the lens, by rejection from the
            // coverage disk of the target node
            let lens_disk = Disk::new(ax, ay, cfg.r_a);
            dists = Vec::with_capacity(n_lens);
            let mut tries = 0u64;
            while dists.len() < n_lens {
                tries += 1;
                if tries > opts.rejection_budget {
                    return Err(Error::ResampleBudget {
                        attempts: tries,
                        condition: "terminal position inside coverage lens",
                    });
                }
                let (x, y) = lens_disk.sample_uniform(rng);
                if x * x + y * y <= user_r2 {
                    let (dx, dy) = (x - ax, y - ay);
                    dists.push((dx * dx + dy * dy).sqrt());
                }
            }
        }
        let target_user = rng.gen_range(0..dists.len());
        let r_m = dists.swap_remove(target_user);

        let fade_t_target = nak.sample(rng);
        let fade_t_interf: Vec<f64> = dists.iter().map(|_| nak.sample(rng)).collect();
        let fade_a_target = sr.sample(rng);
        let frac = cfg.theta / (2.0 * std::f64::consts::PI);
        let mut fade_a_interf = Vec::with_capacity(ans.len() - 1);
        let mut gain_a_interf = Vec::with_capacity(ans.len() - 1);
        for i in 0..ans.len() {
            if i == target {
                continue;
            }
            fade_a_interf.push(sr.sample(rng));
            gain_a_interf.push(if rng.gen::<f64>() < frac { cfg.g_t_main } else { cfg.g_t_side });
        }

        return Ok(Realization {
            n_an: ans.len(),
            m0,
            r_m,
            interferer_r: dists,
            fade_t_target,
            fade_t_interf,
            fade_a_target,
            fade_a_interf,
            gain_a_interf,
        });
    }
    Err(Error::ResampleBudget {
        attempts: opts.realization_budget,
        condition: "non-empty aerial process with a populated target lens",
    })
}

/// One simulated run: both link SINRs from a common realization.
#[derive(Debug, Clone, Copy)]
pub struct SinrSample {
    pub run_id: u64,
    pub sinr_ta: f64,
    pub sinr_as: f64,
}

#[cfg(feature = "parallel")]
fn map_runs<T, F>(runs: u64, workers: Option<usize>, f: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(u64) -> Result<T, Error> + Sync,
{
    use rayon::prelude::*;
    let exec = || (0..runs).into_par_iter().map(&f).collect::<Result<Vec<T>, Error>>();
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(exec),
        None => exec(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_runs<T, F>(runs: u64, _workers: Option<usize>, f: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(u64) -> Result<T, Error> + Sync,
{
    (0..runs).map(f).collect()
}

/// Simulates `runs` independent realizations and returns both SINRs per run,
/// ordered by run id.
pub fn simulate(
    cfg: &ScenarioConfig,
    runs: u64,
    master_seed: u64,
    opts: &McOptions,
) -> Result<Vec<SinrSample>, Error> {
    map_runs(runs, opts.workers, |run_id| {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(run_id);
        let real = realize(cfg, opts, &mut rng)?;
        Ok(SinrSample { run_id, sinr_ta: real.sinr_ta(cfg), sinr_as: real.sinr_as(cfg) })
    })
}

#[derive(Debug, Clone, Copy)]
pub struct EstimateWithCi {
    pub estimate: f64,
    /// 95% normal-approximation half width.
    pub ci_halfwidth: f64,
    pub runs: u64,
    pub seed: u64,
}

fn coverage_from<F: Fn(&SinrSample) -> bool>(
    samples: &[SinrSample],
    seed: u64,
    covered: F,
) -> EstimateWithCi {
    let n = samples.len() as f64;
    let hits = samples.iter().filter(|s| covered(s)).count() as f64;
    let p = hits / n;
    EstimateWithCi {
        estimate: p,
        ci_halfwidth: 1.96 * (p * (1.0 - p) / n).sqrt(),
        runs: samples.len() as u64,
        seed,
    }
}

/// Coverage of one link at a linear threshold, from precomputed samples.
pub fn coverage_estimate(
    samples: &[SinrSample],
    link: Link,
    threshold: f64,
    seed: u64,
) -> EstimateWithCi {
    coverage_from(samples, seed, |s| match link {
        Link::Ta => s.sinr_ta > threshold,
        Link::As => s.sinr_as > threshold,
    })
}

/// Joint end-to-end coverage: both links above their thresholds in the same
/// realization.
pub fn joint_coverage_estimate(
    samples: &[SinrSample],
    t_h1: f64,
    t_h2: f64,
    seed: u64,
) -> EstimateWithCi {
    coverage_from(samples, seed, |s| s.sinr_ta > t_h1 && s.sinr_as > t_h2)
}

/// Simulates and estimates coverage in one call.
pub fn estimate_coverage(
    link: Link,
    threshold: f64,
    cfg: &ScenarioConfig,
    runs: u64,
    master_seed: u64,
    opts: &McOptions,
) -> Result<EstimateWithCi, Error> {
    let samples = simulate(cfg, runs, master_seed, opts)?;
    Ok(coverage_estimate(&samples, link, threshold, master_seed))
}

#[derive(Debug, Clone, Copy)]
pub struct RateEstimate {
    pub estimate: f64,
    pub ci_halfwidth: f64,
    pub runs: u64,
    pub seed: u64,
    /// Runs with infinite SINR (no interferer, no noise); counted as covered
    /// for coverage but excluded from the rate average.
    pub excluded_infinite: u64,
}

/// Ergodic rate `E[log2(1 + SINR)] / K` of one link from samples.
pub fn rate_estimate(samples: &[SinrSample], link: Link, cfg: &ScenarioConfig, seed: u64) -> RateEstimate {
    let mut vals = Vec::with_capacity(samples.len());
    let mut excluded = 0u64;
    for s in samples {
        let x = match link {
            Link::Ta => s.sinr_ta,
            Link::As => s.sinr_as,
        };
        if x.is_finite() {
            vals.push((1.0 + x).log2() / cfg.k_rate);
        } else {
            excluded += 1;
        }
    }
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    RateEstimate {
        estimate: mean,
        ci_halfwidth: 1.96 * (var / n).sqrt(),
        runs: samples.len() as u64,
        seed,
        excluded_infinite: excluded,
    }
}

/// Simulates and estimates the rate in one call.
pub fn estimate_rate(
    link: Link,
    cfg: &ScenarioConfig,
    runs: u64,
    master_seed: u64,
    opts: &McOptions,
) -> Result<RateEstimate, Error> {
    let samples = simulate(cfg, runs, master_seed, opts)?;
    Ok(rate_estimate(&samples, link, cfg, master_seed))
}

/// Per-run CSV dump: `run_id,link,sinr_db,covered_flag` for one link at one
/// linear threshold. Infinite SINR prints as `inf`.
pub fn samples_to_csv(samples: &[SinrSample], link: Link, threshold: f64) -> String {
    let mut out = String::from("run_id,link,sinr_db,covered_flag\n");
    for s in samples {
        let x = match link {
            Link::Ta => s.sinr_ta,
            Link::As => s.sinr_as,
        };
        let db = if x.is_finite() { format!("{}", linear_to_db(x)) } else { "inf".to_string() };
        out.push_str(&format!("{},{link},{db},{}\n", s.run_id, u8::from(x > threshold)));
    }
    out
}
