//! Parameter sweeps, analytic-vs-simulation comparison reports, and the CSV
//! / plot-script emission behind the batch front end.

use std::fmt::Write as _;

use crate::analytic::{self, AnalyticOptions};
use crate::config::{db_to_linear, ScenarioConfig};
use crate::error::Error;
use crate::montecarlo::{self, Link, McOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Coverage,
    Rate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroTermMode {
    On,
    Off,
    Both,
}

impl ZeroTermMode {
    fn modes(self) -> &'static [bool] {
        match self {
            ZeroTermMode::On => &[true],
            ZeroTermMode::Off => &[false],
            ZeroTermMode::Both => &[true, false],
        }
    }
}

/// One sweep: a named parameter stepped over `values`, evaluated per link on
/// a threshold grid (coverage) or directly (rate).
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: String,
    /// Values in internal SI units.
    pub values: Vec<f64>,
    pub base: ScenarioConfig,
    pub grid_db: Vec<f64>,
    pub links: Vec<Link>,
    pub quantity: Quantity,
    pub runs: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.values.is_empty() {
            return Err(Error::Config("sweep value list is empty".into()));
        }
        if self.quantity == Quantity::Coverage && self.grid_db.is_empty() {
            return Err(Error::Config("threshold grid is empty".into()));
        }
        if self.links.is_empty() {
            return Err(Error::Config("no links requested".into()));
        }
        // fail early on unknown parameter names
        apply_parameter(&self.base, &self.param, self.values[0]).map(|_| ())
    }
}

/// Returns a copy of `cfg` with the named parameter set. Besides the plain
/// fields, two derived knobs are recognized: `r_c` (total deployment radius;
/// adjusts `r_u` keeping `r_a`) and `gain_contrast_db` (sets the mainlobe
/// gain to +x dB and the sidelobe gain to -x dB).
pub fn apply_parameter(cfg: &ScenarioConfig, name: &str, value: f64) -> Result<ScenarioConfig, Error> {
    let mut c = cfg.clone();
    match name {
        "h_a" => c.h_a = value,
        "d_0" => c.d_0 = value,
        "r_u" => c.r_u = value,
        "r_a" => c.r_a = value,
        "d_min" => c.d_min = value,
        "p_t" => c.p_t = value,
        "p_a" => c.p_a = value,
        "p_m" => c.p_m = value,
        "g_t_main" => c.g_t_main = value,
        "g_t_side" => c.g_t_side = value,
        "g_r" => c.g_r = value,
        "theta" => c.theta = value,
        "lambda_t" => c.lambda_t = value,
        "lambda_1" => c.lambda_1 = value,
        "n_ta" => c.n_ta = value as u32,
        "alpha_1" => c.alpha_1 = value,
        "alpha_2" => c.alpha_2 = value,
        "k_rate" => c.k_rate = value,
        "noise_t" => c.noise_t = value,
        "noise_a" => c.noise_a = value,
        "r_c" => {
            if value <= cfg.r_a {
                return Err(Error::InvalidParameter(format!(
                    "r_c = {value} must exceed r_a = {}",
                    cfg.r_a
                )));
            }
            c.r_u = value - cfg.r_a;
        }
        "gain_contrast_db" => {
            c.g_t_main = db_to_linear(value);
            c.g_t_side = db_to_linear(-value);
        }
        _ => return Err(Error::UnknownParameter(name.to_string())),
    }
    Ok(c)
}

pub const CSV_HEADER: &str =
    "swept_value,threshold_db,link,method,value,ci_halfwidth,runs,seed,config_hash";

fn push_row(
    out: &mut String,
    swept: f64,
    threshold_db: Option<f64>,
    link: Link,
    method: &str,
    value: f64,
    ci: f64,
    runs: u64,
    seed: u64,
    hash: &str,
) {
    let t = threshold_db.map_or(String::new(), |t| format!("{t}"));
    writeln!(out, "{swept},{t},{link},{method},{value},{ci},{runs},{seed},{hash}").unwrap();
}

/// Evaluates the sweep analytically; one CSV row per (value, link, threshold).
pub fn run_analytic(spec: &SweepSpec, opts: &AnalyticOptions) -> Result<String, Error> {
    spec.validate()?;
    let mut out = format!("{CSV_HEADER}\n");
    for &v in &spec.values {
        let cfg = apply_parameter(&spec.base, &spec.param, v)?;
        let hash = cfg.fingerprint();
        for &link in &spec.links {
            match spec.quantity {
                Quantity::Coverage => {
                    for &db in &spec.grid_db {
                        let t = db_to_linear(db);
                        let p = match link {
                            Link::Ta => analytic::coverage_ta(t, &cfg, opts)?,
                            Link::As => analytic::coverage_as(t, &cfg)?,
                        };
                        push_row(&mut out, v, Some(db), link, "analytic", p, 0.0, 0, spec.seed, &hash);
                    }
                }
                Quantity::Rate => {
                    let r = match link {
                        Link::Ta => analytic::rate_ta(&cfg, opts)?,
                        Link::As => analytic::rate_as(&cfg, opts)?,
                    };
                    push_row(&mut out, v, None, link, "analytic", r, 0.0, 0, spec.seed, &hash);
                }
            }
        }
    }
    Ok(out)
}

/// Evaluates the sweep by simulation; all grid points of one swept value
/// share the same sample set.
pub fn run_simulate(spec: &SweepSpec, mc: &McOptions) -> Result<String, Error> {
    spec.validate()?;
    let mut out = format!("{CSV_HEADER}\n");
    for &v in &spec.values {
        let cfg = apply_parameter(&spec.base, &spec.param, v)?;
        let hash = cfg.fingerprint();
        let samples = montecarlo::simulate(&cfg, spec.runs, spec.seed, mc)?;
        for &link in &spec.links {
            match spec.quantity {
                Quantity::Coverage => {
                    for &db in &spec.grid_db {
                        let e = montecarlo::coverage_estimate(
                            &samples,
                            link,
                            db_to_linear(db),
                            spec.seed,
                        );
                        push_row(
                            &mut out, v, Some(db), link, "monte_carlo", e.estimate,
                            e.ci_halfwidth, e.runs, e.seed, &hash,
                        );
                    }
                }
                Quantity::Rate => {
                    let e = montecarlo::rate_estimate(&samples, link, &cfg, spec.seed);
                    push_row(
                        &mut out, v, None, link, "monte_carlo", e.estimate, e.ci_halfwidth,
                        e.runs, e.seed, &hash,
                    );
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CompareRow {
    pub swept_value: f64,
    pub threshold_db: Option<f64>,
    pub link: Link,
    pub include_zero_term: bool,
    pub analytic: f64,
    pub mc: f64,
    pub ci_halfwidth: f64,
    pub config_hash: String,
}

impl CompareRow {
    pub fn gap(&self) -> f64 {
        self.analytic - self.mc
    }

    pub fn inside_ci(&self) -> bool {
        self.gap().abs() <= self.ci_halfwidth
    }
}

/// Analytic-vs-simulation gap table with its summary statistics.
#[derive(Debug, Clone)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub runs: u64,
    pub seed: u64,
}

impl CompareReport {
    pub fn max_abs_gap(&self) -> f64 {
        self.rows.iter().map(|r| r.gap().abs()).fold(0.0, f64::max)
    }

    pub fn fraction_inside_ci(&self) -> f64 {
        let n = self.rows.len() as f64;
        self.rows.iter().filter(|r| r.inside_ci()).count() as f64 / n
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "swept_value,threshold_db,link,zero_term,analytic,monte_carlo,ci_halfwidth,gap,\
             inside_ci,runs,seed,config_hash\n",
        );
        for r in &self.rows {
            let t = r.threshold_db.map_or(String::new(), |t| format!("{t}"));
            writeln!(
                out,
                "{},{t},{},{},{},{},{},{},{},{},{},{}",
                r.swept_value,
                r.link,
                u8::from(r.include_zero_term),
                r.analytic,
                r.mc,
                r.ci_halfwidth,
                r.gap(),
                u8::from(r.inside_ci()),
                self.runs,
                self.seed,
                r.config_hash,
            )
            .unwrap();
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>12} {:>8} {:>4} {:>9} {:>10} {:>10} {:>9} {:>9}",
            "swept", "thr_db", "link", "zero_term", "analytic", "mc", "ci", "gap"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:>12.6} {:>8} {:>4} {:>9} {:>10.5} {:>10.5} {:>9.5} {:>+9.5}",
                r.swept_value,
                r.threshold_db.map_or("-".into(), |t| format!("{t:.1}")),
                r.link.to_string(),
                if r.include_zero_term { "on" } else { "off" },
                r.analytic,
                r.mc,
                r.ci_halfwidth,
                r.gap(),
            )
            .unwrap();
        }
        writeln!(
            out,
            "max |gap| = {:.5}; inside-CI fraction = {:.3} over {} rows ({} runs, seed {})",
            self.max_abs_gap(),
            self.fraction_inside_ci(),
            self.rows.len(),
            self.runs,
            self.seed,
        )
        .unwrap();
        out
    }
}

/// Runs both methods and tabulates the gaps. The zero-term mode applies to
/// the terrestrial-aerial link only; the aerial-satellite expression has no
/// such ambiguity.
pub fn run_compare(
    spec: &SweepSpec,
    zero_term: ZeroTermMode,
    mc: &McOptions,
    quad: &crate::quad::QuadratureSpec,
) -> Result<CompareReport, Error> {
    spec.validate()?;
    let mut rows = Vec::new();
    for &v in &spec.values {
        let cfg = apply_parameter(&spec.base, &spec.param, v)?;
        let hash = cfg.fingerprint();
        let samples = montecarlo::simulate(&cfg, spec.runs, spec.seed, mc)?;
        for &link in &spec.links {
            let modes: &[bool] = if link == Link::Ta { zero_term.modes() } else { &[true] };
            for &zt in modes {
                let opts = AnalyticOptions { include_zero_term: zt, quad: *quad };
                match spec.quantity {
                    Quantity::Coverage => {
                        for &db in &spec.grid_db {
                            let t = db_to_linear(db);
                            let an = match link {
                                Link::Ta => analytic::coverage_ta(t, &cfg, &opts)?,
                                Link::As => analytic::coverage_as(t, &cfg)?,
                            };
                            let e = montecarlo::coverage_estimate(&samples, link, t, spec.seed);
                            rows.push(CompareRow {
                                swept_value: v,
                                threshold_db: Some(db),
                                link,
                                include_zero_term: zt,
                                analytic: an,
                                mc: e.estimate,
                                ci_halfwidth: e.ci_halfwidth,
                                config_hash: hash.clone(),
                            });
                        }
                    }
                    Quantity::Rate => {
                        let an = match link {
                            Link::Ta => analytic::rate_ta(&cfg, &opts)?,
                            Link::As => analytic::rate_as(&cfg, &opts)?,
                        };
                        let e = montecarlo::rate_estimate(&samples, link, &cfg, spec.seed);
                        rows.push(CompareRow {
                            swept_value: v,
                            threshold_db: None,
                            link,
                            include_zero_term: zt,
                            analytic: an,
                            mc: e.estimate,
                            ci_halfwidth: e.ci_halfwidth,
                            config_hash: hash.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(CompareReport { rows, runs: spec.runs, seed: spec.seed })
}

// ---------------------------------------------------------------------------
// Presets

fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut v = Vec::new();
    let mut x = start;
    while x <= stop + 1e-9 {
        v.push(x);
        x += step;
    }
    v
}

/// Parses a `start:stop:step` threshold grid in dB.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("grid {text:?} is not start:stop:step")));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Config(format!("grid {text:?} has a non-numeric part")))?;
    if !(nums[2] > 0.0) || nums[1] < nums[0] {
        return Err(Error::Config(format!("grid {text:?} must have stop >= start, step > 0")));
    }
    let g = grid(nums[0], nums[1], nums[2]);
    if g.is_empty() {
        return Err(Error::Config(format!("grid {text:?} is empty")));
    }
    Ok(g)
}

/// Built-in sweep shapes. Value lists for parameters without authoritative
/// defaults are documented placeholders; override the base config to move
/// the legend.
pub fn preset(name: &str, base: &ScenarioConfig, runs: u64, seed: u64) -> Result<SweepSpec, Error> {
    let ta_grid = grid(-10.0, 10.0, 2.5);
    let as_grid = grid(-30.0, 0.0, 5.0);
    let mk = |param: &str, values: Vec<f64>, grid_db: Vec<f64>, link: Link, q: Quantity| SweepSpec {
        param: param.to_string(),
        values,
        base: base.clone(),
        grid_db,
        links: vec![link],
        quantity: q,
        runs,
        seed,
    };
    let spec = match name {
        // coverage vs T-A threshold
        "fig3" => mk("h_a", vec![30.0, 50.0, 80.0], ta_grid, Link::Ta, Quantity::Coverage),
        "fig4" => mk("lambda_t", vec![5e-5, 1e-4, 2e-4], ta_grid, Link::Ta, Quantity::Coverage),
        "fig5" => mk("r_a", vec![300.0, 500.0, 700.0], ta_grid, Link::Ta, Quantity::Coverage),
        "fig6" => {
            mk("r_u", vec![8_000.0, 9_500.0, 11_000.0], ta_grid, Link::Ta, Quantity::Coverage)
        }
        // T-A rate vs geometry
        "fig7" => mk(
            "r_a",
            vec![200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0],
            vec![],
            Link::Ta,
            Quantity::Rate,
        ),
        "fig8" => mk("h_a", vec![30.0, 40.0, 50.0, 65.0, 80.0], vec![], Link::Ta, Quantity::Rate),
        // coverage vs A-S threshold
        "fig9" => mk("p_m", vec![50.0, 100.0, 200.0], as_grid, Link::As, Quantity::Coverage),
        "fig10" => {
            mk("r_c", vec![8_000.0, 10_000.0, 12_000.0], as_grid, Link::As, Quantity::Coverage)
        }
        "fig11" => mk("gain_contrast_db", vec![0.0, 10.0, 13.0], as_grid, Link::As, Quantity::Coverage),
        "fig12" => {
            mk("d_min", vec![500.0, 1_000.0, 2_000.0], as_grid, Link::As, Quantity::Coverage)
        }
        "fig13" => mk("lambda_1", vec![1e-7, 5e-7, 1e-6], as_grid, Link::As, Quantity::Coverage),
        // A-S rate vs target transmit power
        "fig14" => mk("p_m", vec![25.0, 50.0, 100.0, 200.0], vec![], Link::As, Quantity::Rate),
        "fig15" => mk("p_m", vec![100.0, 200.0, 400.0, 800.0], vec![], Link::As, Quantity::Rate),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(spec)
}

pub const PRESET_NAMES: &[&str] = &[
    "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13",
    "fig14", "fig15",
];

// ---------------------------------------------------------------------------
// Inverse query

/// Threshold (dB) at which the analytic coverage of `link` equals `target`,
/// by bisection to 0.01 dB on the searched range [-60, 40] dB.
pub fn find_threshold(
    link: Link,
    target: f64,
    cfg: &ScenarioConfig,
    opts: &AnalyticOptions,
) -> Result<f64, Error> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain { what: "target coverage", value: target, lo: 0.0, hi: 1.0 });
    }
    let cov = |db: f64| -> Result<f64, Error> {
        let t = db_to_linear(db);
        match link {
            Link::Ta => analytic::coverage_ta(t, cfg, opts),
            Link::As => analytic::coverage_as(t, cfg),
        }
    };
    let (mut lo, mut hi) = (-60.0f64, 40.0f64);
    if cov(lo)? < target || cov(hi)? > target {
        return Err(Error::BracketRange { target, lo_db: lo, hi_db: hi });
    }
    // coverage is nonincreasing in the threshold
    while hi - lo > 0.01 {
        let mid = 0.5 * (lo + hi);
        if cov(mid)? >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ---------------------------------------------------------------------------
// Plot scripts

/// Emits a gnuplot script for a sweep CSV written by `run_analytic` /
/// `run_simulate`; one curve per (swept value, method).
pub fn plot_script(csv_path: &str, spec: &SweepSpec) -> String {
    let (xlabel, using, extra) = match spec.quantity {
        Quantity::Coverage => ("SINR threshold (dB)", "2:5", "set yrange [0:1]\n"),
        Quantity::Rate => ("swept value", "1:5", ""),
    };
    let mut out = String::new();
    writeln!(out, "set datafile separator ','").unwrap();
    writeln!(out, "set key outside").unwrap();
    writeln!(out, "set xlabel '{xlabel}'").unwrap();
    writeln!(
        out,
        "set ylabel '{}'",
        if spec.quantity == Quantity::Coverage { "coverage probability" } else { "rate (bit/s/Hz)" }
    )
    .unwrap();
    out.push_str(extra);
    let mut clauses = Vec::new();
    for &v in &spec.values {
        for method in ["analytic", "monte_carlo"] {
            clauses.push(format!(
                "'{csv_path}' using {using}:((stringcolumn(4) eq '{method}' && column(1) == {v}) \
                 ? column(5) : NaN) with linespoints title '{} = {v} ({method})'",
                spec.param
            ));
        }
    }
    writeln!(out, "plot \\\n  {}", clauses.join(", \\\n  ")).unwrap();
    out
}
