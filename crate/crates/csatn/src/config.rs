//! Scenario configuration, unit conventions, and derived quantities.
//!
//! All internal lengths are meters, densities m^-2, powers watts, and gains
//! linear. The on-disk configuration accepts `"9.5 km"`, `"20 dBW"` and
//! `"10 dB"` style strings and converts once, on ingest.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;

/// Shadowed-Rician channel parameters: `2c` is the mean multipath power,
/// `omega` the LOS mean power, and `q` the Nakagami shadowing parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SrParams {
    pub c: f64,
    pub q: f64,
    pub omega: f64,
}

impl SrParams {
    pub fn mean_power(&self) -> f64 {
        2.0 * self.c + self.omega
    }

    /// True when `q` is (numerically) a positive integer, which truncates the
    /// power-series expansions of the SR PDF/CDF to `q` terms.
    pub fn integer_q(&self) -> Option<u32> {
        let r = self.q.round();
        if r >= 1.0 && (self.q - r).abs() < 1e-9 {
            Some(r as u32)
        } else {
            None
        }
    }
}

/// The three constants of the SR power PDF
/// `f(x) = kappa * exp(-beta x) * 1F1(q; 1; delta x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrConstants {
    pub kappa: f64,
    pub delta: f64,
    pub beta: f64,
}

impl SrConstants {
    /// `beta - delta`, the decay rate of the series form of the PDF.
    pub fn rate(&self) -> f64 {
        self.beta - self.delta
    }
}

/// Derives `(kappa, delta, beta)` from the SR triple.
///
/// Fails when the resulting series would not converge (`beta <= delta`),
/// which only happens for degenerate parameter combinations.
pub fn derive_sr_constants(sr: &SrParams) -> Result<SrConstants, Error> {
    if !(sr.c > 0.0) || !(sr.q > 0.0) || !(sr.omega >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "SR params out of range: c={}, q={}, omega={}",
            sr.c, sr.q, sr.omega
        )));
    }
    let two_c = 2.0 * sr.c;
    let denom = two_c * sr.q + sr.omega;
    let kappa = (two_c * sr.q).powf(sr.q) / (two_c * denom.powf(sr.q));
    let delta = sr.omega / (two_c * denom);
    let beta = 1.0 / two_c;
    if beta <= delta {
        return Err(Error::NonConvergentSeries { beta, delta });
    }
    Ok(SrConstants { kappa, delta, beta })
}

/// Physical and geometric parameters of the scenario.
///
/// Field meanings and defaults follow the system model: a user disk of
/// radius `r_u`, aerial nodes on a disk of radius `r_a + r_u` at altitude
/// `h_a`, and a satellite at distance `d_0` above the aerial-node plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    /// Aerial-node altitude (m).
    pub h_a: f64,
    /// Aerial-node to satellite distance (m).
    pub d_0: f64,
    /// User-disk radius (m).
    pub r_u: f64,
    /// Aerial-node ground-coverage radius (m).
    pub r_a: f64,
    /// Hard-core repulsion distance (m).
    pub d_min: f64,
    /// Terrestrial transmit power (W).
    pub p_t: f64,
    /// Interfering aerial-node transmit power (W).
    pub p_a: f64,
    /// Target aerial-node transmit power (W).
    pub p_m: f64,
    /// Transmitter mainlobe gain (linear).
    pub g_t_main: f64,
    /// Transmitter sidelobe gain (linear).
    pub g_t_side: f64,
    /// Receiver mainlobe gain (linear).
    pub g_r: f64,
    /// Transmitter mainlobe width (rad).
    pub theta: f64,
    /// Terrestrial-node density (m^-2).
    pub lambda_t: f64,
    /// Aerial candidate-point density (m^-2).
    pub lambda_1: f64,
    /// Nakagami shape of the terrestrial-aerial link.
    pub n_ta: u32,
    /// Shadowed-Rician triple of the aerial-satellite link.
    pub sr: SrParams,
    /// Path-loss exponent, terrestrial-aerial link.
    pub alpha_1: f64,
    /// Path-loss exponent, aerial-satellite link.
    pub alpha_2: f64,
    /// `1/K` rate prefactor; 1 unless the deployment defines K otherwise.
    pub k_rate: f64,
    /// Noise power of the terrestrial-aerial link (W); 0 = interference limited.
    pub noise_t: f64,
    /// Noise power of the aerial-satellite link (W); 0 = interference limited.
    pub noise_a: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            h_a: 50.0,
            d_0: 4.0e5,
            r_u: 9_500.0,
            r_a: 500.0,
            d_min: 1_000.0,
            p_t: 100.0,
            p_a: 100.0,
            p_m: 100.0,
            g_t_main: 10.0,
            g_t_side: 0.1,
            g_r: 10.0,
            theta: std::f64::consts::FRAC_PI_6,
            lambda_t: 1.0e-4,
            lambda_1: 5.0e-7,
            n_ta: 3,
            sr: SrParams {
                c: 0.158,
                q: 1.0,
                omega: 0.1,
            },
            alpha_1: 2.0,
            alpha_2: 2.0,
            k_rate: 1.0,
            noise_t: 0.0,
            noise_a: 0.0,
        }
    }
}

impl ScenarioConfig {
    /// Radius of the aerial-node deployment disk, `r_a + r_u`.
    pub fn r_c(&self) -> f64 {
        self.r_a + self.r_u
    }

    /// Deterministic user count of the binomial point process,
    /// `round(lambda_t * pi * r_u^2)`.
    pub fn n_0(&self) -> u64 {
        (self.lambda_t * std::f64::consts::PI * self.r_u * self.r_u).round() as u64
    }

    pub fn sr_constants(&self) -> Result<SrConstants, Error> {
        derive_sr_constants(&self.sr)
    }

    /// Short hex fingerprint of every parameter; stamped on all CSV output.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        let mut s = String::with_capacity(16);
        for b in &digest[..8] {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    /// Checks every invariant; returns one entry per violated rule.
    /// Validation never aborts, so all problems are reported at once.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut err = |field: &str, rule: String| {
            v.push(Violation {
                field: field.to_string(),
                rule,
                severity: Severity::Error,
            })
        };
        for (name, val) in [
            ("h_a", self.h_a),
            ("d_0", self.d_0),
            ("r_u", self.r_u),
            ("r_a", self.r_a),
            ("d_min", self.d_min),
        ] {
            if !(val > 0.0) {
                err(name, format!("must be > 0, got {val}"));
            }
        }
        for (name, val) in [
            ("p_t", self.p_t),
            ("p_a", self.p_a),
            ("p_m", self.p_m),
            ("g_t_main", self.g_t_main),
            ("g_t_side", self.g_t_side),
            ("g_r", self.g_r),
            ("k_rate", self.k_rate),
        ] {
            if !(val > 0.0) {
                err(name, format!("must be > 0, got {val}"));
            }
        }
        if !(self.theta > 0.0 && self.theta <= 2.0 * std::f64::consts::PI) {
            err("theta", format!("must be in (0, 2*pi], got {}", self.theta));
        }
        if self.n_ta < 1 {
            err("n_ta", "must be >= 1".to_string());
        }
        if !(self.sr.c > 0.0) || !(self.sr.q > 0.0) || !(self.sr.omega >= 0.0) {
            err("sr", format!("requires c > 0, q > 0, omega >= 0, got {:?}", self.sr));
        }
        if !(self.lambda_t >= 0.0) {
            err("lambda_t", "must be >= 0".to_string());
        }
        if !(self.lambda_1 >= 0.0) {
            err("lambda_1", "must be >= 0".to_string());
        }
        if !(self.noise_t >= 0.0) || !(self.noise_a >= 0.0) {
            err("noise_t/noise_a", "must be >= 0".to_string());
        }
        if self.r_u > 0.0 && self.lambda_t >= 0.0 && self.n_0() < 1 {
            err("lambda_t", format!("n_0 = round(lambda_t*pi*r_u^2) = {} < 1", self.n_0()));
        }
        // Association policy ties the coverage radius to the repulsion radius;
        // overriding it is allowed but flagged.
        if self.r_a > 0.0
            && self.d_min > 0.0
            && (self.r_a - self.d_min / 2.0).abs() > 1e-9 * self.d_min
        {
            v.push(Violation {
                field: "r_a".to_string(),
                rule: format!(
                    "r_a = {} differs from d_min/2 = {}; terminals may reach several aerial nodes",
                    self.r_a,
                    self.d_min / 2.0
                ),
                severity: Severity::Warning,
            });
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub field: String,
    pub rule: String,
    pub severity: Severity,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}: {}", self.field, self.rule)
    }
}

// ---------------------------------------------------------------------------
// File ingestion

/// A number, or a string with a unit suffix (`"9.5 km"`, `"20 dBW"`, `"10 dB"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSr {
    c: f64,
    q: f64,
    omega: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    h_a: Option<RawValue>,
    d_0: Option<RawValue>,
    r_u: Option<RawValue>,
    r_a: Option<RawValue>,
    d_min: Option<RawValue>,
    p_t: Option<RawValue>,
    p_a: Option<RawValue>,
    p_m: Option<RawValue>,
    g_t_main: Option<RawValue>,
    g_t_side: Option<RawValue>,
    g_r: Option<RawValue>,
    theta: Option<f64>,
    lambda_t: Option<f64>,
    lambda_1: Option<f64>,
    n_ta: Option<u32>,
    sr: Option<RawSr>,
    alpha_1: Option<f64>,
    alpha_2: Option<f64>,
    k_rate: Option<f64>,
    noise_t: Option<RawValue>,
    noise_a: Option<RawValue>,
}

enum Kind {
    Length,
    Power,
    Gain,
}

fn convert(field: &str, raw: &RawValue, kind: Kind) -> Result<f64, Error> {
    let bad = |msg: String| Error::InvalidParameter(format!("{field}: {msg}"));
    match raw {
        RawValue::Num(x) => Ok(*x),
        RawValue::Text(s) => {
            let s = s.trim();
            let split = s
                .find(|c: char| c.is_alphabetic())
                .ok_or_else(|| bad(format!("cannot parse {s:?}")))?;
            let (num, unit) = s.split_at(split);
            let x: f64 = num
                .trim()
                .parse()
                .map_err(|_| bad(format!("cannot parse number in {s:?}")))?;
            match (kind, unit.trim()) {
                (Kind::Length, "m") => Ok(x),
                (Kind::Length, "km") => Ok(x * 1e3),
                (Kind::Power, "W") => Ok(x),
                (Kind::Power, "kW") => Ok(x * 1e3),
                (Kind::Power, "dBW" | "dBw") => Ok(10f64.powf(x / 10.0)),
                (Kind::Power, "dBm") => Ok(10f64.powf((x - 30.0) / 10.0)),
                (Kind::Gain, "dB") => Ok(10f64.powf(x / 10.0)),
                (_, u) => Err(bad(format!("unsupported unit {u:?}"))),
            }
        }
    }
}

impl ScenarioConfig {
    /// Parses a JSON configuration. Unknown keys are an error; missing keys
    /// take the default value.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = ScenarioConfig::default();
        let set = |field: &str, dst: &mut f64, src: &Option<RawValue>, kind: Kind| {
            if let Some(v) = src {
                match convert(field, v, kind) {
                    Ok(x) => {
                        *dst = x;
                        Ok(())
                    }
                    Err(e) => Err(e),
                }
            } else {
                Ok(())
            }
        };
        set("h_a", &mut cfg.h_a, &raw.h_a, Kind::Length)?;
        set("d_0", &mut cfg.d_0, &raw.d_0, Kind::Length)?;
        set("r_u", &mut cfg.r_u, &raw.r_u, Kind::Length)?;
        set("r_a", &mut cfg.r_a, &raw.r_a, Kind::Length)?;
        set("d_min", &mut cfg.d_min, &raw.d_min, Kind::Length)?;
        set("p_t", &mut cfg.p_t, &raw.p_t, Kind::Power)?;
        set("p_a", &mut cfg.p_a, &raw.p_a, Kind::Power)?;
        set("p_m", &mut cfg.p_m, &raw.p_m, Kind::Power)?;
        set("g_t_main", &mut cfg.g_t_main, &raw.g_t_main, Kind::Gain)?;
        set("g_t_side", &mut cfg.g_t_side, &raw.g_t_side, Kind::Gain)?;
        set("g_r", &mut cfg.g_r, &raw.g_r, Kind::Gain)?;
        set("noise_t", &mut cfg.noise_t, &raw.noise_t, Kind::Power)?;
        set("noise_a", &mut cfg.noise_a, &raw.noise_a, Kind::Power)?;
        if let Some(x) = raw.theta {
            cfg.theta = x;
        }
        if let Some(x) = raw.lambda_t {
            cfg.lambda_t = x;
        }
        if let Some(x) = raw.lambda_1 {
            cfg.lambda_1 = x;
        }
        if let Some(x) = raw.n_ta {
            cfg.n_ta = x;
        }
        if let Some(s) = raw.sr {
            cfg.sr = SrParams {
                c: s.c,
                q: s.q,
                omega: s.omega,
            };
        }
        if let Some(x) = raw.alpha_1 {
            cfg.alpha_1 = x;
        }
        if let Some(x) = raw.alpha_2 {
            cfg.alpha_2 = x;
        }
        if let Some(x) = raw.k_rate {
            cfg.k_rate = x;
        }
        Ok(cfg)
    }
}

/// dB to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to dB.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
