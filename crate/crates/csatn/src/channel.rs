//! Fading distributions of the two links and the special functions they need.
//!
//! The terrestrial-aerial link is Nakagami (normalized Gamma power); the
//! aerial-satellite link is shadowed-Rician with power PDF
//! `f(x) = kappa * exp(-beta x) * 1F1(q; 1; delta x)`.

use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal};

use crate::config::{derive_sr_constants, SrConstants, SrParams};
use crate::error::Error;

// ---------------------------------------------------------------------------
// Special functions

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function (Lanczos approximation), x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Pochhammer symbol `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
///
/// Exact zero whenever the product crosses a nonpositive-integer root, which
/// is what truncates the SR series for integer `q`.
pub fn pochhammer(x: f64, n: u64) -> f64 {
    let mut p = 1.0;
    for i in 0..n {
        p *= x + i as f64;
    }
    p
}

/// Lower incomplete gamma function (non-regularized),
/// `int_0^x t^(a-1) exp(-t) dt`, for a > 0, x >= 0.
pub fn lower_inc_gamma(a: f64, x: f64) -> Result<f64, Error> {
    if a <= 0.0 {
        return Err(Error::Domain { what: "lower_inc_gamma shape", value: a, lo: 0.0, hi: f64::INFINITY });
    }
    if x < 0.0 {
        return Err(Error::Domain { what: "lower_inc_gamma argument", value: x, lo: 0.0, hi: f64::INFINITY });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let gln = ln_gamma(a);
    let reg = if x < a + 1.0 {
        // series for P(a, x)
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..500 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        sum * (-x + a * x.ln() - gln).exp()
    } else {
        // continued fraction for Q(a, x)
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        1.0 - (-x + a * x.ln() - gln).exp() * h
    };
    Ok(reg.clamp(0.0, 1.0) * gln.exp())
}

/// Confluent hypergeometric function of the first kind, by direct power
/// series with compensated summation. Term-ratio stopping at rel tol 1e-12;
/// `a == b` short-circuits to `exp(z)`.
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64, Error> {
    if b <= 0.0 && (b - b.round()).abs() < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "hyp1f1: b = {b} is a nonpositive integer"
        )));
    }
    if a == b {
        return Ok(z.exp());
    }
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut term = 1.0f64;
    for k in 0..10_000u64 {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if !sum.is_finite() {
            return Err(Error::Overflow("hyp1f1"));
        }
        if term.abs() <= sum.abs() * 1e-12 && k > 2 {
            return Ok(sum);
        }
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Nakagami power fading

/// Unit-mean Nakagami power fading, `|h|^2 ~ Gamma(n_ta, 1/n_ta)`.
#[derive(Debug, Clone, Copy)]
pub struct NakagamiPower {
    pub n_ta: u32,
    gamma: Gamma<f64>,
}

impl NakagamiPower {
    pub fn new(n_ta: u32) -> Self {
        assert!(n_ta >= 1);
        let n = n_ta as f64;
        NakagamiPower { n_ta, gamma: Gamma::new(n, 1.0 / n).expect("valid gamma") }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.gamma.sample(rng)
    }

    /// `E[exp(-t |h|^2)] = (1 + t/n)^(-n)`.
    pub fn mgf_term(&self, t: f64) -> f64 {
        let n = self.n_ta as f64;
        (1.0 + t / n).powf(-n)
    }
}

/// Standalone Nakagami MGF term, for call sites that carry only the shape.
pub fn nakagami_mgf_term(t: f64, n_ta: u32) -> f64 {
    let n = n_ta as f64;
    (1.0 + t / n).powf(-n)
}

// ---------------------------------------------------------------------------
// Shadowed-Rician power fading

/// Shadowed-Rician power distribution with its derived constants.
#[derive(Debug, Clone, Copy)]
pub struct SrPower {
    pub params: SrParams,
    pub constants: SrConstants,
}

impl SrPower {
    pub fn new(params: SrParams) -> Result<Self, Error> {
        let constants = derive_sr_constants(&params)?;
        Ok(SrPower { params, constants })
    }

    /// Series coefficient `Psi(k) = (-1)^k kappa delta^k (1-q)_k / (k!)^2`.
    pub fn psi(&self, k: u64) -> f64 {
        let q = self.params.q;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf_fact = (ln_gamma(k as f64 + 1.0)).exp();
        sign * self.constants.kappa * self.constants.delta.powi(k as i32) * pochhammer(1.0 - q, k)
            / (kf_fact * kf_fact)
    }

    /// Number of series terms: exact `q` for integer q, otherwise enough for
    /// a 1e-12 relative tail.
    pub fn series_len(&self) -> u64 {
        if let Some(q) = self.params.integer_q() {
            q as u64
        } else {
            let mut sum = 0.0f64;
            for k in 0..400u64 {
                let mag = self.psi(k).abs() * (ln_gamma(k as f64 + 1.0)).exp()
                    / self.constants.rate().powi(k as i32 + 1);
                sum += mag;
                if k > 2 && mag < 1e-12 * sum {
                    return k + 1;
                }
            }
            400
        }
    }

    /// PDF via the closed hypergeometric form.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let k = self.constants;
        let h = hyp1f1(self.params.q, 1.0, k.delta * x).unwrap_or(f64::INFINITY);
        k.kappa * (-k.beta * x).exp() * h
    }

    /// PDF via the Kummer-transformed series, truncated at `k_max + 1` terms.
    pub fn series_pdf(&self, x: f64, k_max: u64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let rate = self.constants.rate();
        let mut sum = 0.0;
        for k in 0..=k_max {
            sum += self.psi(k) * x.powi(k as i32);
        }
        sum * (-rate * x).exp()
    }

    /// CDF `sum_k Psi(k)/(beta-delta)^(k+1) * gammainc(k+1, (beta-delta) x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let rate = self.constants.rate();
        let mut sum = 0.0;
        for k in 0..self.series_len() {
            let g = lower_inc_gamma(k as f64 + 1.0, rate * x).expect("k+1 > 0");
            sum += self.psi(k) / rate.powi(k as i32 + 1) * g;
        }
        sum.clamp(0.0, 1.0)
    }

    /// Composition sampler: LOS amplitude from a Nakagami-shadowed Gamma
    /// power, plus a zero-mean circular complex Gaussian scatter component.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let SrParams { c, q, omega } = self.params;
        let a = if omega > 0.0 {
            Gamma::new(q, omega / q).expect("valid gamma").sample(rng).sqrt()
        } else {
            0.0
        };
        let phase = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        let scatter = Normal::new(0.0, c.sqrt()).expect("valid normal");
        let re = a * phase.cos() + scatter.sample(rng);
        let im = a * phase.sin() + scatter.sample(rng);
        re * re + im * im
    }

    pub fn mgf(&self, x: f64) -> f64 {
        sr_mgf(x, &self.params)
    }
}

/// MGF of the SR power, `E[exp(-x |h|^2)]`:
/// `(2cq)^q (1+2cx)^(q-1) / ((2cq+Omega)(1+2cx) - Omega)^q`.
pub fn sr_mgf(x: f64, sr: &SrParams) -> f64 {
    let two_c = 2.0 * sr.c;
    let u = 1.0 + two_c * x;
    (two_c * sr.q).powf(sr.q) * u.powf(sr.q - 1.0)
        / ((two_c * sr.q + sr.omega) * u - sr.omega).powf(sr.q)
}
