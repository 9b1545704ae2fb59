//! Two-parameter Mittag-Leffler function E_{ν,μ}(z) for real z.
//!
//! The power series is summed in double precision when it is well
//! conditioned and in double-double otherwise. For z < 0 and 0 < ν < 2
//! with |z|^{1/ν} ≥ 40 the algebraic asymptotic expansion is used,
//! together with the exponentially small pole terms when 1 < ν < 2.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{gamma, ln_gamma, ln_rgamma_signed, rgamma};
use crate::dd::{self, Dd};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MLParams {
    pub nu: f64,
    pub mu: f64,
}

impl MLParams {
    pub fn new(nu: f64, mu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) || !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!("Mittag-Leffler needs nu > 0 and mu > 0, got ({nu}, {mu})")));
        }
        Ok(MLParams { nu, mu })
    }
}

const TERM_CAP: usize = 20_000;
/// Radius |z|^{1/ν} beyond which the asymptotic branch is preferred.
pub const ASYMPTOTIC_RADIUS: f64 = 40.0;

/// E_{ν,μ}(z) to about 1e-12 relative accuracy.
pub fn mittag_leffler(ml: MLParams, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::domain("Mittag-Leffler argument must be finite"));
    }
    if z == 0.0 {
        return Ok(rgamma(ml.mu));
    }
    let radius = z.abs().powf(1.0 / ml.nu);
    if z < 0.0 && ml.nu < 2.0 && radius >= ASYMPTOTIC_RADIUS * (1.0 - 1e-12) {
        if let Ok(v) = mittag_leffler_asymptotic(ml, z) {
            return Ok(v);
        }
    }
    mittag_leffler_series(ml, z)
}

/// Power series Σ z^j / Γ(jν+μ).
pub fn mittag_leffler_series(ml: MLParams, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(rgamma(ml.mu));
    }
    let (s, abs_sum) = series_f64(ml, z)?;
    if abs_sum <= 100.0 * s.abs() {
        return Ok(s);
    }
    series_dd(ml, z)
}

fn series_f64(ml: MLParams, z: f64) -> Result<(f64, f64)> {
    let lnz = z.abs().ln();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs_sum = 0.0;
    let mut prev = f64::INFINITY;
    for j in 0..TERM_CAP {
        let a = j as f64 * ml.nu + ml.mu;
        let mag = if a <= 170.0 && j <= 300 {
            z.abs().powi(j as i32) / gamma(a)
        } else {
            (j as f64 * lnz - ln_gamma(a)).exp()
        };
        if !mag.is_finite() {
            return Err(Error::NonConvergence {
                what: "Mittag-Leffler series",
                value: sum,
                error: f64::INFINITY,
                detail: format!("overflow at term {j}, z = {z}"),
            });
        }
        let term = if z < 0.0 && j % 2 == 1 { -mag } else { mag };
        // Neumaier summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        abs_sum += mag;
        if mag <= prev && mag <= 1e-17 * (sum + comp).abs() && j > 2 {
            return Ok((sum + comp, abs_sum));
        }
        prev = mag;
    }
    Err(Error::NonConvergence {
        what: "Mittag-Leffler series",
        value: sum + comp,
        error: prev,
        detail: format!("term cap {TERM_CAP} reached, z = {z}"),
    })
}

fn series_dd(ml: MLParams, z: f64) -> Result<f64> {
    let lnz = Dd::from_f64(z.abs()).ln();
    let mut sum = Dd::ZERO;
    let mut max_term = 0.0f64;
    let mut prev = f64::INFINITY;
    for j in 0..TERM_CAP {
        let a = Dd::mul_f64s(ml.nu, j as f64) + ml.mu;
        let mag = (lnz * j as f64 - dd::ln_gamma(a)).exp();
        if !mag.is_finite() {
            return Err(Error::NonConvergence {
                what: "Mittag-Leffler series",
                value: sum.to_f64(),
                error: f64::INFINITY,
                detail: format!("overflow at term {j}, z = {z}"),
            });
        }
        let m = mag.to_f64();
        max_term = max_term.max(m);
        sum = if z < 0.0 && j % 2 == 1 { sum - mag } else { sum + mag };
        if m <= prev && m <= 1e-33 * sum.to_f64().abs().max(1e-300) && j > 2 {
            let s = sum.to_f64();
            // The exponents j·ln|z| and ln Γ(jν+μ) reach a few hundred, so
            // each term carries a relative error near 1e-29.
            let err = 1e-29 * max_term;
            if err > 1e-8 * s.abs().max(1e-300) && err > 1e-14 {
                return Err(Error::NonConvergence {
                    what: "Mittag-Leffler series",
                    value: s,
                    error: err,
                    detail: format!("cancellation: largest term {max_term:e}, z = {z}"),
                });
            }
            return Ok(s);
        }
        prev = m;
    }
    Err(Error::NonConvergence {
        what: "Mittag-Leffler series",
        value: sum.to_f64(),
        error: prev,
        detail: format!("term cap {TERM_CAP} reached, z = {z}"),
    })
}

/// Asymptotic expansion for z < 0 and 0 < ν < 2:
/// −Σ_{j≥1} z^{−j}/Γ(μ−νj), plus (2/ν)·Re[s^{1−μ} e^{s}] with
/// s = |z|^{1/ν} e^{iπ/ν} when 1 < ν < 2. The sum stops at its smallest
/// term; an error is returned when that term exceeds 1e-14 of the value.
pub fn mittag_leffler_asymptotic(ml: MLParams, z: f64) -> Result<f64> {
    if !(z < 0.0) || !(ml.nu < 2.0) {
        return Err(Error::domain("asymptotic branch needs z < 0 and nu < 2"));
    }
    let lnz = z.abs().ln();
    let mut sum = 0.0;
    // Envelope of |z^{-j}/Γ(μ-νj)| with the sine factor dropped; the sum
    // stops where the envelope starts to grow.
    let mut prev_env = f64::INFINITY;
    let mut trunc = f64::INFINITY;
    for j in 1..TERM_CAP {
        let x = ml.mu - ml.nu * j as f64;
        let ln_env = if x > 0.0 { -ln_gamma(x) } else { ln_gamma(1.0 - x) - PI.ln() } - j as f64 * lnz;
        let env = ln_env.exp();
        if env > prev_env {
            trunc = prev_env;
            break;
        }
        let (lr, sg) = ln_rgamma_signed(x);
        let mag = if sg == 0.0 { 0.0 } else { (lr - j as f64 * lnz).exp() };
        // z^{-j} has sign (-1)^j
        let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
        sum -= sign * sg * mag;
        prev_env = env;
        if env < 1e-18 * sum.abs() {
            trunc = env;
            break;
        }
    }
    if ml.nu > 1.0 {
        let r = z.abs().powf(1.0 / ml.nu);
        let s = Complex64::from_polar(r, PI / ml.nu);
        let pole = s.powc(Complex64::new(1.0 - ml.mu, 0.0)) * s.exp();
        sum += 2.0 / ml.nu * pole.re;
    }
    if !(trunc <= 1e-14 * sum.abs()) {
        return Err(Error::NonConvergence {
            what: "Mittag-Leffler asymptotic expansion",
            value: sum,
            error: trunc,
            detail: format!("smallest term too large at z = {z}"),
        });
    }
    Ok(sum)
}
