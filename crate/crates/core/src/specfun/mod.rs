//! Special functions: Gamma helpers, incomplete gamma, Mittag-Leffler, Airy, and the
//! densities of the stable subordinator and of the gamma-type variables.

mod airy;
mod gamma;
mod incgamma;
mod mittag;

use std::f64::consts::PI;

pub use airy::airy_ai;
pub use gamma::{gamma, ln_gamma, ln_rgamma_signed, rgamma, sin_pi};
pub use incgamma::upper_incomplete_gamma;
pub use mittag::{
    mittag_leffler, mittag_leffler_asymptotic, mittag_leffler_series, MLParams, ASYMPTOTIC_RADIUS,
};

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOpts};

/// Stable subordinator of index β with E e^{−λH(t)} = e^{−tλ^β}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubordinatorParams {
    pub beta: f64,
}

impl SubordinatorParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::domain(format!("subordinator index must satisfy 0 < beta < 1, got {beta}")));
        }
        Ok(SubordinatorParams { beta })
    }
}

/// Density h_β(x, t) of the stable subordinator at time t.
pub fn subordinator_density(s: SubordinatorParams, x: f64, t: f64) -> Result<f64> {
    if !(x > 0.0) || !(t > 0.0) {
        return Err(Error::domain(format!("subordinator density needs x > 0 and t > 0, got ({x}, {t})")));
    }
    let scale = t.powf(1.0 / s.beta);
    Ok(standard_density(s.beta, x / scale)? / scale)
}

/// h_β(y, 1).
fn standard_density(beta: f64, y: f64) -> Result<f64> {
    if let Some(v) = tail_series(beta, y) {
        return Ok(v);
    }
    inversion_integral(beta, y)
}

/// (1/π) Σ_{k≥1} (−1)^{k+1} Γ(βk+1)/k! · sin(πβk) · y^{−βk−1}, accepted
/// only when it converges quickly without cancellation.
fn tail_series(beta: f64, y: f64) -> Option<f64> {
    let ly = y.ln();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for k in 1..400 {
        let kf = k as f64;
        let mag = (ln_gamma(beta * kf + 1.0) - ln_gamma(kf + 1.0) - (beta * kf + 1.0) * ly).exp();
        if k == 1 && mag == 0.0 {
            // the whole tail lies below the smallest double
            return Some(0.0);
        }
        let term = mag * sin_pi(beta * kf);
        sum += if k % 2 == 1 { term } else { -term };
        abs_sum += term.abs();
        if mag < 1e-17 * sum.abs() {
            return if abs_sum <= 4.0 * sum.abs() && k < 60 { Some(sum / PI) } else { None };
        }
        if k >= 60 {
            return None;
        }
    }
    None
}

/// Non-oscillatory inversion integral
/// h(y) = β/((1−β)π) · y^{−1/(1−β)} ∫_0^π A(φ) exp(−y^{−β/(1−β)} A(φ)) dφ,
/// A(φ) = [sin βφ / sin φ]^{1/(1−β)} · sin((1−β)φ)/sin βφ.
fn inversion_integral(beta: f64, y: f64) -> Result<f64> {
    let b1 = 1.0 - beta;
    let ln_a = |phi: f64| -> f64 {
        let sb = (beta * phi).sin();
        ((sb.ln() - phi.sin().ln()) / b1) + (b1 * phi).sin().ln() - sb.ln()
    };
    let ln_a0 = beta / b1 * beta.ln() + b1.ln();
    let ln_c = -beta / b1 * y.ln();
    // A is increasing, so c·A(0) is the smallest exponent; factor it out.
    let m = (ln_c + ln_a0).exp();
    if m > 745.0 {
        return Ok(0.0);
    }
    let c = ln_c.exp();
    let r = integrate(
        |phi: f64| {
            let la = ln_a(phi);
            let a = la.exp();
            let e = la - (c * a - m);
            if e < -745.0 {
                0.0
            } else {
                e.exp()
            }
        },
        0.0,
        PI,
        QuadOpts::new(0.0, 1e-12),
    )?;
    Ok(beta / (b1 * PI) * (-(y.ln()) / b1 - m).exp() * r.value)
}

/// Gamma-type density g^γ(x, t) = γ x^{γ−1} e^{−x^γ/t} / t.
pub fn gamma_type_density(gamma_ord: f64, x: f64, tscale: f64) -> Result<f64> {
    if !(gamma_ord > 0.0) || !(x > 0.0) || !(tscale > 0.0) {
        return Err(Error::domain(format!(
            "gamma-type density needs positive (gamma, x, t), got ({gamma_ord}, {x}, {tscale})"
        )));
    }
    let xg = x.powf(gamma_ord);
    Ok(gamma_ord * xg / x * (-xg / tscale).exp() / tscale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_stable_closed_form() {
        let s = SubordinatorParams::new(0.5).unwrap();
        for &t in &[0.5, 1.0, 3.0] {
            for &x in &[0.01f64, 0.1, 0.4, 1.0, 2.0, 10.0, 200.0, 1e4] {
                let want = t / (2.0 * PI.sqrt()) * x.powf(-1.5) * (-t * t / (4.0 * x)).exp();
                let got = subordinator_density(s, x, t).unwrap();
                assert!((got - want).abs() <= 1e-11 * want.max(1e-300), "x={x} t={t}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn tail_series_and_integral_agree() {
        for &beta in &[0.2, 0.5, 0.8] {
            for &y in &[3.0, 10.0, 50.0] {
                if let Some(ts) = tail_series(beta, y) {
                    let iv = inversion_integral(beta, y).unwrap();
                    assert!((ts - iv).abs() < 1e-12 * iv, "beta={beta} y={y}");
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let s = SubordinatorParams::new(0.4).unwrap();
        assert!(subordinator_density(s, 0.0, 1.0).unwrap_err().is_domain());
        assert!(subordinator_density(s, 1.0, -1.0).unwrap_err().is_domain());
        assert!(SubordinatorParams::new(1.0).is_err());
        assert!(gamma_type_density(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn gamma_type_examples() {
        assert!((gamma_type_density(2.0, 1.0, 1.0).unwrap() - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let t = 1.7;
        let x = 0.9;
        assert!((gamma_type_density(1.0, x, t).unwrap() - (-x / t).exp() / t).abs() < 1e-15);
    }
}
