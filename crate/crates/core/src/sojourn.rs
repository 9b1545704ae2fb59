//! Laws of the sojourn time on [0, ∞) of pseudoprocesses stopped at a
//! stable subordinator: the conditional (arcsine or Lamperti-type) law
//! mixed over h_β(s, t).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::Parity;
use crate::quad::{integrate, integrate_to_inf, QuadOpts};
use crate::specfun::{mittag_leffler, subordinator_density, MLParams, SubordinatorParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SojournParams {
    pub beta: f64,
    pub k: u32,
    pub parity: Parity,
    pub t: f64,
}

impl SojournParams {
    pub fn new(beta: f64, k: u32, parity: Parity, t: f64) -> Result<Self> {
        SubordinatorParams::new(beta)?;
        if k == 0 {
            return Err(Error::domain("k must be a positive integer"));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("time must be positive, got {t}")));
        }
        Ok(SojournParams { beta, k, parity, t })
    }

    /// Order of the underlying pseudoprocess, 2k or 2k+1.
    pub fn order(&self) -> u32 {
        match self.parity {
            Parity::Even => 2 * self.k,
            Parity::Odd => 2 * self.k + 1,
        }
    }
}

const OPTS: QuadOpts = QuadOpts {
    abs_tol: 0.0,
    rel_tol: 1e-10,
    max_intervals: 2000,
};

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("sojourn density needs x > 0, got {x}")))
    }
}

/// ∫_0^∞ h_β(x + r^m, t) dr, integrated in ρ = r/L with L the larger of
/// the scales x^{1/m} and t^{1/(mβ)}.
fn mixed_integral(s: &SojournParams, x: f64, m: u32) -> Result<f64> {
    let sub = SubordinatorParams::new(s.beta)?;
    let mf = m as f64;
    let scale = x.powf(1.0 / mf) + s.t.powf(1.0 / (mf * s.beta));
    let failed = std::cell::Cell::new(None);
    let r = integrate_to_inf(
        |rho: f64| {
            let r = scale * rho;
            match subordinator_density(sub, x + r.powi(m as i32), s.t) {
                Ok(v) => v,
                Err(e) => {
                    failed.set(Some(e));
                    0.0
                }
            }
        },
        0.0,
        OPTS,
    )?;
    if let Some(e) = failed.take() {
        return Err(e);
    }
    Ok(scale * r.value)
}

/// (1/π) ∫_x^∞ h_β(s, t) / √(x(s−x)) ds, computed as
/// (2/(π√x)) ∫_0^∞ h_β(x + r², t) dr.
pub fn sojourn_even_density(s: &SojournParams, x: f64) -> Result<f64> {
    if s.parity != Parity::Even {
        return Err(Error::domain("the arcsine sojourn law needs even parity"));
    }
    check_x(x)?;
    Ok(2.0 / (PI * x.sqrt()) * mixed_integral(s, x, 2)?)
}

/// (sin(π/m)/π) ∫_x^∞ x^{−1/m} (s−x)^{−(m−1)/m} h_β(s, t) ds with m = 2k+1,
/// computed as (sin(π/m)/π) x^{−1/m} m ∫_0^∞ h_β(x + r^m, t) dr.
pub fn sojourn_odd_density(s: &SojournParams, x: f64) -> Result<f64> {
    if s.parity != Parity::Odd {
        return Err(Error::domain("the odd-order sojourn law needs odd parity"));
    }
    check_x(x)?;
    let m = s.order();
    let mf = m as f64;
    Ok((PI / mf).sin() / PI * x.powf(-1.0 / mf) * mf * mixed_integral(s, x, m)?)
}

/// Sojourn density for either parity.
pub fn sojourn_density(s: &SojournParams, x: f64) -> Result<f64> {
    match s.parity {
        Parity::Even => sojourn_even_density(s, x),
        Parity::Odd => sojourn_odd_density(s, x),
    }
}

/// Closed form for β = 1/2: t/(π√(2x³)) E_{1,3/2}(−t²/(2x)).
///
/// The mixing kernel here is t e^{−t²/(2s)}/√(2πs³), whose Laplace
/// transform is e^{−t√(2λ)}; it equals the even sojourn density with
/// β = 1/2 at subordinator time t√2.
pub fn sojourn_half_closed(t: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    let e = mittag_leffler(MLParams::new(1.0, 1.5)?, -t * t / (2.0 * x))?;
    Ok(t / (PI * 2f64.sqrt()) * x.powf(-1.5) * e)
}

/// Range of u = ln(x/center) covered by [`mass_on_half_line`]: the mass
/// below is O(e^{−LOG_LEFT/2}) for an x^{−1/2} origin singularity, the mass
/// above is O(e^{−β·LOG_RIGHT}) for an x^{−1−β} tail.
pub const LOG_LEFT: f64 = 80.0;
pub const LOG_RIGHT: f64 = 200.0;

/// ∫_0^∞ f(x) dx for a density on (0, ∞), integrated in u = ln(x/center)
/// over [−LOG_LEFT, LOG_RIGHT], which handles the x^{−1/2}-type origin
/// singularity and the power-law tail.
pub fn mass_on_half_line<F: Fn(f64) -> Result<f64>>(f: F, center: f64) -> Result<f64> {
    let failed = std::cell::Cell::new(None);
    let g = |u: f64| -> f64 {
        let x = center * u.exp();
        if x == 0.0 || !x.is_finite() {
            return 0.0;
        }
        match f(x) {
            Ok(v) => v * x,
            Err(e) => {
                failed.set(Some(e));
                0.0
            }
        }
    };
    let opts = QuadOpts::new(1e-12, 1e-9);
    let left = integrate(&g, -LOG_LEFT, 0.0, opts)?.value;
    let right = integrate(&g, 0.0, LOG_RIGHT, opts)?.value;
    if let Some(e) = failed.take() {
        return Err(e);
    }
    Ok(left + right)
}

/// Total mass of the sojourn density of `s`.
pub fn sojourn_mass(s: &SojournParams) -> Result<f64> {
    mass_on_half_line(|x| sojourn_density(s, x), s.t.powf(1.0 / s.beta))
}
