//! Signed densities of the limit pseudoprocesses, evaluated by four
//! independent routes for the symmetric case and by direct characteristic
//! function inversion for the asymmetric families.
//!
//! All symmetric routes reduce to t = 1 through
//! v^γ(x, t) = t^{−1/γ} v^γ(x t^{−1/γ}, 1).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::model::{Family, GridSpec, ModelParams, Parity, SignedDensitySample};
use crate::quad::{integrate, wynn_epsilon, QuadOpts};
use crate::specfun::{gamma, mittag_leffler, MLParams};
use crate::symbols::limit_exponent;

/// e^{−CUTOFF} is where the characteristic function is treated as zero.
const CUTOFF: f64 = 40.0;
/// Beyond this many half-period panels the alternating panel sums are
/// extrapolated with the epsilon algorithm instead of summed to the cutoff.
const PANEL_CAP: usize = 4000;
/// The asymmetric integrands are not smooth at ξ = 0 (|ξ|^α), which puts
/// the roundoff floor of the summed panel errors near 1e-15.
const ASYM_OPTS: QuadOpts = QuadOpts { abs_tol: 1e-14, rel_tol: 1e-12, max_intervals: 2000 };

fn check_inputs(gamma_ord: f64, x: f64, t: f64) -> Result<()> {
    if !(gamma_ord > 0.0 && gamma_ord.is_finite()) {
        return Err(Error::domain(format!("order must be positive, got {gamma_ord}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    Ok(())
}

fn check_series_order(gamma_ord: f64) -> Result<()> {
    if gamma_ord > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("this representation needs gamma > 1, got {gamma_ord}")))
    }
}

/// v^γ(0, t) = t^{−1/γ} Γ(1 + 1/γ) / π.
pub fn density_at_zero(gamma_ord: f64, t: f64) -> f64 {
    t.powf(-1.0 / gamma_ord) * gamma(1.0 + 1.0 / gamma_ord) / PI
}

/// C_γ = Γ(1/γ + 1/3) Γ(1/γ + 2/3) 3^{3/γ − 1/2} / (2π), the curvature
/// constant of v^γ(x, t) ≈ v^γ(0, t)(1 − x² C_γ / (2 t^{2/γ})).
pub fn small_x_constant(gamma_ord: f64) -> f64 {
    let g = 1.0 / gamma_ord;
    gamma(g + 1.0 / 3.0) * gamma(g + 2.0 / 3.0) * 3f64.powf(3.0 * g - 0.5) / (2.0 * PI)
}

/// ∫_0^upper f over panels [z_{j}, z_{j+1}] with z_0 = 0 and
/// z_j = first + (j−1)·step; when more than `PANEL_CAP` panels would be
/// needed, the partial sums are extrapolated.
fn panel_integral<F: Fn(f64) -> f64>(f: F, first: f64, step: f64, upper: f64, opts: QuadOpts) -> Result<f64> {
    let mut sum = integrate(&f, 0.0, first.min(upper), opts)?.value;
    if first >= upper {
        return Ok(sum);
    }
    let n_panels = ((upper - first) / step).ceil() as usize;
    if n_panels <= PANEL_CAP {
        for j in 0..n_panels {
            let a = first + j as f64 * step;
            let b = (a + step).min(upper);
            sum += integrate(&f, a, b, opts)?.value;
        }
        return Ok(sum);
    }
    let mut partial = Vec::with_capacity(PANEL_CAP);
    for j in 0..PANEL_CAP {
        let a = first + j as f64 * step;
        sum += integrate(&f, a, a + step, opts)?.value;
        partial.push(sum);
    }
    let tail = &partial[PANEL_CAP - 40..];
    let (v, err) = wynn_epsilon(tail);
    if !(err <= 1e-10 * v.abs().max(1e-3)) {
        return Err(Error::NonConvergence {
            what: "extrapolated oscillatory integral",
            value: v,
            error: err,
            detail: format!("{PANEL_CAP} panels of width {step:e}"),
        });
    }
    Ok(v)
}

/// v^γ(x, t) = (1/π) ∫_0^∞ cos(ξx) e^{−tξ^γ} dξ.
///
/// Accepts any γ > 0 (γ = 1 gives the Cauchy density). The integral is
/// split at the zeros of cos(ξx); for small |x| a single adaptive
/// integral is used.
pub fn density_cosine(gamma_ord: f64, x: f64, t: f64) -> Result<f64> {
    check_inputs(gamma_ord, x, t)?;
    let scale = t.powf(-1.0 / gamma_ord);
    let y = (x * scale).abs();
    let upper = CUTOFF.powf(1.0 / gamma_ord);
    let f = |xi: f64| (xi * y).cos() * (-xi.powf(gamma_ord)).exp();
    let v = if y * upper <= 4.0 * PI {
        integrate(f, 0.0, upper, QuadOpts::new(1e-15, 1e-12))?.value
    } else {
        panel_integral(f, 0.5 * PI / y, PI / y, upper, QuadOpts::new(1e-15, 1e-12))?
    };
    Ok(scale * v / PI)
}

/// Power series (1/(πγ)) Σ_k (−1)^k x^{2k} Γ((2k+1)/γ) / ((2k)! t^{(2k+1)/γ}),
/// summed in double-double with at most `cap` terms.
///
/// Each term carries a relative error near 1e-29 (its logarithm is a
/// difference of numbers of size up to a few hundred), so the result is
/// rejected when 1e-29 times the largest term exceeds 1e-12; the error then
/// reports that largest term.
pub fn density_series(gamma_ord: f64, x: f64, t: f64, cap: usize) -> Result<f64> {
    check_inputs(gamma_ord, x, t)?;
    check_series_order(gamma_ord)?;
    let scale = t.powf(-1.0 / gamma_ord);
    let y = (x * scale).abs();
    let pref = scale / (PI * gamma_ord);
    if y == 0.0 {
        return Ok(pref * gamma(1.0 / gamma_ord));
    }
    let ly = Dd::from_f64(y).ln();
    let g = Dd::from_f64(gamma_ord);
    let mut sum = Dd::ZERO;
    let mut largest = 0.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..cap {
        let n = 2.0 * k as f64;
        let lt = ly * n + dd::ln_gamma(Dd::from_f64(n + 1.0) / g) - dd::ln_gamma(Dd::from_f64(n + 1.0));
        let term = lt.exp();
        let m = term.to_f64();
        if !m.is_finite() {
            break;
        }
        largest = largest.max(m);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
        if m < prev && m < 1e-33 * sum.to_f64().abs().max(1e-300) {
            if 1e-29 * largest > 1e-12 {
                break;
            }
            return Ok(pref * sum.to_f64());
        }
        prev = m;
    }
    Err(Error::NonConvergence {
        what: "density power series",
        value: pref * sum.to_f64(),
        error: pref * 1e-29 * largest,
        detail: format!("largest term {:e} (scaled {:e}) at x = {x}, t = {t}", largest, pref * largest),
    })
}

/// `density_series` with a fallback to `density_cosine` when the series is
/// outside its region of validity.
pub fn density_series_or_cosine(gamma_ord: f64, x: f64, t: f64) -> Result<f64> {
    match density_series(gamma_ord, x, t, 4000) {
        Ok(v) => Ok(v),
        Err(Error::NonConvergence { .. }) => density_cosine(gamma_ord, x, t),
        Err(e) => Err(e),
    }
}

/// Mittag-Leffler integral representation
/// v = t^{−1/γ}/(πγ) ∫_0^1 E_{ν,μ}(−y² s^{2/γ}(1−s)^{2−2/γ}) s^{1/γ−1}(1−s)^{−1/γ} ds,
/// ν = 2(1 − 1/γ), μ = 1 − 1/γ, y = x t^{−1/γ}.
///
/// The endpoint singularities are removed by s = u^γ on [0, ½] and by
/// 1 − s = u^{γ/(γ−1)} on [½, 1].
pub fn density_ml_integral(gamma_ord: f64, x: f64, t: f64) -> Result<f64> {
    check_inputs(gamma_ord, x, t)?;
    check_series_order(gamma_ord)?;
    let g = gamma_ord;
    let scale = t.powf(-1.0 / g);
    let y2 = (x * scale).powi(2);
    let ml = MLParams::new(2.0 * (1.0 - 1.0 / g), 1.0 - 1.0 / g)?;
    let arg = |s: f64, one_minus_s: f64| -> f64 {
        -y2 * s.powf(2.0 / g) * one_minus_s.powf(2.0 - 2.0 / g)
    };
    let opts = QuadOpts::new(1e-14, 1e-12);
    let failed = std::cell::Cell::new(None);
    let eval = |z: f64| -> f64 {
        match mittag_leffler(ml, z) {
            Ok(v) => v,
            Err(e) => {
                failed.set(Some(e));
                0.0
            }
        }
    };
    let left = integrate(
        |u: f64| {
            let s = u.powf(g);
            g * eval(arg(s, 1.0 - s)) * (1.0 - s).powf(-1.0 / g)
        },
        0.0,
        0.5f64.powf(1.0 / g),
        opts,
    )?;
    let e = g / (g - 1.0);
    let right = integrate(
        |u: f64| {
            let oms = u.powf(e);
            let s = 1.0 - oms;
            e * eval(arg(s, oms)) * s.powf(1.0 / g - 1.0)
        },
        0.0,
        0.5f64.powf(1.0 / e),
        opts,
    )?;
    if let Some(err) = failed.take() {
        return Err(err);
    }
    Ok(scale / (PI * g) * (left.value + right.value))
}

/// Probabilistic representation for the even family:
/// v(x, t) = (1/(πx)) E sin(x G), where G has the gamma-type density of
/// order α = 2kβ and scale 1/t, i.e. (1/(πx)) ∫_0^∞ sin(xy) α t y^{α−1} e^{−t y^α} dy.
///
/// x = 0 is a removable singularity of the 1/x prefactor and is rejected;
/// use [`density_at_zero`] there.
pub fn density_probabilistic(m: &ModelParams, x: f64, t: f64) -> Result<f64> {
    if m.parity != Parity::Even {
        return Err(Error::domain("the probabilistic representation needs even parity"));
    }
    let a = m.alpha();
    check_inputs(a, x, t)?;
    if x == 0.0 {
        return Err(Error::domain("x = 0 is excluded; the value there is t^{-1/gamma} Gamma(1+1/gamma)/pi"));
    }
    let scale = t.powf(-1.0 / a);
    let y = x * scale;
    let yy = y.abs();
    let upper = CUTOFF.powf(1.0 / a);
    let f = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let ua = u.powf(a);
        (u * yy).sin() * a * ua / u * (-ua).exp()
    };
    let v = if yy * upper <= 4.0 * PI {
        integrate(f, 0.0, upper, QuadOpts::new(1e-15, 1e-12))?.value
    } else {
        panel_integral(f, PI / yy, PI / yy, upper, QuadOpts::new(1e-15, 1e-12))?
    };
    Ok(scale * v / (PI * yy))
}

/// Density of an asymmetric family by inversion of its limit CF,
/// (1/π) ∫_0^∞ Re[e^{−iξx} φ(ξ, t)] dξ.
pub fn density_asymmetric(m: &ModelParams, family: Family, x: f64, t: f64) -> Result<f64> {
    check_inputs(m.alpha(), x, t)?;
    m.check_family(family)?;
    let (ex, decay) = cf_exponent_and_decay(m, family)?;
    let upper = (CUTOFF / (t * decay)).powf(1.0 / m.alpha());
    let f = |xi: f64| {
        let phi = (ex(xi) * t).exp();
        (Complex64::new(0.0, -xi * x).exp() * phi).re
    };
    let v = if x.abs() * upper <= 4.0 * PI {
        integrate(f, 0.0, upper, ASYM_OPTS)?.value
    } else {
        let step = PI / x.abs();
        panel_integral(f, step, step, upper, ASYM_OPTS)?
    };
    Ok(v / PI)
}

/// Exponent ξ ↦ log φ(ξ, 1) and the decay rate c in |φ| = e^{−tc|ξ|^α}.
fn cf_exponent_and_decay(m: &ModelParams, family: Family) -> Result<(impl Fn(f64) -> Complex64 + '_, f64)> {
    let decay = -limit_exponent(m, family, 1.0)?.re;
    if !(decay > 0.0) {
        return Err(Error::domain("characteristic function does not decay"));
    }
    Ok((move |xi: f64| limit_exponent(m, family, xi).unwrap_or_default(), decay))
}

/// Mass of the density over [−X, X], (2/π) ∫_0^∞ Re φ(ξ, t) sin(ξX)/ξ dξ.
pub fn mass_within(m: &ModelParams, family: Family, t: f64, big_x: f64) -> Result<f64> {
    m.check_family(family)?;
    let (ex, decay) = cf_exponent_and_decay(m, family)?;
    let upper = (CUTOFF / (t * decay)).powf(1.0 / m.alpha());
    let f = |xi: f64| {
        if xi == 0.0 {
            return big_x;
        }
        (ex(xi) * t).exp().re * (xi * big_x).sin() / xi
    };
    let v = if big_x * upper <= 4.0 * PI {
        integrate(f, 0.0, upper, ASYM_OPTS)?.value
    } else {
        let step = PI / big_x;
        panel_integral(f, step, step, upper, ASYM_OPTS)?
    };
    Ok(2.0 / PI * v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassReport {
    pub mass: f64,
    /// Truncation point X at which the mass was taken.
    pub radius: f64,
    /// |mass(X) − mass(X/2)| at the final step.
    pub change: f64,
}

/// Total mass over ℝ: the truncation point X is doubled until the mass
/// over [−X, X] changes by less than 1e-6.
pub fn total_mass(m: &ModelParams, family: Family, t: f64) -> Result<MassReport> {
    let mut x = 8.0 * t.powf(1.0 / m.alpha());
    let mut prev = mass_within(m, family, t, x)?;
    for _ in 0..16 {
        x *= 2.0;
        let cur = mass_within(m, family, t, x)?;
        let change = (cur - prev).abs();
        if change < 1e-6 {
            return Ok(MassReport { mass: cur, radius: x, change });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        what: "total mass",
        value: prev,
        error: f64::NAN,
        detail: format!("still changing at X = {x}"),
    })
}

/// Evaluates `f(x, t)` on the grid in parallel; output is in grid order.
pub fn evaluate_on_grid<F>(grid: &GridSpec, t: f64, f: F) -> Result<Vec<SignedDensitySample>>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    grid.points()
        .into_par_iter()
        .map(|x| f(x, t).map(|value| SignedDensitySample { x, t, value }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(x: f64, t: f64) -> f64 {
        (-x * x / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
    }

    #[test]
    fn gaussian_and_cauchy_at_zero() {
        assert!((density_cosine(2.0, 0.0, 1.0).unwrap() - 0.2820947917738782).abs() < 1e-12);
        assert!((density_cosine(1.0, 0.0, 1.0).unwrap() - 1.0 / PI).abs() < 1e-12);
        assert!((density_ml_integral(2.0, 0.0, 1.0).unwrap() - 0.2820947917738782).abs() < 1e-12);
    }

    #[test]
    fn gaussian_routes() {
        for &x in &[0.3, 1.0, 2.7] {
            let want = gauss(x, 1.0);
            assert!((density_series(2.0, x, 1.0, 500).unwrap() - want).abs() < 1e-12);
            assert!((density_ml_integral(2.0, x, 1.0).unwrap() - want).abs() < 1e-10);
            let m = ModelParams::even(0.5, 2).unwrap();
            assert!((density_probabilistic(&m, x, 1.0).unwrap() - want).abs() < 1e-10);
        }
        assert!((density_series(2.0, 1.0, 1.0, 500).unwrap() - 0.2196956447338612).abs() < 1e-12);
    }

    #[test]
    fn probabilistic_cauchy() {
        let m = ModelParams::even(0.5, 1).unwrap();
        assert!((density_probabilistic(&m, 1.0, 1.0).unwrap() - 0.5 / PI).abs() < 1e-10);
        assert!(density_probabilistic(&m, 0.0, 1.0).unwrap_err().is_domain());
    }

    #[test]
    fn series_guard_trips_far_out() {
        let r = density_series(2.5, 60.0, 1.0, 4000);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
        let v = density_series_or_cosine(2.5, 60.0, 1.0).unwrap();
        assert!((v - density_cosine(2.5, 60.0, 1.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn small_x_constant_matches_triplication() {
        for &g in &[1.5, 2.5, 3.0, 4.0, 5.5] {
            let c = small_x_constant(g);
            let direct = gamma(3.0 / g) / gamma(1.0 / g);
            assert!((c - direct).abs() < 1e-13 * direct);
        }
    }

    #[test]
    fn symmetric_reduction_of_asymmetric_route() {
        let m = ModelParams::odd(0.5, 1, 0.5).unwrap();
        for &x in &[-2.0, 0.0, 0.7, 5.0] {
            let a = density_asymmetric(&m, Family::OddPq, x, 1.3).unwrap();
            let c = density_cosine(1.5, x, 1.3).unwrap();
            assert!((a - c).abs() < 1e-12, "x = {x}");
        }
    }
}
