//! Grünwald-Letnikov approximations of the Weyl derivatives on uniform
//! grids, the operators assembled from them, a spectral reference route,
//! and the PDE residual check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::invert::{density_asymmetric, density_cosine, evaluate_on_grid};
use crate::model::{Family, GridSpec, ModelParams, Parity, Spacing};
use crate::symbols::{is_odd_integer, weyl_symbol, Side};

#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::domain(format!(
                "sample count {} does not match grid size {}",
                values.len(),
                grid.n
            )));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().into_iter().map(f).collect();
        SampledFunction { grid, values }
    }

    /// Grid spacing; a domain error for non-uniform grids.
    pub fn step(&self) -> Result<f64> {
        match self.grid.spacing {
            Spacing::Uniform => Ok(self.grid.step().unwrap_or(0.0)),
            Spacing::Log => Err(Error::domain("Grünwald-Letnikov needs a uniform grid")),
        }
    }
}

/// Output of a physical-space operator. Values within `edge_band` cells of
/// either end are affected by the zero extension and are not trusted.
#[derive(Clone, Debug, PartialEq)]
pub struct GlOutput {
    pub f: SampledFunction,
    pub edge_band: usize,
}

/// Generalized binomial weights w_j = (−1)^j C(γ, j) by
/// w_{j+1} = w_j (j − γ)/(j + 1).
pub fn gl_weights(gamma_ord: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    if n == 0 {
        return w;
    }
    w.push(1.0);
    for j in 0..n - 1 {
        let prev = w[j];
        w.push(prev * (j as f64 - gamma_ord) / (j as f64 + 1.0));
    }
    w
}

/// Shift of the GL stencil, round(γ/2).
pub fn gl_shift(gamma_ord: f64) -> usize {
    (gamma_ord / 2.0).round() as usize
}

fn edge_band(weights: &[f64], shift: usize, n: usize) -> usize {
    let reach = weights.iter().rposition(|w| w.abs() > 1e-12).map_or(0, |i| i + 1);
    (reach + shift).min(n / 4)
}

/// Linear convolution c[m] = Σ_j a[j] b[m−j] for m < out_len.
fn convolve(a: &[f64], b: &[f64], out_len: usize) -> Vec<f64> {
    let size = (a.len() + b.len()).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fa: Vec<Complex64> = a.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fa.resize(size, Complex64::new(0.0, 0.0));
    let mut fb: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fb.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inv.process(&mut fa);
    fa.iter().take(out_len).map(|c| c.re / size as f64).collect()
}

/// Shifted GL approximation of the plus-side derivative with zero extension:
/// D₊f(x_i) ≈ h^{−γ} Σ_{j=0}^{i+s} w_j f(x_{i+s−j}).
fn gl_plus(gamma_ord: f64, values: &[f64], h: f64, shift: usize) -> (Vec<f64>, usize) {
    let n = values.len();
    let w = gl_weights(gamma_ord, n + shift);
    let c = convolve(values, &w, n + shift);
    let scale = h.powf(-gamma_ord);
    let out = c[shift..shift + n].iter().map(|v| v * scale).collect();
    (out, edge_band(&w, shift, n))
}

/// First-order Grünwald-Letnikov approximation of the Weyl derivative of
/// order γ on the given side, using the shift round(γ/2).
pub fn weyl_gl(gamma_ord: f64, side: Side, f: &SampledFunction) -> Result<GlOutput> {
    if !(gamma_ord > 0.0 && gamma_ord.is_finite()) {
        return Err(Error::domain(format!("order must be positive, got {gamma_ord}")));
    }
    let h = f.step()?;
    let shift = gl_shift(gamma_ord);
    let (values, band) = match side {
        Side::Plus => gl_plus(gamma_ord, &f.values, h, shift),
        Side::Minus => {
            let rev: Vec<f64> = f.values.iter().rev().copied().collect();
            let (mut out, band) = gl_plus(gamma_ord, &rev, h, shift);
            out.reverse();
            (out, band)
        }
    };
    Ok(GlOutput {
        f: SampledFunction { grid: f.grid, values },
        edge_band: band,
    })
}

/// Spectral route: multiplies the discrete Fourier transform of the
/// zero-padded samples by the Weyl symbol and transforms back.
pub fn weyl_spectral(gamma_ord: f64, side: Side, f: &SampledFunction) -> Result<SampledFunction> {
    let h = f.step()?;
    let n = f.values.len();
    let size = (16 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut buf: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        let ks = if k <= size / 2 { k as f64 } else { k as f64 - size as f64 };
        let eta = 2.0 * PI * ks / (size as f64 * h);
        let mut psi = weyl_symbol(gamma_ord, side, -eta)?;
        if 2 * k == size {
            psi = Complex64::new(psi.re, 0.0);
        }
        *c *= psi;
    }
    inv.process(&mut buf);
    let values = buf.iter().take(n).map(|c| c.re / size as f64).collect();
    Ok(SampledFunction { grid: f.grid, values })
}

/// Real weights (a, b) with a·(−iξ)^γ + b·(iξ)^γ equal to
/// −|ξ|^γ (c_re + i·sign(ξ)·c_im).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylWeights {
    pub plus: f64,
    pub minus: f64,
}

/// Solves (a+b)cos(πγ/2) = −c_re, (b−a)sin(πγ/2) = −c_im. Integer orders
/// make one equation degenerate; they are accepted only when the matching
/// right-hand side vanishes.
pub fn real_weights(gamma_ord: f64, c_re: f64, c_im: f64) -> Result<WeylWeights> {
    let half = gamma_ord / 2.0;
    let cos_a = crate::specfun::sin_pi(half + 0.5);
    let sin_a = crate::specfun::sin_pi(half);
    let sum = if cos_a != 0.0 {
        -c_re / cos_a
    } else if c_re == 0.0 {
        0.0
    } else {
        return Err(Error::domain(format!(
            "cos(pi*gamma/2) = 0 at gamma = {gamma_ord}: the Weyl assembly is singular"
        )));
    };
    let diff = if sin_a != 0.0 {
        -c_im / sin_a
    } else if c_im == 0.0 {
        0.0
    } else {
        return Err(Error::domain(format!(
            "sin(pi*gamma/2) = 0 at gamma = {gamma_ord}: the asymmetric Weyl assembly is singular"
        )));
    };
    Ok(WeylWeights {
        plus: 0.5 * (sum - diff),
        minus: 0.5 * (sum + diff),
    })
}

/// Feller weights −sin(π(γ∓θ)/2)/sin(πγ) on the plus and minus sides.
pub fn feller_weights(gamma_ord: f64, theta: f64) -> Result<WeylWeights> {
    let s = crate::specfun::sin_pi(gamma_ord);
    if s == 0.0 {
        if theta == 0.0 {
            return real_weights(gamma_ord, 1.0, 0.0);
        }
        return Err(Error::domain(format!(
            "the Feller operator is undefined for integer order {gamma_ord} with theta != 0"
        )));
    }
    Ok(WeylWeights {
        plus: -(PI * (gamma_ord - theta) / 2.0).sin() / s,
        minus: -(PI * (gamma_ord + theta) / 2.0).sin() / s,
    })
}

fn combine(gamma_ord: f64, w: WeylWeights, f: &SampledFunction) -> Result<GlOutput> {
    let plus = weyl_gl(gamma_ord, Side::Plus, f)?;
    let minus = weyl_gl(gamma_ord, Side::Minus, f)?;
    let values = plus
        .f
        .values
        .iter()
        .zip(&minus.f.values)
        .map(|(a, b)| w.plus * a + w.minus * b)
        .collect();
    Ok(GlOutput {
        f: SampledFunction { grid: f.grid, values },
        edge_band: plus.edge_band.max(minus.edge_band),
    })
}

/// Riesz derivative −(D₊ + D₋)/(2cos(πγ/2)); rejected for odd-integer γ.
pub fn riesz_apply(gamma_ord: f64, f: &SampledFunction) -> Result<GlOutput> {
    if is_odd_integer(gamma_ord) {
        return Err(Error::domain(format!(
            "Riesz assembly is singular for odd-integer order {gamma_ord} (cos(pi*gamma/2) = 0)"
        )));
    }
    combine(gamma_ord, real_weights(gamma_ord, 1.0, 0.0)?, f)
}

/// Feller derivative with skewness θ.
pub fn feller_apply(gamma_ord: f64, theta: f64, f: &SampledFunction) -> Result<GlOutput> {
    if theta == 0.0 {
        return riesz_apply(gamma_ord, f);
    }
    combine(gamma_ord, feller_weights(gamma_ord, theta)?, f)
}

/// The ℜ operator of order α = β(2k+1), applied through the real Weyl
/// weights that reproduce its symbol −|ξ|^α(1 − i·sign(ξ)(p−q)tan(βπ/2)).
pub fn rfrak_apply(m: &ModelParams, f: &SampledFunction) -> Result<GlOutput> {
    if m.parity != Parity::Odd {
        return Err(Error::domain("the ℜ operator is defined for odd parity only"));
    }
    let a = m.alpha();
    let c_im = -(m.p - m.q) * (m.beta * PI / 2.0).tan();
    combine(a, real_weights(a, 1.0, c_im)?, f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// max_i |∂_t v − L v| over the interior.
    pub max_norm: f64,
    /// (h Σ_i |∂_t v − L v|²)^{1/2} over the interior.
    pub l2_norm: f64,
    /// Indices [lo, hi) of the interior points used.
    pub interior: (usize, usize),
    /// Set when the check is skipped; `reason` says why.
    pub skipped: bool,
    pub reason: Option<String>,
}

/// Compares the centered time difference (v(t+dt) − v(t−dt))/(2dt) of the
/// family's density with the matching GL operator applied to v(·, t).
pub fn pde_residual(m: &ModelParams, family: Family, t: f64, dt: f64, grid: &GridSpec) -> Result<ResidualReport> {
    m.check_family(family)?;
    if !(t > 0.0) || !(dt > 0.0) || dt >= t {
        return Err(Error::domain(format!("need 0 < dt < t, got t = {t}, dt = {dt}")));
    }
    let h = grid
        .step()
        .ok_or_else(|| Error::domain("the residual check needs a uniform grid"))?;
    let a = m.alpha();
    // Time factor c with ∂_t v = c·L v (only the even Feller family has c ≠ 1).
    let feller_even_scale = (PI * m.theta / 2.0).cos() / (PI * m.beta / 2.0).cos();
    let riesz_route = family == Family::Even || (family == Family::Feller && m.parity == Parity::Even);
    if riesz_route && is_odd_integer(a) {
        return Ok(ResidualReport {
            max_norm: f64::NAN,
            l2_norm: f64::NAN,
            interior: (0, 0),
            skipped: true,
            reason: Some(format!("Riesz assembly singular at odd-integer order {a}")),
        });
    }
    let density = |x: f64, s: f64| -> Result<f64> {
        match (family, m.parity) {
            (Family::Even, _) => density_cosine(a, x, s),
            (Family::Feller, Parity::Even) => density_cosine(a, x, s * feller_even_scale),
            _ => density_asymmetric(m, family, x, s),
        }
    };
    let v = evaluate_on_grid(grid, t, density)?;
    let vp = evaluate_on_grid(grid, t + dt, density)?;
    let vm = evaluate_on_grid(grid, t - dt, density)?;
    let f = SampledFunction::new(*grid, v.iter().map(|s| s.value).collect())?;
    let op = match (family, m.parity) {
        (Family::Even, _) => riesz_apply(a, &f)?,
        (Family::Feller, Parity::Even) => {
            let mut o = riesz_apply(a, &f)?;
            o.f.values.iter_mut().for_each(|v| *v *= feller_even_scale);
            o
        }
        (Family::Feller, Parity::Odd) => feller_apply(a, m.theta, &f)?,
        (Family::OddPq, _) => rfrak_apply(m, &f)?,
    };
    let lo = op.edge_band;
    let hi = grid.n - op.edge_band;
    let mut max_norm = 0.0f64;
    let mut sq = 0.0;
    for i in lo..hi {
        let r = (vp[i].value - vm[i].value) / (2.0 * dt) - op.f.values[i];
        max_norm = max_norm.max(r.abs());
        sq += r * r;
    }
    Ok(ResidualReport {
        max_norm,
        l2_norm: (h * sq).sqrt(),
        interior: (lo, hi),
        skipped: false,
        reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(h: f64) -> SampledFunction {
        let g = GridSpec::with_step(-8.0, 8.0, h).unwrap();
        SampledFunction::from_fn(g, |x| (-x * x).exp())
    }

    #[test]
    fn weights_are_binomial() {
        let w = gl_weights(2.0, 5);
        assert_eq!(w, vec![1.0, -2.0, 1.0, 0.0, 0.0]);
        let w = gl_weights(0.5, 3);
        assert!((w[1] + 0.5).abs() < 1e-16 && (w[2] + 0.125).abs() < 1e-16);
    }

    #[test]
    fn integer_order_two_is_second_derivative() {
        let f = gaussian(1e-3);
        let out = weyl_gl(2.0, Side::Plus, &f).unwrap();
        let pts = f.grid.points();
        let err = (10..pts.len() - 10)
            .map(|i| {
                let x = pts[i];
                (out.f.values[i] - (4.0 * x * x - 2.0) * (-x * x).exp()).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-5, "{err}");
    }

    #[test]
    fn feller_weights_match_solved_weights() {
        for &(g, th) in &[(1.5, 0.3), (0.7, -0.2), (2.6, 0.5)] {
            let a = feller_weights(g, th).unwrap();
            let b = real_weights(g, (PI * th / 2.0).cos(), (PI * th / 2.0).sin()).unwrap();
            assert!((a.plus - b.plus).abs() < 1e-12 && (a.minus - b.minus).abs() < 1e-12);
        }
        assert!(feller_weights(2.0, 0.3).is_err());
        assert!(riesz_apply(3.0, &gaussian(0.1)).is_err());
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let g = GridSpec::new(0.1, 10.0, 50, Spacing::Log).unwrap();
        let f = SampledFunction::from_fn(g, |x| x);
        assert!(weyl_gl(1.5, Side::Plus, &f).unwrap_err().is_domain());
    }
}
