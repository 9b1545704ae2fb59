//! Pseudo random walks: compound Poisson sums of Pareto-scaled pseudo
//! random variables, their closed-form characteristic functions, the
//! γ → 0 convergence check, and a Monte Carlo estimator over the genuinely
//! random components (N, ε_j, Q_j).
//!
//! Odd pseudo variables are taken with E e^{iξU(1)} = e^{iξ^{2k+1}}, the
//! sign under which the walk limits reproduce the stated limit laws.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ComplexSymbol, Family, ModelParams, Parity};
use crate::specfun::{gamma, upper_incomplete_gamma};
use crate::symbols::limit_cf;

/// Samples per Monte Carlo chunk; chunk c draws from stream c of the seed.
pub const MC_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkParams {
    /// The vanishing scale γ of the Q variables.
    pub scale_gamma: f64,
    pub model: ModelParams,
    /// Poisson rate, fixed to 1/Γ(1−β).
    pub lambda: f64,
}

impl WalkParams {
    pub fn new(scale_gamma: f64, model: ModelParams) -> Result<Self> {
        if !(scale_gamma > 0.0 && scale_gamma.is_finite()) {
            return Err(Error::domain(format!("walk scale must be positive, got {scale_gamma}")));
        }
        Ok(WalkParams {
            scale_gamma,
            model,
            lambda: 1.0 / gamma(1.0 - model.beta),
        })
    }

    /// Exponent of the step power law: 2kβ (even) or (2k+1)β (odd).
    pub fn alpha(&self) -> f64 {
        self.model.alpha()
    }

    fn step_power(&self) -> i32 {
        self.model.base_order() as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CFEstimate {
    pub value: Complex64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// P(Q > w) for the Pareto variable with scale γ and index α.
pub fn q_survival(scale_gamma: f64, alpha: f64, w: f64) -> f64 {
    if w < scale_gamma {
        1.0
    } else {
        (scale_gamma / w).powf(alpha)
    }
}

/// 1 − e^{−w} without cancellation for small |w|.
fn one_minus_exp(w: Complex64) -> Complex64 {
    if w.norm() > 0.5 {
        return Complex64::new(1.0, 0.0) - (-w).exp();
    }
    let mut term = w;
    let mut sum = w;
    for n in 2..40 {
        term *= -w / n as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// β ∫_{g}^∞ (1 − e^{−ωu}) u^{−β−1} du
///   = (1 − e^{−ωg}) g^{−β} + ω^β Γ(1−β, ωg),   Re ω ≥ 0.
///
/// With U = (|ζ|Q)^m Pareto of index β above g = (|ζ|γ)^m, a component whose
/// conditional step CF is e^{−ωU} has log CF −λt|ζ|^{mβ} · walk_kernel.
fn walk_kernel(beta: f64, omega: Complex64, g: f64) -> Result<Complex64> {
    let z = omega * g;
    let first = one_minus_exp(z) * g.powf(-beta);
    Ok(first + omega.powf(beta) * upper_incomplete_gamma(1.0 - beta, z)?)
}

/// One compound-Poisson component with step c·Q·U: returns its log CF at ξ.
/// `sigma` = ±1 is the sign in front of the odd pseudo variable.
fn component_log_cf(w: &WalkParams, weight: f64, sigma: f64, xi: f64, t: f64) -> Result<Complex64> {
    let beta = w.model.beta;
    let alpha = w.alpha();
    let m = w.step_power();
    // |ζ| = |ξ| c with c^α = weight
    let zeta = xi.abs() * weight.powf(1.0 / alpha);
    let g = (zeta * w.scale_gamma).powi(m);
    let omega = match w.model.parity {
        Parity::Even => Complex64::new(1.0, 0.0),
        // e^{iσ(ξcQ)^m} = e^{−ωU} with ω = −iσ·sign(ξ)
        Parity::Odd => Complex64::new(0.0, -sigma * xi.signum()),
    };
    Ok(-w.lambda * t * zeta.powf(alpha) * walk_kernel(beta, omega, g)?)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be positive, got {t}")))
    }
}

/// CF of Σ_{j ≤ N(tγ^{−2kβ})} U_j^{2k}(1) Q_j.
pub fn prelimit_cf_even(w: &WalkParams, xi: f64, t: f64) -> Result<ComplexSymbol> {
    check_time(t)?;
    if w.model.parity != Parity::Even {
        return Err(Error::domain("the even walk needs even parity"));
    }
    if xi == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(component_log_cf(w, 1.0, 1.0, xi, t)?.exp())
}

/// CF of Σ_{j ≤ N(tγ^{−(2k+1)β})} ε_j U_j^{2k+1}(1) Q_j.
pub fn prelimit_cf_odd(w: &WalkParams, xi: f64, t: f64) -> Result<ComplexSymbol> {
    check_time(t)?;
    if w.model.parity != Parity::Odd {
        return Err(Error::domain("the odd walk needs odd parity"));
    }
    if xi == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let m = &w.model;
    let plus = component_log_cf(w, 1.0, 1.0, xi, t)?;
    let minus = component_log_cf(w, 1.0, -1.0, xi, t)?;
    Ok((plus * m.p + minus * m.q).exp())
}

/// Weights sin(π(β∓θ)/2)/sin(πβ) of the two Feller sums.
pub fn feller_walk_weights(m: &ModelParams) -> Result<(f64, f64)> {
    m.check_theta()?;
    let s = (PI * m.beta).sin();
    Ok(((PI * (m.beta - m.theta) / 2.0).sin() / s, (PI * (m.beta + m.theta) / 2.0).sin() / s))
}

/// CF of the Feller combination c_X Σ X_j U_j ∓ c_Y Σ Y_j U_j with
/// c^α equal to the weights above; the minus sign is used for odd parity.
pub fn prelimit_cf_feller(w: &WalkParams, xi: f64, t: f64) -> Result<ComplexSymbol> {
    check_time(t)?;
    let (wx, wy) = feller_walk_weights(&w.model)?;
    if xi == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let x = component_log_cf(w, wx, 1.0, xi, t)?;
    let y = component_log_cf(w, wy, -1.0, xi, t)?;
    Ok((x + y).exp())
}

pub fn prelimit_cf(w: &WalkParams, family: Family, xi: f64, t: f64) -> Result<ComplexSymbol> {
    w.model.check_family(family)?;
    match family {
        Family::Even => prelimit_cf_even(w, xi, t),
        Family::OddPq => prelimit_cf_odd(w, xi, t),
        Family::Feller => prelimit_cf_feller(w, xi, t),
    }
}

/// The γ → 0 limit of the walk CF. For the odd (p, q) walk this is the ℜ
/// law at time t·cos(πβ/2); the other families match `limit_cf` at t.
pub fn walk_limit_cf(m: &ModelParams, family: Family, xi: f64, t: f64) -> Result<ComplexSymbol> {
    let tt = if family == Family::OddPq {
        t * (PI * m.beta / 2.0).cos()
    } else {
        t
    };
    limit_cf(m, family, xi, tt)
}

/// Product over one Poisson sum of conditional pseudo CFs.
fn sample_component<R: Rng>(
    rng: &mut R,
    w: &WalkParams,
    poisson: &Poisson<f64>,
    scaled_xi: f64,
    sigma: f64,
    p: Option<f64>,
) -> Complex64 {
    let n = poisson.sample(rng) as u64;
    let alpha = w.alpha();
    let m = w.step_power();
    let mut log = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        let eps = match p {
            Some(p) => {
                if rng.random::<f64>() < p {
                    1.0
                } else {
                    -1.0
                }
            }
            None => 1.0,
        };
        let u = 1.0 - rng.random::<f64>();
        let q = w.scale_gamma * u.powf(-1.0 / alpha);
        let s = (scaled_xi * q).powi(m);
        log += match w.model.parity {
            Parity::Even => Complex64::new(-s.abs(), 0.0),
            Parity::Odd => Complex64::new(0.0, sigma * eps * s),
        };
    }
    log.exp()
}

/// Monte Carlo estimate of the pre-limit CF: samples N, ε_j and Q_j and
/// multiplies the exact conditional pseudo CFs e^{iε(ξQ)^{2k+1}} (odd) or
/// e^{−|ξQ|^{2k}} (even).
///
/// Samples are split into chunks of [`MC_CHUNK`]; chunk c uses ChaCha8
/// seeded by `seed` on stream c, and chunk sums are merged in order, so the
/// result does not depend on the number of worker threads.
pub fn mc_walk_cf(w: &WalkParams, family: Family, xi: f64, t: f64, n: usize, seed: u64) -> Result<CFEstimate> {
    check_time(t)?;
    w.model.check_family(family)?;
    if n == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    if xi == 0.0 {
        return Ok(CFEstimate {
            value: Complex64::new(1.0, 0.0),
            std_error: 0.0,
            n_samples: n,
            seed,
        });
    }
    let alpha = w.alpha();
    let mean = w.lambda * t * w.scale_gamma.powf(-alpha);
    let poisson = Poisson::new(mean).map_err(|e| Error::domain(format!("Poisson mean {mean}: {e}")))?;
    let parts: Vec<(f64, f64)> = match family {
        Family::Feller => {
            let (wx, wy) = feller_walk_weights(&w.model)?;
            let ysign = if w.model.parity == Parity::Odd { -1.0 } else { 1.0 };
            vec![(wx.powf(1.0 / alpha), 1.0), (wy.powf(1.0 / alpha), ysign)]
        }
        _ => vec![(1.0, 1.0)],
    };
    let p = (family == Family::OddPq).then_some(w.model.p);
    let chunks = n.div_ceil(MC_CHUNK);
    let sums: Vec<(Complex64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut s = Complex64::new(0.0, 0.0);
            let mut s2 = 0.0;
            for _ in 0..len {
                let mut v = Complex64::new(1.0, 0.0);
                for &(scale, sigma) in &parts {
                    v *= sample_component(&mut rng, w, &poisson, xi * scale, sigma, p);
                }
                s += v;
                s2 += v.norm_sqr();
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), &(c, d)| (a + c, b + d));
    let nf = n as f64;
    let value = s / nf;
    let var = if n > 1 {
        ((s2 - nf * value.norm_sqr()) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(CFEstimate {
        value,
        std_error: (var / nf).sqrt(),
        n_samples: n,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub scale_gamma: f64,
    /// sup over the ξ grid of |prelimit − limit|.
    pub sup_error: f64,
    /// ξ at which the sup is attained.
    pub argmax_xi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub family: Family,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|r| r[1].sup_error < r[0].sup_error)
    }

    pub fn final_error(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.sup_error)
    }

    /// Decreasing along the sequence and final error below `threshold`.
    pub fn passes(&self, threshold: f64) -> bool {
        self.strictly_decreasing() && self.final_error() < threshold
    }
}

/// Sup-norm distance between the pre-limit and limit CFs on `xi_grid` for
/// each scale in `gamma_seq` (strictly decreasing).
pub fn convergence_report(
    model: &ModelParams,
    family: Family,
    xi_grid: &[f64],
    gamma_seq: &[f64],
    t: f64,
) -> Result<ConvergenceReport> {
    model.check_family(family)?;
    if gamma_seq.windows(2).any(|g| !(g[1] < g[0])) {
        return Err(Error::domain("scale sequence must be strictly decreasing"));
    }
    let limits: Vec<Complex64> = xi_grid
        .iter()
        .map(|&xi| walk_limit_cf(model, family, xi, t))
        .collect::<Result<_>>()?;
    let rows = gamma_seq
        .iter()
        .map(|&g| {
            let w = WalkParams::new(g, *model)?;
            let errs: Vec<f64> = xi_grid
                .par_iter()
                .zip(&limits)
                .map(|(&xi, lim)| prelimit_cf(&w, family, xi, t).map(|v| (v - lim).norm()))
                .collect::<Result<_>>()?;
            let (i, e) = errs
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &e)| if e > acc.1 { (i, e) } else { acc });
            Ok(ConvergenceRow {
                scale_gamma: g,
                sup_error: e,
                argmax_xi: xi_grid.get(i).copied().unwrap_or(f64::NAN),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceReport { family, rows })
}
