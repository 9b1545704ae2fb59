//! Fourier multipliers of the Weyl, Riesz, Feller and ℜ operators and the
//! limit characteristic functions of the four pseudoprocess families.
//!
//! Transform convention: f̂(ξ) = ∫ e^{iξx} f(x) dx, so the plus-side
//! (left-sided) Weyl derivative has symbol (−iξ)^γ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ComplexSymbol, Family, ModelParams, Parity};
use crate::specfun::sin_pi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Left-sided derivative, integral over (−∞, x]; symbol (−iξ)^γ.
    Plus,
    /// Right-sided derivative, integral over [x, ∞); symbol (iξ)^γ.
    Minus,
}

/// sign(ξ) with sign(0) = 0.
pub fn sign(xi: f64) -> f64 {
    if xi > 0.0 {
        1.0
    } else if xi < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn check_order(gamma_ord: f64) -> Result<()> {
    if gamma_ord > 0.0 && gamma_ord.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("operator order must be positive, got {gamma_ord}")))
    }
}

/// |ξ|^γ e^{i·phase}, zero at ξ = 0.
fn polar(xi: f64, gamma_ord: f64, phase: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(xi.abs().powf(gamma_ord), phase)
}

/// (∓iξ)^γ = |ξ|^γ e^{∓iπγ/2·sign(ξ)}, principal branch.
pub fn weyl_symbol(gamma_ord: f64, side: Side, xi: f64) -> Result<ComplexSymbol> {
    check_order(gamma_ord)?;
    let s = match side {
        Side::Plus => -1.0,
        Side::Minus => 1.0,
    };
    Ok(polar(xi, gamma_ord, s * PI * gamma_ord / 2.0 * sign(xi)))
}

/// True when γ is an odd integer, where cos(πγ/2) = 0.
pub fn is_odd_integer(gamma_ord: f64) -> bool {
    gamma_ord == gamma_ord.round() && (gamma_ord.round() as i64) % 2 != 0
}

/// Riesz symbol −|ξ|^γ.
pub fn riesz_symbol(gamma_ord: f64, xi: f64) -> Result<f64> {
    check_order(gamma_ord)?;
    Ok(-xi.abs().powf(gamma_ord))
}

/// The Riesz symbol assembled from the two Weyl symbols,
/// −[(−iξ)^γ + (iξ)^γ] / (2cos(πγ/2)). `None` for odd-integer γ, where
/// the assembly is 0/0 and the check is skipped.
pub fn riesz_assembled(gamma_ord: f64, xi: f64) -> Result<Option<f64>> {
    if is_odd_integer(gamma_ord) {
        check_order(gamma_ord)?;
        return Ok(None);
    }
    let s = weyl_symbol(gamma_ord, Side::Plus, xi)? + weyl_symbol(gamma_ord, Side::Minus, xi)?;
    Ok(Some(-s.re / (2.0 * (PI * gamma_ord / 2.0).cos())))
}

/// Feller symbol together with the modulus condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FellerSymbol {
    pub value: ComplexSymbol,
    /// Set when cos(θπ/2) ∉ (0, 1], i.e. e^{tΨ} is not bounded by 1.
    pub growth: bool,
    /// Set when θ lies outside every window 4m−1 < θ < 4m+1 (reported only).
    pub outside_window: bool,
}

/// cos(θπ/2) ∉ (0, 1].
pub fn feller_growth_flag(theta: f64) -> bool {
    // cos(πθ/2) = sin(π(θ+1)/2), exact zero at odd integers θ
    let c = sin_pi(0.5 * (theta + 1.0));
    !(c > 0.0 && c <= 1.0)
}

/// θ outside every interval (4m−1, 4m+1), m ∈ ℤ.
pub fn feller_window_flag(theta: f64) -> bool {
    let m = (theta / 4.0).round();
    let r = theta - 4.0 * m;
    !(r > -1.0 && r < 1.0)
}

/// −|ξ|^γ e^{iπθ/2·sign(ξ)}.
pub fn feller_symbol(gamma_ord: f64, theta: f64, xi: f64) -> Result<FellerSymbol> {
    check_order(gamma_ord)?;
    Ok(FellerSymbol {
        value: -polar(xi, gamma_ord, PI * theta / 2.0 * sign(xi)),
        growth: feller_growth_flag(theta),
        outside_window: feller_window_flag(theta),
    })
}

fn require_odd(m: &ModelParams) -> Result<()> {
    if m.parity == Parity::Odd {
        Ok(())
    } else {
        Err(Error::domain("the ℜ operator is defined for odd parity only"))
    }
}

/// Symbol of ℜ: −|ξ|^α (1 − i·sign(ξ)(p−q)tan(βπ/2)), α = β(2k+1).
pub fn rfrak_symbol(m: &ModelParams, xi: f64) -> Result<ComplexSymbol> {
    require_odd(m)?;
    if xi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = xi.abs().powf(m.alpha());
    let tan = (m.beta * PI / 2.0).tan();
    Ok(Complex64::new(-a, a * sign(xi) * (m.p - m.q) * tan))
}

/// The weighted Weyl combination
/// −[p e^{iπβk}(−iξ)^α + q e^{−iπβk}(iξ)^α] / cos(βπ/2)
/// evaluated for ξ ≥ 0; for ξ < 0 the Hermitian extension (complex
/// conjugate of the value at −ξ) is returned, which is the symbol of the
/// real operator the combination defines.
pub fn rfrak_assembled(m: &ModelParams, xi: f64) -> Result<ComplexSymbol> {
    require_odd(m)?;
    if xi < 0.0 {
        return Ok(rfrak_assembled(m, -xi)?.conj());
    }
    let alpha = m.alpha();
    let phase = PI * m.beta * m.k as f64;
    let plus = Complex64::from_polar(m.p, phase) * weyl_symbol(alpha, Side::Plus, xi)?;
    let minus = Complex64::from_polar(m.q, -phase) * weyl_symbol(alpha, Side::Minus, xi)?;
    Ok(-(plus + minus) / (m.beta * PI / 2.0).cos())
}

/// Log of the limit characteristic function, so that CF = exp(t·exponent).
pub fn limit_exponent(m: &ModelParams, family: Family, xi: f64) -> Result<Complex64> {
    m.check_family(family)?;
    if xi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = m.alpha();
    Ok(match family {
        Family::Even => Complex64::new(-xi.abs().powf(a), 0.0),
        Family::OddPq => rfrak_symbol(m, xi)?,
        Family::Feller => match m.parity {
            Parity::Odd => feller_symbol(a, m.theta, xi)?.value,
            Parity::Even => {
                let c = (PI * m.theta / 2.0).cos() / (PI * m.beta / 2.0).cos();
                Complex64::new(-c * xi.abs().powf(a), 0.0)
            }
        },
    })
}

/// Limit characteristic function E e^{iξX(t)} of the family:
/// even: e^{−t|ξ|^{2kβ}};
/// odd_pq: e^{−t|ξ|^α(1 − i·sign(ξ)(p−q)tan(βπ/2))};
/// feller (odd parity): e^{−t|ξ|^α e^{iπθ/2·sign(ξ)}};
/// feller (even parity): e^{−t|ξ|^{2kβ} cos(πθ/2)/cos(πβ/2)}.
pub fn limit_cf(m: &ModelParams, family: Family, xi: f64, t: f64) -> Result<ComplexSymbol> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("time must be positive, got {t}")));
    }
    Ok((limit_exponent(m, family, xi)? * t).exp())
}
