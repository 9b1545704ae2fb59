use std::f64::consts::PI;

/// Γ(x).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).floor();
    // r in [0, 2)
    let (r, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// (ln|1/Γ(x)|, sign of 1/Γ(x)); the sign is 0 at the poles of Γ.
pub fn ln_rgamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (-ln_gamma(x), 1.0);
    }
    if x == x.floor() {
        return (f64::NEG_INFINITY, 0.0);
    }
    // 1/Γ(x) = Γ(1-x) sin(πx) / π
    let s = sin_pi(x);
    (ln_gamma(1.0 - x) + (s.abs() / PI).ln(), s.signum())
}

/// 1/Γ(x), entire in x.
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 && x < 170.0 {
        return 1.0 / gamma(x);
    }
    let (l, s) = ln_rgamma_signed(x);
    s * l.exp()
}
