use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{Error, Result};
use crate::quad::{integrate_to_inf, QuadOpts};

/// Below this modulus the lower incomplete gamma series is used.
const SERIES_RADIUS: f64 = 1.5;

/// Upper incomplete gamma Γ(a, z) = ∫_z^∞ e^{−u} u^{a−1} du for a > 0 and
/// Re z ≥ 0, principal branch of u^{a−1}.
///
/// Small |z|: Γ(a) − z^a Σ (−z)^n / (n!(a+n)). Otherwise the path is moved
/// to the horizontal ray z + r, r ≥ 0, giving e^{−z} ∫_0^∞ e^{−r}(z+r)^{a−1} dr.
pub fn upper_incomplete_gamma(a: f64, z: Complex64) -> Result<Complex64> {
    if !(a > 0.0) || z.re < 0.0 || !z.is_finite() {
        return Err(Error::domain(format!("incomplete gamma needs a > 0 and Re z >= 0, got a = {a}, z = {z}")));
    }
    if z.norm() <= SERIES_RADIUS {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(gamma(a), 0.0));
        }
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(1.0 / a, 0.0);
        for n in 1..200 {
            term *= -z / n as f64;
            let add = term / (a + n as f64);
            sum += add;
            if add.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        return Ok(Complex64::new(gamma(a), 0.0) - z.powf(a) * sum);
    }
    let r = integrate_to_inf(
        |r: f64| (-r).exp() * (z + r).powf(a - 1.0),
        0.0,
        QuadOpts::new(1e-15, 1e-13),
    )?;
    Ok((-z).exp() * r.value)
}
