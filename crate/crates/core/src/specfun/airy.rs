use std::f64::consts::PI;

use crate::dd::Dd;

const C1: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const C2: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

/// Airy function Ai(x).
///
/// Maclaurin series in double-double for |x| ≤ 8, asymptotic expansions
/// beyond. Absolute error below 1e-10 on [-20, 20].
pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.abs() <= 8.0 {
        maclaurin(x)
    } else if x > 0.0 {
        asymptotic_pos(x)
    } else {
        asymptotic_neg(-x)
    }
}

fn maclaurin(x: f64) -> f64 {
    let x3 = Dd::from_f64(x).powi(3);
    let mut f_term = Dd::ONE;
    let mut g_term = Dd::from_f64(x);
    let mut f = f_term;
    let mut g = g_term;
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        f_term = f_term * x3 / ((k3 + 2.0) * (k3 + 3.0));
        g_term = g_term * x3 / ((k3 + 3.0) * (k3 + 4.0));
        f = f + f_term;
        g = g + g_term;
        if f_term.hi.abs() < 1e-34 && g_term.hi.abs() < 1e-34 {
            break;
        }
    }
    (C1 * f - C2 * g).to_f64()
}

/// Coefficients u_k of the large-argument expansions.
fn u_coeffs(n: usize) -> Vec<f64> {
    let mut u = vec![1.0; n];
    for k in 1..n {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

fn asymptotic_pos(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    if zeta > 745.0 {
        return 0.0;
    }
    let u = u_coeffs(80);
    let mut sum = 0.0;
    let mut pw = 1.0;
    let mut prev = f64::INFINITY;
    for (k, &uk) in u.iter().enumerate() {
        let term = uk * pw;
        if term.abs() > prev {
            break;
        }
        sum += if k % 2 == 0 { term } else { -term };
        prev = term.abs();
        if prev < 1e-17 {
            break;
        }
        pw /= zeta;
    }
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn asymptotic_neg(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let u = u_coeffs(80);
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut pw = 1.0;
    let mut prev = f64::INFINITY;
    for (k, &uk) in u.iter().enumerate() {
        let term = uk * pw;
        if term.abs() > prev {
            break;
        }
        // (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            even += sign * term;
        } else {
            odd += sign * term;
        }
        prev = term.abs();
        if prev < 1e-17 {
            break;
        }
        pw /= zeta;
    }
    let phase = zeta + PI / 4.0;
    (phase.sin() * even - phase.cos() * odd) / (PI.sqrt() * x.powf(0.25))
}
