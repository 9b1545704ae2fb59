//! Double-double arithmetic (about 32 significant digits).
//!
//! Only what the alternating series in this crate need: the four
//! operations, `exp`, `ln` and a log-gamma for real arguments.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);

// B_{2k} / (2k(2k-1)) for k = 1..14, as (hi, lo) pairs.
const STIRLING: [(f64, f64); 14] = [
    (0.08333333333333333, 4.625929269271485e-18),
    (-0.002777777777777778, 1.0601087908747154e-19),
    (0.0007936507936507937, 6.883823317368282e-22),
    (-0.0005952380952380953, 5.36938218754726e-20),
    (0.0008417508417508417, 3.6870174889237694e-20),
    (-0.0019175269175269176, 1.0675702776872475e-19),
    (0.00641025641025641, 2.2240044563805217e-19),
    (-0.029550653594771242, 4.861760957508855e-19),
    (0.17964437236883057, -6.401600482710946e-19),
    (-1.3924322169059011, 1.5837056989230303e-17),
    (13.402864044168393, -6.154114101993966e-16),
    (-156.84828462600203, 9.391823141715389e-15),
    (2193.1033333333335, -1.3339255626002948e-13),
    (-36108.77125372499, 5.897583353514365e-13),
];

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Exact product of two doubles.
    pub fn mul_f64s(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd::new(p, e)
    }

    fn scale_pow2(self, k: i32) -> Self {
        Dd::new(libm::scalbn(self.hi, k), libm::scalbn(self.lo, k))
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).scale_pow2(-10);
        // expm1(r) by Taylor series, then undo the 2^-10 scaling with
        // expm1(2r) = 2 expm1(r) + expm1(r)^2.
        let mut term = r;
        let mut s = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / n;
            s = s + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        for _ in 0..10 {
            s = s.scale_pow2(1) + s.sqr();
        }
        let e = s + 1.0;
        let k = k as i32;
        // Split the scaling so that subnormal results are not flushed early.
        if k < -1000 {
            e.scale_pow2(k + 60).scale_pow2(-60)
        } else {
            e.scale_pow2(k)
        }
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - 1.0
    }

    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = Dd::ONE;
        let mut m = n;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            m >>= 1;
        }
        acc
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: Dd) -> Dd {
    assert!(x.hi > 0.0, "ln_gamma needs a positive argument");
    let mut shift = Dd::ONE;
    let mut z = x;
    while z.hi < 30.0 {
        shift = shift * z;
        z = z + 1.0;
    }
    let zr = z.recip();
    let zr2 = zr.sqr();
    let mut corr = Dd::ZERO;
    let mut pw = zr;
    for &(hi, lo) in STIRLING.iter() {
        corr = corr + Dd::new(hi, lo) * pw;
        pw = pw * zr2;
    }
    let stirling = (z - 0.5) * z.ln() - z + HALF_LN_2PI + corr;
    if shift.hi == 1.0 && shift.lo == 0.0 {
        stirling
    } else {
        stirling - shift.ln()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (s, e) = quick_two_sum(s, e + f);
        Dd::new(s, e)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let (s, e) = quick_two_sum(s, e + self.lo);
        Dd::new(s, e)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (p, e) = quick_two_sum(p, e);
        Dd::new(p, e)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (p, e) = quick_two_sum(p, e + self.lo * b);
        Dd::new(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd::new(q1, q2) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-3, 0.5, 1.0, 2.5, 17.0, 123.456] {
            let y = Dd::from_f64(x).ln().exp();
            assert!(((y - x).to_f64() / x).abs() < 1e-30, "x = {x}");
        }
    }

    #[test]
    fn exp_one_is_e() {
        // e = 2.718281828459045 + 1.4456468917292502e-16
        let e = Dd::ONE.exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.4456468917292502e-16).abs() < 1e-31);
    }

    #[test]
    fn ln_gamma_integers_and_half() {
        // ln Γ(n) = ln((n-1)!)
        let mut fact = Dd::ONE;
        for n in 1..40u32 {
            if n > 1 {
                fact = fact * (n - 1) as f64;
            }
            let d = ln_gamma(Dd::from_f64(n as f64)) - fact.ln();
            assert!(d.to_f64().abs() < 1e-28, "n = {n}: {d:?}");
        }
        // ln Γ(1/2) = ln √π = 0.57236494292470008707171367567652935582
        let v = ln_gamma(Dd::from_f64(0.5));
        let want = Dd::new(0.5723649429247001, 5.132975581353913e-18);
        assert!((v - want).to_f64().abs() < 1e-30);
    }
}
