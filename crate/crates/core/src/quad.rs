//! Adaptive Gauss-Kronrod (10/21 point) quadrature for real and complex
//! integrands, plus the Wynn epsilon accelerator used on alternating
//! sequences of panel integrals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980171347,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// One 21-point Kronrod rule on [a, b]: (estimate, error estimate).
pub fn gk21<T: Scalar, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let (v, e, _) = gk21_floor(f, a, b);
    (v, e)
}

/// `gk21` plus the roundoff floor 50ε·∫|f| that bounds its error from below.
fn gk21_floor<T: Scalar, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut resabs = fc.modulus() * WGK[10];
    for j in 0..10 {
        let dx = hl * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.modulus() + f2.modulus());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).modulus();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).modulus() + (fv2[j] - mean).modulus());
    }
    let habs = hl.abs();
    let result = resk * hl;
    resabs *= habs;
    resasc *= habs;
    let mut err = ((resk - resg) * hl).modulus();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    (result, err, floor)
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

impl QuadOpts {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOpts {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    floor: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration over a finite interval: the piece with the
/// largest error estimate is bisected until the summed error meets
/// `max(abs_tol, rel_tol * |I|)`, or until at least half of it is the
/// roundoff floor of the rule, where further bisection cannot help.
pub fn integrate<T: Scalar, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOpts,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: 0.0,
            intervals: 0,
        });
    }
    let (v, e, fl) = gk21_floor(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e, floor: fl });
    let mut total = v;
    let mut total_err = e;
    let mut total_floor = fl;
    // Pieces too narrow to split further; their error is kept but frozen.
    let mut frozen_err = 0.0;
    let mut frozen_val = T::zero();
    let mut count = 1;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.modulus());
        if total_err <= tol || total_err <= 2.0 * total_floor {
            break;
        }
        if count >= opts.max_intervals {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                value: total.modulus(),
                error: total_err,
                detail: format!("{count} subintervals on [{a}, {b}]"),
            });
        }
        let Some(worst) = heap.pop() else {
            if frozen_err <= 10.0 * tol {
                break;
            }
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                value: total.modulus(),
                error: total_err,
                detail: format!("roundoff limit reached on [{a}, {b}]"),
            });
        };
        let m = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a).abs() <= 64.0 * f64::EPSILON * (worst.a.abs() + worst.b.abs()) {
            frozen_err += worst.error;
            frozen_val = frozen_val + worst.value;
            continue;
        }
        let (v1, e1, f1) = gk21_floor(&mut f, worst.a, m);
        let (v2, e2, f2) = gk21_floor(&mut f, m, worst.b);
        total = total - worst.value + v1 + v2;
        total_err += e1 + e2 - worst.error;
        total_floor += f1 + f2 - worst.floor;
        heap.push(Piece { a: worst.a, b: m, value: v1, error: e1, floor: f1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, error: e2, floor: f2 });
        count += 1;
    }
    // Re-add the pieces to avoid drift from the running updates.
    let mut value = frozen_val;
    let mut error = frozen_err;
    for p in heap.iter() {
        value = value + p.value;
        error += p.error;
    }
    Ok(QuadResult {
        value,
        error,
        intervals: count,
    })
}

/// Integral over [a, ∞) via x = a + u/(1-u).
pub fn integrate_to_inf<T: Scalar, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    opts: QuadOpts,
) -> Result<QuadResult<T>> {
    integrate(
        |u: f64| {
            let w = 1.0 - u;
            let x = a + u / w;
            let y = f(x);
            if y.modulus() == 0.0 {
                T::zero()
            } else {
                y * (1.0 / (w * w))
            }
        },
        0.0,
        1.0,
        opts,
    )
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the accelerated limit and the difference between its last two estimates.
pub fn wynn_epsilon(partial: &[f64]) -> (f64, f64) {
    let n = partial.len();
    if n < 3 {
        let last = partial.last().copied().unwrap_or(0.0);
        return (last, f64::INFINITY);
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut best = partial[n - 1];
    let mut best_prev = partial[n - 2];
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let e = if d == 0.0 { f64::INFINITY } else { prev[i + 1] + 1.0 / d };
            next.push(e);
        }
        prev = cur;
        cur = next;
        col += 1;
        // Even columns hold the accelerated estimates.
        if col % 2 == 0 {
            if cur.iter().any(|v| !v.is_finite()) {
                break;
            }
            let l = cur.len();
            best_prev = if l >= 2 { cur[l - 2] } else { best };
            best = cur[l - 1];
        }
    }
    (best, (best - best_prev).abs())
}
