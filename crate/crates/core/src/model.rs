//! Parameter and sample types shared by all modules.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value of a Fourier multiplier Ψ(ξ).
pub type ComplexSymbol = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Base order 2k.
    Even,
    /// Base order 2k+1.
    Odd,
}

/// Pseudoprocess family whose limit law is being described.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Symmetric even-order family, e^{-t|ξ|^{2kβ}}.
    Even,
    /// Odd-order family with jump-sign weights p, q.
    OddPq,
    /// Feller-weighted family (odd or even parity).
    Feller,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Even => "even",
            Family::OddPq => "odd_pq",
            Family::Feller => "feller",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Family::Even),
            "odd_pq" | "odd" => Ok(Family::OddPq),
            "feller" => Ok(Family::Feller),
            _ => Err(Error::domain(format!("unknown family `{s}` (expected even, odd_pq or feller)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub beta: f64,
    pub k: u32,
    pub parity: Parity,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
}

impl ModelParams {
    /// Validates 0<β<1, k≥1, p∈[0,1] (q = 1-p) and a finite θ.
    pub fn new(beta: f64, k: u32, parity: Parity, p: f64, theta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::domain(format!("beta must satisfy 0 < beta < 1, got {beta}")));
        }
        if k == 0 {
            return Err(Error::domain("k must be a positive integer"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("p must lie in [0, 1], got {p}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain("theta must be finite"));
        }
        Ok(ModelParams {
            beta,
            k,
            parity,
            p,
            q: 1.0 - p,
            theta,
        })
    }

    pub fn even(beta: f64, k: u32) -> Result<Self> {
        Self::new(beta, k, Parity::Even, 0.5, 0.0)
    }

    pub fn odd(beta: f64, k: u32, p: f64) -> Result<Self> {
        Self::new(beta, k, Parity::Odd, p, 0.0)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    /// 2k for even parity, 2k+1 for odd.
    pub fn base_order(&self) -> u32 {
        match self.parity {
            Parity::Even => 2 * self.k,
            Parity::Odd => 2 * self.k + 1,
        }
    }

    /// Effective order α = β·(2k) or β·(2k+1).
    pub fn alpha(&self) -> f64 {
        self.beta * self.base_order() as f64
    }

    /// Checks that `family` matches the parity and, for the Feller family,
    /// that −β < θ < β.
    pub fn check_family(&self, family: Family) -> Result<()> {
        match (family, self.parity) {
            (Family::Even, Parity::Odd) => Err(Error::domain("family `even` needs even parity")),
            (Family::OddPq, Parity::Even) => Err(Error::domain("family `odd_pq` needs odd parity")),
            (Family::Feller, _) => self.check_theta(),
            _ => Ok(()),
        }
    }

    pub fn check_theta(&self) -> Result<()> {
        if self.theta.abs() < self.beta {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "Feller skewness must satisfy -beta < theta < beta (got theta = {}, beta = {})",
                self.theta, self.beta
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize, spacing: Spacing) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::domain(format!("grid needs x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n < 2 {
            return Err(Error::domain("grid needs n >= 2"));
        }
        if spacing == Spacing::Log && x_min <= 0.0 {
            return Err(Error::domain("log grid needs x_min > 0"));
        }
        Ok(GridSpec { x_min, x_max, n, spacing })
    }

    pub fn uniform(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        Self::new(x_min, x_max, n, Spacing::Uniform)
    }

    /// Uniform grid with step `h` covering [x_min, x_max] (x_max rounded to a multiple of h).
    pub fn with_step(x_min: f64, x_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::domain("grid step must be positive"));
        }
        let n = ((x_max - x_min) / h).round() as usize + 1;
        Self::uniform(x_min, x_min + (n - 1) as f64 * h, n)
    }

    /// Spacing of a uniform grid; `None` for log grids.
    pub fn step(&self) -> Option<f64> {
        match self.spacing {
            Spacing::Uniform => Some((self.x_max - self.x_min) / (self.n - 1) as f64),
            Spacing::Log => None,
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        let s = i as f64 / (self.n - 1) as f64;
        match self.spacing {
            Spacing::Uniform => {
                if i + 1 == self.n {
                    self.x_max
                } else {
                    self.x_min + s * (self.x_max - self.x_min)
                }
            }
            Spacing::Log => (self.x_min.ln() + s * (self.x_max / self.x_min).ln()).exp(),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

/// One evaluated point of a (possibly signed) density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedDensitySample {
    pub x: f64,
    pub t: f64,
    pub value: f64,
}
