use clap::{Args, ValueEnum};
use serde::Serialize;

use fracpseudo::invert::{
    density_asymmetric, density_at_zero, density_cosine, density_ml_integral, density_probabilistic,
    density_series, density_series_or_cosine, evaluate_on_grid, total_mass,
};
use fracpseudo::sojourn::{mass_on_half_line, sojourn_density, sojourn_half_closed, sojourn_mass, SojournParams};
use fracpseudo::specfun::{airy_ai, mittag_leffler, subordinator_density, MLParams, SubordinatorParams};
use fracpseudo::symbols::{feller_symbol, limit_cf, riesz_assembled, riesz_symbol, weyl_symbol, Side};
use fracpseudo::walks::{convergence_report, mc_walk_cf, prelimit_cf, WalkParams};
use fracpseudo::{fracops, Family, GridSpec, ModelParams, Parity, Spacing};

use crate::defaults as d;
use crate::output::{Cell, Table};
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Even,
    #[value(name = "odd_pq", alias = "odd")]
    OddPq,
    Feller,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Even)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = d::BETA)]
    pub beta: f64,
    #[arg(long, default_value_t = d::K)]
    pub k: u32,
    /// Weight of positive jumps for the odd_pq family.
    #[arg(long, default_value_t = d::P)]
    pub p: f64,
    /// Feller skewness; checked against −β < θ < β whenever given.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Parity of the Feller family.
    #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
    pub parity: ParityArg,
}

impl ModelArgs {
    /// Model and family with the parity implied by the family.
    pub fn build(&self) -> Result<(ModelParams, Family), Failure> {
        let (family, parity) = match self.family {
            FamilyArg::Even => (Family::Even, Parity::Even),
            FamilyArg::OddPq => (Family::OddPq, Parity::Odd),
            FamilyArg::Feller => (Family::Feller, self.parity.into()),
        };
        let theta = self.effective_theta();
        let m = ModelParams::new(self.beta, self.k, parity, self.p, theta)?;
        if self.theta.is_some() {
            m.check_theta()?;
        }
        m.check_family(family)?;
        Ok((m, family))
    }

    fn effective_theta(&self) -> f64 {
        match (self.theta, self.family) {
            (Some(t), _) => t,
            (None, FamilyArg::Feller) => d::THETA,
            (None, _) => 0.0,
        }
    }

    /// Records the default θ so the echoed parameters are the ones used.
    pub fn resolve(&mut self) {
        if self.family == FamilyArg::Feller && self.theta.is_none() {
            self.theta = Some(d::THETA);
        }
    }
}

fn uniform_grid(xmin: f64, xmax: f64, n: usize) -> Result<GridSpec, Failure> {
    Ok(GridSpec::uniform(xmin, xmax, n)?)
}

fn xi_grid(xi_max: f64, n: usize) -> Result<Vec<f64>, Failure> {
    if xi_max.is_nan() || xi_max <= 0.0 {
        return Err(Failure::invalid("--xi-max must be positive"));
    }
    Ok(uniform_grid(-xi_max, xi_max, n)?.points())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Series where it converges, cosine transform otherwise.
    Auto,
    Cosine,
    Series,
    Ml,
    Probabilistic,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Order γ of the symmetric equation ∂_t v = −(−Δ)^{γ/2} v; overrides the family.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::XMIN, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = d::XMAX, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = d::N)]
    pub n: usize,
}

impl DensityArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        self.model.resolve();
        let grid = uniform_grid(self.xmin, self.xmax, self.n)?;
        let t = self.t;
        let mut table = Table::new(&["x", "t", "value"]);
        let symmetric = match self.gamma {
            Some(g) => Some((g, None)),
            None => {
                let (m, f) = self.model.build()?;
                (f == Family::Even).then_some((m.alpha(), Some(m)))
            }
        };
        let samples = match symmetric {
            Some((g, model)) => {
                let route = self.route;
                let eval = move |x: f64, t: f64| match route {
                    Route::Auto => density_series_or_cosine(g, x, t),
                    Route::Cosine => density_cosine(g, x, t),
                    Route::Series => density_series(g, x, t, 4000),
                    Route::Ml => density_ml_integral(g, x, t),
                    Route::Probabilistic => match model {
                        None => Err(fracpseudo::Error::Domain(
                            "the probabilistic route needs --family even instead of --gamma".into(),
                        )),
                        Some(_) if x == 0.0 => Ok(density_at_zero(g, t)),
                        Some(m) => density_probabilistic(&m, x, t),
                    },
                };
                let at_zero = if route == Route::Probabilistic {
                    density_cosine(g, 0.0, t)?
                } else {
                    eval(0.0, t)?
                };
                table.note("value_at_zero_error", (at_zero - density_at_zero(g, t)).abs());
                evaluate_on_grid(&grid, t, eval)?
            }
            None => {
                if self.route != Route::Auto {
                    return Err(Failure::invalid("asymmetric families support only --route auto"));
                }
                let (m, f) = self.model.build()?;
                // the mass is a diagnostic: heavy tails (α ≤ 1) may not settle
                // within the doubling budget, which should not abort the output
                match total_mass(&m, f, t) {
                    Ok(r) => {
                        table.note("total_mass", r.mass);
                        table.note("mass_change", r.change);
                        table.note("mass_converged", true);
                    }
                    Err(fracpseudo::Error::NonConvergence { value, .. }) => {
                        table.note("total_mass", value);
                        table.note("mass_converged", false);
                    }
                    Err(e) => return Err(e.into()),
                }
                evaluate_on_grid(&grid, t, |x, t| density_asymmetric(&m, f, x, t))?
            }
        };
        for s in samples {
            table.push(vec![Cell::F(s.x), Cell::F(s.t), Cell::F(s.value)]);
        }
        Ok(table)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CfArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::XI_MAX)]
    pub xi_max: f64,
    #[arg(long, default_value_t = d::XI_N)]
    pub xi_n: usize,
    /// Walk scale γ; adds the pre-limit walk CF as extra columns.
    #[arg(long)]
    pub scale: Option<f64>,
}

impl CfArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        self.model.resolve();
        let (m, f) = self.model.build()?;
        let xs = xi_grid(self.xi_max, self.xi_n)?;
        let walk = self.scale.map(|g| WalkParams::new(g, m)).transpose()?;
        let mut table = match walk {
            Some(_) => Table::new(&["xi", "re", "im", "walk_re", "walk_im"]),
            None => Table::new(&["xi", "re", "im"]),
        };
        let mut sup = 0.0f64;
        for &xi in &xs {
            let v = limit_cf(&m, f, xi, self.t)?;
            let mut row = vec![Cell::F(xi), Cell::F(v.re), Cell::F(v.im)];
            if let Some(w) = &walk {
                let u = prelimit_cf(w, f, xi, self.t)?;
                sup = sup.max((u - v).norm());
                row.extend([Cell::F(u.re), Cell::F(u.im)]);
            }
            table.push(row);
        }
        if walk.is_some() {
            table.note("walk_sup_distance", sup);
        }
        Ok(table)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct SymbolsArgs {
    /// Operator order γ.
    #[arg(long, default_value_t = 1.5)]
    pub gamma: f64,
    /// Feller skewness θ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = d::XI_MAX)]
    pub xi_max: f64,
    #[arg(long, default_value_t = d::XI_N)]
    pub xi_n: usize,
}

impl SymbolsArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        let xs = xi_grid(self.xi_max, self.xi_n)?;
        let g = self.gamma;
        let mut table = Table::new(&[
            "xi",
            "weyl_plus_re",
            "weyl_plus_im",
            "weyl_minus_re",
            "weyl_minus_im",
            "riesz",
            "feller_re",
            "feller_im",
        ]);
        let mut assembly = None::<f64>;
        let mut growth = false;
        let mut window = false;
        for &xi in &xs {
            let p = weyl_symbol(g, Side::Plus, xi)?;
            let q = weyl_symbol(g, Side::Minus, xi)?;
            let r = riesz_symbol(g, xi)?;
            let fs = feller_symbol(g, self.theta, xi)?;
            growth = fs.growth;
            window = fs.outside_window;
            if let Some(a) = riesz_assembled(g, xi)? {
                let e = (a - r).abs();
                assembly = Some(assembly.map_or(e, |m| m.max(e)));
            }
            table.push(vec![
                Cell::F(xi),
                Cell::F(p.re),
                Cell::F(p.im),
                Cell::F(q.re),
                Cell::F(q.im),
                Cell::F(r),
                Cell::F(fs.value.re),
                Cell::F(fs.value.im),
            ]);
        }
        table.note("riesz_assembly_max_diff", assembly);
        table.note("feller_growth", growth);
        table.note("feller_outside_window", window);
        Ok(table)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Strictly decreasing walk scales.
    #[arg(long, value_delimiter = ',', default_value = d::GAMMAS)]
    pub gammas: Vec<f64>,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::XI_MAX)]
    pub xi_max: f64,
    #[arg(long, default_value_t = d::XI_N)]
    pub xi_n: usize,
}

impl ConvergeArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        self.model.resolve();
        let (m, f) = self.model.build()?;
        let xs = xi_grid(self.xi_max, self.xi_n)?;
        let report = convergence_report(&m, f, &xs, &self.gammas, self.t)?;
        let mut table = Table::new(&["gamma", "sup_error"]);
        for r in &report.rows {
            table.push(vec![Cell::F(r.scale_gamma), Cell::F(r.sup_error)]);
        }
        table.note("strictly_decreasing", report.strictly_decreasing());
        table.note("final_error", report.final_error());
        table.note("argmax_xi", report.rows.iter().map(|r| r.argmax_xi).collect::<Vec<_>>());
        Ok(table)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Walk scale γ.
    #[arg(long, default_value_t = d::SCALE)]
    pub scale: f64,
    /// Frequencies at which the CF is estimated.
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub xi: Vec<f64>,
    #[arg(long, default_value_t = d::SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = d::SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
}

impl McArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        self.model.resolve();
        let (m, f) = self.model.build()?;
        let w = WalkParams::new(self.scale, m)?;
        let mut table = Table::new(&["xi", "re", "im", "stderr", "n", "seed"]);
        let mut worst = 0.0f64;
        for &xi in &self.xi {
            let e = mc_walk_cf(&w, f, xi, self.t, self.samples, self.seed)?;
            let exact = prelimit_cf(&w, f, xi, self.t)?;
            if e.std_error > 0.0 {
                worst = worst.max((e.value - exact).norm() / e.std_error);
            }
            table.push(vec![
                Cell::F(xi),
                Cell::F(e.value.re),
                Cell::F(e.value.im),
                Cell::F(e.std_error),
                Cell::U(e.n_samples as u64),
                Cell::U(e.seed),
            ]);
        }
        table.note("max_standardized_deviation", worst);
        Ok(table)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::DT)]
    pub dt: f64,
    #[arg(long, default_value_t = d::H)]
    pub h: f64,
    #[arg(long, default_value_t = d::XMIN, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = d::XMAX, allow_negative_numbers = true)]
    pub xmax: f64,
}

impl ResidualArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        self.model.resolve();
        let (m, f) = self.model.build()?;
        let grid = GridSpec::with_step(self.xmin, self.xmax, self.h)?;
        let r = fracops::pde_residual(&m, f, self.t, self.dt, &grid)?;
        let mut table = Table::new(&["max_norm", "l2_norm", "interior_lo", "interior_hi", "skipped"]);
        table.push(vec![
            Cell::F(r.max_norm),
            Cell::F(r.l2_norm),
            Cell::U(r.interior.0 as u64),
            Cell::U(r.interior.1 as u64),
            Cell::B(r.skipped),
        ]);
        table.note("max_norm", r.max_norm);
        table.note("skip_reason", r.reason);
        Ok(table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpacingArg {
    Log,
    Uniform,
}

#[derive(Args, Debug, Serialize)]
pub struct SojournArgs {
    #[arg(long, default_value_t = d::BETA)]
    pub beta: f64,
    #[arg(long, default_value_t = d::K)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
    pub parity: ParityArg,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::SOJOURN_XMIN)]
    pub xmin: f64,
    #[arg(long, default_value_t = d::SOJOURN_XMAX)]
    pub xmax: f64,
    #[arg(long, default_value_t = d::SOJOURN_N)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Log)]
    pub spacing: SpacingArg,
    /// Closed form for the Brownian-type mixing kernel; ignores β, k and parity.
    #[arg(long)]
    pub closed: bool,
}

impl SojournArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        let spacing = match self.spacing {
            SpacingArg::Log => Spacing::Log,
            SpacingArg::Uniform => Spacing::Uniform,
        };
        let grid = GridSpec::new(self.xmin, self.xmax, self.n, spacing)?;
        let t = self.t;
        let mut table = Table::new(&["x", "t", "value"]);
        let samples = if self.closed {
            let mass = mass_on_half_line(|x| sojourn_half_closed(t, x), t * t)?;
            table.note("mass", mass);
            evaluate_on_grid(&grid, t, |x, t| sojourn_half_closed(t, x))?
        } else {
            let s = SojournParams::new(self.beta, self.k, self.parity.into(), t)?;
            table.note("mass", sojourn_mass(&s)?);
            evaluate_on_grid(&grid, t, |x, _| sojourn_density(&s, x))?
        };
        for s in samples {
            table.push(vec![Cell::F(s.x), Cell::F(s.t), Cell::F(s.value)]);
        }
        Ok(table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Function {
    /// E_{ν,μ}(x).
    Ml,
    /// Ai(x).
    Airy,
    /// Stable subordinator density h_β(x, t).
    Stable,
}

#[derive(Args, Debug, Serialize)]
pub struct SpecfunArgs {
    #[arg(long, value_enum)]
    pub function: Function,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = d::BETA)]
    pub beta: f64,
    #[arg(long, default_value_t = d::T)]
    pub t: f64,
    #[arg(long, default_value_t = d::XMIN, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = d::XMAX, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = d::N)]
    pub n: usize,
}

impl SpecfunArgs {
    pub fn run(&mut self) -> Result<Table, Failure> {
        let grid = uniform_grid(self.xmin, self.xmax, self.n)?;
        let samples = match self.function {
            Function::Ml => {
                let p = MLParams::new(self.nu, self.mu)?;
                evaluate_on_grid(&grid, self.t, |x, _| mittag_leffler(p, x))?
            }
            Function::Airy => evaluate_on_grid(&grid, self.t, |x, _| Ok(airy_ai(x)))?,
            Function::Stable => {
                let s = SubordinatorParams::new(self.beta)?;
                evaluate_on_grid(&grid, self.t, |x, t| subordinator_density(s, x, t))?
            }
        };
        let mut table = Table::new(&["x", "value"]);
        for s in samples {
            table.push(vec![Cell::F(s.x), Cell::F(s.value)]);
        }
        Ok(table)
    }
}
