//! Defaults for every command. Each run echoes its effective values into
//! the JSON `meta.params` block.
//!
//! | flag          | default                 | used by                          |
//! |---------------|-------------------------|----------------------------------|
//! | `--family`    | `even`                  | density, cf, converge, mc, residual |
//! | `--beta`      | 0.5                     | model commands, sojourn          |
//! | `--k`         | 1                       | model commands, sojourn          |
//! | `--p`         | 0.7                     | odd_pq family                    |
//! | `--theta`     | 0.25                    | feller family                    |
//! | `--parity`    | `odd`                   | feller family, sojourn           |
//! | `--t`         | 1                       | all time-dependent commands      |
//! | `--xmin/xmax` | −10 / 10                | density, residual                |
//! | `--n`         | 401                     | grids                            |
//! | `--h`         | 1e-2                    | residual                         |
//! | `--dt`        | 1e-3                    | residual                         |
//! | `--gammas`    | 0.5,0.1,0.02,0.004      | converge                         |
//! | `--xi-max`    | 5, 41 points            | cf, symbols, converge            |
//! | `--scale`     | 0.1                     | mc                               |
//! | `--samples`   | 100000                  | mc                               |
//! | `--seed`      | 1                       | mc                               |

pub const BETA: f64 = 0.5;
pub const K: u32 = 1;
pub const P: f64 = 0.7;
pub const THETA: f64 = 0.25;
pub const T: f64 = 1.0;
pub const XMIN: f64 = -10.0;
pub const XMAX: f64 = 10.0;
pub const N: usize = 401;
pub const H: f64 = 1e-2;
pub const DT: f64 = 1e-3;
pub const GAMMAS: &str = "0.5,0.1,0.02,0.004";
pub const XI_MAX: f64 = 5.0;
pub const XI_N: usize = 41;
pub const SCALE: f64 = 0.1;
pub const SAMPLES: usize = 100_000;
pub const SEED: u64 = 1;
pub const SOJOURN_XMIN: f64 = 1e-3;
pub const SOJOURN_XMAX: f64 = 1e3;
pub const SOJOURN_N: usize = 121;
