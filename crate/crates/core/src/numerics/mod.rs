//! Shared numerical kernels: bracketing root finder, scalar maximization,
//! adaptive quadrature, adaptive ODE integration and truncated power series.

mod ode;
mod optimize;
mod quadrature;
mod roots;
mod series;

pub use ode::{ode_solve, ode_solve_with, OdeNode, OdeOptions, OdeTrajectory};
pub use optimize::find_maximum;
pub use quadrature::{integrate, integrate_semi_infinite};
pub use roots::{find_root, Bracket};
pub use series::{PowerSeries, DEFAULT_SERIES_ORDER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid bracket [{lo}, {hi}]: lo must be finite and below hi")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("quadrature tolerance not met: estimate {estimate:e} with error {error:e}")]
    ToleranceNotMet { estimate: f64, error: f64 },
    #[error("step size underflow at t = {t} (h = {h:e}); likely a pole or blow-up")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step budget of {steps} exhausted at t = {t}")]
    StepBudgetExhausted { t: f64, steps: usize },
    #[error("series not invertible: {0}")]
    NotInvertible(&'static str),
    #[error("series composition requires an inner series without constant term")]
    NonZeroConstant,
}

pub type Result<T> = std::result::Result<T, NumericsError>;
