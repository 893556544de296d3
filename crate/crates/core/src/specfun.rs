//! Real special functions used by the Bratu closed forms: the error
//! function, modified Bessel functions I₀/I₁, modified Struve functions
//! L₀/L₁ and a couple of overflow-safe hyperbolic helpers.
//!
//! Bessel and Struve values come from their ascending series only. Every
//! caller in this crate stays below an argument of about 30, where the
//! all-positive series converge in well under a hundred terms.

use std::f64::consts::{FRAC_2_SQRT_PI, LN_2, PI};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{function}({x}) did not converge within {terms} terms")]
    NonConvergence { function: &'static str, x: f64, terms: usize },
    #[error("invalid accuracy spec: rel_tol = {rel_tol}, max_terms = {max_terms}")]
    InvalidAccuracy { rel_tol: f64, max_terms: usize },
    #[error("{function} requires a non-negative argument, got {x}")]
    NegativeArgument { function: &'static str, x: f64 },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

/// Stopping rule for the ascending series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracySpec {
    rel_tol: f64,
    max_terms: usize,
}

impl AccuracySpec {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) || max_terms == 0 {
            return Err(SpecfunError::InvalidAccuracy { rel_tol, max_terms });
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for AccuracySpec {
    fn default() -> Self {
        Self { rel_tol: 1e-14, max_terms: 200 }
    }
}

/// Order of the Bessel or Struve function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

impl Order {
    fn nu(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums a series of non-negative terms `t_k = t_{k-1} * ratio(k)`.
fn positive_series(
    function: &'static str,
    x: f64,
    first: f64,
    mut ratio: impl FnMut(usize) -> f64,
    acc: &AccuracySpec,
) -> Result<f64> {
    let mut sum = CompensatedSum::default();
    let mut term = first;
    sum.add(term);
    if term == 0.0 {
        return Ok(0.0);
    }
    for k in 1..acc.max_terms {
        let r = ratio(k);
        term *= r;
        sum.add(term);
        // Once the ratio drops below 1/2 the tail is bounded by the current term.
        if r < 0.5 && term <= acc.rel_tol * sum.value() {
            return Ok(sum.value());
        }
    }
    Err(SpecfunError::NonConvergence { function, x, terms: acc.max_terms })
}

/// Error function, accurate to a few ulps over the whole real line.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 3.0 {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// erf(x) = (2/√π) e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!, all terms positive.
fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut sum = CompensatedSum::default();
    let mut term = x;
    sum.add(term);
    for n in 1..400 {
        term *= 2.0 * x2 / (2 * n + 1) as f64;
        sum.add(term);
        if term <= 1e-17 * sum.value() {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum.value()
}

/// erfc(x) for x ≥ 3 by the Laplace continued fraction, modified Lentz.
fn erfc_continued_fraction(x: f64) -> f64 {
    if x > 27.0 {
        return 0.0;
    }
    // erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let a = n as f64 / 2.0;
        d = x + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = x + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

fn check_nonnegative(function: &'static str, x: f64) -> Result<()> {
    if x < 0.0 || x.is_nan() {
        Err(SpecfunError::NegativeArgument { function, x })
    } else {
        Ok(())
    }
}

/// Modified Bessel function of the first kind, Iν(x) for ν ∈ {0, 1}.
pub fn bessel_i(order: Order, x: f64, acc: &AccuracySpec) -> Result<f64> {
    check_nonnegative("bessel_i", x)?;
    let nu = order.nu();
    let q = 0.25 * x * x;
    let first = match order {
        Order::Zero => 1.0,
        Order::One => 0.5 * x,
    };
    positive_series("bessel_i", x, first, |k| q / (k as f64 * (k as f64 + nu)), acc)
}

/// Modified Struve function Lν(x) for ν ∈ {0, 1}.
pub fn struve_l(order: Order, x: f64, acc: &AccuracySpec) -> Result<f64> {
    check_nonnegative("struve_l", x)?;
    let nu = order.nu();
    let q = 0.25 * x * x;
    // Leading terms (x/2)^{ν+1} / (Γ(3/2) Γ(ν+3/2)).
    let first = match order {
        Order::Zero => 2.0 * x / PI,
        Order::One => 2.0 * x * x / (3.0 * PI),
    };
    positive_series(
        "struve_l",
        x,
        first,
        |k| q / ((k as f64 + 0.5) * (k as f64 + nu + 0.5)),
        acc,
    )
}

/// ∫₀¹ exp(A sin πx) dx, which equals I₀(A) + L₀(A).
///
/// This is the nonlinear part of the action for the `A sin(πx)` trial.
pub fn sinh_poisson_integral(a: f64, acc: &AccuracySpec) -> Result<f64> {
    Ok(bessel_i(Order::Zero, a, acc)? + struve_l(Order::Zero, a, acc)?)
}

/// I₁(A) + L₁(A), the companion of [`sinh_poisson_integral`] in its
/// derivative: d/dA [I₀ + L₀] = I₁ + L₁ + 2/π.
pub fn bessel_struve_sum_one(a: f64, acc: &AccuracySpec) -> Result<f64> {
    Ok(bessel_i(Order::One, a, acc)? + struve_l(Order::One, a, acc)?)
}

pub fn sech(x: f64) -> f64 {
    let ax = x.abs();
    if ax > 700.0 {
        0.0
    } else {
        let e = (-ax).exp();
        2.0 * e / (1.0 + e * e)
    }
}

/// ln cosh x without overflow for large |x|.
pub fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - LN_2
}
