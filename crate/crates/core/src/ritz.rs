//! The Ritz engine: evaluate an action functional on a parametric trial
//! family and locate the parameter values where it is stationary.
//!
//! Derivatives with respect to the trial parameters are central
//! differences of the quadrature value, so a trial family only has to
//! supply `u(x; p)` and `u'(x; p)`. Stationary points are classified by the
//! signs of the Hessian eigenvalues rather than assumed to be minima: the
//! Bratu action, for one, is unbounded below.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{find_root, integrate, integrate_semi_infinite, Bracket, NumericsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RitzError {
    #[error("trial '{trial}' expects {expected} parameters, got {got}")]
    DimensionMismatch { trial: String, expected: usize, got: usize },
    #[error("trial '{trial}': derivative disagrees with finite differences at x = {x} (analytic {analytic:e}, numeric {numeric:e})")]
    DerivativeMismatch { trial: String, x: f64, analytic: f64, numeric: f64 },
    #[error("action density is not finite at x = {x}")]
    NonFiniteDensity { x: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(#[from] NumericsError),
    #[error("no stationary point after {iterations} iterations (gradient norm {gradient_norm:e})")]
    NoConvergence { iterations: usize, gradient_norm: f64 },
    #[error("Hessian is singular near {params:?} (smallest |eigenvalue| {min_eigenvalue:e})")]
    SingularHessian { params: Vec<f64>, min_eigenvalue: f64 },
    #[error("{0}")]
    InvalidSweep(&'static str),
}

pub type Result<T> = std::result::Result<T, RitzError>;

type TrialFn = Box<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
type DensityFn = Box<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// A parametric candidate solution `u(x; p)` together with `u'(x; p)`.
pub struct TrialFamily {
    name: String,
    param_names: Vec<String>,
    eval: TrialFn,
    deriv: TrialFn,
}

impl fmt::Debug for TrialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrialFamily")
            .field("name", &self.name)
            .field("param_names", &self.param_names)
            .finish_non_exhaustive()
    }
}

const PROBE_COUNT: usize = 16;
const PROBE_TOL: f64 = 1e-6;

impl TrialFamily {
    /// Builds the family and checks `deriv` against central differences of
    /// `eval` at pseudo-random points of `probe_x` and parameter vectors
    /// scattered around `probe_params`.
    pub fn new<E, D>(
        name: impl Into<String>,
        param_names: &[&str],
        eval: E,
        deriv: D,
        probe_x: (f64, f64),
        probe_params: &[f64],
    ) -> Result<Self>
    where
        E: Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
        D: Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
    {
        let family = Self {
            name: name.into(),
            param_names: param_names.iter().map(|s| s.to_string()).collect(),
            eval: Box::new(eval),
            deriv: Box::new(deriv),
        };
        family.check_dim(probe_params)?;
        family.self_check(probe_x, probe_params)?;
        Ok(family)
    }

    fn self_check(&self, probe_x: (f64, f64), reference: &[f64]) -> Result<()> {
        // Weyl sequences give well-spread, reproducible probes.
        let frac = |v: f64| v - v.floor();
        for i in 1..=PROBE_COUNT {
            let x = probe_x.0 + frac(i as f64 * 0.618_033_988_749_895) * (probe_x.1 - probe_x.0);
            let params: Vec<f64> = reference
                .iter()
                .enumerate()
                .map(|(j, p)| p * (1.0 + 0.2 * (frac(i as f64 * (2f64.sqrt() + j as f64)) - 0.5)))
                .collect();
            let h = 1e-5 * (1.0 + x.abs());
            let numeric = ((self.eval)(x + h, &params) - (self.eval)(x - h, &params)) / (2.0 * h);
            let analytic = (self.deriv)(x, &params);
            if !((numeric - analytic).abs() <= PROBE_TOL * (1.0 + analytic.abs())) {
                return Err(RitzError::DerivativeMismatch { trial: self.name.clone(), x, analytic, numeric });
            }
        }
        Ok(())
    }

    fn check_dim(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_names.len() {
            return Err(RitzError::DimensionMismatch {
                trial: self.name.clone(),
                expected: self.param_names.len(),
                got: params.len(),
            });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param_names(&self) -> &[String] {
        &self.param_names
    }

    pub fn param_count(&self) -> usize {
        self.param_names.len()
    }

    pub fn eval(&self, x: f64, params: &[f64]) -> f64 {
        (self.eval)(x, params)
    }

    pub fn deriv(&self, x: f64, params: &[f64]) -> f64 {
        (self.deriv)(x, params)
    }
}

/// Decay rate used to map a half-line integral onto the unit interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    Fixed(f64),
    /// `|params[i]|`, for trials whose own parameter sets the decay.
    Param(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { a: f64, b: f64 },
    SemiInfinite { decay: DecayHint },
}

/// `J[u] = ∫ L(x, u, u') dx` over a finite interval or the half line.
pub struct ActionFunctional {
    density: DensityFn,
    domain: Domain,
    fixed_scalars: Vec<(String, f64)>,
}

impl fmt::Debug for ActionFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionFunctional")
            .field("domain", &self.domain)
            .field("fixed_scalars", &self.fixed_scalars)
            .finish_non_exhaustive()
    }
}

impl ActionFunctional {
    pub fn new<L>(density: L, domain: Domain) -> Self
    where
        L: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self { density: Box::new(density), domain, fixed_scalars: Vec::new() }
    }

    /// Records a named constant of the problem (λ, k, c, ...) for reporting.
    pub fn with_scalar(mut self, name: &str, value: f64) -> Self {
        self.fixed_scalars.push((name.to_string(), value));
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn fixed_scalars(&self) -> &[(String, f64)] {
        &self.fixed_scalars
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.fixed_scalars.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn density(&self, x: f64, u: f64, du: f64) -> f64 {
        (self.density)(x, u, du)
    }
}

const ACTION_QUAD_TOL: f64 = 1e-13;

/// J(params) by adaptive quadrature.
pub fn action_value(action: &ActionFunctional, trial: &TrialFamily, params: &[f64]) -> Result<f64> {
    trial.check_dim(params)?;
    let mut bad_x = None;
    let mut integrand = |x: f64| {
        let v = action.density(x, trial.eval(x, params), trial.deriv(x, params));
        if !v.is_finite() && bad_x.is_none() {
            bad_x = Some(x);
        }
        v
    };
    let value = match action.domain {
        Domain::Finite { a, b } => integrate(&mut integrand, a, b, ACTION_QUAD_TOL),
        Domain::SemiInfinite { decay } => {
            let rate = match decay {
                DecayHint::Fixed(r) => r,
                DecayHint::Param(i) => params[i].abs(),
            };
            integrate_semi_infinite(&mut integrand, rate, ACTION_QUAD_TOL)
        }
    };
    if let Some(x) = bad_x {
        return Err(RitzError::NonFiniteDensity { x });
    }
    Ok(value?)
}

/// Sign of a Hessian eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curvature {
    Positive,
    Negative,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub params: Vec<f64>,
    pub j_value: f64,
    pub gradient_norm: f64,
    pub hessian_eigenvalues: Vec<f64>,
    pub hessian_eigen_signs: Vec<Curvature>,
}

impl StationaryPoint {
    pub fn kind(&self) -> StationaryKind {
        let s = &self.hessian_eigen_signs;
        if s.contains(&Curvature::Zero) {
            StationaryKind::Degenerate
        } else if s.iter().all(|c| *c == Curvature::Positive) {
            StationaryKind::Minimum
        } else if s.iter().all(|c| *c == Curvature::Negative) {
            StationaryKind::Maximum
        } else {
            StationaryKind::Saddle
        }
    }
}

/// Newton iteration controls. `gradient_tol` is relative to `1 + |J|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub gradient_tol: f64,
    pub max_iter: usize,
    /// Eigenvalues below this (relative to `1 + |J|`) count as zero.
    pub singular_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { gradient_tol: 1e-6, max_iter: 60, singular_tol: 1e-7 }
    }
}

fn gradient_step(p: f64) -> f64 {
    (1.0 + p.abs()) * 1e-6
}

// Second differences need a wider step: roundoff grows like eps·|J|/h².
fn hessian_step(p: f64) -> f64 {
    (1.0 + p.abs()) * 1e-4
}

pub fn action_gradient(action: &ActionFunctional, trial: &TrialFamily, params: &[f64]) -> Result<Vec<f64>> {
    let mut p = params.to_vec();
    let mut g = Vec::with_capacity(params.len());
    for i in 0..params.len() {
        let h = gradient_step(params[i]);
        p[i] = params[i] + h;
        let plus = action_value(action, trial, &p)?;
        p[i] = params[i] - h;
        let minus = action_value(action, trial, &p)?;
        p[i] = params[i];
        g.push((plus - minus) / (2.0 * h));
    }
    Ok(g)
}

pub fn action_hessian(action: &ActionFunctional, trial: &TrialFamily, params: &[f64]) -> Result<DMatrix<f64>> {
    let n = params.len();
    let j0 = action_value(action, trial, params)?;
    let mut hess = DMatrix::zeros(n, n);
    let mut p = params.to_vec();
    let eval = |p: &[f64]| action_value(action, trial, p);
    for i in 0..n {
        let hi = hessian_step(params[i]);
        p[i] = params[i] + hi;
        let plus = eval(&p)?;
        p[i] = params[i] - hi;
        let minus = eval(&p)?;
        p[i] = params[i];
        hess[(i, i)] = (plus - 2.0 * j0 + minus) / (hi * hi);
        for j in 0..i {
            let hj = hessian_step(params[j]);
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                p[i] = params[i] + si * hi;
                p[j] = params[j] + sj * hj;
                let v = eval(&p);
                p[i] = params[i];
                p[j] = params[j];
                v
            };
            let v = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?)
                / (4.0 * hi * hj);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    Ok(hess)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gradient, Hessian spectrum and classification at `params`, without
/// iterating. Useful where the stationarity condition was solved by other
/// means (e.g. for the knob instead of the trial parameter).
pub fn diagnose(
    action: &ActionFunctional,
    trial: &TrialFamily,
    params: &[f64],
    opts: &NewtonOptions,
) -> Result<StationaryPoint> {
    let j_value = action_value(action, trial, params)?;
    let gradient_norm = norm(&action_gradient(action, trial, params)?);
    let hess = action_hessian(action, trial, params)?;
    let eig = hess.symmetric_eigen().eigenvalues;
    let zero = opts.singular_tol * (1.0 + j_value.abs());
    let hessian_eigenvalues: Vec<f64> = eig.iter().copied().collect();
    let hessian_eigen_signs = hessian_eigenvalues
        .iter()
        .map(|&e| {
            if e.abs() <= zero {
                Curvature::Zero
            } else if e > 0.0 {
                Curvature::Positive
            } else {
                Curvature::Negative
            }
        })
        .collect();
    Ok(StationaryPoint { params: params.to_vec(), j_value, gradient_norm, hessian_eigenvalues, hessian_eigen_signs })
}

/// Solve ∇J = 0 by damped Newton on finite-difference derivatives.
pub fn stationary_point(action: &ActionFunctional, trial: &TrialFamily, init: &[f64]) -> Result<StationaryPoint> {
    stationary_point_with(action, trial, init, &NewtonOptions::default())
}

pub fn stationary_point_with(
    action: &ActionFunctional,
    trial: &TrialFamily,
    init: &[f64],
    opts: &NewtonOptions,
) -> Result<StationaryPoint> {
    trial.check_dim(init)?;
    let n = init.len();
    let mut p = init.to_vec();
    let mut g = action_gradient(action, trial, &p)?;
    let mut gnorm = norm(&g);

    for _ in 0..opts.max_iter {
        let hess = action_hessian(action, trial, &p)?;
        let j = action_value(action, trial, &p)?;
        let min_eig = hess.clone().symmetric_eigen().eigenvalues.iter().fold(f64::INFINITY, |m, e| m.min(e.abs()));
        let step = if min_eig <= opts.singular_tol * (1.0 + j.abs()) {
            None
        } else {
            hess.lu().solve(&DVector::from_column_slice(&g))
        };
        let Some(step) = step else {
            return Err(RitzError::SingularHessian { params: p, min_eigenvalue: min_eig });
        };

        // Backtrack on |∇J| since J itself need not decrease at a saddle.
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..30 {
            let trial_p: Vec<f64> = (0..n).map(|i| p[i] - alpha * step[i]).collect();
            if let Ok(g_new) = action_gradient(action, trial, &trial_p) {
                let n_new = norm(&g_new);
                if n_new.is_finite() && n_new < gnorm {
                    accepted = Some((trial_p, g_new, n_new));
                    break;
                }
            }
            alpha *= 0.5;
        }
        let step_norm = alpha * step.norm();
        match accepted {
            Some((new_p, new_g, new_norm)) => {
                p = new_p;
                g = new_g;
                gnorm = new_norm;
            }
            None => {
                // No descent in |∇J|: we are at the noise floor of the
                // finite-difference gradient.
                break;
            }
        }
        if step_norm <= 1e-13 * (1.0 + norm(&p)) {
            break;
        }
    }

    let point = diagnose(action, trial, &p, opts)?;
    if point.gradient_norm <= opts.gradient_tol * (1.0 + point.j_value.abs()) {
        Ok(point)
    } else {
        Err(RitzError::NoConvergence { iterations: opts.max_iter, gradient_norm: point.gradient_norm })
    }
}

/// How a curve sample was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepVariable {
    /// Knob fixed, stationarity solved for the trial parameters.
    Knob,
    /// Trial parameter fixed, stationarity solved for the knob.
    TrialParameter,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub knob: f64,
    pub point: StationaryPoint,
    pub via: SweepVariable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveGap {
    pub at: f64,
    pub via: SweepVariable,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ParameterCurve {
    pub samples: Vec<CurveSample>,
    pub gaps: Vec<CurveGap>,
}

/// Continue past a fold by sweeping the (single) trial parameter through
/// `param_values` and solving for the knob inside `knob_bracket`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldFallback {
    pub param_values: Vec<f64>,
    pub knob_bracket: Bracket,
}

fn is_monotone(grid: &[f64]) -> bool {
    grid.windows(2).all(|w| w[1] > w[0]) || grid.windows(2).all(|w| w[1] < w[0])
}

/// Natural-parameter continuation of the stationary point over `knob_grid`.
///
/// Each solve is warm-started from a secant extrapolation of the previous
/// two. When a solve fails and `fallback` is given, the remainder of the
/// curve is traced by [`trial_parameter_sweep`] over the fallback values
/// that lie beyond the last converged parameter; without a fallback the
/// failure is recorded as a gap and the sweep moves on.
pub fn parameter_curve<F>(
    family: F,
    trial: &TrialFamily,
    knob_grid: &[f64],
    init: &[f64],
    fallback: Option<&FoldFallback>,
) -> Result<ParameterCurve>
where
    F: Fn(f64) -> ActionFunctional,
{
    if !is_monotone(knob_grid) {
        return Err(RitzError::InvalidSweep("knob grid must be strictly monotone"));
    }
    trial.check_dim(init)?;
    let mut curve = ParameterCurve::default();
    let mut history: Vec<(f64, Vec<f64>)> = Vec::new();

    for &knob in knob_grid {
        let guess = match history.as_slice() {
            [.., (k0, p0), (k1, p1)] if k1 != k0 => {
                let t = (knob - k1) / (k1 - k0);
                p1.iter().zip(p0).map(|(a, b)| a + t * (a - b)).collect()
            }
            [.., (_, p1)] => p1.clone(),
            [] => init.to_vec(),
        };
        let action = family(knob);
        match stationary_point(&action, trial, &guess) {
            Ok(point) => {
                history.push((knob, point.params.clone()));
                curve.samples.push(CurveSample { knob, point, via: SweepVariable::Knob });
            }
            Err(err) => {
                curve.gaps.push(CurveGap { at: knob, via: SweepVariable::Knob, reason: err.to_string() });
                if let Some(fb) = fallback {
                    let rising = match history.as_slice() {
                        [.., (_, p0), (_, p1)] => p1[0] >= p0[0],
                        _ => true,
                    };
                    let last = history.last().map(|(_, p)| p[0]);
                    let rest: Vec<f64> = fb
                        .param_values
                        .iter()
                        .copied()
                        .filter(|&v| match last {
                            Some(l) if rising => v > l,
                            Some(l) => v < l,
                            None => true,
                        })
                        .collect();
                    let tail = trial_parameter_sweep(&family, trial, &rest, fb.knob_bracket)?;
                    curve.samples.extend(tail.samples);
                    curve.gaps.extend(tail.gaps);
                    break;
                }
            }
        }
    }
    Ok(curve)
}

/// For a one-parameter trial: fix the parameter at each value and solve
/// ∂J/∂p = 0 for the knob. This traces both sides of a fold.
pub fn trial_parameter_sweep<F>(
    family: F,
    trial: &TrialFamily,
    param_values: &[f64],
    knob_bracket: Bracket,
) -> Result<ParameterCurve>
where
    F: Fn(f64) -> ActionFunctional,
{
    if trial.param_count() != 1 {
        return Err(RitzError::InvalidSweep("trial-parameter sweeps need a one-parameter trial"));
    }
    let opts = NewtonOptions::default();
    let mut curve = ParameterCurve::default();
    for &p in param_values {
        let dj = |knob: f64| {
            action_gradient(&family(knob), trial, &[p]).map(|g| g[0]).unwrap_or(f64::NAN)
        };
        let solved = find_root(dj, knob_bracket, 1e-13)
            .map_err(RitzError::from)
            .and_then(|knob| diagnose(&family(knob), trial, &[p], &opts).map(|pt| (knob, pt)));
        match solved {
            Ok((knob, point)) => curve.samples.push(CurveSample { knob, point, via: SweepVariable::TrialParameter }),
            Err(err) => {
                curve.gaps.push(CurveGap { at: p, via: SweepVariable::TrialParameter, reason: err.to_string() })
            }
        }
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_trial() -> TrialFamily {
        // u = a x + b x^2
        TrialFamily::new(
            "quad",
            &["a", "b"],
            |x, p| p[0] * x + p[1] * x * x,
            |x, p| p[0] + 2.0 * p[1] * x,
            (0.0, 1.0),
            &[1.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn self_check_rejects_wrong_derivative() {
        let err = TrialFamily::new("bad", &["a"], |x, p| p[0] * x * x, |x, p| p[0] * x, (0.0, 1.0), &[1.0]);
        assert!(matches!(err, Err(RitzError::DerivativeMismatch { .. })));
    }

    #[test]
    fn dimension_mismatch() {
        let t = quadratic_trial();
        let f = ActionFunctional::new(|_, u, _| u, Domain::Finite { a: 0.0, b: 1.0 });
        assert!(matches!(action_value(&f, &t, &[1.0]), Err(RitzError::DimensionMismatch { .. })));
    }

    #[test]
    fn quadratic_functional_minimum() {
        // J = ∫₀¹ (u'²/2 - u) dx with u = a x + b x²; exact minimizer of the
        // unconstrained problem over this family solves a 2x2 linear system.
        let t = quadratic_trial();
        let f = ActionFunctional::new(|_, u, du| 0.5 * du * du - u, Domain::Finite { a: 0.0, b: 1.0 });
        let sp = stationary_point(&f, &t, &[0.0, 0.0]).unwrap();
        // J = a²/2 + ab + 2b²/3 - a/2 - b/3  =>  a + b = 1/2, a + 4b/3 = 1/3
        let (a, b) = (1.0, -0.5);
        assert!((sp.params[0] - a).abs() < 1e-8, "{:?}", sp.params);
        assert!((sp.params[1] - b).abs() < 1e-8);
        assert_eq!(sp.kind(), StationaryKind::Minimum);
    }

    #[test]
    fn saddle_is_classified() {
        // u = a + b√3(2x - 1) is orthonormal on [0, 1], so
        // J = ∫ (u² - u'²/6 + u) dx = a² - b² + a.
        let r3 = 3f64.sqrt();
        let t = TrialFamily::new(
            "ab",
            &["a", "b"],
            move |x, p| p[0] + p[1] * r3 * (2.0 * x - 1.0),
            move |_, p| 2.0 * r3 * p[1],
            (0.0, 1.0),
            &[1.0, 1.0],
        )
        .unwrap();
        let f = ActionFunctional::new(|_, u, du| u * u - du * du / 6.0 + u, Domain::Finite { a: 0.0, b: 1.0 });
        let sp = stationary_point(&f, &t, &[0.3, 0.2]).unwrap();
        assert!((sp.params[0] + 0.5).abs() < 1e-8);
        assert!(sp.params[1].abs() < 1e-8);
        assert_eq!(sp.kind(), StationaryKind::Saddle);
        assert!((sp.j_value + 0.25).abs() < 1e-12);
    }

    #[test]
    fn no_stationary_point_reports_failure() {
        let t = TrialFamily::new("lin", &["a"], |_, p| p[0], |_, _| 0.0, (0.0, 1.0), &[1.0]).unwrap();
        let f = ActionFunctional::new(|_, u, _| u, Domain::Finite { a: 0.0, b: 1.0 });
        assert!(matches!(stationary_point(&f, &t, &[0.0]), Err(RitzError::SingularHessian { .. })));
    }

    #[test]
    fn semi_infinite_param_decay() {
        // u = e^{-a t}: J = ∫ (u'²/2 + u²/2 - u) dt = a/4 + 1/(4a) - 1/a
        let t = TrialFamily::new("exp", &["a"], |x, p| (-p[0] * x).exp(), |x, p| -p[0] * (-p[0] * x).exp(), (0.0, 3.0), &[1.0])
            .unwrap();
        let f = ActionFunctional::new(
            |_, u, du| 0.5 * du * du + 0.5 * u * u - u,
            Domain::SemiInfinite { decay: DecayHint::Param(0) },
        );
        let j = action_value(&f, &t, &[2.0]).unwrap();
        assert!((j - (0.5 + 0.125 - 0.5)).abs() < 1e-12);
        // dJ/da = 1/4 + 3/(4a²) > 0 everywhere: no stationary point
        assert!(stationary_point(&f, &t, &[1.0]).is_err());
    }

    #[test]
    fn non_monotone_grid_rejected() {
        let t = quadratic_trial();
        let res = parameter_curve(
            |_| ActionFunctional::new(|_, u, _| u, Domain::Finite { a: 0.0, b: 1.0 }),
            &t,
            &[1.0, 3.0, 2.0],
            &[0.0, 0.0],
            None,
        );
        assert!(matches!(res, Err(RitzError::InvalidSweep(_))));
    }
}
