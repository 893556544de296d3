//! Brute-force checks that share no algebra with the closed forms: shooting
//! on `u'(0)` for the Bratu problem and direct integration of the kinetics,
//! Lambert and Duffing equations.

use serde::Serialize;
use thiserror::Error;

use crate::bratu::{self, BifurcationSample, Branch, CurveSource, DatasetGap, Source};
use crate::classic::{self, DuffingSpec, KdvSoliton, LambertSpec};
use crate::kinetics::{self, ReactionSpec};
use crate::numerics::{find_maximum, find_root, ode_solve, Bracket, NumericsError, OdeTrajectory};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("no sign change of u(1) over slopes [{lo}, {hi}] at lambda {lambda}")]
    NoSignChange { lambda: f64, lo: f64, hi: f64 },
    #[error("integration blew up at x = {x} for slope {slope}")]
    StepUnderflow { x: f64, slope: f64 },
    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("unknown verification case {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Local tolerance of every shooting integration.
pub const SHOOTING_ODE_TOL: f64 = 1e-12;
/// Default bound on `|u(1)|` for an accepted shot.
pub const DEFAULT_GRID_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingProblem {
    pub lambda: f64,
    pub slope_bracket: Bracket,
    pub grid_tol: f64,
}

impl ShootingProblem {
    pub fn new(lambda: f64, slope_bracket: Bracket) -> Self {
        Self { lambda, slope_bracket, grid_tol: DEFAULT_GRID_TOL }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingResult {
    pub slope_at_origin: f64,
    pub boundary_defect: f64,
    pub trajectory: OdeTrajectory,
    /// The root is a double root of `u(1; s)`: λ sits on the fold.
    pub tangent: bool,
}

/// Integrates `u'' = -λ e^u` from `u(0) = 0, u'(0) = slope` to `x = 1`.
pub fn shoot(lambda: f64, slope: f64) -> Result<OdeTrajectory> {
    ode_solve(|_, y, dy| {
        dy[0] = y[1];
        dy[1] = -lambda * y[0].exp();
    }, 0.0, 1.0, &[0.0, slope], SHOOTING_ODE_TOL)
    .map_err(|e| match e {
        NumericsError::StepUnderflow { t, .. } | NumericsError::StepBudgetExhausted { t, .. } => {
            OracleError::StepUnderflow { x: t, slope }
        }
        other => other.into(),
    })
}

/// `u(1)` as a function of the initial slope.
pub fn boundary_value(lambda: f64, slope: f64) -> Result<f64> {
    Ok(shoot(lambda, slope)?.final_state()[0])
}

/// Solves the boundary-value problem by root-finding `u(1; s) = 0` in the
/// slope `s`.
///
/// When both bracket ends give `u(1) < 0` the bracket may still hold the
/// fold, where `u(1; s)` touches zero without crossing it. The maximum of
/// `u(1; s)` over the bracket is then accepted if it lies within `grid_tol`
/// of zero. If the maximum is clearly positive, the lower of the two roots
/// is returned.
pub fn bratu_shoot(problem: &ShootingProblem) -> Result<ShootingResult> {
    let lambda = problem.lambda;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(OracleError::InvalidLambda(lambda));
    }
    let (lo, hi) = (problem.slope_bracket.lo(), problem.slope_bracket.hi());
    let f_lo = boundary_value(lambda, lo)?;
    let f_hi = boundary_value(lambda, hi)?;
    let tol = 1e-14 * (1.0 + hi.abs());

    let (slope, tangent) = if f_lo.signum() != f_hi.signum() || f_lo == 0.0 || f_hi == 0.0 {
        (root_in(lambda, lo, hi, tol)?, false)
    } else if f_lo < 0.0 {
        let (s_max, f_max) = max_boundary_value(lambda, problem.slope_bracket)?;
        if f_max.abs() <= problem.grid_tol {
            (s_max, true)
        } else if f_max > 0.0 {
            (root_in(lambda, lo, s_max, tol)?, false)
        } else {
            return Err(OracleError::NoSignChange { lambda, lo, hi });
        }
    } else {
        return Err(OracleError::NoSignChange { lambda, lo, hi });
    };

    let trajectory = shoot(lambda, slope)?;
    let boundary_defect = trajectory.final_state()[0].abs();
    Ok(ShootingResult { slope_at_origin: slope, boundary_defect, trajectory, tangent })
}

fn root_in(lambda: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut failure = None;
    let s = find_root(
        |s| match boundary_value(lambda, s) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        Bracket::new(lo, hi)?,
        tol,
    );
    match (s, failure) {
        (Ok(s), _) => Ok(s),
        (Err(_), Some(e)) => Err(e),
        (Err(e), None) => Err(e.into()),
    }
}

/// Maximiser of `u(1; s)` over the bracket. Slopes that blow up count as
/// `-∞`, which is the right limit: `u(1) → -∞` for large slopes.
fn max_boundary_value(lambda: f64, bracket: Bracket) -> Result<(f64, f64)> {
    let (s, f) = find_maximum(|s| boundary_value(lambda, s).unwrap_or(f64::NEG_INFINITY), bracket, 1e-10);
    Ok((s, f))
}

/// Shooting brackets for both branches at λ, or `None` past the fold.
///
/// `u(1; s)` starts negative at `s = 0`, rises to a single maximum and falls
/// off to `-∞`. The upper end grows by doubling from `s_hi` until `u(1)`
/// is negative again or the integration blows up.
fn branch_brackets(lambda: f64, s_hi: f64) -> Result<Option<(Bracket, Bracket)>> {
    let mut hi = s_hi.max(1.0);
    loop {
        match boundary_value(lambda, hi) {
            Ok(v) if v < 0.0 => break,
            Ok(_) => hi *= 2.0,
            Err(OracleError::StepUnderflow { .. }) => break,
            Err(e) => return Err(e),
        }
        if hi > 1e6 {
            return Err(OracleError::NoSignChange { lambda, lo: 0.0, hi });
        }
    }
    let (s_max, f_max) = max_boundary_value(lambda, Bracket::new(0.0, hi)?)?;
    if f_max <= 0.0 {
        return Ok(None);
    }
    Ok(Some((Bracket::new(0.0, s_max)?, Bracket::new(s_max, hi)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShootingCurve {
    pub samples: Vec<BifurcationSample>,
    pub gaps: Vec<DatasetGap>,
}

/// Shooting solutions on one branch along a λ grid, sorted by λ.
///
/// Each λ gets its own brackets; the upper bracket search starts from
/// the previous upper slope so that the doubling is short.
pub fn bratu_sweep(lambda_grid: &[f64], branch: Branch) -> ShootingCurve {
    let mut grid = lambda_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut samples = Vec::new();
    let mut gaps = Vec::new();
    let mut s_hi = 8.0;
    for lambda in grid {
        let gap = |reason: String| DatasetGap { source: CurveSource::Shooting, branch, lambda, reason };
        if !(lambda > 0.0 && lambda.is_finite()) {
            gaps.push(gap(OracleError::InvalidLambda(lambda).to_string()));
            continue;
        }
        let brackets = match branch_brackets(lambda, s_hi) {
            Ok(Some(b)) => b,
            Ok(None) => {
                gaps.push(gap(OracleError::NoSignChange { lambda, lo: 0.0, hi: s_hi }.to_string()));
                continue;
            }
            Err(e) => {
                gaps.push(gap(e.to_string()));
                continue;
            }
        };
        let bracket = match branch {
            Branch::Upper => brackets.1,
            _ => brackets.0,
        };
        match bratu_shoot(&ShootingProblem::new(lambda, bracket)) {
            Ok(r) => {
                let exact = bratu::branches_at(lambda, Source::Exact)
                    .ok()
                    .and_then(|b| b.get(branch).or_else(|| b.get(Branch::Fold)).map(|s| s.slope));
                if branch == Branch::Upper {
                    s_hi = 1.5 * r.slope_at_origin;
                }
                samples.push(BifurcationSample {
                    lambda,
                    slope: r.slope_at_origin,
                    branch,
                    source: CurveSource::Shooting,
                    exact_deviation: exact.map(|e| (r.slope_at_origin - e).abs()),
                });
            }
            Err(e) => gaps.push(gap(e.to_string())),
        }
    }
    ShootingCurve { samples, gaps }
}

/// Largest λ on the grid at which both shooting branches are found.
pub fn empirical_fold(lambda_grid: &[f64]) -> Option<f64> {
    let mut grid = lambda_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let mut last = None;
    for lambda in grid {
        match branch_brackets(lambda, 8.0) {
            Ok(Some(_)) => last = Some(lambda),
            _ => break,
        }
    }
    last
}

/// Registered verification cases.
pub const CASES: [&str; 10] = [
    "kinetics-n1",
    "kinetics-n1.5",
    "kinetics-n2",
    "kinetics-n3",
    "kinetics-n5",
    "bratu-exact-residual",
    "bratu-shooting",
    "lambert-residual",
    "kdv-residual",
    "duffing-energy",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub case: String,
    pub description: String,
    pub max_abs_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Runs one registered case.
pub fn verify_closed_form(case: &str) -> Result<DiscrepancyReport> {
    verify_with_offset(case, 0.0)
}

/// As [`verify_closed_form`], with `offset` added to every closed-form
/// value before comparison. A nonzero offset must make the case fail.
pub fn verify_with_offset(case: &str, offset: f64) -> Result<DiscrepancyReport> {
    let (description, tolerance, discrepancy) = match case {
        c if c.starts_with("kinetics-n") => {
            let n: f64 = c["kinetics-n".len()..].parse().map_err(|_| OracleError::UnknownCase(c.into()))?;
            if !CASES.contains(&c) {
                return Err(OracleError::UnknownCase(c.into()));
            }
            ("exact extent vs integrated rate law on [0, 10]".to_string(), 1e-8, kinetics_discrepancy(n, offset)?)
        }
        "bratu-exact-residual" => (
            "|u'' + λe^u| of the exact family, 4th-order differences, h = 1e-3".into(),
            1e-6,
            bratu_residual(offset),
        ),
        "bratu-shooting" => (
            "shooting vs exact slopes, both branches, λ = 0.5..3.5".into(),
            1e-6,
            shooting_discrepancy(offset)?,
        ),
        "lambert-residual" => (
            "Lambert residual (5-point differences) and direct integration, n = 1, 2, 3".into(),
            1e-6,
            lambert_discrepancy(offset)?,
        ),
        "kdv-residual" => (
            "max |u'' - cu - 3u²| on [-10, 10], c = 1, 4".into(),
            1e-9,
            kdv_discrepancy(offset),
        ),
        "duffing-energy" => (
            "energy drift over t in [0, 50] for A = 1, 1.5, 2".into(),
            1e-8,
            duffing_discrepancy(offset)?,
        ),
        other => return Err(OracleError::UnknownCase(other.into())),
    };
    Ok(DiscrepancyReport {
        case: case.to_string(),
        description,
        max_abs_discrepancy: discrepancy,
        tolerance,
        passed: discrepancy <= tolerance,
    })
}

/// Every registered case, in registration order.
pub fn verify_all(offset: f64) -> Result<Vec<DiscrepancyReport>> {
    CASES.iter().map(|c| verify_with_offset(c, offset)).collect()
}

fn kinetics_discrepancy(n: f64, offset: f64) -> Result<f64> {
    let spec = ReactionSpec::new(n, 1.0, 1.0).map_err(|e| OracleError::UnknownCase(e.to_string()))?;
    let traj = ode_solve(|_, y, dy| dy[0] = spec.rate(y[0]), 0.0, 10.0, &[0.0], 1e-12)?;
    Ok(traj
        .nodes()
        .iter()
        .map(|node| (kinetics::exact_extent(&spec, node.t) + offset - node.state[0]).abs())
        .fold(0.0, f64::max))
}

fn bratu_residual(offset: f64) -> f64 {
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for theta in [0.5, 1.0, 2.0, 3.0] {
        let lambda = bratu::lambda_of_theta(theta);
        let u = |x: f64| bratu::exact_solution(theta, x) + offset;
        for i in 0..=1000 {
            let x = i as f64 * h;
            let d2 = (-u(x - 2.0 * h) + 16.0 * u(x - h) - 30.0 * u(x) + 16.0 * u(x + h) - u(x + 2.0 * h)) / (12.0 * h * h);
            worst = worst.max((d2 + lambda * u(x).exp()).abs());
        }
    }
    worst
}

/// λ values used by the shooting checks.
pub const SHOOTING_GRID: [f64; 7] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5];

fn shooting_discrepancy(offset: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for branch in [Branch::Lower, Branch::Upper] {
        let curve = bratu_sweep(&SHOOTING_GRID, branch);
        if let Some(g) = curve.gaps.first() {
            return Err(OracleError::NoSignChange { lambda: g.lambda, lo: 0.0, hi: f64::INFINITY });
        }
        for s in &curve.samples {
            let exact = bratu::branches_at(s.lambda, Source::Exact)
                .ok()
                .and_then(|b| b.get(branch).map(|e| e.slope))
                .unwrap_or(f64::NAN);
            let d = (exact + offset - s.slope).abs();
            worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
        }
    }
    Ok(worst)
}

fn lambert_discrepancy(offset: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in [1.0, 2.0, 3.0] {
        for k in [1.0, 2.0] {
            let spec = LambertSpec::new(n, k, 1.0, 0.3).map_err(|e| OracleError::UnknownCase(e.to_string()))?;
            let x_end = classic::lambert_positive_extent(&spec, 0.1);
            worst = worst.max(classic::lambert_residual_norm(&spec, x_end, 200).map_err(|e| OracleError::UnknownCase(e.to_string()))?);
            let traj = ode_solve(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = (1.0 - n) * y[1] * y[1] / y[0] - k * k / n * y[0];
                },
                0.0,
                x_end,
                &[spec.y0(), spec.yp0()],
                1e-12,
            )?;
            for node in traj.nodes() {
                let y = classic::lambert_solve(&spec, node.t).map_err(|e| OracleError::UnknownCase(e.to_string()))?;
                worst = worst.max((y + offset - node.state[0]).abs());
            }
        }
    }
    Ok(worst)
}

fn kdv_discrepancy(offset: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for c in [1.0, 4.0] {
        let sol = classic::kdv_soliton_solve(c).expect("c > 0");
        let shifted = KdvSoliton { p: sol.p + offset, ..sol };
        worst = worst.max(classic::kdv_max_residual(&shifted, 10.0, 2001));
    }
    worst
}

fn duffing_discrepancy(offset: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in [1.0, 1.5, 2.0] {
        let spec = DuffingSpec::new(1.0, a).map_err(|e| OracleError::UnknownCase(e.to_string()))?;
        let traj = classic::duffing_trajectory(&spec, 50.0)?;
        let e0 = classic::duffing_potential(spec.epsilon(), a) + offset;
        for node in traj.nodes() {
            let e = 0.5 * node.state[1] * node.state[1] + classic::duffing_potential(spec.epsilon(), node.state[0]);
            worst = worst.max((e - e0).abs());
        }
    }
    Ok(worst)
}
