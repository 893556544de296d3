//! The one-dimensional Bratu problem `u'' + λ e^u = 0`, `u(0) = u(1) = 0`.
//!
//! Three descriptions of the solution set are compared:
//!
//! * the exact family `u = -2 ln[cosh(θ(x - ½)) / cosh(θ/2)]` with
//!   `λ(θ) = 2θ² / cosh²(θ/2)` and slope at the origin `u'(0) = 2θ tanh(θ/2)`
//!   (differentiate the solution at `x = 0`);
//! * the Ritz trial `u = A x (1 - x)`, whose action has the closed form
//!   `J(A) = A²/6 - λ √(π/A) e^{A/4} erf(√A/2)`;
//! * the Ritz trial `u = A sin(πx)`, with `J(A) = A²π²/4 - λ [I₀(A) + L₀(A)]`.
//!
//! Each description gives λ as a function of one shape parameter. Every
//! curve rises from the origin to a single maximum λ_c (the fold) and then
//! decays, so there are two solutions below λ_c, one at it and none above.

use std::f64::consts::PI;
use std::io;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{find_maximum, find_root, Bracket, NumericsError, PowerSeries};
use crate::oracle;
use crate::ritz::{ActionFunctional, Domain, RitzError, TrialFamily};
use crate::specfun::{self, AccuracySpec, SpecfunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BratuError {
    #[error("no solution: lambda exceeds critical value (lambda = {lambda}, lambda_c = {lambda_c})")]
    NoSolution { lambda: f64, lambda_c: f64 },
    #[error("lambda must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("shape parameter must be positive and finite, got {0}")]
    InvalidParameter(f64),
    #[error("series order {order} exceeds the cap of {cap}")]
    SeriesOrder { order: usize, cap: usize },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Ritz(#[from] RitzError),
}

pub type Result<T> = std::result::Result<T, BratuError>;

/// Largest shape parameter searched for upper-branch solutions.
pub const PARAM_MAX: f64 = 30.0;
/// Relative distance from λ_c within which a λ counts as the fold itself.
pub const FOLD_TOL: f64 = 1e-9;
pub const MAX_SERIES_ORDER: usize = 12;
/// Below this the closed forms of the polynomial trial cancel badly; use series.
const SMALL_A: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TrialKind {
    PolyTrial,
    SineTrial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    Exact,
    PolyTrial,
    SineTrial,
}

impl Source {
    pub const ALL: [Source; 3] = [Source::Exact, Source::PolyTrial, Source::SineTrial];

    pub fn name(self) -> &'static str {
        match self {
            Source::Exact => "exact",
            Source::PolyTrial => "poly",
            Source::SineTrial => "sine",
        }
    }
}

impl From<TrialKind> for Source {
    fn from(kind: TrialKind) -> Self {
        match kind {
            TrialKind::PolyTrial => Source::PolyTrial,
            TrialKind::SineTrial => Source::SineTrial,
        }
    }
}

/// Origin of a bifurcation sample; `Shooting` is the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveSource {
    Exact,
    PolyTrial,
    SineTrial,
    Shooting,
}

impl CurveSource {
    pub const ALL: [CurveSource; 4] =
        [CurveSource::Exact, CurveSource::PolyTrial, CurveSource::SineTrial, CurveSource::Shooting];

    pub fn name(self) -> &'static str {
        match self {
            CurveSource::Exact => "exact",
            CurveSource::PolyTrial => "poly",
            CurveSource::SineTrial => "sine",
            CurveSource::Shooting => "shooting",
        }
    }
}

impl From<Source> for CurveSource {
    fn from(s: Source) -> Self {
        match s {
            Source::Exact => CurveSource::Exact,
            Source::PolyTrial => CurveSource::PolyTrial,
            Source::SineTrial => CurveSource::SineTrial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    Lower,
    Upper,
    /// λ = λ_c, where the two branches meet.
    Fold,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Upper => "upper",
            Branch::Fold => "fold",
        }
    }
}

/// A member of the exact solution family, labelled by `θ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BratuExact {
    theta: f64,
}

impl BratuExact {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(BratuError::InvalidParameter(theta));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn lambda(&self) -> f64 {
        lambda_of_theta(self.theta)
    }

    pub fn slope_at_origin(&self) -> f64 {
        exact_slope(self.theta)
    }

    pub fn u(&self, x: f64) -> f64 {
        exact_solution(self.theta, x)
    }
}

/// `u(x) = -2 ln[cosh(θ(x - ½)) / cosh(θ/2)]`.
pub fn exact_solution(theta: f64, x: f64) -> f64 {
    -2.0 * (specfun::ln_cosh(theta * (x - 0.5)) - specfun::ln_cosh(0.5 * theta))
}

/// `u'(0) = 2θ tanh(θ/2)`.
pub fn exact_slope(theta: f64) -> f64 {
    2.0 * theta * (0.5 * theta).tanh()
}

/// `λ(θ) = 2θ² / cosh²(θ/2)`.
pub fn lambda_of_theta(theta: f64) -> f64 {
    let s = specfun::sech(0.5 * theta);
    2.0 * theta * theta * s * s
}

/// `c_i = ∫₀¹ [x(1-x)]^i dx = (i!)² / (2i+1)!`.
fn beta_moment(i: usize) -> f64 {
    (1..=i).fold(1.0, |acc, j| acc * j as f64 / (2 * (2 * j + 1)) as f64)
}

/// j-th derivative of `F(A) = ∫₀¹ e^{A x(1-x)} dx` from its Taylor series
/// `Σ_m A^m c_{m+j} / m!`; every term is positive.
fn poly_exp_moment_series(j: usize, a: f64) -> f64 {
    let mut term = beta_moment(j);
    let mut sum = term;
    for m in 1..400 {
        term *= a / m as f64 * beta_moment(m + j) / beta_moment(m + j - 1);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

/// `F(A) = ∫₀¹ e^{A x(1-x)} dx = √(π/A) e^{A/4} erf(√A/2)`.
pub fn poly_exp_integral(a: f64) -> f64 {
    if a < SMALL_A {
        return poly_exp_moment_series(0, a);
    }
    (PI / a).sqrt() * (0.25 * a).exp() * specfun::erf(0.5 * a.sqrt())
}

/// `F'(A) = ∫₀¹ x(1-x) e^{A x(1-x)} dx`.
fn poly_exp_integral_d1(a: f64) -> f64 {
    if a < SMALL_A {
        return poly_exp_moment_series(1, a);
    }
    let g = (0.25 * a).exp() * specfun::erf(0.5 * a.sqrt());
    PI.sqrt() * g * (a - 2.0) / (4.0 * a.powf(1.5)) + 0.5 / a
}

/// `F''(A) = ∫₀¹ [x(1-x)]² e^{A x(1-x)} dx`.
fn poly_exp_integral_d2(a: f64) -> f64 {
    // The closed form loses ~log10(1/A²) digits to cancellation.
    if a < 1.0 {
        return poly_exp_moment_series(2, a);
    }
    let g = (0.25 * a).exp() * specfun::erf(0.5 * a.sqrt());
    PI.sqrt() / 16.0 * g * (a * a - 4.0 * a + 12.0) / a.powf(2.5) + (a - 6.0) / (8.0 * a * a)
}

/// Closed-form action of the polynomial trial, `A²/6 - λ F(A)`.
pub fn poly_action(a: f64, lambda: f64) -> f64 {
    a * a / 6.0 - lambda * poly_exp_integral(a)
}

/// Closed-form action of the sine trial, `A²π²/4 - λ [I₀(A) + L₀(A)]`.
pub fn sine_action(a: f64, lambda: f64) -> Result<f64> {
    let acc = AccuracySpec::default();
    Ok(a * a * PI * PI / 4.0 - lambda * specfun::sinh_poisson_integral(a, &acc)?)
}

/// λ at which `A` makes the trial action stationary.
///
/// Polynomial trial: `4A^{5/2} / (3[√π (A-2) e^{A/4} erf(√A/2) + 2√A])`,
/// i.e. `A / (3 F'(A))`. Sine trial: `Aπ³ / (2{2 + π[I₁(A) + L₁(A)]})`.
pub fn lambda_of_a(kind: TrialKind, a: f64) -> Result<f64> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(BratuError::InvalidParameter(a));
    }
    match kind {
        TrialKind::PolyTrial => {
            if a < SMALL_A {
                Ok(a / (3.0 * poly_exp_moment_series(1, a)))
            } else {
                let sa = a.sqrt();
                let denom = PI.sqrt() * (a - 2.0) * (0.25 * a).exp() * specfun::erf(0.5 * sa) + 2.0 * sa;
                Ok(4.0 * a * a * sa / (3.0 * denom))
            }
        }
        TrialKind::SineTrial => {
            let s1 = specfun::bessel_struve_sum_one(a, &AccuracySpec::default())?;
            Ok(a * PI.powi(3) / (2.0 * (2.0 + PI * s1)))
        }
    }
}

/// λ as a function of the source's shape parameter (θ or A).
pub fn lambda_of_param(source: Source, p: f64) -> Result<f64> {
    match source {
        Source::Exact => Ok(lambda_of_theta(p)),
        Source::PolyTrial => lambda_of_a(TrialKind::PolyTrial, p),
        Source::SineTrial => lambda_of_a(TrialKind::SineTrial, p),
    }
}

/// `u'(0)` for the source's solution with shape parameter `p`:
/// `2θ tanh(θ/2)`, `A` or `πA`.
pub fn slope_of_param(source: Source, p: f64) -> f64 {
    match source {
        Source::Exact => exact_slope(p),
        Source::PolyTrial => p,
        Source::SineTrial => PI * p,
    }
}

/// Zero exactly where `dλ/dp = 0`, with a sign change there.
fn fold_condition(source: Source, p: f64) -> Result<f64> {
    Ok(match source {
        // θ tanh(θ/2) = 2, written as in e^θ(θ - 2) - θ - 2 = 0
        Source::Exact => p.exp() * (p - 2.0) - p - 2.0,
        // λ = A / (3F'): stationary where F' = A F''
        Source::PolyTrial => poly_exp_integral_d1(p) - p * poly_exp_integral_d2(p),
        // D = 2 + π S₁ and D' = π (S₀ - S₁/A): D - A D' = 2 + 2π S₁ - π A S₀
        Source::SineTrial => {
            let acc = AccuracySpec::default();
            let s0 = specfun::sinh_poisson_integral(p, &acc)?;
            let s1 = specfun::bessel_struve_sum_one(p, &acc)?;
            2.0 + 2.0 * PI * s1 - PI * p * s0
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub source: Source,
    /// θ_c for the exact family, A_c for the trials.
    pub param: f64,
    pub lambda: f64,
    pub slope: f64,
}

fn compute_critical_point(source: Source) -> Result<CriticalPoint> {
    let search = Bracket::new(0.5, 10.0)?;
    let mut failure = None;
    let (coarse, _) = find_maximum(
        |p| match lambda_of_param(source, p) {
            Ok(l) => l,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        search,
        1e-7,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // The golden-section abscissa is only good to ~√ε; polish on dλ/dp = 0.
    let polish = Bracket::new(coarse - 1e-3, coarse + 1e-3)?;
    let param = find_root(|p| fold_condition(source, p).unwrap_or(f64::NAN), polish, 1e-15)?;
    Ok(CriticalPoint { source, param, lambda: lambda_of_param(source, param)?, slope: slope_of_param(source, param) })
}

/// The fold of the source's λ curve: (param_c, λ_c, u'(0)_c).
pub fn critical_point(source: Source) -> Result<CriticalPoint> {
    static CACHE: [OnceLock<std::result::Result<CriticalPoint, BratuError>>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match source {
        Source::Exact => &CACHE[0],
        Source::PolyTrial => &CACHE[1],
        Source::SineTrial => &CACHE[2],
    };
    slot.get_or_init(|| compute_critical_point(source)).clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchSolution {
    pub source: Source,
    pub branch: Branch,
    pub param: f64,
    pub lambda: f64,
    pub slope: f64,
}

/// Solutions at one λ: two below the fold, one at it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branches {
    pub lambda: f64,
    pub solutions: Vec<BranchSolution>,
    /// The upper-branch parameter would exceed [`PARAM_MAX`].
    pub upper_out_of_range: bool,
}

impl Branches {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn get(&self, branch: Branch) -> Option<&BranchSolution> {
        self.solutions.iter().find(|s| s.branch == branch)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(BratuError::InvalidLambda(lambda));
    }
    Ok(())
}

/// Invert the source's λ curve on each side of its maximum.
pub fn branches_at(lambda: f64, source: Source) -> Result<Branches> {
    check_lambda(lambda)?;
    let crit = critical_point(source)?;
    if (lambda - crit.lambda).abs() <= FOLD_TOL * crit.lambda {
        let fold = BranchSolution { source, branch: Branch::Fold, param: crit.param, lambda: crit.lambda, slope: crit.slope };
        return Ok(Branches { lambda, solutions: vec![fold], upper_out_of_range: false });
    }
    if lambda > crit.lambda {
        return Err(BratuError::NoSolution { lambda, lambda_c: crit.lambda });
    }

    let g = |p: f64| lambda_of_param(source, p).map(|l| l - lambda).unwrap_or(f64::NAN);
    let solve = |lo: f64, hi: f64, branch: Branch| -> Result<BranchSolution> {
        let p = find_root(g, Bracket::new(lo, hi)?, 1e-14 * (1.0 + hi))?;
        Ok(BranchSolution { source, branch, param: p, lambda, slope: slope_of_param(source, p) })
    };
    let mut solutions = vec![solve(0.0, crit.param, Branch::Lower)?];
    let upper_out_of_range = lambda_of_param(source, PARAM_MAX)? > lambda;
    if !upper_out_of_range {
        solutions.push(solve(crit.param, PARAM_MAX, Branch::Upper)?);
    }
    Ok(Branches { lambda, solutions, upper_out_of_range })
}

/// Builds the series in `x` whose j-th coefficient is `f(j)`.
fn series(order: usize, f: impl FnMut(usize) -> f64) -> PowerSeries {
    PowerSeries::from_fn(order, f)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `u'(0)` as a power series in λ, by expanding λ and the slope in the
/// source's small parameter and reverting.
///
/// The exact family is even in θ, so its small parameter is `s = θ²`:
/// `λ(s) = 2s / cosh²(θ/2)` and `u'(0) = 2 θ sinh(θ/2) / cosh(θ/2)`.
pub fn perturbation_series(source: Source, order: usize) -> Result<PowerSeries> {
    if order > MAX_SERIES_ORDER {
        return Err(BratuError::SeriesOrder { order, cap: MAX_SERIES_ORDER });
    }
    if order == 0 {
        return Ok(PowerSeries::zero(0));
    }
    let x = PowerSeries::variable(order);
    let (lambda_series, slope_series) = match source {
        Source::Exact => {
            // cosh(θ/2) = Σ s^k / (4^k (2k)!)
            let cosh_half = series(order, |k| 1.0 / (4f64.powi(k as i32) * factorial(2 * k)));
            // θ sinh(θ/2) = Σ s^{k+1} / (2^{2k+1} (2k+1)!)
            let theta_sinh_half = series(order, |j| {
                if j == 0 {
                    0.0
                } else {
                    let k = j - 1;
                    1.0 / (2f64.powi(2 * k as i32 + 1) * factorial(2 * k + 1))
                }
            });
            let lam = x.scale(2.0).div(&cosh_half.mul(&cosh_half))?;
            let slope = theta_sinh_half.scale(2.0).div(&cosh_half)?;
            (lam, slope)
        }
        Source::PolyTrial => {
            // F'(A) = Σ A^m c_{m+1} / m!
            let fp = series(order, |m| beta_moment(m + 1) / factorial(m));
            (x.div(&fp.scale(3.0))?, x.clone())
        }
        Source::SineTrial => {
            // I₁ + L₁ = Σ_k (A/2)^{2k+1} / (k!(k+1)!) + Σ_k (A/2)^{2k+2} / (Γ(k+3/2) Γ(k+5/2))
            let gamma_half = |k: usize| (0..k).fold(PI.sqrt() / 2.0, |g, i| g * (i as f64 + 1.5));
            let s1 = series(order, |j| {
                if j == 0 {
                    0.0
                } else if j % 2 == 1 {
                    let k = (j - 1) / 2;
                    0.5f64.powi(j as i32) / (factorial(k) * factorial(k + 1))
                } else {
                    let k = (j - 2) / 2;
                    0.5f64.powi(j as i32) / (gamma_half(k) * gamma_half(k + 1))
                }
            });
            let denom = &PowerSeries::constant(2.0, order) + &s1.scale(PI);
            (x.scale(PI.powi(3) / 2.0).div(&denom)?, x.scale(PI))
        }
    };
    let param_of_lambda = lambda_series.revert()?;
    Ok(slope_series.compose(&param_of_lambda)?)
}

/// The polynomial trial `A x (1 - x)` as a Ritz family.
pub fn poly_trial() -> Result<TrialFamily> {
    Ok(TrialFamily::new(
        "poly",
        &["A"],
        |x, p| p[0] * x * (1.0 - x),
        |x, p| p[0] * (1.0 - 2.0 * x),
        (0.0, 1.0),
        &[2.0],
    )?)
}

/// The sine trial `A sin(πx)` as a Ritz family.
pub fn sine_trial() -> Result<TrialFamily> {
    Ok(TrialFamily::new(
        "sine",
        &["A"],
        |x, p| p[0] * (PI * x).sin(),
        |x, p| p[0] * PI * (PI * x).cos(),
        (0.0, 1.0),
        &[1.0],
    )?)
}

pub fn trial(kind: TrialKind) -> Result<TrialFamily> {
    match kind {
        TrialKind::PolyTrial => poly_trial(),
        TrialKind::SineTrial => sine_trial(),
    }
}

/// `J[u] = ∫₀¹ (u'²/2 - λ e^u) dx`.
pub fn action_functional(lambda: f64) -> ActionFunctional {
    ActionFunctional::new(move |_, u, du| 0.5 * du * du - lambda * u.exp(), Domain::Finite { a: 0.0, b: 1.0 })
        .with_scalar("lambda", lambda)
}

/// One point of the bifurcation diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BifurcationSample {
    pub lambda: f64,
    pub slope: f64,
    pub branch: Branch,
    pub source: CurveSource,
    /// `|slope - exact slope|` on the same branch, for trial sources where
    /// the exact solution exists at this λ.
    pub exact_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationCurve {
    pub source: CurveSource,
    pub samples: Vec<BifurcationSample>,
}

impl BifurcationCurve {
    pub fn branch(&self, branch: Branch) -> impl Iterator<Item = &BifurcationSample> {
        self.samples.iter().filter(move |s| s.branch == branch)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetGap {
    pub source: CurveSource,
    pub branch: Branch,
    pub lambda: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationDataset {
    pub curves: Vec<BifurcationCurve>,
    pub gaps: Vec<DatasetGap>,
}

impl BifurcationDataset {
    pub fn curve(&self, source: CurveSource) -> Option<&BifurcationCurve> {
        self.curves.iter().find(|c| c.source == source)
    }

    pub fn samples(&self) -> impl Iterator<Item = &BifurcationSample> {
        self.curves.iter().flat_map(|c| c.samples.iter())
    }
}

/// Slope-versus-λ samples for each requested source, both branches where
/// they exist. Output is ordered by source, then branch, then λ.
pub fn bifurcation_dataset(sources: &[CurveSource], lambda_grid: &[f64]) -> Result<BifurcationDataset> {
    for &l in lambda_grid {
        check_lambda(l)?;
    }
    let mut grid = lambda_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut wanted = sources.to_vec();
    wanted.sort();
    wanted.dedup();

    let exact_at = |lambda: f64, branch: Branch| -> Option<f64> {
        branches_at(lambda, Source::Exact).ok()?.get(branch).map(|s| s.slope)
    };

    let mut curves = Vec::new();
    let mut gaps = Vec::new();
    for source in wanted {
        let mut samples = Vec::new();
        match source {
            CurveSource::Shooting => {
                for branch in [Branch::Lower, Branch::Upper] {
                    let sweep = oracle::bratu_sweep(&grid, branch);
                    samples.extend(sweep.samples);
                    gaps.extend(sweep.gaps);
                }
            }
            _ => {
                let src = match source {
                    CurveSource::Exact => Source::Exact,
                    CurveSource::PolyTrial => Source::PolyTrial,
                    _ => Source::SineTrial,
                };
                let mut lower = Vec::new();
                let mut upper = Vec::new();
                for &lambda in &grid {
                    match branches_at(lambda, src) {
                        Ok(b) => {
                            for sol in &b.solutions {
                                let exact_deviation = match src {
                                    Source::Exact => None,
                                    _ => exact_at(lambda, sol.branch).map(|e| (sol.slope - e).abs()),
                                };
                                let sample = BifurcationSample {
                                    lambda,
                                    slope: sol.slope,
                                    branch: sol.branch,
                                    source,
                                    exact_deviation,
                                };
                                match sol.branch {
                                    Branch::Upper => upper.push(sample),
                                    _ => lower.push(sample),
                                }
                            }
                            if b.upper_out_of_range {
                                gaps.push(DatasetGap {
                                    source,
                                    branch: Branch::Upper,
                                    lambda,
                                    reason: format!("upper-branch parameter beyond {PARAM_MAX}"),
                                });
                            }
                        }
                        Err(e) => {
                            for branch in [Branch::Lower, Branch::Upper] {
                                gaps.push(DatasetGap { source, branch, lambda, reason: e.to_string() });
                            }
                        }
                    }
                }
                samples.extend(lower);
                samples.extend(upper);
            }
        }
        curves.push(BifurcationCurve { source, samples });
    }
    Ok(BifurcationDataset { curves, gaps })
}

/// Writes `lambda,slope,branch,source` rows in dataset order. `format`
/// renders each number.
pub fn write_csv<W: io::Write>(
    dataset: &BifurcationDataset,
    out: W,
    format: impl Fn(f64) -> String,
) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "slope", "branch", "source"])?;
    for s in dataset.samples() {
        w.write_record([format(s.lambda), format(s.slope), s.branch.name().into(), s.source.name().into()])?;
    }
    w.flush()?;
    Ok(())
}
