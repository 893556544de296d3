//! nth-order kinetics `dx/dt = k (a - x)^n` for the extent of reaction
//! `x(t)`: the exact solution, the first-order variational surrogate
//! `x = a (1 - e^{-ηt})`, partial reaction times, order inference, and a
//! reconstruction of the erroneous second-order closed form with its pole.

use std::f64::consts::{LN_2, SQRT_2};

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{find_root, ode_solve, Bracket, NumericsError};
use crate::ritz::{
    self, ActionFunctional, DecayHint, Domain, RitzError, StationaryPoint, TrialFamily,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KineticsError {
    #[error("invalid reaction: {0}")]
    InvalidSpec(String),
    #[error("t_quarter / t_half = {ratio} admits no real order (needs a ratio above 1)")]
    RatioOutOfRange { ratio: f64 },
    #[error("partial reaction times must be positive, got t_half = {t_half}, t_quarter = {t_quarter}")]
    InvalidTimes { t_half: f64, t_quarter: f64 },
    #[error(transparent)]
    Ritz(#[from] RitzError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, KineticsError>;

/// Order `n ≥ 1` (real), rate constant `k > 0` and initial amount `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReactionSpec {
    n: f64,
    k: f64,
    a: f64,
}

impl ReactionSpec {
    pub fn new(n: f64, k: f64, a: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(KineticsError::InvalidSpec(format!("order must be a finite real >= 1, got {n}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(KineticsError::InvalidSpec(format!("rate constant must be positive, got {k}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(KineticsError::InvalidSpec(format!("initial amount must be positive, got {a}")));
        }
        Ok(Self { n, k, a })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    fn is_first_order(&self) -> bool {
        self.n == 1.0
    }

    /// Right-hand side of the rate law.
    pub fn rate(&self, x: f64) -> f64 {
        self.k * (self.a - x).max(0.0).powf(self.n)
    }
}

/// Which closed form a time or profile comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Estimate {
    Exact,
    Variational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileSource {
    Exact,
    Variational,
    /// `a (1 - 1/(1 - k a t))`, the mistaken second-order solution.
    HeErroneous,
}

/// The extent of reaction `x(t)` from one of the three closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KineticsProfile {
    pub source: ProfileSource,
    pub spec: ReactionSpec,
    pub eta: Option<f64>,
}

impl KineticsProfile {
    pub fn exact(spec: ReactionSpec) -> Self {
        Self { source: ProfileSource::Exact, spec, eta: None }
    }

    pub fn variational(spec: ReactionSpec) -> Self {
        Self { source: ProfileSource::Variational, spec, eta: Some(variational_eta(&spec)) }
    }

    /// The erroneous profile only exists for second order.
    pub fn he_erroneous(k: f64, a: f64) -> Result<Self> {
        Ok(Self { source: ProfileSource::HeErroneous, spec: ReactionSpec::new(2.0, k, a)?, eta: None })
    }

    pub fn extent(&self, t: f64) -> f64 {
        let s = &self.spec;
        match self.source {
            ProfileSource::Exact => exact_extent(s, t),
            ProfileSource::Variational => s.a * -(-self.eta.unwrap_or_else(|| variational_eta(s)) * t).exp_m1(),
            ProfileSource::HeErroneous => s.a * (1.0 - 1.0 / (1.0 - s.k * s.a * t)),
        }
    }
}

/// `x(t) = a {1 - [1 + k(n-1)a^{n-1} t]^{-1/(n-1)}}`, or `a (1 - e^{-kt})`
/// for a first-order reaction.
pub fn exact_extent(spec: &ReactionSpec, t: f64) -> f64 {
    let ReactionSpec { n, k, a } = *spec;
    if spec.is_first_order() {
        return a * -(-k * t).exp_m1();
    }
    let m = n - 1.0;
    let growth = (k * m * a.powf(m) * t).ln_1p();
    a * -(-growth / m).exp_m1()
}

/// Optimal rate of the exponential ansatz: `η = k a^{n-1} / √n`.
pub fn variational_eta(spec: &ReactionSpec) -> f64 {
    spec.k * spec.a.powf(spec.n - 1.0) / spec.n.sqrt()
}

/// Time for the extent to reach `fraction · a`, `0 ≤ fraction < 1`.
pub fn partial_time(spec: &ReactionSpec, fraction: f64, source: Estimate) -> f64 {
    assert!((0.0..1.0).contains(&fraction), "fraction must lie in [0, 1)");
    let log_remaining = (-fraction).ln_1p();
    match source {
        Estimate::Variational => -log_remaining / variational_eta(spec),
        Estimate::Exact if spec.is_first_order() => -log_remaining / spec.k,
        Estimate::Exact => {
            let m = spec.n - 1.0;
            (-m * log_remaining).exp_m1() / (spec.k * m * spec.a.powf(m))
        }
    }
}

/// `t₁/₂`: extent `a/2`. Exact: `(2^{n-1} - 1)/(k(n-1)a^{n-1})`, `ln2/k`
/// at first order. Variational: `√n ln2 / (k a^{n-1})`, always positive.
pub fn half_time(spec: &ReactionSpec, source: Estimate) -> f64 {
    match source {
        Estimate::Exact if spec.is_first_order() => LN_2 / spec.k,
        Estimate::Exact => {
            let m = spec.n - 1.0;
            (2f64.powf(m) - 1.0) / (spec.k * m * spec.a.powf(m))
        }
        Estimate::Variational => LN_2 / variational_eta(spec),
    }
}

/// `t₁/₄`: a quarter of the reactant left, extent `3a/4`.
pub fn quarter_time(spec: &ReactionSpec, source: Estimate) -> f64 {
    partial_time(spec, 0.75, source)
}

/// `t₁/₄ / t₁/₂`: `2^{n-1} + 1` for the exact law, `2` for the
/// exponential ansatz regardless of order.
pub fn partial_time_ratio(spec: &ReactionSpec, source: Estimate) -> f64 {
    match source {
        Estimate::Exact => 2f64.powf(spec.n - 1.0) + 1.0,
        Estimate::Variational => 2.0,
    }
}

/// Reaction order from measured half and quarter times, inverting
/// `t₁/₄ / t₁/₂ = 2^{n-1} + 1`.
pub fn infer_order(t_half: f64, t_quarter: f64) -> Result<f64> {
    if !(t_half > 0.0 && t_quarter > 0.0 && t_half.is_finite() && t_quarter.is_finite()) {
        return Err(KineticsError::InvalidTimes { t_half, t_quarter });
    }
    let ratio = t_quarter / t_half;
    if ratio <= 1.0 {
        return Err(KineticsError::RatioOutOfRange { ratio });
    }
    Ok(1.0 + (ratio - 1.0).log2())
}

/// Time at which `profile` reaches `fraction · a`, by bracketed root finding
/// on the profile itself.
pub fn locate_time(profile: &KineticsProfile, fraction: f64) -> Result<f64> {
    let target = fraction * profile.spec.a;
    let g = |t: f64| profile.extent(t) - target;
    let mut hi = 1.0 / (profile.spec.k * profile.spec.a.powf(profile.spec.n - 1.0));
    while g(hi) < 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(NumericsError::NoSignChange { lo: 0.0, hi, f_lo: g(0.0), f_hi: g(hi) }.into());
        }
    }
    Ok(find_root(g, Bracket::new(0.0, hi)?, 1e-15 * hi)?)
}

/// The exponential ansatz as a Ritz trial family with parameter `η`.
pub fn trial_family(spec: &ReactionSpec) -> Result<TrialFamily> {
    let a = spec.a;
    let eta0 = variational_eta(spec);
    Ok(TrialFamily::new(
        "exponential-extent",
        &["eta"],
        move |t, p| a * -(-p[0] * t).exp_m1(),
        move |t, p| a * p[0] * (-p[0] * t).exp(),
        (0.0, 3.0 / eta0),
        &[eta0],
    )?)
}

/// `J = ½ ∫₀^∞ [x'² + k² (a - x)^{2n}] dt`.
pub fn action_functional(spec: &ReactionSpec) -> ActionFunctional {
    let ReactionSpec { n, k, a } = *spec;
    ActionFunctional::new(
        move |_, x, dx| 0.5 * (dx * dx + k * k * (a - x).max(0.0).powf(2.0 * n)),
        Domain::SemiInfinite { decay: DecayHint::Param(0) },
    )
    .with_scalar("n", n)
    .with_scalar("k", k)
    .with_scalar("a", a)
}

/// Closed form of the action on the ansatz: `a²η/4 + k² a^{2n} / (4nη)`.
pub fn action_on_ansatz(spec: &ReactionSpec, eta: f64) -> f64 {
    let ReactionSpec { n, k, a } = *spec;
    a * a * eta / 4.0 + k * k * a.powf(2.0 * n) / (4.0 * n * eta)
}

/// Stationary `η` of the action, found numerically by the Ritz engine.
pub fn numeric_eta(spec: &ReactionSpec, init: f64) -> Result<StationaryPoint> {
    let trial = trial_family(spec)?;
    Ok(ritz::stationary_point(&action_functional(spec), &trial, &[init])?)
}

/// Reconstruction of the mistaken second-order solution and what is wrong
/// with it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrataReport {
    pub k: f64,
    pub a: f64,
    /// `1/(ka)`, where `a (1 - 1/(1 - kat))` diverges.
    pub pole_time: f64,
    /// `-1/(ka)`, the half-time implied by the erroneous formula.
    pub half_time: f64,
    pub pole_unphysical: bool,
    pub half_time_unphysical: bool,
    /// Variational half-time with the sign as printed alongside the error,
    /// `-√2 ln2 / (ka)`.
    pub variational_half_time_as_printed: f64,
    /// The same quantity with the sign corrected.
    pub variational_half_time: f64,
    pub exact_half_time: f64,
    /// Largest extent reached by integrating the true rate law to
    /// `5 · pole_time`; stays below `a`.
    pub integrated_max_extent: f64,
    pub integrated_is_monotone: bool,
    /// Where integration of `x' = -k (a - x)²`, the law the erroneous
    /// formula actually solves, breaks down.
    pub erroneous_law_blowup: Option<f64>,
}

pub fn he_erroneous_analysis(k: f64, a: f64) -> Result<ErrataReport> {
    let spec = ReactionSpec::new(2.0, k, a)?;
    let pole_time = 1.0 / (k * a);
    let he_profile = KineticsProfile::he_erroneous(k, a)?;
    // Solving a(1 - 1/(1 - kat)) = a/2 gives 1 - kat = -1.
    let he_half_time = -pole_time;
    debug_assert!((he_profile.extent(he_half_time) - a / 2.0).abs() <= 1e-12 * a);

    let correct = ode_solve(|_, x, d| d[0] = spec.rate(x[0]), 0.0, 5.0 * pole_time, &[0.0], 1e-11)?;
    let extents: Vec<f64> = correct.nodes().iter().map(|n| n.state[0]).collect();
    let integrated_max_extent = extents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let integrated_is_monotone = extents.windows(2).all(|w| w[1] >= w[0]);

    let erroneous_law_blowup = match ode_solve(
        |_, x, d| d[0] = -k * (a - x[0]) * (a - x[0]),
        0.0,
        5.0 * pole_time,
        &[0.0],
        1e-11,
    ) {
        Err(NumericsError::StepUnderflow { t, .. }) => Some(t),
        Err(NumericsError::StepBudgetExhausted { t, .. }) => Some(t),
        _ => None,
    };

    Ok(ErrataReport {
        k,
        a,
        pole_time,
        half_time: he_half_time,
        pole_unphysical: pole_time > 0.0,
        half_time_unphysical: he_half_time < 0.0,
        variational_half_time_as_printed: -SQRT_2 * LN_2 / (k * a),
        variational_half_time: half_time(&spec, Estimate::Variational),
        exact_half_time: half_time(&spec, Estimate::Exact),
        integrated_max_extent,
        integrated_is_monotone,
        erroneous_law_blowup,
    })
}
