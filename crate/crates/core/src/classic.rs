//! Three textbook problems that need no variational machinery: the Duffing
//! potential, the Lambert equation through `z = yⁿ`, and the KdV soliton.

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{ode_solve, NumericsError, OdeTrajectory};
use crate::ritz::{self, ActionFunctional, DecayHint, Domain, RitzError, StationaryPoint, TrialFamily};
use crate::specfun::sech;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicError {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("z = y^n = {z} at x = {x}: the solution has left the positive branch")]
    BranchCrossing { x: f64, z: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Ritz(#[from] RitzError),
}

pub type Result<T> = std::result::Result<T, ClassicError>;

// Duffing: ü - u + εu³ = 0, released from rest at u = A.

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DuffingSpec {
    epsilon: f64,
    amplitude: f64,
}

impl DuffingSpec {
    pub fn new(epsilon: f64, amplitude: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(ClassicError::InvalidSpec(format!("epsilon must be finite, got {epsilon}")));
        }
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(ClassicError::InvalidSpec(format!("amplitude must be positive, got {amplitude}")));
        }
        Ok(Self { epsilon, amplitude })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquilibriumKind {
    Minimum,
    Maximum,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OscillationCenter {
    Origin,
    LeftWell,
    RightWell,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equilibrium {
    pub u: f64,
    pub kind: EquilibriumKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub points: Vec<Equilibrium>,
    pub oscillation_center: OscillationCenter,
    /// `V(A) = 0`: the orbit is the separatrix through the origin and takes
    /// infinite time to reach it.
    pub separatrix: bool,
    pub potential_at_amplitude: f64,
}

/// `V(u) = -u²/2 + εu⁴/4`.
pub fn duffing_potential(epsilon: f64, u: f64) -> f64 {
    let u2 = u * u;
    -0.5 * u2 + 0.25 * epsilon * u2 * u2
}

/// Equilibria and oscillation centre from the shape of `V`.
pub fn duffing_classify(spec: &DuffingSpec) -> EquilibriumReport {
    let DuffingSpec { epsilon, amplitude } = *spec;
    let v_a = duffing_potential(epsilon, amplitude);
    if epsilon <= 0.0 {
        return EquilibriumReport {
            points: vec![Equilibrium { u: 0.0, kind: EquilibriumKind::Unstable }],
            oscillation_center: OscillationCenter::Unbounded,
            separatrix: false,
            potential_at_amplitude: v_a,
        };
    }
    let well = 1.0 / epsilon.sqrt();
    let points = vec![
        Equilibrium { u: -well, kind: EquilibriumKind::Minimum },
        Equilibrium { u: 0.0, kind: EquilibriumKind::Maximum },
        Equilibrium { u: well, kind: EquilibriumKind::Minimum },
    ];
    let separatrix = v_a.abs() <= 1e-12 * amplitude.powi(2).max(1.0);
    let oscillation_center = if v_a > 0.0 && !separatrix {
        OscillationCenter::Origin
    } else {
        OscillationCenter::RightWell
    };
    EquilibriumReport { points, oscillation_center, separatrix, potential_at_amplitude: v_a }
}

/// Integrates the oscillator from `(A, 0)` over `[0, t_end]`.
pub fn duffing_trajectory(spec: &DuffingSpec, t_end: f64) -> std::result::Result<OdeTrajectory, NumericsError> {
    let eps = spec.epsilon;
    ode_solve(
        |_, y, dy| {
            dy[0] = y[1];
            dy[1] = y[0] - eps * y[0].powi(3);
        },
        0.0,
        t_end,
        &[spec.amplitude, 0.0],
        1e-12,
    )
}

// Lambert: y'' + (k²/n) y = (1 - n) y'² / y, linearised by z = yⁿ into
// z'' + k² z = 0.

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambertSpec {
    n: f64,
    k: f64,
    y0: f64,
    yp0: f64,
}

impl LambertSpec {
    pub fn new(n: f64, k: f64, y0: f64, yp0: f64) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(ClassicError::InvalidSpec(format!("n must be positive, got {n}")));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(ClassicError::InvalidSpec(format!("k must be positive, got {k}")));
        }
        if !(y0 > 0.0 && y0.is_finite()) {
            return Err(ClassicError::InvalidSpec(format!("y0 must be positive, got {y0}")));
        }
        if !yp0.is_finite() {
            return Err(ClassicError::InvalidSpec(format!("yp0 must be finite, got {yp0}")));
        }
        Ok(Self { n, k, y0, yp0 })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn yp0(&self) -> f64 {
        self.yp0
    }

    fn z_initial(&self) -> (f64, f64) {
        let z0 = self.y0.powf(self.n);
        (z0, self.n * self.y0.powf(self.n - 1.0) * self.yp0)
    }

    /// `(z, z', z'')` at `x`.
    fn z(&self, x: f64) -> (f64, f64, f64) {
        let (z0, dz0) = self.z_initial();
        let (s, c) = (self.k * x).sin_cos();
        let z = z0 * c + dz0 / self.k * s;
        let dz = -z0 * self.k * s + dz0 * c;
        (z, dz, -self.k * self.k * z)
    }
}

fn lambert_branch(spec: &LambertSpec, x: f64) -> Result<(f64, f64, f64)> {
    let (z, dz, d2z) = spec.z(x);
    if z <= 0.0 {
        return Err(ClassicError::BranchCrossing { x, z });
    }
    Ok((z, dz, d2z))
}

/// `y(x) = z(x)^{1/n}` with `z = y0ⁿ cos kx + (z'(0)/k) sin kx`.
pub fn lambert_solve(spec: &LambertSpec, x: f64) -> Result<f64> {
    let (z, _, _) = lambert_branch(spec, x)?;
    Ok(z.powf(1.0 / spec.n))
}

/// `(y, y', y'')` at `x` from the derivatives of `z`.
pub fn lambert_derivatives(spec: &LambertSpec, x: f64) -> Result<(f64, f64, f64)> {
    let (z, dz, d2z) = lambert_branch(spec, x)?;
    let m = 1.0 / spec.n;
    let y = z.powf(m);
    let dy = m * y / z * dz;
    let d2y = m * y / z * d2z + m * (m - 1.0) * y / (z * z) * dz * dz;
    Ok((y, dy, d2y))
}

/// `y'' + (k²/n) y - (1 - n) y'²/y` with derivatives by five-point
/// central differences, step `h`.
pub fn lambert_fd_residual(spec: &LambertSpec, x: f64, h: f64) -> Result<f64> {
    let mut y = [0.0; 5];
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = lambert_solve(spec, x + (i as f64 - 2.0) * h)?;
    }
    let d1 = (y[0] - 8.0 * y[1] + 8.0 * y[3] - y[4]) / (12.0 * h);
    let d2 = (-y[0] + 16.0 * y[1] - 30.0 * y[2] + 16.0 * y[3] - y[4]) / (12.0 * h * h);
    Ok(d2 + spec.k * spec.k / spec.n * y[2] - (1.0 - spec.n) * d1 * d1 / y[2])
}

/// [`lambert_fd_residual`] with step `min(1e-3, 4e-3·z/|z'|)`, which
/// balances truncation against roundoff as `z` approaches zero.
pub fn lambert_residual_at(spec: &LambertSpec, x: f64) -> Result<f64> {
    let (z, dz, _) = lambert_branch(spec, x)?;
    let h = if dz == 0.0 { 1e-3 } else { (4e-3 * z / dz.abs()).min(1e-3) };
    lambert_fd_residual(spec, x, h)
}

/// First `x > 0` where `z` falls to `z_floor`, or `2π/k` if it never does
/// within one period.
pub fn lambert_positive_extent(spec: &LambertSpec, z_floor: f64) -> f64 {
    let (z0, dz0) = spec.z_initial();
    // z = R cos(kx - φ)
    let r = z0.hypot(dz0 / spec.k);
    let phi = (dz0 / spec.k).atan2(z0);
    if z_floor >= r {
        return 0.0;
    }
    let x = (phi + (z_floor / r).acos()) / spec.k;
    if x > 0.0 {
        x
    } else {
        2.0 * std::f64::consts::PI / spec.k
    }
}

/// Largest [`lambert_residual_at`] on `samples` evenly spaced points of
/// `[0, x_end]`.
pub fn lambert_residual_norm(spec: &LambertSpec, x_end: f64, samples: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let x = x_end * i as f64 / (samples.max(2) - 1) as f64;
        worst = worst.max(lambert_residual_at(spec, x)?.abs());
    }
    Ok(worst)
}

// KdV travelling wave: u'' - cu - 3u² = 0 with u = p sech²(qξ).

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KdvSoliton {
    pub c: f64,
    pub p: f64,
    pub q: f64,
}

impl KdvSoliton {
    pub fn u(&self, xi: f64) -> f64 {
        let s = sech(self.q * xi);
        self.p * s * s
    }
}

/// Matches the `sech²` and `sech⁴` coefficients of the residual:
/// `4q² = c` and `p = -2q²`, so `p = -c/2`, `q = √c/2`.
pub fn kdv_soliton_solve(c: f64) -> Result<KdvSoliton> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(ClassicError::InvalidSpec(format!("wave speed must be positive, got {c}")));
    }
    let q = 0.5 * c.sqrt();
    Ok(KdvSoliton { c, p: -2.0 * q * q, q })
}

/// `u'' - cu - 3u²` at `ξ`, analytically:
/// `p(4q² - c) s² - 3p(2q² + p) s⁴` with `s = sech(qξ)`.
pub fn kdv_residual(sol: &KdvSoliton, xi: f64) -> f64 {
    let KdvSoliton { c, p, q } = *sol;
    let s2 = sech(q * xi).powi(2);
    p * (4.0 * q * q - c) * s2 - 3.0 * p * (2.0 * q * q + p) * s2 * s2
}

/// Largest `|residual|` on `samples` evenly spaced points of `[-half_width, half_width]`.
pub fn kdv_max_residual(sol: &KdvSoliton, half_width: f64, samples: usize) -> f64 {
    (0..samples)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / (samples.max(2) - 1) as f64)
        .map(|xi| kdv_residual(sol, xi).abs())
        .fold(0.0, f64::max)
}

/// `u = p sech²(qξ)` as a two-parameter Ritz family.
pub fn kdv_trial() -> Result<TrialFamily> {
    Ok(TrialFamily::new(
        "sech-squared",
        &["p", "q"],
        |x, v| {
            let s = sech(v[1] * x);
            v[0] * s * s
        },
        |x, v| {
            let s = sech(v[1] * x);
            -2.0 * v[0] * v[1] * s * s * (v[1] * x).tanh()
        },
        (0.0, 4.0),
        &[-0.4, 0.4],
    )?)
}

/// `J = ∫₀^∞ [u'²/2 + (c/2) u² + u³] dξ`.
pub fn kdv_action(c: f64) -> ActionFunctional {
    ActionFunctional::new(
        move |_, u, du| 0.5 * du * du + 0.5 * c * u * u + u * u * u,
        Domain::SemiInfinite { decay: DecayHint::Param(1) },
    )
    .with_scalar("c", c)
}

/// Closed form of [`kdv_action`] on the trial, `q > 0`:
/// `4p²q/15 + cp²/(3q) + 8p³/(15q)`.
pub fn kdv_action_on_trial(c: f64, p: f64, q: f64) -> f64 {
    4.0 * p * p * q / 15.0 + c * p * p / (3.0 * q) + 8.0 * p.powi(3) / (15.0 * q)
}

/// Stationary point of the half-line action by the Ritz engine.
pub fn kdv_ritz(c: f64, init: [f64; 2]) -> Result<StationaryPoint> {
    Ok(ritz::stationary_point(&kdv_action(c), &kdv_trial()?, &init)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KdvConvention {
    pub p: f64,
    pub q: f64,
    pub max_residual: f64,
}

/// Both signs of `p` with their residuals against `u'' - cu - 3u² = 0`,
/// plus the Ritz stationary point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KdvReport {
    pub c: f64,
    /// `p = -c/2`: solves the equation as written.
    pub canonical: KdvConvention,
    /// `p = +c/2`: solves the mirrored equation `u'' - cu + 3u² = 0`.
    pub mirrored: KdvConvention,
    pub ritz_p: f64,
    pub ritz_q: f64,
    pub ritz_max_residual: f64,
    pub ritz_gap: f64,
    pub finding: String,
}

pub fn kdv_report(c: f64) -> Result<KdvReport> {
    let sol = kdv_soliton_solve(c)?;
    let residual = |p: f64, q: f64| kdv_max_residual(&KdvSoliton { c, p, q }, 10.0, 2001);
    let canonical = KdvConvention { p: sol.p, q: sol.q, max_residual: residual(sol.p, sol.q) };
    let mirrored = KdvConvention { p: -sol.p, q: sol.q, max_residual: residual(-sol.p, sol.q) };
    let init = [-0.8 * c / 2.0, 0.8 * sol.q];
    let st = kdv_ritz(c, init)?;
    let (rp, rq) = (st.params[0], st.params[1]);
    Ok(KdvReport {
        c,
        canonical,
        mirrored,
        ritz_p: rp,
        ritz_q: rq,
        ritz_max_residual: residual(rp, rq),
        ritz_gap: (rp - sol.p).abs().max((rq - sol.q).abs()),
        finding: format!(
            "p = -c/2 = {} makes u'' - cu - 3u^2 vanish; p = +c/2 leaves residual {:.3e} and solves u'' - cu + 3u^2 = 0 instead",
            sol.p, mirrored.max_residual
        ),
    })
}
