use super::{find_root, Bracket, NumericsError, Result};

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the 5th- and 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Upper bound on the step; `f64::INFINITY` leaves it to the controller.
    pub max_step: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { rtol: tol, atol: tol, max_step: f64::INFINITY, max_steps: 1_000_000 }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self::with_tol(1e-10)
    }
}

/// One accepted step: time, state and the right-hand side evaluated there.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeNode {
    pub t: f64,
    pub state: Vec<f64>,
    pub deriv: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrajectory {
    nodes: Vec<OdeNode>,
    tolerance: f64,
}

impl OdeTrajectory {
    pub fn nodes(&self) -> &[OdeNode] {
        &self.nodes
    }

    /// Local tolerance the integrator was asked to meet.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn t_start(&self) -> f64 {
        self.nodes[0].t
    }

    pub fn t_end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1].t
    }

    pub fn final_state(&self) -> &[f64] {
        &self.nodes[self.nodes.len() - 1].state
    }

    /// Cubic Hermite interpolation between the accepted steps bracketing
    /// `t`. Returns `None` outside the integrated span.
    pub fn state_at(&self, t: f64) -> Option<Vec<f64>> {
        let (t0, t1) = (self.t_start(), self.t_end());
        let forward = t1 >= t0;
        let inside = if forward { t0 <= t && t <= t1 } else { t1 <= t && t <= t0 };
        if !inside {
            return None;
        }
        let idx = self
            .nodes
            .partition_point(|n| if forward { n.t < t } else { n.t > t })
            .clamp(1, self.nodes.len() - 1);
        let (left, right) = (&self.nodes[idx - 1], &self.nodes[idx]);
        let h = right.t - left.t;
        if h == 0.0 {
            return Some(right.state.clone());
        }
        let s = (t - left.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        Some(
            left.state
                .iter()
                .zip(&right.state)
                .zip(left.deriv.iter().zip(&right.deriv))
                .map(|((y0, y1), (d0, d1))| h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1)
                .collect(),
        )
    }

    /// First time at which `g(t, state)` changes sign along the trajectory,
    /// refined on the dense output to width `tol`.
    pub fn find_crossing<G>(&self, mut g: G, tol: f64) -> Option<f64>
    where
        G: FnMut(f64, &[f64]) -> f64,
    {
        let mut prev = g(self.nodes[0].t, &self.nodes[0].state);
        if prev == 0.0 {
            return Some(self.nodes[0].t);
        }
        for pair in self.nodes.windows(2) {
            let cur = g(pair[1].t, &pair[1].state);
            if cur == 0.0 {
                return Some(pair[1].t);
            }
            if cur.signum() != prev.signum() {
                let (lo, hi) = if pair[0].t < pair[1].t {
                    (pair[0].t, pair[1].t)
                } else {
                    (pair[1].t, pair[0].t)
                };
                let bracket = Bracket::new(lo, hi).ok()?;
                return find_root(
                    |t| {
                        let y = self.state_at(t).expect("t inside span");
                        g(t, &y)
                    },
                    bracket,
                    tol,
                )
                .ok();
            }
            prev = cur;
        }
        None
    }
}

/// Integrate `state' = rhs(t, state)` from `t0` to `t1` with both relative
/// and absolute local tolerance `tol`.
pub fn ode_solve<F>(rhs: F, t0: f64, t1: f64, state0: &[f64], tol: f64) -> Result<OdeTrajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    ode_solve_with(rhs, t0, t1, state0, &OdeOptions::with_tol(tol))
}

pub fn ode_solve_with<F>(
    mut rhs: F,
    t0: f64,
    t1: f64,
    state0: &[f64],
    opts: &OdeOptions,
) -> Result<OdeTrajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = state0.len();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = state0.to_vec();
    let mut f0 = vec![0.0; dim];
    rhs(t, &y, &mut f0);

    let mut nodes = vec![OdeNode { t, state: y.clone(), deriv: f0.clone() }];
    if t0 == t1 || dim == 0 {
        return Ok(OdeTrajectory { nodes, tolerance: opts.rtol });
    }

    let span = (t1 - t0).abs();
    let mut h = initial_step(&mut rhs, t, &y, &f0, dir, opts).min(span).min(opts.max_step);
    let mut k = vec![vec![0.0; dim]; 7];
    let mut stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut steps = 0usize;
    k[0].copy_from_slice(&f0);

    while (t1 - t) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(NumericsError::StepBudgetExhausted { t, steps });
        }
        let remaining = (t1 - t).abs();
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        if h < 16.0 * f64::EPSILON * t.abs().max(span.min(1.0)) {
            return Err(NumericsError::StepUnderflow { t, h });
        }
        let hs = h * dir;

        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                stage[i] = y[i] + hs * acc;
            }
            rhs(t + C[s] * hs, &stage, &mut k[s]);
        }
        // Stage 7 is evaluated at the 5th-order solution (FSAL).
        y_new.copy_from_slice(&stage);

        let mut err = 0.0f64;
        let mut finite = true;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= hs;
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            let r = e / sc;
            err = err.max(r.abs());
            finite &= y_new[i].is_finite() && k[6][i].is_finite();
        }
        if !finite || !err.is_finite() {
            h *= 0.25;
            continue;
        }

        if err <= 1.0 {
            steps += 1;
            t = if last { t1 } else { t + hs };
            y.copy_from_slice(&y_new);
            let (first, rest) = k.split_at_mut(1);
            first[0].copy_from_slice(&rest[5]);
            nodes.push(OdeNode { t, state: y.clone(), deriv: k[0].clone() });
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * factor).min(opts.max_step);
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }

    Ok(OdeTrajectory { nodes, tolerance: opts.rtol })
}

fn initial_step<F>(rhs: &mut F, t: f64, y: &[f64], f0: &[f64], dir: f64, opts: &OdeOptions) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let scale = |i: usize| opts.atol + opts.rtol * y[i].abs();
    let norm = |v: &[f64]| {
        (v.iter().enumerate().map(|(i, x)| (x / scale(i)).powi(2)).sum::<f64>() / v.len() as f64)
            .sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: Vec<f64> = y.iter().zip(f0).map(|(yi, fi)| yi + dir * h0 * fi).collect();
    let mut f1 = vec![0.0; y.len()];
    rhs(t + dir * h0, &y1, &mut f1);
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    if h1.is_finite() {
        (100.0 * h0).min(h1)
    } else {
        h0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_rhs_keeps_state() {
        let tr = ode_solve(|_, _, d| d.fill(0.0), 0.0, 5.0, &[1.5, -2.0], 1e-10).unwrap();
        assert_eq!(tr.final_state(), &[1.5, -2.0]);
        assert_eq!(tr.state_at(2.2).unwrap(), vec![1.5, -2.0]);
    }

    #[test]
    fn second_order_rate_law() {
        // x' = (1 - x)^2, x(0) = 0  =>  x = t / (1 + t)
        let tr = ode_solve(|_, x, d| d[0] = (1.0 - x[0]).powi(2), 0.0, 0.5, &[0.0], 1e-12).unwrap();
        assert!((tr.final_state()[0] - 1.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn harmonic_oscillator_quarter_period() {
        let tr = ode_solve(|_, u, d| {
            d[0] = u[1];
            d[1] = -u[0];
        }, 0.0, FRAC_PI_2, &[0.0, 1.0], 1e-12)
        .unwrap();
        assert!((tr.final_state()[0] - 1.0).abs() < 1e-10);
        assert!(tr.final_state()[1].abs() < 1e-10);
    }

    #[test]
    fn harmonic_oscillator_conserves_energy() {
        let tr = ode_solve(|_, u, d| {
            d[0] = u[1];
            d[1] = -u[0];
        }, 0.0, 20.0, &[0.0, 1.0], 1e-10)
        .unwrap();
        for n in tr.nodes() {
            let e = n.state[0].powi(2) + n.state[1].powi(2);
            assert!((e - 1.0).abs() < 1e-8, "t = {}: {e}", n.t);
        }
    }

    #[test]
    fn dense_output_and_event_location() {
        let tr = ode_solve(|_, u, d| {
            d[0] = u[1];
            d[1] = -u[0];
        }, 0.0, 4.0, &[0.0, 1.0], 1e-12)
        .unwrap();
        for &t in &[0.1, 0.77, 1.9, 3.3] {
            let y = tr.state_at(t).unwrap();
            assert!((y[0] - t.sin()).abs() < 1e-9, "t = {t}");
        }
        let t_cross = tr.find_crossing(|_, y| y[0] - 0.5, 1e-14).unwrap();
        assert!((t_cross - (0.5f64).asin()).abs() < 1e-9);
        assert!(tr.state_at(4.5).is_none());
    }

    #[test]
    fn backward_integration() {
        let tr = ode_solve(|_, x, d| d[0] = x[0], 1.0, 0.0, &[1.0f64.exp()], 1e-12).unwrap();
        assert!((tr.final_state()[0] - 1.0).abs() < 1e-11);
        assert!((tr.state_at(0.5).unwrap()[0] - 0.5f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn pole_triggers_step_underflow() {
        // x' = x^2, x(0) = 1 blows up at t = 1.
        let err = ode_solve(|_, x, d| d[0] = x[0] * x[0], 0.0, 2.0, &[1.0], 1e-10).unwrap_err();
        match err {
            NumericsError::StepUnderflow { t, .. } => assert!((t - 1.0).abs() < 1e-3, "{t}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
