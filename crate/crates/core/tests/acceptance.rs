//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use proptest::prop_oneof;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use ritz_core::bratu::{self, branches_at, critical_point, perturbation_series, Branch, BratuError, Source};
use ritz_core::classic::{self, DuffingSpec, LambertSpec, OscillationCenter};
use ritz_core::kinetics::{self, Estimate, ReactionSpec};
use ritz_core::numerics::{ode_solve, Bracket, PowerSeries};
use ritz_core::oracle::{self, bratu_shoot, ShootingProblem, OracleError, SHOOTING_GRID};
use ritz_core::ritz::action_value;
use ritz_core::specfun::{bessel_struve_sum_one, sinh_poisson_integral, AccuracySpec};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

fn exact_critical() -> Outcome {
    let c = critical_point(Source::Exact).unwrap();
    let ok = within(c.param, 2.399357280, 1e-8) && within(c.lambda, 3.513830719, 1e-8) && within(c.slope, 4.0, 1e-6);
    outcome(ok, format!("theta_c={:.12} lambda_c={:.12} slope_c={:.12} (tol 1e-8, 1e-8, 1e-6)", c.param, c.lambda, c.slope))
}

fn poly_critical() -> Outcome {
    let c = critical_point(Source::PolyTrial).unwrap();
    let ok = within(c.param, 4.727715383, 1e-8) && within(c.lambda, 3.569086042, 1e-8);
    outcome(ok, format!("A_c={:.12} lambda_c={:.12} (tol 1e-8)", c.param, c.lambda))
}

fn sine_critical() -> Outcome {
    let c = critical_point(Source::SineTrial).unwrap();
    let ok = within(c.lambda, 3.509329130, 1e-8) && within(c.slope, 3.756549365, 1e-8);
    outcome(ok, format!("lambda_c={:.12} slope_c={:.12} (tol 1e-8)", c.lambda, c.slope))
}

fn series_coefficients() -> Outcome {
    let pi2 = PI * PI;
    let cases: [(Source, Vec<f64>); 3] = [
        (Source::Exact, vec![0.5, 1.0 / 24.0, 1.0 / 160.0]),
        (Source::PolyTrial, vec![0.5, 1.0 / 20.0, 43.0 / 5600.0]),
        (
            Source::SineTrial,
            vec![
                4.0 / pi2,
                4.0 / pi2.powi(2),
                4.0 * (3.0 * pi2 + 16.0) / (3.0 * pi2.powi(4)),
                4.0 * (pi2 + 18.0) / pi2.powi(5),
            ],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (src, want) in cases {
        let s = perturbation_series(src, want.len()).unwrap();
        for (j, w) in want.iter().enumerate() {
            worst = worst.max(((s.coeff(j + 1) - w) / w).abs());
        }
    }
    outcome(worst <= 1e-9, format!("max relative error {worst:.2e} (tol 1e-9)"))
}

fn bifurcation_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    for branch in [Branch::Lower, Branch::Upper] {
        let curve = oracle::bratu_sweep(&SHOOTING_GRID, branch);
        missing += curve.gaps.len();
        for s in &curve.samples {
            let exact = branches_at(s.lambda, Source::Exact).unwrap().get(branch).unwrap().slope;
            worst = worst.max((s.slope - exact).abs());
        }
    }
    let mut counts_ok = true;
    for src in Source::ALL {
        let lc = critical_point(src).unwrap().lambda;
        counts_ok &= branches_at(0.99 * lc, src).map(|b| b.count()).unwrap_or(0) == 2;
        counts_ok &= branches_at(lc, src).map(|b| b.count()).unwrap_or(0) == 1;
        counts_ok &= matches!(branches_at(1.01 * lc, src), Err(BratuError::NoSolution { .. }));
    }
    // the shooting oracle sees the same pattern
    let lc = critical_point(Source::Exact).unwrap().lambda;
    let below = oracle::bratu_sweep(&[0.99 * lc], Branch::Lower).samples.len()
        + oracle::bratu_sweep(&[0.99 * lc], Branch::Upper).samples.len();
    let mut fold = ShootingProblem::new(lc, Bracket::new(3.9, 4.1).unwrap());
    fold.grid_tol = 1e-8;
    let at = bratu_shoot(&fold).map(|r| r.tangent && within(r.slope_at_origin, 4.0, 1e-5)).unwrap_or(false);
    let above = matches!(
        bratu_shoot(&ShootingProblem::new(1.01 * lc, Bracket::new(0.0, 8.0).unwrap())),
        Err(OracleError::NoSignChange { .. })
    );
    counts_ok &= below == 2 && at && above;
    outcome(
        worst < 1e-6 && missing == 0 && counts_ok,
        format!("max |shooting - exact| = {worst:.2e} (tol 1e-6), gaps {missing}, 2/1/0 counts {counts_ok}"),
    )
}

fn kinetics_claims() -> Outcome {
    let mut worst_eta: f64 = 0.0;
    let mut ratios_ok = true;
    for n in [1.0, 2.0, 3.0, 5.0] {
        let spec = ReactionSpec::new(n, 1.7, 0.6).unwrap();
        let eta = kinetics::variational_eta(&spec);
        let formula = 1.7 * 0.6f64.powf(n - 1.0) / n.sqrt();
        let numeric = kinetics::numeric_eta(&spec, eta * 1.3).unwrap().params[0];
        worst_eta = worst_eta.max(((eta - formula) / formula).abs()).max(((numeric - eta) / eta).abs());
        ratios_ok &= kinetics::partial_time_ratio(&spec, Estimate::Exact) == 2f64.powf(n - 1.0) + 1.0;
        ratios_ok &= kinetics::partial_time_ratio(&spec, Estimate::Variational) == 2.0;
    }
    let mut errata_ok = true;
    for (k, a) in [(1.0, 1.0), (2.0, 0.25)] {
        let r = kinetics::he_erroneous_analysis(k, a).unwrap();
        errata_ok &= within(r.pole_time, 1.0 / (k * a), 1e-15) && within(r.half_time, -1.0 / (k * a), 1e-15);
        errata_ok &= r.pole_unphysical && r.half_time_unphysical;
    }
    outcome(
        worst_eta <= 1e-8 && ratios_ok && errata_ok,
        format!("eta max relative error {worst_eta:.2e} (tol 1e-8), ratios exact {ratios_ok}, errata pole/half-time {errata_ok}"),
    )
}

fn kdv_claims() -> Outcome {
    let mut gap: f64 = 0.0;
    let mut q_err: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let mut finding = true;
    for c in [1.0, 4.0] {
        let r = classic::kdv_report(c).unwrap();
        gap = gap.max(r.ritz_gap);
        q_err = q_err.max((r.canonical.q - c.sqrt() / 2.0).abs());
        residual = residual.max(r.canonical.max_residual).max(r.ritz_max_residual);
        finding &= r.canonical.p < 0.0 && r.mirrored.max_residual > 1e-3 && r.finding.contains("p = -c/2");
    }
    outcome(
        gap < 1e-7 && q_err < 1e-8 && residual < 1e-9 && finding,
        format!("ritz gap {gap:.2e} (tol 1e-7), |q - sqrt(c)/2| {q_err:.2e} (tol 1e-8), residual {residual:.2e} (tol 1e-9), sign finding recorded {finding}"),
    )
}

fn lambert_claims() -> Outcome {
    let mut residual: f64 = 0.0;
    let mut ode_gap: f64 = 0.0;
    for n in [1.0, 2.0, 3.0] {
        for k in [1.0, 2.0] {
            let spec = LambertSpec::new(n, k, 1.0, 0.3).unwrap();
            let x_end = classic::lambert_positive_extent(&spec, 0.1);
            residual = residual.max(classic::lambert_residual_norm(&spec, x_end, 400).unwrap());
            let traj = ode_solve(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = (1.0 - n) * y[1] * y[1] / y[0] - k * k / n * y[0];
                },
                0.0,
                x_end,
                &[1.0, 0.3],
                1e-12,
            )
            .unwrap();
            for node in traj.nodes() {
                ode_gap = ode_gap.max((classic::lambert_solve(&spec, node.t).unwrap() - node.state[0]).abs());
            }
        }
    }
    outcome(
        residual < 1e-7 && ode_gap < 1e-6,
        format!("residual {residual:.2e} (tol 1e-7), direct integration gap {ode_gap:.2e} (tol 1e-6)"),
    )
}

fn duffing_claims() -> Outcome {
    let mut pattern_ok = true;
    let mut drift: f64 = 0.0;
    for (eps, a) in [(1.0, 1.0), (1.0, 2.0), (1.0, 1.5)] {
        let spec = DuffingSpec::new(eps, a).unwrap();
        let report = classic::duffing_classify(&spec);
        let traj = classic::duffing_trajectory(&spec, 50.0).unwrap();
        let crosses = traj.nodes().iter().any(|n| n.state[0] < 0.0);
        let origin = report.oscillation_center == OscillationCenter::Origin;
        pattern_ok &= crosses == origin && origin == (eps * a * a > 2.0);
        let e0 = classic::duffing_potential(eps, a);
        for n in traj.nodes() {
            let e = 0.5 * n.state[1] * n.state[1] + classic::duffing_potential(eps, n.state[0]);
            drift = drift.max((e - e0).abs());
        }
    }
    outcome(pattern_ok && drift < 1e-8, format!("sign pattern matches {pattern_ok}, energy drift {drift:.2e} (tol 1e-8)"))
}

fn property_suites() -> Outcome {
    let acc = AccuracySpec::default();
    let mut ident: f64 = 0.0;
    for i in 0..30 {
        let a = 1e-3 * (30.0f64 / 1e-3).powf(i as f64 / 29.0);
        let h = 1e-5 * (1.0 + a);
        let fd = (sinh_poisson_integral(a + h, &acc).unwrap() - sinh_poisson_integral(a - h, &acc).unwrap()) / (2.0 * h);
        let rhs = bessel_struve_sum_one(a, &acc).unwrap() + 2.0 / PI;
        ident = ident.max((fd - rhs).abs() / rhs.abs().max(1.0));
    }

    let mut action: f64 = 0.0;
    let poly = bratu::poly_trial().unwrap();
    let sine = bratu::sine_trial().unwrap();
    for lambda in [1.0, 2.0, 3.0] {
        let f = bratu::action_functional(lambda);
        for a in [0.5, 1.0, 2.5, 4.7, 7.0, 10.0] {
            let c = bratu::poly_action(a, lambda);
            action = action.max((action_value(&f, &poly, &[a]).unwrap() - c).abs() / c.abs());
            let c = bratu::sine_action(a, lambda).unwrap();
            action = action.max((action_value(&f, &sine, &[a]).unwrap() - c).abs() / c.abs());
        }
    }

    let mut runner = TestRunner::deterministic();
    let strategy = (
        prop_oneof![1.0f64..3.0, -3.0f64..-1.0],
        proptest::collection::vec(-1.0f64..1.0, 7),
    );
    let mut roundtrip: f64 = 0.0;
    for _ in 0..50 {
        let (a1, rest) = strategy.new_tree(&mut runner).unwrap().current();
        let s = PowerSeries::from_fn(8, |j| match j {
            0 => 0.0,
            1 => a1,
            _ => rest[j - 2],
        });
        let r = s.revert().unwrap();
        for composed in [s.compose(&r).unwrap(), r.compose(&s).unwrap()] {
            for j in 0..=8 {
                let want = if j == 1 { 1.0 } else { 0.0 };
                roundtrip = roundtrip.max((composed.coeff(j) - want).abs());
            }
        }
    }
    outcome(
        ident < 1e-6 && action < 1e-10 && roundtrip < 1e-9,
        format!(
            "derivative identity {ident:.2e} (tol 1e-6), action identity {action:.2e} (tol 1e-10), reversion round trip {roundtrip:.2e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact Bratu critical parameters", exact_critical),
        ("poly-trial critical parameters", poly_critical),
        ("sine-trial critical parameters", sine_critical),
        ("perturbation coefficients by series reversion", series_coefficients),
        ("bifurcation oracle equivalence and branch counts", bifurcation_oracle),
        ("kinetics eta, partial-time ratios and errata", kinetics_claims),
        ("KdV soliton parameters and residual", kdv_claims),
        ("Lambert transform residual and direct integration", lambert_claims),
        ("Duffing classification and energy drift", duffing_claims),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!("{} {:>2}. {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
