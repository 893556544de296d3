use proptest::prelude::*;
use ritz_core::classic::{
    duffing_classify, duffing_potential, duffing_trajectory, kdv_max_residual, kdv_report, kdv_soliton_solve,
    lambert_residual_at, lambert_positive_extent, lambert_solve, DuffingSpec, LambertSpec, OscillationCenter,
};
use ritz_core::numerics::ode_solve;

#[test]
fn duffing_sign_pattern_and_energy() {
    for (eps, a) in [(1.0, 1.0), (1.0, 2.0), (1.0, 1.5), (0.5, 1.9), (0.5, 2.1)] {
        let spec = DuffingSpec::new(eps, a).unwrap();
        let report = duffing_classify(&spec);
        let traj = duffing_trajectory(&spec, 50.0).unwrap();
        let crosses = traj.nodes().iter().any(|n| n.state[0] < 0.0);
        assert_eq!(crosses, report.oscillation_center == OscillationCenter::Origin, "ε = {eps}, A = {a}");
        assert_eq!(report.oscillation_center == OscillationCenter::Origin, eps * a * a > 2.0);
        let e0 = duffing_potential(eps, a);
        for n in traj.nodes() {
            let e = 0.5 * n.state[1] * n.state[1] + duffing_potential(eps, n.state[0]);
            assert!((e - e0).abs() < 1e-8);
        }
    }
}

#[test]
fn lambert_transform_solves_the_equation() {
    for n in [1.0, 2.0, 3.0] {
        for k in [1.0, 2.0] {
            for (y0, yp0) in [(1.0, 0.0), (0.8, 0.5), (1.3, -0.4)] {
                let spec = LambertSpec::new(n, k, y0, yp0).unwrap();
                let x_end = lambert_positive_extent(&spec, 0.1);
                let traj = ode_solve(
                    |_, y, dy| {
                        dy[0] = y[1];
                        dy[1] = (1.0 - n) * y[1] * y[1] / y[0] - k * k / n * y[0];
                    },
                    0.0,
                    x_end,
                    &[y0, yp0],
                    1e-12,
                )
                .unwrap();
                for node in traj.nodes() {
                    let r = lambert_residual_at(&spec, node.t).unwrap();
                    assert!(r.abs() <= 1e-7, "n={n} k={k} x={}: {r:e}", node.t);
                    let y = lambert_solve(&spec, node.t).unwrap();
                    assert!((y - node.state[0]).abs() < 1e-6);
                }
            }
        }
    }
}

#[test]
fn kdv_algebraic_and_variational_agree() {
    for c in [0.5, 1.0, 2.0, 4.0] {
        let r = kdv_report(c).unwrap();
        assert!(r.ritz_gap < 1e-7, "c = {c}: {}", r.ritz_gap);
        assert!(r.canonical.max_residual < 1e-9);
        assert!(r.ritz_max_residual < 1e-9, "c = {c}: {:e}", r.ritz_max_residual);
        assert!((r.canonical.q - c.sqrt() / 2.0).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_follows_potential_sign(eps in -3.0f64..3.0, a in 0.01f64..5.0) {
        let report = duffing_classify(&DuffingSpec::new(eps, a).unwrap());
        let v = duffing_potential(eps, a);
        match report.oscillation_center {
            OscillationCenter::Origin => prop_assert!(eps > 0.0 && v > 0.0),
            OscillationCenter::RightWell => prop_assert!(eps > 0.0 && v <= 1e-12 * a * a.max(1.0) * a.max(1.0)),
            OscillationCenter::Unbounded => prop_assert!(eps <= 0.0),
            OscillationCenter::LeftWell => prop_assert!(false, "released at A > 0"),
        }
    }

    #[test]
    fn kdv_residual_vanishes(c in 0.05f64..20.0) {
        let s = kdv_soliton_solve(c).unwrap();
        prop_assert!(kdv_max_residual(&s, 10.0, 501) < 1e-9 * c * c.max(1.0));
    }
}
