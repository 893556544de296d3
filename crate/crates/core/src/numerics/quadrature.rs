#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{NumericsError, Result};

// Kronrod abscissae on [0, 1); odd indices are the embedded Gauss points.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SUBINTERVALS: usize = 4000;

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (2.0 * f64::EPSILON) {
        error = error.max(2.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of `f` over `[a, b]`.
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate is at most `tol * (1 + |result|)`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let first = gauss_kronrod(&mut f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        if !(total.is_finite() && total_err.is_finite()) {
            return Err(NumericsError::ToleranceNotMet { estimate: total, error: total_err });
        }
        if total_err <= tol * (1.0 + total.abs()) {
            break;
        }
        if heap.len() >= MAX_SUBINTERVALS {
            return Err(NumericsError::ToleranceNotMet { estimate: total, error: total_err });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // Panel cannot be split further in floating point.
            return Err(NumericsError::ToleranceNotMet { estimate: total, error: total_err });
        }
        let left = gauss_kronrod(&mut f, worst.a, mid);
        let right = gauss_kronrod(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift from incremental updates.
    Ok(heap.iter().map(|p| p.value).sum())
}

/// Integral of `f` over `[0, ∞)` for integrands decaying roughly like
/// `exp(-rate_hint * t)` or faster.
///
/// The substitution `t = -ln(1 - s) / rate_hint` maps the half line onto
/// `[0, 1)`; the endpoint `s = 1` is never sampled by the Kronrod rule.
pub fn integrate_semi_infinite<F>(mut f: F, rate_hint: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    assert!(rate_hint > 0.0, "rate_hint must be positive");
    integrate(
        |s| {
            let one_minus = 1.0 - s;
            let t = -one_minus.ln() / rate_hint;
            let v = f(t);
            if v == 0.0 {
                0.0
            } else {
                v / (rate_hint * one_minus)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_sine() {
        assert!((integrate(|_| 1.0, 0.0, 1.0, 1e-14).unwrap() - 1.0).abs() < 1e-15);
        let s = integrate(|x| (PI * x).sin(), 0.0, 1.0, 1e-14).unwrap();
        assert!((s - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        // Gauss 7 is exact to degree 13, Kronrod 15 to degree 23.
        for deg in 0..=13 {
            let v = integrate(|x| x.powi(deg), -1.0, 2.0, 1e-15).unwrap();
            let exact = (2f64.powi(deg + 1) - (-1f64).powi(deg + 1)) / (deg + 1) as f64;
            assert!((v - exact).abs() <= 1e-13 * exact.abs().max(1.0), "deg {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = integrate(|x| x * x, 1.0, 0.0, 1e-14).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn semi_infinite_exponentials() {
        let v = integrate_semi_infinite(|t| (-t).exp(), 1.0, 1e-13).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let eta = 3.0;
        let v = integrate_semi_infinite(|t| (-2.0 * eta * t).exp(), eta, 1e-13).unwrap();
        assert!((v - 1.0 / (2.0 * eta)).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_error() {
        let err = integrate(|x| 1.0 / x, 0.0, 1.0, 1e-10);
        assert!(matches!(err, Err(NumericsError::ToleranceNotMet { .. })), "{err:?}");
    }
}
