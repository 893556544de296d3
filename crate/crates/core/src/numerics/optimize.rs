use super::Bracket;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_ITER: usize = 400;

/// Golden-section search for the maximum of a unimodal `f` on `bracket`.
///
/// Returns `(x, f(x))` once the search interval is narrower than `tol`.
/// Unimodality is the caller's responsibility: on a multimodal function the
/// result is *a* local maximum, with no diagnostic.
///
/// Near a smooth maximum `f` is flat to second order, so the abscissa can
/// only be resolved to roughly `sqrt(f64::EPSILON)` relative. Callers that
/// need the location to full precision should polish with a root finder on
/// the derivative.
pub fn find_maximum<F>(mut f: F, bracket: Bracket, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo(), bracket.hi());
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..MAX_GOLDEN_ITER {
        if (b - a) <= tol.abs() {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }

    let mid = 0.5 * (a + b);
    let fm = f(mid);
    // The midpoint can lose to an interior probe when the peak is lopsided.
    [(mid, fm), (x1, f1), (x2, f2)]
        .into_iter()
        .fold((mid, fm), |best, cand| if cand.1 > best.1 { cand } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverted_parabola() {
        let (x, fx) = find_maximum(|x| -(x - 1.0) * (x - 1.0), Bracket::new(0.0, 2.0).unwrap(), 1e-10);
        assert!((x - 1.0).abs() < 1e-7);
        assert!(fx.abs() < 1e-14);
    }

    #[test]
    fn maximum_at_endpoint() {
        let (x, fx) = find_maximum(|x| x, Bracket::new(0.0, 3.0).unwrap(), 1e-12);
        assert!((x - 3.0).abs() < 1e-10);
        assert!((fx - 3.0).abs() < 1e-10);
    }

    #[test]
    fn exact_bratu_lambda_curve() {
        let lam = |t: f64| 2.0 * t * t / (t / 2.0).cosh().powi(2);
        let (t, l) = find_maximum(lam, Bracket::new(1.0, 4.0).unwrap(), 1e-12);
        assert!((t - 2.399357280).abs() < 1e-6);
        assert!((l - 3.513830719).abs() < 1e-9);
    }
}
