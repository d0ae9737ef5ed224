//! Scalar root finding, one-dimensional minimization and grids.

/// Outcome of a monotone bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Largest argument known to fail the predicate.
    pub lo: f64,
    /// Smallest argument known to satisfy the predicate.
    pub hi: f64,
    pub iterations: usize,
}

/// Bisects a monotone predicate that is false at `lo` and true at `hi`.
///
/// Runs until the bracket is narrower than `rel_tol * hi` or until the
/// floating point midpoint coincides with an endpoint, whichever is first.
/// The caller is responsible for the bracket being valid.
pub fn bisect<F>(mut lo: f64, mut hi: f64, rel_tol: f64, mut pred: F) -> Bisection
where
    F: FnMut(f64) -> bool,
{
    let mut iterations = 0;
    while iterations < 2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= rel_tol * hi.abs() {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Bisection { lo, hi, iterations }
}

/// Golden-section search for the minimum of a unimodal function on `[a, b]`.
///
/// Returns `(argmin, min, iterations)`.
pub fn golden_min<F>(mut a: f64, mut b: f64, rel_tol: f64, mut f: F) -> (f64, f64, usize)
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut it = 0;
    while (b - a).abs() > rel_tol * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) && it < 500 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        it += 1;
    }
    if fc <= fd {
        (c, fc, it)
    } else {
        (d, fd, it)
    }
}

/// `n` logarithmically spaced points from `a` to `b` inclusive.
pub fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0 && n >= 2);
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i == n - 1 {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
///
/// Returns `None` when fewer than two points have positive `y`.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// n! as a float; exact for n <= 22.
pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let b = bisect(0.0, 2.0, 0.0, |x| x * x >= 2.0);
        assert!((b.hi - 2f64.sqrt()).abs() < 1e-15);
        assert!(b.lo < b.hi);
    }

    #[test]
    fn golden_min_of_parabola() {
        let (x, fx, _) = golden_min(-3.0, 5.0, 1e-12, |x| (x - 1.25).powi(2) + 0.5);
        assert!((x - 1.25).abs() < 1e-6);
        assert!((fx - 0.5).abs() < 1e-12);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1e-2, 1e-3, 1e-4];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        assert!((fit_log_slope(&xs, &ys).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(fit_log_slope(&xs, &[0.0, 0.0, 1.0]), None);
    }

    #[test]
    fn log_space_endpoints_exact() {
        let g = log_space(1e-4, 1e4, 9);
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[8], 1e4);
        assert!((g[4] - 1.0).abs() < 1e-12);
    }
}
