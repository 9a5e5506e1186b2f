//! Small one-dimensional numerical tools: bracketing root finder, golden
//! section search, natural cubic spline and least-squares line fit.

use crate::error::{Error, Result};

/// Bisection for a root of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must have
/// opposite signs (or one of them vanish).
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::PreconditionFailed(format!(
            "bisection bracket [{lo}, {hi}] does not change sign ({flo}, {fhi})"
        )));
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x_min, f_min)`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
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
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimizes `f` on `[lo, hi]`: coarse scan with spacing `step`, then golden
/// section inside the cell pair around the best sample.
/// Returns `(x_min, f_min, bracket)`.
pub fn scan_then_golden_min(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> (f64, f64, (f64, f64)) {
    let n = ((hi - lo) / step).ceil().max(2.0) as usize;
    let dx = (hi - lo) / n as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=n {
        let v = f(lo + i as f64 * dx);
        if v < best.1 {
            best = (i, v);
        }
    }
    let left = lo + best.0.saturating_sub(1) as f64 * dx;
    let right = (lo + (best.0 + 1) as f64 * dx).min(hi);
    let (x, v) = golden_section_min(&f, left, right, tol);
    let grid_x = lo + best.0 as f64 * dx;
    if best.1 < v {
        (grid_x, best.1, (left, right))
    } else {
        (x, v, (left, right))
    }
}

/// Natural cubic spline through `(x_i, y_i)` with strictly increasing `x`.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::Domain("cubic spline needs >= 3 matching knots".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("spline knots must be strictly increasing".into()));
        }
        // tridiagonal system for interior second derivatives (Thomas algorithm)
        let mut m = vec![0.0; n];
        let k = n - 2;
        let mut diag = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        let mut sub = vec![0.0; k];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            diag[i - 1] = 2.0 * (h0 + h1);
            sub[i - 1] = h0;
            rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        for i in 1..k {
            let w = sub[i] / diag[i - 1];
            let upper = x[i + 1] - x[i]; // super-diagonal of row i-1
            diag[i] -= w * upper;
            rhs[i] -= w * rhs[i - 1];
        }
        for i in (0..k).rev() {
            let upper = if i + 1 < k { (x[i + 2] - x[i + 1]) * m[i + 2] } else { 0.0 };
            m[i + 1] = (rhs[i] - upper) / diag[i];
        }
        Ok(Self { x, y, m })
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = (self.x[i + 1] - t) / h;
        let v = (t - self.x[i]) / h;
        u * self.y[i]
            + v * self.y[i + 1]
            + ((u * u * u - u) * self.m[i] + (v * v * v - v) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = (self.x[i + 1] - t) / h;
        let v = (t - self.x[i]) / h;
        (self.y[i + 1] - self.y[i]) / h
            + ((1.0 - 3.0 * u * u) * self.m[i] + (3.0 * v * v - 1.0) * self.m[i + 1]) * h / 6.0
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }
}

/// Ordinary least-squares line `y = slope * x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Value at `x = 0` of the least-squares polynomial of the given degree.
pub fn polynomial_fit_at_zero(x: &[f64], y: &[f64], degree: usize) -> Result<f64> {
    let m = degree + 1;
    if x.len() < m || y.len() != x.len() {
        return Err(Error::Domain(format!(
            "degree {degree} fit needs at least {m} matching points"
        )));
    }
    let design = nalgebra::DMatrix::from_fn(x.len(), m, |i, k| x[i].powi(k as i32));
    let rhs = nalgebra::DVector::from_column_slice(y);
    let coef = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Domain(format!("polynomial fit failed: {e}")))?;
    Ok(coef[0])
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
