//! Molecular energy curve `E(a) = e(a) + eps / 2a`, equilibrium search and
//! the small-`eps` behaviour of the equilibrium half-distance.

use rayon::prelude::*;

use crate::bounds::{a_plus, equilibrium_ub};
use crate::error::{Error, Result};
use crate::groundstate::{e_electronic, e_electronic_many, ElectronicEnergy};
use crate::numeric::{golden_section_min, linear_fit, CubicSpline};
use crate::params::ModelParams;
use crate::units::{convert_units, PhysicalValues};

/// Number of intervals of the `e(a)` sample grid.
pub const SAMPLE_INTERVALS: usize = 30;
/// Smallest right end of the sample grid.
pub const MIN_SAMPLE_RANGE: f64 = 0.35;
/// Largest right end of the sample grid.
pub const MAX_SAMPLE_RANGE: f64 = 3.0;
/// `E` must fall below `-1 - BINDING_MARGIN` to count as bound.
pub const BINDING_MARGIN: f64 = 1e-3;
const GOLDEN_TOL: f64 = 1e-9;

/// Electronic energy sampled on `[0, a_max]` and interpolated by a natural
/// cubic spline.
///
/// Samples sit at `a_max (k / N)^2`, dense near `a = 0` where the
/// equilibrium moves for weak nuclear repulsion. One curve serves every
/// `eps` for the same charge.
#[derive(Debug, Clone)]
pub struct ElectronicCurve {
    pub z: f64,
    pub accuracy: f64,
    pub samples: Vec<f64>,
    pub energies: Vec<ElectronicEnergy>,
    spline: CubicSpline,
}

impl ElectronicCurve {
    pub fn sample(z: f64, accuracy: f64, a_max: f64) -> Result<Self> {
        if !(a_max > 0.0) || a_max > MAX_SAMPLE_RANGE {
            return Err(Error::Domain(format!(
                "sample range must lie in (0, {MAX_SAMPLE_RANGE}], got {a_max}"
            )));
        }
        let n = SAMPLE_INTERVALS as f64;
        let samples: Vec<f64> = (0..=SAMPLE_INTERVALS)
            .map(|k| a_max * (k as f64 / n).powi(2))
            .collect();
        let energies = e_electronic_many(&samples, z, accuracy)?;
        let spline = CubicSpline::new(samples.clone(), energies.iter().map(|e| e.value).collect())?;
        Ok(Self {
            z,
            accuracy,
            samples,
            energies,
            spline,
        })
    }

    /// Curve wide enough for the equilibrium search at `params`.
    pub fn for_params(params: &ModelParams, accuracy: f64) -> Result<Self> {
        Self::sample(params.z, accuracy, sample_range(params))
    }

    pub fn a_max(&self) -> f64 {
        *self.samples.last().unwrap()
    }

    pub fn e(&self, a: f64) -> f64 {
        self.spline.eval(a)
    }

    pub fn e_prime(&self, a: f64) -> f64 {
        self.spline.derivative(a)
    }

    /// Largest Richardson error estimate over the samples.
    pub fn error_estimate(&self) -> f64 {
        self.energies.iter().map(|e| e.error_estimate).fold(0.0, f64::max)
    }
}

/// Right end of the `e(a)` sample grid: `max(0.35, A+)`, where `A+` bounds
/// the equilibrium from above. Falls back to 1 when the upper bound shows no
/// binding.
pub fn sample_range(params: &ModelParams) -> f64 {
    match a_plus(params) {
        Ok(ap) => ap.clamp(MIN_SAMPLE_RANGE, MAX_SAMPLE_RANGE),
        Err(_) => 1.0,
    }
}

/// `E(a) = e(a) + eps / 2a`.
pub fn e_total(a: f64, params: &ModelParams, accuracy: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("nuclear half-distance must be > 0, got {a}")));
    }
    Ok(e_electronic(a, params.z, accuracy)?.value + params.epsilon / (2.0 * a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumReport {
    pub z: f64,
    pub epsilon: f64,
    pub a_eq: f64,
    pub e_eq: f64,
    /// Sample interval the refinement ran on.
    pub a_bracket: (f64, f64),
    /// `e'(a_eq)` from the interpolant; equals `eps / 2 a_eq^2` at an
    /// interior minimum.
    pub e_prime_at_eq: f64,
    /// Largest error estimate of the sampled `e(a)`.
    pub error_estimate: f64,
    pub physical: PhysicalValues,
}

impl EquilibriumReport {
    /// `e'(a_eq) - eps / (2 a_eq^2)`.
    pub fn stationarity_residual(&self) -> f64 {
        self.e_prime_at_eq - self.epsilon / (2.0 * self.a_eq * self.a_eq)
    }
}

/// Global minimum of `E(a)` over `(0, A+]`.
pub fn find_equilibrium(params: &ModelParams, accuracy: f64) -> Result<EquilibriumReport> {
    if !(params.epsilon > 0.0) {
        return Err(Error::Domain("equilibrium search needs epsilon > 0".into()));
    }
    let curve = ElectronicCurve::for_params(params, accuracy)?;
    find_equilibrium_on_curve(&curve, params)
}

/// Equilibrium search on a pre-sampled electronic curve: best sample, then
/// golden section on the interpolated `E` between its neighbours.
pub fn find_equilibrium_on_curve(curve: &ElectronicCurve, params: &ModelParams) -> Result<EquilibriumReport> {
    let eps = params.epsilon;
    if !(eps > 0.0) {
        return Err(Error::Domain("equilibrium search needs epsilon > 0".into()));
    }
    if params.z != curve.z {
        return Err(Error::Domain(format!(
            "curve was sampled for Z = {}, parameters have Z = {}",
            curve.z, params.z
        )));
    }
    let energy = |a: f64| curve.e(a) + eps / (2.0 * a);
    let knots = &curve.samples;
    let last = knots.len() - 1;
    let best = (1..=last)
        .min_by(|&i, &j| energy(knots[i]).total_cmp(&energy(knots[j])))
        .unwrap();
    let lo = if best == 1 { 0.25 * knots[1] } else { knots[best - 1] };
    let hi = knots[(best + 1).min(last)];
    let (mut a_eq, mut e_eq) = golden_section_min(energy, lo, hi, GOLDEN_TOL * hi);
    if energy(knots[best]) < e_eq {
        a_eq = knots[best];
        e_eq = energy(a_eq);
    }
    if e_eq >= -1.0 - BINDING_MARGIN {
        return Err(Error::NoBinding {
            min_energy: e_eq,
            a_at_min: a_eq,
        });
    }
    Ok(EquilibriumReport {
        z: params.z,
        epsilon: eps,
        a_eq,
        e_eq,
        a_bracket: (lo, hi),
        e_prime_at_eq: curve.e_prime(a_eq),
        error_estimate: curve.error_estimate(),
        physical: convert_units(a_eq, e_eq, params)?,
    })
}

/// One row of an `eps` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticsRow {
    pub epsilon: f64,
    pub a_eq_ub: f64,
    pub a_eq: f64,
}

/// `a_eq` against `eps`: the coefficient of `sqrt(eps)` for the
/// upper-bound and the full equilibrium, and the slope of `log a_eq`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsReport {
    pub z: f64,
    pub rows: Vec<AsymptoticsRow>,
    pub c_ub: f64,
    pub c: f64,
    pub slope: f64,
    pub slope_ub: f64,
    /// `1/2 sqrt(Z / (8Z - 1))`.
    pub c_ub_closed_form: f64,
}

/// Limit of `a / sqrt(eps)` as `eps -> 0`: intercept of a straight-line fit
/// of the ratio against `sqrt(eps)`.
pub fn fit_sqrt_coefficient(epsilon: &[f64], a: &[f64]) -> f64 {
    let s: Vec<f64> = epsilon.iter().map(|e| e.sqrt()).collect();
    let ratio: Vec<f64> = a.iter().zip(&s).map(|(x, r)| x / r).collect();
    linear_fit(&s, &ratio).1
}

/// Slope of `log a` against `log eps`.
pub fn fit_log_slope(epsilon: &[f64], a: &[f64]) -> f64 {
    let le: Vec<f64> = epsilon.iter().map(|e| e.ln()).collect();
    let la: Vec<f64> = a.iter().map(|x| x.ln()).collect();
    linear_fit(&le, &la).0
}

pub fn c_ub_closed_form(z: f64) -> f64 {
    0.5 * (z / (8.0 * z - 1.0)).sqrt()
}

/// Sweeps `eps` and fits `a_eq ~ c sqrt(eps)` for the upper bound and the
/// full solver. A single electronic curve serves the whole sweep.
pub fn asymptotics(z: f64, epsilon: &[f64], accuracy: f64) -> Result<AsymptoticsReport> {
    if epsilon.len() < 2 {
        return Err(Error::Domain("asymptotics needs at least two epsilon values".into()));
    }
    let params: Vec<ModelParams> = epsilon
        .iter()
        .map(|&e| ModelParams::from_epsilon(z, e))
        .collect::<Result<_>>()?;
    let a_max = params.iter().map(sample_range).fold(MIN_SAMPLE_RANGE, f64::max);
    let curve = ElectronicCurve::sample(z, accuracy, a_max)?;
    let rows: Vec<AsymptoticsRow> = params
        .par_iter()
        .map(|p| {
            Ok(AsymptoticsRow {
                epsilon: p.epsilon,
                a_eq_ub: equilibrium_ub(p)?.location,
                a_eq: find_equilibrium_on_curve(&curve, p)?.a_eq,
            })
        })
        .collect::<Result<_>>()?;
    let eps: Vec<f64> = rows.iter().map(|r| r.epsilon).collect();
    let a_ub: Vec<f64> = rows.iter().map(|r| r.a_eq_ub).collect();
    let a_eq: Vec<f64> = rows.iter().map(|r| r.a_eq).collect();
    Ok(AsymptoticsReport {
        z,
        c_ub: fit_sqrt_coefficient(&eps, &a_ub),
        c: fit_sqrt_coefficient(&eps, &a_eq),
        slope: fit_log_slope(&eps, &a_eq),
        slope_ub: fit_log_slope(&eps, &a_ub),
        c_ub_closed_form: c_ub_closed_form(z),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_fit_recovers_coefficient() {
        let eps = [1e-6, 1e-5, 1e-4, 1e-3];
        let a: Vec<f64> = eps.iter().map(|e: &f64| 0.2 * e.sqrt() + 0.7 * e).collect();
        assert!((fit_sqrt_coefficient(&eps, &a) - 0.2).abs() < 1e-12);
        let pure: Vec<f64> = eps.iter().map(|e: &f64| 0.3 * e.sqrt()).collect();
        assert!((fit_log_slope(&eps, &pure) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn closed_form_constants() {
        assert!((c_ub_closed_form(1.0) - 0.18898).abs() < 1e-5);
        assert!((c_ub_closed_form(2.0) - 0.18257).abs() < 1e-5);
    }

    #[test]
    fn sample_range_limits() {
        let p = ModelParams::from_epsilon(1.0, 1e-3).unwrap();
        assert_eq!(sample_range(&p), MIN_SAMPLE_RANGE);
        let far = ModelParams::from_epsilon(1.0, 0.5).unwrap();
        assert_eq!(sample_range(&far), 1.0);
    }

    #[test]
    fn e_total_rejects_origin() {
        let p = ModelParams::from_epsilon(1.0, 0.1).unwrap();
        assert!(e_total(0.0, &p, 1e-2).is_err());
    }
}
