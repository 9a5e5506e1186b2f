//! Analytic bound curves for the molecular energy and their extrema.
//!
//! With the product trial state the molecular energy is bounded above by
//! `E_ub(a) = e_ub(a, Z) + eps / 2a`; dropping the repulsion bounds it below
//! by `E_ni(a) = -alpha0(a)^2 + eps / 2a`. The molecule is bound as soon as
//! `E_ub < -1` somewhere, i.e. `eps < j(a, Z)`; stationary points of `E_ub`
//! solve `g(a, Z) = eps`.

use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_section_min, scan_then_golden_min};
use crate::one_electron::{alpha0, alpha0_prime, check_charge, e_ub, f_exchange, f_exchange_prime};
use crate::params::ModelParams;

/// Coarse scan step used to bracket extrema of `j` and `g`.
pub const SCAN_STEP: f64 = 1e-3;
/// Upper end of the scanned half-distance range.
pub const SCAN_MAX: f64 = 10.0;
const GOLDEN_TOL: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumResult {
    pub location: f64,
    pub value: f64,
    pub kind: ExtremumKind,
    /// Interval the final refinement ran on.
    pub bracket: (f64, f64),
}

/// Existence function `j(a, Z) = 2a (alpha0^2 - 1 - f / Z)`.
///
/// `E_ub(a) < -1` exactly when `eps < j(a, Z)`.
pub fn j_func(a: f64, z: f64) -> Result<f64> {
    check_charge(z)?;
    let al = alpha0(a)?;
    Ok(2.0 * a * (al * al - 1.0 - f_exchange(a)? / z))
}

/// Stationarity function `g(a, Z) = 2a^2 (-2 alpha0 alpha0' + f' / Z)`;
/// `E_ub` is stationary where `g(a, Z) = eps`.
pub fn g_func(a: f64, z: f64) -> Result<f64> {
    check_charge(z)?;
    let al = alpha0(a)?;
    let dal = alpha0_prime(a)?;
    Ok(2.0 * a * a * (-2.0 * al * dal + f_exchange_prime(a)? / z))
}

/// Molecular upper-bound curve `e_ub(a, Z) + eps / 2a`; `+inf` at `a = 0`
/// when `eps > 0`.
pub fn e_ub_molecular(a: f64, params: &ModelParams) -> Result<f64> {
    Ok(e_ub(a, params.z)? + coulomb(a, params.epsilon))
}

/// Non-interacting lower-bound curve `-alpha0(a)^2 + eps / 2a`.
pub fn e_ni(a: f64, epsilon: f64) -> Result<f64> {
    let al = alpha0(a)?;
    Ok(-al * al + coulomb(a, epsilon))
}

/// Scaled nuclear repulsion `eps / 2a`.
pub(crate) fn coulomb(a: f64, epsilon: f64) -> f64 {
    if epsilon == 0.0 {
        0.0
    } else if a == 0.0 {
        f64::INFINITY
    } else {
        epsilon / (2.0 * a)
    }
}

fn maximize(f: impl Fn(f64) -> f64) -> ExtremumResult {
    let (location, neg, bracket) = scan_then_golden_min(|a| -f(a), 0.0, SCAN_MAX, SCAN_STEP, GOLDEN_TOL);
    ExtremumResult {
        location,
        value: -neg,
        kind: ExtremumKind::Maximum,
        bracket,
    }
}

/// Global maximum of `j(., Z)` on `[0, 10]`.
pub fn max_j(z: f64) -> Result<ExtremumResult> {
    check_charge(z)?;
    Ok(maximize(|a| j_func(a, z).unwrap_or(f64::NEG_INFINITY)))
}

/// Global maximum of `g(., Z)` on `[0, 10]`.
pub fn max_g(z: f64) -> Result<ExtremumResult> {
    check_charge(z)?;
    Ok(maximize(|a| g_func(a, z).unwrap_or(f64::NEG_INFINITY)))
}

/// Local minimum of the upper-bound curve: the smaller root of
/// `g(a, Z) = eps`.
///
/// `g` rises from 0 at `a = 0` to a single interior maximum, so the smaller
/// root is bracketed by `[0, argmax g]`.
pub fn equilibrium_ub(params: &ModelParams) -> Result<ExtremumResult> {
    let z = params.z;
    let eps = params.epsilon;
    let gmax = max_g(z)?;
    if eps >= gmax.value {
        return Err(Error::NoEquilibrium {
            epsilon: eps,
            max_g: gmax.value,
        });
    }
    let bracket = (0.0, gmax.location);
    let location = bisect(
        |a| g_func(a, z).unwrap_or(f64::NAN) - eps,
        bracket.0,
        bracket.1,
        ROOT_TOL,
    )?;
    Ok(ExtremumResult {
        location,
        value: e_ub_molecular(location, params)?,
        kind: ExtremumKind::Minimum,
        bracket,
    })
}

/// `min_a E_ub(a)`, found by direct minimization.
///
/// The local minimum near the stationary point is refined by golden section
/// and compared against a coarse scan over `[1e-3, 10]`; the lower value
/// wins. Without a stationary point the curve decreases monotonically and
/// the minimum is reported at the right end of the scan.
pub fn e_min_ub(params: &ModelParams) -> Result<ExtremumResult> {
    let energy = |a: f64| e_ub_molecular(a, params).unwrap_or(f64::INFINITY);
    let (scan_x, scan_v, scan_bracket) =
        scan_then_golden_min(energy, SCAN_STEP, SCAN_MAX, SCAN_STEP, GOLDEN_TOL);
    let mut best = ExtremumResult {
        location: scan_x,
        value: scan_v,
        kind: ExtremumKind::Minimum,
        bracket: scan_bracket,
    };
    if let Ok(stationary) = equilibrium_ub(params) {
        let a0 = stationary.location;
        if a0 > 0.0 {
            let bracket = (0.5 * a0, 2.0 * a0);
            let (x, v) = golden_section_min(energy, bracket.0, bracket.1, GOLDEN_TOL * a0);
            if v <= best.value {
                best = ExtremumResult {
                    location: x,
                    value: v,
                    kind: ExtremumKind::Minimum,
                    bracket,
                };
            }
        }
    }
    Ok(best)
}

/// Largest root `A+` of `E_ni(A, eps) = min E_ub`; an a-priori upper bound on
/// the true equilibrium half-distance.
pub fn a_plus(params: &ModelParams) -> Result<f64> {
    let emin = e_min_ub(params)?;
    if emin.value >= -1.0 {
        return Err(Error::PreconditionFailed(format!(
            "min E_ub = {} is not below -1 at epsilon = {}",
            emin.value, params.epsilon
        )));
    }
    let eps = params.epsilon;
    let gap = |a: f64| e_ni(a, eps).unwrap_or(f64::NAN) - emin.value;
    // upper-bound minimizer between the two roots
    let mut lo = emin.location;
    if !(gap(lo) <= 0.0) {
        return Err(Error::PreconditionFailed(
            "E_ni above min E_ub at the upper-bound minimizer".into(),
        ));
    }
    let mut hi = lo;
    loop {
        hi += (0.05 * hi).max(SCAN_STEP);
        if gap(hi) > 0.0 {
            break;
        }
        lo = hi;
        if hi > 1e3 {
            return Err(Error::PreconditionFailed("A+ not bracketed below a = 1000".into()));
        }
    }
    bisect(gap, lo, hi, ROOT_TOL)
}

/// The unique `a >= 0` with `alpha0(a) = target`, for `target` in `(1, 2]`.
pub fn alpha0_inverse(target: f64) -> Result<f64> {
    if !(target > 1.0 && target <= 2.0) {
        return Err(Error::Domain(format!(
            "alpha0_inverse: target must lie in (1, 2], got {target}"
        )));
    }
    if target == 2.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while alpha0(hi)? > target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Domain(format!("alpha0_inverse: {target} too close to 1")));
        }
    }
    bisect(|a| alpha0(a).unwrap_or(f64::NAN) - target, 0.0, hi, 1e-14)
}
