//! Principal branch of the Lambert W function.
//!
//! `W0(x)` is the real solution `w >= -1` of `w * exp(w) = x`, defined for
//! `x >= -1/e`. The model needs it in two places: the one-electron decay
//! exponent and the map from field strength to the logarithmic parameter.

use std::f64::consts::E;

use crate::error::{Error, Result};

const INV_E: f64 = 1.0 / E;
const MAX_HALLEY_STEPS: usize = 64;

/// Principal-branch Lambert W.
///
/// Initial guesses: branch-point series in `p = sqrt(2(ex + 1))` close to
/// `-1/e`, Winitzki's approximation for moderate `x`, `ln x - ln ln x` for
/// large `x`.
/// The guess is refined with Halley's method to machine precision.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("lambert_w0: NaN argument".into()));
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if x < -INV_E {
        // rounding slack at the branch point
        if x >= -INV_E - 4.0 * f64::EPSILON {
            return Ok(-1.0);
        }
        return Err(Error::Domain(format!(
            "lambert_w0 requires x >= -1/e, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let p2 = 2.0 * (E * x + 1.0);
    let p = p2.max(0.0).sqrt();
    if p < 1e-3 {
        return Ok(branch_point_series(p));
    }

    let mut w = if p < 0.5 {
        branch_point_series(p)
    } else if x < 3.0 {
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    for _ in 0..MAX_HALLEY_STEPS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// Series of W0 around the branch point in `p = sqrt(2(ex + 1))`.
fn branch_point_series(p: f64) -> f64 {
    const C: [f64; 7] = [
        -1.0,
        1.0,
        -1.0 / 3.0,
        11.0 / 72.0,
        -43.0 / 540.0,
        769.0 / 17280.0,
        -221.0 / 8505.0,
    ];
    C.iter().rev().fold(0.0, |acc, &c| acc * p + c)
}

/// Derivative `W'(x) = W / (x (1 + W))`, with the limit 1 at `x = 0`.
pub fn lambert_w0_prime(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(1.0);
    }
    let w = lambert_w0(x)?;
    Ok(w / (x * (1.0 + w)))
}
