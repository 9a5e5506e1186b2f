//! Closed-form one-electron quantities of the symmetric double delta well
//! `-1/2 d^2/dz^2 - delta(z - a) - delta(z + a)`.
//!
//! The ground state is `phi0(z) = A1 exp(-alpha0 |z|)` outside the wells and
//! `A2 cosh(alpha0 z)` between them, with energy `-alpha0(a)^2 / 2`. Matching
//! the derivative jump at `z = a` gives `(alpha0 - 1) exp(2 a alpha0) = 1`,
//! which is solved by `alpha0(a) = 1 + W(2a exp(-2a)) / (2a)`.

use crate::error::{Error, Result};
use crate::special::lambert_w0;

/// Below this half-distance `alpha0` is taken from its Taylor series.
const SERIES_CUTOFF: f64 = 1e-6;

fn check_half_distance(a: f64, what: &str) -> Result<()> {
    if a.is_nan() || a < 0.0 {
        return Err(Error::Domain(format!("{what}: half-distance must be >= 0, got {a}")));
    }
    Ok(())
}

/// Ground-state decay exponent of the one-electron double well.
///
/// Decreases strictly from `alpha0(0) = 2` towards 1 as `a -> infinity`.
pub fn alpha0(a: f64) -> Result<f64> {
    check_half_distance(a, "alpha0")?;
    if a < SERIES_CUTOFF {
        // 1 + W(x)/(2a) with W(x) = x - x^2 + 3/2 x^3, x = 2a e^{-2a}
        return Ok(2.0 - 4.0 * a + 16.0 * a * a);
    }
    if a == f64::INFINITY {
        return Ok(1.0);
    }
    let x = 2.0 * a * (-2.0 * a).exp();
    Ok(1.0 + lambert_w0(x)? / (2.0 * a))
}

/// `d alpha0 / da`.
///
/// Differentiating `1 + W(x)/(2a)` with `W'(x) = W / (x (1 + W))` and
/// substituting `W = 2a (alpha0 - 1)` gives
/// `-2 alpha0 (alpha0 - 1) / (1 + 2a (alpha0 - 1))`, which is regular at
/// `a = 0` (value -4).
pub fn alpha0_prime(a: f64) -> Result<f64> {
    let al = alpha0(a)?;
    let w = 2.0 * a * (al - 1.0);
    Ok(-2.0 * al * (al - 1.0) / (1.0 + w))
}

/// Ground state of the one-electron double well at half-distance `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneElectronState {
    pub a: f64,
    pub alpha0: f64,
    /// Amplitude of the exponential tails, `|z| > a`.
    pub a1: f64,
    /// Amplitude of the `cosh` piece, `|z| < a`.
    pub a2: f64,
}

impl OneElectronState {
    pub fn new(a: f64) -> Result<Self> {
        let alpha = alpha0(a)?;
        let t = a * alpha;
        let s = (2.0 * t).exp();
        let a2 = (2.0 * alpha / (1.0 + s + 2.0 * t)).sqrt();
        let a1 = a2 * 0.5 * (1.0 + s);
        Ok(Self {
            a,
            alpha0: alpha,
            a1,
            a2,
        })
    }

    /// One-electron ground-state energy `-alpha0^2 / 2`.
    pub fn energy(&self) -> f64 {
        -0.5 * self.alpha0 * self.alpha0
    }

    pub fn phi0(&self, z: f64) -> f64 {
        let r = z.abs();
        if r > self.a {
            self.a1 * (-self.alpha0 * r).exp()
        } else {
            self.a2 * (self.alpha0 * z).cosh()
        }
    }

    /// `d phi0 / dz`. At `|z| = a` the inner (cosh) branch is used.
    pub fn phi0_prime(&self, z: f64) -> f64 {
        let r = z.abs();
        if r > self.a {
            -self.alpha0 * z.signum() * self.a1 * (-self.alpha0 * r).exp()
        } else {
            self.alpha0 * self.a2 * (self.alpha0 * z).sinh()
        }
    }
}

/// Convenience wrapper around [`OneElectronState::phi0`].
pub fn phi0(state: &OneElectronState, z: f64) -> f64 {
    state.phi0(z)
}

/// Exchange integral `f(a) = int phi0^4 dz`, the expectation of the
/// electron-electron delta in the product state `phi0 x phi0`.
///
/// Evaluated as
/// `alpha0 (8 cosh^4 t + sinh 4t + 8 sinh 2t + 12 t) / (4 (e^{2t} + 2t + 1)^2)`
/// with `t = a alpha0`, after dividing numerator and denominator by `e^{4t}`
/// so that large `a` does not overflow.
pub fn f_exchange(a: f64) -> Result<f64> {
    check_half_distance(a, "f_exchange")?;
    let alpha = alpha0(a)?;
    let t = a * alpha;
    let (num, den) = scaled_exchange_terms(t);
    Ok(alpha * num / (4.0 * den * den))
}

/// Scaled numerator `N(t) e^{-4t}` and denominator `D(t) e^{-2t}` of the
/// exchange integral, where `D = e^{2t} + 2t + 1`.
fn scaled_exchange_terms(t: f64) -> (f64, f64) {
    let q = (-2.0 * t).exp();
    let c = 0.5 * (1.0 + q); // cosh(t) e^{-t}
    let q2 = q * q;
    let num = 8.0 * c.powi(4) + 0.5 * (1.0 - q2 * q2) + 4.0 * (q - q2 * q) + 12.0 * t * q2;
    let den = 1.0 + (2.0 * t + 1.0) * q;
    (num, den)
}

/// The second closed form of the exchange integral,
/// `alpha0 (e^{4t} + 4e^{2t} + 4 sinh 2t + 12t + 3) / (4 (e^{2t} + 2t + 1)^2)`,
/// evaluated literally. Kept as an independent cross-check of
/// [`f_exchange`]; overflows once `a alpha0` exceeds about 170.
pub fn f_exchange_alt(a: f64) -> Result<f64> {
    check_half_distance(a, "f_exchange_alt")?;
    let alpha = alpha0(a)?;
    let t = a * alpha;
    let e2 = (2.0 * t).exp();
    let num = e2 * e2 + 4.0 * e2 + 4.0 * (2.0 * t).sinh() + 12.0 * t + 3.0;
    let den = e2 + 2.0 * t + 1.0;
    Ok(alpha * num / (4.0 * den * den))
}

/// `df/da` by the chain rule through `t = a alpha0(a)`.
pub fn f_exchange_prime(a: f64) -> Result<f64> {
    check_half_distance(a, "f_exchange_prime")?;
    let alpha = alpha0(a)?;
    let dalpha = alpha0_prime(a)?;
    let t = a * alpha;
    let dt = alpha + a * dalpha;

    let (num, den) = scaled_exchange_terms(t);
    let q = (-2.0 * t).exp();
    let c = 0.5 * (1.0 + q); // cosh(t) e^{-t}
    let sh = 0.5 * (1.0 - q); // sinh(t) e^{-t}
    let q2 = q * q;
    // N'(t) = 32 cosh^3 sinh + 4 cosh 4t + 16 cosh 2t + 12, scaled by e^{-4t}
    let dnum = 32.0 * c.powi(3) * sh + 2.0 * (1.0 + q2 * q2) + 8.0 * (q + q2 * q) + 12.0 * q2;
    // D'(t) = 2 e^{2t} + 2, scaled by e^{-2t}
    let dden = 2.0 + 2.0 * q;

    let big_f = num / (4.0 * den * den);
    let dbig_f = dnum / (4.0 * den * den) - num * dden / (2.0 * den * den * den);
    Ok(dalpha * big_f + alpha * dbig_f * dt)
}

/// Variational upper bound `-alpha0^2 + f / Z` on the electronic two-electron
/// ground-state energy, from the trial state `phi0 x phi0`.
///
/// `z = f64::INFINITY` switches the repulsion off.
pub fn e_ub(a: f64, z: f64) -> Result<f64> {
    check_charge(z)?;
    let alpha = alpha0(a)?;
    Ok(-alpha * alpha + f_exchange(a)? / z)
}

pub(crate) fn check_charge(z: f64) -> Result<()> {
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain(format!("nuclear charge must be > 0, got {z}")));
    }
    Ok(())
}
