use crate::error::{Error, Result};
use crate::units::{field_to_l, l_to_field};

/// Coordinates of a molecular energy curve: nuclear charge `z` and the small
/// parameter `epsilon = Z / L`, optionally with the field data it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub z: f64,
    pub epsilon: f64,
    /// Logarithmic field parameter `L = 2 W(sqrt(B)/2)`.
    pub l: Option<f64>,
    /// Field strength in atomic units.
    pub b: Option<f64>,
}

impl ModelParams {
    pub fn from_epsilon(z: f64, epsilon: f64) -> Result<Self> {
        check_z(z)?;
        if epsilon.is_nan() || epsilon < 0.0 {
            return Err(Error::Domain(format!("epsilon must be >= 0, got {epsilon}")));
        }
        Ok(Self {
            z,
            epsilon,
            l: None,
            b: None,
        })
    }

    pub fn from_l(z: f64, l: f64) -> Result<Self> {
        check_z(z)?;
        let b = l_to_field(l)?;
        Ok(Self {
            z,
            epsilon: z / l,
            l: Some(l),
            b: Some(b),
        })
    }

    pub fn from_field(z: f64, b: f64) -> Result<Self> {
        check_z(z)?;
        let l = field_to_l(b)?;
        Ok(Self {
            z,
            epsilon: z / l,
            l: Some(l),
            b: Some(b),
        })
    }

    /// `L`, either as given or recovered from `epsilon L = Z`.
    pub fn field_l(&self) -> f64 {
        self.l.unwrap_or(self.z / self.epsilon)
    }

    /// Field strength in atomic units, recovered from `B = L^2 e^L` if needed.
    pub fn field_b(&self) -> Result<f64> {
        match self.b {
            Some(b) => Ok(b),
            None => l_to_field(self.field_l()),
        }
    }
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("nuclear charge must be finite and > 0, got {z}")));
    }
    Ok(())
}
