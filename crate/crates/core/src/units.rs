//! Field-strength map and conversion of scaled results to physical units.

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::special::lambert_w0;

/// Atomic-unit constants used for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// Atomic unit of magnetic field, in Tesla.
    pub b0_tesla: f64,
    /// Hartree energy in eV.
    pub hartree_ev: f64,
    /// Bohr radius in Angstrom.
    pub bohr_angstrom: f64,
}

impl UnitSystem {
    pub const ATOMIC: Self = Self {
        b0_tesla: 2.35e5,
        hartree_ev: 27.2,
        bohr_angstrom: 0.53,
    };
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::ATOMIC
    }
}

/// `L(B) = 2 W(sqrt(B) / 2)` for a field `B` in atomic units.
pub fn field_to_l(b: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("field strength must be > 0, got {b}")));
    }
    Ok(2.0 * lambert_w0(0.5 * b.sqrt())?)
}

/// Inverse of [`field_to_l`]: `B = L^2 e^L`.
pub fn l_to_field(l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::Domain(format!("L must be > 0, got {l}")));
    }
    Ok(l * l * l.exp())
}

/// A scaled `(a, E)` pair expressed in laboratory units.
///
/// The energy is reported with the same convention as the L = 10 worked
/// example: the scaled molecular energy is read directly in Hartree. The
/// eigenvalue of the full field Hamiltonian differs from this by a factor
/// `L^2 Z^2` up to `O(L)` corrections, so the absolute energy scale is
/// convention-dependent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalValues {
    pub r_angstrom: f64,
    pub e_hartree: f64,
    pub e_ev: f64,
    pub b_au: f64,
    pub b_tesla: f64,
}

pub fn convert_units(a: f64, energy: f64, params: &ModelParams) -> Result<PhysicalValues> {
    convert_units_with(a, energy, params, &UnitSystem::ATOMIC)
}

pub fn convert_units_with(
    a: f64,
    energy: f64,
    params: &ModelParams,
    units: &UnitSystem,
) -> Result<PhysicalValues> {
    let l = params.field_l();
    let b_au = params.field_b()?;
    // a = R L Z / 2
    let r_bohr = 2.0 * a / (l * params.z);
    Ok(PhysicalValues {
        r_angstrom: units.bohr_angstrom * r_bohr,
        e_hartree: energy,
        e_ev: units.hartree_ev * energy,
        b_au,
        b_tesla: units.b0_tesla * b_au,
    })
}
