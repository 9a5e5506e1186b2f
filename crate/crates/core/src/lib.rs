//! One-dimensional delta-potential model of the H2 molecule in a strong
//! magnetic field.
//!
//! The crate covers the closed-form one-electron problem, the variational
//! upper and non-interacting lower bounds on the molecular energy, a grid
//! eigensolver for the two-electron ground state, and the equilibrium
//! analysis built on top of them. All energies and lengths are in the scaled
//! units of the effective Hamiltonian unless a function says otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod groundstate;
pub mod molecule;
pub mod numeric;
pub mod one_electron;
pub mod params;
pub mod special;
pub mod units;

pub use bounds::{
    a_plus, alpha0_inverse, e_min_ub, e_ni, e_ub_molecular, equilibrium_ub, g_func, j_func,
    ExtremumKind, ExtremumResult,
};
pub use error::{Error, Result};
pub use groundstate::{
    assemble_hamiltonian, e_electronic, e_prime_fh, e_prime_fh_extrapolated, e_prime_zero_limit,
    fh_derivative, ground_state, ElectronicEnergy, GridSpec, GroundStateResult, Hamiltonian,
};
pub use molecule::{
    asymptotics, e_total, find_equilibrium, find_equilibrium_on_curve, AsymptoticsReport,
    ElectronicCurve, EquilibriumReport,
};
pub use one_electron::{alpha0, alpha0_prime, e_ub, f_exchange, f_exchange_prime, OneElectronState};
pub use params::ModelParams;
pub use special::lambert_w0;
pub use units::{convert_units, field_to_l, l_to_field, PhysicalValues, UnitSystem};
