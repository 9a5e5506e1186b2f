//! Two-electron ground state of the delta-potential Hamiltonian
//!
//! ```text
//! h = -1/2 (d1^2 + d2^2) - sum_i [delta(z_i - a) + delta(z_i + a)] + Z^{-1} delta(z1 - z2)
//! ```
//!
//! on the bosonic (swap-symmetric) sector, discretized on a tensor mesh and
//! solved by a preconditioned eigensolver. `Z = f64::INFINITY` switches the
//! electron-electron repulsion off.

pub mod eigensolver;
pub mod grid;
pub mod hamiltonian;

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::polynomial_fit_at_zero;
use crate::one_electron::{check_charge, OneElectronState};

pub use eigensolver::{lowest_eigenpair, Eigenpair, MAX_ITERATIONS, RESIDUAL_TOL};
pub use grid::{GridSpec, DEFAULT_BOX, DEFAULT_H};
pub use hamiltonian::{assemble_hamiltonian, CsrMatrix, Hamiltonian};

/// Order of the leading discretization error in the core spacing.
pub const CONVERGENCE_ORDER: i32 = 2;
/// Finest refinement level `e_electronic` may use before giving up.
pub const MAX_LEVEL: u32 = 2;
/// Smallest accepted accuracy request for `e_electronic`.
pub const MIN_ACCURACY: f64 = 1e-3;
/// Nuclear half-distances used to extrapolate `e'(0+)`.
pub const ZERO_LIMIT_POINTS: [f64; 3] = [0.02, 0.04, 0.08];

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    /// Lowest eigenvalue of the discrete operator.
    pub energy: f64,
    /// Nodal values `psi(x_i, x_j)`, row-major, normalized so that
    /// `sum_ij w_i w_j psi_ij^2 = 1`, swap symmetric and positive.
    pub vector: Vec<f64>,
    /// `||H v - E v|| / ||v||` in the mass-weighted norm.
    pub residual: f64,
    pub iterations: usize,
    pub grid: GridSpec,
    pub charge: f64,
    /// Interior coordinates of one axis.
    pub nodes: Vec<f64>,
    /// Trapezoidal weights of one axis.
    pub weights: Vec<f64>,
}

impl GroundStateResult {
    pub fn points_per_axis(&self) -> usize {
        self.nodes.len()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.vector[i * self.nodes.len() + j]
    }

    /// Largest `|psi(z1, z2) - psi(z2, z1)|`.
    pub fn antisymmetric_part(&self) -> f64 {
        let n = self.nodes.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.value(i, j) - self.value(j, i)).abs());
            }
        }
        worst
    }

    /// Writes the eigenfunction as CSV: a header record with
    /// `box,h,a_snapped,Z,energy`, then one line per `z1` node.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "box,h,a_snapped,Z,energy")?;
        let z = if self.charge.is_infinite() {
            "inf".to_string()
        } else {
            format!("{:.16e}", self.charge)
        };
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{},{:.16e}",
            self.grid.box_half_width,
            self.grid.h(),
            self.grid.a_snapped(),
            z,
            self.energy
        )?;
        let n = self.nodes.len();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| format!("{:.16e}", self.value(i, j))).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Lowest swap-symmetric eigenpair on `grid`, which must be built for `a`.
pub fn ground_state(a: f64, z: f64, grid: &GridSpec) -> Result<GroundStateResult> {
    check_charge(z)?;
    if grid.a != a {
        return Err(Error::InvalidGrid(format!(
            "grid is built for a = {}, requested a = {a}",
            grid.a
        )));
    }
    let h = assemble_hamiltonian(grid, z)?;
    let n = h.points_per_axis();

    // product of one-electron ground states
    let one = OneElectronState::new(a)?;
    let phi: Vec<f64> = h.nodes.iter().map(|&x| one.phi0(x)).collect();
    let psi: Vec<f64> = (0..n * n).map(|k| phi[k / n] * phi[k % n]).collect();
    let seed = h.to_scaled(&psi);

    let mut hs = vec![0.0; seed.len()];
    h.apply(&seed, &mut hs);
    let rq = hs.iter().zip(&seed).map(|(p, q)| p * q).sum::<f64>()
        / seed.iter().map(|v| v * v).sum::<f64>();
    let sigma = (-rq).max(1.0);

    let pair = lowest_eigenpair(&h, &seed, sigma, RESIDUAL_TOL, MAX_ITERATIONS)?;
    let vector = h.to_nodal(&pair.vector);
    Ok(GroundStateResult {
        energy: pair.value,
        vector,
        residual: pair.residual,
        iterations: pair.iterations,
        grid: *grid,
        charge: z,
        nodes: h.nodes,
        weights: h.weights,
    })
}

/// Richardson-extrapolated electronic energy with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronicEnergy {
    pub value: f64,
    /// `|e_fine - e_coarse| / (2^p - 1)`.
    pub error_estimate: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Core spacing of the coarse mesh; the fine mesh uses half of it.
    pub h: f64,
}

pub fn richardson(coarse: f64, fine: f64, order: i32) -> (f64, f64) {
    let denom = 2f64.powi(order) - 1.0;
    let correction = (fine - coarse) / denom;
    (fine + correction, correction.abs())
}

/// Electronic energy `e(a)` from two nested meshes, refined until the error
/// estimate meets `accuracy`.
pub fn e_electronic(a: f64, z: f64, accuracy: f64) -> Result<ElectronicEnergy> {
    e_electronic_on(&GridSpec::with_defaults(a)?, z, accuracy)
}

/// As [`e_electronic`], starting from the user-supplied base mesh.
pub fn e_electronic_on(base: &GridSpec, z: f64, accuracy: f64) -> Result<ElectronicEnergy> {
    if !(accuracy >= MIN_ACCURACY) {
        return Err(Error::Domain(format!(
            "accuracy must be >= {MIN_ACCURACY}, got {accuracy}"
        )));
    }
    let mut coarse_grid = *base;
    let mut coarse = ground_state(base.a, z, &coarse_grid)?.energy;
    let mut best = None;
    while coarse_grid.level < MAX_LEVEL {
        let fine_grid = coarse_grid.refined();
        let fine = ground_state(base.a, z, &fine_grid)?.energy;
        let (value, error_estimate) = richardson(coarse, fine, CONVERGENCE_ORDER);
        let result = ElectronicEnergy {
            value,
            error_estimate,
            coarse,
            fine,
            h: coarse_grid.h(),
        };
        if error_estimate <= accuracy {
            return Ok(result);
        }
        best = Some(result);
        coarse_grid = fine_grid;
        coarse = fine;
    }
    let estimate = best.map_or(f64::INFINITY, |r| r.error_estimate);
    Err(Error::AccuracyNotReached {
        estimate,
        requested: accuracy,
    })
}

/// Evaluates `e(a)` for many `a` concurrently; the order of the output
/// matches the input.
pub fn e_electronic_many(a: &[f64], z: f64, accuracy: f64) -> Result<Vec<ElectronicEnergy>> {
    a.par_iter().map(|&x| e_electronic(x, z, accuracy)).collect()
}

/// Second-order one-sided derivative at `x[0]` from values at three points.
fn one_sided(x: [f64; 3], f: [f64; 3]) -> f64 {
    let t1 = x[1] - x[0];
    let t2 = x[2] - x[0];
    -(t1 + t2) / (t1 * t2) * f[0] + t2 / (t1 * (t2 - t1)) * f[1] - t1 / (t2 * (t2 - t1)) * f[2]
}

/// Feynman-Hellman derivative of the discrete ground state,
///
/// ```text
/// e'(a) = sum_i [ -2 int_{z_i = a} psi <d_i psi> + 2 int_{z_i = -a} psi <d_i psi> ]
/// ```
///
/// where `<d_i psi>` is the mean of the two one-sided normal derivatives on
/// the nuclear line. Derivatives use three-point one-sided stencils and the
/// line integrals use the mesh weights.
pub fn fh_derivative(state: &GroundStateResult) -> Result<f64> {
    let a = state.grid.a;
    if !(a > 0.0) {
        return Err(Error::Domain("Feynman-Hellman derivative needs a > 0".into()));
    }
    let x = &state.nodes;
    let w = &state.weights;
    let n = x.len();
    let find = |t: f64| {
        x.iter()
            .position(|&v| v == t)
            .ok_or_else(|| Error::InvalidGrid(format!("no mesh node at {t}")))
    };
    let ip = find(a)?;
    let im = find(-a)?;
    if ip + 2 >= n || im < 2 {
        return Err(Error::InvalidGrid("nuclei too close to the wall".into()));
    }
    let mean_derivative = |k: usize, f: &dyn Fn(usize) -> f64| {
        let right = one_sided([x[k], x[k + 1], x[k + 2]], [f(k), f(k + 1), f(k + 2)]);
        let left = one_sided([x[k], x[k - 1], x[k - 2]], [f(k), f(k - 1), f(k - 2)]);
        0.5 * (right + left)
    };
    let mut total = 0.0;
    for (k, sign) in [(ip, -2.0), (im, 2.0)] {
        for (j, &wj) in w.iter().enumerate().take(n) {
            // z1 on the nuclear line, z2 = x[j]
            let d1 = mean_derivative(k, &|i| state.value(i, j));
            // z2 on the nuclear line, z1 = x[j]
            let d2 = mean_derivative(k, &|i| state.value(j, i));
            total += sign * wj * (state.value(k, j) * d1 + state.value(j, k) * d2);
        }
    }
    Ok(total)
}

/// Feynman-Hellman derivative `e'(a)` on a given mesh.
pub fn e_prime_fh(a: f64, z: f64, grid: &GridSpec) -> Result<f64> {
    fh_derivative(&ground_state(a, z, grid)?)
}

/// Feynman-Hellman derivative extrapolated from the default mesh and its
/// refinement. The line-integral formula converges at the same second order
/// as the energy.
pub fn e_prime_fh_extrapolated(a: f64, z: f64) -> Result<f64> {
    let grid = GridSpec::with_defaults(a)?;
    let (coarse, fine) = rayon::join(|| e_prime_fh(a, z, &grid), || e_prime_fh(a, z, &grid.refined()));
    Ok(richardson(coarse?, fine?, CONVERGENCE_ORDER).0)
}

/// How [`e_prime_zero_limit_with`] extrapolates to `a = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroLimitFit {
    /// Least-squares line.
    Linear,
    /// Parabola; with three points this interpolates them.
    Quadratic,
}

/// Right derivative `e'(0+)` by a linear fit of the extrapolated
/// Feynman-Hellman derivative at [`ZERO_LIMIT_POINTS`].
///
/// `e'(a)` bends strongly near the origin, so the straight line through
/// these points lands noticeably below the limit; see
/// [`e_prime_zero_limit_with`] for a quadratic fit.
pub fn e_prime_zero_limit(z: f64) -> Result<f64> {
    e_prime_zero_limit_with(z, &ZERO_LIMIT_POINTS, ZeroLimitFit::Linear)
}

pub fn e_prime_zero_limit_with(z: f64, points: &[f64], fit: ZeroLimitFit) -> Result<f64> {
    let values: Vec<f64> = points
        .par_iter()
        .map(|&a| e_prime_fh_extrapolated(a, z))
        .collect::<Result<_>>()?;
    let degree = match fit {
        ZeroLimitFit::Linear => 1,
        ZeroLimitFit::Quadratic => 2,
    };
    polynomial_fit_at_zero(points, &values, degree)
}
