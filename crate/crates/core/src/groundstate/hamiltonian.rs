use crate::error::{Error, Result};
use crate::groundstate::grid::GridSpec;
use crate::one_electron::check_charge;

/// Upper bound on stored nonzeros for an explicit sparse matrix.
pub const MAX_NONZEROS: usize = 50_000_000;

/// Discretized electronic Hamiltonian on the tensor mesh.
///
/// Quadratic form on nodal values `psi_ij = psi(x_i, x_j)`:
///
/// ```text
/// 1/2 sum_j w_j sum_i (psi_{i+1,j} - psi_ij)^2 / d_i   (and the same in j)
///   - sum_j w_j (psi_{+a,j}^2 + psi_{-a,j}^2)           (and the same in i)
///   + Z^{-1} sum_i w_i psi_ii^2
/// ```
///
/// with lumped weights `w` and cell sizes `d`. The mass matrix is
/// `diag(w_i w_j)`; the operator acts on `u = sqrt(w_i w_j) psi`, where it is
/// symmetric. On a uniform mesh this is the 5-point Laplacian times `-1/2`,
/// `-1/h` on the four nuclear lines and `+1/(Z h)` on the diagonal.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub grid: GridSpec,
    /// Interior coordinates of one axis.
    pub nodes: Vec<f64>,
    /// Lumped trapezoidal weights of one axis.
    pub weights: Vec<f64>,
    /// Diagonal of the scaled 1D stiffness `W^{-1/2} K W^{-1/2}`.
    pub stiff_diag: Vec<f64>,
    /// Off-diagonal of the scaled 1D stiffness, `stiff_off[i]` couples `i, i+1`.
    pub stiff_off: Vec<f64>,
    /// Delta-line potential on the 2D mesh, row-major in `(z1, z2)`.
    pub potential: Vec<f64>,
    /// Indices of `-a` and `+a` on an axis.
    pub nucleus_index: (usize, usize),
    pub inv_charge: f64,
}

pub fn assemble_hamiltonian(grid: &GridSpec, z: f64) -> Result<Hamiltonian> {
    check_charge(z)?;
    let all = grid.nodes();
    let (nodes, weights) = grid.interior();
    let n = nodes.len();
    if n.checked_mul(n).and_then(|m| m.checked_mul(5)).is_none_or(|nnz| nnz > MAX_NONZEROS) {
        return Err(Error::InvalidGrid(format!("{n}^2 unknowns exceed the size guard")));
    }

    let cell: Vec<f64> = all.windows(2).map(|w| w[1] - w[0]).collect();
    // interior node i sits at all[i + 1], between cells i and i + 1
    let stiff_diag: Vec<f64> = (0..n)
        .map(|i| (1.0 / cell[i] + 1.0 / cell[i + 1]) / weights[i])
        .collect();
    let stiff_off: Vec<f64> = (0..n - 1)
        .map(|i| -1.0 / (cell[i + 1] * (weights[i] * weights[i + 1]).sqrt()))
        .collect();

    let find = |x: f64| {
        nodes
            .iter()
            .position(|&v| v == x)
            .ok_or_else(|| Error::InvalidGrid(format!("no mesh node at {x}")))
    };
    let ip = find(grid.a)?;
    let im = find(-grid.a)?;

    let inv_charge = 1.0 / z;
    let mut potential = vec![0.0; n * n];
    // at a = 0 the two wells merge into one line of double strength
    let lines: Vec<usize> = if ip == im { vec![ip] } else { vec![im, ip] };
    let strength = if ip == im { 2.0 } else { 1.0 };
    for &k in &lines {
        for j in 0..n {
            potential[k * n + j] -= strength / weights[k];
            potential[j * n + k] -= strength / weights[k];
        }
    }
    if inv_charge != 0.0 {
        for i in 0..n {
            potential[i * n + i] += inv_charge / weights[i];
        }
    }

    Ok(Hamiltonian {
        grid: *grid,
        nodes,
        weights,
        stiff_diag,
        stiff_off,
        potential,
        nucleus_index: (im, ip),
        inv_charge,
    })
}

/// Explicit compressed-row matrix, used for inspection and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col: Vec<usize>,
    pub val: Vec<f64>,
}

impl CsrMatrix {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        let row = &self.col[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.val[self.row_ptr[r] + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (r, out) in y.iter_mut().enumerate().take(self.n) {
            *out = (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(|k| self.val[k] * x[self.col[k]])
                .sum();
        }
    }
}

impl Hamiltonian {
    pub fn points_per_axis(&self) -> usize {
        self.nodes.len()
    }

    pub fn dim(&self) -> usize {
        self.nodes.len() * self.nodes.len()
    }

    /// `y = H u` for `u` in the mass-scaled representation.
    pub fn apply(&self, u: &[f64], y: &mut [f64]) {
        let n = self.nodes.len();
        let d = &self.stiff_diag;
        let o = &self.stiff_off;
        for i in 0..n {
            let row = &u[i * n..(i + 1) * n];
            let out = &mut y[i * n..(i + 1) * n];
            for j in 0..n {
                // second coordinate
                let mut s = d[j] * row[j];
                if j > 0 {
                    s += o[j - 1] * row[j - 1];
                }
                if j + 1 < n {
                    s += o[j] * row[j + 1];
                }
                // first coordinate
                s += d[i] * row[j];
                if i > 0 {
                    s += o[i - 1] * u[(i - 1) * n + j];
                }
                if i + 1 < n {
                    s += o[i] * u[(i + 1) * n + j];
                }
                out[j] = 0.5 * s + self.potential[i * n + j] * row[j];
            }
        }
    }

    /// The same operator as an explicit sparse matrix.
    pub fn to_csr(&self) -> CsrMatrix {
        let n = self.nodes.len();
        let d = &self.stiff_diag;
        let o = &self.stiff_off;
        let mut row_ptr = Vec::with_capacity(n * n + 1);
        let mut col = Vec::with_capacity(5 * n * n);
        let mut val = Vec::with_capacity(5 * n * n);
        row_ptr.push(0);
        for i in 0..n {
            for j in 0..n {
                let r = i * n + j;
                if i > 0 {
                    col.push(r - n);
                    val.push(0.5 * o[i - 1]);
                }
                if j > 0 {
                    col.push(r - 1);
                    val.push(0.5 * o[j - 1]);
                }
                col.push(r);
                val.push(0.5 * (d[i] + d[j]) + self.potential[r]);
                if j + 1 < n {
                    col.push(r + 1);
                    val.push(0.5 * o[j]);
                }
                if i + 1 < n {
                    col.push(r + n);
                    val.push(0.5 * o[i]);
                }
                row_ptr.push(col.len());
            }
        }
        CsrMatrix {
            n: n * n,
            row_ptr,
            col,
            val,
        }
    }

    /// Nodal values `psi` to the mass-scaled representation `u`.
    pub fn to_scaled(&self, psi: &[f64]) -> Vec<f64> {
        let n = self.nodes.len();
        let sw: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        (0..n * n).map(|k| psi[k] * sw[k / n] * sw[k % n]).collect()
    }

    /// Inverse of [`Hamiltonian::to_scaled`].
    pub fn to_nodal(&self, u: &[f64]) -> Vec<f64> {
        let n = self.nodes.len();
        let sw: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        (0..n * n).map(|k| u[k] / (sw[k / n] * sw[k % n])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid(a: f64) -> GridSpec {
        GridSpec::new(a, 0.25, 10.0).unwrap()
    }

    #[test]
    fn explicit_matrix_is_exactly_symmetric() {
        let h = assemble_hamiltonian(&small_grid(0.5), 1.0).unwrap();
        let m = h.to_csr();
        for r in 0..m.n {
            for k in m.row_ptr[r]..m.row_ptr[r + 1] {
                assert_eq!(m.val[k], m.get(m.col[k], r));
            }
        }
    }

    #[test]
    fn operator_matches_explicit_matrix() {
        let h = assemble_hamiltonian(&small_grid(0.25), 2.0).unwrap();
        let m = h.to_csr();
        let u: Vec<f64> = (0..h.dim()).map(|k| ((k * 37 % 101) as f64 - 50.0) / 50.0).collect();
        let mut y1 = vec![0.0; h.dim()];
        let mut y2 = vec![0.0; h.dim()];
        h.apply(&u, &mut y1);
        m.matvec(&u, &mut y2);
        for (a, b) in y1.iter().zip(&y2) {
            assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn uniform_mesh_reduces_to_five_point_stencil() {
        // a = 0 and a core cell of h: the centre row is uniform
        let g = GridSpec::new(0.0, 0.25, 10.0).unwrap();
        let h = assemble_hamiltonian(&g, 1.0).unwrap();
        let n = h.points_per_axis();
        let c = h.nucleus_index.1;
        let m = h.to_csr();
        let step = 0.25;
        let r = (c + 1) * n + (c + 2);
        assert!((m.get(r, r) - 2.0 / (step * step)).abs() < 1e-9);
        assert!((m.get(r, r + 1) + 0.5 / (step * step)).abs() < 1e-9);
        assert!((m.get(r, r + n) + 0.5 / (step * step)).abs() < 1e-9);
        // merged nuclear line at z1 = 0 (strength 2) away from the diagonal
        let r0 = c * n + (c + 2);
        assert!((m.get(r0, r0) - (2.0 / (step * step) - 2.0 / step)).abs() < 1e-9);
        // repulsive diagonal
        let rd = (c + 1) * n + (c + 1);
        assert!((m.get(rd, rd) - (2.0 / (step * step) + 1.0 / step)).abs() < 1e-9);
    }

    #[test]
    fn interaction_off_for_infinite_charge() {
        let h = assemble_hamiltonian(&small_grid(0.5), f64::INFINITY).unwrap();
        assert_eq!(h.inv_charge, 0.0);
        let n = h.points_per_axis();
        let far = n / 2 + 10;
        assert_eq!(h.potential[far * n + far], 0.0);
    }

    #[test]
    fn scaling_round_trip() {
        let h = assemble_hamiltonian(&small_grid(0.5), 1.0).unwrap();
        let psi: Vec<f64> = (0..h.dim()).map(|k| (k as f64).sin()).collect();
        let back = h.to_nodal(&h.to_scaled(&psi));
        for (a, b) in psi.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
