use crate::error::{Error, Result};

/// Default core spacing.
pub const DEFAULT_H: f64 = 0.05;
/// Default half-width of the truncated square domain.
pub const DEFAULT_BOX: f64 = 12.0;
/// Smallest admissible half-width; the wavefunction decays at least like
/// `e^{-|z|}`, so the Dirichlet wall costs `O(e^{-2 box})` in energy.
pub const MIN_BOX: f64 = 10.0;
/// Width of the uniformly resolved region beyond the nuclei.
pub const CORE_WIDTH: f64 = 1.5;
/// Geometric growth factor of the cells outside the core.
const STRETCH_RATIO: f64 = 1.1;
/// Outer cells never exceed this multiple of the core spacing.
const MAX_STRETCH: f64 = 8.0;

/// One-dimensional mesh shared by both electron coordinates.
///
/// The mesh is symmetric about 0 and has nodes exactly at `0`, `+-a` and
/// `+-box`. `[0, a]` is split into `max(2, round(a/h))` equal cells,
/// `[a, a + CORE_WIDTH]` into cells of size close to `h`, and the remainder
/// up to the Dirichlet wall into cells that grow geometrically to at most
/// `MAX_STRETCH * h`. Refining (`level + 1`) bisects every cell of the base
/// mesh, so the sequence of meshes is nested and the discretization error
/// follows a clean power law in `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Half-width of the domain `[-box, box]^2`.
    pub box_half_width: f64,
    /// Core spacing of the base (level 0) mesh.
    pub base_h: f64,
    /// Nuclear half-distance; always a mesh node.
    pub a: f64,
    /// Number of bisections applied to the base mesh.
    pub level: u32,
}

impl GridSpec {
    pub fn new(a: f64, h: f64, box_half_width: f64) -> Result<Self> {
        if a.is_nan() || a < 0.0 {
            return Err(Error::InvalidGrid(format!("nuclear half-distance must be >= 0, got {a}")));
        }
        if !(h > 0.0) || h > 0.5 {
            return Err(Error::InvalidGrid(format!("spacing must lie in (0, 0.5], got {h}")));
        }
        if !(box_half_width >= MIN_BOX) {
            return Err(Error::InvalidGrid(format!(
                "box half-width must be >= {MIN_BOX}, got {box_half_width}"
            )));
        }
        if a + CORE_WIDTH + h >= box_half_width {
            return Err(Error::InvalidGrid(format!(
                "nuclei at +-{a} do not fit inside the box of half-width {box_half_width}"
            )));
        }
        Ok(Self {
            box_half_width,
            base_h: h,
            a,
            level: 0,
        })
    }

    pub fn with_defaults(a: f64) -> Result<Self> {
        Self::new(a, DEFAULT_H, DEFAULT_BOX)
    }

    /// Same mesh with every cell bisected.
    pub fn refined(&self) -> Self {
        Self {
            level: self.level + 1,
            ..*self
        }
    }

    /// Core spacing at this refinement level.
    pub fn h(&self) -> f64 {
        self.base_h / f64::from(1u32 << self.level)
    }

    /// Position of the right nucleus on the mesh. Nodes are placed exactly at
    /// `+-a`, so this equals `a`.
    pub fn a_snapped(&self) -> f64 {
        self.a
    }

    /// Non-negative half of the base mesh, `0 = x_0 < ... < x_m = box`.
    fn base_half_nodes(&self) -> Vec<f64> {
        let h = self.base_h;
        let mut nodes = vec![0.0];
        if self.a > 0.0 {
            let n_inner = ((self.a / h).round() as usize).max(2);
            for k in 1..n_inner {
                nodes.push(self.a * k as f64 / n_inner as f64);
            }
            nodes.push(self.a);
        }
        let core_end = self.a + CORE_WIDTH;
        let n_core = ((CORE_WIDTH / h).round() as usize).max(1);
        for k in 1..=n_core {
            nodes.push(self.a + CORE_WIDTH * k as f64 / n_core as f64);
        }
        let outer = self.box_half_width - core_end;
        let mut cells = Vec::new();
        let mut size = h;
        let mut total = 0.0;
        while total < outer {
            size = (size * STRETCH_RATIO).min(MAX_STRETCH * h);
            cells.push(size);
            total += size;
        }
        let scale = outer / total;
        let mut x = core_end;
        for (k, c) in cells.iter().enumerate() {
            x += c * scale;
            if k + 1 == cells.len() {
                x = self.box_half_width;
            }
            nodes.push(x);
        }
        nodes
    }

    /// Full mesh on `[-box, box]` including the two wall nodes.
    pub fn nodes(&self) -> Vec<f64> {
        let half = self.base_half_nodes();
        let mut full: Vec<f64> = half.iter().rev().map(|x| -x).collect();
        full.extend_from_slice(&half[1..]);
        for _ in 0..self.level {
            let mut finer = Vec::with_capacity(2 * full.len());
            for w in full.windows(2) {
                finer.push(w[0]);
                finer.push(0.5 * (w[0] + w[1]));
            }
            finer.push(*full.last().unwrap());
            full = finer;
        }
        full
    }

    /// Interior nodes (the unknowns of one coordinate) and their lumped
    /// trapezoidal weights.
    pub fn interior(&self) -> (Vec<f64>, Vec<f64>) {
        let all = self.nodes();
        let n = all.len();
        let x: Vec<f64> = all[1..n - 1].to_vec();
        let w: Vec<f64> = (1..n - 1).map(|i| 0.5 * (all[i + 1] - all[i - 1])).collect();
        (x, w)
    }

    /// Number of unknowns per coordinate.
    pub fn points_per_axis(&self) -> usize {
        self.nodes().len() - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nuclei_and_origin_are_nodes() {
        for &a in &[0.0, 0.013, 0.1, 0.3116, 1.0] {
            let g = GridSpec::with_defaults(a).unwrap().refined();
            let (x, _) = g.interior();
            assert!(x.contains(&a));
            assert!(x.contains(&-a));
            assert!(x.contains(&0.0));
            assert_eq!(g.a_snapped(), a);
        }
    }

    #[test]
    fn mesh_is_symmetric_and_nested() {
        let g = GridSpec::with_defaults(0.37).unwrap();
        let coarse = g.nodes();
        let fine = g.refined().nodes();
        assert_eq!(fine.len(), 2 * coarse.len() - 1);
        for (k, x) in coarse.iter().enumerate() {
            assert_eq!(fine[2 * k], *x);
        }
        let n = fine.len();
        for k in 0..n {
            assert_eq!(fine[k], -fine[n - 1 - k]);
        }
        assert_eq!(*fine.last().unwrap(), DEFAULT_BOX);
    }

    #[test]
    fn spacing_bounds() {
        let g = GridSpec::with_defaults(0.5).unwrap();
        let nodes = g.nodes();
        let h = g.h();
        for w in nodes.windows(2) {
            let d = w[1] - w[0];
            assert!(d > 0.0 && d <= MAX_STRETCH * h * 1.0001);
        }
        // core spacing equals h near the nuclei
        let (x, _) = g.interior();
        let i = x.iter().position(|&v| v == 0.5).unwrap();
        assert!((x[i + 1] - x[i] - h).abs() < 1e-12);
    }

    #[test]
    fn weights_integrate_constants() {
        let g = GridSpec::with_defaults(0.2).unwrap();
        let (_, w) = g.interior();
        let total: f64 = w.iter().sum();
        // trapezoid over [-box, box] minus the half cells at the walls
        let nodes = g.nodes();
        let n = nodes.len();
        let wall = 0.5 * (nodes[1] - nodes[0]) + 0.5 * (nodes[n - 1] - nodes[n - 2]);
        assert!((total + wall - 2.0 * DEFAULT_BOX).abs() < 1e-10);
    }

    #[test]
    fn rejects_invalid_grids() {
        assert!(GridSpec::new(0.1, 0.05, 9.0).is_err());
        assert!(GridSpec::new(-0.1, 0.05, 12.0).is_err());
        assert!(GridSpec::new(0.1, 0.0, 12.0).is_err());
        assert!(GridSpec::new(10.5, 0.05, 12.0).is_err());
    }
}
