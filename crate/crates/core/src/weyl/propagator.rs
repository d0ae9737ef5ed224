//! Causal propagator of the Klein–Gordon operator `□ + m² + ξR` on a 1+1
//! lattice.
//!
//! The discrete operator is the five-point leapfrog stencil with the mass
//! term averaged over the neighbouring time slices:
//!
//! ```text
//! (u^{n+1} − 2u^n + u^{n−1})/Δt² − (u_{j+1} − 2u_j + u_{j−1})/Δx² + M²(u^{n+1} + u^{n−1})/2 = f
//! ```
//!
//! It is time-symmetric, so the advanced Green operator is the transpose of
//! the retarded one and `E = G_adv − G_ret` is antisymmetric up to rounding.
//! Signals travel at most one cell per step, so with `Padded(p)`, `p ≥ nt`,
//! the result equals the infinite-lattice propagator restricted to the
//! window.

use super::{Site, Symplectic, TestFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Zero outside a margin of this many cells on each side.
    Padded(usize),
    /// Zero outside the window; light-cone exit is an error.
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Retarded,
    Advanced,
}

/// Real field on the `nt × nx` window, row-major in time.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    pub nt: usize,
    pub nx: usize,
    pub data: Vec<f64>,
}

impl LatticeField {
    pub fn zeros(nt: usize, nx: usize) -> Self {
        Self { nt, nx, data: vec![0.0; nt * nx] }
    }

    pub fn at(&self, n: usize, j: usize) -> f64 {
        self.data[n * self.nx + j]
    }

    pub fn get(&self, (n, j): Site) -> f64 {
        if n < 0 || j < 0 || n as usize >= self.nt || j as usize >= self.nx {
            0.0
        } else {
            self.at(n as usize, j as usize)
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpace {
    nt: usize,
    nx: usize,
    dt: f64,
    dx: f64,
    mass: f64,
    xi_r: f64,
    boundary: Boundary,
}

impl SymplecticSpace {
    /// Errors with `Cfl` when `dt > dx`.
    pub fn new(nt: usize, nx: usize, dt: f64, dx: f64, mass: f64, xi_r: f64) -> Result<Self> {
        if nt < 3 || nx < 3 {
            return Err(Error::Domain(format!("lattice {nt}×{nx} too small")));
        }
        if !(dt > 0.0 && dx > 0.0) {
            return Err(Error::Domain("lattice spacings must be positive".into()));
        }
        if dt > dx {
            return Err(Error::Cfl { dt, dx });
        }
        let m2 = mass * mass + xi_r;
        if !(m2 >= 0.0) {
            return Err(Error::Domain(format!("m² + ξR = {m2} must be non-negative")));
        }
        Ok(Self { nt, nx, dt, dx, mass, xi_r, boundary: Boundary::Padded(nt) })
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// `M² = m² + ξR`.
    pub fn mass_sq(&self) -> f64 {
        self.mass * self.mass + self.xi_r
    }

    pub fn cell_volume(&self) -> f64 {
        self.dt * self.dx
    }

    /// Same physical window with both spacings halved.
    pub fn refined(&self) -> Result<Self> {
        let s = Self::new(2 * self.nt - 1, 2 * self.nx - 1, self.dt / 2.0, self.dx / 2.0, self.mass, self.xi_r)?;
        Ok(match self.boundary {
            Boundary::Padded(_) => s,
            Boundary::Dirichlet => s.with_boundary(Boundary::Dirichlet),
        })
    }

    pub fn contains(&self, (n, j): Site) -> bool {
        n >= 0 && j >= 0 && (n as usize) < self.nt && (j as usize) < self.nx
    }

    /// Physical coordinates `(t, x)` of a site.
    pub fn coords(&self, (n, j): Site) -> (f64, f64) {
        (n as f64 * self.dt, j as f64 * self.dx)
    }

    /// Samples a real function of `(t, x)` on every site of the window.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> TestFunction {
        let mut vals = Vec::new();
        for n in 0..self.nt as i32 {
            for j in 0..self.nx as i32 {
                let (t, x) = self.coords((n, j));
                vals.push(((n, j), f(t, x)));
            }
        }
        TestFunction::from_real(vals)
    }

    fn padding(&self) -> usize {
        match self.boundary {
            Boundary::Padded(p) => p,
            Boundary::Dirichlet => 0,
        }
    }

    fn validate_source(&self, f: &TestFunction) -> Result<()> {
        if !f.is_real() {
            return Err(Error::Domain("propagator requires real test functions".into()));
        }
        let pad = self.padding() as i64;
        let (nt, nx) = (self.nt as i64, self.nx as i64);
        for (n, j) in f.support() {
            if !self.contains((n, j)) {
                return Err(Error::Domain(format!("site ({n}, {j}) outside the lattice")));
            }
            let (n, j) = (n as i64, j as i64);
            let reach = n.max(nt - 1 - n);
            if j - reach < -pad || j + reach > nx - 1 + pad {
                return Err(Error::LightConeExit(format!("source at ({n}, {j}) reaches {reach} cells beyond the padded lattice")));
            }
        }
        Ok(())
    }

    /// Retarded or advanced solution of `P u = f` on the window.
    pub fn solve(&self, f: &TestFunction, dir: Direction) -> Result<LatticeField> {
        self.validate_source(f)?;
        let (nt, nx) = (self.nt, self.nx);
        let pad = self.padding();
        let width = nx + 2 * pad;
        let mut out = LatticeField::zeros(nt, nx);
        if f.is_zero() {
            return Ok(out);
        }
        let mut src = vec![vec![0.0; width]; nt];
        for ((n, j), z) in f.iter() {
            src[n as usize][j as usize + pad] = z.re;
        }
        let idt2 = 1.0 / (self.dt * self.dt);
        let idx2 = 1.0 / (self.dx * self.dx);
        let a = idt2 + 0.5 * self.mass_sq();
        let rows: Vec<usize> = match dir {
            Direction::Retarded => (0..nt).collect(),
            Direction::Advanced => (0..nt).rev().collect(),
        };
        let mut prev = vec![0.0; width];
        let mut cur = vec![0.0; width];
        let mut next = vec![0.0; width];
        // `cur` holds u at row rows[k]; the step consumes the source on that row.
        for (k, &n) in rows.iter().enumerate() {
            out.data[n * nx..(n + 1) * nx].copy_from_slice(&cur[pad..pad + nx]);
            if k + 1 == rows.len() {
                break;
            }
            for i in 0..width {
                let left = if i > 0 { cur[i - 1] } else { 0.0 };
                let right = if i + 1 < width { cur[i + 1] } else { 0.0 };
                let lap = (left - 2.0 * cur[i] + right) * idx2;
                next[i] = (src[n][i] + 2.0 * idt2 * cur[i] + lap - a * prev[i]) / a;
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(out)
    }

    /// `E f = G_adv f − G_ret f`.
    pub fn propagator_apply(&self, f: &TestFunction) -> Result<LatticeField> {
        let adv = self.solve(f, Direction::Advanced)?;
        let ret = self.solve(f, Direction::Retarded)?;
        let data = adv.data.iter().zip(&ret.data).map(|(a, r)| a - r).collect();
        Ok(LatticeField { nt: self.nt, nx: self.nx, data })
    }

    /// `Σ f · u · ΔtΔx`.
    pub fn pair(&self, f: &TestFunction, u: &LatticeField) -> f64 {
        f.iter().map(|(s, z)| z.re * u.get(s)).sum::<f64>() * self.cell_volume()
    }

    /// `Σ f (E g) ΔtΔx` without antisymmetrization.
    pub fn symplectic_form(&self, f: &TestFunction, g: &TestFunction) -> Result<f64> {
        Ok(self.pair(f, &self.propagator_apply(g)?))
    }

    /// Largest residual of the pointwise-mass Klein–Gordon stencil
    /// `(D_t² − D_x² + M²) u` over interior sites outside `supp f`.
    pub fn pde_residual(&self, u: &LatticeField, f: &TestFunction) -> f64 {
        let idt2 = 1.0 / (self.dt * self.dt);
        let idx2 = 1.0 / (self.dx * self.dx);
        let m2 = self.mass_sq();
        let mut worst: f64 = 0.0;
        for n in 1..self.nt - 1 {
            for j in 1..self.nx - 1 {
                if f.value((n as i32, j as i32)).re != 0.0 {
                    continue;
                }
                let c = u.at(n, j);
                let r = (u.at(n + 1, j) - 2.0 * c + u.at(n - 1, j)) * idt2
                    - (u.at(n, j + 1) - 2.0 * c + u.at(n, j - 1)) * idx2
                    + m2 * c;
                worst = worst.max(r.abs());
            }
        }
        worst
    }
}

impl Symplectic for SymplecticSpace {
    /// `½(Σ f·Eg − Σ g·Ef) ΔtΔx`: exactly antisymmetric, and equal to
    /// `Σ f·Eg ΔtΔx` up to rounding.
    fn sigma(&self, f: &TestFunction, g: &TestFunction) -> Result<f64> {
        if f.is_zero() || g.is_zero() {
            return Ok(0.0);
        }
        let fg = self.symplectic_form(f, g)?;
        let gf = self.symplectic_form(g, f)?;
        Ok(0.5 * (fg - gf))
    }
}

/// Residual norms of `E f` for a smooth source sampled on successively
/// halved lattices, with the fitted order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub spacings: Vec<f64>,
    pub residuals: Vec<f64>,
    pub order: f64,
}

/// PDE residual of `E f` outside the source under `levels` halvings of
/// `space`, for the source `f(t, x)` sampled on each lattice.
pub fn residual_convergence(
    space: &SymplecticSpace,
    levels: usize,
    f: impl Fn(f64, f64) -> f64,
) -> Result<ConvergenceReport> {
    let mut s = space.clone();
    let mut spacings = Vec::new();
    let mut residuals = Vec::new();
    for k in 0..levels {
        if k > 0 {
            s = s.refined()?;
        }
        let src = s.sample(&f);
        let u = s.propagator_apply(&src)?;
        spacings.push(s.dt());
        residuals.push(s.pde_residual(&u, &src));
    }
    let order = crate::numeric::fit_log_slope(&spacings, &residuals).unwrap_or(f64::NAN);
    Ok(ConvergenceReport { spacings, residuals, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(t0: f64, x0: f64, r: f64) -> impl Fn(f64, f64) -> f64 {
        move |t, x| {
            let u2 = ((t - t0).powi(2) + (x - x0).powi(2)) / (r * r);
            if u2 < 1.0 { (-1.0 / (1.0 - u2)).exp() } else { 0.0 }
        }
    }

    #[test]
    fn cfl_is_enforced() {
        assert!(matches!(SymplecticSpace::new(10, 10, 0.2, 0.1, 1.0, 0.0), Err(Error::Cfl { .. })));
    }

    #[test]
    fn propagator_is_antisymmetric() {
        let s = SymplecticSpace::new(40, 40, 0.1, 0.1, 1.0, 0.0).unwrap();
        let f = s.sample(bump(1.5, 2.0, 0.8));
        let g = s.sample(bump(2.5, 2.3, 0.7));
        let fg = s.symplectic_form(&f, &g).unwrap();
        let gf = s.symplectic_form(&g, &f).unwrap();
        assert!(fg.abs() > 1e-3);
        assert!((fg + gf).abs() <= 1e-12 * fg.abs().max(1.0));
        assert_eq!(s.sigma(&f, &f).unwrap(), 0.0);
    }

    #[test]
    fn spacelike_supports_give_exact_zero() {
        let s = SymplecticSpace::new(30, 60, 0.1, 0.1, 1.0, 0.0).unwrap();
        let f = TestFunction::from_real([((15, 10), 1.0), ((14, 11), 0.5)]);
        let g = TestFunction::from_real([((16, 40), 1.0)]);
        assert_eq!(s.symplectic_form(&f, &g).unwrap(), 0.0);
    }

    #[test]
    fn dirichlet_rejects_cone_exit() {
        let s = SymplecticSpace::new(20, 20, 0.1, 0.1, 1.0, 0.0).unwrap().with_boundary(Boundary::Dirichlet);
        let f = TestFunction::from_real([((10, 10), 1.0)]);
        assert!(matches!(s.propagator_apply(&f), Err(Error::LightConeExit(_))));
    }

    #[test]
    fn complex_sources_are_rejected() {
        let s = SymplecticSpace::new(10, 10, 0.1, 0.1, 1.0, 0.0).unwrap();
        let f = TestFunction::from_values([((5, 5), crate::linalg::C64::new(0.0, 1.0))]);
        assert!(s.propagator_apply(&f).is_err());
    }

    #[test]
    fn massless_retarded_solution_is_half_step_cone() {
        // With Δt = Δx and M = 0 the leapfrog stencil propagates a point
        // source exactly: u = Δt² on alternating sites inside the cone.
        let s = SymplecticSpace::new(12, 25, 0.1, 0.1, 0.0, 0.0).unwrap();
        let f = TestFunction::from_real([((2, 12), 1.0)]);
        let u = s.solve(&f, Direction::Retarded).unwrap();
        assert_eq!(u.at(2, 12), 0.0);
        assert!((u.at(3, 12) - 0.01).abs() < 1e-15);
        assert!((u.at(4, 11) - 0.01).abs() < 1e-15);
        assert_eq!(u.at(4, 12), 0.0);
        assert_eq!(u.at(4, 9), 0.0);
    }

    #[test]
    fn residual_converges_at_second_order() {
        let s = SymplecticSpace::new(41, 41, 0.1, 0.1, 1.0, 0.0).unwrap();
        let rep = residual_convergence(&s, 3, bump(1.5, 2.0, 0.6)).unwrap();
        assert!(rep.order > 1.8, "{rep:?}");
    }
}
