//! Commuting translation flows `α_x(a) = U a U*`, `U = exp(i Σ x_k H_k)`,
//! their derivations `δ_k(a) = i[H_k, a]`, derivatives along contours, and
//! mollification `a(φ) = ∫ φ(s) α_s(a) ds`.
//!
//! In finite dimension the weak* and norm topologies coincide, so the
//! contour-derivative limit is checked in operator norm. The order-one
//! residual model `r(t) ≤ C t` is a convention of this module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{commutator, hermitian_deviation, hermitian_eigen, op_norm, CMatrix, C64, I};
use crate::numeric::fit_log_slope;

/// Commutator norm allowed between generators.
pub const COMMUTE_TOL: f64 = 1e-12;

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), -I, I, C64::new(0.0, 0.0)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)])
}

/// `I ⊗ … ⊗ m ⊗ … ⊗ I` with `m` on qubit `site` of `qubits`.
pub fn single_site(m: &CMatrix, site: usize, qubits: usize) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    let mut out = CMatrix::identity(1, 1);
    for q in 0..qubits {
        out = kron(&out, if q == site { m } else { &id });
    }
    out
}

/// Commuting self-adjoint generators `H_0 … H_{d−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationSystem {
    generators: Vec<CMatrix>,
}

impl TranslationSystem {
    /// Validates self-adjointness, equal shapes and `‖[H_j, H_k]‖ ≤ 1e−12`.
    pub fn new(generators: Vec<CMatrix>) -> Result<Self> {
        let n = generators.first().map_or(0, |h| h.nrows());
        for h in &generators {
            if h.nrows() != n || h.ncols() != n {
                return Err(Error::ShapeMismatch(format!("generator {}x{} in dimension {n}", h.nrows(), h.ncols())));
            }
            let dev = hermitian_deviation(h);
            if dev > COMMUTE_TOL {
                return Err(Error::NotSelfAdjoint { deviation: dev });
            }
        }
        for (j, hj) in generators.iter().enumerate() {
            for hk in &generators[j + 1..] {
                let c = op_norm(&commutator(hj, hk));
                if c > COMMUTE_TOL {
                    return Err(Error::NonCommutingGenerators(c));
                }
            }
        }
        Ok(Self { generators })
    }

    /// `H_k = σ_z` on qubit `k`, `k < directions ≤ qubits`; commutation is
    /// structural.
    pub fn qubits(qubits: usize, directions: usize) -> Result<Self> {
        if directions > qubits || qubits == 0 {
            return Err(Error::Domain(format!("{directions} directions on {qubits} qubits")));
        }
        Self::new((0..directions).map(|k| single_site(&pauli_z(), k, qubits)).collect())
    }

    pub fn directions(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, |h| h.nrows())
    }

    pub fn generator(&self, k: usize) -> &CMatrix {
        &self.generators[k]
    }

    fn check_shape(&self, a: &CMatrix) -> Result<()> {
        let n = self.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::ShapeMismatch(format!("{}x{} element in dimension {n}", a.nrows(), a.ncols())));
        }
        Ok(())
    }

    /// `exp(i Σ x_k H_k)`.
    pub fn unitary(&self, x: &[f64]) -> Result<CMatrix> {
        if x.len() != self.directions() {
            return Err(Error::ShapeMismatch(format!("{} coordinates for {} directions", x.len(), self.directions())));
        }
        let mut h = CMatrix::zeros(self.dim(), self.dim());
        for (xk, hk) in x.iter().zip(&self.generators) {
            h += hk.scale(*xk);
        }
        let eig = hermitian_eigen(&h)?;
        let diag: Vec<C64> = eig.values.iter().map(|&l| C64::from_polar(1.0, l)).collect();
        Ok(eig.recompose(&diag))
    }

    /// `α_x(a) = U a U*`.
    pub fn alpha(&self, x: &[f64], a: &CMatrix) -> Result<CMatrix> {
        self.check_shape(a)?;
        let u = self.unitary(x)?;
        Ok(&u * a * u.adjoint())
    }

    /// `δ_k(a) = i(H_k a − a H_k)`.
    pub fn delta(&self, k: usize, a: &CMatrix) -> Result<CMatrix> {
        self.check_shape(a)?;
        let h = self
            .generators
            .get(k)
            .ok_or_else(|| Error::Domain(format!("direction {k} of {}", self.directions())))?;
        Ok(commutator(h, a) * I)
    }

    /// `Σ_k c_k δ_k(a)`.
    pub fn directional(&self, coeffs: &[f64], a: &CMatrix) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for (k, ck) in coeffs.iter().enumerate() {
            if *ck != 0.0 {
                out += self.delta(k, a)?.scale(*ck);
            }
        }
        Ok(out)
    }
}

/// Polynomial path `x_k(t) = Σ_{m≥1} c_{k,m} tᵐ`, so `x(0) = 0` exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contour {
    /// `coeffs[k][m−1] = c_{k,m}`.
    pub coeffs: Vec<Vec<f64>>,
}

impl Contour {
    pub fn new(coeffs: Vec<Vec<f64>>) -> Self {
        Self { coeffs }
    }

    /// `x(t) = t e_k` in `d` directions.
    pub fn straight(k: usize, d: usize) -> Self {
        Self::new((0..d).map(|j| vec![if j == k { 1.0 } else { 0.0 }]).collect())
    }

    /// `x(t) = (t, t², …, t^d)`.
    pub fn curved(d: usize) -> Self {
        Self::new((0..d).map(|j| (0..=j).map(|m| if m == j { 1.0 } else { 0.0 }).collect()).collect())
    }

    pub fn at(&self, t: f64) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.iter().rev().fold(0.0, |acc, cm| (acc + cm) * t))
            .collect()
    }

    /// `x′(0) = (c_{0,1}, …, c_{d−1,1})`.
    pub fn velocity(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.first().copied().unwrap_or(0.0)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualTable {
    pub steps: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Fitted log-log slope; `None` when every residual is at the floor.
    pub order: Option<f64>,
    /// `‖Σ a_k δ_k(f)‖`.
    pub scale: f64,
}

/// Default step sequence `1e−2, 1e−3, 1e−4, 1e−5`.
pub const CONTOUR_STEPS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// `r(t) = ‖(α_{x(t)}(f) − f)/t − Σ a_k δ_k(f)‖` in operator norm.
pub fn contour_derivative_residual(
    sys: &TranslationSystem,
    contour: &Contour,
    f: &CMatrix,
    steps: &[f64],
) -> Result<ResidualTable> {
    let limit = sys.directional(&contour.velocity(), f)?;
    let mut residuals = Vec::with_capacity(steps.len());
    for &t in steps {
        let moved = sys.alpha(&contour.at(t), f)?;
        residuals.push(op_norm(&((moved - f).unscale(t) - &limit)));
    }
    let floor = 1e3 * f64::EPSILON * op_norm(f).max(1.0) / steps.iter().cloned().fold(f64::INFINITY, f64::min);
    let order = if residuals.iter().all(|r| *r <= floor) { None } else { fit_log_slope(steps, &residuals) };
    Ok(ResidualTable { steps: steps.to_vec(), residuals, order, scale: op_norm(&limit) })
}

/// `b(u) = exp(−1/(u(1−u)))` on `(0, 1)`.
fn bump1(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 { 0.0 } else { (-1.0 / (u * (1.0 - u))).exp() }
}

fn bump1_prime(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    let v = u * (1.0 - u);
    bump1(u) * (1.0 - 2.0 * u) / (v * v)
}

/// `φ(s) = c Π_k b((s_k − lo_k)/(hi_k − lo_k))` on a box in `(0, ∞)^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BumpFunction {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub scale: f64,
}

impl BumpFunction {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::ShapeMismatch("bump box bounds".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(*l >= 0.0 && h > l)) {
            return Err(Error::Domain("bump box must lie in [0, ∞)^d with positive widths".into()));
        }
        Ok(Self { lo, hi, scale: 1.0 })
    }

    /// Rescaled to unit mass.
    pub fn normalized(mut self) -> Self {
        let widths: f64 = self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product();
        self.scale = 1.0 / (BUMP_MASS.powi(self.lo.len() as i32) * widths);
        self
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    fn unit(&self, k: usize, s: f64) -> f64 {
        (s - self.lo[k]) / (self.hi[k] - self.lo[k])
    }

    pub fn eval(&self, s: &[f64]) -> f64 {
        self.scale * (0..self.dims()).map(|k| bump1(self.unit(k, s[k]))).product::<f64>()
    }

    /// `∂φ/∂s_k` in closed form.
    pub fn partial(&self, k: usize, s: &[f64]) -> f64 {
        let mut v = self.scale;
        for j in 0..self.dims() {
            let u = self.unit(j, s[j]);
            v *= if j == k { bump1_prime(u) / (self.hi[j] - self.lo[j]) } else { bump1(u) };
        }
        v
    }

    /// Exact `∫φ`.
    pub fn mass(&self) -> f64 {
        self.scale * self.lo.iter().zip(&self.hi).map(|(l, h)| BUMP_MASS * (h - l)).product::<f64>()
    }
}

/// `∫₀¹ exp(−1/(u(1−u))) du`.
pub const BUMP_MASS: f64 = 0.007_029_858_406_609_657;

/// Smallest accepted number of nodes per axis.
pub const MIN_MESH: usize = 4;

/// Composite midpoint rule of `w(s) α_s(a)` over the bump's box with
/// `nodes` points per axis.
fn quadrature(
    sys: &TranslationSystem,
    a: &CMatrix,
    phi: &BumpFunction,
    nodes: usize,
    weight: impl Fn(&[f64]) -> f64,
) -> Result<CMatrix> {
    if phi.dims() != sys.directions() {
        return Err(Error::ShapeMismatch(format!("{}-d bump for {} directions", phi.dims(), sys.directions())));
    }
    if nodes < MIN_MESH {
        return Err(Error::CoarseMesh(format!("{nodes} nodes per axis, need at least {MIN_MESH}")));
    }
    let d = phi.dims();
    let h: Vec<f64> = (0..d).map(|k| (phi.hi[k] - phi.lo[k]) / nodes as f64).collect();
    let cell: f64 = h.iter().product();
    let mut out = CMatrix::zeros(sys.dim(), sys.dim());
    let mut idx = vec![0usize; d];
    let mut s = vec![0.0; d];
    loop {
        for k in 0..d {
            s[k] = phi.lo[k] + (idx[k] as f64 + 0.5) * h[k];
        }
        let w = weight(&s);
        if w != 0.0 {
            out += sys.alpha(&s, a)?.scale(w * cell);
        }
        let mut k = 0;
        loop {
            if k == d {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < nodes {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `a(φ) ≈ ∫ φ(s) α_s(a) ds`.
pub fn mollify(sys: &TranslationSystem, a: &CMatrix, phi: &BumpFunction, nodes: usize) -> Result<CMatrix> {
    quadrature(sys, a, phi, nodes, |s| phi.eval(s))
}

/// `a(φ_k) ≈ ∫ ∂_k φ(s) α_s(a) ds`.
pub fn mollify_partial(
    sys: &TranslationSystem,
    a: &CMatrix,
    phi: &BumpFunction,
    k: usize,
    nodes: usize,
) -> Result<CMatrix> {
    quadrature(sys, a, phi, nodes, |s| phi.partial(k, s))
}

/// `‖δ_k(a(φ)) + a(φ_k)‖`.
pub fn mollifier_derivation_residual(
    sys: &TranslationSystem,
    a: &CMatrix,
    phi: &BumpFunction,
    k: usize,
    nodes: usize,
) -> Result<f64> {
    let lhs = sys.delta(k, &mollify(sys, a, phi, nodes)?)?;
    Ok(op_norm(&(lhs + mollify_partial(sys, a, phi, k, nodes)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshSweep {
    pub nodes: Vec<usize>,
    pub residuals: Vec<f64>,
    /// `r(n)/r(2n)` for successive levels.
    pub ratios: Vec<f64>,
}

/// Mollifier identity residual under repeated mesh halving from `nodes`.
pub fn mollifier_mesh_sweep(
    sys: &TranslationSystem,
    a: &CMatrix,
    phi: &BumpFunction,
    k: usize,
    nodes: usize,
    levels: usize,
) -> Result<MeshSweep> {
    let mut ns = Vec::new();
    let mut residuals = Vec::new();
    let mut n = nodes;
    for _ in 0..levels {
        ns.push(n);
        residuals.push(mollifier_derivation_residual(sys, a, phi, k, n)?);
        n *= 2;
    }
    let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(MeshSweep { nodes: ns, residuals, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::random;

    #[test]
    fn pauli_derivation() {
        let sys = TranslationSystem::new(vec![pauli_z()]).unwrap();
        let d = sys.delta(0, &pauli_x()).unwrap();
        assert!(max_abs(&(d + pauli_y().scale(2.0))) < 1e-15);
        assert!(max_abs(&sys.delta(0, &CMatrix::identity(2, 2)).unwrap()) == 0.0);
    }

    #[test]
    fn non_commuting_generators_are_rejected() {
        assert!(matches!(
            TranslationSystem::new(vec![pauli_x(), pauli_z()]),
            Err(Error::NonCommutingGenerators(_))
        ));
    }

    #[test]
    fn bump_mass_matches_quadrature() {
        let n = 20_000;
        let m: f64 = (0..n).map(|i| bump1((i as f64 + 0.5) / n as f64)).sum::<f64>() / n as f64;
        assert!((m - BUMP_MASS).abs() < 1e-15);
        let phi = BumpFunction::new(vec![0.5], vec![1.5]).unwrap().normalized();
        assert!((phi.mass() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bump_partial_matches_difference() {
        let phi = BumpFunction::new(vec![0.2, 1.0], vec![1.2, 1.5]).unwrap();
        let s = [0.6, 1.3];
        let h = 1e-6;
        for k in 0..2 {
            let mut p = s;
            let mut m = s;
            p[k] += h;
            m[k] -= h;
            let fd = (phi.eval(&p) - phi.eval(&m)) / (2.0 * h);
            assert!((fd - phi.partial(k, &s)).abs() < 1e-8 * phi.eval(&s).max(1e-3));
        }
    }

    #[test]
    fn contour_residual_is_first_order() {
        let sys = TranslationSystem::qubits(3, 3).unwrap();
        let f = random::hermitian(&mut random::rng(3), 8);
        let rep = contour_derivative_residual(&sys, &Contour::curved(3), &f, &CONTOUR_STEPS).unwrap();
        assert!(rep.order.unwrap() > 0.9, "{rep:?}");
        let rep = contour_derivative_residual(&sys, &Contour::straight(1, 3), &f, &CONTOUR_STEPS).unwrap();
        assert!(rep.residuals[2] <= 1e-3 * rep.scale);
        let rep = contour_derivative_residual(&sys, &Contour::curved(3), &sys.generator(0).clone(), &CONTOUR_STEPS)
            .unwrap();
        assert!(rep.order.is_none());
    }

    #[test]
    fn mollifier_identity() {
        let sys = TranslationSystem::qubits(2, 1).unwrap();
        let a = random::matrix(&mut random::rng(5), 4);
        let phi = BumpFunction::new(vec![0.5], vec![1.5]).unwrap().normalized();
        assert!(mollifier_derivation_residual(&sys, &a, &phi, 0, 64).unwrap() < 1e-5);
        let id = CMatrix::identity(4, 4);
        let m = mollify(&sys, &id, &phi, 64).unwrap();
        assert!(max_abs(&(m - id)) < 1e-12);
        assert!(matches!(mollify(&sys, &a, &phi, 2), Err(Error::CoarseMesh(_))));
    }
}
