//! Finite-dimensional traced *-algebras.
//!
//! An algebra is a direct sum `⊕ M_{n_i}` with trace `τ(x) = Σ w_i tr(x_i)`
//! and an optional faithful state `ω(x) = τ(ρ x)`. Elements are lists of
//! blocks. The module provides spectral calculus, distribution functions
//! `τ(E^{|a|}(ε, ∞))`, the modular flow `σ_t(a) = ρ^{it} a ρ^{-it}` with its KMS
//! residual, and pinching conditional expectations onto block subalgebras.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{
    c, frobenius, hermitian_deviation, hermitian_eigen, hermitian_function,
    hermitian_function_complex, max_abs, singular_values, CMatrix, HermitianEigen, C64,
};

/// Relative tolerance for the self-adjointness precondition.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Relative width within which singular values are merged into one level.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Allowed deviation of `τ(ρ)` from one.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;

/// Element of a direct sum of matrix algebras.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    blocks: Vec<CMatrix>,
}

impl Element {
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Self {
        Self { blocks }
    }

    /// Single-block element.
    pub fn from_matrix(m: CMatrix) -> Self {
        Self { blocks: vec![m] }
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_matrix(CMatrix::from_fn(n, n, |i, j| if i == j { c(values[i]) } else { c(0.0) }))
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn adjoint(&self) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b * z).collect() }
    }

    pub fn map_blocks(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self { blocks: self.blocks.iter().map(f).collect() }
    }

    /// Largest entry modulus over all blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Frobenius norm of the direct sum, ignoring trace weights.
    pub fn frobenius(&self) -> f64 {
        self.blocks.iter().map(|b| frobenius(b).powi(2)).sum::<f64>().sqrt()
    }

    /// Operator norm of the direct sum.
    pub fn op_norm(&self) -> f64 {
        self.blocks.iter().map(crate::linalg::op_norm).fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.blocks.iter().map(hermitian_deviation).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|z| *z == c(0.0)))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element { blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element { blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        Element { blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect() }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_blocks(|b| -b)
    }
}

/// Eigen-decomposition of a self-adjoint element, block by block.
pub struct SpectralData {
    pub blocks: Vec<HermitianEigen>,
}

impl SpectralData {
    pub fn reconstruct(&self) -> Element {
        Element::from_blocks(
            self.blocks
                .iter()
                .map(|e| e.recompose(&e.values.iter().map(|&v| c(v)).collect::<Vec<_>>()))
                .collect(),
        )
    }
}

/// One level of `|a|`: a singular value and the trace weight of its projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub value: f64,
    pub weight: f64,
}

/// `⊕ M_{n_i}` with trace weights and an optional state density.
#[derive(Debug, Clone, PartialEq)]
pub struct TracedAlgebra {
    dims: Vec<usize>,
    weights: Vec<f64>,
    density: Option<Element>,
}

impl TracedAlgebra {
    pub fn new(dims: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.len() != weights.len() {
            return Err(Error::InvalidAlgebra(
                "need one trace weight per block and at least one block".into(),
            ));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::InvalidAlgebra("block of dimension 0".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidAlgebra(format!("trace weight {w} is not positive")));
        }
        Ok(Self { dims, weights, density: None })
    }

    /// `M_n` with the standard trace.
    pub fn matrix(n: usize) -> Self {
        Self::new(vec![n], vec![1.0]).expect("n > 0")
    }

    /// Attaches a faithful state density `ρ > 0` with `τ(ρ) = 1`.
    pub fn with_density(mut self, rho: Element) -> Result<Self> {
        self.check(&rho)?;
        let dev = rho.hermitian_deviation();
        if dev > HERMITIAN_TOL * rho.max_abs().max(1.0) {
            return Err(Error::NotSelfAdjoint { deviation: dev });
        }
        let min_eig = self.min_eigenvalue(&rho)?;
        if !(min_eig > 0.0) {
            return Err(Error::SingularDensity { min_eigenvalue: min_eig });
        }
        let tr = self.trace(&rho).re;
        if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidAlgebra(format!("density has trace {tr}, expected 1")));
        }
        self.density = Some(rho);
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn density(&self) -> Option<&Element> {
        self.density.as_ref()
    }

    pub fn zero(&self) -> Element {
        Element { blocks: self.dims.iter().map(|&n| CMatrix::zeros(n, n)).collect() }
    }

    pub fn identity(&self) -> Element {
        Element { blocks: self.dims.iter().map(|&n| CMatrix::identity(n, n)).collect() }
    }

    /// Confirms that `x` has this algebra's block shapes.
    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = x.blocks.len() == self.dims.len()
            && x.blocks.iter().zip(&self.dims).all(|(b, &n)| b.nrows() == n && b.ncols() == n);
        if ok {
            Ok(())
        } else {
            let got: Vec<_> = x.blocks.iter().map(|b| (b.nrows(), b.ncols())).collect();
            Err(Error::ShapeMismatch(format!("blocks {got:?} do not match dims {:?}", self.dims)))
        }
    }

    /// `τ(x) = Σ w_i tr(x_i)`.
    pub fn trace(&self, x: &Element) -> C64 {
        x.blocks.iter().zip(&self.weights).map(|(b, &w)| b.trace() * w).sum()
    }

    /// `ω(x) = τ(ρ x)`, or `τ(x)` when no density is attached.
    pub fn state(&self, x: &Element) -> C64 {
        match &self.density {
            Some(rho) => self.trace(&(rho * x)),
            None => self.trace(x),
        }
    }

    fn require_self_adjoint(&self, x: &Element) -> Result<()> {
        self.check(x)?;
        let dev = x.hermitian_deviation();
        if dev > HERMITIAN_TOL * x.max_abs().max(1.0) {
            return Err(Error::NotSelfAdjoint { deviation: dev });
        }
        Ok(())
    }

    pub fn spectral(&self, x: &Element) -> Result<SpectralData> {
        self.require_self_adjoint(x)?;
        Ok(SpectralData { blocks: x.blocks.iter().map(hermitian_eigen).collect::<Result<_>>()? })
    }

    /// Smallest eigenvalue of a self-adjoint element.
    pub fn min_eigenvalue(&self, x: &Element) -> Result<f64> {
        let sd = self.spectral(x)?;
        Ok(sd.blocks.iter().flat_map(|e| e.values.iter().copied()).fold(f64::INFINITY, f64::min))
    }

    /// `f(x)` for self-adjoint `x`; diagonal blocks are handled exactly.
    pub fn apply_function<F: Fn(f64) -> f64>(&self, x: &Element, f: F) -> Result<Element> {
        self.require_self_adjoint(x)?;
        Ok(Element {
            blocks: x.blocks.iter().map(|b| hermitian_function(b, &f)).collect::<Result<_>>()?,
        })
    }

    /// Eigenvalues of a positive semidefinite element with their trace
    /// weights; tiny negative eigenvalues from rounding are clamped to 0.
    pub fn positive_levels(&self, f: &Element) -> Result<Vec<Level>> {
        let sd = self.spectral(f)?;
        let scale = f.op_norm();
        let mut out = Vec::new();
        for (e, &w) in sd.blocks.iter().zip(&self.weights) {
            for &v in &e.values {
                if v < -1e-12 * scale.max(1e-300) {
                    return Err(Error::NotPositive { min_eigenvalue: v });
                }
                out.push(Level { value: v.max(0.0), weight: w });
            }
        }
        Ok(out)
    }

    /// Spectrum of `|a|`: singular values merged within `CLUSTER_TOL·‖a‖`.
    pub fn singular_levels(&self, a: &Element) -> Result<Vec<Level>> {
        self.check(a)?;
        let mut raw: Vec<Level> = a
            .blocks
            .iter()
            .zip(&self.weights)
            .flat_map(|(b, &w)| singular_values(b).into_iter().map(move |s| Level { value: s, weight: w }))
            .collect();
        raw.sort_by(|x, y| y.value.total_cmp(&x.value));
        let tol = CLUSTER_TOL * raw.first().map_or(0.0, |l| l.value);
        let mut out: Vec<(f64, f64, f64)> = Vec::new(); // (weighted sum, weight, anchor)
        for l in raw {
            match out.last_mut() {
                Some(last) if last.2 - l.value <= tol => {
                    last.0 += l.value * l.weight;
                    last.1 += l.weight;
                }
                _ => out.push((l.value * l.weight, l.weight, l.value)),
            }
        }
        Ok(out.into_iter().map(|(s, w, _)| Level { value: s / w, weight: w }).collect())
    }

    /// `τ(E^{|a|}(ε, ∞))`, the trace of the spectral projection of `|a|`
    /// onto the open interval `(ε, ∞)`.
    pub fn distribution(&self, a: &Element, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("distribution at ε = {eps} <= 0")));
        }
        Ok(self
            .singular_levels(a)?
            .iter()
            .filter(|l| l.value > eps)
            .map(|l| l.weight)
            .sum())
    }

    fn require_density(&self) -> Result<&Element> {
        self.density
            .as_ref()
            .ok_or_else(|| Error::InvalidAlgebra("no state density attached".into()))
    }

    /// `ρ^{it} a ρ^{-it}`.
    pub fn modular_flow(&self, t: f64, a: &Element) -> Result<Element> {
        self.check(a)?;
        let rho = self.require_density()?;
        let mut blocks = Vec::with_capacity(a.blocks.len());
        for (r, x) in rho.blocks.iter().zip(&a.blocks) {
            let eig = hermitian_eigen(r)?;
            let fwd: Vec<C64> = eig.values.iter().map(|&l| (C64::i() * t * l.ln()).exp()).collect();
            let u = eig.recompose(&fwd);
            blocks.push(&u * x * u.adjoint());
        }
        Ok(Element { blocks })
    }

    /// Modular generator `K = −log ρ`, so that `σ_t(a) = e^{−itK} a e^{itK}`.
    pub fn modular_generator(&self) -> Result<Element> {
        let rho = self.require_density()?.clone();
        self.apply_function(&rho, |l| -l.ln())
    }

    /// `|τ(ρab) − τ(ρ b ρ a ρ⁻¹)|`, the KMS boundary identity at `t = i`.
    pub fn kms_residual(&self, a: &Element, b: &Element) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        let rho = self.require_density()?;
        let rho_inv = Element {
            blocks: rho
                .blocks
                .iter()
                .map(|r| hermitian_function_complex(r, |l| c(1.0 / l)))
                .collect::<Result<_>>()?,
        };
        let lhs = self.trace(&(&(rho * a) * b));
        let rhs = self.trace(&(&(&(&(rho * b) * rho) * a) * &rho_inv));
        Ok((lhs - rhs).norm())
    }

    /// `Σ p_i x p_i` for a validated pinching pattern.
    pub fn conditional_expectation(&self, x: &Element, pattern: &Pinching) -> Result<Element> {
        self.check(x)?;
        pattern.check_algebra(self)?;
        let mut out = self.zero();
        for p in &pattern.projections {
            let term = &(p * x) * p;
            out = &out + &term;
        }
        Ok(out)
    }

    /// Positive semidefinite test to a relative tolerance.
    pub fn is_positive(&self, x: &Element, rel_tol: f64) -> Result<bool> {
        let min = self.min_eigenvalue(x)?;
        Ok(min >= -rel_tol * x.op_norm().max(f64::MIN_POSITIVE))
    }
}

/// Mutually orthogonal projections summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Pinching {
    projections: Vec<Element>,
    dims: Vec<usize>,
}

impl Pinching {
    /// Validates a projection family against an algebra.
    pub fn new(alg: &TracedAlgebra, projections: Vec<Element>) -> Result<Self> {
        const TOL: f64 = 1e-10;
        if projections.is_empty() {
            return Err(Error::InvalidPattern("no projections".into()));
        }
        let mut sum = alg.zero();
        for (i, p) in projections.iter().enumerate() {
            alg.check(p)?;
            if p.hermitian_deviation() > TOL || (&(p * p) - p).max_abs() > TOL {
                return Err(Error::InvalidPattern(format!("element {i} is not a projection")));
            }
            for (j, q) in projections.iter().enumerate().skip(i + 1) {
                if (p * q).max_abs() > TOL {
                    return Err(Error::InvalidPattern(format!(
                        "projections {i} and {j} are not orthogonal"
                    )));
                }
            }
            sum = &sum + p;
        }
        if (&sum - &alg.identity()).max_abs() > TOL {
            return Err(Error::InvalidPattern("projections do not sum to the identity".into()));
        }
        Ok(Self { projections, dims: alg.dims().to_vec() })
    }

    /// Coordinate projections from a partition of each block's basis indices.
    /// `groups[b]` lists the index groups of block `b`.
    pub fn from_partition(alg: &TracedAlgebra, groups: &[Vec<Vec<usize>>]) -> Result<Self> {
        if groups.len() != alg.dims().len() {
            return Err(Error::InvalidPattern("one partition per block required".into()));
        }
        let mut projections = Vec::new();
        for (b, parts) in groups.iter().enumerate() {
            for part in parts {
                let mut p = alg.zero().into_blocks();
                for &k in part {
                    if k >= alg.dims()[b] {
                        return Err(Error::InvalidPattern(format!(
                            "index {k} outside block {b} of size {}",
                            alg.dims()[b]
                        )));
                    }
                    p[b][(k, k)] = c(1.0);
                }
                projections.push(Element::from_blocks(p));
            }
        }
        Self::new(alg, projections)
    }

    pub fn projections(&self) -> &[Element] {
        &self.projections
    }

    fn check_algebra(&self, alg: &TracedAlgebra) -> Result<()> {
        if self.dims != alg.dims() {
            return Err(Error::InvalidPattern("pattern built for a different algebra".into()));
        }
        Ok(())
    }

    /// The range algebra `⊕_{i,b} p_{i,b} M_{n_b} p_{i,b}` as an abstract
    /// traced algebra, with the compression map onto it. The restricted trace
    /// keeps the block weight `w_b`.
    pub fn restricted(&self, alg: &TracedAlgebra) -> Result<Restriction> {
        self.check_algebra(alg)?;
        let mut isometries = Vec::new();
        let (mut dims, mut weights) = (Vec::new(), Vec::new());
        for p in &self.projections {
            for (b, pb) in p.blocks.iter().enumerate() {
                let v = range_isometry(pb)?;
                if v.ncols() == 0 {
                    continue;
                }
                dims.push(v.ncols());
                weights.push(alg.weights()[b]);
                isometries.push((b, v));
            }
        }
        Ok(Restriction { algebra: TracedAlgebra::new(dims, weights)?, isometries })
    }
}

/// Orthonormal basis of the range of a projection; exact for coordinate ones.
fn range_isometry(p: &CMatrix) -> Result<CMatrix> {
    let n = p.nrows();
    if crate::linalg::is_diagonal(p) {
        let idx: Vec<usize> = (0..n).filter(|&k| p[(k, k)].re > 0.5).collect();
        let mut v = CMatrix::zeros(n, idx.len());
        for (col, &k) in idx.iter().enumerate() {
            v[(k, col)] = c(1.0);
        }
        return Ok(v);
    }
    let e = hermitian_eigen(p)?;
    let cols: Vec<usize> = (0..n).filter(|&k| e.values[k] > 0.5).collect();
    let mut v = CMatrix::zeros(n, cols.len());
    for (j, &k) in cols.iter().enumerate() {
        v.set_column(j, &e.vectors.column(k));
    }
    Ok(v)
}

/// A pinching subalgebra realized as a standalone traced algebra.
pub struct Restriction {
    pub algebra: TracedAlgebra,
    isometries: Vec<(usize, CMatrix)>,
}

impl Restriction {
    /// Compresses an element of the ambient algebra onto the subalgebra.
    pub fn compress(&self, x: &Element) -> Element {
        Element::from_blocks(
            self.isometries.iter().map(|(b, v)| v.adjoint() * x.block(*b) * v).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn m2(a: [C64; 4]) -> Element {
        Element::from_matrix(CMatrix::from_row_slice(2, 2, &a))
    }

    #[test]
    fn apply_function_examples() {
        let alg = TracedAlgebra::matrix(2);
        let a = Element::from_diagonal(&[1.0, 4.0]);
        assert_eq!(alg.apply_function(&a, f64::sqrt).unwrap(), Element::from_diagonal(&[1.0, 2.0]));
        let f = Element::from_diagonal(&[2.0, 1.0]);
        let flogf = alg.apply_function(&f, |t| t * t.ln()).unwrap();
        assert!((alg.trace(&flogf).re - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(alg.apply_function(&f, |t| t).unwrap(), f);
        let nsa = m2([c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(alg.apply_function(&nsa, |t| t), Err(Error::NotSelfAdjoint { .. })));
        let sing = Element::from_diagonal(&[0.0, 1.0]);
        assert_eq!(
            alg.apply_function(&sing, f64::ln).unwrap_err(),
            Error::UndefinedAtEigenvalue { eigenvalue: 0.0 }
        );
    }

    #[test]
    fn distribution_examples() {
        let alg = TracedAlgebra::matrix(2);
        let a = Element::from_diagonal(&[3.0, 1.0]);
        assert_eq!(alg.distribution(&a, 2.0).unwrap(), 1.0);
        assert_eq!(alg.distribution(&alg.zero(), 0.5).unwrap(), 0.0);
        // Open interval: ε equal to a singular value excludes it.
        assert_eq!(alg.distribution(&a, 3.0).unwrap(), 0.0);
        assert_eq!(alg.distribution(&a, 1.0).unwrap(), 1.0);
        assert_eq!(alg.distribution(&a, 0.999).unwrap(), 2.0);
    }

    #[test]
    fn distribution_uses_trace_weights() {
        let alg = TracedAlgebra::new(vec![1, 2], vec![0.5, 2.0]).unwrap();
        let a = Element::from_blocks(vec![
            CMatrix::from_element(1, 1, c(5.0)),
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(-4.0), c(0.1)])),
        ]);
        assert_eq!(alg.distribution(&a, 1.0).unwrap(), 2.5);
    }

    #[test]
    fn central_density_gives_trivial_flow() {
        let alg = TracedAlgebra::matrix(2)
            .with_density(Element::from_diagonal(&[0.5, 0.5]))
            .unwrap();
        let a = m2([c(1.0), I, c(2.0), c(-1.0)]);
        let s = alg.modular_flow(0.7, &a).unwrap();
        assert!((&s - &a).max_abs() < 1e-15);
        assert!(alg.kms_residual(&a, &a.adjoint()).unwrap() < 1e-15);
    }

    #[test]
    fn modular_generator_is_minus_log_density() {
        let alg = TracedAlgebra::matrix(2)
            .with_density(Element::from_diagonal(&[0.25, 0.75]))
            .unwrap();
        let k = alg.modular_generator().unwrap();
        assert!((k.block(0)[(0, 0)].re - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        let alg = TracedAlgebra::matrix(2);
        assert!(matches!(
            alg.clone().with_density(Element::from_diagonal(&[1.0, 0.0])),
            Err(Error::SingularDensity { .. })
        ));
        assert!(alg.clone().with_density(Element::from_diagonal(&[0.5, 0.6])).is_err());
        assert!(alg.modular_flow(1.0, &alg.identity()).is_err());
    }

    #[test]
    fn pinching_examples() {
        let alg = TracedAlgebra::matrix(2);
        let pat = Pinching::from_partition(&alg, &[vec![vec![0], vec![1]]]).unwrap();
        let x = m2([c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(alg.conditional_expectation(&x, &pat).unwrap().is_zero());
        let d = Element::from_diagonal(&[3.0, -2.0]);
        assert_eq!(alg.conditional_expectation(&d, &pat).unwrap(), d);
    }

    #[test]
    fn pinching_validation() {
        let alg = TracedAlgebra::matrix(3);
        assert!(Pinching::from_partition(&alg, &[vec![vec![0, 1]]]).is_err());
        assert!(Pinching::from_partition(&alg, &[vec![vec![0, 1], vec![1, 2]]]).is_err());
        assert!(Pinching::from_partition(&alg, &[vec![vec![0, 1], vec![2, 3]]]).is_err());
        let half = Element::from_diagonal(&[0.5, 0.5, 0.5]);
        assert!(Pinching::new(&alg, vec![half]).is_err());
    }

    #[test]
    fn restriction_compresses_blocks() {
        let alg = TracedAlgebra::new(vec![3], vec![2.0]).unwrap();
        let pat = Pinching::from_partition(&alg, &[vec![vec![0, 2], vec![1]]]).unwrap();
        let r = pat.restricted(&alg).unwrap();
        assert_eq!(r.algebra.dims(), &[2, 1]);
        assert_eq!(r.algebra.weights(), &[2.0, 2.0]);
        let x = Element::from_diagonal(&[1.0, 2.0, 3.0]);
        let cx = r.compress(&x);
        assert_eq!(cx.block(0)[(1, 1)], c(3.0));
        assert_eq!(r.algebra.trace(&cx), alg.trace(&x));
    }

    #[test]
    fn singular_levels_cluster() {
        let alg = TracedAlgebra::matrix(3);
        let a = Element::from_diagonal(&[1.0, 1.0 + 1e-12, -0.5]);
        let lv = alg.singular_levels(&a).unwrap();
        assert_eq!(lv.len(), 2);
        assert_eq!(lv[0].weight, 2.0);
        assert_eq!(lv[1].value, 0.5);
    }
}
