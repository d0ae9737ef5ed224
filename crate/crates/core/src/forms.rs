//! Derivation-based differential forms over a matrix algebra.
//!
//! A [`DerivationSpace`] is spanned by inner derivations `X_k = ad(B_k)`,
//! `X_k(a) = B_k a − a B_k`, for anti-Hermitian `B_k`. A degree-`n`
//! [`GradedForm`] stores one matrix per strictly increasing multi-index
//! `k₁ < … < k_n` and is read as an alternating multilinear map on the
//! `X_k`.
//!
//! Conventions:
//!
//! ```text
//! (dω)(X_0, …, X_n) = Σ_k (−1)^k X_k(ω(…, X̂_k, …))
//!                   + Σ_{k<l} (−1)^{k+l} ω([X_k, X_l], …, X̂_k, …, X̂_l, …)
//! (ω ∧ η)_I = Σ_{S ⊂ I, |S| = deg ω} sgn(S, I∖S) ω_S η_{I∖S}
//! ```
//!
//! where `sgn(S, I∖S)` is the sign of the shuffle placing `S` first. This is
//! the full derivation calculus on the span of the `X_k`; no restriction to a
//! minimal sub-calculus is made. Graded commutativity is not expected: the
//! components do not commute.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::flows::TranslationSystem;
use crate::linalg::{c, commutator, hermitian_eigen, max_abs, CMatrix, C64, I};

/// Closure residual allowed for brackets of basis elements.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Inner derivations `ad(B_k)` with structure constants
/// `[X_j, X_k] = Σ_l c_{jk}^l X_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationSpace {
    basis: Vec<CMatrix>,
    /// `structure[j][k][l] = c_{jk}^l`.
    structure: Vec<Vec<Vec<f64>>>,
    /// Largest closure residual over all pairs.
    closure_residual: f64,
}

fn traceless(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    let mut out = m.clone();
    let t = m.trace() / c(n as f64);
    for k in 0..n {
        out[(k, k)] -= t;
    }
    out
}

/// `Re tr(a* b)`.
fn real_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Solves `[B_j, B_k] − trace part = Σ_l c_{jk}^l B_l` by real least squares
/// in the trace pairing. Returns the constants and the largest residual.
pub fn bracket_structure(basis: &[CMatrix]) -> Result<(Vec<Vec<Vec<f64>>>, f64)> {
    let r = basis.len();
    let n = basis.first().map_or(0, |b| b.nrows());
    if basis.iter().any(|b| b.nrows() != n || b.ncols() != n) {
        return Err(Error::ShapeMismatch("basis elements differ in shape".into()));
    }
    let reduced: Vec<CMatrix> = basis.iter().map(traceless).collect();
    let gram = CMatrix::from_fn(r, r, |i, j| c(real_inner(&reduced[i], &reduced[j])));
    let eig = hermitian_eigen(&gram)?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    if r > 0 && !(eig.values[0] > 1e-12 * top.max(f64::MIN_POSITIVE)) {
        return Err(Error::DependentBasis);
    }
    let inv_diag: Vec<C64> = eig.values.iter().map(|v| c(1.0 / v)).collect();
    let gram_inv = eig.recompose(&inv_diag);
    let mut structure = vec![vec![vec![0.0; r]; r]; r];
    let mut worst: f64 = 0.0;
    for j in 0..r {
        for k in (j + 1)..r {
            let br = traceless(&commutator(&basis[j], &basis[k]));
            let rhs: Vec<f64> = reduced.iter().map(|b| real_inner(b, &br)).collect();
            let coeffs: Vec<f64> = (0..r).map(|l| (0..r).map(|m| gram_inv[(l, m)].re * rhs[m]).sum()).collect();
            let mut fit = br.clone();
            for (l, cl) in coeffs.iter().enumerate() {
                fit -= reduced[l].scale(*cl);
            }
            let res = max_abs(&fit);
            if res > CLOSURE_TOL {
                return Err(Error::NotClosed(j, k, res));
            }
            worst = worst.max(res);
            for (l, cl) in coeffs.iter().enumerate() {
                structure[j][k][l] = *cl;
                structure[k][j][l] = -*cl;
            }
        }
    }
    Ok((structure, worst))
}

impl DerivationSpace {
    /// Requires anti-Hermitian, linearly independent, bracket-closed `B_k`.
    pub fn new(basis: Vec<CMatrix>) -> Result<Self> {
        for b in &basis {
            let dev = max_abs(&(b + b.adjoint()));
            if dev > CLOSURE_TOL {
                return Err(Error::Domain(format!("basis element is not anti-Hermitian (deviation {dev:.3e})")));
            }
        }
        let (structure, closure_residual) = bracket_structure(&basis)?;
        Ok(Self { basis, structure, closure_residual })
    }

    /// `B_k = iσ_k/2`, so that `[X_1, X_2] = −X_3` cyclically.
    pub fn su2() -> Self {
        use crate::flows::{pauli_x, pauli_y, pauli_z};
        let half_i = C64::new(0.0, 0.5);
        Self::new(vec![pauli_x() * half_i, pauli_y() * half_i, pauli_z() * half_i])
            .expect("su(2) basis is closed")
    }

    /// `B_k = i H_k`, so that `X_k = δ_k`.
    pub fn from_translations(sys: &TranslationSystem) -> Result<Self> {
        Self::new((0..sys.directions()).map(|k| sys.generator(k) * I).collect())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.first().map_or(0, |b| b.nrows())
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn structure_constant(&self, j: usize, k: usize, l: usize) -> f64 {
        self.structure[j][k][l]
    }

    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    /// `X_k(a) = B_k a − a B_k`.
    pub fn apply(&self, k: usize, a: &CMatrix) -> CMatrix {
        &self.basis[k] * a - a * &self.basis[k]
    }
}

/// Strictly increasing multi-indices of length `n` from `0..r`.
pub fn multi_indices(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..r {
            cur.push(k);
            rec(k + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= r {
        rec(0, r, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Sign sorting `idx` into increasing order, `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Alternating form of fixed degree with matrix components.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedForm {
    degree: usize,
    rank: usize,
    dim: usize,
    components: BTreeMap<Vec<usize>, CMatrix>,
}

impl GradedForm {
    pub fn zero(degree: usize, rank: usize, dim: usize) -> Self {
        let components =
            multi_indices(rank, degree).into_iter().map(|i| (i, CMatrix::zeros(dim, dim))).collect();
        Self { degree, rank, dim, components }
    }

    /// The 0-form `a`.
    pub fn scalar(a: CMatrix, rank: usize) -> Self {
        let dim = a.nrows();
        let mut components = BTreeMap::new();
        components.insert(Vec::new(), a);
        Self { degree: 0, rank, dim, components }
    }

    pub fn unit(rank: usize, dim: usize) -> Self {
        Self::scalar(CMatrix::identity(dim, dim), rank)
    }

    /// Builds a form from components on strictly increasing multi-indices;
    /// omitted indices are zero.
    pub fn from_components(
        degree: usize,
        rank: usize,
        dim: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, CMatrix)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, rank, dim);
        for (idx, m) in comps {
            if idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&k| k >= rank) {
                return Err(Error::Domain(format!("{idx:?} is not an increasing degree-{degree} index below {rank}")));
            }
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::ShapeMismatch(format!("component {}x{} in dimension {dim}", m.nrows(), m.ncols())));
            }
            f.components.insert(idx, m);
        }
        Ok(f)
    }

    /// Components with entries uniform in the unit square.
    pub fn random<R: Rng>(rng: &mut R, space: &DerivationSpace, degree: usize) -> Self {
        let mut f = Self::zero(degree, space.rank(), space.dim());
        for m in f.components.values_mut() {
            *m = crate::random::matrix(rng, space.dim());
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, CMatrix> {
        &self.components
    }

    pub fn component(&self, idx: &[usize]) -> Option<&CMatrix> {
        self.components.get(idx)
    }

    /// `ω(X_{i₁}, …, X_{i_n})` for an arbitrary index list.
    pub fn eval(&self, idx: &[usize]) -> CMatrix {
        match sort_sign(idx) {
            Some((sorted, sign)) => self.components.get(&sorted).map_or_else(
                || CMatrix::zeros(self.dim, self.dim),
                |m| if sign > 0.0 { m.clone() } else { -m },
            ),
            None => CMatrix::zeros(self.dim, self.dim),
        }
    }

    /// Largest entry modulus over all components.
    pub fn max_abs(&self) -> f64 {
        self.components.values().map(max_abs).fold(0.0, f64::max)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank || self.dim != other.dim {
            return Err(Error::ShapeMismatch(format!(
                "forms over rank {} / dim {} and rank {} / dim {}",
                self.rank, self.dim, other.rank, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::ShapeMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (idx, m) in &other.components {
            *out.components.get_mut(idx).expect("same index set") += m;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        for m in out.components.values_mut() {
            *m *= z;
        }
        out
    }

    /// Shuffle product; zero beyond the top degree.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (m, n) = (self.degree, other.degree);
        let mut out = Self::zero(m + n, self.rank, self.dim);
        for (idx, comp) in out.components.iter_mut() {
            for s in multi_indices(m + n, m) {
                let left: Vec<usize> = s.iter().map(|&p| idx[p]).collect();
                let right: Vec<usize> = (0..m + n).filter(|p| !s.contains(p)).map(|p| idx[p]).collect();
                let inversions: usize = s.iter().enumerate().map(|(i, &p)| p - i).sum();
                let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                let term = &self.components[&left] * &other.components[&right];
                *comp += term.scale(sign);
            }
        }
        Ok(out)
    }

    /// Derivation-based differential; zero beyond the top degree.
    pub fn differential(&self, space: &DerivationSpace) -> Result<Self> {
        if space.rank() != self.rank || space.dim() != self.dim {
            return Err(Error::ShapeMismatch("form and derivation space differ".into()));
        }
        let n = self.degree;
        let mut out = Self::zero(n + 1, self.rank, self.dim);
        for (idx, comp) in out.components.iter_mut() {
            for k in 0..=n {
                let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != k).map(|(_, &i)| i).collect();
                let term = space.apply(idx[k], &self.eval(&rest));
                *comp += if k % 2 == 0 { term } else { -term };
            }
            for k in 0..=n {
                for l in (k + 1)..=n {
                    let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
                    let rest: Vec<usize> =
                        idx.iter().enumerate().filter(|(p, _)| *p != k && *p != l).map(|(_, &i)| i).collect();
                    for m in 0..self.rank {
                        let cm = space.structure_constant(idx[k], idx[l], m);
                        if cm == 0.0 {
                            continue;
                        }
                        let mut args = Vec::with_capacity(n);
                        args.push(m);
                        args.extend_from_slice(&rest);
                        *comp += self.eval(&args).scale(sign * cm);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `max‖d(dω)‖`.
pub fn d_squared_residual(space: &DerivationSpace, w: &GradedForm) -> Result<f64> {
    Ok(w.differential(space)?.differential(space)?.max_abs())
}

/// `‖d(ω∧η) − dω∧η − (−1)^{deg ω} ω∧dη‖` over components.
pub fn leibniz_residual(space: &DerivationSpace, w: &GradedForm, e: &GradedForm) -> Result<f64> {
    let lhs = w.wedge(e)?.differential(space)?;
    let a = w.differential(space)?.wedge(e)?;
    let b = w.wedge(&e.differential(space)?)?;
    let sign = if w.degree() % 2 == 0 { 1.0 } else { -1.0 };
    Ok(lhs.sub(&a)?.sub(&b.scale(c(sign)))?.max_abs())
}
