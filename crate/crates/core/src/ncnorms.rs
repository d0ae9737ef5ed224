//! Tracial `L^p` and Orlicz norms, entropy, and moment/regularity bounds.
//!
//! Norms of an element `a` depend only on the levels of `|a|` (singular
//! values with trace weights), so every solver here works on that list.
//!
//! * Luxemburg norm: `inf{λ > 0 : τ(Ψ(|a|/λ)) ≤ 1}` by monotone bisection.
//! * Orlicz (dual) norm: `sup{|τ(ab)| : ‖b‖_{Ψ*} ≤ 1}`, computed through the
//!   Amemiya formula `inf_{k>0} (1 + τ(Ψ(k|a|)))/k`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::matrixalg::{Element, Level, TracedAlgebra};
use crate::numeric::{bisect, factorial, golden_min, log_space};
use crate::young::YoungFunction;

/// Default relative bracket width for the Luxemburg bisection.
pub const LUXEMBURG_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormReport {
    pub value: f64,
    pub solver_iterations: usize,
    /// Solver-specific defect; see each solver.
    pub residual: f64,
}

impl NormReport {
    fn zero() -> Self {
        Self { value: 0.0, solver_iterations: 0, residual: 0.0 }
    }
}

fn nonzero_levels(alg: &TracedAlgebra, a: &Element) -> Result<Vec<Level>> {
    Ok(alg.singular_levels(a)?.into_iter().filter(|l| l.value > 0.0).collect())
}

/// `(Σ w_i s_i^p)^{1/p}`; the residual is `τ((|a|/value)^p) − 1`.
pub fn lp_norm(alg: &TracedAlgebra, a: &Element, p: f64) -> Result<NormReport> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("L^p norm needs finite p >= 1, got {p}")));
    }
    let levels = nonzero_levels(alg, a)?;
    lp_of_levels(&levels, p)
}

fn lp_of_levels(levels: &[Level], p: f64) -> Result<NormReport> {
    let Some(smax) = levels.iter().map(|l| l.value).reduce(f64::max) else {
        return Ok(NormReport::zero());
    };
    let sum: f64 = levels.iter().map(|l| l.weight * (l.value / smax).powf(p)).sum();
    let value = smax * sum.powf(1.0 / p);
    let residual = levels.iter().map(|l| l.weight * (l.value / value).powf(p)).sum::<f64>() - 1.0;
    Ok(NormReport { value, solver_iterations: 0, residual })
}

/// `Σ w Ψ(s/λ)` over the levels.
fn modular(levels: &[Level], psi: &YoungFunction, lambda: f64) -> f64 {
    levels
        .iter()
        .map(|l| l.weight * psi.evaluate(l.value / lambda).unwrap_or(f64::INFINITY))
        .sum()
}

/// Luxemburg norm of a list of levels.
pub fn luxemburg_of_levels(levels: &[Level], psi: &YoungFunction, rel_tol: f64) -> Result<NormReport> {
    let levels: Vec<Level> = levels.iter().copied().filter(|l| l.value > 0.0).collect();
    let Some(smax) = levels.iter().map(|l| l.value).reduce(f64::max) else {
        return Ok(NormReport::zero());
    };
    let total: f64 = levels.iter().map(|l| l.weight).sum();
    let feasible = |lambda: f64| modular(&levels, psi, lambda) <= 1.0;
    // Every s/λ is at most Ψ⁻¹(1/W), so each term is at most w/W.
    let inv = psi.inverse(1.0 / total)?;
    let mut hi = if inv > 0.0 && inv.is_finite() { smax / inv } else { smax };
    let mut iterations = 0;
    while !feasible(hi) {
        hi *= 2.0;
        iterations += 1;
        if hi > 1e300 {
            return Err(Error::NotInOrliczClass(psi.to_string()));
        }
    }
    let mut lo = hi;
    while feasible(lo) {
        lo *= 0.5;
        iterations += 1;
        if lo < 1e-300 {
            return Err(Error::Diverged("Luxemburg bracket collapsed to 0".into()));
        }
    }
    let b = bisect(lo, hi, rel_tol, |l| feasible(l));
    Ok(NormReport {
        value: b.hi,
        solver_iterations: iterations + b.iterations,
        residual: modular(&levels, psi, b.hi) - 1.0,
    })
}

/// `inf{λ > 0 : τ(Ψ(|a|/λ)) ≤ 1}`.
///
/// The returned value is feasible, so the residual `τ(Ψ(|a|/value)) − 1` is
/// never positive; for continuous `Ψ` it is at rounding level.
pub fn orlicz_luxemburg(alg: &TracedAlgebra, a: &Element, psi: &YoungFunction) -> Result<NormReport> {
    luxemburg_of_levels(&alg.singular_levels(a)?, psi, LUXEMBURG_REL_TOL)
}

/// Orlicz norm `inf_{k>0} (1 + τ(Ψ(k|a|)))/k`.
///
/// The objective is quasi-convex in `k`; a coarse scan in `log k` is refined
/// by golden section. The residual is the final bracket width in `log k`.
pub fn orlicz_dual_norm(alg: &TracedAlgebra, a: &Element, psi: &YoungFunction) -> Result<NormReport> {
    dual_of_levels(&alg.singular_levels(a)?, psi)
}

pub fn dual_of_levels(levels: &[Level], psi: &YoungFunction) -> Result<NormReport> {
    let levels: Vec<Level> = levels.iter().copied().filter(|l| l.value > 0.0).collect();
    let Some(smax) = levels.iter().map(|l| l.value).reduce(f64::max) else {
        return Ok(NormReport::zero());
    };
    let objective = |lk: f64| {
        let k = lk.exp();
        let m: f64 = levels
            .iter()
            .map(|l| l.weight * psi.evaluate(k * l.value).unwrap_or(f64::INFINITY))
            .sum();
        (1.0 + m) / k
    };
    let grid = log_space(1e-10 / smax, 1e10 / smax, 401);
    let vals: Vec<f64> = grid.iter().map(|k| objective(k.ln())).collect();
    let best = (0..vals.len()).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    if !vals[best].is_finite() {
        return Err(Error::Diverged("Orlicz norm objective is infinite".into()));
    }
    let lo = grid[best.saturating_sub(1)].ln();
    let hi = grid[(best + 1).min(grid.len() - 1)].ln();
    let (_, fmin, it) = golden_min(lo, hi, 1e-14, objective);
    let value = fmin.min(vals[best]);
    Ok(NormReport { value, solver_iterations: grid.len() + it, residual: (hi - lo) * 0.618f64.powi(it as i32) })
}

/// Largest `|τ(ab)|` over random `b` scaled to unit `Ψ*`-Luxemburg norm.
/// A lower bound for `orlicz_dual_norm(a, Ψ)`.
pub fn dual_norm_audit<R: Rng>(
    alg: &TracedAlgebra,
    a: &Element,
    psi: &YoungFunction,
    rng: &mut R,
    samples: usize,
) -> Result<f64> {
    let conj = psi.conjugate();
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let b = Element::from_blocks(
            alg.dims().iter().map(|&n| crate::random::matrix(rng, n)).collect(),
        );
        let nb = orlicz_luxemburg(alg, &b, &conj)?.value;
        if nb == 0.0 {
            continue;
        }
        best = best.max(alg.trace(&(a * &b)).norm() / nb);
    }
    Ok(best)
}

/// Logarithmic `ε` grid used by the entropy infima.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for EpsGrid {
    fn default() -> Self {
        Self { min: 1e-12, max: 1e2, points: 60 }
    }
}

impl EpsGrid {
    pub fn points(&self) -> Vec<f64> {
        log_space(self.min, self.max, self.points)
    }

    /// Same range with every interval halved.
    pub fn refined(&self) -> Self {
        Self { points: 2 * self.points - 1, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EntropyReport {
    /// `inf_ε ω(f log(f + ε))` over the refined grid.
    pub inf_value: f64,
    /// `ω(f log f)` with `0 log 0 = 0`.
    pub reduced_value: f64,
    pub residual: f64,
    /// Whether `ε ↦ ω(f log(f + ε))` was nondecreasing on the grid.
    pub monotone: bool,
}

/// Entropy `ω(f log f)` two ways: directly, and as the infimum over the
/// regularized expressions `ω(f log(f + ε))`.
pub fn entropy_tracial(alg: &TracedAlgebra, f: &Element, grid: &EpsGrid) -> Result<EntropyReport> {
    alg.positive_levels(f)?;
    let sd = alg.spectral(f)?;
    let eval = |g: &dyn Fn(f64) -> f64| -> f64 {
        let blocks: Vec<CMatrix> = sd
            .blocks
            .iter()
            .map(|e| e.recompose(&e.values.iter().map(|&l| c(g(l.max(0.0)))).collect::<Vec<_>>()))
            .collect();
        alg.state(&Element::from_blocks(blocks)).re
    };
    let at = |eps: f64| eval(&|l: f64| l * (l + eps).ln());
    let reduced = eval(&|l: f64| if l == 0.0 { 0.0 } else { l * l.ln() });
    let eps = grid.points();
    let vals: Vec<f64> = eps.iter().map(|&e| at(e)).collect();
    let slack = 1e-12 * vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let monotone = vals.windows(2).all(|w| w[1] >= w[0] - slack);
    let best = (0..vals.len()).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    let lo = eps[best.saturating_sub(1)].ln();
    let hi = eps[(best + 1).min(eps.len() - 1)].ln();
    let (_, refined, _) = golden_min(lo, hi, 1e-12, |le| at(le.exp()));
    let inf_value = refined.min(vals[best]);
    Ok(EntropyReport { inf_value, reduced_value: reduced, residual: (inf_value - reduced).abs(), monotone })
}

/// A model that can evaluate the ζ-form of the entropy functional: it knows
/// how to sandwich an element by a function of its density `h`, and how to
/// compute distribution functions and `L¹` norms.
pub trait ZetaModel {
    type Elem;

    /// `g(h)^{1/2}·x·g(h)^{1/2}`, given `sqrt_g = √g`.
    fn sandwich(&self, x: &Self::Elem, sqrt_g: &dyn Fn(f64) -> f64) -> Result<Self::Elem>;

    /// `τ(E^{|y|}(ε, ∞))`; an error if it cannot be resolved by the model.
    fn distribution(&self, y: &Self::Elem, eps: f64) -> Result<f64>;

    fn l1_norm(&self, y: &Self::Elem) -> Result<f64>;
}

/// `ζ₁(t) = t / φ_ent(t)`.
pub fn zeta_one(t: f64) -> Result<f64> {
    Ok(t / YoungFunction::ent().fundamental_luxemburg(t)?)
}

/// `ζ_log(t) = φ_log(t) / φ_ent(t)`.
pub fn zeta_log(t: f64) -> Result<f64> {
    Ok(YoungFunction::t_log().fundamental_luxemburg(t)? / YoungFunction::ent().fundamental_luxemburg(t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ZetaReport {
    pub value: f64,
    pub argmin_eps: f64,
    /// Grid points skipped because the model could not resolve them.
    pub skipped: usize,
}

/// `inf_ε [ε τ(E^{|ζ_log(h)^{1/2} x ζ_log(h)^{1/2}|}(ε, ∞))
///        + log ε ‖ζ₁(h)^{1/2} x ζ₁(h)^{1/2}‖₁]`.
pub fn entropy_functional_zeta<M: ZetaModel>(model: &M, x: &M::Elem, grid: &EpsGrid) -> Result<ZetaReport> {
    let sqrt_of = |z: fn(f64) -> Result<f64>| {
        move |t: f64| if t > 0.0 { z(t).map(f64::sqrt).unwrap_or(f64::NAN) } else { 0.0 }
    };
    let y_log = model.sandwich(x, &sqrt_of(zeta_log))?;
    let y_one = model.sandwich(x, &sqrt_of(zeta_one))?;
    let n1 = model.l1_norm(&y_one)?;
    let expr = |eps: f64| -> Option<f64> {
        model.distribution(&y_log, eps).ok().map(|d| eps * d + eps.ln() * n1)
    };
    let eps = grid.points();
    let vals: Vec<Option<f64>> = eps.iter().map(|&e| expr(e)).collect();
    let skipped = vals.iter().filter(|v| v.is_none()).count();
    let best = (0..vals.len())
        .filter(|&i| vals[i].is_some())
        .min_by(|&i, &j| vals[i].unwrap().total_cmp(&vals[j].unwrap()))
        .ok_or_else(|| Error::Diverged("no ε on the grid is resolved by the model".into()))?;
    let (mut value, mut argmin) = (vals[best].unwrap(), eps[best]);
    let lo = best.checked_sub(1).filter(|&i| vals[i].is_some()).unwrap_or(best);
    let hi = Some(best + 1).filter(|&i| i < vals.len() && vals[i].is_some()).unwrap_or(best);
    if hi > lo {
        let (le, v, _) = golden_min(eps[lo].ln(), eps[hi].ln(), 1e-12, |le| {
            expr(le.exp()).unwrap_or(f64::INFINITY)
        });
        if v < value {
            value = v;
            argmin = le.exp();
        }
    }
    Ok(ZetaReport { value, argmin_eps: argmin, skipped })
}

/// The finite algebra with a positive density `h` as a ζ-model.
pub struct FiniteZeta<'a> {
    pub algebra: &'a TracedAlgebra,
    pub h: Element,
}

impl ZetaModel for FiniteZeta<'_> {
    type Elem = Element;

    fn sandwich(&self, x: &Element, sqrt_g: &dyn Fn(f64) -> f64) -> Result<Element> {
        let s = self.algebra.apply_function(&self.h, sqrt_g)?;
        Ok(&(&s * x) * &s)
    }

    fn distribution(&self, y: &Element, eps: f64) -> Result<f64> {
        self.algebra.distribution(y, eps)
    }

    fn l1_norm(&self, y: &Element) -> Result<f64> {
        Ok(lp_norm(self.algebra, y, 1.0)?.value)
    }
}

/// `γ_p(t) = t^{1/p} / φ_{cosh−1}(t) = t^{1/p} arccosh(1 + 1/t)`.
pub fn gamma_p(p: f64, t: f64) -> Result<f64> {
    Ok(t.powf(1.0 / p) / YoungFunction::cosh_m1().fundamental_luxemburg(t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GammaReport {
    pub m: u32,
    /// `((2(m+1))!)^{1/p}`.
    pub bound: f64,
    pub sup_sampled: f64,
    pub argmax: f64,
}

/// Samples `γ_p` on a log grid over `[1e-8, 1e8]` and reports the constant
/// `((2(m+1))!)^{1/p}` with `2m ≤ p < 2(m+1)`.
pub fn gamma_p_bound(p: f64) -> Result<GammaReport> {
    if !(p >= 2.0) || !p.is_finite() {
        return Err(Error::Domain(format!("moment bound needs p >= 2, got {p}")));
    }
    let m = (p / 2.0).floor() as u32;
    let bound = factorial(2 * (m + 1)).powf(1.0 / p);
    let (mut sup, mut argmax) = (0.0, 0.0);
    for t in log_space(1e-8, 1e8, 4001) {
        let g = gamma_p(p, t)?;
        if g > sup {
            sup = g;
            argmax = t;
        }
    }
    Ok(GammaReport { m, bound, sup_sampled: sup, argmax })
}

/// Truncated harmonic oscillator on `N` levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    pub dim: usize,
}

impl OscillatorModel {
    /// `φ_N = (a + a†)/√2`.
    pub fn field(&self) -> CMatrix {
        let n = self.dim;
        let mut m = CMatrix::zeros(n, n);
        for k in 1..n {
            let v = c((k as f64).sqrt() / std::f64::consts::SQRT_2);
            m[(k - 1, k)] = v;
            m[(k, k - 1)] = v;
        }
        m
    }

    /// `H_N = a†a = diag(0, 1, …, N−1)`.
    pub fn hamiltonian(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |i, j| if i == j { c(i as f64) } else { c(0.0) })
    }
}

/// What multiplies `e^{−H^α}` in the H-bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Field,
    Identity,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HBoundReport {
    pub dims: Vec<usize>,
    pub norms: Vec<f64>,
    pub increments: Vec<f64>,
    /// Increments shrink by at least half per doubling, or sit at rounding level.
    pub stabilizing: bool,
}

/// `‖O_N e^{−H_N^α}‖` over a sequence of truncations (with `0⁰ = 1`).
pub fn h_bound_check(alpha: f64, dims: &[usize], observable: Observable) -> Result<HBoundReport> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("α = {alpha} outside [0, 1)")));
    }
    let mut norms = Vec::with_capacity(dims.len());
    for &n in dims {
        let model = OscillatorModel { dim: n };
        let damp = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                let e = if alpha == 0.0 { 1.0 } else { (i as f64).powf(alpha) };
                c((-e).exp())
            } else {
                c(0.0)
            }
        });
        let op = match observable {
            Observable::Field => model.field() * damp,
            Observable::Identity => damp,
        };
        norms.push(crate::linalg::op_norm(&op));
    }
    let increments: Vec<f64> = norms.windows(2).map(|w| w[1] - w[0]).collect();
    let floor = 64.0 * f64::EPSILON * norms.iter().fold(0.0f64, |m, v| m.max(*v));
    let nondecreasing = increments.iter().all(|&d| d >= -floor);
    let shrinking = increments
        .windows(2)
        .all(|w| w[1].abs() <= floor || w[1].abs() <= 0.5 * w[0].abs());
    Ok(HBoundReport { dims: dims.to_vec(), norms, increments, stabilizing: nondecreasing && shrinking })
}
