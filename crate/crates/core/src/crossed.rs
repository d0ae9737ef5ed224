//! Grid model of the crossed product `𝔐 ⋊_σ ℝ` in its tracial form
//! `𝔐 ⊗ L^∞(ℝ)` with trace `τ = ω ⊗ ∫ · e^{−t} dt`.
//!
//! An element is a field `t_j ↦ x_j ∈ 𝔐` on a window of the grid
//! `t_j = t_min + jΔ`. In this picture the density `h` is the scalar field
//! `e^t`, the dual action `θ_s` translates the `t` variable, and
//! `τ ∘ θ_s = e^{−s} τ` holds exactly for fields supported inside the grid.
//!
//! Distribution functions `τ(E^{|x|}(ε, ∞))` integrate `e^{−t}` over the
//! superlevel sets of the singular value curves of `x`, interpolated
//! log-linearly between grid points. A field whose window reaches the top of
//! the grid is continued by its last value; one whose superlevel set reaches
//! the bottom cannot be resolved and yields [`Error::WindowLimited`].
//!
//! Limitations: the translations `λ(t) = h^{it}` are not represented, only
//! `h` itself through the weight `e^{−t}`. A finite window has no analogue of
//! the spectrum of the modular generator being all of `ℝ`.

use crate::error::{Error, Result};
use crate::linalg::{c, singular_values, C64};
use crate::matrixalg::{Element, TracedAlgebra};
use crate::ncnorms::{gamma_p_bound, NormReport, ZetaModel};
use crate::numeric::bisect;
use crate::young::YoungFunction;

pub const DEFAULT_T_MIN: f64 = -20.0;
pub const DEFAULT_DELTA: f64 = 0.01;
pub const DEFAULT_LEN: usize = 4001;

/// Tolerance for deciding that a shift is a whole number of grid steps.
const SHIFT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CrossedModel {
    base: TracedAlgebra,
    t_min: f64,
    delta: f64,
    len: usize,
}

/// Field on the contiguous index window `[lo, lo + field.len())`; zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedElement {
    lo: usize,
    field: Vec<Element>,
}

impl CrossedElement {
    /// Field `field[k]` at grid index `lo + k`.
    pub fn new(lo: usize, field: Vec<Element>) -> Self {
        Self { lo, field }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    /// One past the last index of the window.
    pub fn hi(&self) -> usize {
        self.lo + self.field.len()
    }

    pub fn field(&self) -> &[Element] {
        &self.field
    }

    /// Value at grid index `j`, `None` outside the window.
    pub fn at(&self, j: usize) -> Option<&Element> {
        j.checked_sub(self.lo).and_then(|k| self.field.get(k))
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { lo: self.lo, field: self.field.iter().map(|x| x.scale(z)).collect() }
    }

    /// Sub-window `[lo, hi)` of this element.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        let (a, b) = (lo.max(self.lo), hi.min(self.hi()));
        if a >= b {
            return Self { lo: a, field: Vec::new() };
        }
        Self { lo: a, field: self.field[a - self.lo..b - self.lo].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.field.iter().all(Element::is_zero)
    }
}

/// `g ⊗ φ_Ψ(e^t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaagerupSymbol {
    pub g: Element,
    pub psi: YoungFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedded {
    pub element: CrossedElement,
    /// `Σ e^{−t_j}Δ` over grid points dropped because `φ_Ψ(e^{t_j})` overflowed.
    pub mass_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub element: CrossedElement,
    pub measurable: bool,
    pub norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MomentReport {
    pub p: f64,
    /// Haagerup `L^p` norm of `h^{1/(2p)} φ h^{1/(2p)}`.
    pub lp_norm: f64,
    /// Haagerup–Orlicz norm of `φ_{cosh−1}(h)^{1/2} φ φ_{cosh−1}(h)^{1/2}`.
    pub cosh_norm: f64,
    pub gamma_sup: f64,
    /// `((2(m+1))!)^{1/p}`.
    pub gamma_bound: f64,
    /// `lp_norm ≤ gamma_sup · cosh_norm` (up to rounding).
    pub holds: bool,
}

/// Singular value curves of a field: one series per (block, rank).
struct Profile {
    lo: usize,
    hi: usize,
    series: Vec<(f64, Vec<f64>)>,
}

impl CrossedModel {
    pub fn new(base: TracedAlgebra, t_min: f64, delta: f64, len: usize) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() || !t_min.is_finite() {
            return Err(Error::Domain(format!("invalid grid t_min = {t_min}, Δ = {delta}")));
        }
        if len < 2 {
            return Err(Error::Domain("grid needs at least two points".into()));
        }
        // e^{−t_min} must stay finite for the weights.
        if -t_min > 700.0 {
            return Err(Error::Domain(format!("t_min = {t_min} overflows e^(-t)")));
        }
        Ok(Self { base, t_min, delta, len })
    }

    /// Default grid: `t ∈ [−20, 20]`, `Δ = 0.01`.
    pub fn with_base(base: TracedAlgebra) -> Self {
        Self::new(base, DEFAULT_T_MIN, DEFAULT_DELTA, DEFAULT_LEN).expect("default grid is valid")
    }

    /// Same interval with `Δ` halved.
    pub fn refined(&self) -> Self {
        Self { base: self.base.clone(), t_min: self.t_min, delta: 0.5 * self.delta, len: 2 * self.len - 1 }
    }

    pub fn base(&self) -> &TracedAlgebra {
        &self.base
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + j as f64 * self.delta
    }

    pub fn t_max(&self) -> f64 {
        self.t(self.len - 1)
    }

    /// `e^{−t_j} Δ`.
    pub fn point_weight(&self, j: usize) -> f64 {
        (-self.t(j)).exp() * self.delta
    }

    pub fn total_weight(&self) -> f64 {
        (0..self.len).map(|j| self.point_weight(j)).sum()
    }

    pub fn zero(&self) -> CrossedElement {
        CrossedElement { lo: 0, field: vec![self.base.zero(); self.len] }
    }

    /// The embedding of `a ∈ 𝔐` as a field constant in `t`.
    pub fn constant(&self, a: &Element) -> Result<CrossedElement> {
        self.base.check(a)?;
        Ok(CrossedElement { lo: 0, field: vec![a.clone(); self.len] })
    }

    /// `x_j = f(t_j)·g` on the index window `[lo, hi)`.
    pub fn scalar_field_on(
        &self,
        lo: usize,
        hi: usize,
        f: impl Fn(f64) -> f64,
        g: &Element,
    ) -> Result<CrossedElement> {
        self.base.check(g)?;
        if lo > hi || hi > self.len {
            return Err(Error::WindowOverflow { required_padding: hi.saturating_sub(self.len) });
        }
        Ok(CrossedElement { lo, field: (lo..hi).map(|j| g.scale(c(f(self.t(j))))).collect() })
    }

    pub fn scalar_field(&self, f: impl Fn(f64) -> f64, g: &Element) -> Result<CrossedElement> {
        self.scalar_field_on(0, self.len, f, g)
    }

    /// The density `h = e^t ⊗ 1`.
    pub fn h(&self) -> CrossedElement {
        self.scalar_field(f64::exp, &self.base.identity()).expect("identity has base shape")
    }

    fn check(&self, x: &CrossedElement) -> Result<()> {
        if x.hi() > self.len {
            return Err(Error::WindowOverflow { required_padding: x.hi() - self.len });
        }
        x.field.iter().try_for_each(|e| self.base.check(e))
    }

    /// Number of grid steps in `s`.
    pub fn shift_steps(&self, s: f64) -> Result<i64> {
        let k = s / self.delta;
        if (k - k.round()).abs() > SHIFT_TOL * k.abs().max(1.0) {
            return Err(Error::OffGridShift(s));
        }
        Ok(k.round() as i64)
    }

    /// `(θ_s x)_j = x_{j − s/Δ}`; fails if the shifted window leaves the grid.
    pub fn theta(&self, s: f64, x: &CrossedElement) -> Result<CrossedElement> {
        self.check(x)?;
        let k = self.shift_steps(s)?;
        let lo = x.lo as i64 + k;
        let hi = x.hi() as i64 + k;
        if lo < 0 {
            return Err(Error::WindowOverflow { required_padding: (-lo) as usize });
        }
        if hi > self.len as i64 {
            return Err(Error::WindowOverflow { required_padding: (hi - self.len as i64) as usize });
        }
        Ok(CrossedElement { lo: lo as usize, field: x.field.clone() })
    }

    /// `θ_s x` restricted to the part of the shifted window inside the grid.
    pub fn theta_overlap(&self, s: f64, x: &CrossedElement) -> Result<CrossedElement> {
        self.check(x)?;
        let k = self.shift_steps(s)?;
        let lo = (x.lo as i64 + k).max(0);
        let hi = (x.hi() as i64 + k).min(self.len as i64);
        if lo >= hi {
            return Ok(CrossedElement { lo: lo.min(self.len as i64) as usize, field: Vec::new() });
        }
        let field = (lo..hi).map(|j| x.field[(j - k) as usize - x.lo].clone()).collect();
        Ok(CrossedElement { lo: lo as usize, field })
    }

    /// `τ(x) = Σ_j e^{−t_j}Δ · ω(x_j)`.
    pub fn trace_tau(&self, x: &CrossedElement) -> C64 {
        x.field
            .iter()
            .enumerate()
            .map(|(k, e)| self.base.trace(e) * self.point_weight(x.lo + k))
            .sum()
    }

    fn profile(&self, x: &CrossedElement) -> Result<Profile> {
        self.check(x)?;
        let mut series = Vec::new();
        for (b, (&n, &w)) in self.base.dims().iter().zip(self.base.weights()).enumerate() {
            let svs: Vec<Vec<f64>> = x.field.iter().map(|e| singular_values(e.block(b))).collect();
            for r in 0..n {
                let s: Vec<f64> = svs.iter().map(|v| v[r]).collect();
                if s.iter().any(|&v| v > 0.0) {
                    series.push((w, s));
                }
            }
        }
        Ok(Profile { lo: x.lo, hi: x.hi(), series })
    }

    fn profile_distribution(&self, prof: &Profile, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("distribution at ε = {eps} <= 0")));
        }
        let d = self.delta;
        let mut total = 0.0;
        for (w, s) in &prof.series {
            if prof.lo == 0 && s[0] > eps {
                return Err(Error::WindowLimited(eps));
            }
            let mut acc = 0.0;
            for k in 0..s.len().saturating_sub(1) {
                let (s0, s1) = (s[k], s[k + 1]);
                if s0 <= eps && s1 <= eps {
                    continue;
                }
                let t0 = self.t(prof.lo + k);
                if s0 > eps && s1 > eps {
                    acc += (-t0).exp() * -(-d).exp_m1();
                    continue;
                }
                let frac = if s0 > 0.0 && s1 > 0.0 {
                    (eps / s0).ln() / (s1 / s0).ln()
                } else {
                    (eps - s0) / (s1 - s0)
                };
                let tc = frac.clamp(0.0, 1.0) * d;
                acc += if s0 > eps {
                    (-t0).exp() * -(-tc).exp_m1()
                } else {
                    (-t0 - tc).exp() * -(-(d - tc)).exp_m1()
                };
            }
            // Past the top of the grid the field is continued by its last value.
            if prof.hi == self.len && s.last().is_some_and(|&v| v > eps) {
                acc += (-self.t_max()).exp();
            }
            total += w * acc;
        }
        Ok(total)
    }

    /// `τ(E^{|x|}(ε, ∞))`.
    ///
    /// Fails with [`Error::WindowLimited`] when the superlevel set reaches the
    /// lower edge of the grid, where the truncated model cannot see it end.
    pub fn distribution(&self, x: &CrossedElement, eps: f64) -> Result<f64> {
        self.profile_distribution(&self.profile(x)?, eps)
    }

    /// `inf{ε > 0 : τ(E^{|x|}(ε, ∞)) ≤ 1}`; residual `τ(E(value, ∞)) − 1`.
    pub fn haagerup_norm(&self, x: &CrossedElement) -> Result<NormReport> {
        let prof = self.profile(x)?;
        let smax = prof.series.iter().flat_map(|(_, s)| s.iter().copied()).fold(0.0, f64::max);
        if smax == 0.0 {
            return Ok(NormReport { value: 0.0, solver_iterations: 0, residual: 0.0 });
        }
        let dist = |e: f64| self.profile_distribution(&prof, e);
        let too_big = |e: f64| -> Result<bool> {
            match dist(e) {
                Ok(v) => Ok(v > 1.0),
                Err(Error::WindowLimited(_)) => Ok(true),
                Err(err) => Err(err),
            }
        };
        let hi = smax;
        let mut lo = smax;
        let mut iterations = 0;
        loop {
            lo *= 0.5;
            iterations += 1;
            if too_big(lo)? {
                break;
            }
            if lo < 1e-300 {
                // The whole support has mass at most one.
                return Ok(NormReport { value: 0.0, solver_iterations: iterations, residual: 0.0 });
            }
        }
        let b = bisect(lo, hi, 1e-15, |e| !too_big(e).unwrap_or(true));
        if let Err(Error::WindowLimited(e)) = dist(b.lo) {
            return Err(Error::Diverged(format!(
                "norm not resolved: superlevel set at ε = {e:.3e} reaches the lower grid edge"
            )));
        }
        let residual = match dist(b.hi) {
            Ok(v) => v - 1.0,
            Err(e) => return Err(Error::Diverged(e.to_string())),
        };
        Ok(NormReport { value: b.hi, solver_iterations: iterations + b.iterations, residual })
    }

    /// `x_j = φ_Ψ(e^{t_j})·g`, clipping grid points where `φ_Ψ` overflows.
    pub fn embed_tracial(&self, sym: &HaagerupSymbol) -> Result<Embedded> {
        self.base.check(&sym.g)?;
        let mut field = Vec::with_capacity(self.len);
        let mut mass_defect = 0.0;
        for j in 0..self.len {
            let phi = sym.psi.fundamental_luxemburg(self.t(j).exp())?;
            if phi.is_finite() && field.len() == j {
                field.push(sym.g.scale(c(phi)));
            } else {
                mass_defect += self.point_weight(j);
            }
        }
        Ok(Embedded { element: CrossedElement { lo: 0, field }, mass_defect })
    }

    /// Largest pointwise relative mismatch `‖(θ_s x)_j − f(s, t_j) x_j‖ /
    /// max(‖(θ_s x)_j‖, ‖f(s, t_j) x_j‖)` over the overlap and the shifts.
    fn covariance_residual(
        &self,
        x: &CrossedElement,
        shifts: &[f64],
        factor: impl Fn(f64, f64) -> Result<f64>,
    ) -> Result<f64> {
        self.check(x)?;
        let mut worst: f64 = 0.0;
        let mut admissible = false;
        for &s in shifts {
            let k = self.shift_steps(s)?;
            let lo = (x.lo as i64).max(x.lo as i64 + k);
            let hi = (x.hi() as i64).min(x.hi() as i64 + k);
            if lo >= hi {
                continue;
            }
            admissible = true;
            for j in lo..hi {
                let shifted = &x.field[(j - k) as usize - x.lo];
                let here = &x.field[j as usize - x.lo];
                let target = here.scale(c(factor(s, self.t(j as usize))?));
                let scale = shifted.max_abs().max(target.max_abs());
                if scale > 0.0 {
                    worst = worst.max((shifted - &target).max_abs() / scale);
                }
            }
        }
        if !admissible {
            return Err(Error::NoAdmissibleShift(format!(
                "no shift in {shifts:?} leaves an overlap with the window"
            )));
        }
        Ok(worst)
    }

    /// Residual of `θ_s(x) = e^{−s/p} x` over the given shifts.
    pub fn membership_residual_lp(&self, x: &CrossedElement, p: f64, shifts: &[f64]) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("p = {p} < 1")));
        }
        self.covariance_residual(x, shifts, |s, _| Ok((-s / p).exp()))
    }

    /// Residual of `θ_s(x) = x`, the fixed-point condition for `𝔐 ⊂ 𝓜`.
    pub fn invariance_residual(&self, x: &CrossedElement, shifts: &[f64]) -> Result<f64> {
        self.covariance_residual(x, shifts, |_, _| Ok(1.0))
    }

    /// `d_s` at grid time `t`: `φ̃_{Ψ*}(e^t) / φ̃_{Ψ*}(e^{t−s})`.
    pub fn d_s(psi: &YoungFunction, s: f64, t: f64) -> Result<f64> {
        let conj = psi.conjugate();
        Ok(conj.fundamental_orlicz(t.exp())? / conj.fundamental_orlicz((t - s).exp())?)
    }

    /// Residual of `θ_s(x) = e^{−s} d_s^{1/2} x d_s^{1/2}` for shifts `s ≤ 0`.
    pub fn membership_residual_orlicz(
        &self,
        x: &CrossedElement,
        psi: &YoungFunction,
        shifts: &[f64],
    ) -> Result<f64> {
        if let Some(s) = shifts.iter().find(|s| **s > 0.0) {
            return Err(Error::NoAdmissibleShift(format!("Orlicz criterion uses s <= 0, got {s}")));
        }
        self.covariance_residual(x, shifts, |s, t| Ok((-s).exp() * Self::d_s(psi, s, t)?))
    }

    /// `φ_{cosh−1}(h)^{1/2} φ φ_{cosh−1}(h)^{1/2}` for a `t`-constant `φ`,
    /// with its Haagerup–Orlicz norm.
    pub fn coshm1_regularity(&self, phi: &Element) -> Result<RegularityReport> {
        let cosh = YoungFunction::cosh_m1();
        let element = self.scalar_field(|t| cosh.fundamental_luxemburg(t.exp()).unwrap_or(f64::NAN), phi)?;
        let norm = self.haagerup_norm(&element).map_err(|e| Error::NotRegular(e.to_string()))?;
        let measurable = match self.distribution(&element, norm.value.max(f64::MIN_POSITIVE) * 2.0) {
            Ok(d) => d.is_finite(),
            Err(Error::WindowLimited(_)) => false,
            Err(e) => return Err(e),
        };
        if !measurable {
            return Err(Error::NotRegular("distribution is not resolved in the window".into()));
        }
        Ok(RegularityReport { element, measurable, norm: norm.value })
    }

    /// Compares the Haagerup `L^p` norm of `h^{1/(2p)} φ h^{1/(2p)}` with the
    /// `γ_p` bound times the `L^{cosh−1}` norm of `φ`.
    pub fn moment_check(&self, phi: &Element, p: f64) -> Result<MomentReport> {
        let gamma = gamma_p_bound(p)?;
        let reg = self.coshm1_regularity(phi)?;
        let z = self.scalar_field(|t| (t / p).exp(), phi)?;
        let lp = self.haagerup_norm(&z)?.value;
        let holds = lp.is_finite() && lp <= gamma.sup_sampled * reg.norm * (1.0 + 1e-9) + 1e-300;
        Ok(MomentReport {
            p,
            lp_norm: lp,
            cosh_norm: reg.norm,
            gamma_sup: gamma.sup_sampled,
            gamma_bound: gamma.bound,
            holds,
        })
    }
}

impl ZetaModel for CrossedModel {
    type Elem = CrossedElement;

    fn sandwich(&self, x: &CrossedElement, sqrt_g: &dyn Fn(f64) -> f64) -> Result<CrossedElement> {
        self.check(x)?;
        let field = x
            .field
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let r = sqrt_g(self.t(x.lo + k).exp());
                e.scale(c(r)).scale(c(r))
            })
            .collect();
        Ok(CrossedElement { lo: x.lo, field })
    }

    fn distribution(&self, y: &CrossedElement, eps: f64) -> Result<f64> {
        CrossedModel::distribution(self, y, eps)
    }

    fn l1_norm(&self, y: &CrossedElement) -> Result<f64> {
        Ok(self.haagerup_norm(y)?.value)
    }
}
