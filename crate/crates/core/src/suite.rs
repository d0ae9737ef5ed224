//! Verification suites: each function runs one family of invariants on
//! seeded random inputs and returns [`Check`] records with stable ids.
//!
//! Tolerances come from the parameter structs, whose `Default` values are
//! the shipped defaults.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::crossed::{CrossedModel, HaagerupSymbol};
use crate::error::{Error, Result};
use crate::flows::{
    contour_derivative_residual, mollifier_derivation_residual, BumpFunction, Contour, TranslationSystem,
};
use crate::forms::{d_squared_residual, leibniz_residual, DerivationSpace, GradedForm};
use crate::linalg::{c, max_abs, C64};
use crate::matrixalg::{Element, Pinching, TracedAlgebra};
use crate::ncnorms::{
    dual_of_levels, entropy_functional_zeta, entropy_tracial, h_bound_check, orlicz_luxemburg, EpsGrid, Observable,
};
use crate::numeric::log_space;
use crate::random::{self, Rng64};
use crate::weyl::chart::{tangential_isometry, Chart, ChartBasis, ChartMap};
use crate::weyl::net::{cone_exhaustion, local_net_check, DoubleCone, Separation};
use crate::weyl::propagator::{residual_convergence, SymplecticSpace};
use crate::weyl::{Symplectic, TestFunction, WeylElement};
use crate::young::YoungFunction;

/// How a check compares its value with its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Passes when `value ≤ bound`.
    Max,
    /// Passes when `value ≥ bound`.
    Min,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub kind: BoundKind,
    pub pass: bool,
}

impl Check {
    fn new(id: &str, name: &str, value: f64, bound: f64, kind: BoundKind) -> Self {
        let pass = match kind {
            BoundKind::Max => value <= bound,
            BoundKind::Min => value >= bound,
        };
        Self { id: id.into(), name: name.into(), value, bound, kind, pass }
    }

    pub fn max(id: &str, name: &str, value: f64, bound: f64) -> Self {
        Self::new(id, name, value, bound, BoundKind::Max)
    }

    pub fn min(id: &str, name: &str, value: f64, bound: f64) -> Self {
        Self::new(id, name, value, bound, BoundKind::Min)
    }

    /// Boolean check recorded as `1.0 ≥ 1.0`.
    pub fn flag(id: &str, name: &str, ok: bool) -> Self {
        Self::min(id, name, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    /// Multiplies upper bounds by `factor` and re-evaluates the pass flag.
    pub fn scale_tolerance(&mut self, factor: f64) {
        if self.kind == BoundKind::Max {
            *self = Self::max(&self.id, &self.name, self.value, self.bound * factor);
        }
    }
}

/// A named numeric table, written out as CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl SuiteOutput {
    fn extend(&mut self, other: SuiteOutput) {
        self.checks.extend(other.checks);
        self.tables.extend(other.tables);
    }

    fn checks(checks: Vec<Check>) -> Self {
        Self { checks, tables: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Ratio `e₁/e₂` of successive errors as a convergence order, treating
/// errors below `floor` as converged.
fn halving_order(coarse: f64, fine: f64, floor: f64) -> f64 {
    if coarse <= floor {
        f64::INFINITY
    } else {
        (coarse / fine.max(f64::MIN_POSITIVE)).log2()
    }
}

// ---------------------------------------------------------------- young

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct YoungParams {
    /// Points per axis of the Hausdorff–Young grid.
    pub grid: usize,
    pub grid_min: f64,
    pub grid_max: f64,
    pub hy_tol: f64,
    /// Sample points of the fundamental-function identity.
    pub product_points: usize,
    pub product_min: f64,
    pub product_max: f64,
    pub product_tol: f64,
}

impl Default for YoungParams {
    fn default() -> Self {
        Self {
            grid: 200,
            grid_min: 1e-3,
            grid_max: 1e3,
            hy_tol: 1e-9,
            product_points: 41,
            product_min: 1e-4,
            product_max: 1e4,
            product_tol: 1e-9,
        }
    }
}

/// Young's inequality `st ≤ Ψ(s) + Ψ*(t)` over the catalog, and
/// `φ_Ψ(t)·φ̃_{Ψ*}(t) = t` with `φ̃_{Ψ*}` computed as an Orlicz norm.
pub fn young_calculus(p: &YoungParams) -> Result<SuiteOutput> {
    let grid = log_space(p.grid_min, p.grid_max, p.grid);
    let (mut hy, mut prod): (f64, f64) = (0.0, 0.0);
    let mut table = Table::new("young_fundamental", &["function", "t", "relative_error"]);
    for (fi, psi) in YoungFunction::catalog().iter().enumerate() {
        let conj = psi.conjugate();
        let conj_vals: Vec<f64> = grid.iter().map(|&t| conj.evaluate(t)).collect::<Result<_>>()?;
        for &s in &grid {
            let ps = psi.evaluate(s)?;
            for (&t, &ct) in grid.iter().zip(&conj_vals) {
                let v = (s * t - ps - ct) / (s * t).max(1.0);
                hy = hy.max(v);
            }
        }
        for t in log_space(p.product_min, p.product_max, p.product_points) {
            let lux = psi.fundamental_luxemburg(t)?;
            let orl = dual_of_levels(&[crate::matrixalg::Level { value: 1.0, weight: t }], &conj)?.value;
            let err = (lux * orl - t).abs() / t;
            prod = prod.max(err);
            table.rows.push(vec![fi as f64, t, err]);
        }
    }
    Ok(SuiteOutput {
        checks: vec![
            Check::max("young.hausdorff_young", "Young inequality violation over the catalog grid", hy, p.hy_tol),
            Check::max("young.fundamental_product", "relative error of φ_Ψ(t)·φ̃_Ψ*(t) = t", prod, p.product_tol),
        ],
        tables: vec![table],
    })
}

// ---------------------------------------------------------------- norms

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SubtheoryParams {
    pub samples: usize,
    pub trace_tol: f64,
    pub norm_tol: f64,
}

impl Default for SubtheoryParams {
    fn default() -> Self {
        Self { samples: 10, trace_tol: 1e-12, norm_tol: 1e-12 }
    }
}

/// Pinching subalgebras of `M₄`: `τ∘E = τ`, and Orlicz norms of subalgebra
/// elements computed in the ambient and the restricted algebra.
pub fn subtheory(p: &SubtheoryParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let alg = TracedAlgebra::matrix(4);
    let patterns = [
        vec![vec![vec![0, 1], vec![2, 3]]],
        vec![vec![vec![0], vec![1, 2, 3]]],
        vec![vec![vec![0], vec![1], vec![2], vec![3]]],
        vec![vec![vec![0, 3], vec![1], vec![2]]],
    ];
    let (mut tr_err, mut norm_err): (f64, f64) = (0.0, 0.0);
    for groups in &patterns {
        let pin = Pinching::from_partition(&alg, groups)?;
        let res = pin.restricted(&alg)?;
        for _ in 0..p.samples {
            let x = Element::from_matrix(random::matrix(rng, 4));
            let ex = alg.conditional_expectation(&x, &pin)?;
            let (a, b) = (alg.trace(&ex), alg.trace(&x));
            tr_err = tr_err.max((a - b).norm() / b.norm().max(1.0));
            let small = res.compress(&ex);
            for psi in YoungFunction::catalog() {
                let amb = orlicz_luxemburg(&alg, &ex, &psi)?.value;
                let sub = orlicz_luxemburg(&res.algebra, &small, &psi)?.value;
                norm_err = norm_err.max((amb - sub).abs() / amb.max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok(SuiteOutput::checks(vec![
        Check::max("subtheory.trace_preserving", "relative |τ(E x) − τ(x)| over pinchings of M4", tr_err, p.trace_tol),
        Check::max("subtheory.norm_agreement", "relative ambient vs restricted Luxemburg norm", norm_err, p.norm_tol),
    ]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HBoundParams {
    pub dims: Vec<usize>,
    pub alpha: f64,
}

impl Default for HBoundParams {
    fn default() -> Self {
        Self { dims: vec![10, 20, 40, 80], alpha: 0.5 }
    }
}

/// Truncated-oscillator sweep of `‖φ_N e^{−H_N^α}‖`.
pub fn h_bound(p: &HBoundParams) -> Result<SuiteOutput> {
    let good = h_bound_check(p.alpha, &p.dims, Observable::Field)?;
    let control = h_bound_check(0.0, &p.dims, Observable::Field)?;
    let mut table = Table::new("h_bound", &["alpha", "dim", "norm"]);
    for (rep, a) in [(&good, p.alpha), (&control, 0.0)] {
        for (n, v) in rep.dims.iter().zip(&rep.norms) {
            table.rows.push(vec![a, *n as f64, *v]);
        }
    }
    Ok(SuiteOutput {
        checks: vec![
            Check::flag("hbound.stabilizes", "norm increments at least halve per doubling", good.stabilizing),
            Check::flag("hbound.negative_control", "α = 0 sweep is flagged as not stabilizing", !control.stabilizing),
        ],
        tables: vec![table],
    })
}

// -------------------------------------------------------------- crossed

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrossedParams {
    pub t_min: f64,
    pub delta: f64,
    pub len: usize,
    pub isometry_samples: usize,
    pub isometry_dim: usize,
    pub isometry_tol: f64,
    pub isometry_min_order: f64,
    /// Errors below this count as converged in the order estimate.
    pub isometry_floor: f64,
    pub shifts: Vec<f64>,
    pub trace_tol: f64,
    pub membership_samples: usize,
    pub lp_membership_tol: f64,
    pub orlicz_membership_tol: f64,
    pub negative_control_min: f64,
    pub moment_observables: usize,
    pub moment_ps: Vec<f64>,
    pub gamma_slack: f64,
}

impl Default for CrossedParams {
    fn default() -> Self {
        Self {
            t_min: crate::crossed::DEFAULT_T_MIN,
            delta: crate::crossed::DEFAULT_DELTA,
            len: crate::crossed::DEFAULT_LEN,
            isometry_samples: 20,
            isometry_dim: 3,
            isometry_tol: 5e-3,
            isometry_min_order: 0.9,
            isometry_floor: 1e-9,
            shifts: vec![-1.0, -0.1, 0.1, 1.0],
            trace_tol: 1e-12,
            membership_samples: 5,
            lp_membership_tol: 1e-12,
            orlicz_membership_tol: 1e-8,
            negative_control_min: 0.1,
            moment_observables: 10,
            moment_ps: vec![2.0, 3.0, 4.0],
            gamma_slack: 1e-9,
        }
    }
}

impl CrossedParams {
    fn model(&self, dim: usize) -> Result<CrossedModel> {
        CrossedModel::new(TracedAlgebra::matrix(dim), self.t_min, self.delta, self.len)
    }
}

fn positive(rng: &mut Rng64, n: usize) -> Element {
    Element::from_matrix(random::positive(rng, n, 0.1))
}

/// Haagerup norm of `g ⊗ φ_Ψ(eᵗ)` against the tracial Luxemburg norm of
/// `g`, at the default grid and one halving.
pub fn crossed_isometry(p: &CrossedParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let coarse = p.model(p.isometry_dim)?;
    let fine = coarse.refined();
    let gs: Vec<Element> = (0..p.isometry_samples).map(|_| positive(rng, p.isometry_dim)).collect();
    let mut out = SuiteOutput::default();
    let mut table = Table::new("crossed_isometry", &["function", "delta", "max_error"]);
    let psis = [YoungFunction::power(2.0)?, YoungFunction::power(3.0)?, YoungFunction::cosh_m1()];
    let (mut worst, mut min_order): (f64, f64) = (0.0, f64::INFINITY);
    for (fi, psi) in psis.iter().enumerate() {
        let mut errs = [0.0f64; 2];
        for g in &gs {
            let want = orlicz_luxemburg(coarse.base(), g, psi)?.value;
            for (e, m) in errs.iter_mut().zip([&coarse, &fine]) {
                let emb = m.embed_tracial(&HaagerupSymbol { g: g.clone(), psi: psi.clone() })?;
                let got = m.haagerup_norm(&emb.element)?.value;
                *e = e.max((got - want).abs());
            }
        }
        table.rows.push(vec![fi as f64, coarse.delta(), errs[0]]);
        table.rows.push(vec![fi as f64, fine.delta(), errs[1]]);
        worst = worst.max(errs[0]);
        min_order = min_order.min(halving_order(errs[0], errs[1], p.isometry_floor));
    }
    out.checks.push(Check::max("crossed.isometry.error", "max |Haagerup − tracial Luxemburg| at default Δ", worst, p.isometry_tol));
    out.checks.push(Check::min("crossed.isometry.order", "observed order under Δ-halving", min_order, p.isometry_min_order));
    out.tables.push(table);
    Ok(out)
}

/// `τ∘θ_s = e^{−s}τ` on interior-supported random fields.
pub fn crossed_trace_scaling(p: &CrossedParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let m = p.model(2)?;
    let margin = p.shifts.iter().map(|s| m.shift_steps(*s).map(|k| k.unsigned_abs() as usize)).sum::<Result<usize>>()?;
    let (lo, hi) = (margin + 1, m.len() - margin - 1);
    if lo >= hi {
        return Err(Error::Domain("window too short for the trace-scaling shifts".into()));
    }
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let g = Element::from_matrix(random::matrix(rng, 2));
        let phase: f64 = rng.gen_range(0.0..2.0 * PI);
        let x = m.scalar_field_on(lo, hi, |t| (0.3 * t + phase).sin() + 1.5, &g)?;
        let tx = m.trace_tau(&x);
        for &s in &p.shifts {
            let want = tx * c((-s).exp());
            let got = m.trace_tau(&m.theta(s, &x)?);
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    Ok(SuiteOutput::checks(vec![Check::max("crossed.trace_scaling", "relative |τ(θ_s x) − e^{−s}τ(x)|", worst, p.trace_tol)]))
}

/// `L^p` and Orlicz membership residuals of embedded elements, with
/// cross-function negative controls.
pub fn crossed_membership(p: &CrossedParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let m = p.model(3)?;
    let neg: Vec<f64> = p.shifts.iter().copied().filter(|s| *s < 0.0).collect();
    let cosh = YoungFunction::cosh_m1();
    let (mut lp_res, mut orl_res): (f64, f64) = (0.0, 0.0);
    let mut control = f64::INFINITY;
    for _ in 0..p.membership_samples {
        let g = positive(rng, 3);
        for q in [1.0, 2.0, 3.0] {
            let x = m.embed_tracial(&HaagerupSymbol { g: g.clone(), psi: YoungFunction::power(q)? })?.element;
            lp_res = lp_res.max(m.membership_residual_lp(&x, q, &p.shifts)?);
            let wrong = if q == 2.0 { 3.0 } else { 2.0 };
            control = control.min(m.membership_residual_lp(&x, wrong, &p.shifts)?);
            control = control.min(m.membership_residual_orlicz(&x, &cosh, &neg)?);
        }
        let x = m.embed_tracial(&HaagerupSymbol { g: g.clone(), psi: cosh.clone() })?.element;
        orl_res = orl_res.max(m.membership_residual_orlicz(&x, &cosh, &neg)?);
        control = control.min(m.membership_residual_lp(&x, 2.0, &p.shifts)?);
        control = control.min(m.membership_residual_orlicz(&x, &YoungFunction::power(3.0)?, &neg)?);
    }
    Ok(SuiteOutput::checks(vec![
        Check::max("crossed.membership.lp", "L^p covariance residual of g ⊗ φ_p(eᵗ)", lp_res, p.lp_membership_tol),
        Check::max("crossed.membership.orlicz", "d_s covariance residual of g ⊗ φ_cosh(eᵗ)", orl_res, p.orlicz_membership_tol),
        Check::min("crossed.membership.negative_control", "smallest residual against a mismatched function", control, p.negative_control_min),
    ]))
}

/// `L^{cosh−1}` regularity and the moment bound on random Hermitian
/// observables.
pub fn crossed_moments(p: &CrossedParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let m = p.model(3)?;
    let mut finite = true;
    let mut holds = true;
    let mut excess = f64::NEG_INFINITY;
    let mut table = Table::new("moments", &["observable", "p", "lp_norm", "cosh_norm", "gamma_sup", "gamma_bound"]);
    for i in 0..p.moment_observables {
        let phi = Element::from_matrix(random::hermitian(rng, 3));
        for &q in &p.moment_ps {
            let r = m.moment_check(&phi, q)?;
            finite &= r.lp_norm.is_finite();
            holds &= r.holds;
            excess = excess.max(r.gamma_sup - r.gamma_bound);
            table.rows.push(vec![i as f64, q, r.lp_norm, r.cosh_norm, r.gamma_sup, r.gamma_bound]);
        }
    }
    Ok(SuiteOutput {
        checks: vec![
            Check::flag("crossed.moments.finite", "Haagerup L^p norms of h^{1/2p} φ h^{1/2p} are finite", finite),
            Check::max("crossed.moments.gamma", "sampled sup γ_p minus ((2(m+1))!)^{1/p}", excess, p.gamma_slack),
            Check::flag("crossed.moments.inequality", "‖h^{1/2p} φ h^{1/2p}‖_p ≤ sup γ_p · ‖φ‖_cosh", holds),
        ],
        tables: vec![table],
    })
}

// -------------------------------------------------------------- entropy

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EntropyParams {
    pub samples: usize,
    pub dim: usize,
    pub tol: f64,
    pub zeta_samples: usize,
    pub zeta_tol: f64,
}

impl Default for EntropyParams {
    fn default() -> Self {
        Self { samples: 100, dim: 5, tol: 1e-6, zeta_samples: 5, zeta_tol: 1e-4 }
    }
}

/// `inf_ε ω(f log(f+ε)) = ω(f log f)` tracially, and the ζ-functional of
/// `f ⊗ φ_ent(eᵗ)` in the crossed model.
pub fn entropy(p: &EntropyParams, crossed: &CrossedParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let alg = TracedAlgebra::matrix(p.dim);
    let grid = EpsGrid::default();
    let mut worst: f64 = 0.0;
    for _ in 0..p.samples {
        let f = positive(rng, p.dim);
        worst = worst.max(entropy_tracial(&alg, &f, &grid)?.residual);
    }
    let m = crossed.model(p.dim)?;
    let mut zeta: f64 = 0.0;
    let mut table = Table::new("entropy_zeta", &["sample", "tracial", "zeta"]);
    for i in 0..p.zeta_samples {
        let f = positive(rng, p.dim);
        let want = entropy_tracial(&alg, &f, &grid)?.reduced_value;
        let x = m.embed_tracial(&HaagerupSymbol { g: f, psi: YoungFunction::ent() })?.element;
        let got = entropy_functional_zeta(&m, &x, &grid)?.value;
        zeta = zeta.max((got - want).abs());
        table.rows.push(vec![i as f64, want, got]);
    }
    Ok(SuiteOutput {
        checks: vec![
            Check::max("entropy.tracial", "|inf_ε ω(f log(f+ε)) − ω(f log f)|", worst, p.tol),
            Check::max("entropy.zeta", "|ζ-functional of f ⊗ φ_ent(eᵗ) − ω(f log f)|", zeta, p.zeta_tol),
        ],
        tables: vec![table],
    })
}

// ----------------------------------------------------------------- weyl

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeylParams {
    pub lattice: usize,
    pub spacing: f64,
    pub mass: f64,
    pub algebra_lattice: usize,
    pub algebra_samples: usize,
    pub algebra_tol: f64,
    pub locality_samples: usize,
    pub locality_factor: f64,
    pub timelike_min: f64,
    pub convergence_lattice: usize,
    pub convergence_levels: usize,
    pub min_order: f64,
    pub chart_eps: f64,
    pub chart_nodes: usize,
    pub chart_basis: usize,
    pub chart_samples: usize,
    pub pairing_tol: f64,
    pub iso_tol: f64,
    pub exhaustion_steps: u32,
}

impl Default for WeylParams {
    fn default() -> Self {
        Self {
            lattice: 400,
            spacing: 0.05,
            mass: 1.0,
            algebra_lattice: 60,
            algebra_samples: 5,
            algebra_tol: 1e-10,
            locality_samples: 4,
            locality_factor: 1e-5,
            timelike_min: 1e-2,
            convergence_lattice: 41,
            convergence_levels: 3,
            min_order: 1.8,
            chart_eps: 0.1,
            chart_nodes: 1000,
            chart_basis: 8,
            chart_samples: 10,
            pairing_tol: 1e-6,
            iso_tol: 1e-8,
            exhaustion_steps: 8,
        }
    }
}

/// Smooth bump in a random sub-diamond of `o` with random amplitude.
fn random_bump(rng: &mut Rng64, o: &DoubleCone) -> Result<TestFunction> {
    let r = o.radius;
    let inner = DoubleCone::new(
        o.t + rng.gen_range(-0.1..0.1) * r,
        o.x + rng.gen_range(-0.1..0.1) * r,
        rng.gen_range(0.6..0.75) * r,
    )?;
    Ok(inner.bump(rng.gen_range(0.5..1.5)))
}

fn random_weyl(rng: &mut Rng64, o: &DoubleCone, terms: usize) -> Result<WeylElement> {
    let mut x = WeylElement::zero();
    for _ in 0..terms {
        let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        x = x.add(&WeylElement::term(random_bump(rng, o)?, z));
    }
    Ok(x)
}

/// Weyl relations, associativity and the star identity on a small lattice.
pub fn weyl_algebra(p: &WeylParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let n = p.algebra_lattice;
    let s = SymplecticSpace::new(n, n, p.spacing, p.spacing, p.mass, 0.0)?;
    let nf = n as f64;
    let o = DoubleCone::new(nf / 2.0, nf / 2.0, nf / 2.0 - 1.0)?;
    let (mut relations, mut assoc, mut star): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..p.algebra_samples {
        let (f, g) = (random_bump(rng, &o)?, random_bump(rng, &o)?);
        let (wf, wg) = (WeylElement::generator(f.clone()), WeylElement::generator(g.clone()));
        let sigma = s.sigma(&f, &g)?;
        let unit = wf.star().mul(&wf, &s)?;
        relations = relations.max(unit.max_coeff_diff(&WeylElement::unit()));
        let group = wf.mul(&wg, &s)?.mul(&wf.star(), &s)?.mul(&wg.star(), &s)?;
        let want = WeylElement::term(TestFunction::zero(), C64::from_polar(1.0, -sigma));
        relations = relations.max(group.max_coeff_diff(&want));
        let (x, y, z) = (random_weyl(rng, &o, 2)?, random_weyl(rng, &o, 2)?, random_weyl(rng, &o, 2)?);
        let left = x.mul(&y, &s)?.mul(&z, &s)?;
        let right = x.mul(&y.mul(&z, &s)?, &s)?;
        assoc = assoc.max(left.max_coeff_diff(&right));
        star = star.max(x.mul(&y, &s)?.star().max_coeff_diff(&y.star().mul(&x.star(), &s)?));
    }
    Ok(SuiteOutput::checks(vec![
        Check::max("weyl.relations", "W(f)*W(f) = 1 and the commutator phase e^{−iσ}", relations, p.algebra_tol),
        Check::max("weyl.associativity", "(xy)z − x(yz) coefficient distance", assoc, p.algebra_tol),
        Check::max("weyl.star", "(xy)* − y*x* coefficient distance", star, p.algebra_tol),
    ]))
}

/// Locality on the full lattice, the timelike negative control, isotony,
/// and the PDE residual order.
pub fn weyl_locality(p: &WeylParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let n = p.lattice;
    let s = SymplecticSpace::new(n, n, p.spacing, p.spacing, p.mass, 0.0)?;
    let nf = n as f64;
    let r = 0.15 * nf;
    let o1 = DoubleCone::new(0.5 * nf, 0.3 * nf, r)?;
    let o2 = DoubleCone::new(0.5 * nf, 0.7 * nf, r)?;
    let o3 = DoubleCone::new(0.5 * nf + 2.2 * r, 0.3 * nf, r)?;
    let inner = DoubleCone::new(o1.t, o1.x, 0.5 * r)?;
    let sample = |rng: &mut Rng64, o: &DoubleCone| -> Result<Vec<TestFunction>> {
        (0..p.locality_samples).map(|_| random_bump(rng, o)).collect()
    };
    let (f1, f2, f3) = (sample(rng, &o1)?, sample(rng, &o2)?, sample(rng, &o3)?);
    let spacelike = local_net_check(&s, &o1, &o2, &f1, &f2)?;
    let ratio = spacelike
        .pairs
        .iter()
        .map(|q| q.sigma.abs() / (q.bound / 1e-5))
        .fold(0.0, f64::max);
    let timelike = local_net_check(&s, &o1, &o3, &f1, &f3)?;
    let control = timelike.pairs.iter().map(|q| q.sigma.abs()).fold(f64::INFINITY, f64::min);
    let iso = local_net_check(&s, &inner, &o1, &[inner.bump(1.0)], &f1[..1])?;
    let conv = residual_convergence(
        &SymplecticSpace::new(p.convergence_lattice, p.convergence_lattice, 0.1, 0.1, p.mass, 0.0)?,
        p.convergence_levels,
        |t, x| {
            let u2 = ((t - 2.0).powi(2) + (x - 2.0).powi(2)) / 0.36;
            if u2 < 1.0 { (-1.0 / (1.0 - u2)).exp() } else { 0.0 }
        },
    )?;
    let mut scan = Table::new("weyl_locality", &["spacelike", "sigma_abs", "bound"]);
    for rep in [&spacelike, &timelike] {
        let flag = if rep.separation == Separation::Spacelike { 1.0 } else { 0.0 };
        for q in &rep.pairs {
            scan.rows.push(vec![flag, q.sigma.abs(), q.bound]);
        }
    }
    let mut table = Table::new("weyl_pde_residual", &["spacing", "residual"]);
    for (h, res) in conv.spacings.iter().zip(&conv.residuals) {
        table.rows.push(vec![*h, *res]);
    }
    Ok(SuiteOutput {
        checks: vec![
            Check::flag("weyl.locality.spacelike", "sampled regions are discretely spacelike", spacelike.locality_holds()),
            Check::max("weyl.locality.sigma", "max |σ(f,g)| / (‖f‖‖g‖) for spacelike pairs", ratio, p.locality_factor),
            Check::max("weyl.locality.commutator", "max ‖[W(f),W(g)]‖₁ for spacelike pairs", spacelike.max_commutator(), p.locality_factor),
            Check::min("weyl.locality.timelike_control", "min |σ(f,g)| for timelike pairs", control, p.timelike_min),
            Check::flag("weyl.isotony", "A(O₁) ⊆ A(O₂) for nested diamonds", iso.isotony),
            Check::min("weyl.pde_order", "order of the Klein–Gordon residual of Ef", conv.order, p.min_order),
        ],
        tables: vec![scan, table],
    })
}

/// Transport along `ι(x) = x + ε sin x` and cone exhaustion margins.
pub fn weyl_tangential(p: &WeylParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let chart = Chart::new(ChartMap::SinPerturbation { eps: p.chart_eps }, -PI, PI, p.chart_nodes)?;
    let basis = ChartBasis::uniform(-PI, PI, p.chart_basis)?;
    let (mut pairing, mut iso): (f64, f64) = (0.0, 0.0);
    let coeffs = |rng: &mut Rng64| {
        TestFunction::from_values(
            (0..p.chart_basis as i32).map(|k| ((0, k), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
        )
    };
    for _ in 0..p.chart_samples {
        let (f, g) = (coeffs(rng), coeffs(rng));
        let rep = tangential_isometry(&chart, &basis, &f, &g)?;
        pairing = pairing.max(rep.pairing_residual);
        iso = iso.max(rep.weyl_iso_residual);
    }
    let k = DoubleCone::new(0.0, 0.0, 1.0)?;
    let mut margins_ok = true;
    for step in 1..=p.exhaustion_steps {
        let e = cone_exhaustion(&k, step)?;
        for i in 0..16 {
            let th = i as f64 * PI / 8.0;
            let inside = e.cone.translated(0.999 * e.epsilon * th.sin(), 0.999 * e.epsilon * th.cos());
            margins_ok &= k.contains_cone(&inside);
        }
        let d = 1.001 * e.epsilon / std::f64::consts::SQRT_2;
        margins_ok &= !k.contains_cone(&e.cone.translated(d, d));
    }
    Ok(SuiteOutput::checks(vec![
        Check::max("weyl.tangential.pairing", "|⟨Tf,Tg⟩_target − ⟨f,g⟩_source|", pairing, p.pairing_tol),
        Check::max("weyl.tangential.homomorphism", "α_T(W(f))α_T(W(g)) vs α_T(W(f)W(g))", iso, p.iso_tol),
        Check::flag("weyl.exhaustion", "translates by |g| < ε_n stay in K and the margin is sharp", margins_ok),
    ]))
}

// ---------------------------------------------------------------- flows

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowsParams {
    pub qubits: usize,
    pub samples: usize,
    pub steps: Vec<f64>,
    pub min_order: f64,
    pub mollifier_nodes: usize,
    pub mollifier_tol: f64,
    pub mesh_ratio_min: f64,
    pub derivation_tol: f64,
}

impl Default for FlowsParams {
    fn default() -> Self {
        Self {
            qubits: 3,
            samples: 5,
            steps: crate::flows::CONTOUR_STEPS.to_vec(),
            min_order: 0.9,
            mollifier_nodes: 64,
            mollifier_tol: 1e-5,
            mesh_ratio_min: 3.0,
            derivation_tol: 1e-12,
        }
    }
}

/// Mesh-halving data of the mollifier identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MollifierData {
    pub residual_1d: f64,
    pub residual_2d: f64,
    /// `r(n/2) / r(n)` in one dimension.
    pub mesh_ratio: f64,
}

/// Residuals of the mollifier identity in one and two directions.
pub fn mollifier_data(p: &FlowsParams, rng: &mut Rng64) -> Result<MollifierData> {
    let a = random::matrix(rng, 4);
    let sys1 = TranslationSystem::qubits(2, 1)?;
    let phi1 = BumpFunction::new(vec![0.5], vec![1.5])?.normalized();
    let residual_1d = mollifier_derivation_residual(&sys1, &a, &phi1, 0, p.mollifier_nodes)?;
    let coarse = mollifier_derivation_residual(&sys1, &a, &phi1, 0, p.mollifier_nodes / 2)?;
    let sys2 = TranslationSystem::qubits(2, 2)?;
    let phi2 = BumpFunction::new(vec![0.5, 0.5], vec![1.5, 1.5])?.normalized();
    let mut residual_2d: f64 = 0.0;
    for k in 0..2 {
        residual_2d = residual_2d.max(mollifier_derivation_residual(&sys2, &a, &phi2, k, p.mollifier_nodes)?);
    }
    Ok(MollifierData { residual_1d, residual_2d, mesh_ratio: coarse / residual_1d.max(f64::MIN_POSITIVE) })
}

/// Derivation identities, contour residual orders, and the mollifier
/// identity.
pub fn flows(p: &FlowsParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let sys = TranslationSystem::qubits(p.qubits, p.qubits)?;
    let n = sys.dim();
    let mut table = Table::new("contour_residual", &["sample", "contour", "t", "residual"]);
    let mut min_order = f64::INFINITY;
    let (mut leibniz, mut adjoint, mut commute): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..p.samples {
        let f = random::matrix(rng, n);
        let g = random::matrix(rng, n);
        for k in 0..sys.directions() {
            let d = |x: &crate::linalg::CMatrix| sys.delta(k, x);
            let lhs = d(&(&f * &g))?;
            let rhs = d(&f)? * &g + &f * d(&g)?;
            leibniz = leibniz.max(max_abs(&(lhs - rhs)));
            adjoint = adjoint.max(max_abs(&(d(&f.adjoint())? - d(&f)?.adjoint())));
            for j in 0..sys.directions() {
                let jk = sys.delta(j, &sys.delta(k, &f)?)?;
                let kj = sys.delta(k, &sys.delta(j, &f)?)?;
                commute = commute.max(max_abs(&(jk - kj)));
            }
        }
        let contours = [Contour::curved(p.qubits), Contour::straight(0, p.qubits), {
            let v: Vec<Vec<f64>> =
                (0..p.qubits).map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
            Contour::new(v)
        }];
        for (ci, contour) in contours.iter().enumerate() {
            let rep = contour_derivative_residual(&sys, contour, &f, &p.steps)?;
            min_order = min_order.min(rep.order.unwrap_or(f64::INFINITY));
            for (t, r) in rep.steps.iter().zip(&rep.residuals) {
                table.rows.push(vec![i as f64, ci as f64, *t, *r]);
            }
        }
    }
    let moll = mollifier_data(p, rng)?;
    let mut mtable = Table::new("mollifier", &["directions", "nodes", "residual"]);
    mtable.rows.push(vec![1.0, (p.mollifier_nodes / 2) as f64, moll.residual_1d * moll.mesh_ratio]);
    mtable.rows.push(vec![1.0, p.mollifier_nodes as f64, moll.residual_1d]);
    mtable.rows.push(vec![2.0, p.mollifier_nodes as f64, moll.residual_2d]);
    Ok(SuiteOutput {
        checks: vec![
            Check::max("flows.leibniz", "δ_k(ab) − δ_k(a)b − aδ_k(b)", leibniz, p.derivation_tol),
            Check::max("flows.adjoint", "δ_k(a*) − δ_k(a)*", adjoint, p.derivation_tol),
            Check::max("flows.commuting", "δ_jδ_k(a) − δ_kδ_j(a)", commute, p.derivation_tol),
            Check::min("flows.contour_order", "fitted order of the contour-derivative residual", min_order, p.min_order),
            Check::max("flows.mollifier", "‖δ_k(a(φ)) + a(φ_k)‖ at the default mesh", moll.residual_1d.max(moll.residual_2d), p.mollifier_tol),
            Check::min("flows.mollifier_mesh_ratio", "residual ratio under mesh halving (≥ 4 is second order)", moll.mesh_ratio, p.mesh_ratio_min),
        ],
        tables: vec![table, mtable],
    })
}

// ---------------------------------------------------------------- forms

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FormsParams {
    pub samples: usize,
    pub tol: f64,
    pub translation_qubits: usize,
}

impl Default for FormsParams {
    fn default() -> Self {
        Self { samples: 50, tol: 1e-10, translation_qubits: 2 }
    }
}

/// `d² = 0` and the graded Leibniz rule over su(2) and a commuting
/// translation basis, plus `d|₀ = (δ_k)`.
pub fn forms(p: &FormsParams, rng: &mut Rng64) -> Result<SuiteOutput> {
    let sys = TranslationSystem::qubits(p.translation_qubits, p.translation_qubits)?;
    let spaces = [("su2", DerivationSpace::su2()), ("translations", DerivationSpace::from_translations(&sys)?)];
    let mut checks = Vec::new();
    for (name, space) in &spaces {
        let r = space.rank();
        let (mut dd, mut lb): (f64, f64) = (0.0, 0.0);
        for deg in 0..=r {
            for _ in 0..p.samples {
                dd = dd.max(d_squared_residual(space, &GradedForm::random(rng, space, deg))?);
            }
        }
        let pairs: Vec<(usize, usize)> = (0..=r).flat_map(|m| (0..=r - m).map(move |n| (m, n))).collect();
        for i in 0..p.samples {
            let (m, n) = pairs[i % pairs.len()];
            let w = GradedForm::random(rng, space, m);
            let e = GradedForm::random(rng, space, n);
            lb = lb.max(leibniz_residual(space, &w, &e)?);
        }
        checks.push(Check::max(&format!("forms.{name}.d_squared"), "max component of d(dω), all degrees", dd, p.tol));
        checks.push(Check::max(&format!("forms.{name}.leibniz"), "graded Leibniz residual", lb, p.tol));
    }
    let a = random::matrix(rng, sys.dim());
    let da = GradedForm::scalar(a.clone(), sys.directions()).differential(&spaces[1].1)?;
    let mut link: f64 = 0.0;
    for k in 0..sys.directions() {
        link = link.max(max_abs(&(da.component(&[k]).expect("degree one") - sys.delta(k, &a)?)));
    }
    checks.push(Check::max("forms.translations.zero_forms", "da − (δ_k(a))_k for commuting translations", link, 0.0));
    Ok(SuiteOutput::checks(checks))
}

// --------------------------------------------------------------- suites

/// Parameters of every suite; the shipped defaults are `Default`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteParams {
    pub young: YoungParams,
    pub subtheory: SubtheoryParams,
    pub hbound: HBoundParams,
    pub crossed: CrossedParams,
    pub entropy: EntropyParams,
    pub weyl: WeylParams,
    pub flows: FlowsParams,
    pub forms: FormsParams,
}

impl SuiteParams {
    /// Errors unless every tolerance (a field named `tol`, `*_tol`,
    /// `*_slack`, `*_floor` or `locality_factor`) is positive and finite.
    pub fn validate(&self) -> Result<()> {
        fn walk(path: &str, v: &serde_json::Value) -> Result<()> {
            if let serde_json::Value::Object(map) = v {
                for (k, x) in map {
                    let here = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    let is_tol = k == "tol"
                        || k.ends_with("_tol")
                        || k.ends_with("_slack")
                        || k.ends_with("_floor")
                        || k == "locality_factor";
                    if is_tol && !x.as_f64().is_some_and(|t| t > 0.0 && t.is_finite()) {
                        return Err(Error::Parse(format!("tolerance {here} must be positive, got {x}")));
                    }
                    walk(&here, x)?;
                }
            }
            Ok(())
        }
        let v = serde_json::to_value(self).map_err(|e| Error::Parse(e.to_string()))?;
        walk("", &v)
    }
}

/// Named groups of checks, one per command-line subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Norms,
    Entropy,
    CrossedVerify,
    WeylVerify,
    FlowsVerify,
    FormsVerify,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Norms,
        Suite::Entropy,
        Suite::CrossedVerify,
        Suite::WeylVerify,
        Suite::FlowsVerify,
        Suite::FormsVerify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Norms => "norms",
            Suite::Entropy => "entropy",
            Suite::CrossedVerify => "crossed-verify",
            Suite::WeylVerify => "weyl-verify",
            Suite::FlowsVerify => "flows-verify",
            Suite::FormsVerify => "forms-verify",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Runs the suite with a generator seeded from `seed` and the suite name,
    /// so suites are reproducible independently of each other.
    pub fn run(self, params: &SuiteParams, seed: u64) -> Result<SuiteOutput> {
        let salt = self.name().bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
        let mut rng = random::rng(seed ^ salt);
        let mut out = SuiteOutput::default();
        match self {
            Suite::Norms => {
                out.extend(young_calculus(&params.young)?);
                out.extend(subtheory(&params.subtheory, &mut rng)?);
                out.extend(h_bound(&params.hbound)?);
            }
            Suite::Entropy => out.extend(entropy(&params.entropy, &params.crossed, &mut rng)?),
            Suite::CrossedVerify => {
                out.extend(crossed_isometry(&params.crossed, &mut rng)?);
                out.extend(crossed_trace_scaling(&params.crossed, &mut rng)?);
                out.extend(crossed_membership(&params.crossed, &mut rng)?);
                out.extend(crossed_moments(&params.crossed, &mut rng)?);
            }
            Suite::WeylVerify => {
                out.extend(weyl_algebra(&params.weyl, &mut rng)?);
                out.extend(weyl_locality(&params.weyl, &mut rng)?);
                out.extend(weyl_tangential(&params.weyl, &mut rng)?);
            }
            Suite::FlowsVerify => out.extend(flows(&params.flows, &mut rng)?),
            Suite::FormsVerify => out.extend(forms(&params.forms, &mut rng)?),
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_bounds() {
        let mut c = Check::max("a", "a", 2.0, 1.0);
        assert!(!c.pass);
        c.scale_tolerance(3.0);
        assert!(c.pass && c.bound == 3.0);
        let mut m = Check::min("b", "b", 2.0, 1.0);
        m.scale_tolerance(1e-30);
        assert!(m.pass && m.bound == 1.0);
        assert!(Check::flag("c", "c", true).pass);
        assert!(!Check::flag("c", "c", false).pass);
    }

    #[test]
    fn tolerances_must_be_positive() {
        assert!(SuiteParams::default().validate().is_ok());
        let mut p = SuiteParams::default();
        p.weyl.pairing_tol = 0.0;
        assert!(matches!(p.validate(), Err(Error::Parse(m)) if m.contains("weyl.pairing_tol")));
        let mut p = SuiteParams::default();
        p.crossed.gamma_slack = -1.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn halving_order_floor() {
        assert_eq!(halving_order(1e-12, 1e-12, 1e-9), f64::INFINITY);
        assert!((halving_order(4e-3, 1e-3, 1e-9) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn forms_suite_passes_on_small_sample() {
        let p = FormsParams { samples: 3, ..Default::default() };
        let out = forms(&p, &mut random::rng(1)).unwrap();
        assert!(out.all_pass(), "{:?}", out.checks);
    }
}
