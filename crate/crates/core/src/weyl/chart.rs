//! Chart form `σ(f, g) = Im Σ_i w_i f̄(x_i) g(x_i)` and the transport of
//! test functions along a chart diffeomorphism.
//!
//! Chart test functions are combinations of fixed smooth bumps `b_k`: a
//! [`TestFunction`] whose site `(0, k)` carries the coefficient of `b_k`.
//! The transported function `Tf = f ∘ ι⁻¹` has the same coefficients in the
//! pushed-forward basis `b_k ∘ ι⁻¹`, so `T` is exactly linear on Weyl labels
//! and the only numerical content is the agreement of the two quadratures.

use serde::Serialize;

use super::{Symplectic, TestFunction, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::numeric::bisect;

/// Diffeomorphism of an interval onto its image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartMap {
    Identity,
    /// `ι(x) = x + eps·sin x`; invertible for `|eps| < 1`.
    SinPerturbation { eps: f64 },
    /// `ι(x) = scale·x + shift`.
    Affine { scale: f64, shift: f64 },
}

impl ChartMap {
    pub fn forward(&self, x: f64) -> f64 {
        match *self {
            Self::Identity => x,
            Self::SinPerturbation { eps } => x + eps * x.sin(),
            Self::Affine { scale, shift } => scale * x + shift,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            Self::Identity => 1.0,
            Self::SinPerturbation { eps } => 1.0 + eps * x.cos(),
            Self::Affine { scale, .. } => scale,
        }
    }

    /// `ι⁻¹(y)` for `y ∈ ι([a, b])`, by Newton steps safeguarded with
    /// bisection.
    pub fn inverse(&self, y: f64, a: f64, b: f64) -> f64 {
        match *self {
            Self::Identity => y,
            Self::Affine { scale, shift } => (y - shift) / scale,
            Self::SinPerturbation { .. } => {
                let (mut lo, mut hi) = (a, b);
                let mut x = (lo + hi) / 2.0;
                for _ in 0..100 {
                    let r = self.forward(x) - y;
                    if r == 0.0 {
                        return x;
                    }
                    if r < 0.0 { lo = x } else { hi = x }
                    let step = x - r / self.derivative(x);
                    x = if step > lo && step < hi { step } else { (lo + hi) / 2.0 };
                    if (hi - lo).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                        break;
                    }
                }
                let polished = bisect(lo.min(x), hi.max(x), 1e-16, |t| self.forward(t) >= y);
                if (self.forward(x) - y).abs() <= (self.forward(polished.hi) - y).abs() { x } else { polished.hi }
            }
        }
    }

    /// Errors with `NonInvertibleChart` unless `ι' > 0` on `[a, b]`.
    pub fn check_invertible(&self, a: f64, b: f64, samples: usize) -> Result<()> {
        if let Self::SinPerturbation { eps } = *self {
            if eps.abs() >= 1.0 {
                return Err(Error::NonInvertibleChart(format!("|eps| = {} ≥ 1", eps.abs())));
            }
        }
        for i in 0..=samples {
            let x = a + (b - a) * i as f64 / samples as f64;
            if !(self.derivative(x) > 0.0) {
                return Err(Error::NonInvertibleChart(format!("ι'({x}) = {}", self.derivative(x))));
            }
        }
        Ok(())
    }
}

/// Midpoint rule on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub nodes: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, nodes: usize) -> Result<Self> {
        if !(b > a) || nodes == 0 {
            return Err(Error::Domain(format!("grid [{a}, {b}] with {nodes} nodes")));
        }
        Ok(Self { a, b, nodes })
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.nodes as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..self.nodes).map(move |i| self.a + (i as f64 + 0.5) * h)
    }
}

/// Bumps `b_k(x) = exp(−1/(1 − u²))`, `u = (x − c_k)/w_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartBasis {
    pub centers: Vec<f64>,
    pub widths: Vec<f64>,
}

impl ChartBasis {
    pub fn new(centers: Vec<f64>, widths: Vec<f64>) -> Result<Self> {
        if centers.len() != widths.len() || widths.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::Domain("basis centers and positive widths must pair up".into()));
        }
        Ok(Self { centers, widths })
    }

    /// `count` equal bumps with supports tiling the interior of `[a, b]`
    /// with overlap.
    pub fn uniform(a: f64, b: f64, count: usize) -> Result<Self> {
        if count == 0 || !(b > a) {
            return Err(Error::Domain("empty basis".into()));
        }
        let w = (b - a) / (count as f64 + 1.0);
        let centers = (1..=count).map(|k| a + k as f64 * w).collect();
        Self::new(centers, vec![w * 0.999; count])
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn eval(&self, k: usize, x: f64) -> f64 {
        let u = (x - self.centers[k]) / self.widths[k];
        if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 }
    }

    /// `Σ_k c_k b_k(x)` for a coefficient function on sites `(0, k)`.
    pub fn eval_function(&self, f: &TestFunction, x: f64) -> C64 {
        f.iter().filter(|((_, k), _)| (*k as usize) < self.len()).map(|((_, k), c)| c * self.eval(k as usize, x)).sum()
    }
}

/// `σ(F, G) = Im Σ_i w_i F̄_i G_i` with `F_i = Σ_k F_k b_k(node_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartForm {
    /// `values[k][i] = b_k(node_i)`.
    values: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl ChartForm {
    pub fn new(values: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.len() != weights.len()) {
            return Err(Error::MisalignedGrids("basis samples and weights differ in length".into()));
        }
        Ok(Self { values, weights })
    }

    /// Point masses: `σ(f, g) = Im Σ_k w_k f̄_k g_k` on sites `(0, k)`.
    pub fn lattice(weights: Vec<f64>) -> Self {
        let n = weights.len();
        let values = (0..n).map(|k| (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect()).collect();
        Self { values, weights }
    }

    fn samples(&self, f: &TestFunction) -> Result<Vec<C64>> {
        let mut out = vec![C64::new(0.0, 0.0); self.weights.len()];
        for ((n, k), c) in f.iter() {
            let row = self
                .values
                .get(k as usize)
                .filter(|_| n == 0 && k >= 0)
                .ok_or_else(|| Error::Domain(format!("site ({n}, {k}) is not a basis index")))?;
            for (o, v) in out.iter_mut().zip(row) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// `Σ_i w_i F̄_i G_i`.
    pub fn pairing(&self, f: &TestFunction, g: &TestFunction) -> Result<C64> {
        let (fs, gs) = (self.samples(f)?, self.samples(g)?);
        Ok(fs.iter().zip(&gs).zip(&self.weights).map(|((a, b), w)| a.conj() * b * *w).sum())
    }
}

impl Symplectic for ChartForm {
    fn sigma(&self, f: &TestFunction, g: &TestFunction) -> Result<f64> {
        Ok(self.pairing(f, g)?.im)
    }
}

/// Source grid on `[a, b]` and target grid on `ι([a, b])` with equal node
/// counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub map: ChartMap,
    pub source: Grid,
    pub target: Grid,
}

impl Chart {
    pub fn new(map: ChartMap, a: f64, b: f64, nodes: usize) -> Result<Self> {
        map.check_invertible(a, b, 4 * nodes)?;
        let source = Grid::new(a, b, nodes)?;
        let target = Grid::new(map.forward(a), map.forward(b), nodes)?;
        Ok(Self { map, source, target })
    }

    /// Uses an explicit target grid; `MisalignedGrids` unless it covers
    /// `ι([a, b])` with the same node count.
    pub fn with_target(map: ChartMap, source: Grid, target: Grid) -> Result<Self> {
        map.check_invertible(source.a, source.b, 4 * source.nodes)?;
        let (ta, tb) = (map.forward(source.a), map.forward(source.b));
        let tol = 1e-12 * (tb - ta).abs().max(1.0);
        if target.nodes != source.nodes || (target.a - ta).abs() > tol || (target.b - tb).abs() > tol {
            return Err(Error::MisalignedGrids(format!(
                "target [{}, {}] with {} nodes, expected [{ta}, {tb}] with {}",
                target.a, target.b, target.nodes, source.nodes
            )));
        }
        Ok(Self { map, source, target })
    }

    fn check_basis(&self, basis: &ChartBasis) -> Result<()> {
        for (c, w) in basis.centers.iter().zip(&basis.widths) {
            if c - w < self.source.a || c + w > self.source.b {
                return Err(Error::Domain(format!("bump at {c} leaves the chart interval")));
            }
        }
        Ok(())
    }

    pub fn source_form(&self, basis: &ChartBasis) -> Result<ChartForm> {
        self.check_basis(basis)?;
        let xs: Vec<f64> = self.source.points().collect();
        let values = (0..basis.len()).map(|k| xs.iter().map(|&x| basis.eval(k, x)).collect()).collect();
        ChartForm::new(values, vec![self.source.step(); xs.len()])
    }

    /// Pushed-forward basis on the target grid with weights `(ι⁻¹)'(y) h`.
    pub fn target_form(&self, basis: &ChartBasis) -> Result<ChartForm> {
        self.check_basis(basis)?;
        let pre: Vec<f64> =
            self.target.points().map(|y| self.map.inverse(y, self.source.a, self.source.b)).collect();
        let values = (0..basis.len()).map(|k| pre.iter().map(|&x| basis.eval(k, x)).collect()).collect();
        let h = self.target.step();
        ChartForm::new(values, pre.iter().map(|&x| h / self.map.derivative(x)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentialReport {
    /// `(Tf)(y_i)` on the target grid.
    #[serde(skip)]
    pub transported: Vec<C64>,
    /// `|⟨Tf, Tg⟩_target − ⟨f, g⟩_source|`.
    pub pairing_residual: f64,
    /// Coefficient distance between `α_T(W(f)) α_T(W(g))` and `α_T(W(f) W(g))`.
    pub weyl_iso_residual: f64,
}

/// Transports `f` and `g` along the chart and measures how well the
/// pairing and the Weyl relations survive.
pub fn tangential_isometry(
    chart: &Chart,
    basis: &ChartBasis,
    f: &TestFunction,
    g: &TestFunction,
) -> Result<TangentialReport> {
    let src = chart.source_form(basis)?;
    let tgt = chart.target_form(basis)?;
    let transported = tgt.samples(f)?;
    let pairing_residual = (tgt.pairing(f, g)? - src.pairing(f, g)?).norm();
    let (wf, wg) = (WeylElement::generator(f.clone()), WeylElement::generator(g.clone()));
    let image_product = wf.mul(&wg, &tgt)?;
    let product_image = wf.mul(&wg, &src)?;
    Ok(TangentialReport { transported, pairing_residual, weyl_iso_residual: image_product.max_coeff_diff(&product_image) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn coeffs(v: &[(f64, f64)]) -> TestFunction {
        TestFunction::from_values(v.iter().enumerate().map(|(k, &(re, im))| ((0, k as i32), C64::new(re, im))))
    }

    #[test]
    fn inverse_round_trips() {
        let m = ChartMap::SinPerturbation { eps: 0.1 };
        for i in 0..=50 {
            let x = -PI + 2.0 * PI * i as f64 / 50.0;
            let y = m.forward(x);
            assert!((m.inverse(y, -PI, PI) - x).abs() < 1e-14);
        }
        assert!(matches!(ChartMap::SinPerturbation { eps: 1.5 }.check_invertible(-PI, PI, 100), Err(Error::NonInvertibleChart(_))));
        assert!(matches!(ChartMap::Affine { scale: -1.0, shift: 0.0 }.check_invertible(0.0, 1.0, 10), Err(Error::NonInvertibleChart(_))));
    }

    #[test]
    fn identity_chart_is_exact() {
        let chart = Chart::new(ChartMap::Identity, -PI, PI, 1000).unwrap();
        let basis = ChartBasis::uniform(-PI, PI, 5).unwrap();
        let f = coeffs(&[(1.0, 0.0), (0.0, 0.5), (0.25, 0.25)]);
        let g = coeffs(&[(0.0, 1.0), (0.5, 0.0), (0.0, 0.0), (1.0, -1.0)]);
        let rep = tangential_isometry(&chart, &basis, &f, &g).unwrap();
        assert_eq!(rep.pairing_residual, 0.0);
        assert_eq!(rep.weyl_iso_residual, 0.0);
    }

    #[test]
    fn sine_chart_preserves_pairing() {
        let chart = Chart::new(ChartMap::SinPerturbation { eps: 0.1 }, -PI, PI, 1000).unwrap();
        let basis = ChartBasis::uniform(-PI, PI, 5).unwrap();
        let f = coeffs(&[(1.0, 0.0), (0.0, 0.5), (0.25, 0.25)]);
        let g = coeffs(&[(0.0, 1.0), (0.5, 0.0), (0.0, 0.0), (1.0, -1.0)]);
        let rep = tangential_isometry(&chart, &basis, &f, &g).unwrap();
        assert!(rep.pairing_residual < 1e-10, "{rep:?}");
        assert!(rep.weyl_iso_residual < 1e-10, "{rep:?}");
        assert_eq!(rep.transported.len(), 1000);
    }

    #[test]
    fn misaligned_grids_are_rejected() {
        let m = ChartMap::SinPerturbation { eps: 0.1 };
        let s = Grid::new(-PI, PI, 100).unwrap();
        assert!(matches!(Chart::with_target(m, s, Grid::new(-PI, PI, 99).unwrap()), Err(Error::MisalignedGrids(_))));
        assert!(matches!(Chart::with_target(m, s, Grid::new(-3.0, PI, 100).unwrap()), Err(Error::MisalignedGrids(_))));
        assert!(Chart::with_target(m, s, Grid::new(-PI, PI, 100).unwrap()).is_ok());
    }

    #[test]
    fn lattice_chart_form() {
        let form = ChartForm::lattice(vec![0.5, 2.0]);
        let f = coeffs(&[(1.0, 0.0), (0.0, 0.0)]);
        let g = coeffs(&[(0.0, 1.0), (3.0, 0.0)]);
        assert_eq!(form.sigma(&f, &g).unwrap(), 0.5);
        assert_eq!(form.sigma(&g, &f).unwrap(), -0.5);
    }
}
