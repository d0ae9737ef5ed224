//! Young functions and their calculus.
//!
//! A Young function is a convex gauge `Ψ: [0, ∞) → [0, ∞]` with `Ψ(0) = 0`
//! and `Ψ(u) → ∞`. This module evaluates them, forms complementary
//! (Legendre) functions `Ψ*(u) = sup_{v>0} (uv − Ψ(v))`, inverts them in the
//! generalized right-continuous sense, and produces the two fundamental
//! functions of the associated Orlicz spaces:
//!
//! ```text
//! φ_Ψ(t) = 1 / Ψ⁻¹(1/t)          (Luxemburg norm of an indicator of measure t)
//! φ̃_Ψ(t) = t / φ_{Ψ*}(t)          (Orlicz norm of the same indicator)
//! ```
//!
//! Closed forms are used wherever they exist (powers, `cosh − 1` and its
//! complement); everything else goes through a numeric Legendre transform
//! and monotone bisection.

use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_min, log_space};

/// Numeric knobs for the non-closed-form paths.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungSettings {
    /// Lower end of the log-spaced Legendre search grid.
    pub conj_v_min: f64,
    /// Upper end of the log-spaced Legendre search grid.
    pub conj_v_max: f64,
    pub conj_points: usize,
    /// Relative bracket width at which inverse bisection stops.
    pub inverse_rel_tol: f64,
    /// Smallest admissible second divided difference of a table.
    pub convexity_tol: f64,
}

impl Default for YoungSettings {
    fn default() -> Self {
        Self {
            conj_v_min: 1e-8,
            conj_v_max: 1e8,
            conj_points: 4096,
            inverse_rel_tol: 1e-15,
            convexity_tol: 1e-12,
        }
    }
}

/// Sampled Young function, linearly interpolated and `+∞` past the last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    t: Vec<f64>,
    psi: Vec<f64>,
}

impl Table {
    pub fn new(t: Vec<f64>, psi: Vec<f64>, convexity_tol: f64) -> Result<Self> {
        if t.len() != psi.len() || t.len() < 2 {
            return Err(Error::InvalidYoung(
                "table needs at least two (t, Ψ) rows of equal length".into(),
            ));
        }
        if t[0] != 0.0 || psi[0] != 0.0 {
            return Err(Error::InvalidYoung("table must start at (0, 0)".into()));
        }
        for w in t.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidYoung(format!(
                    "t must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        for (k, w) in psi.windows(2).enumerate() {
            if !w[1].is_finite() || w[1] < w[0] {
                return Err(Error::InvalidYoung(format!(
                    "Ψ must be finite and nondecreasing (row {})",
                    k + 1
                )));
            }
        }
        let table = Self { t, psi };
        let dd = table.min_second_divided_difference();
        if dd < -convexity_tol {
            return Err(Error::InvalidYoung(format!(
                "table is not convex (second divided difference {dd:.3e})"
            )));
        }
        Ok(table)
    }

    /// `b_Ψ`: the last knot, beyond which the function is infinite.
    pub fn bound(&self) -> f64 {
        *self.t.last().unwrap()
    }

    pub fn min_second_divided_difference(&self) -> f64 {
        let (t, p) = (&self.t, &self.psi);
        (1..t.len().saturating_sub(1))
            .map(|k| {
                let s1 = (p[k] - p[k - 1]) / (t[k] - t[k - 1]);
                let s2 = (p[k + 1] - p[k]) / (t[k + 1] - t[k]);
                (s2 - s1) / (t[k + 1] - t[k - 1])
            })
            .fold(f64::INFINITY, f64::min)
    }

    fn eval(&self, x: f64) -> f64 {
        if x > self.bound() {
            return f64::INFINITY;
        }
        let k = self.t.partition_point(|&tk| tk <= x).max(1).min(self.t.len() - 1);
        let (t0, t1) = (self.t[k - 1], self.t[k]);
        let (p0, p1) = (self.psi[k - 1], self.psi[k]);
        p0 + (p1 - p0) * (x - t0) / (t1 - t0)
    }
}

/// Catalog tag of a Young function.
#[derive(Debug, Clone, PartialEq)]
pub enum YoungKind {
    /// `coeff · t^exponent`, exponent ≥ 1.
    Power { coeff: f64, exponent: f64 },
    /// 0 on `[0, bound]`, `+∞` beyond; the complement of `bound · t`.
    Indicator { bound: f64 },
    /// `cosh t − 1`.
    CoshM1,
    /// `u·arcsinh u − √(1+u²) + 1`, the complement of `cosh − 1`.
    CoshM1Conjugate,
    /// `t·log(t + 1)`.
    TLog,
    /// `max(t, t·log(t + 1))`.
    Ent,
    Tabulated(Table),
    /// Numeric Legendre transform of the wrapped function.
    Conjugate(Box<YoungFunction>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct YoungFunction {
    kind: YoungKind,
    settings: YoungSettings,
}

/// `e − 1`, where `t` and `t·log(t+1)` cross.
pub const ENT_BRANCH_POINT: f64 = std::f64::consts::E - 1.0;

impl YoungFunction {
    pub fn new(kind: YoungKind) -> Result<Self> {
        match &kind {
            YoungKind::Power { coeff, exponent } => {
                if !(*exponent >= 1.0) || !exponent.is_finite() {
                    return Err(Error::InvalidYoung(format!("power exponent {exponent} < 1")));
                }
                if !(*coeff > 0.0) || !coeff.is_finite() {
                    return Err(Error::InvalidYoung(format!("power coefficient {coeff} <= 0")));
                }
            }
            YoungKind::Indicator { bound } => {
                if !(*bound > 0.0) || !bound.is_finite() {
                    return Err(Error::InvalidYoung(format!("indicator bound {bound} <= 0")));
                }
            }
            _ => {}
        }
        Ok(Self { kind, settings: YoungSettings::default() })
    }

    /// `t^p`.
    pub fn power(p: f64) -> Result<Self> {
        Self::new(YoungKind::Power { coeff: 1.0, exponent: p })
    }

    pub fn cosh_m1() -> Self {
        Self { kind: YoungKind::CoshM1, settings: YoungSettings::default() }
    }

    pub fn t_log() -> Self {
        Self { kind: YoungKind::TLog, settings: YoungSettings::default() }
    }

    pub fn ent() -> Self {
        Self { kind: YoungKind::Ent, settings: YoungSettings::default() }
    }

    pub fn tabulated(t: Vec<f64>, psi: Vec<f64>) -> Result<Self> {
        let settings = YoungSettings::default();
        let table = Table::new(t, psi, settings.convexity_tol)?;
        Ok(Self { kind: YoungKind::Tabulated(table), settings })
    }

    /// Reads a headerless two-column CSV of `(t, Ψ(t))` rows.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let (mut t, mut psi) = (Vec::new(), Vec::new());
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::Parse(format!("expected 2 columns, found {}", rec.len())));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            t.push(parse(&rec[0])?);
            psi.push(parse(&rec[1])?);
        }
        Self::tabulated(t, psi)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn with_settings(mut self, settings: YoungSettings) -> Self {
        self.settings = settings;
        self
    }

    pub fn kind(&self) -> &YoungKind {
        &self.kind
    }

    pub fn settings(&self) -> &YoungSettings {
        &self.settings
    }

    /// The built-in functions: `t²`, `t³`, `t^1.5`, `cosh − 1`, `t log(t+1)`
    /// and `max(t, t log(t+1))`.
    pub fn catalog() -> Vec<YoungFunction> {
        vec![
            Self::power(2.0).unwrap(),
            Self::power(3.0).unwrap(),
            Self::power(1.5).unwrap(),
            Self::cosh_m1(),
            Self::t_log(),
            Self::ent(),
        ]
    }

    /// `b_Ψ = sup{u : Ψ(u) < ∞}`.
    pub fn finiteness_bound(&self) -> f64 {
        match &self.kind {
            YoungKind::Indicator { bound } => *bound,
            YoungKind::Tabulated(t) => t.bound(),
            _ => f64::INFINITY,
        }
    }

    /// `Ψ(t)`, possibly `+∞`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("Young function evaluated at {t} < 0")));
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.kind {
            YoungKind::Power { coeff, exponent } => coeff * t.powf(*exponent),
            YoungKind::Indicator { bound } => {
                if t <= *bound {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            YoungKind::CoshM1 => {
                let s = (0.5 * t).sinh();
                2.0 * s * s
            }
            YoungKind::CoshM1Conjugate => {
                let r = (1.0 + t * t).sqrt();
                t * t.asinh() - t * t / (r + 1.0)
            }
            YoungKind::TLog => t * t.ln_1p(),
            YoungKind::Ent => t.max(t * t.ln_1p()),
            YoungKind::Tabulated(tab) => tab.eval(t),
            YoungKind::Conjugate(inner) => inner.legendre(t),
        }
    }

    /// Numeric `sup_{v ≥ 0} (u v − Ψ(v))`.
    ///
    /// Scans a log-spaced grid and refines the best cell by golden section in
    /// `log v` (the objective is concave in `v`, hence unimodal in `log v`).
    /// The scan is extended upward while the maximum sits on the last node.
    pub fn legendre(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let s = &self.settings;
        let g = |v: f64| {
            let p = self.eval_unchecked(v);
            if p.is_infinite() {
                f64::NEG_INFINITY
            } else {
                u * v - p
            }
        };
        let grid = log_space(s.conj_v_min, s.conj_v_max, s.conj_points);
        let vals: Vec<f64> = grid.iter().map(|&v| g(v)).collect();
        let (k, _) = vals
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let neg = |lv: f64| -g(lv.exp());
        let (lo, hi) = if k == 0 {
            // Maximizer at or below the first node: search linearly down to 0.
            let (_, fmin, _) = golden_min(0.0, grid[1], 1e-15, |v| -g(v));
            return (-fmin).max(0.0);
        } else if k == grid.len() - 1 {
            (grid[k - 1].ln(), 1e300f64.ln())
        } else {
            (grid[k - 1].ln(), grid[k + 1].ln())
        };
        let (arg, fmin, _) = golden_min(lo, hi, 1e-15, neg);
        if k == grid.len() - 1 && arg > 1e299f64.ln() {
            return f64::INFINITY;
        }
        let mut best = (-fmin).max(vals[k]).max(0.0);
        // Kinks at the edge of the effective domain are attained exactly.
        let b = self.finiteness_bound();
        if b.is_finite() {
            best = best.max(g(b));
        }
        if matches!(self.kind, YoungKind::Ent) {
            best = best.max(g(ENT_BRANCH_POINT));
        }
        best
    }

    /// The complementary Young function `Ψ*`.
    pub fn conjugate(&self) -> YoungFunction {
        let kind = match &self.kind {
            YoungKind::Power { coeff, exponent } if *exponent == 1.0 => {
                YoungKind::Indicator { bound: *coeff }
            }
            YoungKind::Power { coeff, exponent } => {
                let q = *exponent;
                let qc = q / (q - 1.0);
                YoungKind::Power { coeff: (q - 1.0) * coeff * (coeff * q).powf(-qc), exponent: qc }
            }
            YoungKind::Indicator { bound } => YoungKind::Power { coeff: *bound, exponent: 1.0 },
            YoungKind::CoshM1 => YoungKind::CoshM1Conjugate,
            YoungKind::CoshM1Conjugate => YoungKind::CoshM1,
            YoungKind::Conjugate(inner) => return (**inner).clone(),
            _ => YoungKind::Conjugate(Box::new(self.clone())),
        };
        YoungFunction { kind, settings: self.settings.clone() }
    }

    /// Generalized inverse `sup{t ≥ 0 : Ψ(t) ≤ u}`, closed form when known.
    pub fn inverse(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::Domain(format!("inverse evaluated at {u} < 0")));
        }
        Ok(match &self.kind {
            YoungKind::Power { coeff, exponent } => (u / coeff).powf(1.0 / exponent),
            YoungKind::Indicator { bound } => *bound,
            YoungKind::CoshM1 => {
                if u.is_infinite() {
                    f64::INFINITY
                } else {
                    (u + (u * (2.0 + u)).sqrt()).ln_1p()
                }
            }
            YoungKind::Ent => u.min(Self::t_log().inverse_bisection(u)?),
            _ => self.inverse_bisection(u)?,
        })
    }

    /// Generalized inverse by monotone bisection, for any kind.
    pub fn inverse_bisection(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::Domain(format!("inverse evaluated at {u} < 0")));
        }
        if u.is_infinite() {
            return Ok(self.finiteness_bound());
        }
        let above = |t: f64| self.eval_unchecked(t) > u;
        let mut hi = 1.0;
        while !above(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::InvalidYoung("Ψ does not grow without bound".into()));
            }
        }
        let lo = if hi > 1.0 { 0.5 * hi } else { 0.0 };
        let b = bisect(lo, hi, self.settings.inverse_rel_tol, above);
        Ok(b.lo)
    }

    /// `φ_Ψ(t) = 1 / Ψ⁻¹(1/t)`.
    pub fn fundamental_luxemburg(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("fundamental function at {t} <= 0")));
        }
        Ok(1.0 / self.inverse(1.0 / t)?)
    }

    /// `φ̃_Ψ(t) = t / φ_{Ψ*}(t)`.
    pub fn fundamental_orlicz(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("fundamental function at {t} <= 0")));
        }
        Ok(t / self.conjugate().fundamental_luxemburg(t)?)
    }

    pub fn fundamental_pair(&self) -> FundamentalPair<'_> {
        FundamentalPair { young: self }
    }

    /// Smallest second divided difference on the given increasing grid.
    pub fn min_second_divided_difference(&self, grid: &[f64]) -> f64 {
        (1..grid.len().saturating_sub(1))
            .filter_map(|k| {
                let (a, b, c) = (grid[k - 1], grid[k], grid[k + 1]);
                let (pa, pb, pc) =
                    (self.eval_unchecked(a), self.eval_unchecked(b), self.eval_unchecked(c));
                if !(pa.is_finite() && pb.is_finite() && pc.is_finite()) {
                    return None;
                }
                let s1 = (pb - pa) / (b - a);
                let s2 = (pc - pb) / (c - b);
                Some((s2 - s1) / (c - a))
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            YoungKind::Power { coeff, exponent } if *coeff == 1.0 => write!(f, "power:{exponent}"),
            YoungKind::Power { coeff, exponent } => write!(f, "{coeff}*t^{exponent}"),
            YoungKind::Indicator { bound } => write!(f, "indicator:{bound}"),
            YoungKind::CoshM1 => write!(f, "coshm1"),
            YoungKind::CoshM1Conjugate => write!(f, "conj:coshm1"),
            YoungKind::TLog => write!(f, "tlog"),
            YoungKind::Ent => write!(f, "ent"),
            YoungKind::Tabulated(t) => write!(f, "table[{} knots]", t.t.len()),
            YoungKind::Conjugate(inner) => write!(f, "conj:{inner}"),
        }
    }
}

impl FromStr for YoungFunction {
    type Err = Error;

    /// Accepts `power:p`, `coshm1`, `tlog`, `ent` and `conj:<name>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("conj:") {
            return Ok(rest.parse::<YoungFunction>()?.conjugate());
        }
        if let Some(p) = s.strip_prefix("power:") {
            let p: f64 = p.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            return Self::power(p);
        }
        match s {
            "coshm1" => Ok(Self::cosh_m1()),
            "tlog" => Ok(Self::t_log()),
            "ent" => Ok(Self::ent()),
            _ => Err(Error::Parse(format!("unknown Young function {s:?}"))),
        }
    }
}

/// The Luxemburg and Orlicz fundamental functions of one Young function.
#[derive(Debug, Clone, Copy)]
pub struct FundamentalPair<'a> {
    young: &'a YoungFunction,
}

impl FundamentalPair<'_> {
    pub fn luxemburg(&self, t: f64) -> Result<f64> {
        self.young.fundamental_luxemburg(t)
    }

    pub fn orlicz(&self, t: f64) -> Result<f64> {
        self.young.fundamental_orlicz(t)
    }

    /// Largest violation of quasi-concavity (φ nondecreasing, φ(t)/t
    /// nonincreasing) over both maps, relative to the sampled values.
    pub fn quasi_concavity_defect(&self, grid: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for map in [Self::luxemburg, Self::orlicz] {
            let vals = grid.iter().map(|&t| map(self, t)).collect::<Result<Vec<_>>>()?;
            for k in 1..grid.len() {
                let (a, b) = (vals[k - 1], vals[k]);
                worst = worst.max((a - b) / a.abs().max(b.abs()).max(1e-300));
                let (ra, rb) = (a / grid[k - 1], b / grid[k]);
                worst = worst.max((rb - ra) / ra.abs().max(rb.abs()).max(1e-300));
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_legendre(psi: impl Fn(f64) -> f64, u: f64, vmax: f64, n: usize) -> f64 {
        (0..=n)
            .map(|k| {
                let v = vmax * k as f64 / n as f64;
                u * v - psi(v)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(YoungFunction::cosh_m1().evaluate(0.0).unwrap(), 0.0);
        let e1 = ENT_BRANCH_POINT;
        assert!((YoungFunction::ent().evaluate(e1).unwrap() - 1.718281828).abs() < 1e-9);
        assert_eq!(YoungFunction::power(2.0).unwrap().evaluate(3.0).unwrap(), 9.0);
        assert!(matches!(YoungFunction::t_log().evaluate(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn ent_branch_point_is_the_crossing() {
        let t = ENT_BRANCH_POINT;
        assert!((t - t * t.ln_1p()).abs() < 1e-15);
    }

    #[test]
    fn square_conjugate_matches_brute_force() {
        let psi = YoungFunction::power(2.0).unwrap();
        let conj = psi.conjugate();
        // Oracle: sup of 2v − v² over a fine grid on [0, 10].
        let oracle = brute_legendre(|v| v * v, 2.0, 10.0, 1_000_000);
        assert!((oracle - 1.0).abs() < 1e-9);
        assert!((conj.evaluate(2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((conj.evaluate(3.0).unwrap() - 2.25).abs() < 1e-15);
        assert!((psi.legendre(2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coshm1_conjugate_examples() {
        let conj = YoungFunction::cosh_m1().conjugate();
        assert_eq!(conj.evaluate(0.0).unwrap(), 0.0);
        let closed = 1f64.asinh() - 2f64.sqrt() + 1.0;
        assert!((closed - 0.467160).abs() < 1e-6);
        let oracle = brute_legendre(|v| v.cosh() - 1.0, 1.0, 4.0, 2_000_000);
        assert!((oracle - closed).abs() < 1e-9);
        assert!((conj.evaluate(1.0).unwrap() - closed).abs() < 1e-15);
        assert!((YoungFunction::cosh_m1().legendre(1.0) - closed).abs() < 1e-12);
    }

    #[test]
    fn linear_and_indicator_are_complementary() {
        let lin = YoungFunction::power(1.0).unwrap();
        let ind = lin.conjugate();
        assert_eq!(ind.kind(), &YoungKind::Indicator { bound: 1.0 });
        assert_eq!(ind.evaluate(1.0).unwrap(), 0.0);
        assert_eq!(ind.evaluate(1.5).unwrap(), f64::INFINITY);
        assert_eq!(ind.conjugate(), lin);
        assert_eq!(ind.inverse(0.0).unwrap(), 1.0);
        assert_eq!(lin.legendre(2.0), f64::INFINITY);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(YoungFunction::power(2.0).unwrap().inverse(9.0).unwrap(), 3.0);
        let cm = YoungFunction::cosh_m1();
        let want = 2f64.acosh();
        assert!((want - 1.316957897).abs() < 1e-9);
        assert!((cm.inverse_bisection(1.0).unwrap() - want).abs() < 1e-14);
        assert!((cm.inverse(1.0).unwrap() - want).abs() < 1e-15);
        assert_eq!(YoungFunction::ent().inverse(0.0).unwrap(), 0.0);
        assert!(matches!(cm.inverse(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_is_right_continuous_on_flat_pieces() {
        let tab = YoungFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 0.0, 1.0]).unwrap();
        // Ψ vanishes on [0, 1]; the sup convention returns the right end.
        assert!((tab.inverse(0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((tab.inverse(0.5).unwrap() - 1.5).abs() < 1e-14);
        assert!((tab.inverse(10.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn fundamental_examples() {
        let sq = YoungFunction::power(2.0).unwrap();
        assert!((sq.fundamental_luxemburg(4.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((sq.fundamental_orlicz(4.0).unwrap() - 4.0).abs() < 1e-14);
        let cm = YoungFunction::cosh_m1();
        let want = 1.0 / 2f64.acosh();
        assert!((want - 0.759326).abs() < 1e-6);
        assert!((cm.fundamental_luxemburg(1.0).unwrap() - want).abs() < 1e-15);
        assert!(matches!(cm.fundamental_luxemburg(0.0), Err(Error::Domain(_))));
        assert!(matches!(cm.fundamental_orlicz(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn ent_fundamental_is_max_of_branches() {
        let ent = YoungFunction::ent();
        let tlog = YoungFunction::t_log();
        for t in log_space(1e-3, 1e3, 61) {
            let lhs = ent.fundamental_luxemburg(t).unwrap();
            let rhs = t.max(tlog.fundamental_luxemburg(t).unwrap());
            assert!((lhs - rhs).abs() <= 1e-12 * rhs, "t={t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn orlicz_fundamental_of_coshm1_conjugate_vanishes_at_zero() {
        let conj = YoungFunction::cosh_m1().conjugate();
        let ts = log_space(1e-12, 1e-1, 30);
        let vals: Vec<f64> = ts.iter().map(|&t| conj.fundamental_orlicz(t).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        assert!(vals[0] < 1e-10);
    }

    #[test]
    fn table_validation() {
        assert!(YoungFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 1.5]).is_err());
        assert!(YoungFunction::tabulated(vec![0.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]).is_err());
        assert!(YoungFunction::tabulated(vec![0.5, 1.0], vec![0.0, 1.0]).is_err());
        let t = YoungFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 3.0]).unwrap();
        assert_eq!(t.evaluate(1.5).unwrap(), 2.0);
        assert_eq!(t.evaluate(2.5).unwrap(), f64::INFINITY);
        assert_eq!(t.finiteness_bound(), 2.0);
    }

    #[test]
    fn csv_loading() {
        let text = "# t, psi\n0, 0\n1, 0.5\n2, 2\n";
        let t = YoungFunction::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(t.evaluate(1.0).unwrap(), 0.5);
        assert!(YoungFunction::from_csv_reader("0,0\n1\n".as_bytes()).is_err());
        assert!(YoungFunction::from_csv_reader("0,0\nx,1\n".as_bytes()).is_err());
    }

    #[test]
    fn tabulated_conjugate_is_numeric_and_biconjugates() {
        let t = YoungFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 0.5, 2.0]).unwrap();
        let c = t.conjugate();
        assert!(matches!(c.kind(), YoungKind::Conjugate(_)));
        // sup over the piecewise linear table is attained at a knot.
        let u: f64 = 1.0;
        let want = [0.0, u - 0.5, 2.0 * u - 2.0].into_iter().fold(0.0, f64::max);
        assert!((c.evaluate(u).unwrap() - want).abs() < 1e-12);
        assert_eq!(c.conjugate(), t);
    }

    #[test]
    fn parse_catalog_names() {
        assert_eq!("power:2".parse::<YoungFunction>().unwrap(), YoungFunction::power(2.0).unwrap());
        assert_eq!("coshm1".parse::<YoungFunction>().unwrap(), YoungFunction::cosh_m1());
        assert_eq!(
            "conj:coshm1".parse::<YoungFunction>().unwrap().kind(),
            &YoungKind::CoshM1Conjugate
        );
        assert!("power:0.5".parse::<YoungFunction>().is_err());
        assert!("sinh".parse::<YoungFunction>().is_err());
        for y in YoungFunction::catalog() {
            if y.to_string().contains('*') {
                continue;
            }
            assert_eq!(y.to_string().parse::<YoungFunction>().unwrap(), y);
        }
    }
}
