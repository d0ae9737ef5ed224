//! Weyl (CCR) algebras over lattice test-function spaces.
//!
//! A [`TestFunction`] is a finitely supported function on lattice sites with
//! fixed-point coefficients, so that sums of test functions, and therefore
//! the labels of Weyl generators, are exact. A [`WeylElement`] is a finite
//! combination of generators `W(f)`, multiplied by the rule
//!
//! ```text
//! W(f) W(g) = e^{−iσ(f,g)/2} W(f + g),   W(f)* = W(−f)
//! ```
//!
//! for a real antisymmetric form `σ` supplied by a [`Symplectic`] backend:
//! the Klein–Gordon propagator on a 1+1 lattice ([`propagator`]) or the
//! chart form `Im Σ f̄ g w` ([`chart`]).
//!
//! Only flat charts are modelled. Local fundamental solutions on curved
//! charts are not implemented.

pub mod chart;
pub mod net;
pub mod propagator;

use std::collections::BTreeMap;

use crate::error::Result;
use crate::linalg::C64;

/// Fractional bits of the fixed-point coefficients.
pub const FRAC_BITS: u32 = 40;
const SCALE: f64 = (1u64 << FRAC_BITS) as f64;

/// Lattice site `(n, j)`: time index, space index.
pub type Site = (i32, i32);

/// Complex fixed-point number with `FRAC_BITS` fractional bits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed {
    pub re: i64,
    pub im: i64,
}

impl Fixed {
    /// Nearest fixed-point value.
    pub fn from_c64(z: C64) -> Self {
        Self { re: (z.re * SCALE).round() as i64, im: (z.im * SCALE).round() as i64 }
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re as f64 / SCALE, self.im as f64 / SCALE)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

/// Finitely supported lattice function with exact fixed-point arithmetic.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestFunction {
    coeffs: BTreeMap<Site, Fixed>,
}

impl TestFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Quantizes the given values; zero coefficients are dropped.
    pub fn from_values(values: impl IntoIterator<Item = (Site, C64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (site, z) in values {
            let q = Fixed::from_c64(z);
            if !q.is_zero() {
                coeffs.insert(site, q);
            }
        }
        Self { coeffs }
    }

    pub fn from_real(values: impl IntoIterator<Item = (Site, f64)>) -> Self {
        Self::from_values(values.into_iter().map(|(s, v)| (s, C64::new(v, 0.0))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(|q| q.im == 0)
    }

    pub fn value(&self, site: Site) -> C64 {
        self.coeffs.get(&site).map_or(C64::new(0.0, 0.0), |q| q.to_c64())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Site, C64)> + '_ {
        self.coeffs.iter().map(|(s, q)| (*s, q.to_c64()))
    }

    pub fn fixed(&self) -> impl Iterator<Item = (&Site, &Fixed)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Site> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(Σ |f|² dV)^{1/2}`.
    pub fn l2_norm(&self, volume: f64) -> f64 {
        (self.iter().map(|(_, z)| z.norm_sqr()).sum::<f64>() * volume).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (site, q) in &other.coeffs {
            let e = coeffs.entry(*site).or_default();
            e.re += q.re;
            e.im += q.im;
            if e.is_zero() {
                coeffs.remove(site);
            }
        }
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(s, q)| (*s, Fixed { re: -q.re, im: -q.im })).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Shifts every site by `(dn, dj)`.
    pub fn translate(&self, dn: i32, dj: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|((n, j), q)| ((n + dn, j + dj), *q)).collect() }
    }
}

/// A real antisymmetric bilinear form on test functions.
pub trait Symplectic {
    fn sigma(&self, f: &TestFunction, g: &TestFunction) -> Result<f64>;
}

/// Finite combination `Σ c_f W(f)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeylElement {
    terms: BTreeMap<TestFunction, C64>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `W(f)`.
    pub fn generator(f: TestFunction) -> Self {
        Self::term(f, C64::new(1.0, 0.0))
    }

    /// `W(0)`.
    pub fn unit() -> Self {
        Self::generator(TestFunction::zero())
    }

    pub fn term(f: TestFunction, z: C64) -> Self {
        let mut terms = BTreeMap::new();
        if z != C64::new(0.0, 0.0) {
            terms.insert(f, z);
        }
        Self { terms }
    }

    pub fn terms(&self) -> &BTreeMap<TestFunction, C64> {
        &self.terms
    }

    pub fn coefficient(&self, f: &TestFunction) -> C64 {
        self.terms.get(f).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(terms: &mut BTreeMap<TestFunction, C64>, f: TestFunction, z: C64) {
        let e = terms.entry(f).or_default();
        *e += z;
    }

    fn pruned(mut terms: BTreeMap<TestFunction, C64>) -> Self {
        terms.retain(|_, z| *z != C64::new(0.0, 0.0));
        Self { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (f, z) in &other.terms {
            Self::insert_add(&mut terms, f.clone(), *z);
        }
        Self::pruned(terms)
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::pruned(self.terms.iter().map(|(f, c)| (f.clone(), c * z)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// `Σ c̄_f W(−f)`.
    pub fn star(&self) -> Self {
        Self { terms: self.terms.iter().map(|(f, z)| (f.neg(), z.conj())).collect() }
    }

    /// Twisted product `W(f)W(g) = e^{−iσ(f,g)/2} W(f+g)`, extended bilinearly.
    pub fn mul(&self, other: &Self, form: &dyn Symplectic) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                let s = form.sigma(f, g)?;
                let phase = C64::from_polar(1.0, -0.5 * s);
                Self::insert_add(&mut terms, f.add(g), a * b * phase);
            }
        }
        Ok(Self::pruned(terms))
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Self, form: &dyn Symplectic) -> Result<Self> {
        Ok(self.mul(other, form)?.sub(&other.mul(self, form)?))
    }

    /// `Σ |c_f|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).sum()
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (f, z) in &self.terms {
            worst = worst.max((z - other.coefficient(f)).norm());
        }
        for (f, z) in &other.terms {
            if !self.terms.contains_key(f) {
                worst = worst.max(z.norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `σ(f, g) = Σ_sites (f_re g_im − f_im g_re)`-style toy form: Im Σ f̄ g.
    struct ImPairing;

    impl Symplectic for ImPairing {
        fn sigma(&self, f: &TestFunction, g: &TestFunction) -> Result<f64> {
            Ok(f.iter().map(|(s, z)| (z.conj() * g.value(s)).im).sum())
        }
    }

    fn tf(vals: &[(i32, f64, f64)]) -> TestFunction {
        TestFunction::from_values(vals.iter().map(|&(j, re, im)| ((0, j), C64::new(re, im))))
    }

    #[test]
    fn fixed_point_sums_are_exact() {
        let f = TestFunction::from_real([((0, 0), 0.1), ((1, 2), -0.3)]);
        let g = TestFunction::from_real([((0, 0), 0.2), ((5, 5), 1e-3)]);
        assert_eq!(f.add(&g).sub(&g), f);
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.translate(3, -1).translate(-3, 1), f);
    }

    #[test]
    fn unit_and_star() {
        let f = tf(&[(0, 1.0, 0.5), (1, -0.25, 0.0)]);
        let w = WeylElement::generator(f.clone());
        let form = ImPairing;
        assert_eq!(WeylElement::unit().mul(&w, &form).unwrap(), w);
        assert_eq!(w.star(), WeylElement::generator(f.neg()));
        assert_eq!(w.star().star(), w);
        assert_eq!(w.star().mul(&w, &form).unwrap(), WeylElement::unit());
    }

    #[test]
    fn commutator_phase() {
        let f = tf(&[(0, 1.0, 0.0), (1, 0.0, 0.5)]);
        let g = tf(&[(0, 0.0, 1.0), (1, 0.25, 0.0)]);
        let form = ImPairing;
        let s = form.sigma(&f, &g).unwrap();
        assert!(s.abs() > 0.5);
        let (wf, wg) = (WeylElement::generator(f), WeylElement::generator(g));
        let prod = wf
            .mul(&wg, &form)
            .unwrap()
            .mul(&wf.star(), &form)
            .unwrap()
            .mul(&wg.star(), &form)
            .unwrap();
        let want = WeylElement::term(TestFunction::zero(), C64::from_polar(1.0, -s));
        assert!(prod.max_coeff_diff(&want) < 1e-15);
    }
}
