//! Double cones, the local net of Weyl subalgebras, and cone exhaustion.
//!
//! Regions are open `ℓ¹` diamonds `|t − t_c| + |x − x_c| < r` in lattice
//! index units, so with `Δt = Δx` their edges are null. The subalgebra of a
//! region is generated by `W(f)` with `supp f` inside the region.

use serde::Serialize;

use super::propagator::SymplecticSpace;
use super::{Site, Symplectic, TestFunction, WeylElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubleCone {
    pub t: f64,
    pub x: f64,
    pub radius: f64,
}

impl DoubleCone {
    pub fn new(t: f64, x: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !t.is_finite() || !x.is_finite() {
            return Err(Error::DegenerateRegion(format!("center ({t}, {x}), radius {radius}")));
        }
        Ok(Self { t, x, radius })
    }

    pub fn contains_point(&self, t: f64, x: f64) -> bool {
        (t - self.t).abs() + (x - self.x).abs() < self.radius
    }

    pub fn contains(&self, (n, j): Site) -> bool {
        self.contains_point(n as f64, j as f64)
    }

    /// Vertices in the order future, right, past, left.
    pub fn vertices(&self) -> [(f64, f64); 4] {
        let r = self.radius;
        [(self.t + r, self.x), (self.t, self.x + r), (self.t - r, self.x), (self.t, self.x - r)]
    }

    /// `other ⊆ self` for open diamonds: the vertices of `other` lie in the
    /// closure of `self`.
    pub fn contains_cone(&self, other: &DoubleCone) -> bool {
        other
            .vertices()
            .iter()
            .all(|&(t, x)| (t - self.t).abs() + (x - self.x).abs() <= self.radius * (1.0 + 1e-15))
    }

    /// Lattice sites in the region.
    pub fn sites(&self) -> Vec<Site> {
        let r = self.radius.ceil() as i32 + 1;
        let (tc, xc) = (self.t.round() as i32, self.x.round() as i32);
        let mut out = Vec::new();
        for n in tc - r..=tc + r {
            for j in xc - r..=xc + r {
                if self.contains((n, j)) {
                    out.push((n, j));
                }
            }
        }
        out
    }

    pub fn translated(&self, dt: f64, dx: f64) -> Self {
        Self { t: self.t + dt, x: self.x + dx, radius: self.radius }
    }

    /// Homothety about the center.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { radius: self.radius * factor, ..*self }
    }

    /// Smooth bump supported in the inscribed disc, times `amplitude`.
    pub fn bump(&self, amplitude: f64) -> TestFunction {
        let rin = self.radius / std::f64::consts::SQRT_2;
        TestFunction::from_real(self.sites().into_iter().map(|(n, j)| {
            let u2 = ((n as f64 - self.t).powi(2) + (j as f64 - self.x).powi(2)) / (rin * rin);
            let v = if u2 < 1.0 { amplitude * (-1.0 / (1.0 - u2)).exp() } else { 0.0 };
            ((n, j), v)
        }))
    }
}

/// Causal relation between two regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    /// Every pair of sites has `|Δj| > |Δn|`.
    Spacelike,
    /// Some pair of sites is causally related.
    Causal,
}

pub fn separation(o1: &DoubleCone, o2: &DoubleCone) -> Separation {
    let s2 = o2.sites();
    for (n, j) in o1.sites() {
        for &(m, k) in &s2 {
            if (j - k).abs() <= (n - m).abs() {
                return Separation::Causal;
            }
        }
    }
    Separation::Spacelike
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub sigma: f64,
    /// `1e−5 ‖f‖ ‖g‖`.
    pub bound: f64,
    /// `‖[W(f), W(g)]‖_{ℓ¹} = 2|sin(σ/2)|`.
    pub commutator_l1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetReport {
    /// `O₁ ⊆ O₂` as site sets, hence `A(O₁) ⊆ A(O₂)`.
    pub isotony: bool,
    pub separation: Separation,
    pub pairs: Vec<PairReport>,
}

impl NetReport {
    /// Spacelike regions with every sampled pair inside its bound.
    pub fn locality_holds(&self) -> bool {
        self.separation == Separation::Spacelike && self.pairs.iter().all(|p| p.sigma.abs() <= p.bound)
    }

    pub fn max_commutator(&self) -> f64 {
        self.pairs.iter().fold(0.0, |m, p| m.max(p.commutator_l1.abs()))
    }

    pub fn max_sigma(&self) -> f64 {
        self.pairs.iter().fold(0.0, |m, p| m.max(p.sigma.abs()))
    }
}

/// `supp f ⊆ O`.
pub fn localized_in(f: &TestFunction, o: &DoubleCone) -> bool {
    f.support().all(|s| o.contains(s))
}

/// Isotony and locality of the net on the sampled generators.
///
/// Errors if a region leaves the lattice or a sample is not localized in
/// its region.
pub fn local_net_check(
    space: &SymplecticSpace,
    o1: &DoubleCone,
    o2: &DoubleCone,
    fs: &[TestFunction],
    gs: &[TestFunction],
) -> Result<NetReport> {
    for o in [o1, o2] {
        if o.sites().iter().any(|&s| !space.contains(s)) {
            return Err(Error::Domain(format!("region {o:?} is not inside the lattice")));
        }
    }
    if fs.iter().any(|f| !localized_in(f, o1)) || gs.iter().any(|g| !localized_in(g, o2)) {
        return Err(Error::Domain("sample function not localized in its region".into()));
    }
    let isotony = o1.sites().iter().all(|&s| o2.contains(s));
    let vol = space.cell_volume();
    let mut pairs = Vec::new();
    for f in fs {
        for g in gs {
            let sigma = space.sigma(f, g)?;
            let comm = WeylElement::generator(f.clone()).commutator(&WeylElement::generator(g.clone()), space)?;
            pairs.push(PairReport { sigma, bound: 1e-5 * f.l2_norm(vol) * g.l2_norm(vol), commutator_l1: comm.l1_norm() });
        }
    }
    Ok(NetReport { isotony, separation: separation(o1, o2), pairs })
}

/// Inner region of the exhaustion of `K` and its translation margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExhaustionStep {
    pub cone: DoubleCone,
    /// Translations by `|g| < epsilon` keep `cone` inside `K`.
    pub epsilon: f64,
}

/// `K_n = (n/(n+1)) K` about the center, with margin `ε_n = r/((n+1)√2)`,
/// the Euclidean distance between the parallel edges of `K_n` and `K`.
pub fn cone_exhaustion(k: &DoubleCone, n: u32) -> Result<ExhaustionStep> {
    if !(k.radius > 0.0) || n == 0 {
        return Err(Error::DegenerateRegion(format!("radius {}, step {n}", k.radius)));
    }
    let n = n as f64;
    Ok(ExhaustionStep {
        cone: k.scaled(n / (n + 1.0)),
        epsilon: k.radius / ((n + 1.0) * std::f64::consts::SQRT_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustion_margin_is_sharp() {
        let k = DoubleCone::new(0.0, 0.0, 2.0).unwrap();
        for n in 1..6 {
            let step = cone_exhaustion(&k, n).unwrap();
            let e = step.epsilon;
            for theta in (0..16).map(|i| i as f64 * std::f64::consts::PI / 8.0) {
                let inside = step.cone.translated(0.999 * e * theta.sin(), 0.999 * e * theta.cos());
                assert!(k.contains_cone(&inside));
            }
            let d = 1.001 * e / std::f64::consts::SQRT_2;
            assert!(!k.contains_cone(&step.cone.translated(d, d)));
        }
        let half = cone_exhaustion(&k, 1).unwrap();
        assert!((half.epsilon - 0.5 * k.radius / std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(matches!(cone_exhaustion(&k, 0), Err(Error::DegenerateRegion(_))));
        assert!(DoubleCone::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn bump_is_localized() {
        let o = DoubleCone::new(10.0, 10.0, 6.0).unwrap();
        let f = o.bump(1.0);
        assert!(!f.is_zero());
        assert!(localized_in(&f, &o));
    }

    #[test]
    fn net_isotony_and_locality() {
        let space = SymplecticSpace::new(40, 80, 0.1, 0.1, 1.0, 0.0).unwrap();
        let o1 = DoubleCone::new(20.0, 20.0, 8.0).unwrap();
        let o2 = DoubleCone::new(20.0, 60.0, 8.0).unwrap();
        let rep = local_net_check(&space, &o1, &o2, &[o1.bump(1.0)], &[o2.bump(2.0)]).unwrap();
        assert_eq!(rep.separation, Separation::Spacelike);
        assert!(!rep.isotony);
        assert!(rep.locality_holds());
        assert_eq!(rep.max_commutator(), 0.0);

        let inner = DoubleCone::new(20.0, 20.0, 4.0).unwrap();
        let rep = local_net_check(&space, &inner, &o1, &[inner.bump(1.0)], &[o1.bump(1.0)]).unwrap();
        assert!(rep.isotony);
        assert_eq!(rep.separation, Separation::Causal);
    }

    #[test]
    fn regions_must_fit() {
        let space = SymplecticSpace::new(20, 20, 0.1, 0.1, 1.0, 0.0).unwrap();
        let o = DoubleCone::new(2.0, 10.0, 5.0).unwrap();
        assert!(local_net_check(&space, &o, &o, &[], &[]).is_err());
    }
}
