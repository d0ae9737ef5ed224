//! Seeded generators of test matrices.
//!
//! Everything is drawn from ChaCha8 so that runs are reproducible from a
//! single `u64` seed across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{c, CMatrix, C64};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn real_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0)))
}

pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let m = matrix(rng, n);
    (&m + m.adjoint()).scale(0.5)
}

/// `m m* + shift·I`: positive definite for `shift > 0`.
pub fn positive<R: Rng>(rng: &mut R, n: usize, shift: f64) -> CMatrix {
    let m = matrix(rng, n);
    let mut p = &m * m.adjoint();
    for k in 0..n {
        p[(k, k)] += c(shift);
    }
    p
}

/// Positive definite with unit trace.
pub fn density<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let p = positive(rng, n, 0.05);
    let tr = p.trace().re;
    p.unscale(tr)
}

/// Unitary from the QR factor of a random matrix.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    matrix(rng, n).qr().q()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn generators_are_reproducible_and_well_formed() {
        let a = matrix(&mut rng(7), 3);
        let b = matrix(&mut rng(7), 3);
        assert_eq!(a, b);
        let u = unitary(&mut rng(1), 4);
        assert!(max_abs(&(&u * u.adjoint() - CMatrix::identity(4, 4))) < 1e-14);
        let d = density(&mut rng(2), 5);
        assert!((d.trace().re - 1.0).abs() < 1e-15);
    }
}
