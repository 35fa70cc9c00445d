//! Seeded random test polynomials.
//!
//! Coefficients are i.i.d. standard complex Gaussians (real and imaginary
//! parts `N(0, 1/2)`, drawn in that order from `ChaCha8Rng::seed_from_u64(seed)`
//! through `rand_distr::StandardNormal`), then scaled to unit ℋ² norm.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::series::DirichletPolynomial;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `n` Gaussian coefficients normalized to unit ℓ² norm.
pub fn random_unit_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    assert!(n >= 1);
    loop {
        let mut a: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            a.iter_mut().for_each(|x| *x /= norm);
            return a;
        }
    }
}

pub fn random_unit_polynomial<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DirichletPolynomial {
    DirichletPolynomial::new(random_unit_coefficients(rng, n)).expect("gaussian draws are finite")
}
