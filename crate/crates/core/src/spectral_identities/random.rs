//! Seeded generators of random exact test data.
//!
//! Entries are `p/q` with `|p| <= 20` and `1 <= q <= 10`; tensors draw one
//! entry per symmetry orbit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EigenSpectrum, Grad3, Hess4};
use crate::exact_arith::{rat, Rational};

pub const MAX_NUMERATOR: i64 = 20;
pub const MAX_DENOMINATOR: i64 = 10;

/// Independent stream per `(seed, salt, trial)`.
pub fn trial_rng(seed: u64, salt: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(32));
    rng.set_stream(trial);
    rng
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.random_range(-MAX_NUMERATOR..=MAX_NUMERATOR);
    let q = rng.random_range(1..=MAX_DENOMINATOR);
    rat(p, q)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn spectrum<R: Rng>(rng: &mut R, n: usize) -> EigenSpectrum {
    EigenSpectrum::new((0..n).map(|_| small_rational(rng)).collect()).expect("n >= 1")
}

pub fn grad3<R: Rng>(rng: &mut R, n: usize) -> Grad3 {
    let mut g = Grad3::zeros(n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                g.set_orbit(i, j, k, small_rational(rng));
            }
        }
    }
    g
}

/// Symmetric in the first three indices only.
pub fn hess4<R: Rng>(rng: &mut R, n: usize) -> Hess4 {
    let mut h = Hess4::zeros(n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in 0..n {
                    h.set_orbit(i, j, k, l, small_rational(rng));
                }
            }
        }
    }
    h
}
