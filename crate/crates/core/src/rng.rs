//! Random number generation.
//!
//! Every random decision in the crate draws from [`SolverRng`], which is
//! `rand_chacha::ChaCha8Rng` (rand_chacha 0.3) seeded through
//! `SeedableRng::seed_from_u64`. Pinning the generator keeps seeded results
//! reproducible across platforms.

use rand::distributions::Open01;
use rand::Rng;

pub type SolverRng = rand_chacha::ChaCha8Rng;

/// Uniform draw from the open interval `(0, 1)`.
#[inline]
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}
