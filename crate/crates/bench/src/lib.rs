//! Seeded fixtures shared by the benchmarks.

use gitplane::random::{
    planted_monad, planted_multiplicity_form, random_coefficients, random_configuration, random_det_one,
};
use gitplane::{HulsbergenDatum, LineFunctional, MonadPair, PlaneCurve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A degree-`n` curve with a point of multiplicity above `2n/3`, moved off
/// `(0:0:1)` by a random determinant-1 matrix.
pub fn unstable_curve(n: u32, seed: u64) -> PlaneCurve {
    let mut r = rng(seed);
    let f = planted_multiplicity_form(&mut r, n, (2 * n) / 3 + 1);
    let g = random_det_one(&mut r, 3);
    PlaneCurve::new(f).and_then(|c| c.substitute(&g)).expect("nonzero form")
}

/// `n + 1` random points with random nonzero coefficients.
pub fn datum(n: usize, seed: u64) -> HulsbergenDatum {
    let mut r = rng(seed);
    let z = random_configuration(&mut r, n + 1, 5);
    HulsbergenDatum::new(z, random_coefficients(&mut r, n + 1)).expect("k coefficients")
}

/// A pair with `r = n` and `dim K′ = k` along the returned line.
pub fn planted(n: usize, k: usize, seed: u64) -> (MonadPair, LineFunctional) {
    planted_monad(&mut rng(seed), n, k)
}
