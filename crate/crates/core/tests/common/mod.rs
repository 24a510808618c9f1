#![allow(dead_code)]

use feec_weights::{BaryPolynomial, MultiIndex, PolyForm, Q};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_f0e5;

/// Seed from `FEEC_WEIGHTS_SEED`, falling back to a fixed value.
pub fn seed() -> u64 {
    std::env::var("FEEC_WEIGHTS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn rational(rng: &mut impl Rng) -> Q {
    let n: i64 = rng.random_range(-9..=9);
    let d: i64 = rng.random_range(1..=6);
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Random polynomial with terms of every degree up to `deg`, so that the
/// result is generally not homogeneous.
pub fn poly(rng: &mut impl Rng, deg: u32) -> BaryPolynomial {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for a in MultiIndex::all_of_degree(d) {
            if d == deg || rng.random_bool(0.3) {
                terms.push((a, rational(rng)));
            }
        }
    }
    BaryPolynomial::from_terms(terms)
}

pub fn form(rng: &mut impl Rng, k: usize, deg: u32) -> PolyForm {
    match k {
        0 => PolyForm::scalar(poly(rng, deg)),
        1 => PolyForm::one_form(poly(rng, deg), poly(rng, deg)),
        _ => PolyForm::two_form(poly(rng, deg)),
    }
}

/// `dim P_d Λ^k` in two variables.
pub fn dim_formula(d: i64, k: usize) -> usize {
    if d < 0 {
        return 0;
    }
    let s = ((d + 1) * (d + 2) / 2) as usize;
    if k == 1 {
        2 * s
    } else {
        s
    }
}
