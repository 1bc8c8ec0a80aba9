//! Deterministic sampling for the randomized checks.
//!
//! Every trial gets its own ChaCha8 stream derived from (seed, index),
//! so results never depend on scheduling or trial order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratfunc::RatFunc;
use crate::rings::RatField;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn small_int(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(rng.gen_range(-9i64..=9))
}

pub fn small_nonzero_int(rng: &mut ChaCha8Rng) -> BigInt {
    loop {
        let x = small_int(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=4)),
    )
}

pub fn small_nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn int_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    (0..n).map(|_| small_int(rng)).collect()
}

pub fn int_vec_some_nonzero(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    loop {
        let v = int_vec(rng, n);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn rat_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

pub fn rat_vec_some_nonzero(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    loop {
        let v = rat_vec(rng, n);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Random rational function of formal degree `d` with a nonzero denominator.
pub fn random_ratfunc(rng: &mut ChaCha8Rng, d: usize) -> RatFunc<RatField> {
    let num = rat_vec(rng, d + 1);
    let den = rat_vec_some_nonzero(rng, d + 1);
    RatFunc::new(RatField, d, num, den).expect("denominator is nonzero")
}
