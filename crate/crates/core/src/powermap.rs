//! The induced power map on denominator coefficients.
//!
//! Specializing the universal pair at `a = b` collapses the numerator, and
//! what remains is a self-map `h_m` of coefficient space sending `F_b` to
//! the denominator of its transform. Written in the coordinates
//! `(-1)^i e_i(roots)`, this map is conjugate to the plain power map
//! `x -> x^m` on the roots, which is what most checks here exercise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::landen::{generic_gh, specialize_to_coeffs};
use crate::ratfunc::ProjPoint;
use crate::rings::{IntRing, RatField, Ring};
use crate::sample::{int_vec_some_nonzero, rng_for};

fn rat_pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Signed elementary symmetric functions of the given roots: entry `i`
/// (1-based) is `(-1)^i e_i`, so the output lists the non-leading
/// coefficients of `prod (z - x_j)` in descending order.
pub fn sigma_bar(roots: &[BigRational]) -> Vec<BigRational> {
    let coeffs = crate::elimination::coeffs_from_roots(&BigRational::one(), roots);
    coeffs[1..].to_vec()
}

/// The coefficient power map in the affine chart `b_0 = 1`: sends the
/// non-leading coefficients of a monic degree-`d` polynomial to those of
/// its image under `h_m`. Normalized so the output is again monic.
pub fn h_m_affine(b_affine: &[BigRational], m: u32) -> Result<Vec<BigRational>> {
    let d = b_affine.len();
    if d == 0 {
        // A monic constant maps to a monic constant.
        return Ok(Vec::new());
    }
    let pair = generic_gh(d, m, 0)?;
    let mut full = Vec::with_capacity(d + 1);
    full.push(BigRational::one());
    full.extend_from_slice(b_affine);
    let coeffs = specialize_to_coeffs(pair.h(), &RatField, d, &full);
    // Monic input forces the leading output coefficient to (-1)^((m+1)d).
    let sigma: i64 = if (m as u64 + 1) * d as u64 % 2 == 0 { 1 } else { -1 };
    debug_assert_eq!(coeffs[0], RatField.from_i64(sigma));
    let s = RatField.from_i64(sigma);
    Ok(coeffs[1..].iter().map(|c| c * &s).collect())
}

/// The coefficient power map on projective space. Total on every point:
/// the image coordinates vanish simultaneously only at `b = 0`, which is
/// not a point.
pub fn h_m_projective(b: &ProjPoint, m: u32) -> Result<ProjPoint> {
    let coords = b.coords();
    let d = coords.len() - 1;
    if d == 0 {
        return ProjPoint::new(vec![BigInt::one()]);
    }
    let pair = generic_gh(d, m, 0)?;
    let values: Vec<BigInt> = coords.to_vec();
    let image = specialize_to_coeffs(pair.h(), &IntRing, d, &values);
    ProjPoint::new(image).map_err(|_| {
        Error::Internal("power map image vanished at a nonzero point".into())
    })
}

/// Conjugacy of the coefficient map to the root power map: applying
/// `h_m` to the signed symmetric functions of a tuple must match the
/// signed symmetric functions of the tuple's `m`-th powers.
pub fn conjugacy_check(u: &[BigRational], m: u32) -> Result<bool> {
    let lhs = h_m_affine(&sigma_bar(u), m)?;
    let powered: Vec<BigRational> = u.iter().map(|x| rat_pow(x, m)).collect();
    Ok(lhs == sigma_bar(&powered))
}

/// Semigroup law `h_m . h_n = h_{mn}` on sampled projective points.
pub fn semigroup_check(d: usize, m: u32, n: u32, trials: u32, seed: u64) -> Result<bool> {
    for trial in 0..trials {
        let mut rng = rng_for(seed, 0x5e3A_0000 + trial as u64);
        let b = ProjPoint::new(int_vec_some_nonzero(&mut rng, d + 1))?;
        let two_step = h_m_projective(&h_m_projective(&b, n)?, m)?;
        let one_step = h_m_projective(&b, m * n)?;
        if two_step != one_step {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restriction to the strata where leading coefficients vanish.
///
/// Killing `b_0, ..., b_{n-1}` in the degree-`d` denominator coordinates
/// and renaming `b_{n+i}` to `b_i` reproduces the degree-`(d-n)`
/// coordinates exactly, so `h_m` preserves each stratum and acts there as
/// the lower-dimensional map. Checked symbolically for every cut depth,
/// then numerically on sampled points of each stratum.
pub fn strata_restriction_check(d: usize, m: u32, trials: u32, seed: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidArgument("need d >= 1".into()));
    }
    let pair = generic_gh(d, m, 0)?;
    for n in 1..=d {
        let low = d - n;
        let target = crate::landen::h_vars(low);
        // Assignments follow h_vars(d) order: z, b_0, ..., b_d.
        let mut assign = Vec::with_capacity(d + 2);
        assign.push(MultiPolyZ::var(IntRing, target.clone(), "z")?);
        for _ in 0..n {
            assign.push(MultiPolyZ::zero(IntRing, target.clone()));
        }
        for i in 0..=low {
            assign.push(MultiPolyZ::var(IntRing, target.clone(), &format!("b{i}"))?);
        }
        let restricted =
            pair.h()
                .eval_into(&IntRing, &target, &assign, &|c: &BigInt| c.clone());
        let lower = if low == 0 {
            // Degree zero: the product of m constant factors.
            MultiPolyZ::var_pow(IntRing, target.clone(), "b0", m)?
        } else {
            generic_gh(low, m, 0)?.h().clone()
        };
        if restricted != lower {
            return Ok(false);
        }
        // Sampled stratum points: leading zeros persist and the tail is
        // the lower-dimensional image.
        for trial in 0..trials {
            let mut rng = rng_for(seed, 0x57A7_0000 + ((n as u64) << 8) + trial as u64);
            let tail = int_vec_some_nonzero(&mut rng, low + 1);
            let mut full = vec![BigInt::from(0); n];
            full.extend(tail.iter().cloned());
            let image = h_m_projective(&ProjPoint::new(full)?, m)?;
            let low_image = if low == 0 {
                ProjPoint::new(vec![BigInt::one()])?
            } else {
                h_m_projective(&ProjPoint::new(tail)?, m)?
            };
            let mut expect = vec![BigInt::from(0); n];
            expect.extend(low_image.coords().iter().cloned());
            if image != ProjPoint::new(expect)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The common zero locus of the image coordinates is exactly `b = 0`:
/// symbolically every coordinate dies at `b = 0`, and no sampled nonzero
/// point is sent to zero.
pub fn zero_locus_check(d: usize, m: u32, trials: u32, seed: u64) -> Result<bool> {
    let pair = generic_gh(d, m, 0)?;
    let zeros = vec![BigInt::from(0); d + 1];
    let at_zero = specialize_to_coeffs(pair.h(), &IntRing, d, &zeros);
    if at_zero.iter().any(|c| !IntRing.is_zero(c)) {
        return Ok(false);
    }
    for trial in 0..trials {
        let mut rng = rng_for(seed, 0x2E80_0000 + trial as u64);
        let b = ProjPoint::new(int_vec_some_nonzero(&mut rng, d + 1))?;
        // h_m_projective returns Internal if every coordinate vanished.
        if h_m_projective(&b, m).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

type MultiPolyZ = crate::multipoly::MultiPoly<IntRing>;
