//! Resultants and discriminants at stated formal degrees, and the
//! elimination-theoretic identities satisfied by the transformed pair.
//!
//! Every routine here works with descending coefficient slices whose
//! length fixes the formal degree: a slice of length `n+1` is treated as
//! a degree-`n` polynomial even if its leading entries vanish. That
//! convention matters; the identities below are only degree-homogeneous
//! when all four of `F_a`, `F_b`, `G`, `H` are taken at formal degree
//! `d`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::landen::{gh_vars, generic_gh, h_vars, specialize_to_coeffs, transform, CheckMode};
use crate::multipoly::{MultiPoly, PolyRing};
use crate::ratfunc::RatFunc;
use crate::rings::{Field, IntRing, RatField, Ring};
use crate::sample;

/// Fraction-free Bareiss determinant with row pivoting. Exact over any
/// integral domain: every division is by a previously computed minor and
/// divides exactly; a failed division therefore signals a broken ring
/// implementation, not bad input.
pub fn det_bareiss<R: Ring>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> Result<R::Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(
            "determinant needs a square matrix".into(),
        ));
    }
    let mut flipped = false;
    let mut prev = ring.one();
    for p in 0..n - 1 {
        if ring.is_zero(&m[p][p]) {
            match (p + 1..n).find(|&r| !ring.is_zero(&m[r][p])) {
                Some(r) => {
                    m.swap(p, r);
                    flipped = !flipped;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let t = ring.sub(&ring.mul(&m[i][j], &m[p][p]), &ring.mul(&m[i][p], &m[p][j]));
                m[i][j] = ring.exact_div(&t, &prev).ok_or_else(|| {
                    Error::Internal("fraction-free elimination hit an inexact division".into())
                })?;
            }
            m[i][p] = ring.zero();
        }
        prev = m[p][p].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if flipped { ring.neg(&det) } else { det })
}

/// Resultant of `f` and `g` as the determinant of the Sylvester matrix
/// built at the formal degrees implied by the slice lengths. The empty
/// matrix (both constants) gives `1`.
pub fn sylvester_resultant<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Result<R::Elem> {
    if f.is_empty() || g.is_empty() {
        return Err(Error::InvalidArgument(
            "resultant needs nonempty coefficient lists".into(),
        ));
    }
    let n = f.len() - 1;
    let p = g.len() - 1;
    let size = n + p;
    if size == 0 {
        return Ok(ring.one());
    }
    let mut mat = vec![vec![ring.zero(); size]; size];
    for r in 0..p {
        for (c, coeff) in f.iter().enumerate() {
            mat[r][r + c] = coeff.clone();
        }
    }
    for r in 0..n {
        for (c, coeff) in g.iter().enumerate() {
            mat[p + r][r + c] = coeff.clone();
        }
    }
    det_bareiss(ring, mat)
}

/// Field shortcut for the resultant of descending coefficient slices.
/// Over a field every pivot division is by a nonzero element, so this
/// cannot fail.
pub fn resultant_desc<F: Field>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> F::Elem {
    sylvester_resultant(field, f, g).expect("field elimination cannot fail")
}

/// Derivative of a descending coefficient slice at formal degree
/// `len - 1`; the result has formal degree one less.
pub fn derivative_desc<R: Ring>(ring: &R, f: &[R::Elem]) -> Vec<R::Elem> {
    let n = f.len() - 1;
    (0..n)
        .map(|i| ring.mul(&f[i], &ring.from_i64((n - i) as i64)))
        .collect()
}

/// Discriminant at the formal degree `f.len() - 1`, via
/// `Res(f, f') = (-1)^(n(n-1)/2) * lc(f) * Disc(f)` with exact division
/// by the leading coefficient. Formal degree 1 gives `1`.
pub fn discriminant<R: Ring>(ring: &R, f: &[R::Elem]) -> Result<R::Elem> {
    if f.len() < 2 {
        return Err(Error::InvalidArgument(
            "discriminant needs formal degree >= 1".into(),
        ));
    }
    let n = f.len() - 1;
    if ring.is_zero(&f[0]) {
        return Err(Error::NotDivisible(
            "leading coefficient is zero at the stated formal degree".into(),
        ));
    }
    let fp = derivative_desc(ring, f);
    let res = sylvester_resultant(ring, f, &fp)?;
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        ring.neg(&res)
    } else {
        res
    };
    ring.exact_div(&signed, &f[0]).ok_or_else(|| {
        Error::NotDivisible("Res(f, f') is not divisible by the leading coefficient".into())
    })
}

fn ratio_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<MultiPoly<IntRing>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MultiPoly<IntRing>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The exact quotient `Disc(H) / Disc(F_b)` in `Z[b]`, both discriminants
/// at formal degree `d`. Lives in the variable set of `H` with the `z`
/// slot unused. The division is exact for every `(d, m)`; a failure is a
/// broken invariant, not bad input.
pub fn disc_ratio(d: usize, m: u32) -> Result<Arc<MultiPoly<IntRing>>> {
    if d < 1 {
        return Err(Error::InvalidArgument("disc_ratio needs d >= 1".into()));
    }
    if let Some(hit) = ratio_cache().lock().unwrap().get(&(d, m)) {
        return Ok(hit.clone());
    }
    let pair = generic_gh(d, m, 0)?;
    let hv = h_vars(d);
    let ring = PolyRing::new(IntRing, hv.clone());
    let h_desc: Vec<MultiPoly<IntRing>> = (0..=d).map(|j| pair.h_coeff(j)).collect();
    let fb_desc: Vec<MultiPoly<IntRing>> = (0..=d)
        .map(|i| MultiPoly::var(IntRing, hv.clone(), &format!("b{i}")).unwrap())
        .collect();
    let disc_h = discriminant(&ring, &h_desc)?;
    let disc_f = discriminant(&ring, &fb_desc)?;
    let ratio = disc_h.exact_divide(&disc_f).map_err(|_| {
        Error::NotDivisible(
            "discriminant of the transformed denominator is not divisible by the input discriminant"
                .into(),
        )
    })?;
    let ratio = Arc::new(ratio);
    ratio_cache().lock().unwrap().insert((d, m), ratio.clone());
    Ok(ratio)
}

/// Evaluate [`disc_ratio`] at concrete denominator coefficients.
pub fn disc_ratio_at(d: usize, m: u32, b: &[BigRational]) -> Result<BigRational> {
    let ratio = disc_ratio(d, m)?;
    let field = RatField;
    let mut values = Vec::with_capacity(d + 2);
    values.push(BigRational::zero());
    values.extend(b.iter().cloned());
    Ok(ratio.eval_points(&field, &values, &|c: &BigInt| BigRational::from(c.clone())))
}

fn identity_sign(d: usize, m: u32, k: u32) -> i64 {
    if (d * (m - k + 1) as usize) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Verify the resultant identity for the transformed pair:
///
/// ```text
///   Res(G, H) = (-1)^(d(m-k+1)) b_0^(m-1+k) b_d^(m-1-k)
///                 * Res(F_a, F_b) * Disc(H)/Disc(F_b),
/// ```
///
/// all resultants and discriminants at formal degree `d`. For `k = 0`
/// the `b_0` exponent is the familiar `m-1`; the extra `b_0^k` for
/// `k >= 1` is forced by bidegree bookkeeping (the left side is
/// `b`-homogeneous of degree `d(2m-1)`, and the weight grading pins the
/// correction to exactly `b_0^k`).
///
/// Symbolic mode compares both sides as polynomials in `Z[a, b]` and is
/// cost-guarded to `d <= 2`, `m <= 3`; sampled mode compares exact
/// rational specializations.
pub fn verify_resultant_identity(d: usize, m: u32, k: u32, mode: CheckMode) -> Result<bool> {
    if m < 1 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and 0 <= k < m, got m={m}, k={k}"
        )));
    }
    if d < 1 {
        return Err(Error::InvalidArgument("identity needs d >= 1".into()));
    }
    let pair = generic_gh(d, m, k)?;
    let sign = identity_sign(d, m, k);
    match mode {
        CheckMode::Symbolic => {
            if d > 2 || m > 3 {
                return Err(Error::GuardExceeded(format!(
                    "symbolic resultant guard: d <= 2 and m <= 3 (got d={d}, m={m})"
                )));
            }
            let gv = gh_vars(d);
            let ring = PolyRing::new(IntRing, gv.clone());
            let g_desc: Vec<MultiPoly<IntRing>> = (0..=d).map(|j| pair.g_coeff(j)).collect();
            let hg = pair.h_in_gh_vars();
            let h_desc: Vec<MultiPoly<IntRing>> = (0..=d)
                .map(|j| hg.coefficient_of("z", (d - j) as u32).unwrap())
                .collect();
            let lhs = sylvester_resultant(&ring, &g_desc, &h_desc)?;

            let mk_var = |name: &str| MultiPoly::var(IntRing, gv.clone(), name).unwrap();
            let fa_desc: Vec<MultiPoly<IntRing>> =
                (0..=d).map(|i| mk_var(&format!("a{i}"))).collect();
            let fb_desc: Vec<MultiPoly<IntRing>> =
                (0..=d).map(|i| mk_var(&format!("b{i}"))).collect();
            let res_ab = sylvester_resultant(&ring, &fa_desc, &fb_desc)?;
            let ratio = disc_ratio(d, m)?.embed_into(&gv)?;
            let rhs = res_ab
                .mul(&ratio)
                .mul(&mk_var("b0").pow(m - 1 + k))
                .mul(&mk_var(&format!("b{d}")).pow(m - 1 - k))
                .mul_scalar(&BigInt::from(sign));
            Ok(lhs == rhs)
        }
        CheckMode::Sampled { trials, seed } => {
            let field = RatField;
            let sign_q = BigRational::from(BigInt::from(sign));
            for trial in 0..trials {
                let mut rng = sample::rng_for(seed, 0x7e50 + trial as u64);
                let a = sample::rat_vec(&mut rng, d + 1);
                let b = sample::rat_vec(&mut rng, d + 1);
                let mut values = a.clone();
                values.extend(b.iter().cloned());
                let g_spec = specialize_to_coeffs(pair.g(), &field, d, &values);
                let h_spec = specialize_to_coeffs(pair.h(), &field, d, &b);
                let lhs = resultant_desc(&field, &g_spec, &h_spec);

                let res_ab = resultant_desc(&field, &a, &b);
                let ratio = disc_ratio_at(d, m, &b)?;
                let rhs = &sign_q
                    * pow_rational(&b[0], (m - 1 + k) as i64)
                    * pow_rational(&b[d], (m - 1 - k) as i64)
                    * res_ab
                    * ratio;
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    assert!(e >= 0);
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

/// `Res(G, H)` for the special pair `F_a = z^d`, `F_b = (z-1)^d`,
/// computed over the integers at formal degree `d`. Equals
/// `(-1)^d m^(d(d-1))` for every `k`.
pub fn special_pair_resultant(d: usize, m: u32, k: u32) -> Result<BigInt> {
    let pair = generic_gh(d, m, k)?;
    let ring = IntRing;
    let mut a = vec![BigInt::zero(); d + 1];
    a[0] = BigInt::one();
    // (z - 1)^d: b_i = (-1)^i C(d, i).
    let mut b = Vec::with_capacity(d + 1);
    let mut binom = BigInt::one();
    for i in 0..=d {
        let s = if i % 2 == 1 { -binom.clone() } else { binom.clone() };
        b.push(s);
        binom = binom * BigInt::from((d - i) as i64) / BigInt::from((i + 1) as i64);
    }
    let mut values = a;
    values.extend(b.iter().cloned());
    let g_spec = specialize_to_coeffs(pair.g(), &ring, d, &values);
    let h_spec = specialize_to_coeffs(pair.h(), &ring, d, &b);
    sylvester_resultant(&ring, &g_spec, &h_spec)
}

/// Specialize the generic denominator at `F_b = b0 * prod (z - beta_i)`
/// and compare with `(-1)^((m+1)d) b0^m * prod (z - beta_i^m)`, exactly.
pub fn h_factorization_check(b0: &BigRational, roots: &[BigRational], m: u32) -> Result<bool> {
    let d = roots.len();
    let pair = generic_gh(d, m, 0)?;
    let field = RatField;
    let b = coeffs_from_roots(b0, roots);
    let got = specialize_to_coeffs(pair.h(), &field, d, &b);

    let mth: Vec<BigRational> = roots.iter().map(|r| pow_rational(r, m as i64)).collect();
    let lead = pow_rational(b0, m as i64);
    let sign = if ((m as usize + 1) * d) % 2 == 1 {
        -lead
    } else {
        lead
    };
    let want = coeffs_from_roots(&sign, &mth);
    Ok(got == want)
}

/// Descending coefficients of `lead * prod (z - r_i)`.
pub fn coeffs_from_roots(lead: &BigRational, roots: &[BigRational]) -> Vec<BigRational> {
    let mut coeffs = vec![lead.clone()];
    for r in roots {
        coeffs.push(BigRational::zero());
        for i in (1..coeffs.len()).rev() {
            let t = &coeffs[i - 1] * r;
            coeffs[i] -= t;
        }
    }
    coeffs
}

/// The rational-certificate version of denominator nondegeneracy:
/// `b_0 != 0`, `b_d != 0`, and the discriminant quotient does not vanish
/// at `b`. No root-finding; works entirely over the rationals.
pub fn is_m_nondegenerate(b: &[BigRational], m: u32) -> Result<bool> {
    if b.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient list".into()));
    }
    let d = b.len() - 1;
    if b[0].is_zero() || b[d].is_zero() {
        return Ok(false);
    }
    if d == 0 {
        return Ok(true);
    }
    Ok(!disc_ratio_at(d, m, b)?.is_zero())
}

/// True exactly when the transform keeps the degree at `d`: the formal
/// resultant of the specialized pair is nonzero. Cross-checked against
/// the reduced transform's true degree.
pub fn degree_preservation_check<F: Field>(phi: &RatFunc<F>, m: u32, k: u32) -> Result<bool> {
    let t = transform(phi, m, k)?;
    let by_degree = t.reduced.true_degree() == phi.d;
    if by_degree != t.degree_preserved {
        return Err(Error::Internal(format!(
            "resultant test ({}) disagrees with reduced degree test ({})",
            t.degree_preserved, by_degree
        )));
    }
    Ok(t.degree_preserved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::VarSet;
    use crate::rings::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn sylvester_matches_classical_small_cases() {
        let f = [BigInt::from(1), BigInt::from(-1)];
        let g = [BigInt::from(1), BigInt::from(-2)];
        assert_eq!(
            sylvester_resultant(&IntRing, &f, &g).unwrap(),
            BigInt::from(-1)
        );

        // Generic linear pair over Z[a, b].
        let vars = VarSet::new(&["a0", "a1", "b0", "b1"]);
        let ring = PolyRing::new(IntRing, vars.clone());
        let v = |n: &str| MultiPoly::var(IntRing, vars.clone(), n).unwrap();
        let res = sylvester_resultant(&ring, &[v("a0"), v("a1")], &[v("b0"), v("b1")]).unwrap();
        let want = v("a0").mul(&v("b1")).sub(&v("a1").mul(&v("b0")));
        assert_eq!(res, want);
    }

    #[test]
    fn resultant_is_multiplicative_in_the_first_argument() {
        let field = RatField;
        for trial in 0..6u64 {
            let mut rng = sample::rng_for(41, trial);
            let mut f = sample::rat_vec_some_nonzero(&mut rng, 3);
            let mut g = sample::rat_vec_some_nonzero(&mut rng, 3);
            let mut h = sample::rat_vec_some_nonzero(&mut rng, 3);
            // Nonzero leading coefficients keep formal and true degrees equal.
            for c in [&mut f, &mut g, &mut h] {
                if c[0].is_zero() {
                    c[0] = BigRational::one();
                }
            }
            let prod = poly_mul(&field, &f, &g);
            let lhs = resultant_desc(&field, &prod, &h);
            let rhs = resultant_desc(&field, &f, &h) * resultant_desc(&field, &g, &h);
            assert_eq!(lhs, rhs);
        }
    }

    fn poly_mul<F: Field>(field: &F, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        out
    }

    #[test]
    fn quadratic_discriminant_formula() {
        let vars = VarSet::new(&["A", "B", "C"]);
        let ring = PolyRing::new(IntRing, vars.clone());
        let v = |n: &str| MultiPoly::var(IntRing, vars.clone(), n).unwrap();
        let disc = discriminant(&ring, &[v("A"), v("B"), v("C")]).unwrap();
        let want = v("B")
            .mul(&v("B"))
            .sub(&v("A").mul(&v("C")).mul_scalar(&BigInt::from(4)));
        assert_eq!(disc, want);

        // Formal degree 1 is the empty product.
        let one = discriminant(&ring, &[v("A"), v("B")]).unwrap();
        assert!(ring.is_one(&one));

        // Zero leading coefficient is rejected.
        let zero = MultiPoly::zero(IntRing, vars.clone());
        assert!(matches!(
            discriminant(&ring, &[zero, v("B"), v("C")]),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn transformed_denominator_discriminant_for_the_quadratic() {
        // d=2, m=2: Disc(H) = b1^2 (b1^2 - 4 b2 b0), ratio b1^2.
        let d = 2;
        let pair = generic_gh(d, 2, 0).unwrap();
        let hv = h_vars(d);
        let ring = PolyRing::new(IntRing, hv.clone());
        let h_desc: Vec<MultiPoly<IntRing>> = (0..=d).map(|j| pair.h_coeff(j)).collect();
        let disc_h = discriminant(&ring, &h_desc).unwrap();
        let v = |n: &str| MultiPoly::var(IntRing, hv.clone(), n).unwrap();
        let b1sq = v("b1").mul(&v("b1"));
        let want = b1sq.mul(
            &b1sq.sub(&v("b2").mul(&v("b0")).mul_scalar(&BigInt::from(4))),
        );
        assert_eq!(disc_h, want);

        let ratio = disc_ratio(2, 2).unwrap();
        assert_eq!(*ratio, b1sq);
    }

    #[test]
    fn ratio_is_one_in_degree_one() {
        let one = MultiPoly::one(IntRing, h_vars(1));
        for m in 1..=4 {
            let ratio = disc_ratio(1, m).unwrap();
            assert_eq!(*ratio, one, "ratio(1, {m}) = {}", ratio.to_text());
        }
    }

    #[test]
    fn ratio_agrees_with_numeric_discriminant_quotient() {
        // Independent route: evaluate both discriminants at rational
        // points and divide, avoiding the symbolic exact division.
        let field = RatField;
        for (d, m) in [(2usize, 3u32), (3, 2)] {
            let pair = generic_gh(d, m, 0).unwrap();
            for trial in 0..8u64 {
                let mut rng = sample::rng_for(17, trial);
                let b = sample::rat_vec_some_nonzero(&mut rng, d + 1);
                let fb_disc = {
                    if b[0].is_zero() {
                        continue;
                    }
                    discriminant(&field, &b).unwrap()
                };
                if fb_disc.is_zero() {
                    continue;
                }
                let h_spec = specialize_to_coeffs(pair.h(), &field, d, &b);
                let h_disc = discriminant(&field, &h_spec).unwrap();
                assert_eq!(disc_ratio_at(d, m, &b).unwrap(), h_disc / fb_disc);
            }
        }
    }

    #[test]
    fn resultant_identity_symbolic_small_grid() {
        for d in 1..=2usize {
            for m in 1..=3u32 {
                for k in 0..m {
                    assert!(
                        verify_resultant_identity(d, m, k, CheckMode::Symbolic).unwrap(),
                        "identity fails at d={d}, m={m}, k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn resultant_identity_sampled() {
        assert!(verify_resultant_identity(
            3,
            2,
            1,
            CheckMode::Sampled {
                trials: 12,
                seed: 23
            }
        )
        .unwrap());
        assert!(verify_resultant_identity(
            2,
            4,
            3,
            CheckMode::Sampled {
                trials: 12,
                seed: 24
            }
        )
        .unwrap());
    }

    #[test]
    fn special_pair_value() {
        assert_eq!(special_pair_resultant(2, 2, 0).unwrap(), BigInt::from(4));
        assert_eq!(special_pair_resultant(1, 2, 0).unwrap(), BigInt::from(-1));
        assert_eq!(special_pair_resultant(1, 2, 1).unwrap(), BigInt::from(-1));
        // (-1)^d m^(d(d-1)) at d=2, m=3.
        assert_eq!(special_pair_resultant(2, 3, 0).unwrap(), BigInt::from(9));
    }

    #[test]
    fn factorization_of_the_transformed_denominator() {
        let one = BigRational::one();
        assert!(h_factorization_check(&one, &[q("1"), q("2")], 2).unwrap());
        assert!(h_factorization_check(&q("3"), &[q("1/2"), q("-2"), q("5")], 3).unwrap());
        assert!(h_factorization_check(&one, &[q("0")], 4).unwrap());
        // Degenerate pair: roots 1 and -1 share their square.
        assert!(h_factorization_check(&one, &[q("1"), q("-1")], 2).unwrap());
    }

    #[test]
    fn coeffs_from_roots_expands_products() {
        let got = coeffs_from_roots(&BigRational::one(), &[q("1"), q("2")]);
        assert_eq!(got, vec![q("1"), q("-3"), q("2")]);
    }

    #[test]
    fn nondegeneracy_certificate() {
        assert!(is_m_nondegenerate(&[q("1"), q("1"), q("1")], 2).unwrap());
        assert!(!is_m_nondegenerate(&[q("1"), q("0"), q("1")], 2).unwrap());
        assert!(!is_m_nondegenerate(&[q("1"), q("0"), q("0")], 2).unwrap());
        assert!(!is_m_nondegenerate(&[q("0"), q("1"), q("1")], 2).unwrap());
    }

    #[test]
    fn degree_preservation_matches_reduction() {
        let field = RatField;
        // z^2 loses degree under (2, 0): the transform is z.
        let phi = RatFunc::new(
            field.clone(),
            2,
            vec![q("1"), q("0"), q("0")],
            vec![q("0"), q("0"), q("1")],
        )
        .unwrap();
        assert!(!degree_preservation_check(&phi, 2, 0).unwrap());
        assert!(degree_preservation_check(&phi, 1, 0).unwrap());

        let phi2 = RatFunc::new(
            field,
            2,
            vec![q("1"), q("0"), q("1")],
            vec![q("1"), q("1"), q("1")],
        )
        .unwrap();
        assert!(degree_preservation_check(&phi2, 2, 0).unwrap());
    }

    #[test]
    fn sampled_specializations_agree_with_preservation_flag() {
        for trial in 0..10u64 {
            let mut rng = sample::rng_for(7, trial);
            let phi = sample::random_ratfunc(&mut rng, 2);
            for (m, k) in [(2u32, 0u32), (2, 1), (3, 2)] {
                // degree_preservation_check errors if its two routes split.
                let _ = degree_preservation_check(&phi, m, k).unwrap();
            }
        }
    }
}
