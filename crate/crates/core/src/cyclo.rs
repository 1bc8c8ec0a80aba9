//! The ring `Z[zeta_m]` presented as `Z[x]/(Phi_m(x))`.
//!
//! Elements store their conductor so cross-conductor mixing is caught at
//! run time. Conductors stay small here (roots of unity of order a
//! transform degree), so dense coefficient vectors are fine.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rings::{parse_bigint, Ring};

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|t| gcd_u32(*t, m) == 1).count() as u32
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Quotient of dense ascending integer polynomials, exact by construction
/// when the divisor is monic and divides.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "monic divisor");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        assert!(rem.iter().all(|c| c.is_zero()), "exact division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let v = &rem[i - dn + j] - &c * dc;
            rem[i - dn + j] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "exact division");
    quot
}

/// `Phi_m` as dense ascending coefficients, computed by dividing `x^m - 1`
/// by the cyclotomic polynomials of the proper divisors of `m`. Cached.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let mut num = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut result = num;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            result = div_exact_monic(&result, &phi_d);
        }
    }
    let arc = Arc::new(result);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

/// An element of `Z[zeta_m]`, coordinates in the power basis
/// `1, zeta, ..., zeta^(phi(m)-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloInt {
    pub conductor: u32,
    pub coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn from_int(m: u32, n: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); euler_phi(m) as usize];
        coeffs[0] = BigInt::from(n);
        CycloInt { conductor: m, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `zeta_m^t` for any integer exponent `t`.
pub fn zeta_pow(m: u32, t: i64) -> CycloInt {
    let phi = euler_phi(m) as usize;
    let e = t.rem_euclid(m as i64) as usize;
    let mut dense = vec![BigInt::zero(); e + 1];
    dense[e] = BigInt::one();
    CycloInt {
        conductor: m,
        coeffs: reduce_mod_phi(dense, m, phi),
    }
}

/// Reduce a dense ascending polynomial in `zeta` modulo `Phi_m`.
fn reduce_mod_phi(mut dense: Vec<BigInt>, m: u32, phi: usize) -> Vec<BigInt> {
    let phi_poly = cyclotomic_polynomial(m);
    while dense.len() > phi {
        let top = dense.len() - 1;
        let c = std::mem::replace(&mut dense[top], BigInt::zero());
        if !c.is_zero() {
            // x^top = x^(top-phi) * (x^phi - Phi_m) since Phi_m is monic.
            for (j, pc) in phi_poly.iter().take(phi).enumerate() {
                let v = &dense[top - phi + j] - &c * pc;
                dense[top - phi + j] = v;
            }
        }
        dense.pop();
    }
    dense.resize(phi, BigInt::zero());
    dense
}

fn check_conductors(a: &CycloInt, b: &CycloInt) -> Result<()> {
    if a.conductor != b.conductor {
        return Err(Error::ConductorMismatch(a.conductor, b.conductor));
    }
    Ok(())
}

/// Checked arithmetic entry points.
pub fn cyclo_add(a: &CycloInt, b: &CycloInt) -> Result<CycloInt> {
    check_conductors(a, b)?;
    Ok(CycloRing::new(a.conductor).add(a, b))
}

pub fn cyclo_mul(a: &CycloInt, b: &CycloInt) -> Result<CycloInt> {
    check_conductors(a, b)?;
    Ok(CycloRing::new(a.conductor).mul(a, b))
}

/// Apply the automorphism `zeta -> zeta^j`; `j` must be coprime to `m`.
pub fn galois_apply(a: &CycloInt, j: i64) -> Result<CycloInt> {
    let m = a.conductor;
    let jr = j.rem_euclid(m as i64) as u32;
    if gcd_u32(jr, m) != 1 {
        return Err(Error::InvalidArgument(format!(
            "galois exponent {j} is not coprime to conductor {m}"
        )));
    }
    let ring = CycloRing::new(m);
    let mut acc = ring.zero();
    for (i, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = zeta_pow(m, jr as i64 * i as i64);
        for tc in term.coeffs.iter_mut() {
            *tc = &*tc * c;
        }
        acc = ring.add(&acc, &term);
    }
    Ok(acc)
}

/// Extract the rational integer a cyclotomic element represents, if any.
pub fn descend_to_integer(a: &CycloInt) -> Result<BigInt> {
    if a.coeffs[1..].iter().all(|c| c.is_zero()) {
        Ok(a.coeffs[0].clone())
    } else {
        Err(Error::NotRational(format!("{a:?}")))
    }
}

/// The ring `Z[zeta_m]` as a `Ring` value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycloRing {
    m: u32,
}

impl CycloRing {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        CycloRing { m }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn zeta(&self, t: i64) -> CycloInt {
        zeta_pow(self.m, t)
    }
}

impl Ring for CycloRing {
    type Elem = CycloInt;

    fn zero(&self) -> CycloInt {
        CycloInt::from_int(self.m, 0)
    }
    fn one(&self) -> CycloInt {
        CycloInt::from_int(self.m, 1)
    }
    fn is_zero(&self, a: &CycloInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        debug_assert_eq!(a.conductor, self.m);
        debug_assert_eq!(b.conductor, self.m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycloInt { conductor: self.m, coeffs }
    }
    fn neg(&self, a: &CycloInt) -> CycloInt {
        CycloInt {
            conductor: self.m,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }
    fn mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        debug_assert_eq!(a.conductor, self.m);
        debug_assert_eq!(b.conductor, self.m);
        let phi = euler_phi(self.m) as usize;
        let mut dense = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let v = &dense[i + j] + x * y;
                dense[i + j] = v;
            }
        }
        CycloInt {
            conductor: self.m,
            coeffs: reduce_mod_phi(dense, self.m, phi),
        }
    }
    fn from_i64(&self, n: i64) -> CycloInt {
        CycloInt::from_int(self.m, n)
    }
    fn from_bigint(&self, n: &BigInt) -> CycloInt {
        let mut e = self.zero();
        e.coeffs[0] = n.clone();
        e
    }
    fn exact_div(&self, a: &CycloInt, b: &CycloInt) -> Option<CycloInt> {
        // Only division by rational integers is needed here.
        let d = descend_to_integer(b).ok()?;
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(a.coeffs.len());
        for c in &a.coeffs {
            let q = IntRingDiv::div(c, &d)?;
            out.push(q);
        }
        Some(CycloInt { conductor: self.m, coeffs: out })
    }
    fn elem_string(&self, a: &CycloInt) -> String {
        let inner: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", inner.join(","))
    }
    fn elem_json(&self, a: &CycloInt) -> Value {
        Value::Array(
            a.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }
    fn elem_from_json(&self, v: &Value) -> Result<CycloInt> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected coefficient list, got {v}")))?;
        let phi = euler_phi(self.m) as usize;
        if arr.len() != phi {
            return Err(Error::Parse(format!(
                "expected {phi} coordinates for conductor {}, got {}",
                self.m,
                arr.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(phi);
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::Parse(format!("expected string, got {item}")))?;
            coeffs.push(parse_bigint(s)?);
        }
        Ok(CycloInt { conductor: self.m, coeffs })
    }
    fn label(&self) -> String {
        format!("Z[zeta_{}]", self.m)
    }
}

struct IntRingDiv;
impl IntRingDiv {
    fn div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
        use num_integer::Integer;
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_string(m: u32) -> String {
        let p = cyclotomic_polynomial(m);
        let terms: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        terms.join(",")
    }

    #[test]
    fn classical_cyclotomic_polynomials() {
        assert_eq!(phi_string(1), "-1,1");
        assert_eq!(phi_string(2), "1,1");
        assert_eq!(phi_string(3), "1,1,1");
        assert_eq!(phi_string(4), "1,0,1");
        assert_eq!(phi_string(6), "1,-1,1");
        assert_eq!(phi_string(12), "1,0,-1,0,1");
    }

    #[test]
    fn cyclotomic_degree_and_monic() {
        for m in 1..=12u32 {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.len() as u32 - 1, euler_phi(m), "degree of Phi_{m}");
            assert!(p.last().unwrap().is_one(), "Phi_{m} monic");
        }
    }

    #[test]
    fn product_over_divisors_is_xm_minus_one() {
        for m in 1..=12u32 {
            let mut prod = vec![BigInt::one()];
            for d in 1..=m {
                if m % d == 0 {
                    let phi_d = cyclotomic_polynomial(d);
                    let mut next = vec![BigInt::zero(); prod.len() + phi_d.len() - 1];
                    for (i, a) in prod.iter().enumerate() {
                        for (j, b) in phi_d.iter().enumerate() {
                            let v = &next[i + j] + a * b;
                            next[i + j] = v;
                        }
                    }
                    prod = next;
                }
            }
            let mut expect = vec![BigInt::zero(); (m + 1) as usize];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "divisor product at m={m}");
        }
    }

    #[test]
    fn zeta_powers_cycle_and_multiply() {
        for m in 1..=12u32 {
            let ring = CycloRing::new(m);
            assert_eq!(zeta_pow(m, m as i64), ring.one());
            assert_eq!(zeta_pow(m, -1), zeta_pow(m, m as i64 - 1));
            for s in 0..m as i64 {
                for t in 0..m as i64 {
                    let prod = ring.mul(&zeta_pow(m, s), &zeta_pow(m, t));
                    assert_eq!(prod, zeta_pow(m, s + t));
                }
            }
        }
    }

    #[test]
    fn product_of_all_roots() {
        // prod_{t=0}^{m-1} zeta^t = (-1)^(m+1)
        for m in 1..=12u32 {
            let ring = CycloRing::new(m);
            let mut prod = ring.one();
            for t in 0..m as i64 {
                prod = ring.mul(&prod, &zeta_pow(m, t));
            }
            let expect = if m % 2 == 0 { -1 } else { 1 };
            assert_eq!(prod, ring.from_i64(expect), "m={m}");
        }
    }

    #[test]
    fn root_of_unity_orthogonality() {
        // sum_{t=0}^{m-1} zeta^(j t) = m when m | j, else 0.
        for m in 1..=12u32 {
            let ring = CycloRing::new(m);
            for j in -(3 * m as i64)..=(3 * m as i64) {
                let mut sum = ring.zero();
                for t in 0..m as i64 {
                    sum = ring.add(&sum, &zeta_pow(m, j * t));
                }
                let expect = if j.rem_euclid(m as i64) == 0 {
                    ring.from_i64(m as i64)
                } else {
                    ring.zero()
                };
                assert_eq!(sum, expect, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn galois_is_ring_homomorphism() {
        let m = 12u32;
        let ring = CycloRing::new(m);
        let samples = [
            zeta_pow(m, 1),
            ring.add(&zeta_pow(m, 5), &ring.from_i64(3)),
            ring.sub(&zeta_pow(m, 7), &zeta_pow(m, 2)),
        ];
        for j in [1i64, 5, 7, 11] {
            for x in &samples {
                for y in &samples {
                    let lhs = galois_apply(&ring.add(x, y), j).unwrap();
                    let rhs = ring.add(&galois_apply(x, j).unwrap(), &galois_apply(y, j).unwrap());
                    assert_eq!(lhs, rhs);
                    let lhs = galois_apply(&ring.mul(x, y), j).unwrap();
                    let rhs = ring.mul(&galois_apply(x, j).unwrap(), &galois_apply(y, j).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Composition of automorphisms multiplies the exponents.
        let x = ring.add(&zeta_pow(m, 1), &zeta_pow(m, 10));
        let once = galois_apply(&galois_apply(&x, 5).unwrap(), 7).unwrap();
        let direct = galois_apply(&x, 35).unwrap();
        assert_eq!(once, direct);
        assert!(galois_apply(&x, 4).is_err());
    }

    #[test]
    fn descent_and_division() {
        let ring = CycloRing::new(4);
        assert_eq!(descend_to_integer(&ring.from_i64(-9)).unwrap(), BigInt::from(-9));
        assert!(matches!(
            descend_to_integer(&zeta_pow(4, 1)),
            Err(Error::NotRational(_))
        ));
        let x = ring.mul(&zeta_pow(4, 1), &ring.from_i64(6));
        let q = ring.exact_div(&x, &ring.from_i64(3)).unwrap();
        assert_eq!(q, ring.mul(&zeta_pow(4, 1), &ring.from_i64(2)));
        assert_eq!(ring.exact_div(&x, &ring.from_i64(4)), None);
    }

    #[test]
    fn conductor_mixing_is_rejected() {
        let a = CycloInt::from_int(3, 1);
        let b = CycloInt::from_int(4, 1);
        assert!(matches!(cyclo_add(&a, &b), Err(Error::ConductorMismatch(3, 4))));
        assert!(matches!(cyclo_mul(&a, &b), Err(Error::ConductorMismatch(3, 4))));
    }
}
