//! Exact coefficient rings behind the polynomial layer.
//!
//! A `Ring` is a value describing the ring; elements are a separate
//! associated type. This keeps rings with runtime parameters (prime
//! fields, cyclotomic rings) in the same machinery as `Z` and `Q`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// A commutative ring with exact arithmetic and decidable exact division.
pub trait Ring: Clone + PartialEq + Eq + std::fmt::Debug {
    type Elem: Clone + PartialEq + Eq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Exact division: `Some(q)` with `a = q*b` when such `q` exists.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical text form of an element.
    fn elem_string(&self, a: &Self::Elem) -> String;

    /// JSON encoding of an element (decimal strings, never floats).
    fn elem_json(&self, a: &Self::Elem) -> Value;

    /// Inverse of `elem_json`.
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    /// Ring label used in serialized headers, e.g. `"Z"`, `"Q"`, `"Fp:5"`.
    fn label(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// True when the element is a unit with known inverse times itself one.
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for characteristic zero, otherwise the prime characteristic.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

fn json_str(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("expected string coefficient, got {v}")))
}

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Accepts `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((n, d)) => {
            let den = parse_bigint(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_bigint(n)?, den))
        }
    }
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The rational integers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct IntRing;

impl Ring for IntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn elem_string(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn elem_json(&self, a: &BigInt) -> Value {
        Value::String(a.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigInt> {
        parse_bigint(json_str(v)?)
    }
    fn label(&self) -> String {
        "Z".into()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RatField;

impl Ring for RatField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn elem_string(&self, a: &BigRational) -> String {
        rational_string(a)
    }
    fn elem_json(&self, a: &BigRational) -> Value {
        Value::String(rational_string(a))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        parse_rational(json_str(v)?)
    }
    fn label(&self) -> String {
        "Q".into()
    }
}

impl Field for RatField {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Trial-division primality, adequate for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The field with `p` elements, residues stored in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below u64 modulus"),
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i128;
        (((n as i128) % p + p) % p) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
    fn elem_string(&self, a: &u64) -> String {
        a.to_string()
    }
    fn elem_json(&self, a: &u64) -> Value {
        Value::String(a.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        let s = json_str(v)?;
        let n = s
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad residue {s:?}: {e}")))?;
        Ok(self.from_i64(n))
    }
    fn label(&self) -> String {
        format!("Fp:{}", self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on signed 128-bit, safe for any u64 prime.
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime");
        let p = self.p as i128;
        Some(((t0 % p + p) % p) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Content of an integer vector: gcd of absolute values, 0 for the zero vector.
pub fn int_content(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_exact_div() {
        let r = IntRing;
        let a = r.from_i64(42);
        let b = r.from_i64(-7);
        assert_eq!(r.exact_div(&a, &b), Some(r.from_i64(-6)));
        assert_eq!(r.exact_div(&r.from_i64(43), &b), None);
        assert_eq!(r.exact_div(&a, &r.zero()), None);
    }

    #[test]
    fn rational_parse_roundtrip() {
        let f = RatField;
        for s in ["0", "-3", "5/3", "-7/2"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(rational_string(&q), s);
        }
        // Normalization: sign moves to the numerator, fraction reduced.
        assert_eq!(rational_string(&parse_rational("4/-6").unwrap()), "-2/3");
        let half = parse_rational("1/2").unwrap();
        assert_eq!(f.mul(&half, &f.from_i64(2)), f.one());
    }

    #[test]
    fn prime_field_basics() {
        assert!(matches!(PrimeField::new(6), Err(Error::NotPrime(6))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.from_i64(-1), 4);
        assert_eq!(f5.add(&3, &4), 2);
        assert_eq!(f5.mul(&3, &4), 2);
        for a in 1..5u64 {
            let inv = f5.inv(&a).unwrap();
            assert_eq!(f5.mul(&a, &inv), 1);
        }
        assert_eq!(f5.inv(&0), None);
        assert_eq!(f5.reduce_bigint(&BigInt::from(-13)), 2);
    }

    #[test]
    fn primality_small_table() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn content_of_vectors() {
        let v: Vec<BigInt> = [6, -9, 12].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(int_content(&v), BigInt::from(3));
        let z: Vec<BigInt> = vec![BigInt::zero(), BigInt::zero()];
        assert_eq!(int_content(&z), BigInt::zero());
    }
}
