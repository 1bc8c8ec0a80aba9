//! Rational functions in one variable, exact Laurent expansion at the
//! origin, and projective points over the integers.
//!
//! A `RatFunc` keeps numerator and denominator as descending coefficient
//! lists of a common formal degree `d`, so the generic coefficient
//! symbols `a_0..a_d, b_0..b_d` specialize positionally.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::{int_content, Field, PrimeField, RatField, Ring};
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<F: Field> {
    pub field: F,
    pub d: usize,
    /// Descending: `num[0]` multiplies `z^d`.
    pub num: Vec<F::Elem>,
    pub den: Vec<F::Elem>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(field: F, d: usize, num: Vec<F::Elem>, den: Vec<F::Elem>) -> Result<Self> {
        if num.len() != d + 1 || den.len() != d + 1 {
            return Err(Error::Parse(format!(
                "coefficient lists must have length d+1 = {}",
                d + 1
            )));
        }
        if den.iter().all(|c| field.is_zero(c)) {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc { field, d, num, den })
    }

    pub fn num_poly(&self) -> UniPoly<F> {
        UniPoly::from_desc(self.field.clone(), &self.num)
    }

    pub fn den_poly(&self) -> UniPoly<F> {
        UniPoly::from_desc(self.field.clone(), &self.den)
    }

    /// Numerator and denominator with the common factor removed and the
    /// denominator made monic.
    pub fn reduced_parts(&self) -> (UniPoly<F>, UniPoly<F>) {
        let num = self.num_poly();
        let den = self.den_poly();
        if num.is_zero() {
            return (num, UniPoly::constant(self.field.clone(), self.field.one()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = self.field.inv(den.leading().expect("nonzero")).expect("unit");
        (num.scale(&lead_inv), den.monic())
    }

    /// Reduced representative as a `RatFunc` of its own formal degree.
    pub fn reduced(&self) -> RatFunc<F> {
        let (num, den) = self.reduced_parts();
        let d = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        RatFunc {
            field: self.field.clone(),
            d,
            num: num.to_desc(d),
            den: den.to_desc(d),
        }
    }

    /// Degree of the reduced representative:
    /// max(deg num, deg den) after removing the common factor.
    pub fn true_degree(&self) -> usize {
        let (num, den) = self.reduced_parts();
        num.degree().unwrap_or(0).max(den.degree().unwrap_or(0))
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn equal_as_function(&self, other: &RatFunc<F>) -> bool {
        let lhs = self.num_poly().mul(&other.den_poly());
        let rhs = other.num_poly().mul(&self.den_poly());
        lhs == rhs
    }

    /// Exact Laurent expansion at the origin. The prefix starts at
    /// `-e` where `e` is the denominator's valuation, and carries
    /// `n_terms` coefficients, so exponents below `start + n_terms`
    /// are fully known.
    pub fn laurent_expand(&self, n_terms: usize) -> LaurentPrefix<F> {
        let f = &self.field;
        let num = self.num_poly();
        let den = self.den_poly();
        if num.is_zero() {
            return LaurentPrefix {
                field: f.clone(),
                start: 0,
                coeffs: vec![f.zero(); n_terms],
            };
        }
        let e = den.valuation().expect("nonzero denominator");
        let den2 = den.shift_down(e);
        let d0_inv = f.inv(&den2.coeff(0)).expect("unit constant term");
        let mut coeffs: Vec<F::Elem> = Vec::with_capacity(n_terms);
        for i in 0..n_terms {
            let mut acc = num.coeff(i);
            for (j, c) in coeffs.iter().enumerate() {
                acc = f.sub(&acc, &f.mul(c, &den2.coeff(i - j)));
            }
            coeffs.push(f.mul(&acc, &d0_inv));
        }
        LaurentPrefix {
            field: f.clone(),
            start: -(e as i64),
            coeffs,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "num": self.num.iter().map(|c| self.field.elem_json(c)).collect::<Vec<_>>(),
            "den": self.den.iter().map(|c| self.field.elem_json(c)).collect::<Vec<_>>(),
            "field": self.field.label(),
        })
    }
}

impl RatFunc<RatField> {
    pub fn from_json(v: &Value) -> Result<RatFunc<RatField>> {
        let field_label = v
            .get("field")
            .and_then(|x| x.as_str())
            .unwrap_or("Q");
        if field_label != "Q" {
            return Err(Error::Parse(format!(
                "expected field Q, got {field_label}"
            )));
        }
        let d = v
            .get("d")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("missing d".into()))? as usize;
        let get = |key: &str| -> Result<Vec<BigRational>> {
            v.get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("missing {key}")))?
                .iter()
                .map(|c| RatField.elem_from_json(c))
                .collect()
        };
        RatFunc::new(RatField, d, get("num")?, get("den")?)
    }

    /// Canonical display form: scale so the denominator is an integer
    /// polynomial that is primitive with positive leading coefficient.
    pub fn canonical_q(&self) -> RatFunc<RatField> {
        let den_lcm = self
            .den
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .den
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let content = int_content(&scaled);
        let mut scale = BigRational::new(den_lcm, content);
        let lead_sign = scaled
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if lead_sign {
            scale = -scale;
        }
        let num = self.num.iter().map(|c| c * &scale).collect();
        let den = self.den.iter().map(|c| c * &scale).collect();
        RatFunc { field: RatField, d: self.d, num, den }
    }
}

/// Finitely many known coefficients of a Laurent series at the origin:
/// exponents `start .. start + coeffs.len()` are stored, everything
/// below `start` is zero, everything at or above the limit is unknown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPrefix<F: Field> {
    pub field: F,
    pub start: i64,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> LaurentPrefix<F> {
    /// First exponent whose coefficient is unknown.
    pub fn limit(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `z^n`; None when the window does not reach `n`.
    pub fn coeff_at(&self, n: i64) -> Option<F::Elem> {
        if n < self.start {
            Some(self.field.zero())
        } else if n < self.limit() {
            Some(self.coeffs[(n - self.start) as usize].clone())
        } else {
            None
        }
    }

    /// Compare all coefficients below `hi`; both windows must reach `hi`.
    pub fn agrees_below(&self, other: &Self, hi: i64) -> bool {
        assert!(
            self.limit() >= hi && other.limit() >= hi,
            "windows too short for requested comparison"
        );
        let lo = self.start.min(other.start);
        (lo..hi).all(|n| self.coeff_at(n) == other.coeff_at(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let start = self.start.min(other.start);
        let limit = self.limit().min(other.limit());
        let coeffs = (start..limit)
            .map(|n| {
                self.field.add(
                    &self.coeff_at(n).expect("inside window"),
                    &other.coeff_at(n).expect("inside window"),
                )
            })
            .collect();
        LaurentPrefix { field: self.field.clone(), start, coeffs }
    }

    /// Truncated product; the window is as long as the inputs permit.
    pub fn mul(&self, other: &Self) -> Self {
        let start = self.start + other.start;
        let limit = (self.limit() + other.start).min(other.limit() + self.start);
        let f = &self.field;
        let coeffs = (start..limit)
            .map(|n| {
                let mut acc = f.zero();
                for i in self.start..self.limit() {
                    let j = n - i;
                    if j < other.start || j >= other.limit() {
                        continue;
                    }
                    acc = f.add(
                        &acc,
                        &f.mul(
                            &self.coeff_at(i).expect("inside window"),
                            &other.coeff_at(j).expect("inside window"),
                        ),
                    );
                }
                acc
            })
            .collect();
        LaurentPrefix { field: f.clone(), start, coeffs }
    }
}

/// A point of projective space over `Z`, normalized to content one with
/// the first nonzero coordinate positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<ProjPoint> {
        let content = int_content(&coords);
        if content.is_zero() {
            return Err(Error::AllZero);
        }
        let mut coords: Vec<BigInt> = coords.iter().map(|c| c / &content).collect();
        if coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            for c in coords.iter_mut() {
                *c = -&*c;
            }
        }
        Ok(ProjPoint { coords })
    }

    /// Clear denominators, then normalize.
    pub fn from_rationals(coords: &[BigRational]) -> Result<ProjPoint> {
        let lcm = coords
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints = coords
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        ProjPoint::new(ints)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }
}

/// Reduce normalized integer coordinates mod p and rescale so the first
/// nonzero residue is 1. Content-one input guarantees a nonzero residue
/// vector for prime p.
pub fn proj_reduce_mod_p(point: &ProjPoint, field: &PrimeField) -> Result<Vec<u64>> {
    let mut res: Vec<u64> = point
        .coords()
        .iter()
        .map(|c| field.reduce_bigint(c))
        .collect();
    let lead = res
        .iter()
        .find(|&&c| c != 0)
        .copied()
        .ok_or(Error::AllZero)?;
    let inv = field.inv(&lead).expect("nonzero residue");
    for c in res.iter_mut() {
        *c = field.mul(c, &inv);
    }
    Ok(res)
}
