//! Dense univariate polynomials over a field: gcd, division, evaluation.
//! Coefficients are stored in ascending order with no trailing zeros.

use crate::rings::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Field> {
    pub field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map(|c| field.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// From descending coefficients (formal leading coefficient first).
    pub fn from_desc(field: F, desc: &[F::Elem]) -> Self {
        let asc: Vec<F::Elem> = desc.iter().rev().cloned().collect();
        UniPoly::new(field, asc)
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Descending coefficients padded to formal degree `d`.
    pub fn to_desc(&self, d: usize) -> Vec<F::Elem> {
        assert!(self.degree().unwrap_or(0) <= d, "formal degree too small");
        (0..=d).rev().map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(a, b));
            }
        }
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| self.field.mul(x, c))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// Quotient and remainder; `other` must be nonzero.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dn = other.coeffs.len() - 1;
        let lead_inv = f.inv(other.leading().unwrap()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return (UniPoly::zero(f.clone()), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dn];
        for i in (dn..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[i - dn] = c.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[i - dn + j] = f.sub(&rem[i - dn + j], &f.mul(&c, b));
            }
        }
        (UniPoly::new(f.clone(), quot), UniPoly::new(f.clone(), rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading");
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Smallest exponent with a nonzero coefficient; None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    /// Divide out `x^k`; requires valuation at least `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.valuation().unwrap_or(0) >= k, "valuation too small");
        UniPoly::new(self.field.clone(), self.coeffs[k..].to_vec())
    }
}
