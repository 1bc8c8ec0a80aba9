//! Sparse multivariate polynomials over a pluggable exact ring.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial under graded
//! lexicographic order, so iteration order (and every serialized form)
//! is canonical. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::{IntRing, Ring};

/// An ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> VarSet {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), v.len(), "variable names must be distinct");
        VarSet(Arc::new(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.iter().any(|n| n == name)
    }
}

/// Exponent vector aligned with a `VarSet`; ordered graded-lex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn ones(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, defined when `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Homogeneity verdict of a grading check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    Graded(i64),
    Mixed,
}

impl Homogeneity {
    pub fn is_graded_of(&self, want: i64) -> bool {
        matches!(self, Homogeneity::Zero) || *self == Homogeneity::Graded(want)
    }
}

/// Variable weights for weighted-degree gradings.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    weights: Vec<i64>,
}

impl WeightSystem {
    pub fn new(vars: &VarSet, assign: &[(&str, i64)]) -> Result<WeightSystem> {
        let mut weights = vec![0i64; vars.len()];
        for (name, w) in assign {
            weights[vars.index(name)?] = *w;
        }
        Ok(WeightSystem { weights })
    }

    pub fn weight_of(&self, mono: &Monomial) -> i64 {
        mono.0
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    vars: VarSet,
    terms: BTreeMap<Monomial, R::Elem>,
}

/// Binary operation selector for the checked arithmetic entry point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic: verifies ring and variable compatibility first.
pub fn poly_arith<R: Ring>(
    p: &MultiPoly<R>,
    q: &MultiPoly<R>,
    op: PolyOp,
) -> Result<MultiPoly<R>> {
    if p.ring != q.ring {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            p.ring.label(),
            q.ring.label()
        )));
    }
    if p.vars != q.vars {
        return Err(Error::VarMismatch(format!(
            "{:?} vs {:?}",
            p.vars.names(),
            q.vars.names()
        )));
    }
    Ok(match op {
        PolyOp::Add => p.add(q),
        PolyOp::Sub => p.sub(q),
        PolyOp::Mul => p.mul(q),
    })
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R, vars: VarSet) -> Self {
        MultiPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, vars: VarSet, c: R::Elem) -> Self {
        let mut p = MultiPoly::zero(ring, vars);
        if !p.ring.is_zero(&c) {
            p.terms.insert(Monomial::ones(p.vars.len()), c);
        }
        p
    }

    pub fn one(ring: R, vars: VarSet) -> Self {
        let c = ring.one();
        MultiPoly::constant(ring, vars, c)
    }

    pub fn var(ring: R, vars: VarSet, name: &str) -> Result<Self> {
        Self::var_pow(ring, vars, name, 1)
    }

    pub fn var_pow(ring: R, vars: VarSet, name: &str, e: u32) -> Result<Self> {
        let idx = vars.index(name)?;
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = e;
        let mut p = MultiPoly::zero(ring, vars);
        let one = p.ring.one();
        p.terms.insert(Monomial(exps), one);
        Ok(p)
    }

    pub fn from_terms(ring: R, vars: VarSet, terms: Vec<(Monomial, R::Elem)>) -> Self {
        let mut p = MultiPoly::zero(ring, vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), p.vars.len(), "exponent arity");
            p.accumulate(m, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial under graded-lex, with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Monomial) -> R::Elem {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    fn accumulate(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = self.ring.add(&old, &c);
                if !self.ring.is_zero(&sum) {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(self.ring == other.ring, "ring mismatch");
        assert!(self.vars == other.vars, "variable set mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), out.ring.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.accumulate(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &R::Elem) -> Self {
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, x) in &self.terms {
            out.accumulate(m.clone(), self.ring.mul(x, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = MultiPoly::one(self.ring.clone(), self.vars.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient of `var^k`, reported in the same variable set with the
    /// `var` exponent zeroed.
    pub fn coefficient_of(&self, var: &str, k: u32) -> Result<Self> {
        let idx = self.vars.index(var)?;
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[idx] == k {
                let mut e = m.clone();
                e.0[idx] = 0;
                out.accumulate(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Highest exponent of `var` across all terms; None for the zero poly.
    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let idx = self.vars.index(var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max())
    }

    /// Substitute a polynomial (same ring and variables) for one variable.
    /// A variable absent from `self` leaves it unchanged.
    pub fn substitute(&self, var: &str, by: &Self) -> Result<Self> {
        if self.ring != by.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.label(),
                by.ring.label()
            )));
        }
        if self.vars != by.vars {
            return Err(Error::VarMismatch(format!(
                "{:?} vs {:?}",
                self.vars.names(),
                by.vars.names()
            )));
        }
        let idx = self.vars.index(var)?;
        let max_e = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        let mut pows: Vec<Self> = Vec::with_capacity(max_e as usize + 1);
        pows.push(MultiPoly::one(self.ring.clone(), self.vars.clone()));
        for e in 1..=max_e {
            let next = pows[(e - 1) as usize].mul(by);
            pows.push(next);
        }
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut rest = m.clone();
            rest.0[idx] = 0;
            let base = MultiPoly::from_terms(
                self.ring.clone(),
                self.vars.clone(),
                vec![(rest, c.clone())],
            );
            out = out.add(&base.mul(&pows[e as usize]));
        }
        Ok(out)
    }

    /// Full substitution into a possibly different ring and variable set.
    /// `assign[i]` replaces variable `i`; coefficients map through
    /// `map_coeff`. This one primitive covers specialization at points,
    /// composition of coordinate maps, and variable renaming.
    pub fn eval_into<S: Ring>(
        &self,
        out_ring: &S,
        out_vars: &VarSet,
        assign: &[MultiPoly<S>],
        map_coeff: &dyn Fn(&R::Elem) -> S::Elem,
    ) -> MultiPoly<S> {
        assert_eq!(assign.len(), self.vars.len(), "one assignment per variable");
        // Power cache per variable, grown on demand.
        let mut pows: Vec<Vec<MultiPoly<S>>> = assign
            .iter()
            .map(|p| vec![MultiPoly::one(out_ring.clone(), out_vars.clone()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(out_ring.clone(), out_vars.clone());
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(out_ring.clone(), out_vars.clone(), map_coeff(c));
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().unwrap().mul(&assign[i]);
                    pows[i].push(next);
                }
                acc = acc.mul(&pows[i][e as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluate fully at ring elements of a target ring.
    pub fn eval_points<S: Ring>(
        &self,
        out_ring: &S,
        values: &[S::Elem],
        map_coeff: &dyn Fn(&R::Elem) -> S::Elem,
    ) -> S::Elem {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut acc = out_ring.zero();
        for (m, c) in &self.terms {
            let mut t = map_coeff(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = out_ring.mul(&t, &values[i]);
                }
            }
            acc = out_ring.add(&acc, &t);
        }
        acc
    }

    /// Rename variables into a target set by name, preserving exponents.
    /// Every variable occurring in `self` must exist in `target`.
    pub fn embed_into(&self, target: &VarSet) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match target.index(name) {
                Ok(j) => map.push(Some(j)),
                Err(e) if used => return Err(e),
                Err(_) => map.push(None),
            }
        }
        let mut out = MultiPoly::zero(self.ring.clone(), target.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exps[map[i].expect("checked above")] = e;
                }
            }
            out.accumulate(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Replace `from^(m*j)` by `into^j`: every term's `from` exponent must
    /// be divisible by `m`. `from` and `into` must sit at the same index
    /// in their respective variable sets.
    pub fn collapse_power(
        &self,
        from: &str,
        m: u32,
        into: &str,
        new_vars: &VarSet,
    ) -> Result<Self> {
        let idx = self.vars.index(from)?;
        if new_vars.index(into)? != idx || new_vars.len() != self.vars.len() {
            return Err(Error::InvalidArgument(
                "collapse requires aligned variable sets".into(),
            ));
        }
        let mut out = MultiPoly::zero(self.ring.clone(), new_vars.clone());
        for (mono, c) in &self.terms {
            let e = mono.0[idx];
            if e % m != 0 {
                return Err(Error::NotDivisible(format!(
                    "{from}^{e} is not a power of {from}^{m}"
                )));
            }
            let mut exps = mono.0.clone();
            exps[idx] = e / m;
            out.accumulate(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let idx = self.vars.index(var)?;
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.clone();
            exps.0[idx] = e - 1;
            out.accumulate(exps, self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// Exact single-divisor division under graded-lex. Returns the
    /// quotient or `NotDivisible` carrying the offending remainder term.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.assert_compatible(divisor);
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero polynomial".into()));
        }
        let (lm, lc) = divisor.leading_term().expect("nonzero divisor");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible(format!(
                    "remainder term {} survives division",
                    rem.term_string(m, c)
                )));
            }
            let q = match self.ring.exact_div(c, &lc) {
                Some(q) => q,
                None => {
                    return Err(Error::NotDivisible(format!(
                        "coefficient of {} not divisible",
                        rem.term_string(m, c)
                    )))
                }
            };
            let t = MultiPoly::from_terms(
                self.ring.clone(),
                self.vars.clone(),
                vec![(lm.div_into(m), q)],
            );
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// Kill every term whose `var` exponent is at least `bound`.
    /// Combined with zero substitutions this reduces modulo ideals of the
    /// form `(v_1, ..., v_r, var^bound)`.
    pub fn truncate_var_power(&self, var: &str, bound: u32) -> Result<Self> {
        let idx = self.vars.index(var)?;
        let mut out = MultiPoly::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[idx] < bound {
                out.accumulate(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Total degree in a subset of the variables, as a grading check.
    pub fn total_degree_in(&self, in_vars: &[&str]) -> Result<Homogeneity> {
        let idxs: Vec<usize> = in_vars
            .iter()
            .map(|v| self.vars.index(v))
            .collect::<Result<_>>()?;
        let mut grade: Option<i64> = None;
        for m in self.terms.keys() {
            let d: i64 = idxs.iter().map(|&i| m.0[i] as i64).sum();
            match grade {
                None => grade = Some(d),
                Some(g) if g == d => {}
                Some(_) => return Ok(Homogeneity::Mixed),
            }
        }
        Ok(match grade {
            None => Homogeneity::Zero,
            Some(g) => Homogeneity::Graded(g),
        })
    }

    /// Weighted degree under a weight system, as a grading check.
    pub fn weighted_degree(&self, w: &WeightSystem) -> Homogeneity {
        let mut grade: Option<i64> = None;
        for m in self.terms.keys() {
            let d = w.weight_of(m);
            match grade {
                None => grade = Some(d),
                Some(g) if g == d => {}
                Some(_) => return Homogeneity::Mixed,
            }
        }
        match grade {
            None => Homogeneity::Zero,
            Some(g) => Homogeneity::Graded(g),
        }
    }

    fn term_string(&self, m: &Monomial, c: &R::Elem) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.names()[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars.names()[i], e)),
            }
        }
        let mono = parts.join("*");
        let cs = self.ring.elem_string(c);
        match (mono.is_empty(), cs.as_str()) {
            (true, _) => cs,
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            (false, _) => format!("{cs}*{mono}"),
        }
    }

    /// Canonical text form: terms in descending graded-lex order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let ts = self.term_string(m, c);
            if i == 0 {
                out.push_str(&ts);
            } else if let Some(stripped) = ts.strip_prefix('-') {
                let _ = write!(out, " - {stripped}");
            } else {
                let _ = write!(out, " + {ts}");
            }
        }
        out
    }

    /// Canonical JSON form; terms in descending graded-lex order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                json!({
                    "exps": m.0.clone(),
                    "coeff": self.ring.elem_json(c),
                })
            })
            .collect();
        json!({ "vars": self.vars.names(), "terms": terms })
    }

    pub fn from_json(ring: R, v: &Value) -> Result<Self> {
        let vars_json = v
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing vars list".into()))?;
        let names: Vec<&str> = vars_json
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Parse("bad var name".into())))
            .collect::<Result<_>>()?;
        let vars = VarSet::new(&names);
        let terms_json = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing terms list".into()))?;
        let mut terms = Vec::with_capacity(terms_json.len());
        for t in terms_json {
            let exps_json = t
                .get("exps")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse("missing exps".into()))?;
            if exps_json.len() != vars.len() {
                return Err(Error::Parse("exponent arity mismatch".into()));
            }
            let exps: Vec<u32> = exps_json
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| Error::Parse("bad exponent".into()))
                })
                .collect::<Result<_>>()?;
            let coeff = ring.elem_from_json(
                t.get("coeff")
                    .ok_or_else(|| Error::Parse("missing coeff".into()))?,
            )?;
            terms.push((Monomial(exps), coeff));
        }
        Ok(MultiPoly::from_terms(ring, vars, terms))
    }
}

/// A polynomial ring as a coefficient ring, so matrices of polynomials
/// run through the same determinant machinery as numeric ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    pub vars: VarSet,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, vars: VarSet) -> Self {
        PolyRing { base, vars }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R>;

    fn zero(&self) -> MultiPoly<R> {
        MultiPoly::zero(self.base.clone(), self.vars.clone())
    }
    fn one(&self) -> MultiPoly<R> {
        MultiPoly::one(self.base.clone(), self.vars.clone())
    }
    fn is_zero(&self, a: &MultiPoly<R>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.mul(b)
    }
    fn from_i64(&self, n: i64) -> MultiPoly<R> {
        MultiPoly::constant(self.base.clone(), self.vars.clone(), self.base.from_i64(n))
    }
    fn from_bigint(&self, n: &BigInt) -> MultiPoly<R> {
        MultiPoly::constant(self.base.clone(), self.vars.clone(), self.base.from_bigint(n))
    }
    fn exact_div(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> Option<MultiPoly<R>> {
        a.exact_divide(b).ok()
    }
    fn elem_string(&self, a: &MultiPoly<R>) -> String {
        a.to_text()
    }
    fn elem_json(&self, a: &MultiPoly<R>) -> Value {
        a.to_json()
    }
    fn elem_from_json(&self, v: &Value) -> Result<MultiPoly<R>> {
        let p = MultiPoly::from_json(self.base.clone(), v)?;
        if p.vars() != &self.vars {
            return Err(Error::VarMismatch(format!(
                "{:?} vs {:?}",
                p.vars().names(),
                self.vars.names()
            )));
        }
        Ok(p)
    }
    fn label(&self) -> String {
        format!("{}[{}]", self.base.label(), self.vars.names().join(","))
    }
}

impl MultiPoly<IntRing> {
    /// Positive content and primitive part; the sign stays in the
    /// primitive part. The zero polynomial has content zero.
    pub fn content_primitive(&self) -> (BigInt, MultiPoly<IntRing>) {
        use num_integer::Integer as _;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let g = g.abs();
        if g.is_zero() || g.is_one() {
            return (g, self.clone());
        }
        let mut prim = self.clone();
        for c in prim.terms.values_mut() {
            *c = &*c / &g;
        }
        (g, prim)
    }

    pub fn map_coeffs_mod_p(&self, field: &crate::rings::PrimeField) -> MultiPoly<crate::rings::PrimeField> {
        let mut out = MultiPoly::zero(*field, self.vars.clone());
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), field.reduce_bigint(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{zeta_pow, CycloRing};
    use crate::rings::{Field, RatField};
    use proptest::prelude::*;

    fn vars_xyz() -> VarSet {
        VarSet::new(&["x", "y", "z"])
    }

    fn p_int(terms: &[(i64, [u32; 3])]) -> MultiPoly<IntRing> {
        MultiPoly::from_terms(
            IntRing,
            vars_xyz(),
            terms
                .iter()
                .map(|&(c, e)| (Monomial(e.to_vec()), BigInt::from(c)))
                .collect(),
        )
    }

    #[test]
    fn graded_lex_order() {
        // Degree dominates; ties break lexicographically on exponents.
        let m1 = Monomial(vec![0, 2, 0]);
        let m2 = Monomial(vec![1, 0, 0]);
        let m3 = Monomial(vec![0, 1, 1]);
        assert!(m1 > m2);
        assert!(m1 > m3, "x^0y^2 beats y*z at equal degree");
        assert!(m3 > m2);
        let p = p_int(&[(1, [1, 0, 0]), (1, [0, 2, 0]), (1, [0, 1, 1])]);
        let lead = p.leading_term().unwrap().0.clone();
        assert_eq!(lead, m1);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = p_int(&[(2, [1, 0, 0]), (3, [0, 1, 0])]);
        let q = p_int(&[(-2, [1, 0, 0]), (5, [0, 0, 1])]);
        let s = p.add(&q);
        assert_eq!(s.num_terms(), 2, "x terms cancel");
        let prod = p.mul(&q);
        // (2x+3y)(-2x+5z) = -4x^2 + 10xz - 6xy + 15yz
        assert_eq!(
            prod,
            p_int(&[(-4, [2, 0, 0]), (10, [1, 0, 1]), (-6, [1, 1, 0]), (15, [0, 1, 1])])
        );
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn checked_arith_rejects_mismatch() {
        let p = p_int(&[(1, [1, 0, 0])]);
        let other = MultiPoly::one(IntRing, VarSet::new(&["u"]));
        assert!(matches!(
            poly_arith(&p, &other, PolyOp::Add),
            Err(Error::VarMismatch(_))
        ));
        let q = p_int(&[(1, [0, 1, 0])]);
        assert_eq!(poly_arith(&p, &q, PolyOp::Sub).unwrap(), p.sub(&q));
    }

    #[test]
    fn coefficient_extraction() {
        let p = p_int(&[(2, [3, 1, 0]), (5, [3, 0, 2]), (7, [1, 0, 0])]);
        let c3 = p.coefficient_of("x", 3).unwrap();
        assert_eq!(c3, p_int(&[(2, [0, 1, 0]), (5, [0, 0, 2])]));
        let c0 = p.coefficient_of("x", 0).unwrap();
        assert!(c0.is_zero());
        assert!(p.coefficient_of("w", 1).is_err());
    }

    #[test]
    fn substitute_polynomial() {
        // x -> y + z in x^2 + x gives (y+z)^2 + y + z.
        let p = p_int(&[(1, [2, 0, 0]), (1, [1, 0, 0])]);
        let by = p_int(&[(1, [0, 1, 0]), (1, [0, 0, 1])]);
        let got = p.substitute("x", &by).unwrap();
        let want = p_int(&[
            (1, [0, 2, 0]),
            (2, [0, 1, 1]),
            (1, [0, 0, 2]),
            (1, [0, 1, 0]),
            (1, [0, 0, 1]),
        ]);
        assert_eq!(got, want);
        // Absent variable: unchanged; unknown variable: error.
        let q = p_int(&[(4, [0, 0, 2])]);
        assert_eq!(q.substitute("x", &by).unwrap(), q);
        assert!(q.substitute("t", &by).is_err());
    }

    #[test]
    fn substitute_root_of_unity_scaling() {
        // F(z) = z^2 + z + 1 with z -> zeta_2 * w becomes w^2 - w + 1.
        let ring = CycloRing::new(2);
        let vars = VarSet::new(&["w"]);
        let f = MultiPoly::from_terms(
            ring,
            vars.clone(),
            vec![
                (Monomial(vec![2]), ring.one()),
                (Monomial(vec![1]), ring.one()),
                (Monomial(vec![0]), ring.one()),
            ],
        );
        let zw = MultiPoly::from_terms(ring, vars.clone(), vec![(Monomial(vec![1]), zeta_pow(2, 1))]);
        let got = f.substitute("w", &zw).unwrap();
        let want = MultiPoly::from_terms(
            ring,
            vars,
            vec![
                (Monomial(vec![2]), ring.one()),
                (Monomial(vec![1]), ring.from_i64(-1)),
                (Monomial(vec![0]), ring.one()),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn collapse_composes_with_evaluation() {
        let wv = VarSet::new(&["w", "y", "z"]);
        let zv = VarSet::new(&["v", "y", "z"]);
        let p = MultiPoly::from_terms(
            IntRing,
            wv,
            vec![
                (Monomial(vec![4, 1, 0]), BigInt::from(3)),
                (Monomial(vec![2, 0, 2]), BigInt::from(-1)),
                (Monomial(vec![0, 0, 1]), BigInt::from(7)),
            ],
        );
        let q = p.collapse_power("w", 2, "v", &zv).unwrap();
        // p(w, y, z) = q(w^2, y, z) at sample points.
        for w in [-3i64, 2, 5] {
            for y in [1i64, -2] {
                let pv = p.eval_points(&IntRing, &[BigInt::from(w), BigInt::from(y), BigInt::from(4)], &|c| c.clone());
                let qv = q.eval_points(&IntRing, &[BigInt::from(w * w), BigInt::from(y), BigInt::from(4)], &|c| c.clone());
                assert_eq!(pv, qv);
            }
        }
        let odd = MultiPoly::var(IntRing, VarSet::new(&["w", "y", "z"]), "w").unwrap();
        assert!(matches!(
            odd.collapse_power("w", 2, "v", &zv),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn exact_division_and_witness() {
        let p = p_int(&[(1, [1, 0, 0]), (2, [0, 1, 0])]);
        let q = p_int(&[(3, [1, 1, 0]), (-1, [0, 0, 2])]);
        let prod = p.mul(&q);
        assert_eq!(prod.exact_divide(&q).unwrap(), p);
        assert_eq!(prod.exact_divide(&p).unwrap(), q);
        let off = prod.add(&MultiPoly::one(IntRing, vars_xyz()));
        assert!(matches!(off.exact_divide(&q), Err(Error::NotDivisible(_))));
        // Coefficient obstruction: 2x+2y not divisible by 4 over Z... but by 2 it is.
        let two = MultiPoly::constant(IntRing, vars_xyz(), BigInt::from(2));
        let four = MultiPoly::constant(IntRing, vars_xyz(), BigInt::from(4));
        let r = p_int(&[(2, [1, 0, 0]), (2, [0, 1, 0])]);
        assert_eq!(r.exact_divide(&two).unwrap(), p_int(&[(1, [1, 0, 0]), (1, [0, 1, 0])]));
        assert!(r.exact_divide(&four).is_err());
    }

    #[test]
    fn gradings() {
        let w = WeightSystem::new(&vars_xyz(), &[("x", 2), ("y", 1), ("z", 0)]).unwrap();
        let p = p_int(&[(1, [1, 0, 5]), (3, [0, 2, 0])]);
        assert_eq!(p.weighted_degree(&w), Homogeneity::Graded(2));
        assert_eq!(p.total_degree_in(&["x", "y"]).unwrap(), Homogeneity::Mixed);
        assert_eq!(
            p.total_degree_in(&["y"]).unwrap(),
            Homogeneity::Mixed,
            "y-degrees 0 and 2 differ"
        );
        let h = p_int(&[(1, [2, 0, 0]), (1, [0, 2, 0])]);
        assert_eq!(h.total_degree_in(&["x", "y"]).unwrap(), Homogeneity::Graded(2));
        let z = MultiPoly::zero(IntRing, vars_xyz());
        assert_eq!(z.weighted_degree(&w), Homogeneity::Zero);
        assert!(z.weighted_degree(&w).is_graded_of(17));
    }

    #[test]
    fn content_and_primitive() {
        let p = p_int(&[(-6, [1, 0, 0]), (9, [0, 1, 0])]);
        let (c, prim) = p.content_primitive();
        assert_eq!(c, BigInt::from(3));
        assert_eq!(prim, p_int(&[(-2, [1, 0, 0]), (3, [0, 1, 0])]));
        assert_eq!(prim.mul_scalar(&c), p, "content * primitive reconstructs");
        let z = MultiPoly::zero(IntRing, vars_xyz());
        assert_eq!(z.content_primitive().0, BigInt::zero());
    }

    #[test]
    fn text_and_json_roundtrip() {
        let p = p_int(&[(-1, [2, 0, 0]), (3, [1, 1, 0]), (-7, [0, 0, 0])]);
        assert_eq!(p.to_text(), "-x^2 + 3*x*y - 7");
        let v = p.to_json();
        let q = MultiPoly::from_json(IntRing, &v).unwrap();
        assert_eq!(p, q);
        let zero = MultiPoly::zero(IntRing, vars_xyz());
        assert_eq!(zero.to_text(), "0");
        assert_eq!(MultiPoly::from_json(IntRing, &zero.to_json()).unwrap(), zero);
    }

    #[test]
    fn eval_into_changes_ring_and_vars() {
        let p = p_int(&[(1, [2, 0, 0]), (-3, [0, 1, 0]), (5, [0, 0, 0])]);
        let f = RatField;
        let uv = VarSet::new(&["u"]);
        let u = MultiPoly::var(f, uv.clone(), "u").unwrap();
        let half = MultiPoly::constant(f, uv.clone(), f.inv(&f.from_i64(2)).unwrap());
        let zero = MultiPoly::zero(f, uv.clone());
        // x -> u, y -> 1/2, z -> 0 over Q.
        let got = p.eval_into(&f, &uv, &[u, half, zero], &|c| f.from_bigint(c));
        let want = MultiPoly::from_terms(
            f,
            uv,
            vec![
                (Monomial(vec![2]), f.one()),
                (Monomial(vec![0]), f.add(&f.from_i64(5), &f.div(&f.from_i64(-3), &f.from_i64(2)).unwrap())),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn embedding_into_larger_varset() {
        let small = VarSet::new(&["y", "x"]);
        let big = vars_xyz();
        let p = MultiPoly::from_terms(
            IntRing,
            small,
            vec![(Monomial(vec![2, 1]), BigInt::from(4))],
        );
        let q = p.embed_into(&big).unwrap();
        assert_eq!(q, p_int(&[(4, [1, 2, 0])]));
        let orphan = MultiPoly::var(IntRing, VarSet::new(&["t"]), "t").unwrap();
        assert!(orphan.embed_into(&big).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prop_ring_axioms(
            a in arb_poly(),
            b in arb_poly(),
            c in arb_poly(),
        ) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn prop_exact_divide_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b);
            prop_assert_eq!(prod.exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn prop_content_multiplicative(a in arb_poly(), b in arb_poly()) {
            // Gauss: content of a product is the product of contents.
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (ca, _) = a.content_primitive();
            let (cb, _) = b.content_primitive();
            let (cp, _) = a.mul(&b).content_primitive();
            prop_assert_eq!(cp, ca * cb);
        }

        #[test]
        fn prop_graded_product_adds_degrees(a in arb_poly(), b in arb_poly()) {
            // Force homogeneity by scaling each term's monomial into a
            // single fixed degree via padding with z powers.
            let w = WeightSystem::new(&vars_xyz(), &[("x", 1), ("y", 1), ("z", 1)]).unwrap();
            let ha = homogenize(&a);
            let hb = homogenize(&b);
            prop_assume!(!ha.is_zero() && !hb.is_zero());
            let (da, db) = match (ha.weighted_degree(&w), hb.weighted_degree(&w)) {
                (Homogeneity::Graded(x), Homogeneity::Graded(y)) => (x, y),
                other => return Err(TestCaseError::fail(format!("not graded: {other:?}"))),
            };
            prop_assert_eq!(ha.mul(&hb).weighted_degree(&w), Homogeneity::Graded(da + db));
        }
    }

    /// Pad every term with z powers up to the max total degree.
    fn homogenize(p: &MultiPoly<IntRing>) -> MultiPoly<IntRing> {
        let top = p
            .terms()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0) as u32;
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut e = m.clone();
                e.0[2] += top - m.total_degree() as u32;
                (e, c.clone())
            })
            .collect();
        MultiPoly::from_terms(IntRing, p.vars().clone(), terms)
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly<IntRing>> {
        proptest::collection::vec(
            (
                -9i64..=9,
                proptest::array::uniform3(0u32..3),
            ),
            0..6,
        )
        .prop_map(|terms| {
            MultiPoly::from_terms(
                IntRing,
                vars_xyz(),
                terms
                    .into_iter()
                    .map(|(c, e)| (Monomial(e.to_vec()), BigInt::from(c)))
                    .collect(),
            )
        })
    }
}
