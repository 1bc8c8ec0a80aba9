//! Jacobian blocks of the induced coordinate map.
//!
//! The map sends `(a, b)` to the coefficient lists of `(G, H)`. Ordering
//! rows by input variable and columns by output coordinate, the Jacobian
//! is block triangular: the `a`-rows see only `G` (block `A`), the
//! `b`-rows see both (`C` and `D`), and `H`'s independence from `a` puts
//! a zero block top right. Entries live over the shared variable set of
//! the pair, and `A` and `D` depend on `b` alone.

use num_bigint::BigInt;

use crate::elimination::det_bareiss;
use crate::error::{Error, Result};
use crate::landen::{generic_gh, gh_vars};
use crate::multipoly::{Monomial, MultiPoly, PolyRing, WeightSystem};
use crate::report::CheckReport;
use crate::rings::{IntRing, Ring};

type Poly = MultiPoly<IntRing>;
type Block = Vec<Vec<Poly>>;

const MAX_D: usize = 3;
const MAX_M: u32 = 4;

/// The three nonzero blocks, each `(d+1) x (d+1)` with rows indexed by
/// the differentiation variable and columns by the output coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobianBlocks {
    pub d: usize,
    pub m: u32,
    pub k: u32,
    /// `a[i][j]` is the partial of `G_j` with respect to `a_i`.
    pub a: Block,
    /// `c[i][j]` is the partial of `G_j` with respect to `b_i`.
    pub c: Block,
    /// `d_block[i][j]` is the partial of `H_j` with respect to `b_i`.
    pub d_block: Block,
}

pub fn jacobian_blocks(d: usize, m: u32, k: u32) -> Result<JacobianBlocks> {
    if d > MAX_D || m > MAX_M {
        return Err(Error::GuardExceeded(format!(
            "Jacobian blocks capped at d <= {MAX_D}, m <= {MAX_M}; got d={d}, m={m}"
        )));
    }
    let pair = generic_gh(d, m, k)?;
    let hg = pair.h_in_gh_vars();
    let h_coeff = |j: usize| -> Poly {
        hg.coefficient_of("z", (d - j) as u32)
            .expect("z is a variable")
    };
    let mut a = Vec::with_capacity(d + 1);
    let mut c = Vec::with_capacity(d + 1);
    let mut d_block = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let ai = format!("a{i}");
        let bi = format!("b{i}");
        let mut row_a = Vec::with_capacity(d + 1);
        let mut row_c = Vec::with_capacity(d + 1);
        let mut row_d = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let gj = pair.g_coeff(j);
            row_a.push(gj.derivative(&ai)?);
            row_c.push(gj.derivative(&bi)?);
            row_d.push(h_coeff(j).derivative(&bi)?);
        }
        a.push(row_a);
        c.push(row_c);
        d_block.push(row_d);
    }
    Ok(JacobianBlocks { d, m, k, a, c, d_block })
}

/// Strike the row and column of index 0. For `k >= 1` the first column
/// of `A` vanishes identically, so all determinant information sits in
/// this minor.
fn strike_first(block: &Block) -> Block {
    block[1..]
        .iter()
        .map(|row| row[1..].to_vec())
        .collect()
}

fn det_of(d: usize, block: Block) -> Result<Poly> {
    let ring = PolyRing::new(IntRing, gh_vars(d));
    det_bareiss(&ring, block)
}

/// `D = m A` at `k = 0`: the denominator block is the numerator block
/// specialized to `a = b`, scaled by `m`.
pub fn check_d_eq_m_a(d: usize, m: u32) -> Result<bool> {
    let blocks = jacobian_blocks(d, m, 0)?;
    let scale = IntRing.from_i64(m as i64);
    for i in 0..=d {
        for j in 0..=d {
            if blocks.d_block[i][j] != blocks.a[i][j].mul_scalar(&scale) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G` is linear in `a` with coefficient matrix `A`: symbolically
/// `G_j = sum_i a_i A[i][j]` for every coordinate.
pub fn linear_structure_check(d: usize, m: u32, k: u32) -> Result<bool> {
    let blocks = jacobian_blocks(d, m, k)?;
    let pair = generic_gh(d, m, k)?;
    let vars = gh_vars(d);
    for j in 0..=d {
        let mut sum = Poly::zero(IntRing, vars.clone());
        for (i, row) in blocks.a.iter().enumerate() {
            let ai = Poly::var(IntRing, vars.clone(), &format!("a{i}"))?;
            sum = sum.add(&ai.mul(&row[j]));
        }
        if sum != pair.g_coeff(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn zero_out(p: &Poly, vars: &[String]) -> Result<Poly> {
    let zero = Poly::zero(IntRing, p.vars().clone());
    let mut out = p.clone();
    for v in vars {
        out = out.substitute(v, &zero)?;
    }
    Ok(out)
}

fn sign_pow(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Column-wise triangular structure of `A` modulo vanishing leading
/// coefficients.
///
/// At `k = 0`, killing `b_0, ..., b_{j-1}` clears column `j` below the
/// diagonal and pins the diagonal entry to `(-1)^((m+1)(d-j)) b_j^(m-1)`.
/// For `k >= 1` the analogue holds for the minor `A'` (row and column 0
/// struck) modulo `(b_0, ..., b_{j-2}, b_{j-1}^(k+1))`, with diagonal
/// residue `(-1)^((m+1)(d-j)+k) b_{j-1}^k b_j^(m-1-k)`.
pub fn triangularity_check(d: usize, m: u32, k: u32) -> Result<bool> {
    let blocks = jacobian_blocks(d, m, k)?;
    let vars = gh_vars(d);
    if k == 0 {
        for j in 0..=d {
            let killed: Vec<String> = (0..j).map(|i| format!("b{i}")).collect();
            for i in 0..=d {
                let red = zero_out(&blocks.a[i][j], &killed)?;
                if i > j && !red.is_zero() {
                    return Ok(false);
                }
                if i == j {
                    let sign = sign_pow((m as u64 + 1) * (d - j) as u64);
                    let want = Poly::var_pow(IntRing, vars.clone(), &format!("b{j}"), m - 1)?
                        .mul_scalar(&IntRing.from_i64(sign));
                    if red != want {
                        return Ok(false);
                    }
                }
            }
        }
    } else {
        for j in 1..=d {
            let killed: Vec<String> = (0..j.saturating_sub(1)).map(|i| format!("b{i}")).collect();
            let trunc_var = format!("b{}", j - 1);
            for i in 1..=d {
                let red = zero_out(&blocks.a[i][j], &killed)?
                    .truncate_var_power(&trunc_var, k + 1)?;
                if i > j && !red.is_zero() {
                    return Ok(false);
                }
                if i == j {
                    let sign = sign_pow((m as u64 + 1) * (d - j) as u64 + k as u64);
                    let want = Poly::var_pow(IntRing, vars.clone(), &trunc_var, k)?
                        .mul(&Poly::var_pow(
                            IntRing,
                            vars.clone(),
                            &format!("b{j}"),
                            m - 1 - k,
                        )?)
                        .mul_scalar(&IntRing.from_i64(sign));
                    if red != want {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn b_monomial(d: usize, exps: &[u32]) -> Monomial {
    let vars = gh_vars(d);
    let mut full = vec![0u32; vars.len()];
    for (i, &e) in exps.iter().enumerate() {
        full[vars.index(&format!("b{i}")).expect("b variable")] = e;
    }
    Monomial(full)
}

/// The determinant of `A` (or of the minor `A'` when `k >= 1`) contains
/// a distinguished monomial with coefficient exactly `+1` or `-1`:
///
/// * `k = 0`: `(-1)^((m+1)(d^2+d)/2) (b_0 ... b_d)^(m-1)` in `det A`;
/// * `k >= 1`: `(-1)^((m+1)(d^2-d)/2 + dk) b_0^k (b_1 ... b_{d-1})^(m-1)
///   b_d^(m-1-k)` in `det A'`.
pub fn det_monomial_check(d: usize, m: u32, k: u32) -> Result<bool> {
    let blocks = jacobian_blocks(d, m, k)?;
    if k == 0 {
        let det = det_of(d, blocks.a.clone())?;
        let mono = b_monomial(d, &vec![m - 1; d + 1]);
        let sign = sign_pow((m as u64 + 1) * ((d * d + d) / 2) as u64);
        Ok(det.coeff(&mono) == BigInt::from(sign))
    } else {
        let det = det_of(d, strike_first(&blocks.a))?;
        let mut exps = vec![m - 1; d + 1];
        exps[0] = k;
        exps[d] = m - 1 - k;
        let mono = b_monomial(d, &exps);
        let sign = sign_pow((m as u64 + 1) * ((d * d - d) / 2) as u64 + (d as u64) * k as u64);
        Ok(det.coeff(&mono) == BigInt::from(sign))
    }
}

/// Determinant of the full Jacobian via its block-triangular shape:
/// `det A * det D` at `k = 0`. For `k >= 1` the zero first column of `A`
/// kills the full determinant, so this returns the restricted
/// `det A' * det D` instead.
pub fn jacobian_det(d: usize, m: u32, k: u32) -> Result<Poly> {
    let blocks = jacobian_blocks(d, m, k)?;
    let a_det = if k == 0 {
        det_of(d, blocks.a.clone())?
    } else {
        det_of(d, strike_first(&blocks.a))?
    };
    let d_det = det_of(d, blocks.d_block.clone())?;
    Ok(a_det.mul(&d_det))
}

/// The Jacobian determinant contains `m^(d+1)` times a distinguished
/// `b`-monomial with the exact coefficient predicted by combining the
/// two determinant lemmas:
///
/// * `k = 0`: `+ m^(d+1) (b_0 ... b_d)^(2m-2)`;
/// * `k >= 1`: `(-1)^((m+1)d^2 + dk) m^(d+1) b_0^(m-1+k)
///   (b_1 ... b_{d-1})^(2m-2) b_d^(2m-2-k)` in the restricted version.
pub fn jacobian_det_monomial_check(d: usize, m: u32, k: u32) -> Result<bool> {
    let det = jacobian_det(d, m, k)?;
    let m_pow = BigInt::from(m).pow(d as u32 + 1);
    if k == 0 {
        let mono = b_monomial(d, &vec![2 * m - 2; d + 1]);
        Ok(det.coeff(&mono) == m_pow)
    } else {
        let mut exps = vec![2 * m - 2; d + 1];
        exps[0] = m - 1 + k;
        exps[d] = 2 * m - 2 - k;
        let mono = b_monomial(d, &exps);
        let sign = sign_pow((m as u64 + 1) * (d as u64) * (d as u64) + (d as u64) * k as u64);
        Ok(det.coeff(&mono) == m_pow * BigInt::from(sign))
    }
}

/// Degree and weight gradings of the `A` block and its determinant.
///
/// Every entry `A[i][j]` is homogeneous of degree `m - 1` in `b` and
/// weighted degree `mj - i - k` under `wt(b_i) = i`; `det A` then has
/// degree `(m-1)(d+1)` and weight `(m-1)(d^2+d)/2 - k(d+1)`, and the
/// minor `A'` has weight `(m-1)(d^2+d)/2 - dk`.
pub fn grading_check(d: usize, m: u32, k: u32) -> Result<bool> {
    let blocks = jacobian_blocks(d, m, k)?;
    let vars = gh_vars(d);
    let b_names: Vec<String> = (0..=d).map(|i| format!("b{i}")).collect();
    let b_refs: Vec<&str> = b_names.iter().map(|s| s.as_str()).collect();
    let assign: Vec<(&str, i64)> = b_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i as i64))
        .collect();
    let weights = WeightSystem::new(&vars, &assign)?;
    for (i, row) in blocks.a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if !entry.total_degree_in(&b_refs)?.is_graded_of(m as i64 - 1) {
                return Ok(false);
            }
            let want = m as i64 * j as i64 - i as i64 - k as i64;
            if !entry.weighted_degree(&weights).is_graded_of(want) {
                return Ok(false);
            }
        }
    }
    let det = det_of(d, blocks.a.clone())?;
    let deg = (m as i64 - 1) * (d as i64 + 1);
    let half = (m as i64 - 1) * ((d * d + d) / 2) as i64;
    if !det.total_degree_in(&b_refs)?.is_graded_of(deg) {
        return Ok(false);
    }
    if !det
        .weighted_degree(&weights)
        .is_graded_of(half - k as i64 * (d as i64 + 1))
    {
        return Ok(false);
    }
    if k >= 1 {
        let minor = det_of(d, strike_first(&blocks.a))?;
        if !minor.total_degree_in(&b_refs)?.is_graded_of(deg - (m as i64 - 1)) {
            return Ok(false);
        }
        if !minor
            .weighted_degree(&weights)
            .is_graded_of(half - k as i64 * d as i64)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Raw outcomes of the open sign question relating `det A'` at `k` to
/// `det A'` at `k = 0`, plus the row-shift observation. `None` means the
/// comparison does not apply at these parameters.
pub struct ProbeData {
    /// `b_d^k det A'_k == (-1)^((d+1)k) b_0^k det A'_0`.
    pub displayed_sign: Option<bool>,
    /// Same with `(-1)^(dk)`, the sign the data suggests.
    pub alternative_sign: Option<bool>,
    /// For `m <= d+1`: the rows of `A` at `k+1` are the rows of `A` at
    /// `k` shifted up once, with row `d+1-m` shifted right into the last
    /// slot.
    pub row_shift: Option<bool>,
}

pub fn conjecture_probe_data(d: usize, m: u32, k: u32) -> Result<ProbeData> {
    let vars = gh_vars(d);
    let (displayed_sign, alternative_sign) = if k == 0 {
        (None, None)
    } else {
        let det_k = det_of(d, strike_first(&jacobian_blocks(d, m, k)?.a))?;
        let det_0 = det_of(d, strike_first(&jacobian_blocks(d, m, 0)?.a))?;
        let lhs = det_k.mul(&Poly::var_pow(IntRing, vars.clone(), &format!("b{d}"), k)?);
        let rhs = det_0.mul(&Poly::var_pow(IntRing, vars.clone(), "b0", k)?);
        let displayed = sign_pow((d as u64 + 1) * k as u64);
        let alternative = sign_pow(d as u64 * k as u64);
        (
            Some(lhs == rhs.mul_scalar(&IntRing.from_i64(displayed))),
            Some(lhs == rhs.mul_scalar(&IntRing.from_i64(alternative))),
        )
    };
    let row_shift = if m as usize <= d + 1 && k + 1 < m {
        let lo = jacobian_blocks(d, m, k)?.a;
        let hi = jacobian_blocks(d, m, k + 1)?.a;
        let mut ok = true;
        for i in 0..d {
            if hi[i] != lo[i + 1] {
                ok = false;
            }
        }
        let src = &lo[d + 1 - m as usize];
        if !hi[d][0].is_zero() {
            ok = false;
        }
        for j in 1..=d {
            if hi[d][j] != src[j - 1] {
                ok = false;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(ProbeData {
        displayed_sign,
        alternative_sign,
        row_shift,
    })
}

/// Report-only probe of the open sign question. Never fails: every
/// outcome, positive or negative, lands in the notes.
pub fn conjecture_probe(d: usize, m: u32, k: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("conjecture probe d={d} m={m} k={k}"));
    let data = conjecture_probe_data(d, m, k)?;
    report.cell();
    match data.displayed_sign {
        None => report.note("sign comparison is trivial at k=0"),
        Some(true) => report.note("displayed sign (-1)^((d+1)k): holds"),
        Some(false) => report.note("displayed sign (-1)^((d+1)k): fails"),
    }
    match data.alternative_sign {
        None => {}
        Some(true) => report.note("alternative sign (-1)^(dk): holds"),
        Some(false) => report.note("alternative sign (-1)^(dk): fails"),
    }
    match data.row_shift {
        None => report.note("row-shift comparison needs m <= d+1 and k+1 < m"),
        Some(true) => report.note("row shift from k to k+1: holds"),
        Some(false) => report.note("row shift from k to k+1: fails"),
    }
    Ok(report)
}
