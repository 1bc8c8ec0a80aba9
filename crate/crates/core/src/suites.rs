//! Named verification suites aggregating the module-level checks.
//!
//! Each suite walks a parameter grid bounded by the caller, records one
//! cell per checked statement, and reports failures with enough indices
//! to reproduce them. Sampled suites refuse to run without a seed so
//! identical invocations stay byte-identical.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::landen::{
    b_zero_kills_coordinates, compose_check, embedding_compat_check, frobenius_form_check,
    pair_grading_check, subspace_truth_table_check, zeta_independence_check, CheckMode,
    MonoidElem,
};
use crate::report::CheckReport;
use crate::sample;

/// Suite names accepted by [`run_suite`], in display order.
pub const SUITE_NAMES: &[&str] = &[
    "composition",
    "resultant",
    "jacobian",
    "frobenius",
    "hm",
    "gradings",
    "zeta",
    "embedding",
    "subspaces",
    "conjecture-probe",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub d_max: usize,
    pub m_max: u32,
    pub trials: u32,
    /// Required by suites that draw samples; symbolic suites ignore it.
    pub seed: Option<u64>,
    /// Prefer exhaustive symbolic verification where a suite offers it.
    pub symbolic: bool,
    /// Prime for the characteristic-p suite; None runs a default set.
    pub p: Option<u64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            d_max: 2,
            m_max: 3,
            trials: 25,
            seed: None,
            symbolic: false,
            p: None,
        }
    }
}

impl SuiteOptions {
    fn seed_required(&self) -> Result<u64> {
        self.seed.ok_or_else(|| {
            Error::InvalidArgument("sampled verification requires an explicit seed".into())
        })
    }
}

fn thread_count() -> usize {
    if let Ok(v) = std::env::var("LANDEN_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t >= 1 {
                return t;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Apply `f` to every index below `n`, possibly on several threads, and
/// return the results in index order regardless of completion order.
pub fn run_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = thread_count().min(n);
    if threads <= 1 {
        return (0..n).map(f).collect();
    }
    let counter = AtomicUsize::new(0);
    let buckets: Vec<Vec<(usize, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = counter.fetch_add(1, Ordering::Relaxed);
                        if i >= n {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite worker panicked"))
            .collect()
    });
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for bucket in buckets {
        for (i, t) in bucket {
            out[i] = Some(t);
        }
    }
    out.into_iter()
        .map(|slot| slot.expect("every index computed"))
        .collect()
}

/// Run cells in parallel, then fold outcomes into the report in cell
/// order. Each cell yields a label and a pass verdict, or an error that
/// aborts the whole suite.
fn fold_cells(
    report: &mut CheckReport,
    cells: Vec<String>,
    f: impl Fn(usize) -> Result<bool> + Sync,
) -> Result<()> {
    let outcomes = run_indexed(cells.len(), f);
    for (label, outcome) in cells.into_iter().zip(outcomes) {
        report.check(outcome?, || label);
    }
    Ok(())
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<CheckReport> {
    match name {
        "composition" => composition_suite(opts),
        "resultant" => resultant_suite(opts),
        "jacobian" => jacobian_suite(opts),
        "frobenius" => frobenius_suite(opts),
        "hm" => hm_suite(opts),
        "gradings" => gradings_suite(opts),
        "zeta" => zeta_suite(opts),
        "embedding" => embedding_suite(opts),
        "subspaces" => subspaces_suite(opts),
        "conjecture-probe" => conjecture_probe_suite(opts),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite '{other}'; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

fn composition_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("composition");
    let mut grid = Vec::new();
    if opts.symbolic {
        for d in 1..=opts.d_max.min(2) {
            for m in 1..=opts.m_max {
                for n in 1..=opts.m_max {
                    if m * n > 6 {
                        continue;
                    }
                    for k in 0..m {
                        for l in 0..n {
                            grid.push((d, m, k, n, l));
                        }
                    }
                }
            }
        }
        let labels = grid
            .iter()
            .map(|(d, m, k, n, l)| format!("symbolic d={d} ({m},{k}) after ({n},{l})"))
            .collect();
        fold_cells(&mut report, labels, |i| {
            let (d, m, k, n, l) = grid[i];
            compose_check(d, m, k, n, l, CheckMode::Symbolic)
        })?;
    } else {
        let seed = opts.seed_required()?;
        for d in 1..=opts.d_max {
            for m in 1..=opts.m_max {
                for n in 1..=opts.m_max {
                    if m * n > 12 {
                        continue;
                    }
                    for k in 0..m {
                        for l in 0..n {
                            grid.push((d, m, k, n, l));
                        }
                    }
                }
            }
        }
        let labels = grid
            .iter()
            .map(|(d, m, k, n, l)| {
                format!("sampled d={d} ({m},{k}) after ({n},{l}) seed={seed}")
            })
            .collect();
        fold_cells(&mut report, labels, |i| {
            let (d, m, k, n, l) = grid[i];
            compose_check(
                d,
                m,
                k,
                n,
                l,
                CheckMode::Sampled {
                    trials: opts.trials,
                    seed,
                },
            )
        })?;
    }
    Ok(report)
}

fn resultant_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("resultant");
    let mut grid = Vec::new();
    if opts.symbolic {
        for d in 1..=opts.d_max.min(2) {
            for m in 1..=opts.m_max.min(3) {
                for k in 0..m {
                    grid.push((d, m, k));
                }
            }
        }
        let labels = grid
            .iter()
            .map(|(d, m, k)| format!("symbolic identity d={d} m={m} k={k}"))
            .collect();
        fold_cells(&mut report, labels, |i| {
            let (d, m, k) = grid[i];
            crate::elimination::verify_resultant_identity(d, m, k, CheckMode::Symbolic)
        })?;
    } else {
        let seed = opts.seed_required()?;
        for d in 1..=opts.d_max {
            for m in 1..=opts.m_max {
                for k in 0..m {
                    grid.push((d, m, k));
                }
            }
        }
        let labels = grid
            .iter()
            .map(|(d, m, k)| format!("sampled identity d={d} m={m} k={k} seed={seed}"))
            .collect();
        fold_cells(&mut report, labels, |i| {
            let (d, m, k) = grid[i];
            crate::elimination::verify_resultant_identity(
                d,
                m,
                k,
                CheckMode::Sampled {
                    trials: opts.trials,
                    seed,
                },
            )
        })?;
    }
    // The fully split pair z^d against (z-1)^d, where the identity's
    // right side collapses to a closed form independent of k.
    for d in 1..=opts.d_max {
        for m in 1..=opts.m_max {
            for k in 0..m {
                let got = crate::elimination::special_pair_resultant(d, m, k)?;
                let mut want = num_bigint::BigInt::from(m).pow((d * (d - 1)) as u32);
                if d % 2 == 1 {
                    want = -want;
                }
                report.check(got == want, || {
                    format!("split pair d={d} m={m} k={k}: got {got}, want {want}")
                });
            }
        }
    }
    Ok(report)
}

fn jacobian_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("jacobian");
    for d in 1..=opts.d_max.min(3) {
        for m in 1..=opts.m_max.min(4) {
            report.check(crate::jacobian::check_d_eq_m_a(d, m)?, || {
                format!("D = mA at d={d} m={m}")
            });
            for k in 0..m {
                report.check(crate::jacobian::linear_structure_check(d, m, k)?, || {
                    format!("linear structure d={d} m={m} k={k}")
                });
                report.check(crate::jacobian::triangularity_check(d, m, k)?, || {
                    format!("triangularity d={d} m={m} k={k}")
                });
                report.check(crate::jacobian::det_monomial_check(d, m, k)?, || {
                    format!("det monomial d={d} m={m} k={k}")
                });
                report.check(
                    crate::jacobian::jacobian_det_monomial_check(d, m, k)?,
                    || format!("jacobian det monomial d={d} m={m} k={k}"),
                );
                report.check(crate::jacobian::grading_check(d, m, k)?, || {
                    format!("entry gradings d={d} m={m} k={k}")
                });
            }
        }
    }
    Ok(report)
}

fn frobenius_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("frobenius");
    let primes: Vec<u64> = match opts.p {
        Some(p) => vec![p],
        None => vec![2, 3, 5],
    };
    for &p in &primes {
        for d in 1..=opts.d_max {
            report.check(frobenius_form_check(d, p)?, || {
                format!("coefficientwise power form d={d} p={p}")
            });
        }
    }
    Ok(report)
}

fn hm_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("hm");
    let seed = opts.seed_required()?;
    for d in 1..=opts.d_max {
        for m in 1..=opts.m_max {
            for trial in 0..opts.trials {
                let mut rng = sample::rng_for(
                    seed,
                    0xC0_0000 + ((d as u64) << 24) + ((m as u64) << 16) + trial as u64,
                );
                let u: Vec<_> = (0..d).map(|_| sample::small_rational(&mut rng)).collect();
                report.check(crate::powermap::conjugacy_check(&u, m)?, || {
                    format!("conjugacy d={d} m={m} trial={trial} u={u:?}")
                });
            }
            report.check(
                crate::powermap::strata_restriction_check(d, m, opts.trials, seed)?,
                || format!("strata restriction d={d} m={m}"),
            );
            report.check(
                crate::powermap::zero_locus_check(d, m, opts.trials, seed)?,
                || format!("zero locus d={d} m={m}"),
            );
            for n in 1..=opts.m_max {
                if m * n > 12 {
                    continue;
                }
                report.check(
                    crate::powermap::semigroup_check(d, m, n, opts.trials, seed)?,
                    || format!("semigroup d={d} m={m} n={n}"),
                );
            }
        }
    }
    Ok(report)
}

fn gradings_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("gradings");
    let mut grid = Vec::new();
    for d in 1..=opts.d_max {
        for m in 1..=opts.m_max {
            for k in 0..m {
                grid.push((d, m, k));
            }
        }
    }
    let labels = grid
        .iter()
        .map(|(d, m, k)| format!("pair gradings d={d} m={m} k={k}"))
        .collect();
    fold_cells(&mut report, labels, |i| {
        let (d, m, k) = grid[i];
        pair_grading_check(d, m, k)
    })?;
    Ok(report)
}

fn zeta_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("zeta");
    let mut grid = Vec::new();
    for d in 1..=opts.d_max {
        for m in 1..=opts.m_max {
            for k in 0..m {
                grid.push((d, m, k));
            }
        }
    }
    let labels = grid
        .iter()
        .map(|(d, m, k)| format!("root choice independence d={d} m={m} k={k}"))
        .collect();
    fold_cells(&mut report, labels, |i| {
        let (d, m, k) = grid[i];
        zeta_independence_check(d, m, k)
    })?;
    monoid_law_checks(&mut report, opts.m_max as u64)?;
    Ok(report)
}

/// Index bookkeeping of repeated transforms: associativity, identity,
/// powers, and consistency with the action on single monomials.
fn monoid_law_checks(report: &mut CheckReport, m_max: u64) -> Result<()> {
    let bound = m_max.min(4);
    let mut elems = vec![MonoidElem::IDENTITY];
    for m in 1..=bound {
        for k in 0..m {
            elems.push(MonoidElem::new(m, k)?);
        }
    }
    for &x in &elems {
        report.check(
            x.compose(&MonoidElem::IDENTITY) == x && MonoidElem::IDENTITY.compose(&x) == x,
            || format!("identity laws at ({}, {})", x.m, x.k),
        );
        let mut iterated = MonoidElem::IDENTITY;
        for r in 0..=3u32 {
            report.check(x.pow(r) == iterated, || {
                format!("power {r} of ({}, {})", x.m, x.k)
            });
            iterated = x.compose(&iterated);
        }
        for &y in &elems {
            report.check(
                x.compose(&y).m == x.m * y.m,
                || format!("index product ({},{}) ({},{})", x.m, x.k, y.m, y.k),
            );
            for &z in &elems {
                report.check(
                    x.compose(&y).compose(&z) == x.compose(&y.compose(&z)),
                    || {
                        format!(
                            "associativity ({},{}) ({},{}) ({},{})",
                            x.m, x.k, y.m, y.k, z.m, z.k
                        )
                    },
                );
            }
            let combined = x.compose(&y);
            for e in -6..=18i64 {
                let chained = y.monomial_image(e).and_then(|e1| x.monomial_image(e1));
                report.check(combined.monomial_image(e) == chained, || {
                    format!(
                        "monomial image at e={e} for ({},{}) after ({},{})",
                        x.m, x.k, y.m, y.k
                    )
                });
            }
        }
    }
    Ok(())
}

fn embedding_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("embedding");
    if opts.d_max < 2 {
        report.note("no cells: the shift comparison needs d >= 2");
        return Ok(report);
    }
    let mode = if opts.symbolic {
        CheckMode::Symbolic
    } else {
        CheckMode::Sampled {
            trials: opts.trials,
            seed: opts.seed_required()?,
        }
    };
    let mut grid = Vec::new();
    for d in 2..=opts.d_max {
        for m in 1..=opts.m_max {
            for k in 0..m {
                grid.push((d, m, k));
            }
        }
    }
    let labels = grid
        .iter()
        .map(|(d, m, k)| format!("degree shift d={d} m={m} k={k}"))
        .collect();
    fold_cells(&mut report, labels, |i| {
        let (d, m, k) = grid[i];
        embedding_compat_check(d, m, k, mode)
    })?;
    Ok(report)
}

fn subspaces_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("subspaces");
    let seed = opts.seed_required()?;
    for d in 1..=opts.d_max {
        for m in 1..=opts.m_max {
            for k in 0..m {
                report.absorb(subspace_truth_table_check(d, m, k, opts.trials, seed)?);
                if m >= 2 {
                    report.check(b_zero_kills_coordinates(d, m, k)?, || {
                        format!("vanishing at b=0, d={d} m={m} k={k}")
                    });
                }
            }
        }
    }
    Ok(report)
}

fn conjecture_probe_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("conjecture-probe");
    for d in 1..=opts.d_max.min(3) {
        for m in 1..=opts.m_max.min(4) {
            for k in 0..m {
                let probe = crate::jacobian::conjecture_probe(d, m, k)?;
                for note in &probe.notes {
                    report.note(format!("d={d} m={m} k={k}: {note}"));
                }
                report.cells += probe.cells;
            }
        }
    }
    report.note("probe is informational only and never gates");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_runner_keeps_order() {
        let squares = run_indexed(40, |i| i * i);
        assert_eq!(squares, (0..40).map(|i| i * i).collect::<Vec<_>>());
        assert!(run_indexed(0, |i| i).is_empty());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("nonsense", &SuiteOptions::default());
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sampled_suites_require_a_seed() {
        let opts = SuiteOptions {
            seed: None,
            ..SuiteOptions::default()
        };
        assert!(run_suite("composition", &opts).is_err());
        assert!(run_suite("hm", &opts).is_err());
        assert!(run_suite("subspaces", &opts).is_err());
        // Purely symbolic suites do not need one.
        assert!(run_suite("gradings", &opts).unwrap().pass);
    }

    #[test]
    fn small_symbolic_suites_pass() {
        let opts = SuiteOptions {
            d_max: 2,
            m_max: 3,
            symbolic: true,
            ..SuiteOptions::default()
        };
        for name in ["composition", "resultant", "gradings", "zeta", "embedding"] {
            let report = run_suite(name, &opts).unwrap();
            assert!(report.pass, "{name}: {:?}", report.failures);
            assert!(report.cells > 0, "{name} checked nothing");
        }
    }

    #[test]
    fn small_sampled_suites_pass() {
        let opts = SuiteOptions {
            d_max: 2,
            m_max: 3,
            trials: 5,
            seed: Some(7),
            symbolic: false,
            p: None,
        };
        for name in [
            "composition",
            "resultant",
            "jacobian",
            "frobenius",
            "hm",
            "subspaces",
        ] {
            let report = run_suite(name, &opts).unwrap();
            assert!(report.pass, "{name}: {:?}", report.failures);
            assert!(report.cells > 0, "{name} checked nothing");
        }
    }

    #[test]
    fn probe_suite_reports_without_gating() {
        let report = run_suite("conjecture-probe", &SuiteOptions::default()).unwrap();
        assert!(report.pass);
        assert!(report.notes.iter().any(|n| n.contains("fails")));
        assert!(report.notes.iter().any(|n| n.contains("holds")));
    }
}
