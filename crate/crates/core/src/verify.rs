//! Verification suites that pit the closed-form counts against the oracle
//! and check the algebraic identities between bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::bounds::{
    abramson_rhs, cbc_limit, full_subblock_rhs, mpbc_gap_rhs, mpbc_nogap_rhs, sbc_rhs,
};
use crate::combinatorics::{binomial, in_weight_two_branch, BigCount, RunCounter};
use crate::error::Result;
use crate::oracle::{bits_from_mask, longest_linear_zero_run, verify_corollary2, DiscrepancyReport, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Combinatorics,
    Identities,
    Subblock,
    Theorem1,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Combinatorics,
        Suite::Identities,
        Suite::Subblock,
        Suite::Theorem1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Identities => "identities",
            Suite::Subblock => "subblock",
            Suite::Theorem1 => "theorem1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_x: usize,
    pub max_v: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_x: 14,
            max_v: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Subblock reconciliation reports; empty for other suites.
    pub reports: Vec<DiscrepancyReport>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: 0,
            failures: Vec::new(),
            reports: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks", self.suite.name(), self.checks)?;
        if !self.passed() {
            write!(f, ", {} failed", self.failures.len())?;
        }
        write!(f, ")")
    }
}

pub fn run_suite(suite: Suite, limits: Limits) -> Result<SuiteOutcome> {
    let oracle = Oracle::with_limit(limits.max_x.max(limits.max_v).max(20));
    match suite {
        Suite::Combinatorics => combinatorics(&oracle, limits.max_x),
        Suite::Identities => identities(),
        Suite::Subblock => subblock(&oracle, limits.max_v),
        Suite::Theorem1 => theorem1(&oracle, limits.max_v),
    }
}

/// Exhaustive `(ones, longest linear zero run)` histogram of length-`x`
/// vectors.
fn run_histogram(x: usize) -> BTreeMap<(usize, usize), u64> {
    let mut hist = BTreeMap::new();
    for mask in 0u64..1 << x {
        let bits = bits_from_mask(mask, x);
        let key = (mask.count_ones() as usize, longest_linear_zero_run(&bits));
        *hist.entry(key).or_insert(0) += 1;
    }
    hist
}

fn combinatorics(oracle: &Oracle, max_x: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Combinatorics);
    let counter = RunCounter::new(max_x);
    for x in 0..=max_x {
        let hist = run_histogram(x);
        for y in 0..=x {
            let mut total = BigCount::zero();
            for z in 0..=x - y {
                let formula = counter.exact(x, y, z)?;
                let expected = BigCount::from(hist.get(&(y, z)).copied().unwrap_or(0));
                out.check(formula == expected, || {
                    format!("B({x},{y},{z}) = {formula}, enumeration gives {expected}")
                });
                total += formula;
            }
            let c = binomial(x as u64, y as u64);
            out.check(total == c, || format!("sum_z B({x},{y},z) = {total}, expected C({x},{y}) = {c}"));

            let mut prev = BigCount::zero();
            for e in -1..=x as i64 {
                let a = counter.at_most(x, y, e)?;
                out.check(a >= prev, || format!("A({x},{y},e) decreases at e={e}"));
                if e >= (x - y) as i64 {
                    out.check(a == c, || format!("A({x},{y},{e}) = {a}, expected {c}"));
                }
                if e == -1 && x > y {
                    out.check(a.is_zero(), || format!("A({x},{y},-1) = {a}, expected 0"));
                }
                prev = a;
            }
        }
    }
    // spot-check the standalone oracle entry point against the histogram path
    let small = max_x.min(10);
    for y in 0..=small {
        for z in 0..=small - y {
            let direct = oracle.run_exact_count(small, y, z)?;
            out.check(direct == counter.exact(small, y, z)?, || {
                format!("oracle run count ({small},{y},{z}) disagrees")
            });
        }
    }
    Ok(out)
}

fn identities() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Identities);

    for x in 0..=16 {
        out.check(verify_corollary2(x, 3 * x + 10), || {
            format!("interior counts over y,z for x={x} do not sum to 2^{x}")
        });
    }

    for n in [15usize, 31, 63] {
        for u in 2..n {
            if !in_weight_two_branch(u - 2, n) {
                break;
            }
            let sbc = sbc_rhs(n, u)?;
            let abramson = abramson_rhs(n, u)?;
            out.check(sbc == abramson, || {
                format!("sbc_rhs({n},{u}) = {sbc} but n*2^(u-1)+1 = {abramson}")
            });
        }
    }

    for t in 1..=6 {
        for v in 1..=10 {
            for m in 1..=t {
                let full = full_subblock_rhs(t, v, m)?;
                let nogap = mpbc_nogap_rhs(t, v, m, v)?;
                out.check(full == nogap, || {
                    format!("full-subblock and E=v bounds differ at t={t} v={v} M={m}")
                });
            }
        }
    }

    for n in 1..=64usize {
        let mut hamming = BigCount::from(1u32);
        for e in 1..=n {
            hamming += binomial(n as u64, e as u64);
            let nogap = mpbc_nogap_rhs(1, n, 1, e)?;
            out.check(nogap == hamming, || format!("Hamming reduction fails at n={n} E={e}"));
        }
    }

    for n in 3..=24 {
        for u in 2..n {
            let single = sbc_rhs(n, u)?;
            let phased = mpbc_gap_rhs(1, n, 1, u)?;
            out.check(single == phased, || format!("t=M=1 specialization fails at n={n} u={u}"));
        }
    }

    for t in 1..=4 {
        for v in 3..=12 {
            for m in 1..=t {
                for u in 2..v {
                    let gap = mpbc_gap_rhs(t, v, m, u)?;
                    let nogap = mpbc_nogap_rhs(t, v, m, u)?;
                    out.check(gap <= nogap, || {
                        format!("gap bound exceeds no-gap bound at t={t} v={v} M={m} u={u}")
                    });
                }
            }
        }
    }
    Ok(out)
}

fn subblock(oracle: &Oracle, max_v: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Subblock);
    for v in 3..=max_v {
        for u in 2..v {
            let report = oracle.compare_subblock_counts(v, u)?;
            if u <= cbc_limit(v) {
                out.check(report.is_consistent(), || {
                    format!("reconciliation mismatch inside the cyclic burst constraint at v={v} u={u}")
                });
            }
            out.reports.push(report);
        }
    }
    Ok(out)
}

fn theorem1(oracle: &Oracle, max_v: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Theorem1);
    for v in 3..=max_v {
        for u in 2..v {
            let c = oracle.theorem1(v, u)?;
            out.check(c.holds, || {
                format!(
                    "v={v} u={u}: minimum weight {} below bound {}",
                    c.achieved_min, c.bound
                )
            });
        }
    }
    Ok(out)
}
