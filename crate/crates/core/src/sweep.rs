//! Grid evaluation of the gap-constrained and unconstrained bounds over
//! `(M, symbols)`, where `symbols` is `u` for the former and `E` for the
//! latter.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    gap_rhs_from_bracket, phased_sum, subblock_burst_counts, symbol_pattern_count,
    to_bound_result, BoundQuery, Capability, CodeGeometry,
};
use crate::combinatorics::BigCount;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InclusiveRange {
    pub start: usize,
    pub end: usize,
}

impl InclusiveRange {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start > end {
            return Err(invalid(format!("range {start}:{end} is empty")));
        }
        Ok(Self { start, end })
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for InclusiveRange {
    type Err = Error;

    /// `a:b`, or a single value `a` meaning `a:a`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("bad range bound {p:?}")))
        };
        match s.split_once(':') {
            Some((a, b)) => Self::new(parse(a)?, parse(b)?),
            None => {
                let a = parse(s)?;
                Self::new(a, a)
            }
        }
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub t: usize,
    pub v: usize,
    pub m_range: InclusiveRange,
    pub sym_range: InclusiveRange,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<CodeGeometry> {
        let geometry = CodeGeometry::new(self.t, self.v)?;
        if self.m_range.start == 0 || self.m_range.end > self.t {
            return Err(invalid(format!(
                "M range {} must lie within [1, t={}]",
                self.m_range, self.t
            )));
        }
        if self.sym_range.start == 0 || self.sym_range.end > self.v {
            return Err(invalid(format!(
                "symbol range {} must lie within [1, v={}]",
                self.sym_range, self.v
            )));
        }
        if self.threads == Some(0) {
            return Err(invalid("worker count must be at least 1"));
        }
        Ok(geometry)
    }

    fn gap_defined(&self, symbols: usize) -> bool {
        symbols >= 2 && symbols < self.v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceRow {
    #[serde(rename = "M")]
    pub m: usize,
    pub symbols: usize,
    pub rate_gap: Option<f64>,
    pub rate_nogap: f64,
    pub diff: Option<f64>,
    pub redundancy_gap: Option<u64>,
    pub redundancy_nogap: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceParams {
    pub t: usize,
    pub v: usize,
    pub n: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub sym_min: usize,
    pub sym_max: usize,
    /// Symbol values where the gap bound is undefined.
    pub skipped_gap_symbols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Surface {
    pub params: SurfaceParams,
    /// Ordered by `(M, symbols)`.
    pub rows: Vec<SurfaceRow>,
}

pub const CSV_HEADER: &str = "M,symbols,rate_gap,rate_nogap,diff,redundancy_gap,redundancy_nogap";

/// Formats `x` with `digits` significant digits in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt_field<T>(value: Option<T>, f: impl Fn(T) -> String) -> String {
    value.map(f).unwrap_or_default()
}

impl Surface {
    /// Row with the largest difference; ties go to the smallest `M`, then
    /// the smallest `symbols`.
    pub fn max_diff(&self) -> Option<&SurfaceRow> {
        let mut best: Option<&SurfaceRow> = None;
        for row in &self.rows {
            if let Some(d) = row.diff {
                if best.and_then(|b| b.diff).is_none_or(|bd| d > bd) {
                    best = Some(row);
                }
            }
        }
        best
    }

    pub fn row(&self, m: usize, symbols: usize) -> Option<&SurfaceRow> {
        self.rows.iter().find(|r| r.m == m && r.symbols == symbols)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        let rate = |x: f64| format_significant(x, 12);
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.m,
                r.symbols,
                opt_field(r.rate_gap, rate),
                rate(r.rate_nogap),
                opt_field(r.diff, rate),
                opt_field(r.redundancy_gap, |x| x.to_string()),
                r.redundancy_nogap
            )?;
        }
        w.flush()
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        w.flush()
    }

    pub fn summary(&self) -> String {
        let skipped = &self.params.skipped_gap_symbols;
        let skip_note = if skipped.is_empty() {
            String::from("no gap cells skipped")
        } else {
            let list: Vec<String> = skipped.iter().map(|s| s.to_string()).collect();
            format!("gap bound skipped for symbols {}", list.join(","))
        };
        match self.max_diff() {
            Some(r) => format!(
                "max diff {} at M={} symbols={} ({} rows, {skip_note})",
                format_significant(r.diff.unwrap_or(0.0), 12),
                r.m,
                r.symbols,
                self.rows.len()
            ),
            None => format!("max diff undefined ({} rows, {skip_note})", self.rows.len()),
        }
    }
}

/// Evaluates both bounds over the whole grid.
pub fn compute_surface(spec: &SweepSpec) -> Result<Surface> {
    let geometry = spec.validate()?;
    match spec.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?
            .install(|| evaluate(spec, geometry)),
        None => evaluate(spec, geometry),
    }
}

fn evaluate(spec: &SweepSpec, geometry: CodeGeometry) -> Result<Surface> {
    let syms: Vec<usize> = spec.sym_range.iter().collect();
    let any_gap = syms.iter().any(|&s| spec.gap_defined(s));
    let gap_brackets = if any_gap {
        subblock_burst_counts(spec.v)?
    } else {
        Vec::new()
    };
    let nogap_brackets: Vec<BigCount> = syms
        .par_iter()
        .map(|&e| symbol_pattern_count(spec.v, e))
        .collect();

    let cells: Vec<(usize, usize)> = spec
        .m_range
        .iter()
        .flat_map(|m| syms.iter().enumerate().map(move |(i, _)| (m, i)))
        .collect();
    let n = geometry.n();
    let rows = cells
        .par_iter()
        .map(|&(m, i)| -> Result<SurfaceRow> {
            let symbols = syms[i];
            let nogap_rhs = phased_sum(geometry.t, m, &nogap_brackets[i]) + 1u32;
            let nogap = to_bound_result(
                nogap_rhs,
                n,
                BoundQuery::new(geometry, m, Capability::SymbolLimited { e: symbols })?,
            )?;
            let gap = if spec.gap_defined(symbols) {
                let rhs = gap_rhs_from_bracket(geometry, m, &gap_brackets[symbols - 2]);
                let query = BoundQuery::new(geometry, m, Capability::GapLimited { u: symbols })?;
                Some(to_bound_result(rhs, n, query)?)
            } else {
                None
            };
            Ok(SurfaceRow {
                m,
                symbols,
                rate_gap: gap.as_ref().map(|g| g.rate_upper),
                rate_nogap: nogap.rate_upper,
                diff: gap.as_ref().map(|g| g.rate_upper - nogap.rate_upper),
                redundancy_gap: gap.as_ref().map(|g| g.min_redundancy),
                redundancy_nogap: nogap.min_redundancy,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Surface {
        params: SurfaceParams {
            t: spec.t,
            v: spec.v,
            n,
            m_min: spec.m_range.start,
            m_max: spec.m_range.end,
            sym_min: spec.sym_range.start,
            sym_max: spec.sym_range.end,
            skipped_gap_symbols: syms.into_iter().filter(|&s| !spec.gap_defined(s)).collect(),
        },
        rows,
    })
}
