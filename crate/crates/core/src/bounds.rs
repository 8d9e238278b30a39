//! Coset-leader counting bounds for phased-burst and single-burst correction.
//!
//! Every bound is of the form `2^(n-k) >= rhs`. The right-hand sides are
//! computed exactly; [`BoundResult`] turns one into the smallest admissible
//! redundancy and the real-valued code-rate ceiling `1 - log2(rhs)/n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binomial, BigCount, RunCounter};
use crate::error::{invalid, Error, Result};

/// A codeword of `t` subblocks, each `v` symbols long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeGeometry {
    pub t: usize,
    pub v: usize,
}

impl CodeGeometry {
    pub fn new(t: usize, v: usize) -> Result<Self> {
        if t == 0 {
            return Err(invalid("subblock count t must be at least 1"));
        }
        if v == 0 {
            return Err(invalid("subblock length v must be at least 1"));
        }
        t.checked_mul(v)
            .ok_or_else(|| invalid("block length t*v overflows"))?;
        Ok(Self { t, v })
    }

    /// Single-burst geometry: one subblock spanning the whole block.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn n(&self) -> usize {
        self.t * self.v
    }
}

/// What a code is required to correct inside each affected subblock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Capability {
    /// End-around phased bursts up to length `u` with a nonempty gap.
    GapLimited { u: usize },
    /// Any pattern of at most `e` erroneous symbols.
    SymbolLimited { e: usize },
    /// Any pattern at all.
    FullSubblock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundQuery {
    pub geometry: CodeGeometry,
    /// Maximum number of correctable subblocks.
    pub m: usize,
    pub capability: Capability,
}

impl BoundQuery {
    pub fn new(geometry: CodeGeometry, m: usize, capability: Capability) -> Result<Self> {
        check_m(geometry.t, m)?;
        match capability {
            Capability::GapLimited { u } => check_u(geometry.v, u)?,
            Capability::SymbolLimited { e } => check_e(geometry.v, e)?,
            Capability::FullSubblock => {}
        }
        Ok(Self {
            geometry,
            m,
            capability,
        })
    }

    pub fn rhs(&self) -> Result<BigCount> {
        let CodeGeometry { t, v } = self.geometry;
        match self.capability {
            Capability::GapLimited { u } => mpbc_gap_rhs(t, v, self.m, u),
            Capability::SymbolLimited { e } => mpbc_nogap_rhs(t, v, self.m, e),
            Capability::FullSubblock => full_subblock_rhs(t, v, self.m),
        }
    }

    pub fn evaluate(&self) -> Result<BoundResult> {
        to_bound_result(self.rhs()?, self.geometry.n(), *self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub rhs: BigCount,
    /// Smallest `n - k` with `2^(n-k) >= rhs`.
    pub min_redundancy: u64,
    pub rate_upper: f64,
    pub query: BoundQuery,
}

fn check_m(t: usize, m: usize) -> Result<()> {
    if m == 0 || m > t {
        return Err(invalid(format!("M={m} must lie in [1, t={t}]")));
    }
    Ok(())
}

fn check_u(v: usize, u: usize) -> Result<()> {
    if u < 2 || u + 1 > v {
        return Err(invalid(format!(
            "burst length u={u} must lie in [2, v-1] for v={v}"
        )));
    }
    Ok(())
}

fn check_e(v: usize, e: usize) -> Result<()> {
    if e == 0 || e > v {
        return Err(invalid(format!("symbol count E={e} must lie in [1, v={v}]")));
    }
    Ok(())
}

/// Longest burst admitted by the cyclic burst constraint, `floor((n+1)/2)`.
pub fn cbc_limit(n: usize) -> usize {
    n.div_ceil(2)
}

pub fn is_cbc_conforming(n: usize, burst_len: usize) -> bool {
    burst_len <= cbc_limit(n)
}

/// `sum_{y=0}^{x} sum_{z=0}^{v-x-3} F(x, y, z, v)` for one interior length.
fn interior_total(counter: &RunCounter, x: usize, v: usize) -> BigCount {
    let mut total = BigCount::zero();
    for y in 0..=x {
        for z in 0..=(v - x - 3) {
            total += counter.interior_or_zero(x, y, z, v);
        }
    }
    total
}

/// Number of correctable end-around burst patterns of weight at least two in
/// one subblock of length `v`, for every `u` in `2..=v-1`.
///
/// Entry `i` holds the count for `u = i + 2`. Each entry is a prefix sum over
/// interior lengths, so the whole table costs the same as its last entry.
pub fn subblock_burst_counts(v: usize) -> Result<Vec<BigCount>> {
    if v < 3 {
        return Err(invalid(format!("subblock length v={v} admits no gapped burst")));
    }
    let max_x = v - 3;
    let counter = RunCounter::new(max_x);
    let per_x: Vec<BigCount> = (0..=max_x)
        .into_par_iter()
        .map(|x| interior_total(&counter, x, v))
        .collect();
    let mut running = BigCount::zero();
    Ok(per_x
        .into_iter()
        .map(|part| {
            running += part;
            &running * v
        })
        .collect())
}

/// `C(v,1) * sum_{x=0}^{u-2} sum_{y=0}^{x} sum_{z=0}^{v-x-3} F(x,y,z,v)`.
pub fn subblock_burst_count(v: usize, u: usize) -> Result<BigCount> {
    check_u(v, u)?;
    let counter = RunCounter::new(u - 2);
    let mut total = BigCount::zero();
    for x in 0..=u - 2 {
        total += interior_total(&counter, x, v);
    }
    Ok(total * v)
}

/// `sum_{j=1}^{m} C(t, j) * bracket^j`.
pub fn phased_sum(t: usize, m: usize, bracket: &BigCount) -> BigCount {
    let mut sum = BigCount::zero();
    let mut power = BigCount::one();
    for j in 1..=m {
        power *= bracket;
        sum += binomial(t as u64, j as u64) * &power;
    }
    sum
}

/// Gap-constrained multiple phased-burst bound.
pub fn mpbc_gap_rhs(t: usize, v: usize, m: usize, u: usize) -> Result<BigCount> {
    let geometry = CodeGeometry::new(t, v)?;
    check_m(t, m)?;
    let bracket = subblock_burst_count(v, u)?;
    Ok(gap_rhs_from_bracket(geometry, m, &bracket))
}

pub(crate) fn gap_rhs_from_bracket(geometry: CodeGeometry, m: usize, bracket: &BigCount) -> BigCount {
    phased_sum(geometry.t, m, bracket) + geometry.n() + 1u32
}

/// `sum_{l=1}^{e} C(v, l)`.
pub fn symbol_pattern_count(v: usize, e: usize) -> BigCount {
    (1..=e).map(|l| binomial(v as u64, l as u64)).sum()
}

/// Multiple phased-burst bound without a gap constraint.
pub fn mpbc_nogap_rhs(t: usize, v: usize, m: usize, e: usize) -> Result<BigCount> {
    CodeGeometry::new(t, v)?;
    check_m(t, m)?;
    check_e(v, e)?;
    Ok(phased_sum(t, m, &symbol_pattern_count(v, e)) + 1u32)
}

/// No-gap bound with every subblock pattern correctable: bracket `2^v - 1`.
pub fn full_subblock_rhs(t: usize, v: usize, m: usize) -> Result<BigCount> {
    CodeGeometry::new(t, v)?;
    check_m(t, m)?;
    let bracket = (BigCount::one() << v) - 1u32;
    Ok(phased_sum(t, m, &bracket) + 1u32)
}

/// Single burst correction bound for a length-`n` block and bursts up to `u`.
pub fn sbc_rhs(n: usize, u: usize) -> Result<BigCount> {
    mpbc_gap_rhs(1, n, 1, u)
}

/// Classical burst-correction Hamming bound `n * 2^(u-1) + 1`.
pub fn abramson_rhs(n: usize, u: usize) -> Result<BigCount> {
    if u == 0 {
        return Err(invalid("burst length u must be at least 1"));
    }
    Ok((BigCount::from(n) << (u - 1)) + 1u32)
}

/// `log2` of a big integer from its bit length and top 64 bits.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map_or(f64::NAN, |w| (w as f64).log2());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// `ceil(log2(rhs))`, exact.
pub fn min_redundancy(rhs: &BigCount) -> Result<u64> {
    if rhs.is_zero() {
        return Err(Error::ZeroRhs);
    }
    Ok((rhs - 1u32).bits())
}

pub fn to_bound_result(rhs: BigCount, n: usize, query: BoundQuery) -> Result<BoundResult> {
    let min_redundancy = min_redundancy(&rhs)?;
    if n == 0 {
        return Err(invalid("block length n must be at least 1"));
    }
    let rate_upper = 1.0 - log2_big(&rhs) / n as f64;
    Ok(BoundResult {
        rhs,
        min_redundancy,
        rate_upper,
        query,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn cbc() {
        assert_eq!(cbc_limit(20), 10);
        assert_eq!(cbc_limit(7), 4);
        assert!(!is_cbc_conforming(20, 15));
        assert!(is_cbc_conforming(20, 10));
        for n in 1..50 {
            for len in 0..=n {
                if is_cbc_conforming(n, len) {
                    // strict only for even n; odd n meets the floor at the limit
                    assert!(n - len >= (n - 1) / 2);
                    if n % 2 == 0 {
                        assert!(n - len > (n - 1) / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn subblock_examples() {
        assert_eq!(subblock_burst_count(6, 2).unwrap(), big(6));
        assert_eq!(subblock_burst_count(8, 2).unwrap(), big(8));
        assert_eq!(subblock_burst_count(20, 15).unwrap(), big(296160));
        assert!(subblock_burst_count(6, 1).is_err());
        assert!(subblock_burst_count(6, 6).is_err());
    }

    #[test]
    fn subblock_table_agrees_with_direct() {
        for v in 3..=16 {
            let table = subblock_burst_counts(v).unwrap();
            assert_eq!(table.len(), v - 2);
            for u in 2..v {
                assert_eq!(table[u - 2], subblock_burst_count(v, u).unwrap(), "v={v} u={u}");
            }
        }
    }

    #[test]
    fn gap_rhs_examples() {
        assert_eq!(mpbc_gap_rhs(2, 6, 1, 2).unwrap(), big(25));
        assert_eq!(sbc_rhs(15, 3).unwrap(), big(61));
        assert_eq!(sbc_rhs(31, 4).unwrap(), big(249));
        assert_eq!(sbc_rhs(20, 15).unwrap(), big(296181));
        assert!(mpbc_gap_rhs(2, 6, 3, 2).is_err());
        assert!(mpbc_gap_rhs(2, 6, 0, 2).is_err());
    }

    #[test]
    fn nogap_examples() {
        assert_eq!(mpbc_nogap_rhs(1, 7, 1, 1).unwrap(), big(8));
        assert_eq!(mpbc_nogap_rhs(3, 4, 1, 4).unwrap(), big(46));
        assert_eq!(mpbc_nogap_rhs(1, 20, 1, 15).unwrap(), big(1042380));
        assert!(mpbc_nogap_rhs(1, 7, 1, 8).is_err());
        assert!(mpbc_nogap_rhs(1, 7, 1, 0).is_err());
    }

    #[test]
    fn full_subblock_examples() {
        assert_eq!(full_subblock_rhs(1, 3, 1).unwrap(), big(8));
        assert_eq!(full_subblock_rhs(3, 4, 1).unwrap(), big(46));
        assert_eq!(full_subblock_rhs(2, 2, 2).unwrap(), big(16));
    }

    #[test]
    fn abramson_examples() {
        assert_eq!(abramson_rhs(15, 3).unwrap(), big(61));
        assert_eq!(abramson_rhs(1, 1).unwrap(), big(2));
        assert_eq!(abramson_rhs(63, 5).unwrap(), big(1009));
        assert!(abramson_rhs(5, 0).is_err());
    }

    #[test]
    fn bound_result_examples() {
        let q = BoundQuery::new(
            CodeGeometry::new(1, 7).unwrap(),
            1,
            Capability::SymbolLimited { e: 1 },
        )
        .unwrap();
        let r = to_bound_result(big(8), 7, q).unwrap();
        assert_eq!(r.min_redundancy, 3);
        assert!((r.rate_upper - 4.0 / 7.0).abs() < 1e-12);

        let r = to_bound_result(big(1), 7, q).unwrap();
        assert_eq!(r.min_redundancy, 0);
        assert_eq!(r.rate_upper, 1.0);

        let r = to_bound_result(big(61), 15, q).unwrap();
        assert_eq!(r.min_redundancy, 6);
        assert!((r.rate_upper - 0.604_617_5).abs() < 1e-6);

        assert_eq!(to_bound_result(big(0), 7, q), Err(Error::ZeroRhs));
    }

    #[test]
    fn redundancy_brackets_rhs() {
        for rhs in 1u64..5000 {
            let r = min_redundancy(&big(rhs)).unwrap();
            assert!(1u64 << r >= rhs);
            if r > 0 {
                assert!(1u64 << (r - 1) < rhs);
            }
        }
    }

    #[test]
    fn log2_precision() {
        for k in [0u32, 1, 52, 63, 64, 65, 200, 1000] {
            let x = BigCount::one() << k;
            assert_eq!(log2_big(&x), k as f64);
        }
        let x: BigCount = (BigCount::one() << 300) * 3u32;
        let expected = 300.0 + 3f64.log2();
        assert!(((log2_big(&x) - expected) / expected).abs() < 2f64.powi(-50));
    }

    #[test]
    fn query_validation() {
        let g = CodeGeometry::new(10, 100).unwrap();
        assert!(BoundQuery::new(g, 11, Capability::FullSubblock).is_err());
        assert!(BoundQuery::new(g, 1, Capability::GapLimited { u: 100 }).is_err());
        assert!(BoundQuery::new(g, 1, Capability::GapLimited { u: 1 }).is_err());
        assert!(BoundQuery::new(g, 1, Capability::SymbolLimited { e: 100 }).is_ok());
        assert!(CodeGeometry::new(0, 5).is_err());
        assert_eq!(g.n(), 1000);
    }
}
