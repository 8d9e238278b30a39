//! Exact counting of binary patterns under a maximum zero-run constraint.
//!
//! All counts are arbitrary-precision. The alternating inclusion-exclusion
//! sum is accumulated as separate positive and negative parts so no signed
//! big integer is ever needed.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(n, k)` by the exact multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Rows `0..=max_n` of Pascal's triangle.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigCount>>,
    zero: BigCount,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigCount>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigCount::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigCount::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigCount::one());
            rows.push(row);
        }
        Self {
            rows,
            zero: BigCount::zero(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`; panics if `n` is beyond the table.
    pub fn get(&self, n: usize, k: usize) -> &BigCount {
        let row = &self.rows[n];
        row.get(k).unwrap_or(&self.zero)
    }
}

/// Evaluates the run-constrained counts against a shared Pascal table.
///
/// A counter built for `max_len` answers every query whose pattern length is
/// at most `max_len`.
#[derive(Debug, Clone)]
pub struct RunCounter {
    table: BinomialTable,
}

impl RunCounter {
    pub fn new(max_len: usize) -> Self {
        Self {
            table: BinomialTable::new(max_len + 1),
        }
    }

    pub fn max_len(&self) -> usize {
        self.table.max_n() - 1
    }

    fn check_len(&self, c: usize) -> Result<()> {
        if c > self.max_len() {
            return Err(invalid(format!(
                "pattern length {c} exceeds counter capacity {}",
                self.max_len()
            )));
        }
        Ok(())
    }

    /// Number of length-`c` vectors with exactly `d` ones whose zero runs all
    /// have length at most `e`. `e = -1` is evaluated by the same sum.
    pub fn at_most(&self, c: usize, d: usize, e: i64) -> Result<BigCount> {
        if d > c {
            return Err(invalid(format!("ones d={d} exceeds length c={c}")));
        }
        if e < -1 {
            return Err(invalid(format!("max run e={e} must be at least -1")));
        }
        self.check_len(c)?;
        Ok(self.at_most_unchecked(c, d, e))
    }

    fn at_most_unchecked(&self, c: usize, d: usize, e: i64) -> BigCount {
        let step = e + 1;
        let mut plus = BigCount::zero();
        let mut minus = BigCount::zero();
        for j in 0..=d + 1 {
            let rem = c as i64 - j as i64 * step;
            if rem < 0 {
                break;
            }
            let term = self.table.get(d + 1, j) * self.table.get(rem as usize, d);
            if j % 2 == 0 {
                plus += term;
            } else {
                minus += term;
            }
        }
        plus - minus
    }

    /// Number of length-`x` vectors with `y` ones whose longest zero run is
    /// exactly `z`. Requires `x - (y + z) >= 0`.
    pub fn exact(&self, x: usize, y: usize, z: usize) -> Result<BigCount> {
        if y > x {
            return Err(invalid(format!("ones y={y} exceeds length x={x}")));
        }
        if y + z > x {
            return Err(invalid(format!(
                "x - (y + z) must be nonnegative, got x={x}, y={y}, z={z}"
            )));
        }
        self.check_len(x)?;
        Ok(self.exact_unchecked(x, y, z))
    }

    fn exact_unchecked(&self, x: usize, y: usize, z: usize) -> BigCount {
        self.at_most_unchecked(x, y, z as i64) - self.at_most_unchecked(x, y, z as i64 - 1)
    }

    /// The burst-interior count `F(x, y, z, v)`: one for the all-zero
    /// interior of a weight-two burst inside the cyclic burst constraint,
    /// otherwise the exact-run count.
    pub fn interior(&self, x: usize, y: usize, z: usize, v: usize) -> Result<BigCount> {
        if y > x || z > x {
            return Err(invalid(format!(
                "interior count needs y <= x and z <= x, got x={x}, y={y}, z={z}"
            )));
        }
        if v < x + 3 {
            return Err(invalid(format!(
                "subblock length v={v} leaves no gap for interior length x={x}"
            )));
        }
        self.check_len(x)?;
        Ok(self.interior_or_zero(x, y, z, v))
    }

    /// `F(x, y, z, v)` with cells outside `x - (y + z) >= 0` taken as zero.
    /// Callers guarantee `y <= x` and `x <= max_len`.
    pub(crate) fn interior_or_zero(&self, x: usize, y: usize, z: usize, v: usize) -> BigCount {
        if y == 0 && x == z && in_weight_two_branch(x, v) {
            return BigCount::one();
        }
        if y + z > x {
            return BigCount::zero();
        }
        self.exact_unchecked(x, y, z)
    }
}

/// Whether interior length `x` takes the weight-two branch of `F` in a
/// subblock of length `v`, i.e. `x < floor(v/2 - 2)`.
pub fn in_weight_two_branch(x: usize, v: usize) -> bool {
    (x as i64) < (v / 2) as i64 - 2
}

/// `A(c, d, e)`; see [`RunCounter::at_most`].
pub fn count_run_at_most(c: usize, d: usize, e: i64) -> Result<BigCount> {
    RunCounter::new(c).at_most(c, d, e)
}

/// `B(x, y, z)`; see [`RunCounter::exact`].
pub fn count_run_exact(x: usize, y: usize, z: usize) -> Result<BigCount> {
    RunCounter::new(x).exact(x, y, z)
}

/// `F(x, y, z, v)`; see [`RunCounter::interior`].
pub fn interior_count(x: usize, y: usize, z: usize, v: usize) -> Result<BigCount> {
    RunCounter::new(x).interior(x, y, z, v)
}

/// Lower bound `ceil((u - 1) / g) + 1` on the weight of an end-around burst
/// of length `u` with error-free gap `g`.
pub fn min_burst_weight(u: usize, g: usize) -> Result<usize> {
    if u == 0 {
        return Err(invalid("burst length u must be at least 1"));
    }
    if g == 0 {
        return Err(invalid("gap g must be at least 1"));
    }
    Ok((u - 1).div_ceil(g) + 1)
}
