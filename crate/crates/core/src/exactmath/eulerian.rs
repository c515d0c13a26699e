use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, pow_int, sign};
use crate::error::{Error, Result};

/// Triangle of Eulerian numbers, `rows[n][m]` for `0 <= m <= max(n-1, 0)`.
///
/// Each entry comes from the alternating sum
/// `sum_{k=0}^{m} (-1)^k C(n+1, k) (m-k+1)^n`.
#[derive(Clone, Debug, Default)]
pub struct EulerianCache {
    rows: Vec<Vec<BigInt>>,
}

impl EulerianCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rows(n: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(n);
        cache
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let row = explicit_row(self.rows.len() as u64);
            self.rows.push(row);
        }
    }

    /// `<n over m>`, with zero for any `m` outside the stored row.
    pub fn value_or_zero(&self, n: usize, m: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(m))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

fn explicit_row(n: u64) -> Vec<BigInt> {
    let width = n.max(1);
    (0..width)
        .map(|m| {
            (0..=m).fold(BigInt::zero(), |acc, k| {
                acc + sign(k) * binomial(n + 1, k) * pow_int(&BigInt::from(m - k + 1), n)
            })
        })
        .collect()
}

fn shared() -> &'static RwLock<EulerianCache> {
    static CACHE: OnceLock<RwLock<EulerianCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(EulerianCache::with_rows(16)))
}

/// Shared-cache lookup used by the weighted-sum formulas; out-of-range `m`
/// (e.g. `<n over n>` for `n >= 1`) reads as zero.
pub(crate) fn eulerian_or_zero(n: usize, m: usize) -> BigInt {
    {
        let cache = shared().read().expect("eulerian cache poisoned");
        if n < cache.rows.len() {
            return cache.value_or_zero(n, m);
        }
    }
    let mut cache = shared().write().expect("eulerian cache poisoned");
    cache.extend_to(n);
    cache.value_or_zero(n, m)
}

/// Eulerian number `<n over m>` for `0 <= m <= max(n-1, 0)`.
pub fn eulerian(n: u64, m: u64) -> Result<BigInt> {
    if m > n.saturating_sub(1) {
        return Err(Error::Domain(format!(
            "Eulerian index m = {m} out of range for n = {n}"
        )));
    }
    Ok(eulerian_or_zero(n as usize, m as usize))
}
