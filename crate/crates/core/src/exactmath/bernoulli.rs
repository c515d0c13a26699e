use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use super::{binomial, Rational};

/// Memoized Bernoulli numbers with the `B_1 = -1/2` convention.
///
/// Entries are filled by the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: vec![Rational::from_integer(1.into())],
        }
    }

    /// Cache holding `B_0..=B_n`.
    pub fn with_len(n: usize) -> Self {
        let mut cache = Self::new();
        cache.extend_to(n);
        cache
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let m = self.values.len();
            if m >= 3 && m % 2 == 1 {
                self.values.push(Rational::zero());
                continue;
            }
            let acc = self
                .values
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (k, b)| {
                    acc + b * Rational::from_integer(binomial(m as u64 + 1, k as u64))
                });
            self.values.push(-acc / Rational::from_integer((m as u64 + 1).into()));
        }
    }
}

fn shared() -> &'static RwLock<BernoulliCache> {
    static CACHE: OnceLock<RwLock<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BernoulliCache::with_len(32)))
}

/// `B_n` from the process-wide cache. Reads of already computed entries only
/// take the shared read lock.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = shared().read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut cache = shared().write().expect("bernoulli cache poisoned");
    cache.extend_to(n);
    cache.values[n].clone()
}
