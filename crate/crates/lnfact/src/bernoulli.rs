//! Exact Bernoulli numbers via the classical recurrence
//! `sum_{k=0}^{n} C(n+1,k) B_k = 0`, cached for the process lifetime.
//!
//! Convention: `B_1 = -1/2`. Only even indices are consumed by the series
//! coefficients, so the `B_1` sign convention cannot affect results.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact signed ratio. `BigRational` keeps the required invariants: always
/// reduced to lowest terms, denominator positive, zero stored as 0/1.
pub type ExactRatio = BigRational;

static CACHE: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// `B_n` as an exact ratio.
pub fn bernoulli(n: usize) -> ExactRatio {
    {
        let cache = CACHE.read().unwrap();
        if let Some(b) = cache.get(n) {
            return b.clone();
        }
    }
    let mut cache = CACHE.write().unwrap();
    extend_cache(&mut cache, n);
    cache[n].clone()
}

/// `B_0 .. B_{n_max}` in index order.
pub fn bernoulli_upto(n_max: usize) -> Vec<ExactRatio> {
    {
        let cache = CACHE.read().unwrap();
        if cache.len() > n_max {
            return cache[..=n_max].to_vec();
        }
    }
    let mut cache = CACHE.write().unwrap();
    extend_cache(&mut cache, n_max);
    cache[..=n_max].to_vec()
}

/// Grow the cache so that index `n` exists. Caller holds the write lock, so
/// readers never observe a partially computed entry.
fn extend_cache(cache: &mut Vec<BigRational>, n: usize) {
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1,k) B_k
        let mut sum = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                sum += b * BigRational::from_integer(binom.clone());
            }
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let b_m = -sum / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(b_m);
    }
}
