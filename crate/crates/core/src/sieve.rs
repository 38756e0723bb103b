//! Segmented sieve for bulk Ω computation and a shared prime table.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::ArithError;

/// Default number of integers handled per segment.
pub const DEFAULT_SEGMENT: usize = 1 << 20;

#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    pub segment_size: usize,
    /// Sieve segments on the rayon pool; output order is unaffected.
    pub parallel: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_size: DEFAULT_SEGMENT, parallel: true }
    }
}

/// Primes `≤ limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

const TABLE_LIMIT: u64 = 1 << 22;

fn table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(TABLE_LIMIT))
}

/// The `index`-th prime, counting from `p_0 = 2`, if it falls inside the cached table.
pub fn nth_prime(index: usize) -> Option<u64> {
    table().get(index).copied()
}

/// π(n) − 1 for a prime `n`: its position in the sequence 2, 3, 5, ...
pub fn prime_index(p: u64) -> Option<usize> {
    if p <= TABLE_LIMIT {
        return table().binary_search(&p).ok();
    }
    if !crate::arith::is_prime(p) {
        return None;
    }
    // Beyond the table: count the primes in (TABLE_LIMIT, p) segment by segment.
    let mut count = table().len();
    let mut lo = TABLE_LIMIT + 1;
    while lo < p {
        let hi = (lo + DEFAULT_SEGMENT as u64 - 1).min(p - 1);
        count += omega_segment(lo, hi).iter().filter(|&&w| w == 1).count();
        lo = hi + 1;
    }
    Some(count)
}

fn omega_segment(lo: u64, hi: u64) -> Vec<u8> {
    let len = (hi - lo + 1) as usize;
    let mut rest: Vec<u64> = (lo..=hi).collect();
    let mut counts = vec![0u8; len];
    let root = crate::arith::iroot(hi, 2);
    let primes: Vec<u64> = if root <= TABLE_LIMIT {
        let t = table();
        let end = t.partition_point(|&p| p <= root);
        t[..end].to_vec()
    } else {
        primes_up_to(root)
    };
    for &p in &primes {
        let mut pk = p;
        loop {
            let first = lo.div_ceil(pk) * pk;
            let mut m = first;
            while m <= hi {
                let idx = (m - lo) as usize;
                counts[idx] += 1;
                rest[idx] /= p;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= hi => pk = next,
                _ => break,
            }
        }
    }
    for (c, r) in counts.iter_mut().zip(&rest) {
        if *r > 1 {
            *c += 1;
        }
    }
    counts
}

/// Ω(k) for every `k` in `lo..=hi`. An empty range (`lo > hi`) yields an empty vector.
pub fn omega_sieve(lo: u64, hi: u64) -> Result<Vec<u8>, ArithError> {
    omega_sieve_with(lo, hi, &SieveConfig::default())
}

pub fn omega_sieve_with(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<Vec<u8>, ArithError> {
    if lo == 0 {
        return Err(ArithError::Zero);
    }
    if lo > hi {
        return Ok(Vec::new());
    }
    let seg = cfg.segment_size.max(1) as u64;
    let mut bounds = Vec::new();
    let mut start = lo;
    loop {
        let end = start.saturating_add(seg - 1).min(hi);
        bounds.push((start, end));
        if end == hi {
            break;
        }
        start = end + 1;
    }
    let parts: Vec<Vec<u8>> = if cfg.parallel && bounds.len() > 1 {
        bounds.par_iter().map(|&(a, b)| omega_segment(a, b)).collect()
    } else {
        bounds.iter().map(|&(a, b)| omega_segment(a, b)).collect()
    };
    Ok(parts.concat())
}
