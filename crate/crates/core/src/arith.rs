//! Prime factorization, the level function Ω, prime signatures and the
//! level-quotient law.
//!
//! A positive integer `n` lies on level `L_i` exactly when `Ω(n) = i`, where
//! Ω counts prime factors with multiplicity. `L_0 = {1}`.

use std::fmt;

use serde::Serialize;

use crate::error::ArithError;

/// Index of a level `L_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LevelIndex(pub u32);

impl LevelIndex {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for LevelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}", self.0)
    }
}

/// Prime-exponent decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly ascending primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// The primes of `n` repeated by multiplicity, ascending.
    pub fn prime_multiset(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    pub fn signature(&self) -> PrimeSignature {
        let mut exps: Vec<u32> = self.factors.iter().map(|&(_, e)| e).collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        PrimeSignature(exps)
    }

    /// All divisors of `n`, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// The weakly descending exponent pattern of a factorization, i.e. an
/// integer partition of Ω(n).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimeSignature(pub Vec<u32>);

impl PrimeSignature {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for PrimeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant; `n` must be odd, composite and not a prime power of a small prime.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

const TRIAL_LIMIT: u64 = 1 << 12;

/// Prime factorization of `n ≥ 1`.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, factors: &mut Vec<(u64, u32)>| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        push(p, e, &mut factors);
    }
    // 30-wheel
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        push(p, e, &mut factors);
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if rest > 1 {
        if p * p > rest {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_large(rest, &mut big);
            big.sort_unstable();
            for q in big {
                match factors.last_mut() {
                    Some((last, e)) if *last == q => *e += 1,
                    _ => factors.push((q, 1)),
                }
            }
        }
    }
    Ok(Factorization { n, factors })
}

/// Ω(n): the number of prime factors of `n` counted with multiplicity.
pub fn omega(n: u64) -> Result<LevelIndex, ArithError> {
    factorize(n).map(|f| LevelIndex(f.omega()))
}

/// Ω for internal callers that already guarantee `n ≥ 1`; Ω(0) is reported as 0.
pub(crate) fn omega_of(n: u64) -> u32 {
    match factorize(n) {
        Ok(f) => f.omega(),
        Err(_) => 0,
    }
}

/// The signature class of `n ≥ 2`.
pub fn signature(n: u64) -> Result<PrimeSignature, ArithError> {
    match n {
        0 => Err(ArithError::Zero),
        1 => Err(ArithError::UnitHasNoSignature),
        _ => Ok(factorize(n)?.signature()),
    }
}

/// Every integer partition of `i`, in descending-lexicographic order.
pub fn signature_classes(i: LevelIndex) -> Result<Vec<PrimeSignature>, ArithError> {
    if i.0 == 0 {
        return Err(ArithError::LevelZeroHasNoClasses);
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_desc(i.0, i.0, &mut current, &mut out);
    Ok(out)
}

fn partitions_desc(rest: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<PrimeSignature>) {
    if rest == 0 {
        out.push(PrimeSignature(current.clone()));
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        partitions_desc(rest - part, part, current, out);
        current.pop();
    }
}

/// `L_i / m = L_{i - Ω(m)}` when `Ω(m) ≤ i`, otherwise empty (`None`).
pub fn quotient_level(i: LevelIndex, m: u64) -> Result<Option<LevelIndex>, ArithError> {
    let w = omega(m)?.0;
    Ok(i.0.checked_sub(w).map(LevelIndex))
}

/// Integer `k`-th root: the largest `r` with `r^k ≤ n`.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 0 {
        return u64::MAX;
    }
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && checked_pow(r, k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while checked_pow(r + 1, k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// The exact `k`-th root of `n`, if `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    let r = iroot(n, k);
    (checked_pow(r, k) == Some(n)).then_some(r)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_brute(mut n: u64) -> u32 {
        let mut count = 0;
        let mut d = 2;
        while n > 1 {
            while n % d == 0 {
                n /= d;
                count += 1;
            }
            d += 1;
        }
        count
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(27).unwrap().factors(), &[(3, 3)]);
        assert_eq!(factorize(0), Err(ArithError::Zero));
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.factors().iter().map(|&(p, e)| p.pow(e)).product::<u64>(), u64::MAX);
        assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1).unwrap(), LevelIndex(0));
        assert_eq!(omega(8).unwrap(), LevelIndex(3));
        assert_eq!(omega(30).unwrap(), LevelIndex(3));
    }

    #[test]
    fn omega_matches_trial_division() {
        for n in 1..5000 {
            assert_eq!(omega(n).unwrap().0, omega_brute(n), "n = {n}");
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(8).unwrap(), PrimeSignature(vec![3]));
        assert_eq!(signature(12).unwrap(), PrimeSignature(vec![2, 1]));
        assert_eq!(signature(30).unwrap(), PrimeSignature(vec![1, 1, 1]));
        assert_eq!(signature(7).unwrap(), PrimeSignature(vec![1]));
        assert_eq!(signature(1), Err(ArithError::UnitHasNoSignature));
    }

    // Brute-force partition count by enumerating weakly descending sequences.
    fn partition_count(n: u32, max: u32) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| partition_count(n - p, p)).sum()
    }

    #[test]
    fn signature_classes_examples() {
        let three = signature_classes(LevelIndex(3)).unwrap();
        assert_eq!(
            three,
            vec![PrimeSignature(vec![3]), PrimeSignature(vec![2, 1]), PrimeSignature(vec![1, 1, 1])]
        );
        assert_eq!(signature_classes(LevelIndex(1)).unwrap(), vec![PrimeSignature(vec![1])]);
        assert_eq!(signature_classes(LevelIndex(4)).unwrap().len(), 5);
        assert_eq!(signature_classes(LevelIndex(0)), Err(ArithError::LevelZeroHasNoClasses));
        for i in 1..=12 {
            let classes = signature_classes(LevelIndex(i)).unwrap();
            assert_eq!(classes.len(), partition_count(i, i));
            let mut sorted = classes.clone();
            sorted.sort();
            sorted.reverse();
            assert_eq!(classes, sorted, "descending-lexicographic order for {i}");
        }
    }

    #[test]
    fn quotient_level_examples() {
        assert_eq!(quotient_level(LevelIndex(3), 2).unwrap(), Some(LevelIndex(2)));
        assert_eq!(quotient_level(LevelIndex(5), 1).unwrap(), Some(LevelIndex(5)));
        assert_eq!(quotient_level(LevelIndex(2), 12).unwrap(), None);
        // brute force: no r ≤ 10^4 with 12r on L_2
        assert!((1..=10_000u64).all(|r| omega_brute(12 * r) != 2));
    }

    #[test]
    fn roots() {
        assert_eq!(iroot(26, 3), 2);
        assert_eq!(iroot(27, 3), 3);
        assert_eq!(exact_root(1 << 40, 8), Some(32));
        assert_eq!(exact_root(1000, 2), None);
        assert_eq!(iroot(u64::MAX, 2), 4_294_967_295);
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(factorize(12).unwrap().divisors(), vec![1, 2, 3, 4, 6, 12]);
    }
}
