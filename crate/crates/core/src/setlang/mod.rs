//! Symbolic, lazily evaluated subsets of N.
//!
//! A [`SetDescriptor`] is a closed term. Every constructor has a terminating
//! membership test; [`SetDescriptor::enumerate`] lists the members up to a
//! bound in ascending order. Down-closures of infinite sets are the one
//! semi-decidable case: their witness search stops at an explicit limit
//! that travels with the term.
//!
//! Values are `u64`; products that overflow are treated as non-members.

mod enumerate;
pub mod rules;
pub mod syntax;

use std::fmt;

use crate::arith::{exact_root, factorize, is_prime, omega_of, quotient_level, LevelIndex};
use crate::sieve::prime_index;
use crate::verdict::Verdict;

pub use rules::LevelRange;

/// Default witness-search limit for down-closures of infinite sets.
pub const DEFAULT_DOWN_LIMIT: u64 = 1_000_000;

/// A sorted, duplicate-free set of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    /// Zeros are dropped; N has no 0 here.
    pub fn new(items: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = items.into_iter().filter(|&x| x > 0).collect();
        v.sort_unstable();
        v.dedup();
        FiniteSet(v)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Chooses `n_i ∈ L_i` for the diagonal set `{n_0, n_1, n_2, ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    /// `n_i = p^i` for a prime `p`.
    PowersOf(u64),
    /// `n_i` = product of the first `i` primes.
    Primorial,
}

impl Selector {
    pub fn element(&self, i: u32) -> Option<u64> {
        match *self {
            Selector::PowersOf(p) => p.checked_pow(i),
            Selector::Primorial => {
                let mut acc = 1u64;
                for k in 0..i as usize {
                    acc = acc.checked_mul(crate::sieve::nth_prime(k)?)?;
                }
                Some(acc)
            }
        }
    }

    pub fn index_of(&self, n: u64) -> Option<u32> {
        match *self {
            Selector::PowersOf(p) => {
                let mut i = 0;
                let mut m = n;
                while m % p == 0 && m > 1 {
                    m /= p;
                    i += 1;
                }
                (m == 1 && n >= 1).then_some(i)
            }
            Selector::Primorial => {
                let mut acc = 1u64;
                let mut i = 0u32;
                loop {
                    if acc == n {
                        return Some(i);
                    }
                    if acc > n {
                        return None;
                    }
                    acc = acc.checked_mul(crate::sieve::nth_prime(i as usize)?)?;
                    i += 1;
                }
            }
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::PowersOf(p) => write!(f, "pow{p}"),
            Selector::Primorial => write!(f, "primorial"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetDescriptor {
    Finite(FiniteSet),
    Primes,
    /// `L_i`
    Level(u32),
    /// `A^k = {a^k : a ∈ A}`
    Powers(Box<SetDescriptor>, u32),
    /// `A^(n)`: products of `n` pairwise distinct elements of `A`.
    DistinctProducts(Box<SetDescriptor>, u32),
    /// Products `∏ a_j^{e_j}` over pairwise distinct `a_j ∈ A`, one per exponent.
    Pattern(Box<SetDescriptor>, Vec<u32>),
    /// `nA`
    Scale(u64, Box<SetDescriptor>),
    /// `A/n = {m : mn ∈ A}`
    Quotient(Box<SetDescriptor>, u64),
    /// `A↑`: numbers with a divisor in `A`.
    UpClosure(Box<SetDescriptor>),
    /// `A↓`: numbers with a multiple in `A`; the second field bounds the
    /// multiple search when `A` is not known to be finite.
    DownClosure(Box<SetDescriptor>, u64),
    /// `⋃_{b ∈ B} bC`
    ProductUnion(Box<SetDescriptor>, Box<SetDescriptor>),
    /// `{c·r^n : n ≥ 1}`
    GeomTimes(u64, u64),
    Diagonal(Selector),
    MultiplesOf(u64),
    /// The set without its `k` smallest members.
    Tail(Box<SetDescriptor>, u64),
    /// Primes `p_j` (with `p_0 = 2`) whose index satisfies `j ≡ residue (mod modulus)`.
    IndexedPrimes { modulus: u32, residue: u32 },
    Union(Vec<SetDescriptor>),
    Intersection(Vec<SetDescriptor>),
    Complement(Box<SetDescriptor>),
}

use SetDescriptor::*;

impl SetDescriptor {
    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        Finite(FiniteSet::new(items))
    }

    pub fn empty() -> Self {
        Finite(FiniteSet::default())
    }

    /// All of N.
    pub fn nat() -> Self {
        Complement(Box::new(Self::empty()))
    }

    pub fn level(i: u32) -> Self {
        Level(i)
    }

    /// `L_0 ∪ ... ∪ L_{n-1}`
    pub fn levels_below(n: u32) -> Self {
        match n {
            0 => Self::empty(),
            1 => Level(0),
            _ => Union((0..n).map(Level).collect()),
        }
    }

    pub fn diagonal(sel: Selector) -> Self {
        Diagonal(sel)
    }

    pub fn geom(c: u64, r: u64) -> Self {
        GeomTimes(c, r)
    }

    pub fn multiples_of(d: u64) -> Self {
        if d == 1 {
            Self::nat()
        } else {
            MultiplesOf(d)
        }
    }

    pub fn powers(self, k: u32) -> Self {
        match (&self, k) {
            (_, 1) => self,
            (Finite(f), _) if f.as_slice().iter().all(|&a| a.checked_pow(k).is_some()) => {
                Self::finite(f.as_slice().iter().map(|&a| a.pow(k)))
            }
            _ => Powers(Box::new(self), k),
        }
    }

    pub fn distinct_products(self, n: u32) -> Self {
        match (&self, n) {
            (Finite(f), 1) => Finite(f.clone()),
            _ => DistinctProducts(Box::new(self), n),
        }
    }

    pub fn pattern(self, mut exps: Vec<u32>) -> Self {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        if !exps.is_empty() && exps.iter().all(|&e| e == exps[0]) {
            let (k, n) = (exps[0], exps.len() as u32);
            return self.powers(k).distinct_products(n);
        }
        Pattern(Box::new(self), exps)
    }

    pub fn scale(self, c: u64) -> Self {
        match (&self, c) {
            (_, 1) => self,
            (Finite(f), _) if f.as_slice().iter().all(|&a| a.checked_mul(c).is_some()) => {
                Self::finite(f.as_slice().iter().map(|&a| a * c))
            }
            (Scale(d, inner), _) if c.checked_mul(*d).is_some() => Scale(c * d, inner.clone()),
            _ => Scale(c, Box::new(self)),
        }
    }

    /// `A/n`, rewritten through the level-quotient law where possible.
    pub fn quotient(self, n: u64) -> Self {
        if n == 1 {
            return self;
        }
        match &self {
            Level(i) => match quotient_level(LevelIndex(*i), n) {
                Ok(Some(j)) => Level(j.get()),
                _ => Self::empty(),
            },
            Finite(f) => Self::finite(f.as_slice().iter().filter(|&&a| a % n == 0).map(|&a| a / n)),
            MultiplesOf(d) => Self::multiples_of(d / crate::arith::gcd_u64(*d, n)),
            _ => Quotient(Box::new(self), n),
        }
    }

    pub fn up_closure(self) -> Self {
        match self {
            UpClosure(_) | MultiplesOf(_) => self,
            Finite(ref f) if f.len() == 1 => Self::multiples_of(f.as_slice()[0]),
            _ => UpClosure(Box::new(self)),
        }
    }

    pub fn down_closure(self) -> Self {
        self.down_closure_with_limit(DEFAULT_DOWN_LIMIT)
    }

    pub fn down_closure_with_limit(self, limit: u64) -> Self {
        match self {
            DownClosure(..) => self,
            _ => DownClosure(Box::new(self), limit),
        }
    }

    /// `⋃_{b ∈ B} bC` with the constant family `C`.
    pub fn product_union(self, c: SetDescriptor) -> Self {
        match (&self, &c) {
            (Finite(b), Finite(cc)) => {
                let prods: Option<Vec<u64>> = b
                    .as_slice()
                    .iter()
                    .flat_map(|&x| cc.as_slice().iter().map(move |&y| x.checked_mul(y)))
                    .collect();
                match prods {
                    Some(p) => Self::finite(p),
                    None => ProductUnion(Box::new(self), Box::new(c)),
                }
            }
            (Finite(b), _) if b.len() == 1 => c.scale(b.as_slice()[0]),
            (_, Finite(cc)) if cc.len() == 1 => self.scale(cc.as_slice()[0]),
            _ => ProductUnion(Box::new(self), Box::new(c)),
        }
    }

    pub fn tail(self, k: u64) -> Self {
        match (self, k) {
            (s, 0) => s,
            (Tail(inner, j), _) => Tail(inner, j + k),
            (s, _) => Tail(Box::new(s), k),
        }
    }

    pub fn union(parts: Vec<SetDescriptor>) -> Self {
        match parts.len() {
            0 => Self::empty(),
            1 => parts.into_iter().next().unwrap(),
            _ => Union(parts),
        }
    }

    pub fn intersection(parts: Vec<SetDescriptor>) -> Self {
        match parts.len() {
            0 => Self::nat(),
            1 => parts.into_iter().next().unwrap(),
            _ => Intersection(parts),
        }
    }

    pub fn complement(self) -> Self {
        match self {
            Complement(inner) => *inner,
            s => Complement(Box::new(s)),
        }
    }

    pub fn is_finite_literal(&self) -> bool {
        matches!(self, Finite(_))
    }

    /// Membership of `n`. Always terminates; `0` is never a member.
    pub fn member(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match self {
            Finite(f) => f.contains(n),
            Primes => is_prime(n),
            Level(i) => omega_of(n) == *i,
            Powers(s, k) => {
                if *k == 0 {
                    return n == 1;
                }
                exact_root(n, *k).is_some_and(|r| s.member(r))
            }
            DistinctProducts(s, c) => pattern_member(s, &vec![1; *c as usize], n),
            Pattern(s, exps) => pattern_member(s, exps, n),
            Scale(c, s) => *c != 0 && n % c == 0 && s.member(n / c),
            Quotient(s, c) => n.checked_mul(*c).is_some_and(|m| s.member(m)),
            UpClosure(s) => divisors(n).into_iter().any(|d| s.member(d)),
            DownClosure(s, limit) => {
                let cap = rules::finite_max(s).unwrap_or(*limit);
                let mut m = n;
                while m <= cap {
                    if s.member(m) {
                        return true;
                    }
                    match m.checked_add(n) {
                        Some(next) => m = next,
                        None => break,
                    }
                }
                false
            }
            ProductUnion(b, c) => divisors(n).into_iter().any(|d| b.member(d) && c.member(n / d)),
            GeomTimes(c, r) => geom_exponent(*c, *r, n).is_some(),
            Diagonal(sel) => sel.index_of(n).is_some(),
            MultiplesOf(d) => *d != 0 && n % d == 0,
            Tail(s, k) => s.member(n) && count_reaches(s, n - 1, *k),
            IndexedPrimes { modulus, residue } => {
                *modulus > 0
                    && is_prime(n)
                    && prime_index(n).is_some_and(|j| j % *modulus as usize == *residue as usize)
            }
            Union(v) => v.iter().any(|s| s.member(n)),
            Intersection(v) => v.iter().all(|s| s.member(n)),
            Complement(s) => !s.member(n),
        }
    }

    /// `Some(limit)` when membership relies on a bounded down-closure search.
    pub fn search_limit(&self) -> Option<u64> {
        rules::approximation_limit(self)
    }

    /// Whether every member test on this term is exact.
    pub fn membership_exact(&self) -> bool {
        self.search_limit().is_none()
    }

    /// Upward-closedness of the set: proven by construction for closures,
    /// otherwise checked on `[1, bound]`.
    pub fn is_upward_closed(&self, bound: u64) -> Verdict {
        match self {
            UpClosure(_) => return Verdict::proven("closure-idempotent", self.to_string()),
            MultiplesOf(d) => return Verdict::proven("multiples-closed", format!("mult({d})")),
            Complement(inner) if matches!(**inner, Finite(ref f) if f.is_empty()) => {
                return Verdict::proven("whole-space", "N")
            }
            _ => {}
        }
        let exact = self.membership_exact();
        for a in self.enumerate(bound) {
            let mut m = a.saturating_mul(2);
            while m <= bound {
                if !self.member(m) {
                    if exact {
                        return Verdict::Refuted(m);
                    }
                    break;
                }
                m += a;
            }
        }
        Verdict::ConsistentUpTo(bound.min(self.search_limit().unwrap_or(u64::MAX)))
    }
}

/// The `n ≥ 1` with `m = c·r^n`, when there is one.
pub(crate) fn geom_exponent(c: u64, r: u64, m: u64) -> Option<u64> {
    if c == 0 || r == 0 || m % c != 0 {
        return None;
    }
    let mut q = m / c;
    if r == 1 {
        return (q == 1).then_some(1);
    }
    let mut n = 0;
    while q % r == 0 {
        q /= r;
        n += 1;
    }
    (q == 1 && n >= 1).then_some(n)
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    match factorize(n) {
        Ok(f) => f.divisors(),
        Err(_) => Vec::new(),
    }
}

// Does `s` have at least `k` members in `[1, upto]`? Grows the probe window
// geometrically so sparse sets stay cheap.
fn count_reaches(s: &SetDescriptor, upto: u64, k: u64) -> bool {
    if k == 0 {
        return true;
    }
    let mut window = 64u64.min(upto);
    loop {
        if s.enumerate(window).len() as u64 >= k {
            return true;
        }
        if window >= upto {
            return false;
        }
        window = window.saturating_mul(4).min(upto);
    }
}

fn pattern_member(s: &SetDescriptor, exps: &[u32], n: u64) -> bool {
    let mut exps = exps.to_vec();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    if exps.is_empty() {
        return n == 1;
    }
    let divs = divisors(n);
    let in_set: Vec<bool> = divs.iter().map(|&d| s.member(d)).collect();
    let mut used = Vec::with_capacity(exps.len());
    pattern_dfs(&exps, 0, n, &divs, &in_set, &mut used)
}

fn pattern_dfs(
    exps: &[u32],
    slot: usize,
    rest: u64,
    divs: &[u64],
    in_set: &[bool],
    used: &mut Vec<u64>,
) -> bool {
    if slot == exps.len() {
        return rest == 1;
    }
    let e = exps[slot];
    // Equal exponents are interchangeable: keep their elements increasing.
    let floor = match used.last() {
        Some(&prev) if exps[slot - 1] == e => prev + 1,
        _ => 1,
    };
    for (i, &a) in divs.iter().enumerate() {
        if a < floor || !in_set[i] || used.contains(&a) {
            continue;
        }
        let Some(ae) = a.checked_pow(e) else { break };
        if ae > rest {
            if a > 1 {
                break;
            }
            continue;
        }
        if rest % ae != 0 {
            continue;
        }
        used.push(a);
        if pattern_dfs(exps, slot + 1, rest / ae, divs, in_set, used) {
            return true;
        }
        used.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(s: &SetDescriptor, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&n| s.member(n)).collect()
    }

    #[test]
    fn member_examples() {
        assert!(SetDescriptor::geom(3, 2).member(12));
        assert!(!SetDescriptor::geom(3, 2).member(3));
        assert!(Level(0).member(1));
        assert!(!UpClosure(Box::new(SetDescriptor::finite([4]))).member(6));
        assert!(SetDescriptor::finite([2]).up_closure().member(6));
    }

    #[test]
    fn enumerate_examples() {
        let q = Quotient(Box::new(Level(3)), 2);
        assert_eq!(q.enumerate(20), vec![4, 6, 9, 10, 14, 15]);
        assert_eq!(brute(&q, 20), vec![4, 6, 9, 10, 14, 15]);
        let d = DistinctProducts(Box::new(SetDescriptor::finite([2, 3, 5])), 2);
        assert_eq!(d.enumerate(20), vec![6, 10, 15]);
        assert_eq!(Diagonal(Selector::PowersOf(2)).enumerate(10), vec![1, 2, 4, 8]);
    }

    #[test]
    fn quotient_examples() {
        assert!(Level(2).quotient(3).member(5));
        let s = SetDescriptor::finite([6]).quotient(4);
        assert!((1..=1000).all(|m| !s.member(m)));
        let raw = Quotient(Box::new(SetDescriptor::finite([6])), 4);
        assert!((1..=1000).all(|m| !raw.member(m)));
        let same = Primes.quotient(1);
        assert_eq!(same, Primes);
    }

    #[test]
    fn closures() {
        let s = SetDescriptor::finite([4, 6]).up_closure();
        let twice = s.clone().up_closure();
        assert!((1..=1000).all(|n| s.member(n) == twice.member(n)));
        let raw_twice = UpClosure(Box::new(s.clone()));
        assert!((1..=1000).all(|n| s.member(n) == raw_twice.member(n)));
        assert_eq!(SetDescriptor::finite([12]).down_closure().enumerate(100), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn product_union_examples() {
        let pu = ProductUnion(
            Box::new(SetDescriptor::finite([2, 3])),
            Box::new(SetDescriptor::finite([5, 7])),
        );
        assert_eq!(pu.enumerate(100), vec![10, 14, 15, 21]);
        assert_eq!(brute(&pu, 100), vec![10, 14, 15, 21]);
        let ident = ProductUnion(Box::new(SetDescriptor::finite([1])), Box::new(Level(2)));
        assert!((1..=1000).all(|n| ident.member(n) == Level(2).member(n)));
        let l1l1 = ProductUnion(Box::new(Level(1)), Box::new(Level(1)));
        assert!(l1l1.enumerate(10_000).iter().all(|&n| Level(2).member(n)));
    }

    #[test]
    fn upward_closed_verdicts() {
        assert!(SetDescriptor::finite([3]).up_closure().is_upward_closed(100).is_proven());
        assert!(UpClosure(Box::new(SetDescriptor::finite([3]))).is_upward_closed(100).is_proven());
        assert_eq!(SetDescriptor::finite([2, 4]).is_upward_closed(8), Verdict::Refuted(6));
        assert_eq!(Level(2).is_upward_closed(100), Verdict::Refuted(8));
        assert_eq!(SetDescriptor::nat().is_upward_closed(10), Verdict::proven("whole-space", "N"));
        let ones = Union(vec![MultiplesOf(2), MultiplesOf(3)]);
        assert_eq!(ones.is_upward_closed(200), Verdict::ConsistentUpTo(200));
    }

    #[test]
    fn tails_and_geom() {
        let t = Tail(Box::new(Diagonal(Selector::PowersOf(2))), 2);
        assert_eq!(t.enumerate(100), vec![4, 8, 16, 32, 64]);
        assert!(!t.member(2));
        assert!(t.member(1 << 40));
        assert_eq!(geom_exponent(3, 2, 48), Some(4));
        assert_eq!(geom_exponent(3, 2, 3), None);
        let pd = Diagonal(Selector::Primorial);
        assert_eq!(pd.enumerate(300), vec![1, 2, 6, 30, 210]);
    }

    #[test]
    fn pattern_membership_requires_distinct_elements() {
        // a·b² with a ≠ b from {2,3}
        let p = Pattern(Box::new(SetDescriptor::finite([2, 3])), vec![2, 1]);
        assert_eq!(brute(&p, 100), vec![12, 18]);
        assert_eq!(p.enumerate(100), vec![12, 18]);
        let sq = DistinctProducts(Box::new(Primes), 2);
        assert!(!sq.member(4));
        assert!(sq.member(6));
    }

    #[test]
    fn indexed_primes() {
        let even = IndexedPrimes { modulus: 2, residue: 0 };
        assert_eq!(even.enumerate(30), vec![2, 5, 11, 17, 23]);
        assert_eq!(brute(&even, 30), vec![2, 5, 11, 17, 23]);
    }
}
