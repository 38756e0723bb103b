//! Symbolic facts about descriptors: level ranges, finiteness, and sound
//! (incomplete) subset rules. Every positive answer here is a proof; `None`
//! or `false` only means no rule applied.

use super::{geom_exponent, SetDescriptor, SetDescriptor::*, Selector};
use crate::arith::{factorize, gcd_u64, omega_of};

// Finite sets larger than this are not materialised by the rules.
const MATERIALISE_CAP: usize = 1 << 16;
// How many of the smallest members of `T` are tried as divisors for `T↑`.
const UP_CANDIDATES: usize = 16;
const UP_PROBE_BOUND: u64 = 1 << 16;

/// Bounds on Ω over the members of a set. `max = None` means unbounded.
/// An empty set may report an inverted range (`min > max`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    pub min: u32,
    pub max: Option<u32>,
}

impl LevelRange {
    fn exact(i: u32) -> Self {
        LevelRange { min: i, max: Some(i) }
    }

    fn from(min: u32) -> Self {
        LevelRange { min, max: None }
    }

    fn empty() -> Self {
        LevelRange { min: u32::MAX, max: Some(0) }
    }

    pub fn is_empty(&self) -> bool {
        self.max.is_some_and(|m| m < self.min)
    }

    pub fn uniform(&self) -> Option<u32> {
        match self.max {
            Some(m) if m == self.min => Some(m),
            _ => None,
        }
    }

    fn scale(self, k: u32) -> Self {
        if self.is_empty() {
            return self;
        }
        LevelRange { min: self.min.saturating_mul(k), max: self.max.map(|m| m.saturating_mul(k)) }
    }

    fn shift(self, w: u32) -> Self {
        if self.is_empty() {
            return self;
        }
        LevelRange { min: self.min.saturating_add(w), max: self.max.map(|m| m.saturating_add(w)) }
    }

    fn add(self, other: Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        LevelRange {
            min: self.min.saturating_add(other.min),
            max: self.max.zip(other.max).map(|(a, b)| a.saturating_add(b)),
        }
    }

    fn hull(self, other: Self) -> Self {
        if self.is_empty() {
            return other;
        }
        if other.is_empty() {
            return self;
        }
        LevelRange { min: self.min.min(other.min), max: self.max.zip(other.max).map(|(a, b)| a.max(b)) }
    }

    fn meet(self, other: Self) -> Self {
        let max = match (self.max, other.max) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        LevelRange { min: self.min.max(other.min), max }
    }

    fn separated(&self, other: &Self) -> bool {
        self.is_empty()
            || other.is_empty()
            || self.max.is_some_and(|m| m < other.min)
            || other.max.is_some_and(|m| m < self.min)
    }
}

fn finite_range(elems: &[u64]) -> LevelRange {
    elems
        .iter()
        .map(|&e| LevelRange::exact(omega_of(e)))
        .reduce(LevelRange::hull)
        .unwrap_or_else(LevelRange::empty)
}

/// Ω bounds over the members of `s`.
pub fn level_range(s: &SetDescriptor) -> LevelRange {
    match s {
        Finite(f) => finite_range(f.as_slice()),
        Primes | IndexedPrimes { .. } => LevelRange::exact(1),
        Level(i) => LevelRange::exact(*i),
        Powers(x, k) => level_range(x).scale(*k),
        DistinctProducts(x, n) => {
            if *n == 0 {
                LevelRange::exact(0)
            } else {
                level_range(x).scale(*n)
            }
        }
        Pattern(x, exps) => level_range(x).scale(exps.iter().sum()),
        Scale(c, x) => level_range(x).shift(omega_of(*c)),
        Quotient(x, c) => {
            let r = level_range(x);
            let w = omega_of(*c);
            if r.is_empty() || r.max.is_some_and(|m| m < w) {
                return LevelRange::empty();
            }
            LevelRange { min: r.min.saturating_sub(w), max: r.max.map(|m| m - w) }
        }
        UpClosure(x) => {
            let r = level_range(x);
            if r.is_empty() {
                r
            } else {
                LevelRange::from(r.min)
            }
        }
        DownClosure(x, _) => {
            let r = level_range(x);
            if r.is_empty() {
                r
            } else {
                LevelRange { min: 0, max: r.max }
            }
        }
        ProductUnion(b, c) => level_range(b).add(level_range(c)),
        GeomTimes(c, r) => match (*c, *r) {
            (0, _) | (_, 0) => LevelRange::empty(),
            (c, 1) => LevelRange::exact(omega_of(c)),
            (c, r) => LevelRange::from(omega_of(c) + omega_of(r)),
        },
        Diagonal(_) => LevelRange::from(0),
        MultiplesOf(d) => LevelRange::from(omega_of(*d)),
        Tail(x, k) => match x.as_ref() {
            Diagonal(_) => LevelRange::from(u32::try_from(*k).unwrap_or(u32::MAX)),
            GeomTimes(c, r) if *c > 0 && *r >= 2 => {
                let steps = u32::try_from(*k).unwrap_or(u32::MAX).saturating_add(1);
                LevelRange::from(omega_of(*c).saturating_add(steps.saturating_mul(omega_of(*r))))
            }
            _ => level_range(x),
        },
        Union(parts) => parts.iter().map(level_range).reduce(LevelRange::hull).unwrap_or_else(LevelRange::empty),
        Intersection(parts) => parts
            .iter()
            .map(level_range)
            .reduce(LevelRange::meet)
            .unwrap_or_else(|| LevelRange::from(0)),
        Complement(_) => LevelRange::from(0),
    }
}

/// The common level of all members, when the set sits inside one `L_i`.
pub fn uniform_level(s: &SetDescriptor) -> Option<u32> {
    level_range(s).uniform()
}

/// Every level slice `s ∩ L_i` is finite.
pub fn level_thin(s: &SetDescriptor) -> bool {
    match s {
        Finite(_) | Diagonal(_) => true,
        GeomTimes(_, r) => *r != 1,
        Tail(x, _) | Scale(_, x) | Quotient(x, _) | Powers(x, _) => level_thin(x),
        DistinctProducts(x, _) | Pattern(x, _) => level_thin(x),
        ProductUnion(b, c) => level_thin(b) && level_thin(c),
        Intersection(parts) => parts.iter().any(level_thin),
        Union(parts) => parts.iter().all(level_thin),
        DownClosure(x, _) => finite_elements(x).is_some(),
        _ => finite_elements(s).is_some(),
    }
}

pub fn known_nonempty(s: &SetDescriptor) -> bool {
    known_infinite(s) || finite_elements(s).is_some_and(|v| !v.is_empty())
}

/// `s` is provably infinite.
pub fn known_infinite(s: &SetDescriptor) -> bool {
    match s {
        Finite(_) => false,
        Primes | Diagonal(_) => true,
        IndexedPrimes { modulus, residue } => *modulus > 0 && residue < modulus,
        Level(i) => *i >= 1,
        MultiplesOf(d) => *d >= 1,
        GeomTimes(c, r) => *c >= 1 && *r >= 2,
        Powers(x, k) => *k >= 1 && known_infinite(x),
        Scale(c, x) => *c >= 1 && known_infinite(x),
        Tail(x, _) => known_infinite(x),
        DistinctProducts(x, n) => *n >= 1 && known_infinite(x),
        Pattern(x, exps) => !exps.is_empty() && known_infinite(x),
        ProductUnion(b, c) => {
            (known_infinite(b) && known_nonempty(c)) || (known_nonempty(b) && known_infinite(c))
        }
        UpClosure(x) => known_nonempty(x),
        DownClosure(x, _) => known_infinite(x),
        Union(parts) => parts.iter().any(known_infinite),
        Intersection(parts) => parts
            .iter()
            .enumerate()
            .any(|(i, p)| known_infinite(p) && parts.iter().enumerate().all(|(j, q)| i == j || subset(p, q).is_some())),
        Complement(x) => finite_elements(x).is_some(),
        Quotient(x, c) => match x.as_ref() {
            Level(i) => *i > omega_of(*c),
            MultiplesOf(d) => *d >= 1,
            _ => false,
        },
    }
}

/// The full member list of a set known to be finite (ascending).
pub fn finite_elements(s: &SetDescriptor) -> Option<Vec<u64>> {
    let v = match s {
        Finite(f) => f.as_slice().to_vec(),
        Level(0) => vec![1],
        GeomTimes(c, 1) if *c >= 1 => vec![*c],
        GeomTimes(0, _) | GeomTimes(_, 0) => Vec::new(),
        Powers(x, k) => finite_elements(x)?.iter().map(|&a| a.checked_pow(*k)).collect::<Option<Vec<_>>>()?,
        Scale(c, x) => finite_elements(x)?.iter().map(|&a| a.checked_mul(*c)).collect::<Option<Vec<_>>>()?,
        Quotient(x, c) if *c > 0 => {
            finite_elements(x)?.into_iter().filter(|a| a % c == 0).map(|a| a / c).collect()
        }
        DistinctProducts(x, n) => {
            let elems = finite_elements(x)?;
            if binomial_exceeds(elems.len(), *n as usize, MATERIALISE_CAP) {
                return None;
            }
            super::enumerate::pattern_products(&SetDescriptor::finite(elems), &vec![1; *n as usize], u64::MAX)
        }
        Pattern(x, exps) => {
            let elems = finite_elements(x)?;
            if binomial_exceeds(elems.len(), exps.len(), MATERIALISE_CAP / exps.len().max(1)) {
                return None;
            }
            super::enumerate::pattern_products(&SetDescriptor::finite(elems), exps, u64::MAX)
        }
        ProductUnion(b, c) => {
            let (bs, cs) = (finite_elements(b)?, finite_elements(c)?);
            if bs.len().saturating_mul(cs.len()) > MATERIALISE_CAP {
                return None;
            }
            bs.iter().flat_map(|&x| cs.iter().map(move |&y| x.checked_mul(y))).collect::<Option<Vec<_>>>()?
        }
        DownClosure(x, _) => {
            let elems = finite_elements(x)?;
            if elems.len() > MATERIALISE_CAP / 64 {
                return None;
            }
            elems.iter().flat_map(|&a| super::divisors(a)).collect()
        }
        UpClosure(x) => {
            let elems = finite_elements(x)?;
            if !elems.is_empty() {
                return None;
            }
            elems
        }
        Tail(x, k) => finite_elements(x)?.into_iter().skip(*k as usize).collect(),
        Union(parts) => {
            let mut all = Vec::new();
            for p in parts {
                all.extend(finite_elements(p)?);
            }
            all
        }
        Intersection(parts) => {
            let (i, elems) = parts.iter().enumerate().find_map(|(i, p)| finite_elements(p).map(|e| (i, e)))?;
            elems
                .into_iter()
                .filter(|&e| parts.iter().enumerate().all(|(j, p)| j == i || p.member(e)))
                .collect()
        }
        _ => return None,
    };
    let mut v = v;
    v.retain(|&x| x > 0);
    v.sort_unstable();
    v.dedup();
    (v.len() <= MATERIALISE_CAP).then_some(v)
}

fn binomial_exceeds(n: usize, k: usize, cap: usize) -> bool {
    let mut acc: u128 = 1;
    for i in 0..k.min(n) {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
        if acc > cap as u128 {
            return true;
        }
    }
    false
}

pub fn finite_max(s: &SetDescriptor) -> Option<u64> {
    finite_elements(s).map(|v| v.last().copied().unwrap_or(0))
}

/// The smallest search limit of any down-closure over a set not known to be finite.
pub fn approximation_limit(s: &SetDescriptor) -> Option<u64> {
    match s {
        DownClosure(x, limit) => {
            let own = finite_elements(x).is_none().then_some(*limit);
            min_opt(own, approximation_limit(x))
        }
        Powers(x, _) | DistinctProducts(x, _) | Pattern(x, _) | Scale(_, x) | Quotient(x, _) => {
            approximation_limit(x)
        }
        UpClosure(x) | Tail(x, _) | Complement(x) => approximation_limit(x),
        ProductUnion(b, c) => min_opt(approximation_limit(b), approximation_limit(c)),
        Union(parts) | Intersection(parts) => parts.iter().filter_map(approximation_limit).min(),
        _ => None,
    }
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// Enumeration cost heuristic: lower ranks are sparser.
pub(crate) fn rank(s: &SetDescriptor) -> u8 {
    match s {
        Finite(_) | Diagonal(_) | GeomTimes(..) => 0,
        Powers(x, _) | Pattern(x, _) => rank(x).min(1),
        Tail(x, _) | Scale(_, x) | Quotient(x, _) => rank(x),
        ProductUnion(b, c) => rank(b).max(rank(c)),
        DistinctProducts(x, _) => rank(x).max(1),
        Intersection(parts) => parts.iter().map(rank).min().unwrap_or(5),
        Union(parts) => parts.iter().map(rank).max().unwrap_or(0),
        Primes | IndexedPrimes { .. } => 2,
        Level(_) | MultiplesOf(_) => 3,
        UpClosure(_) | DownClosure(..) => 4,
        Complement(_) => 5,
    }
}

pub type Rule = &'static str;

/// A proof that `a ⊆ b`, naming the rule that closed it.
pub fn subset(a: &SetDescriptor, b: &SetDescriptor) -> Option<Rule> {
    if a == b {
        return Some("reflexivity");
    }
    if let Some(elems) = finite_elements(a) {
        if b.membership_exact() && elems.len() <= 4096 {
            return elems.iter().all(|&e| b.member(e)).then_some("finite-enumeration");
        }
    }
    if level_range(a).is_empty() {
        return Some("empty-set");
    }
    match a {
        Union(parts) if parts.iter().all(|p| subset(p, b).is_some()) => return Some("union-elimination"),
        Intersection(parts) if parts.iter().any(|p| subset(p, b).is_some()) => {
            return Some("intersection-elimination")
        }
        Tail(x, k) => {
            if let Tail(y, j) = b {
                if x == y && k >= j {
                    return Some("nested-tails");
                }
            }
            if subset(x, b).is_some() {
                return Some("tail-of-subset");
            }
        }
        _ => {}
    }
    match b {
        Union(parts) => parts.iter().any(|p| subset(a, p).is_some()).then_some("union-introduction"),
        Intersection(parts) => parts.iter().all(|p| subset(a, p).is_some()).then_some("intersection-introduction"),
        Level(i) => (uniform_level(a) == Some(*i)).then_some("level-arithmetic"),
        Primes => (uniform_level(a) == Some(1)).then_some("level-arithmetic"),
        UpClosure(t) => up_rule(a, t),
        MultiplesOf(d) => divisible_rule(a, *d),
        Complement(t) => disjoint(a, t),
        DownClosure(t, _) => subset(a, t).map(|_| "closure-extensive"),
        Quotient(t, c) => subset(&a.clone().scale(*c), t).map(|_| "quotient-law"),
        Scale(c, t) => match a {
            Scale(c2, x) if c == c2 => subset(x, t).map(|_| "scale-monotone"),
            _ => None,
        },
        ProductUnion(bb, cc) => match a {
            ProductUnion(x, z) if subset(x, bb).is_some() && subset(z, cc).is_some() => Some("product-monotone"),
            Scale(c, x) if (bb.member(*c) && subset(x, cc).is_some()) || (cc.member(*c) && subset(x, bb).is_some()) => {
                Some("product-monotone")
            }
            _ => None,
        },
        Powers(t, k) => match a {
            Powers(x, k2) if k == k2 => subset(x, t).map(|_| "power-monotone"),
            _ => None,
        },
        DistinctProducts(t, n) => match a {
            DistinctProducts(x, n2) if n == n2 => subset(x, t).map(|_| "product-monotone"),
            _ => None,
        },
        Pattern(t, e) => match a {
            Pattern(x, e2) if e == e2 => subset(x, t).map(|_| "product-monotone"),
            _ => None,
        },
        _ => None,
    }
}

// a ⊆ t↑
fn up_rule(a: &SetDescriptor, t: &SetDescriptor) -> Option<Rule> {
    if subset(a, t).is_some() {
        return Some("closure-extensive");
    }
    if t.membership_exact() && t.member(1) {
        return Some("unit-in-set");
    }
    if let Some(rule) = level_factor_rule(a, t) {
        return Some(rule);
    }
    let inner_in_t = |x: &SetDescriptor| subset(x, t).is_some();
    let divisor_rule = match a {
        Powers(x, k) => *k >= 1 && inner_in_t(x),
        DistinctProducts(x, n) => *n >= 1 && inner_in_t(x),
        Pattern(x, e) => !e.is_empty() && inner_in_t(x),
        Scale(c, x) => inner_in_t(x) || (t.membership_exact() && t.member(*c)),
        ProductUnion(x, z) => inner_in_t(x) || inner_in_t(z),
        MultiplesOf(d) => t.membership_exact() && t.member(*d),
        GeomTimes(c, r) => {
            t.membership_exact() && (t.member(*c) || c.checked_mul(*r).is_some_and(|cr| t.member(cr)))
        }
        _ => false,
    };
    if divisor_rule {
        return Some("divisor-in-set");
    }
    match a {
        UpClosure(x) => up_rule(x, t).map(|_| "closure-monotone"),
        _ => {
            if let Some(ds) = finite_elements(t) {
                if ds.len() <= 64 && ds.iter().any(|&d| divisible_rule(a, d).is_some()) {
                    return Some("divisor-in-set");
                }
            }
            None
        }
    }
}

// Every n with Ω(n) ≥ k has a divisor on L_k, and that divisor lies below n.
fn level_factor_rule(a: &SetDescriptor, t: &SetDescriptor) -> Option<Rule> {
    let min = level_range(a).min;
    match t {
        Level(k) if min >= *k => Some("smallest-factor"),
        Intersection(parts) => {
            let k = parts.iter().find_map(|p| if let Level(k) = p { Some(*k) } else { None })?;
            let covered = parts.iter().all(|p| match p {
                Level(_) => true,
                DownClosure(b, _) => subset(a, b).is_some(),
                _ => false,
            });
            (covered && min >= k).then_some("smallest-factor")
        }
        _ => None,
    }
}

// a ⊆ multiples of d
fn divisible_rule(a: &SetDescriptor, d: u64) -> Option<Rule> {
    if d == 1 {
        return Some("unit-divides");
    }
    if d == 0 {
        return None;
    }
    let ok = match a {
        MultiplesOf(e) => e % d == 0,
        Scale(c, x) => c % d == 0 || divisible_rule(x, d / gcd_u64(d, *c)).is_some(),
        GeomTimes(c, r) => c.checked_mul(*r).is_some_and(|cr| cr % d == 0),
        Powers(x, k) => *k >= 1 && divisible_rule(x, d).is_some(),
        ProductUnion(x, z) => divisible_rule(x, d).is_some() || divisible_rule(z, d).is_some(),
        UpClosure(x) => divisible_rule(x, d).is_some(),
        Tail(x, _) => divisible_rule(x, d).is_some(),
        Intersection(parts) => parts.iter().any(|p| divisible_rule(p, d).is_some()),
        Union(parts) => parts.iter().all(|p| divisible_rule(p, d).is_some()),
        _ => finite_elements(a).is_some_and(|v| v.iter().all(|&e| e % d == 0)),
    };
    ok.then_some("divisibility-arithmetic")
}

/// A proof that `a ∩ t = ∅`.
pub fn disjoint(a: &SetDescriptor, t: &SetDescriptor) -> Option<Rule> {
    if level_range(a).separated(&level_range(t)) {
        return Some("level-separation");
    }
    if let Some(elems) = finite_elements(t) {
        if a.membership_exact() && elems.len() <= 4096 {
            return elems.iter().all(|&e| !a.member(e)).then_some("finite-disjoint");
        }
    }
    if let Some(elems) = finite_elements(a) {
        if t.membership_exact() && elems.len() <= 4096 {
            return elems.iter().all(|&e| !t.member(e)).then_some("finite-disjoint");
        }
    }
    match (a, t) {
        (_, Complement(x)) => subset(a, x).map(|_| "complement"),
        (Complement(x), _) => subset(t, x).map(|_| "complement"),
        (_, Union(parts)) => parts.iter().all(|p| disjoint(a, p).is_some()).then_some("union-disjoint"),
        (_, Intersection(parts)) => parts.iter().any(|p| disjoint(a, p).is_some()).then_some("intersection-disjoint"),
        (Union(parts), _) => parts.iter().all(|p| disjoint(p, t).is_some()).then_some("union-disjoint"),
        (Intersection(parts), _) => parts.iter().any(|p| disjoint(p, t).is_some()).then_some("intersection-disjoint"),
        (Tail(x, _), _) => disjoint(x, t),
        (_, Tail(y, _)) => disjoint(a, y),
        (IndexedPrimes { modulus: m1, residue: r1 }, IndexedPrimes { modulus: m2, residue: r2 }) => {
            let g = crate::arith::gcd_u64(u64::from(*m1), u64::from(*m2));
            (u64::from(*r1) % g != u64::from(*r2) % g).then_some("residue-disjoint")
        }
        _ => None,
    }
}

/// A proof that `a \ b` is finite, the relevant notion of containment for a
/// filter that holds every cofinite set.
pub fn eventually_subset(a: &SetDescriptor, b: &SetDescriptor) -> Option<Rule> {
    if let Some(r) = subset(a, b) {
        return Some(r);
    }
    if finite_elements(a).is_some() {
        return Some("finite-difference");
    }
    let from_a = match a {
        Tail(x, _) => eventually_subset(x, b),
        Intersection(parts) => parts.iter().find_map(|p| eventually_subset(p, b)),
        Union(parts) => parts.iter().all(|p| eventually_subset(p, b).is_some()).then_some("union-elimination"),
        _ => None,
    };
    if from_a.is_some() {
        return from_a;
    }
    match b {
        Complement(t) => sparse_meet(a, t),
        Union(parts) => parts.iter().find_map(|p| eventually_subset(a, p)),
        Intersection(parts) => parts
            .iter()
            .all(|p| eventually_subset(a, p).is_some())
            .then_some("intersection-introduction"),
        Tail(t, _) => eventually_subset(a, t).map(|_| "cofinite-tail"),
        MultiplesOf(d) => eventually_divisible(a, *d).then_some("eventually-divisible"),
        UpClosure(t) => {
            let candidates: Vec<u64> = t.enumerate(UP_PROBE_BOUND).into_iter().take(UP_CANDIDATES).collect();
            candidates.iter().any(|&d| eventually_divisible(a, d)).then_some("eventually-divisible")
        }
        _ => None,
    }
}

/// A proof that `a ∩ t` is finite.
pub fn sparse_meet(a: &SetDescriptor, t: &SetDescriptor) -> Option<Rule> {
    if disjoint(a, t).is_some() {
        return Some("disjoint");
    }
    if finite_elements(a).is_some() || finite_elements(t).is_some() {
        return Some("finite-meet");
    }
    if level_thin(a) && level_range(t).max.is_some() {
        return Some("level-thin");
    }
    match (a, t) {
        (Intersection(parts), _) => parts.iter().find_map(|p| sparse_meet(p, t)),
        (Tail(x, _), _) => sparse_meet(x, t),
        (_, Union(parts)) => parts.iter().all(|p| sparse_meet(a, p).is_some()).then_some("level-thin"),
        (_, Intersection(parts)) => parts.iter().find_map(|p| sparse_meet(a, p)),
        _ => None,
    }
}

/// All but finitely many members of `a` are multiples of `d`.
pub fn eventually_divisible(a: &SetDescriptor, d: u64) -> bool {
    if d == 1 || finite_elements(a).is_some() || divisible_rule(a, d).is_some() {
        return true;
    }
    if d == 0 {
        return false;
    }
    match a {
        MultiplesOf(e) => e % d == 0,
        Diagonal(Selector::PowersOf(p)) => Selector::PowersOf(*p).index_of(d).is_some(),
        Diagonal(Selector::Primorial) => squarefree(d),
        GeomTimes(c, r) => {
            if *r < 2 {
                return c % d == 0;
            }
            let rest = d / gcd_u64(d, *c);
            factorize(rest).is_ok_and(|f| f.factors().iter().all(|&(q, _)| r % q == 0))
        }
        Scale(c, x) => eventually_divisible(x, d / gcd_u64(d, *c)),
        Tail(x, _) | Powers(x, _) => eventually_divisible(x, d),
        Intersection(parts) => parts.iter().any(|p| eventually_divisible(p, d)),
        Union(parts) => parts.iter().all(|p| eventually_divisible(p, d)),
        ProductUnion(x, z) => {
            (eventually_divisible(x, d) && finite_elements(z).is_some())
                || (finite_elements(x).is_some() && eventually_divisible(z, d))
        }
        _ => false,
    }
}

fn squarefree(d: u64) -> bool {
    factorize(d).is_ok_and(|f| f.factors().iter().all(|&(_, e)| e == 1))
}

/// `m ∈ {c·r^n}` helper re-exported for the witness maps.
pub fn geom_index(c: u64, r: u64, m: u64) -> Option<u64> {
    geom_exponent(c, r, m)
}
