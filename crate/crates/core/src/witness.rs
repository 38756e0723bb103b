//! Named arithmetic maps used as divisibility witnesses, and the chain builder.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{checked_pow, factorize, omega_of};
use crate::error::{ArithError, FilterError, WitnessError};
use crate::filter::{level_evidence, principal, product, pushforward, tilde_divides, FilterBase, LevelEvidence};
use crate::setlang::rules::{finite_elements, level_range, subset, uniform_level};
use crate::setlang::{SetDescriptor, SetDescriptor::*};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// `f(a) | a`
    Factor,
    /// `a | f(a)`
    Multiple,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Factor => "factor",
            MapKind::Multiple => "multiple",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedMap {
    /// `sf(k)`: smallest divisor on `L_k`.
    SmallestFactor(u32),
    /// `sm(k)`: smallest multiple on `L_k`.
    SmallestMultiple(u32),
    /// `pow(n)`: `a ↦ a^n`.
    Pow(u32),
    /// `3·2^j ↦ 2^j`
    ThreeTwo,
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedMap::SmallestFactor(k) => write!(f, "sf({k})"),
            NamedMap::SmallestMultiple(k) => write!(f, "sm({k})"),
            NamedMap::Pow(n) => write!(f, "pow({n})"),
            NamedMap::ThreeTwo => write!(f, "threetwomap"),
        }
    }
}

impl NamedMap {
    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn kind(&self) -> MapKind {
        match self {
            NamedMap::SmallestFactor(_) | NamedMap::ThreeTwo => MapKind::Factor,
            NamedMap::SmallestMultiple(_) | NamedMap::Pow(_) => MapKind::Multiple,
        }
    }

    /// The largest set the rule is defined on.
    pub fn domain(&self) -> SetDescriptor {
        match *self {
            NamedMap::SmallestFactor(k) => SetDescriptor::levels_below(k).complement(),
            NamedMap::SmallestMultiple(k) => SetDescriptor::levels_below(k + 1),
            NamedMap::Pow(_) => SetDescriptor::nat(),
            NamedMap::ThreeTwo => SetDescriptor::geom(3, 2),
        }
    }

    pub fn apply(&self, n: u64) -> Result<u64, WitnessError> {
        match *self {
            NamedMap::SmallestFactor(k) => smallest_factor_in_level(n, k),
            NamedMap::SmallestMultiple(k) => smallest_multiple_in_level(n, k),
            NamedMap::Pow(e) => {
                if n == 0 {
                    return Err(ArithError::Zero.into());
                }
                checked_pow(n, e).ok_or_else(|| ArithError::Overflow(format!("{n}^{e}")).into())
            }
            NamedMap::ThreeTwo => three_two_map(n),
        }
    }

    /// Checks the factor/multiple property on every domain member up to `sample_bound`.
    pub fn verify(&self, sample_bound: u64) -> Result<(), WitnessError> {
        for a in self.domain().enumerate(sample_bound) {
            let fa = self.apply(a)?;
            let ok = match self.kind() {
                MapKind::Factor => a % fa == 0,
                MapKind::Multiple => fa % a == 0,
            };
            if !ok {
                return Err(WitnessError::KindViolation { map: self.name(), kind: self.kind().as_str(), value: a });
            }
        }
        Ok(())
    }

    /// A set in `f̃(x)` obtained from the generator `g`, with whether the map
    /// is injective on `g`. `None` when the map is not defined on all of `g`.
    /// `free` allows replacing `g` by a deeper tail first.
    pub fn image(&self, g: &SetDescriptor, free: bool) -> Option<(SetDescriptor, bool)> {
        if let Some(elems) = finite_elements(g) {
            let imgs = elems.iter().map(|&a| self.apply(a).ok()).collect::<Option<Vec<_>>>()?;
            let mut distinct = imgs.clone();
            distinct.sort_unstable();
            distinct.dedup();
            return Some((SetDescriptor::finite(imgs), distinct.len() == elems.len()));
        }
        match *self {
            NamedMap::Pow(e) => Some((g.clone().powers(e), true)),
            NamedMap::ThreeTwo => match g {
                GeomTimes(3, 2) => Some((GeomTimes(1, 2), true)),
                Tail(inner, j) if **inner == GeomTimes(3, 2) => Some((GeomTimes(1, 2).tail(*j), true)),
                _ => None,
            },
            NamedMap::SmallestFactor(k) => smallest_factor_image(g, k, free),
            NamedMap::SmallestMultiple(k) => {
                let range = level_range(g);
                match uniform_level(g) {
                    Some(j) if j <= k => Some((g.clone().scale(1u64.checked_shl(k - j)?), true)),
                    _ if range.max.is_some_and(|m| m <= k) => Some((
                        SetDescriptor::intersection(vec![SetDescriptor::level(k), g.clone().up_closure()]),
                        false,
                    )),
                    _ => None,
                }
            }
        }
    }
}

fn smallest_factor_image(g: &SetDescriptor, k: u32, free: bool) -> Option<(SetDescriptor, bool)> {
    if uniform_level(g) == Some(k) {
        return Some((g.clone(), true));
    }
    let (c, rest) = match g {
        Scale(c, inner) => (*c, inner.as_ref()),
        other => (1, other),
    };
    let (inner, j) = match rest {
        Tail(inner, j) => (inner.as_ref(), *j),
        other => (other, 0),
    };
    // Members are c·s(i) for i ≥ first, and sf_k(c·s(i)) is the same for
    // every i ≥ k: the k smallest prime factors stop changing.
    let (first, seq): (u64, Box<dyn Fn(u64) -> Option<u64>>) = match *inner {
        Diagonal(sel) => (j, Box::new(move |i| sel.element(u32::try_from(i).ok()?))),
        GeomTimes(c0, r) if r >= 2 => {
            (j.checked_add(1)?, Box::new(move |i| c0.checked_mul(checked_pow(r, u32::try_from(i).ok()?)?)))
        }
        // The k smallest of n distinct primes from s.
        DistinctProducts(ref s, n) if c == 1 && k <= n && subset(s, &Primes).is_some() => {
            return Some((s.as_ref().clone().distinct_products(k), false));
        }
        _ if level_range(g).min >= k => {
            let img = SetDescriptor::intersection(vec![SetDescriptor::level(k), g.clone().down_closure()]);
            return Some((img, false));
        }
        _ => return None,
    };
    let stable = first.max(k as u64);
    let value = |i: u64| seq(i).and_then(|m| m.checked_mul(c)).and_then(|m| smallest_factor_in_level(m, k).ok());
    let vals = if free {
        vec![value(stable)?]
    } else {
        (first..=stable).map(value).collect::<Option<Vec<_>>>()?
    };
    Some((SetDescriptor::finite(vals), false))
}

/// The least divisor of `n` on `L_k`: the product of the `k` smallest prime
/// factors of `n` counted with multiplicity.
pub fn smallest_factor_in_level(n: u64, k: u32) -> Result<u64, WitnessError> {
    let f = factorize(n)?;
    if f.omega() < k {
        return Err(WitnessError::NoSuchWitness { n, k });
    }
    Ok(f.prime_multiset().into_iter().take(k as usize).product())
}

/// The least multiple of `n` on `L_k`, which is `n·2^{k−Ω(n)}`.
pub fn smallest_multiple_in_level(n: u64, k: u32) -> Result<u64, WitnessError> {
    if n == 0 {
        return Err(ArithError::Zero.into());
    }
    let w = omega_of(n);
    if w > k {
        return Err(WitnessError::NoSuchWitness { n, k });
    }
    1u64.checked_shl(k - w)
        .filter(|_| k - w < 64)
        .and_then(|s| n.checked_mul(s))
        .ok_or_else(|| ArithError::Overflow(format!("{n}*2^{}", k - w)).into())
}

pub fn three_two_map(m: u64) -> Result<u64, WitnessError> {
    if m % 3 == 0 && m > 3 && (m / 3).is_power_of_two() {
        Ok(m / 3)
    } else {
        Err(WitnessError::DomainError { map: NamedMap::ThreeTwo.name(), value: m })
    }
}

/// `[x_1, ..., x_{n-1}, x]` with `x_k = f̃(x)` for `f = sf(k)`, and the
/// verdict of each `x_k ∼| x_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub bases: Vec<FilterBase>,
    pub levels: Vec<Option<u32>>,
    pub links: Vec<Verdict>,
}

/// Builds the ∼|-chain below `x`. Bases with evidence of lying on no finite
/// level get `length` links.
pub fn chain(x: &FilterBase, bound: u64, max_level: u32, length: u32) -> Result<Chain, WitnessError> {
    let top = match level_evidence(x, max_level, bound) {
        LevelEvidence::OnLevel(n, _) if n >= 1 => n - 1,
        LevelEvidence::NotOnFiniteLevels { .. } => length,
        _ => return Err(WitnessError::NoChainStart),
    };
    let mut bases = Vec::with_capacity(top as usize + 1);
    let mut levels = Vec::with_capacity(top as usize + 1);
    for k in 1..=top {
        let xk = pushforward(&NamedMap::SmallestFactor(k), x)?;
        let ev = level_evidence(&xk, max_level, bound);
        if ev.level() != Some(k) {
            return Err(WitnessError::ChainBroken { index: bases.len(), reason: format!("{xk} has evidence {ev}") });
        }
        bases.push(xk);
        levels.push(Some(k));
    }
    bases.push(x.clone());
    levels.push(level_evidence(x, max_level, bound).level());
    let mut links = Vec::with_capacity(bases.len().saturating_sub(1));
    for (i, pair) in bases.windows(2).enumerate() {
        let v = tilde_divides(&pair[0], &pair[1], bound);
        if v.is_refuted() {
            return Err(WitnessError::ChainBroken { index: i, reason: format!("{} does not divide {}: {v}", pair[0], pair[1]) });
        }
        links.push(v);
    }
    Ok(Chain { bases, levels, links })
}

/// `n·x`, the product of the principal base of `n` with `x`.
pub fn scale(n: u64, x: &FilterBase) -> Result<FilterBase, FilterError> {
    product(&principal(n), x)
}

/// One rung per level `j ≥ n`: the `(j−n)`-th member of `L_n` and its
/// smallest multiple on `L_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub level: u32,
    pub rungs: Vec<(u64, u64)>,
    /// Sources whose first choice collided with an earlier image.
    pub collisions: Vec<u64>,
}

impl Ladder {
    pub fn injective(&self) -> bool {
        let mut imgs: Vec<u64> = self.rungs.iter().map(|r| r.1).collect();
        imgs.sort_unstable();
        imgs.windows(2).all(|w| w[0] != w[1])
    }
}

/// Builds `A = {m_n, m_{n+1}, ...}` from the members of `L_n` up to `bound`.
pub fn ladder(level: u32, bound: u64) -> Ladder {
    let mut rungs: Vec<(u64, u64)> = Vec::new();
    let mut seen = HashSet::new();
    let mut collisions = Vec::new();
    for (j, a) in SetDescriptor::level(level).enumerate(bound).into_iter().enumerate() {
        let target = level + j as u32;
        let Ok(mut m) = smallest_multiple_in_level(a, target) else { break };
        if seen.contains(&m) {
            collisions.push(a);
            let next = (2..=1024u64)
                .filter_map(|t| a.checked_mul(t))
                .find(|&c| c > m && omega_of(c) == target && !seen.contains(&c));
            match next {
                Some(c) => m = c,
                None => break,
            }
        }
        seen.insert(m);
        rungs.push((a, m));
    }
    Ladder { level, rungs, collisions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::Selector;

    fn sf_oracle(n: u64, k: u32) -> Option<u64> {
        (1..=n).find(|d| n % d == 0 && omega_of(*d) == k)
    }

    fn sm_oracle(n: u64, k: u32) -> Option<u64> {
        (1..=1u64 << 20).map(|t| n * t).find(|&m| omega_of(m) == k)
    }

    #[test]
    fn examples() {
        assert_eq!(smallest_factor_in_level(12, 2).unwrap(), 4);
        assert_eq!(smallest_factor_in_level(13, 1).unwrap(), 13);
        assert_eq!(smallest_factor_in_level(30, 1).unwrap(), 2);
        assert!(matches!(smallest_factor_in_level(6, 3), Err(WitnessError::NoSuchWitness { .. })));
        assert_eq!(smallest_multiple_in_level(5, 3).unwrap(), 20);
        assert_eq!(smallest_multiple_in_level(6, 3).unwrap(), 12);
        assert_eq!(smallest_multiple_in_level(30, 3).unwrap(), 30);
        assert!(smallest_multiple_in_level(30, 2).is_err());
        assert_eq!(three_two_map(6).unwrap(), 2);
        assert_eq!(three_two_map(12).unwrap(), 4);
        assert!(three_two_map(10).is_err());
        assert!(three_two_map(3).is_err());
    }

    #[test]
    fn closed_forms_match_oracles() {
        for n in 1..=1000u64 {
            let w = omega_of(n);
            for k in 0..=w {
                assert_eq!(Some(smallest_factor_in_level(n, k).unwrap()), sf_oracle(n, k), "sf({n},{k})");
            }
            for k in w..=w + 4 {
                assert_eq!(Some(smallest_multiple_in_level(n, k).unwrap()), sm_oracle(n, k), "sm({n},{k})");
            }
        }
    }

    #[test]
    fn registered_maps_have_their_kind() {
        for m in [NamedMap::SmallestFactor(2), NamedMap::SmallestMultiple(4), NamedMap::Pow(3), NamedMap::ThreeTwo] {
            m.verify(2000).unwrap();
        }
    }

    #[test]
    fn chains() {
        let c = chain(&principal(30), 1000, 50, 8).unwrap();
        assert_eq!(c.bases, vec![principal(2), principal(6), principal(30)]);
        assert!(c.links.iter().all(Verdict::is_proven));
        assert_eq!(chain(&principal(7), 1000, 50, 8).unwrap().bases, vec![principal(7)]);
        assert_eq!(chain(&principal(1), 1000, 50, 8).unwrap_err(), WitnessError::NoChainStart);
        let t = crate::filter::tails(SetDescriptor::diagonal(Selector::PowersOf(2)), 10_000).unwrap();
        let c = chain(&t, 10_000, 50, 3).unwrap();
        assert_eq!(c.bases.len(), 4);
        assert_eq!(&c.levels[..3], &[Some(1), Some(2), Some(3)]);
        assert!(c.links.iter().all(|v| !v.is_refuted()));
    }

    #[test]
    fn scaling() {
        assert_eq!(scale(2, &principal(3)).unwrap(), principal(6));
        let t = crate::filter::tails(SetDescriptor::diagonal(Selector::PowersOf(2)), 10_000).unwrap();
        assert_eq!(scale(1, &t).unwrap(), t);
        assert!(level_evidence(&scale(5, &t).unwrap(), 50, 10_000).is_not_on_finite_levels());
    }

    #[test]
    fn distinct_prime_products() {
        let g = Primes.tail(2).distinct_products(3);
        let (img, injective) = NamedMap::SmallestFactor(2).image(&g, true).unwrap();
        assert_eq!(img, Primes.tail(2).distinct_products(2));
        assert!(!injective);
        for a in g.enumerate(20_000) {
            assert!(img.member(smallest_factor_in_level(a, 2).unwrap()));
        }
    }

    #[test]
    fn ladders_are_injective() {
        let l = ladder(2, 2000);
        assert!(l.injective());
        assert!(l.collisions.is_empty());
        for (j, &(a, m)) in l.rungs.iter().enumerate() {
            assert_eq!(m % a, 0);
            assert_eq!(omega_of(m), 2 + j as u32);
        }
    }
}
