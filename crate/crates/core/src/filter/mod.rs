//! Finitely generated filter bases standing in for ultrafilters on N.
//!
//! A base denotes every ultrafilter that contains all of its generators.
//! A *free* base denotes only the nonprincipal ones, so it also contains
//! every cofinite set; tails bases are free. [`contains`] asks whether a set
//! lies in every ultrafilter the base denotes.

pub mod alpha;
pub mod spec;

use std::fmt;

use crate::error::FilterError;
use crate::setlang::rules::{eventually_subset, finite_elements, known_infinite, subset, uniform_level};
use crate::setlang::SetDescriptor;
use crate::verdict::Verdict;
use crate::witness::NamedMap;

pub use alpha::{add_alpha, f_alpha, Alpha, BasicSpec};
pub use spec::{parse_filter, FilterSpec};

// Common-element searches stop growing their window here unless a larger
// bound was requested explicitly.
const SEARCH_CAP: u64 = 1 << 22;
const FIRST_WINDOW: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterBase {
    gens: Vec<SetDescriptor>,
    fip_bound: u64,
    free: bool,
    core: SetDescriptor,
    // Smallest common element of all generators that was found.
    witness: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelEvidence {
    OnLevel(u32, Verdict),
    /// `verdicts[i]` is the verdict for `N − L_i ∈ x`.
    NotOnFiniteLevels { checked_up_to: u32, verdicts: Vec<Verdict> },
    Unknown,
}

impl LevelEvidence {
    pub fn level(&self) -> Option<u32> {
        match self {
            LevelEvidence::OnLevel(i, _) => Some(*i),
            _ => None,
        }
    }

    pub fn is_not_on_finite_levels(&self) -> bool {
        matches!(self, LevelEvidence::NotOnFiniteLevels { .. })
    }
}

impl fmt::Display for LevelEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelEvidence::OnLevel(i, v) => write!(f, "OnLevel({i}, {v})"),
            LevelEvidence::NotOnFiniteLevels { checked_up_to, verdicts } => {
                let proven = verdicts.iter().filter(|v| v.is_proven()).count();
                write!(f, "NotOnFiniteLevels(checked_up_to={checked_up_to}, proven={proven}/{})", verdicts.len())
            }
            LevelEvidence::Unknown => write!(f, "Unknown"),
        }
    }
}

/// The principal base of `n`.
///
/// # Panics
/// If `n == 0`.
pub fn principal(n: u64) -> FilterBase {
    assert!(n > 0, "principal base of 0");
    let g = SetDescriptor::finite([n]);
    FilterBase { gens: vec![g.clone()], fip_bound: n, free: false, core: g, witness: n }
}

/// Checks the finite intersection property on `[1, fip_bound]`. Since every
/// sub-intersection contains the full one, it suffices that all generators
/// share a member up to the bound.
pub fn mk_base(gens: Vec<SetDescriptor>, fip_bound: u64) -> Result<FilterBase, FilterError> {
    build(gens, fip_bound, false, None, fip_bound)
}

/// The free base of tails of an infinite set: `S, S∖{min}, ...`.
pub fn tails(s: SetDescriptor, fip_bound: u64) -> Result<FilterBase, FilterError> {
    if !known_infinite(&s) {
        return Err(FilterError::TailsOfFinite(s.to_string()));
    }
    // Tails of an infinite set always meet; the search only locates an element.
    let gens = (0..3).map(|k| s.clone().tail(k)).collect();
    build(gens, fip_bound, true, None, fip_bound.max(SEARCH_CAP))
}

pub(crate) fn build(
    gens: Vec<SetDescriptor>,
    fip_bound: u64,
    free: bool,
    hint: Option<u64>,
    cap: u64,
) -> Result<FilterBase, FilterError> {
    if gens.is_empty() {
        return Err(FilterError::NoGenerators);
    }
    let core = core_of(&gens);
    match common_element(&gens, &core, hint, cap) {
        Some(witness) => {
            // A finite core settles the intersection property exactly.
            let fip_bound = if finite_elements(&core).is_some() { witness } else { fip_bound.max(witness) };
            Ok(FilterBase { fip_bound, gens, free, core, witness })
        }
        None => Err(FilterError::FipViolation { subset: minimal_failing(&gens, cap), bound: cap }),
    }
}

// A generator below all the others, if a rule shows one; else their intersection.
fn core_of(gens: &[SetDescriptor]) -> SetDescriptor {
    if gens.len() == 1 {
        return gens[0].clone();
    }
    for g in gens {
        if gens.iter().all(|h| subset(g, h).is_some()) {
            return g.clone();
        }
    }
    SetDescriptor::intersection(gens.to_vec())
}

fn common_element(gens: &[SetDescriptor], core: &SetDescriptor, hint: Option<u64>, cap: u64) -> Option<u64> {
    let in_all = |n: u64| gens.iter().all(|g| g.member(n));
    if let Some(elems) = finite_elements(core) {
        return elems.into_iter().find(|&e| in_all(e));
    }
    // A valid hint only needs a look for something smaller nearby.
    let hint = hint.filter(|&h| in_all(h));
    let limit = match hint {
        Some(h) => h.min(SEARCH_CAP),
        None => cap,
    };
    first_in(core, limit, |e| in_all(e)).or(hint)
}

// Smallest member of `s` up to `limit` satisfying `pred`, probing windows
// that grow geometrically so early hits stay cheap.
fn first_in(s: &SetDescriptor, limit: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
    let mut seen = 0;
    let mut window = FIRST_WINDOW.min(limit);
    while window > 0 {
        if let Some(e) = s.enumerate(window).into_iter().filter(|&e| e > seen).find(|&e| pred(e)) {
            return Some(e);
        }
        if window >= limit {
            break;
        }
        seen = window;
        window = window.saturating_mul(8).min(limit);
    }
    None
}

fn minimal_failing(gens: &[SetDescriptor], bound: u64) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..gens.len()).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<SetDescriptor> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &g)| gens[g].clone()).collect();
        if !trial.is_empty() && common_element(&trial, &core_of(&trial), None, bound).is_none() {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}

impl FilterBase {
    pub fn gens(&self) -> &[SetDescriptor] {
        &self.gens
    }

    pub fn fip_bound(&self) -> u64 {
        self.fip_bound
    }

    /// Whether the base stands for nonprincipal ultrafilters only.
    pub fn is_free(&self) -> bool {
        self.free
    }

    /// The tightest set known to lie in the filter.
    pub fn core(&self) -> &SetDescriptor {
        &self.core
    }

    /// A member shared by all generators.
    pub fn witness(&self) -> u64 {
        self.witness
    }

    /// The `n` with `self == principal(n)`, if any.
    pub fn as_principal(&self) -> Option<u64> {
        match finite_elements(&self.core) {
            Some(v) if v.len() == 1 && !self.free => Some(v[0]),
            _ => None,
        }
    }
}

impl fmt::Display for FilterBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_principal() {
            return write!(f, "principal:{n}");
        }
        write!(f, "gens[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")?;
        if self.free {
            write!(f, " (nonprincipal)")?;
        }
        Ok(())
    }
}

/// Whether `s` belongs to every ultrafilter the base stands for.
pub fn contains(x: &FilterBase, s: &SetDescriptor, bound: u64) -> Verdict {
    let bound = bound.max(x.fip_bound);
    let core = &x.core;
    if let Some(rule) = subset(core, s) {
        return Verdict::proven(rule, format!("{core} <= {s}"));
    }
    if x.free {
        if let Some(rule) = eventually_subset(core, s) {
            return Verdict::proven(rule, format!("{core} <=* {s}"));
        }
    }
    let limit = bound.min(s.search_limit().unwrap_or(u64::MAX));
    if !s.membership_exact() {
        return Verdict::ConsistentUpTo(limit);
    }
    // A principal ultrafilter at a core element outside `s` extends a
    // non-free base; a free one needs `core ∩ s` finite.
    let refutable = !x.free || eventually_subset(core, &s.clone().complement()).is_some();
    if refutable {
        // For a free base the counterexample is known to exist, so it is
        // sought past the requested bound.
        let reach = if x.free { limit.max(SEARCH_CAP) } else { limit };
        if let Some(c) = first_in(core, reach, |e| !s.member(e)) {
            return Verdict::Refuted(c);
        }
    }
    Verdict::ConsistentUpTo(limit)
}

/// The product base with constant families: generators `⋃_{b∈B} bC`.
pub fn product(x: &FilterBase, y: &FilterBase) -> Result<FilterBase, FilterError> {
    let mut gens = Vec::with_capacity(x.gens.len() * y.gens.len());
    for b in &x.gens {
        for c in &y.gens {
            let g = b.clone().product_union(c.clone());
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    let hint = x.witness.checked_mul(y.witness);
    let fip = if x.free || y.free { x.fip_bound.max(y.fip_bound) } else { 0 };
    build(gens, fip, x.free || y.free, hint, hint.unwrap_or(SEARCH_CAP))
}

/// The image base `f̃(x)`: images of the generators on which `f` is defined.
pub fn pushforward(f: &NamedMap, x: &FilterBase) -> Result<FilterBase, FilterError> {
    let mut gens: Vec<SetDescriptor> = Vec::new();
    let mut free = false;
    for g in &x.gens {
        if let Some((img, injective)) = f.image(g, x.free) {
            free |= x.free && injective && known_infinite(&img);
            if !gens.contains(&img) {
                gens.push(img);
            }
        }
    }
    if gens.is_empty() {
        return Err(FilterError::DomainError { map: f.name() });
    }
    let hint = f.apply(x.witness).ok();
    let fip = if free { x.fip_bound } else { 0 };
    build(gens, fip, free, hint, hint.unwrap_or(SEARCH_CAP).max(x.fip_bound))
}

/// `x ∼| y`: every `A↑` with `A` in `x` lies in `y`. Checked on each
/// generator and, for several generators, on their common core.
pub fn tilde_divides(x: &FilterBase, y: &FilterBase, bound: u64) -> Verdict {
    let mut sets: Vec<&SetDescriptor> = x.gens.iter().collect();
    if x.gens.len() > 1 && !x.gens.contains(&x.core) {
        sets.push(&x.core);
    }
    Verdict::all(sets.into_iter().map(|a| contains(y, &a.clone().up_closure(), bound)))
        .expect("a base has at least one generator")
}

pub fn level_evidence(x: &FilterBase, max_level: u32, bound: u64) -> LevelEvidence {
    // Levels are pairwise disjoint, so a proof for one settles the rest.
    if let Some(i) = uniform_level(&x.core).filter(|&i| i <= max_level) {
        let v = contains(x, &SetDescriptor::level(i), bound);
        if v.is_proven() {
            return LevelEvidence::OnLevel(i, v);
        }
    }
    for i in 0..=max_level {
        let v = contains(x, &SetDescriptor::level(i), bound);
        if !v.is_refuted() {
            return LevelEvidence::OnLevel(i, v);
        }
    }
    let mut verdicts = Vec::with_capacity(max_level as usize + 1);
    for i in 0..=max_level {
        let v = contains(x, &SetDescriptor::level(i).complement(), bound);
        if v.is_refuted() {
            return LevelEvidence::Unknown;
        }
        verdicts.push(v);
    }
    LevelEvidence::NotOnFiniteLevels { checked_up_to: max_level, verdicts }
}

/// Principal `m` with `m ∼| n`. Candidates come from the divisors of `n`,
/// the only `m` with `n ∈ {m}↑`; each is then confirmed by [`tilde_divides`].
pub fn tilde_divisors_principal(n: u64, bound: u64) -> Vec<(u64, Verdict)> {
    let target = principal(n);
    SetDescriptor::finite([n])
        .down_closure()
        .enumerate(n)
        .into_iter()
        .map(|m| (m, tilde_divides(&principal(m), &target, bound)))
        .filter(|(_, v)| v.is_proven())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::{Selector, SetDescriptor as S};

    fn diag_tails() -> FilterBase {
        tails(S::diagonal(Selector::PowersOf(2)), 10_000).unwrap()
    }

    #[test]
    fn construction() {
        let p = mk_base(vec![S::finite([6])], 10).unwrap();
        assert_eq!(p, principal(6));
        let err = mk_base(vec![S::level(2), S::level(2).complement()], 1000).unwrap_err();
        assert_eq!(err, FilterError::FipViolation { subset: vec![0, 1], bound: 1000 });
        let t = diag_tails();
        assert_eq!(t.witness(), 4);
        assert!(t.is_free());
        assert!(tails(S::finite([1, 2]), 100).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&principal(6), &S::multiples_of(2), 100).is_proven());
        assert_eq!(contains(&principal(6), &S::level(3), 100), Verdict::Refuted(6));
        let t = diag_tails();
        for i in 0..=50 {
            assert!(contains(&t, &S::level(i).complement(), 10_000).is_proven(), "level {i}");
        }
    }

    #[test]
    fn products() {
        let p = product(&principal(2), &principal(3)).unwrap();
        assert!(contains(&p, &S::finite([6]), 100).is_proven());
        assert_eq!(p, principal(6));
        let l1 = mk_base(vec![S::Primes], 1000).unwrap();
        let pp = product(&l1, &l1).unwrap();
        assert_eq!(level_evidence(&pp, 50, 1000).level(), Some(2));
        let mixed = product(&diag_tails(), &principal(7)).unwrap();
        assert!(level_evidence(&mixed, 50, 10_000).is_not_on_finite_levels());
    }

    #[test]
    fn divisibility() {
        assert!(tilde_divides(&principal(2), &principal(6), 100).is_proven());
        assert_eq!(tilde_divides(&principal(4), &principal(6), 100), Verdict::Refuted(6));
        let divs: Vec<u64> = tilde_divisors_principal(12, 100).into_iter().map(|(m, _)| m).collect();
        assert_eq!(divs, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn evidence_examples() {
        assert_eq!(level_evidence(&principal(30), 50, 100).level(), Some(3));
        assert_eq!(level_evidence(&principal(1), 50, 100).level(), Some(0));
        assert!(level_evidence(&diag_tails(), 50, 10_000).is_not_on_finite_levels());
        let upper = mk_base(vec![S::levels_below(3).complement()], 1000).unwrap();
        assert_eq!(level_evidence(&upper, 50, 1000), LevelEvidence::Unknown);
        for i in 0..3 {
            assert!(contains(&upper, &S::level(i).complement(), 1000).is_proven());
        }
    }

    #[test]
    fn pushforwards() {
        assert_eq!(pushforward(&NamedMap::Pow(2), &principal(3)).unwrap(), principal(9));
        assert_eq!(pushforward(&NamedMap::SmallestFactor(1), &principal(12)).unwrap(), principal(2));
        let src = tails(S::geom(3, 2), 10_000).unwrap();
        let img = pushforward(&NamedMap::ThreeTwo, &src).unwrap();
        assert_eq!(img.gens()[0], S::geom(1, 2));
        assert!(img.is_free());
        assert!(!tilde_divides(&img, &src, 10_000).is_refuted());
        assert!(pushforward(&NamedMap::ThreeTwo, &principal(10)).is_err());
    }
}
