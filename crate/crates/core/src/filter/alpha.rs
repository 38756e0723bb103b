//! Finite-support multiplicity maps over basic ultrafilters and the
//! generating families F_α.

use std::fmt;

use super::{build, FilterBase};
use crate::arith::{checked_pow, is_prime};
use crate::error::FilterError;
use crate::setlang::rules::{disjoint, finite_elements, subset};
use crate::setlang::SetDescriptor;
use crate::sieve::nth_prime;

/// A basic ultrafilter `p` restricted to the primes: either a concrete prime
/// or a base whose sets are (made) subsets of P.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicSpec {
    Prime(u64),
    Base(Box<FilterBase>),
}

impl fmt::Display for BasicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicSpec::Prime(p) => write!(f, "{p}"),
            BasicSpec::Base(b) => write!(f, "{b}"),
        }
    }
}

/// Entries `(basic, k, mult)` for `(p^k, mult)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alpha {
    entries: Vec<(BasicSpec, u32, u32)>,
}

impl Alpha {
    /// Entries with multiplicity 0 are dropped; repeated `(basic, k)` pairs merge.
    pub fn new(entries: impl IntoIterator<Item = (BasicSpec, u32, u32)>) -> Result<Self, FilterError> {
        let mut a = Alpha::default();
        for (basic, k, mult) in entries {
            if let BasicSpec::Prime(p) = basic {
                if !is_prime(p) {
                    return Err(FilterError::NotPrime(p));
                }
            }
            if k == 0 {
                return Err(FilterError::EmptyAlpha);
            }
            a.push(basic, k, mult);
        }
        Ok(a)
    }

    fn push(&mut self, basic: BasicSpec, k: u32, mult: u32) {
        if mult == 0 {
            return;
        }
        match self.entries.iter_mut().find(|(b, e, _)| *b == basic && *e == k) {
            Some(entry) => entry.2 += mult,
            None => self.entries.push((basic, k, mult)),
        }
    }

    pub fn entries(&self) -> &[(BasicSpec, u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `σ(α) = Σ k·mult`
    pub fn sigma(&self) -> u64 {
        self.entries.iter().map(|&(_, k, n)| u64::from(k) * u64::from(n)).sum()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (b, k, n)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({b},^{k},x{n})")?;
        }
        write!(f, "]")
    }
}

/// Pointwise sum of multiplicities.
pub fn add_alpha(a: &Alpha, b: &Alpha) -> Alpha {
    let mut sum = a.clone();
    for (basic, k, n) in &b.entries {
        sum.push(basic.clone(), *k, *n);
    }
    sum
}

/// The member of F_α for one concrete choice of sets `A_i`.
///
/// A concrete prime `p` needed `m ≥ 2` times has no `m` distinct members in
/// `{p}`, so its set is widened with the `m − 1` smallest primes used nowhere
/// else in α. Finite sets must be pairwise disjoint; infinite ones drop the
/// finite members and, when some pair may overlap, are split by prime index
/// residue.
pub fn f_alpha(alpha: &Alpha, fip_bound: u64) -> Result<FilterBase, FilterError> {
    if alpha.is_empty() {
        return Err(FilterError::EmptyAlpha);
    }
    // Distinct basics in first-appearance order, with the exponent list each needs.
    let mut groups: Vec<(&BasicSpec, Vec<u32>)> = Vec::new();
    for (basic, k, n) in &alpha.entries {
        let exps = match groups.iter_mut().find(|(b, _)| *b == basic) {
            Some((_, e)) => e,
            None => {
                groups.push((basic, Vec::new()));
                &mut groups.last_mut().unwrap().1
            }
        };
        exps.extend(std::iter::repeat(*k).take(*n as usize));
    }

    // A base at a single prime is that prime.
    let mut sets: Vec<Option<SetDescriptor>> = vec![None; groups.len()];
    let mut singles: Vec<Option<u64>> = vec![None; groups.len()];
    let mut reserved: Vec<u64> = Vec::new();
    for (i, (basic, exps)) in groups.iter().enumerate() {
        match basic {
            BasicSpec::Prime(p) => singles[i] = Some(*p),
            BasicSpec::Base(b) => {
                let a = prime_part(b)?;
                match finite_elements(&a) {
                    Some(elems) if elems.len() == 1 => singles[i] = Some(elems[0]),
                    Some(elems) if elems.len() < exps.len() => {
                        return Err(FilterError::TooFewMembers { set: a.to_string(), needed: exps.len() });
                    }
                    _ => sets[i] = Some(a),
                }
            }
        }
        if let Some(elems) = sets[i].as_ref().and_then(finite_elements) {
            reserved.extend(elems);
        }
        reserved.extend(singles[i]);
    }
    let mut fresh = (0..).map_while(nth_prime).filter(|q| !reserved.contains(q));
    for (i, (_, exps)) in groups.iter().enumerate() {
        if let Some(p) = singles[i] {
            let mut elems = vec![p];
            elems.extend(fresh.by_ref().take(exps.len().saturating_sub(1)));
            sets[i] = Some(SetDescriptor::finite(elems));
        }
    }
    let sets: Vec<SetDescriptor> = sets.into_iter().map(|s| s.expect("every basic has a set")).collect();

    let finite: Vec<(usize, Vec<u64>)> =
        sets.iter().enumerate().filter_map(|(i, s)| finite_elements(s).map(|e| (i, e))).collect();
    for (a, (i, ei)) in finite.iter().enumerate() {
        for (j, ej) in &finite[a + 1..] {
            if let Some(common) = ei.iter().find(|e| ej.contains(e)) {
                return Err(FilterError::DisjointnessUnsatisfiable(format!(
                    "{} and {} share {common}",
                    groups[*i].0, groups[*j].0
                )));
            }
        }
    }
    let taken: Vec<u64> = finite.iter().flat_map(|(_, e)| e.iter().copied()).collect();
    let infinite: Vec<usize> = (0..sets.len()).filter(|&i| finite.iter().all(|(j, _)| *j != i)).collect();
    let split = infinite
        .iter()
        .enumerate()
        .any(|(a, &i)| infinite[a + 1..].iter().any(|&j| disjoint(&sets[i], &sets[j]).is_none()));
    let modulus = if split { infinite.len() as u32 } else { 1 };
    let mut chosen = sets.clone();
    for (r, &i) in infinite.iter().enumerate() {
        let mut parts = vec![sets[i].clone()];
        if !taken.is_empty() {
            parts.push(SetDescriptor::finite(taken.iter().copied()).complement());
        }
        if modulus > 1 {
            parts.push(SetDescriptor::IndexedPrimes { modulus, residue: r as u32 });
        }
        chosen[i] = SetDescriptor::intersection(parts);
    }

    // The smallest members of each set, largest exponents on the smallest
    // primes, multiply to an element of the generator.
    let mut hint: Option<u64> = Some(1);
    for ((_, exps), a) in groups.iter().zip(&chosen) {
        let mut exps = exps.clone();
        exps.sort_unstable_by(|x, y| y.cmp(x));
        let elems = first_elements(a, exps.len())?;
        for (q, e) in elems.into_iter().zip(exps) {
            hint = hint.and_then(|h| checked_pow(q, e).and_then(|v| h.checked_mul(v)));
        }
    }
    let hint = hint.ok_or(FilterError::SearchExhausted(u64::MAX))?;
    let gen = groups
        .iter()
        .zip(chosen)
        .map(|((_, exps), a)| a.pattern(exps.clone()))
        .reduce(|acc, g| acc.product_union(g))
        .expect("alpha is nonempty");
    let free = groups.iter().any(|(b, _)| matches!(b, BasicSpec::Base(x) if x.is_free()));
    build(vec![gen], fip_bound, free, Some(hint), fip_bound)
}

// The `count` smallest members of `s`.
fn first_elements(s: &SetDescriptor, count: usize) -> Result<Vec<u64>, FilterError> {
    if let Some(elems) = finite_elements(s) {
        if elems.len() < count {
            return Err(FilterError::TooFewMembers { set: s.to_string(), needed: count });
        }
        return Ok(elems[..count].to_vec());
    }
    let mut limit = 64u64;
    loop {
        let mut elems = s.enumerate(limit);
        if elems.len() >= count {
            elems.truncate(count);
            return Ok(elems);
        }
        if limit > 1 << 36 {
            return Err(FilterError::SearchExhausted(limit));
        }
        limit *= 8;
    }
}

// The base's core restricted to P.
fn prime_part(b: &FilterBase) -> Result<SetDescriptor, FilterError> {
    let core = b.core();
    if subset(core, &SetDescriptor::Primes).is_some() {
        return Ok(core.clone());
    }
    if disjoint(core, &SetDescriptor::Primes).is_some() {
        return Err(FilterError::NotPrimeSubset(b.to_string()));
    }
    Ok(SetDescriptor::intersection(vec![core.clone(), SetDescriptor::Primes]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::omega_of;
    use crate::filter::{mk_base, principal, tails};

    fn prime(p: u64) -> BasicSpec {
        BasicSpec::Prime(p)
    }

    #[test]
    fn example_alphas() {
        let a1 = Alpha::new([(prime(2), 2, 1)]).unwrap();
        assert_eq!(a1.sigma(), 2);
        assert_eq!(f_alpha(&a1, 100).unwrap().gens()[0], SetDescriptor::finite([4]));

        let p = mk_base(vec![SetDescriptor::finite([2, 3, 5])], 100).unwrap();
        let a2 = Alpha::new([(BasicSpec::Base(Box::new(p)), 1, 2)]).unwrap();
        assert_eq!(a2.sigma(), 2);
        let g = f_alpha(&a2, 100).unwrap();
        assert_eq!(finite_elements(&g.gens()[0]).unwrap(), vec![6, 10, 15]);

        let a3 = Alpha::new([(prime(2), 3, 2), (prime(3), 2, 2)]).unwrap();
        assert_eq!(a3.sigma(), 10);
        let g = f_alpha(&a3, 100).unwrap();
        let elems = finite_elements(&g.gens()[0]).unwrap();
        assert!(!elems.is_empty());
        assert!(elems.iter().all(|&e| omega_of(e) == 10));
        assert_eq!(add_alpha(&a3, &a3).sigma(), 20);
    }

    #[test]
    fn addition() {
        let a = Alpha::new([(prime(2), 1, 1)]).unwrap();
        assert_eq!(add_alpha(&a, &a), Alpha::new([(prime(2), 1, 2)]).unwrap());
        assert_eq!(add_alpha(&a, &Alpha::default()), a);
    }

    #[test]
    fn infinite_basics_are_split() {
        let t = tails(SetDescriptor::Primes, 1000).unwrap();
        let u = mk_base(vec![SetDescriptor::IndexedPrimes { modulus: 3, residue: 1 }], 1000).unwrap();
        let a = Alpha::new([
            (BasicSpec::Base(Box::new(t)), 2, 1),
            (BasicSpec::Base(Box::new(u)), 1, 2),
            (prime(2), 1, 1),
        ])
        .unwrap();
        let g = f_alpha(&a, 100_000).unwrap();
        assert!(g.is_free());
        let elems = g.gens()[0].enumerate(100_000);
        assert!(!elems.is_empty());
        assert!(elems.iter().all(|&e| omega_of(e) == 5));
    }

    #[test]
    fn disjoint_infinite_basics_are_kept() {
        let odd = mk_base(vec![SetDescriptor::IndexedPrimes { modulus: 2, residue: 1 }], 1000).unwrap();
        let even = mk_base(vec![SetDescriptor::IndexedPrimes { modulus: 2, residue: 0 }], 1000).unwrap();
        let a = Alpha::new([(BasicSpec::Base(Box::new(odd)), 1, 1), (BasicSpec::Base(Box::new(even)), 1, 1)]).unwrap();
        let g = f_alpha(&a, 1000).unwrap();
        assert_eq!(g.witness(), 6);
    }

    #[test]
    fn errors() {
        assert_eq!(Alpha::new([(prime(4), 1, 1)]).unwrap_err(), FilterError::NotPrime(4));
        assert_eq!(f_alpha(&Alpha::default(), 10).unwrap_err(), FilterError::EmptyAlpha);
        let b = BasicSpec::Base(Box::new(mk_base(vec![SetDescriptor::finite([2, 7])], 10).unwrap()));
        let clash = Alpha::new([(b, 1, 1), (prime(2), 1, 1)]).unwrap();
        assert!(matches!(f_alpha(&clash, 100), Err(FilterError::DisjointnessUnsatisfiable(_))));
        let two = BasicSpec::Base(Box::new(mk_base(vec![SetDescriptor::finite([3, 5])], 10).unwrap()));
        assert_eq!(
            f_alpha(&Alpha::new([(two, 1, 3)]).unwrap(), 100).unwrap_err(),
            FilterError::TooFewMembers { set: "finite(3,5)".into(), needed: 3 }
        );
        let seven = BasicSpec::Base(Box::new(principal(7)));
        let g = f_alpha(&Alpha::new([(seven, 1, 2)]).unwrap(), 100).unwrap();
        assert_eq!(finite_elements(&g.gens()[0]).unwrap(), vec![14]);
        let sq = BasicSpec::Base(Box::new(principal(4)));
        assert!(matches!(f_alpha(&Alpha::new([(sq, 1, 1)]).unwrap(), 100), Err(FilterError::NotPrimeSubset(_))));
    }
}
