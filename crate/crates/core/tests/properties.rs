use proptest::prelude::*;

use ultralevels::arith::{factorize, omega, quotient_level, signature, signature_classes, LevelIndex};
use ultralevels::checker::machine;
use ultralevels::filter::{
    contains, f_alpha, level_evidence, principal, product, tails, tilde_divides, Alpha, BasicSpec, LevelEvidence,
};
use ultralevels::setlang::rules::{disjoint, subset};
use ultralevels::setlang::{Selector, SetDescriptor as S};
use ultralevels::sieve::{omega_sieve, omega_sieve_with, SieveConfig};
use ultralevels::witness::{chain, smallest_factor_in_level, smallest_multiple_in_level};
use ultralevels::{run_suite, SuiteParams, Verdict};

fn omega_naive(mut n: u64) -> u32 {
    let mut c = 0;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            c += 1;
        }
        d += 1;
    }
    c + u32::from(n > 1)
}

fn w(n: u64) -> u32 {
    omega(n).unwrap().get()
}

fn leaf() -> impl Strategy<Value = S> {
    prop_oneof![
        prop::collection::vec(1u64..300, 0..6).prop_map(S::finite),
        Just(S::Primes),
        (0u32..5).prop_map(S::level),
        (1u64..10, 2u64..4).prop_map(|(c, r)| S::geom(c, r)),
        Just(S::diagonal(Selector::PowersOf(2))),
        Just(S::diagonal(Selector::Primorial)),
        (2u64..12).prop_map(S::multiples_of),
        (1u32..4).prop_flat_map(|m| (Just(m), 0..m)).prop_map(|(modulus, residue)| S::IndexedPrimes { modulus, residue }),
    ]
}

fn arb_set() -> impl Strategy<Value = S> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (inner.clone(), 1u32..3).prop_map(|(s, k)| s.powers(k)),
            (inner.clone(), 1u32..3).prop_map(|(s, n)| s.distinct_products(n)),
            (inner.clone(), prop::collection::vec(1u32..3, 1..3)).prop_map(|(s, e)| s.pattern(e)),
            (inner.clone(), 1u64..6).prop_map(|(s, c)| s.scale(c)),
            (inner.clone(), 1u64..6).prop_map(|(s, c)| s.quotient(c)),
            inner.clone().prop_map(S::up_closure),
            inner.clone().prop_map(|s| s.down_closure_with_limit(3000)),
            (inner.clone(), inner.clone()).prop_map(|(b, c)| b.product_union(c)),
            (inner.clone(), 0u64..3).prop_map(|(s, k)| s.tail(k)),
            prop::collection::vec(inner.clone(), 1..3).prop_map(S::union),
            prop::collection::vec(inner.clone(), 1..3).prop_map(S::intersection),
            inner.prop_map(S::complement),
        ]
    })
}

const RANGE: u64 = 1500;

fn members(s: &S) -> Vec<u64> {
    (1..=RANGE).filter(|&n| s.member(n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn omega_is_completely_additive(m in 1u64..1_000_000, n in 1u64..1_000_000) {
        prop_assert_eq!(w(m * n), w(m) + w(n));
    }

    #[test]
    fn omega_matches_trial_division(n in 1u64..10_000_000) {
        prop_assert_eq!(w(n), omega_naive(n));
    }

    #[test]
    fn sieve_agrees_with_omega(lo in 1u64..200_000, len in 0u64..5_000, seg in 1usize..4096, par in any::<bool>()) {
        let hi = lo + len;
        let got = omega_sieve_with(lo, hi, &SieveConfig { segment_size: seg, parallel: par }).unwrap();
        let want: Vec<u8> = (lo..=hi).map(|n| w(n) as u8).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn signatures_pick_one_class(n in 2u64..1_000_000) {
        let classes = signature_classes(LevelIndex(w(n))).unwrap();
        let sig = signature(n).unwrap();
        prop_assert_eq!(classes.iter().filter(|c| **c == sig).count(), 1);
        prop_assert_eq!(sig.total(), w(n));
    }

    #[test]
    fn quotient_levels_match_brute_force(i in 0u32..9, m in 1u64..1000) {
        let predicted = quotient_level(LevelIndex(i), m).unwrap();
        for r in 1..=2000u64 {
            prop_assert_eq!(w(r * m) == i, predicted == Some(LevelIndex(w(r))));
        }
    }

    #[test]
    fn enumeration_agrees_with_membership(s in arb_set()) {
        prop_assert_eq!(s.enumerate(RANGE), members(&s));
    }

    #[test]
    fn quotient_membership(s in arb_set(), n in 1u64..8) {
        let q = s.clone().quotient(n);
        for m in 1..=RANGE / n {
            prop_assert_eq!(q.member(m), s.member(n * m));
        }
    }

    #[test]
    fn closures_extend_and_are_idempotent(s in arb_set()) {
        let up = s.clone().up_closure();
        let down = s.clone().down_closure_with_limit(3000);
        let upup = up.clone().up_closure();
        for n in 1..=300u64 {
            if s.member(n) {
                prop_assert!(up.member(n));
                prop_assert!(down.member(n));
            }
            prop_assert_eq!(upup.member(n), up.member(n));
        }
    }

    #[test]
    fn de_morgan(a in arb_set(), b in arb_set()) {
        let lhs = S::union(vec![a.clone(), b.clone()]).complement();
        let rhs = S::intersection(vec![a.clone().complement(), b.clone().complement()]);
        let lhs2 = S::intersection(vec![a.clone(), b.clone()]).complement();
        let rhs2 = S::union(vec![a.complement(), b.complement()]);
        for n in 1..=RANGE {
            prop_assert_eq!(lhs.member(n), rhs.member(n));
            prop_assert_eq!(lhs2.member(n), rhs2.member(n));
        }
    }

    #[test]
    fn subset_and_disjoint_rules_are_sound(a in arb_set(), b in arb_set()) {
        if let Some(rule) = subset(&a, &b) {
            for n in 1..=RANGE {
                prop_assert!(!a.member(n) || b.member(n), "{} <= {} by {}, fails at {}", a, b, rule, n);
            }
        }
        if let Some(rule) = disjoint(&a, &b) {
            for n in 1..=RANGE {
                prop_assert!(!(a.member(n) && b.member(n)), "{} # {} by {}, fails at {}", a, b, rule, n);
            }
        }
    }

    #[test]
    fn principal_products_hold_the_product(a in 1u64..=100, b in 1u64..=100) {
        let xy = product(&principal(a), &principal(b)).unwrap();
        prop_assert!(contains(&xy, &S::finite([a * b]), 1000).is_proven());
        prop_assert_eq!(xy, principal(a * b));
    }

    #[test]
    fn levels_add_under_products(a in 1u64..5000, spec in 0usize..3) {
        let y = match spec {
            0 => principal(12),
            1 => tails(S::Primes, 1000).unwrap(),
            _ => tails(S::Primes.distinct_products(2), 1000).unwrap(),
        };
        let x = principal(a);
        let lx = level_evidence(&x, 50, 10_000).level().unwrap();
        let ly = level_evidence(&y, 50, 10_000).level().unwrap();
        for xy in [product(&x, &y).unwrap(), product(&y, &x).unwrap()] {
            prop_assert_eq!(level_evidence(&xy, 50, 10_000).level(), Some(lx + ly));
        }
    }

    #[test]
    fn falpha_generators_sit_on_sigma(entries in prop::collection::vec((0usize..4, 1u32..4, 1u32..3), 1..4)) {
        let pool = [
            BasicSpec::Prime(2),
            BasicSpec::Prime(5),
            BasicSpec::Base(Box::new(tails(S::Primes, 1000).unwrap())),
            BasicSpec::Base(Box::new(principal(7))),
        ];
        let alpha = Alpha::new(entries.into_iter().map(|(b, k, n)| (pool[b].clone(), k, n))).unwrap();
        let x = f_alpha(&alpha, 1000).unwrap();
        for g in x.gens() {
            for e in g.enumerate(100_000) {
                prop_assert_eq!(u64::from(w(e)), alpha.sigma());
            }
        }
    }

    #[test]
    fn refutations_survive_larger_bounds(a in 1u64..400, b in 1u64..400, lo in 1u64..1000, extra in 0u64..100_000) {
        let (x, y) = (principal(a), principal(b));
        let small = tilde_divides(&x, &y, lo);
        let large = tilde_divides(&x, &y, lo + extra);
        prop_assert_eq!(small.is_refuted(), large.is_refuted());
        prop_assert_eq!(small.counterexample(), large.counterexample());
    }

    #[test]
    fn smallest_factor_is_a_minimal_divisor(n in 1u64..10_000) {
        for k in 0..=w(n) {
            let d = smallest_factor_in_level(n, k).unwrap();
            prop_assert!(n % d == 0 && w(d) == k);
            prop_assert!((1..d).all(|e| n % e != 0 || w(e) != k));
        }
    }

    #[test]
    fn smallest_multiple_closed_form(n in 1u64..1000, extra in 0u32..5) {
        let k = w(n) + extra;
        let m = smallest_multiple_in_level(n, k).unwrap();
        prop_assert_eq!(m, n << extra);
        prop_assert_eq!((1..).map(|t| n * t).find(|&c| w(c) == k), Some(m));
    }

    #[test]
    fn chains_climb_one_level_at_a_time(n in 2u64..50_000) {
        let c = chain(&principal(n), 10_000, 50, 8).unwrap();
        let levels: Vec<u32> = c.levels.iter().map(|l| l.unwrap()).collect();
        prop_assert_eq!(levels, (1..=w(n)).collect::<Vec<_>>());
        prop_assert!(c.links.iter().all(Verdict::is_proven));
        for pair in c.bases.windows(2) {
            let (a, b) = (pair[0].as_principal().unwrap(), pair[1].as_principal().unwrap());
            prop_assert_eq!(b % a, 0);
        }
    }
}

#[test]
fn levels_partition_small_range() {
    let sieve = omega_sieve(1, 10_000).unwrap();
    for n in 1..=10_000u64 {
        let hits: Vec<u32> = (0..20).filter(|&i| S::level(i).member(n)).collect();
        assert_eq!(hits, vec![u32::from(sieve[n as usize - 1])], "{n}");
        let f = factorize(n).unwrap();
        assert_eq!(f.prime_multiset().iter().product::<u64>(), n);
    }
}

#[test]
fn i_products_stay_off_finite_levels() {
    let bases = [
        tails(S::diagonal(Selector::PowersOf(2)), 10_000).unwrap(),
        tails(S::diagonal(Selector::Primorial), 10_000).unwrap(),
        tails(S::geom(3, 2), 10_000).unwrap(),
    ];
    for x in &bases {
        for y in &bases {
            for xy in [product(x, y).unwrap(), product(y, x).unwrap()] {
                match level_evidence(&xy, 30, 10_000) {
                    LevelEvidence::NotOnFiniteLevels { checked_up_to, verdicts } => {
                        assert_eq!(checked_up_to, 30);
                        assert!(verdicts.iter().all(|v| !v.is_refuted()));
                    }
                    other => panic!("{xy}: {other}"),
                }
            }
        }
    }
}

#[test]
fn suites_ignore_worker_count() {
    for suite in ["decomposition", "falpha-level", "I-product"] {
        let p = SuiteParams { bound: 2000, ..SuiteParams::default() };
        let one = run_suite(suite, &SuiteParams { jobs: Some(1), ..p }).unwrap();
        let four = run_suite(suite, &SuiteParams { jobs: Some(4), ..p }).unwrap();
        assert_eq!(machine(&[one], false), machine(&[four], false));
    }
}

#[test]
fn passing_suites_pass_at_smaller_bounds() {
    for bound in [10, 99, 500, 2500] {
        let p = SuiteParams { bound, ..SuiteParams::default() };
        for suite in ["level-partition", "quotient-law", "principal-tilde-divisibility", "tilde-prime", "chain-suite"] {
            let r = run_suite(suite, &p).unwrap();
            assert!(r.passed(), "{suite} at {bound}: {:?}", r.failures);
        }
    }
}
