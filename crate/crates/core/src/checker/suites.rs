use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{par_items, par_range, SuiteParams, Tally};
use crate::arith::{factorize, quotient_level, signature, signature_classes, LevelIndex};
use crate::error::{FilterError, WitnessError};
use crate::filter::{
    add_alpha, contains, f_alpha, level_evidence, parse_filter, principal, product, pushforward,
    tilde_divides, tilde_divisors_principal, Alpha, BasicSpec, FilterBase, LevelEvidence,
};
use crate::setlang::rules::finite_elements;
use crate::setlang::SetDescriptor;
use crate::sieve::omega_sieve;
use crate::verdict::Verdict;
use crate::witness::{
    chain, ladder, scale, smallest_factor_in_level, smallest_multiple_in_level, MapKind, NamedMap,
};

type Suite = fn(&SuiteParams) -> Tally;

pub(crate) fn lookup(name: &str) -> Option<Suite> {
    Some(match name {
        "level-partition" => level_partition,
        "signature-partition" => signature_partition,
        "omega-additivity" => omega_additivity,
        "quotient-law" => quotient_law,
        "finite-union" => finite_union,
        "falpha-level" => falpha_level,
        "alpha-additivity" => alpha_additivity,
        "principal-tilde-divisibility" => principal_tilde_divisibility,
        "tilde-prime" => tilde_prime,
        "decomposition" => decomposition,
        "pushforward-divides" => pushforward_divides,
        "chain-suite" => chain_suite,
        "I-evidence" => i_evidence,
        "I-tail" => i_tail,
        "I-product" => i_product,
        "I-divides" => i_divides,
        _ => return None,
    })
}

// Oracles: plain trial division, nothing shared with the library.

fn omega_oracle(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count + u32::from(n > 1)
}

fn prime_oracle(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn divisors_oracle(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

// Number of partitions of n.
fn partitions_oracle(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

// Ω over 1..=hi from the sieve, indexed by n.
fn omega_table(hi: u64) -> Vec<u8> {
    let mut t = vec![0u8];
    t.extend(omega_sieve(1, hi).expect("lo >= 1"));
    t
}

const I_SPECS: &[&str] = &["tails:diag(pow2)", "tails:diag(pow3)", "tails:diag(primorial)", "tails:geom(3,2)"];

fn build_spec(spec: &str, bound: u64) -> Result<FilterBase, FilterError> {
    parse_filter(spec).expect("catalog specs parse").build(bound)
}

/// Bases whose level evidence should be NotOnFiniteLevels.
pub(crate) fn i_bases(bound: u64) -> Vec<(String, FilterBase)> {
    I_SPECS
        .iter()
        .map(|s| (s.to_string(), build_spec(s, bound).expect("catalog bases build")))
        .collect()
}

fn catalog_bases(p: &SuiteParams) -> Vec<(String, FilterBase)> {
    let mut out: Vec<(String, FilterBase)> =
        (1..=(p.bound / 100).max(1)).map(|n| (format!("principal:{n}"), principal(n))).collect();
    for s in [
        "tails:primes",
        "tails:level(2)",
        "falpha:[(2,^3,x2),(3,^2,x2)]",
        "falpha:[(tails:primes,^1,x2)]",
        "prod(principal:6,tails:primes)",
    ] {
        out.push((s.to_string(), build_spec(s, p.bound).expect("catalog bases build")));
    }
    out.extend(i_bases(p.bound));
    out
}

fn level_partition(p: &SuiteParams) -> Tally {
    let omega = omega_table(p.bound);
    par_range(1, p.bound, |n, t| {
        let w = omega_oracle(n);
        let hits: Vec<u32> = (0..64).filter(|&i| SetDescriptor::level(i).member(n)).collect();
        t.check(hits == [w] && u32::from(omega[n as usize]) == w, || {
            format!("{n}: levels {hits:?}, sieve {}, oracle {w}", omega[n as usize])
        });
    })
}

fn signature_partition(p: &SuiteParams) -> Tally {
    let omega = omega_table(p.bound);
    let mut t = Tally::default();
    let mut classes = Vec::new();
    for i in 1..=8u32 {
        let cs = signature_classes(LevelIndex(i)).expect("i >= 1");
        t.check(cs.len() == partitions_oracle(i as usize), || format!("level {i}: {} classes", cs.len()));
        let sets: Vec<SetDescriptor> = cs.iter().map(|c| SetDescriptor::Primes.pattern(c.parts().to_vec())).collect();
        classes.push((cs, sets));
    }
    // The level 3 sample elements sit in the listed classes.
    for (n, class) in [(8u64, vec![3u32]), (12, vec![2, 1]), (30, vec![1, 1, 1])] {
        let (cs, sets) = &classes[2];
        let at = cs.iter().position(|c| c.parts() == class.as_slice());
        t.check(at.is_some_and(|k| sets[k].member(n)) && signature(n).is_ok_and(|s| s.parts() == class), || {
            format!("{n} not in class {class:?}")
        });
    }
    t.merge(par_range(1, p.bound, |n, t| {
        let i = u32::from(omega[n as usize]);
        if !(1..=8).contains(&i) {
            return;
        }
        let (cs, sets) = &classes[i as usize - 1];
        let hits: Vec<usize> = (0..sets.len()).filter(|&k| sets[k].member(n)).collect();
        let sig = signature(n).ok();
        t.check(hits.len() == 1 && sig.as_ref() == Some(&cs[hits[0]]), || format!("{n}: classes {hits:?}"));
    }))
}

fn omega_additivity(p: &SuiteParams) -> Tally {
    let n_max = (p.bound / 5).max(1);
    let small: Vec<u32> = (0..=n_max).map(|n| if n == 0 { 0 } else { omega_oracle(n) }).collect();
    let table = (n_max * n_max <= 1 << 26).then(|| omega_table(n_max * n_max));
    par_range(1, n_max, |m, t| {
        for n in 1..=n_max {
            let got = match &table {
                Some(tab) => u32::from(tab[(m * n) as usize]),
                None => crate::arith::omega_of(m * n),
            };
            t.check(got == small[m as usize] + small[n as usize], || {
                format!("omega({m}*{n}) = {got}, omega({m}) + omega({n}) = {}", small[m as usize] + small[n as usize])
            });
        }
    })
}

fn quotient_law(p: &SuiteParams) -> Tally {
    let m_max = (p.bound / 10).max(1);
    let r_max = p.bound;
    let table = (m_max * r_max <= 1 << 26).then(|| omega_table(m_max * r_max));
    let omega_r: Vec<u32> = (0..=r_max).map(|r| if r == 0 { 0 } else { omega_oracle(r) }).collect();
    par_range(1, m_max, |m, t| {
        let rm: Vec<u32> = (1..=r_max)
            .map(|r| match &table {
                Some(tab) => u32::from(tab[(r * m) as usize]),
                None => omega_oracle(r * m),
            })
            .collect();
        for i in 0..=8u32 {
            let predicted = quotient_level(LevelIndex(i), m).expect("m >= 1").map(LevelIndex::get);
            let bad = (1..=r_max).find(|&r| (rm[r as usize - 1] == i) != (predicted == Some(omega_r[r as usize])));
            t.check(bad.is_none(), || format!("L_{i}/{m} predicted {predicted:?}, differs at r = {}", bad.unwrap()));
        }
    })
}

fn finite_union(p: &SuiteParams) -> Tally {
    par_range(1, p.bound, |n, t| {
        let x = principal(n);
        let w = omega_oracle(n);
        for k in 0..=8u32 {
            let union = contains(&x, &SetDescriptor::levels_below(k + 1), p.bound);
            let some = (0..=k).any(|i| contains(&x, &SetDescriptor::level(i), p.bound).is_proven());
            let decisive = union.is_proven() || union.is_refuted();
            t.check(decisive && union.is_proven() == some && some == (w <= k), || {
                format!("principal:{n}, i <= {k}: union {union}, some level {some}")
            });
        }
    })
}

/// The F_α examples with concrete primes 2 and 3.
fn example_alphas() -> Vec<Alpha> {
    let two = || BasicSpec::Prime(2);
    let three = || BasicSpec::Prime(3);
    vec![
        Alpha::new([(two(), 2, 1)]).unwrap(),
        Alpha::new([(two(), 1, 2)]).unwrap(),
        Alpha::new([(two(), 3, 2), (three(), 2, 2)]).unwrap(),
    ]
}

fn basic_pool(bound: u64) -> Vec<BasicSpec> {
    let mut pool: Vec<BasicSpec> = [2, 3, 5, 7].into_iter().map(BasicSpec::Prime).collect();
    for s in ["gens[finite(11,13,17)]", "gens[finite(19,23,29,31)]", "tails:primes", "tails:pidx(3,1)"] {
        pool.push(BasicSpec::Base(Box::new(build_spec(s, bound).expect("pool bases build"))));
    }
    pool
}

fn random_alpha(rng: &mut ChaCha8Rng, pool: &[BasicSpec], max_sigma: u64) -> Alpha {
    loop {
        let len = rng.gen_range(1..=3);
        let entries: Vec<(BasicSpec, u32, u32)> = (0..len)
            .map(|_| (pool[rng.gen_range(0..pool.len())].clone(), rng.gen_range(1..=3), rng.gen_range(1..=3)))
            .collect();
        let a = Alpha::new(entries).expect("pool primes are prime");
        if a.sigma() <= max_sigma {
            return a;
        }
    }
}

fn random_alphas(p: &SuiteParams, count: usize, max_sigma: u64) -> Vec<Alpha> {
    let pool = basic_pool(p.bound);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..count).map(|_| random_alpha(&mut rng, &pool, max_sigma)).collect()
}

// Every listed element of every generator lies on `level`; finite generators
// are listed in full, the rest up to `limit`.
fn gens_on_level(x: &FilterBase, level: u64, limit: u64) -> Result<(), u64> {
    for g in x.gens() {
        let elems = finite_elements(g).unwrap_or_else(|| g.enumerate(limit));
        if let Some(&bad) = elems.iter().find(|&&e| u64::from(omega_oracle(e)) != level) {
            return Err(bad);
        }
    }
    Ok(())
}

fn falpha_level(p: &SuiteParams) -> Tally {
    let limit = p.bound * 10;
    let mut alphas = example_alphas();
    alphas.extend(random_alphas(p, 100, 10));
    par_items(&alphas, |a, t| {
        let sigma = a.sigma();
        match f_alpha(a, p.bound) {
            Ok(x) => match gens_on_level(&x, sigma, limit) {
                Ok(()) => {
                    let v = contains(&x, &SetDescriptor::level(sigma as u32), limit);
                    t.verdict(&v, || format!("falpha:{a} on level {sigma}"));
                }
                Err(e) => t.fail(|| format!("falpha:{a}: {e} is not on level {sigma}")),
            },
            Err(e) => t.fail(|| format!("falpha:{a}: {e}")),
        }
    })
}

fn alpha_additivity(p: &SuiteParams) -> Tally {
    let alphas = random_alphas(p, 100, 6);
    let mut pairs: Vec<(Alpha, Alpha)> = alphas.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let ex = example_alphas();
    pairs.push((ex[2].clone(), ex[2].clone()));
    pairs.push((ex[0].clone(), ex[1].clone()));
    par_items(&pairs, |(a, b), t| {
        let sum = add_alpha(a, b);
        let sigma = a.sigma() + b.sigma();
        t.check(sum.sigma() == sigma, || format!("sigma({a} + {b}) = {}", sum.sigma()));
        let built = f_alpha(a, p.bound).and_then(|x| f_alpha(b, p.bound).and_then(|y| product(&x, &y)));
        match built {
            Ok(xy) => match gens_on_level(&xy, sigma, p.bound) {
                Ok(()) => {
                    let v = contains(&xy, &SetDescriptor::level(sigma as u32), p.bound);
                    t.verdict(&v, || format!("falpha:{a} * falpha:{b} on level {sigma}"));
                }
                Err(e) => t.fail(|| format!("falpha:{a} * falpha:{b}: {e} is not on level {sigma}")),
            },
            Err(e) => t.fail(|| format!("falpha:{a} * falpha:{b}: {e}")),
        }
        match f_alpha(&sum, p.bound) {
            Ok(x) => t.check(gens_on_level(&x, sigma, p.bound).is_ok(), || format!("falpha:{sum} leaves level {sigma}")),
            Err(e) => t.fail(|| format!("falpha:{sum}: {e}")),
        }
    })
}

fn principal_tilde_divisibility(p: &SuiteParams) -> Tally {
    let n = 3 * isqrt(p.bound);
    par_range(1, n, |a, t| {
        let x = principal(a);
        for b in 1..=n {
            let v = tilde_divides(&x, &principal(b), p.bound);
            let expected = b % a == 0;
            t.check(v.is_proven() == expected && (expected || v == Verdict::Refuted(b)), || {
                format!("principal:{a} ~| principal:{b} gave {v}")
            });
        }
    })
}

fn tilde_prime(p: &SuiteParams) -> Tally {
    par_range(1, p.bound, |n, t| {
        let divs: Vec<u64> = tilde_divisors_principal(n, p.bound).into_iter().map(|(m, _)| m).collect();
        let is_tprime = n > 1 && divs == [1, n];
        t.check(divs == divisors_oracle(n) && is_tprime == prime_oracle(n), || {
            format!("principal:{n}: ~|-divisors {divs:?}")
        });
    })
}

fn decomposition(p: &SuiteParams) -> Tally {
    par_range(2, p.bound, |n, t| {
        let w = omega_oracle(n);
        let parts = factorize(n).map(|f| f.prime_multiset()).unwrap_or_default();
        let product: u64 = parts.iter().product();
        t.check(parts.len() as u32 == w && product == n && parts.iter().all(|&q| prime_oracle(q)), || {
            format!("{n}: factors {parts:?}")
        });
        match chain(&principal(n), p.bound, p.max_level, p.chain_length) {
            Ok(c) => {
                let levels_ok = c.levels.iter().enumerate().all(|(k, l)| *l == Some(k as u32 + 1));
                t.check(c.bases.len() as u32 == w && levels_ok && c.links.iter().all(Verdict::is_proven), || {
                    format!("chain(principal:{n}) has {} bases, links {:?}", c.bases.len(), c.links)
                });
            }
            Err(e) => t.fail(|| format!("chain(principal:{n}): {e}")),
        }
    })
}

fn sf_oracle(n: u64, k: u32) -> Option<u64> {
    (1..=n).find(|&d| n % d == 0 && omega_oracle(d) == k)
}

fn sm_oracle(n: u64, k: u32) -> Option<u64> {
    (1..=1u64 << 20).map(|t| n * t).find(|&m| omega_oracle(m) == k)
}

fn pushforward_divides(p: &SuiteParams) -> Tally {
    // The closed forms are confirmed before the maps are used.
    let mut t = par_range(1, 1000, |n, t| {
        let w = omega_oracle(n);
        for k in 1..=w {
            let got = smallest_factor_in_level(n, k).ok();
            t.check(got == sf_oracle(n, k), || format!("sf({k}) of {n} gave {got:?}"));
        }
        for k in w..=w + 4 {
            let got = smallest_multiple_in_level(n, k).ok();
            t.check(got == sm_oracle(n, k), || format!("sm({k}) of {n} gave {got:?}"));
        }
    });
    let mut maps: Vec<NamedMap> = (1..=5).map(NamedMap::SmallestFactor).collect();
    maps.extend([NamedMap::Pow(2), NamedMap::Pow(3), NamedMap::ThreeTwo]);
    for f in &maps {
        t.check(f.verify(p.bound).is_ok(), || format!("{f} is not a {} map", f.kind().as_str()));
    }
    let bases: Vec<(String, FilterBase, Option<u32>)> = catalog_bases(p)
        .into_iter()
        .map(|(name, x)| {
            let level = level_evidence(&x, p.max_level, p.bound).level();
            (name, x, level)
        })
        .collect();
    let mut sm_levels: Vec<u32> = bases.iter().filter_map(|b| b.2).flat_map(|j| j..=j + 4).collect();
    sm_levels.sort_unstable();
    sm_levels.dedup();
    for &k in &sm_levels {
        let sm = NamedMap::SmallestMultiple(k);
        t.check(sm.verify(p.bound).is_ok(), || format!("{sm} is not a multiple map"));
    }
    t.merge(par_items(&bases, |(name, x, level), t| {
        let mut fs = maps.clone();
        if let Some(j) = level {
            fs.extend((*j..=j + 4).map(NamedMap::SmallestMultiple));
        }
        for f in &fs {
            let y = match pushforward(f, x) {
                Ok(y) => y,
                Err(FilterError::DomainError { .. }) => continue,
                Err(e) => {
                    t.fail(|| format!("push({f},{name}): {e}"));
                    continue;
                }
            };
            let v = match f.kind() {
                MapKind::Factor => tilde_divides(&y, x, p.bound),
                MapKind::Multiple => tilde_divides(x, &y, p.bound),
            };
            t.verdict(&v, || format!("push({f},{name}) against {name}"));
        }
    }))
}

fn chain_case(t: &mut Tally, name: &str, res: Result<crate::witness::Chain, WitnessError>, expected_len: usize, strict: bool) {
    match res {
        Ok(c) if c.bases.len() == expected_len => {
            let v = Verdict::all(c.links.iter().cloned()).unwrap_or_else(|| Verdict::proven("single-base", name));
            if strict {
                t.proven(&v, || format!("chain({name})"));
            } else {
                t.verdict(&v, || format!("chain({name})"));
            }
        }
        Ok(c) => t.fail(|| format!("chain({name}) has {} bases, expected {expected_len}", c.bases.len())),
        Err(e) => t.fail(|| format!("chain({name}): {e}")),
    }
}

fn chain_suite(p: &SuiteParams) -> Tally {
    let mut t = par_range(2, (p.bound / 5).max(2), |n, t| {
        let res = chain(&principal(n), p.bound, p.max_level, p.chain_length);
        chain_case(t, &format!("principal:{n}"), res, omega_oracle(n) as usize, true);
    });
    let bases = i_bases(p.bound);
    t = t.merge(par_items(&bases, |(name, x), t| {
        let res = chain(x, p.bound, p.max_level, p.chain_length);
        chain_case(t, name, res, p.chain_length as usize + 1, false);
    }));
    t
}

// One case per level, each needing a proof.
fn i_levels(t: &mut Tally, name: &str, ev: &LevelEvidence) {
    match ev {
        LevelEvidence::NotOnFiniteLevels { verdicts, .. } => {
            for (i, v) in verdicts.iter().enumerate() {
                t.proven(v, || format!("{name}: N - L_{i}"));
            }
        }
        other => t.fail(|| format!("{name}: {other}")),
    }
}

fn i_evidence(p: &SuiteParams) -> Tally {
    let bases = i_bases(p.bound);
    let mut t = par_items(&bases, |(name, x), t| {
        i_levels(t, name, &level_evidence(x, p.max_level, p.bound));
        t.proven(&contains(x, &SetDescriptor::nat(), p.bound), || format!("{name}: N"));
    });
    // Smallest multiples along one rung per level stay injective.
    for level in 1..=5u32 {
        let l = ladder(level, p.bound);
        let rungs_ok = l
            .rungs
            .iter()
            .enumerate()
            .all(|(j, &(a, m))| m % a == 0 && omega_oracle(a) == level && omega_oracle(m) == level + j as u32);
        t.check(!l.rungs.is_empty() && rungs_ok && l.injective(), || format!("ladder at level {level}"));
    }
    t
}

fn i_tail(p: &SuiteParams) -> Tally {
    let bases = i_bases(p.bound);
    par_items(&bases, |(name, x), t| {
        for n in 0..=20u32 {
            let v = contains(x, &SetDescriptor::levels_below(n).complement(), p.bound);
            t.proven(&v, || format!("{name}: levels >= {n}"));
        }
    })
}

// A product case: NotOnFiniteLevels with no refuted level.
fn i_product_case(t: &mut Tally, name: &str, xy: Result<FilterBase, FilterError>, p: &SuiteParams) {
    match xy.map(|b| level_evidence(&b, p.max_level, p.bound)) {
        Ok(LevelEvidence::NotOnFiniteLevels { verdicts, .. }) => {
            let v = Verdict::all(verdicts).expect("levels 0..=max_level");
            t.verdict(&v, || name.to_string());
        }
        Ok(other) => t.fail(|| format!("{name}: {other}")),
        Err(e) => t.fail(|| format!("{name}: {e}")),
    }
}

fn i_product(p: &SuiteParams) -> Tally {
    let bases = i_bases(p.bound);
    let pairs: Vec<(usize, usize)> = (0..bases.len()).flat_map(|a| (0..bases.len()).map(move |b| (a, b))).collect();
    let t = par_items(&pairs, |&(a, b), t| {
        let (na, xa) = &bases[a];
        let (nb, xb) = &bases[b];
        i_product_case(t, &format!("prod({na},{nb})"), product(xa, xb), p);
    });
    let ns: Vec<u64> = (1..=(p.bound / 100).max(1)).collect();
    t.merge(par_items(&ns, |&n, t| {
        for (name, x) in &bases {
            let n_base = principal(n);
            i_product_case(t, &format!("prod(principal:{n},{name})"), product(&n_base, x), p);
            i_product_case(t, &format!("prod({name},principal:{n})"), product(x, &n_base), p);
            match scale(n, x) {
                Ok(nx) => t.proven(&tilde_divides(&n_base, &nx, p.bound), || format!("principal:{n} ~| {n}*{name}")),
                Err(e) => t.fail(|| format!("{n}*{name}: {e}")),
            }
        }
    }))
}

fn i_divides(p: &SuiteParams) -> Tally {
    let mut t = Tally::default();
    let x = build_spec("tails:geom(3,2)", p.bound).expect("catalog bases build");
    match pushforward(&NamedMap::ThreeTwo, &x) {
        Ok(y) => {
            t.verdict(&tilde_divides(&y, &x, p.bound), || "push(threetwomap,tails:geom(3,2)) ~| tails:geom(3,2)".into());
            for (name, b) in [("tails:geom(3,2)", &x), ("push(threetwomap,tails:geom(3,2))", &y)] {
                let ev = level_evidence(b, p.max_level, p.bound);
                t.check(ev.is_not_on_finite_levels(), || format!("{name}: {ev}"));
            }
            let image_ok = x.gens().iter().all(|g| {
                g.enumerate(p.bound).into_iter().all(|m| {
                    crate::witness::three_two_map(m).is_ok_and(|f| m % f == 0 && y.gens().iter().any(|h| h.member(f)))
                })
            });
            t.check(image_ok, || "threetwomap does not map the source generators into the image".into());
        }
        Err(e) => t.fail(|| format!("push(threetwomap,tails:geom(3,2)): {e}")),
    }
    t
}
