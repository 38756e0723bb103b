use super::rules::{finite_elements, rank};
use super::{geom_exponent, SetDescriptor, SetDescriptor::*};
use crate::arith::iroot;
use crate::sieve::{omega_sieve, primes_up_to};

// Above this many candidates a quotient is enumerated by filtering `[1, bound]`.
const QUOTIENT_EXPAND_LIMIT: u64 = 1 << 24;

impl SetDescriptor {
    /// Members in `[1, bound]`, ascending and duplicate-free.
    pub fn enumerate(&self, bound: u64) -> Vec<u64> {
        if bound == 0 {
            return Vec::new();
        }
        match self {
            Finite(f) => f.as_slice().iter().copied().take_while(|&x| x <= bound).collect(),
            Primes => primes_up_to(bound),
            Level(i) => omega_sieve(1, bound)
                .expect("bound >= 1")
                .iter()
                .enumerate()
                .filter(|(_, &w)| w as u32 == *i)
                .map(|(k, _)| k as u64 + 1)
                .collect(),
            Powers(s, k) => {
                if *k == 0 {
                    return vec![1];
                }
                elements_upto(s, iroot(bound, *k)).into_iter().map(|a| a.pow(*k)).collect()
            }
            DistinctProducts(s, n) => pattern_products(s, &vec![1; *n as usize], bound),
            Pattern(s, exps) => pattern_products(s, exps, bound),
            Scale(c, s) => {
                if *c == 0 {
                    return Vec::new();
                }
                elements_upto(s, bound / c).into_iter().map(|a| a * c).collect()
            }
            Quotient(s, c) => {
                if *c == 0 {
                    return Vec::new();
                }
                match bound.checked_mul(*c) {
                    Some(top) if top <= QUOTIENT_EXPAND_LIMIT.max(bound) => elements_upto(s, top)
                        .into_iter()
                        .filter(|a| a % c == 0)
                        .map(|a| a / c)
                        .collect(),
                    _ => filter_range(self, bound),
                }
            }
            UpClosure(s) => {
                let mut mark = vec![false; bound as usize + 1];
                for a in elements_upto(s, bound) {
                    if mark[a as usize] {
                        continue;
                    }
                    let mut m = a;
                    while m <= bound {
                        mark[m as usize] = true;
                        m += a;
                    }
                }
                collect_marks(&mark)
            }
            DownClosure(s, _) => match finite_elements(s) {
                Some(elems) => {
                    let mut out: Vec<u64> = elems
                        .iter()
                        .flat_map(|&a| super::divisors(a))
                        .filter(|&d| d <= bound)
                        .collect();
                    out.sort_unstable();
                    out.dedup();
                    out
                }
                None => filter_range(self, bound),
            },
            ProductUnion(b, c) => {
                let (Some(&bmin), Some(&cmin)) = (smallest(b, 1, bound).first(), smallest(c, 1, bound).first()) else {
                    return Vec::new();
                };
                let bs = elements_upto(b, bound / cmin);
                let cs = elements_upto(c, bound / bmin);
                let mut out = Vec::new();
                for &x in &bs {
                    for &y in &cs {
                        match x.checked_mul(y) {
                            Some(p) if p <= bound => out.push(p),
                            _ => break,
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            }
            GeomTimes(c, r) => {
                let mut out = Vec::new();
                if *c == 0 || *r == 0 {
                    return out;
                }
                if *r == 1 {
                    if *c <= bound {
                        out.push(*c);
                    }
                    return out;
                }
                let mut v = c.checked_mul(*r);
                while let Some(x) = v.filter(|&x| x <= bound) {
                    debug_assert!(geom_exponent(*c, *r, x).is_some());
                    out.push(x);
                    v = x.checked_mul(*r);
                }
                out
            }
            Diagonal(sel) => {
                let mut out = Vec::new();
                let mut i = 0;
                while let Some(x) = sel.element(i).filter(|&x| x <= bound) {
                    out.push(x);
                    i += 1;
                }
                out
            }
            MultiplesOf(d) => {
                if *d == 0 {
                    return Vec::new();
                }
                (1..=bound / d).map(|k| k * d).collect()
            }
            Tail(s, k) => elements_upto(s, bound).into_iter().skip(*k as usize).collect(),
            IndexedPrimes { modulus, residue } => {
                if *modulus == 0 {
                    return Vec::new();
                }
                primes_up_to(bound)
                    .into_iter()
                    .enumerate()
                    .filter(|(j, _)| j % *modulus as usize == *residue as usize)
                    .map(|(_, p)| p)
                    .collect()
            }
            Union(parts) => {
                let mut out: Vec<u64> = parts.iter().flat_map(|p| elements_upto(p, bound)).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
            Intersection(parts) => {
                let Some((pick, _)) = parts.iter().enumerate().min_by_key(|(_, p)| rank(p)) else {
                    return filter_range(self, bound);
                };
                elements_upto(&parts[pick], bound)
                    .into_iter()
                    .filter(|&x| parts.iter().enumerate().all(|(j, p)| j == pick || p.member(x)))
                    .collect()
            }
            Complement(s) => {
                let inner = elements_upto(s, bound);
                let mut out = Vec::with_capacity(bound as usize - inner.len().min(bound as usize));
                let mut it = inner.iter().peekable();
                for n in 1..=bound {
                    if it.peek() == Some(&&n) {
                        it.next();
                    } else {
                        out.push(n);
                    }
                }
                out
            }
        }
    }
}

fn elements_upto(s: &SetDescriptor, bound: u64) -> Vec<u64> {
    if let Finite(f) = s {
        return f.as_slice().iter().copied().take_while(|&x| x <= bound).collect();
    }
    s.enumerate(bound)
}

// The `count` smallest members up to `bound`, or all of them if fewer.
fn smallest(s: &SetDescriptor, count: usize, bound: u64) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let mut window = 64.min(bound);
    loop {
        let mut elems = elements_upto(s, window);
        if elems.len() >= count || window >= bound {
            elems.truncate(count);
            return elems;
        }
        window = window.saturating_mul(8).min(bound);
    }
}

fn filter_range(s: &SetDescriptor, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&n| s.member(n)).collect()
}

fn collect_marks(mark: &[bool]) -> Vec<u64> {
    mark.iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m)
        .map(|(i, _)| i as u64)
        .collect()
}

/// All products `∏ a_j^{e_j} ≤ bound` over pairwise distinct members `a_j`.
pub(crate) fn pattern_products(s: &SetDescriptor, exps: &[u32], bound: u64) -> Vec<u64> {
    let mut exps = exps.to_vec();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    if exps.is_empty() {
        return if bound >= 1 { vec![1] } else { Vec::new() };
    }
    // Any member's cofactor is at least the product of the n − 1 smallest
    // members raised to the least exponent.
    let rest = exps.len() - 1;
    let smalls = smallest(s, rest, bound);
    if smalls.len() < rest {
        return Vec::new();
    }
    let e_min = *exps.last().expect("nonempty");
    let Some(floor) = smalls.iter().try_fold(1u64, |acc, &a| acc.checked_mul(a)).and_then(|p| p.checked_pow(e_min)) else {
        return Vec::new();
    };
    let elems = elements_upto(s, bound / floor.max(1));
    let mut out = Vec::new();
    let mut used = Vec::new();
    product_dfs(&elems, &exps, 0, 1, bound, &mut used, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn product_dfs(
    elems: &[u64],
    exps: &[u32],
    slot: usize,
    acc: u64,
    bound: u64,
    used: &mut Vec<usize>,
    out: &mut Vec<u64>,
) {
    if slot == exps.len() {
        out.push(acc);
        return;
    }
    let e = exps[slot];
    let start = match used.last() {
        Some(&prev) if exps[slot - 1] == e => prev + 1,
        _ => 0,
    };
    for idx in start..elems.len() {
        if used.contains(&idx) {
            continue;
        }
        let Some(next) = elems[idx].checked_pow(e).and_then(|p| acc.checked_mul(p)) else {
            break;
        };
        if next > bound {
            break;
        }
        used.push(idx);
        product_dfs(elems, exps, slot + 1, next, bound, used, out);
        used.pop();
    }
}
