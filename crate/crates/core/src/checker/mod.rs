//! Named property suites over the arithmetic, set and filter layers.

mod report;
mod suites;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::CheckError;
use crate::verdict::Verdict;

pub use report::{markdown, machine};

/// Suite names in report order.
pub const SUITES: &[&str] = &[
    "level-partition",
    "signature-partition",
    "omega-additivity",
    "quotient-law",
    "finite-union",
    "falpha-level",
    "alpha-additivity",
    "principal-tilde-divisibility",
    "tilde-prime",
    "decomposition",
    "pushforward-divides",
    "chain-suite",
    "I-evidence",
    "I-tail",
    "I-product",
    "I-divides",
];

pub const DEFAULT_BOUND: u64 = 10_000;
pub const DEFAULT_MAX_LEVEL: u32 = 50;
pub const DEFAULT_CHAIN_LENGTH: u32 = 8;
pub const DEFAULT_SEED: u64 = 0x5eed;

const MAX_FAILURES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub bound: u64,
    pub max_level: u32,
    pub chain_length: u32,
    pub seed: u64,
    /// Worker threads; `None` uses rayon's default. Never affects results.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            bound: DEFAULT_BOUND,
            max_level: DEFAULT_MAX_LEVEL,
            chain_length: DEFAULT_CHAIN_LENGTH,
            seed: DEFAULT_SEED,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: SuiteParams,
    pub cases_run: u64,
    pub proven: u64,
    pub consistent: u64,
    pub refuted: u64,
    /// The first few failing cases, in case order.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub wall_time: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.refuted == 0
    }
}

/// Per-case outcomes. A case is one claim; it counts as proven when it was
/// settled exactly, consistent when only checked up to a bound.
#[derive(Debug, Default, Clone)]
pub(crate) struct Tally {
    cases: u64,
    proven: u64,
    consistent: u64,
    refuted: u64,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn ok(&mut self) {
        self.cases += 1;
        self.proven += 1;
    }

    pub(crate) fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.cases += 1;
        self.refuted += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(msg());
        }
    }

    pub(crate) fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if cond {
            self.ok()
        } else {
            self.fail(msg)
        }
    }

    /// A case whose claim is the verdict itself.
    pub(crate) fn verdict(&mut self, v: &Verdict, ctx: impl FnOnce() -> String) {
        match v {
            Verdict::Proven(_) => self.ok(),
            Verdict::ConsistentUpTo(_) => {
                self.cases += 1;
                self.consistent += 1;
            }
            Verdict::Refuted(_) => self.fail(|| format!("{}: {v}", ctx())),
        }
    }

    /// A case that needs a proof, not just a bounded check.
    pub(crate) fn proven(&mut self, v: &Verdict, ctx: impl FnOnce() -> String) {
        self.check(v.is_proven(), || format!("{}: {v}", ctx()))
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.proven += other.proven;
        self.consistent += other.consistent;
        self.refuted += other.refuted;
        let room = MAX_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Runs `f` over `lo..=hi` in parallel chunks and folds in range order.
pub(crate) fn par_range(lo: u64, hi: u64, f: impl Fn(u64, &mut Tally) + Sync) -> Tally {
    if lo > hi {
        return Tally::default();
    }
    let chunk = ((hi - lo + 1) / 256).max(1);
    let starts: Vec<u64> = (lo..=hi).step_by(chunk as usize).collect();
    starts
        .into_par_iter()
        .map(|s| {
            let mut t = Tally::default();
            for n in s..=(s + chunk - 1).min(hi) {
                f(n, &mut t);
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

/// Runs `f` on each item in parallel and folds in item order.
pub(crate) fn par_items<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteResult, CheckError> {
    let run = suites::lookup(name).ok_or_else(|| CheckError::UnknownSuite(name.to_string()))?;
    let go = || {
        let start = Instant::now();
        let t = run(params);
        SuiteResult {
            suite: name.to_string(),
            params: *params,
            cases_run: t.cases,
            proven: t.proven,
            consistent: t.consistent,
            refuted: t.refuted,
            failures: t.failures,
            wall_time: start.elapsed().as_secs_f64(),
        }
    };
    Ok(with_pool(params.jobs, go))
}

/// Every suite, in catalog order.
pub fn run_all(params: &SuiteParams) -> Vec<SuiteResult> {
    SUITES.iter().map(|s| run_suite(s, params).expect("catalog names are known")).collect()
}

fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_merge_keeps_order_and_cap() {
        let mut a = Tally::default();
        a.fail(|| "a".into());
        let mut b = Tally::default();
        for i in 0..60 {
            b.fail(|| format!("b{i}"));
        }
        b.ok();
        let m = a.merge(b);
        assert_eq!((m.cases, m.refuted, m.proven), (62, 61, 1));
        assert_eq!(m.failures.len(), MAX_FAILURES);
        assert_eq!(m.failures[..2], ["a".to_string(), "b0".to_string()]);
    }

    #[test]
    fn par_range_matches_sequential() {
        let t = par_range(1, 1000, |n, t| t.check(n % 7 != 0, || n.to_string()));
        assert_eq!(t.cases, 1000);
        assert_eq!(t.refuted, 142);
        assert_eq!(t.failures[0], "7");
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", &SuiteParams::default()).unwrap_err(), CheckError::UnknownSuite("nope".into()));
    }
}
