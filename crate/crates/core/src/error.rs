use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("0 is outside the domain (positive integers)")]
    Zero,
    #[error("1 lies on L_0 and has no signature class")]
    UnitHasNoSignature,
    #[error("L_0 has no signature classes")]
    LevelZeroHasNoClasses,
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
}

/// A grammar error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("a filter base needs at least one generator")]
    NoGenerators,
    #[error("generators {subset:?} have no common element up to {bound}")]
    FipViolation { subset: Vec<usize>, bound: u64 },
    #[error("map {map} is undefined on every generator")]
    DomainError { map: String },
    #[error("tails need an infinite set, got {0}")]
    TailsOfFinite(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("basic generator {0} is not a subset of the primes")]
    NotPrimeSubset(String),
    #[error("generator sets cannot be made disjoint: {0}")]
    DisjointnessUnsatisfiable(String),
    #[error("{set} has fewer than {needed} members")]
    TooFewMembers { set: String, needed: usize },
    #[error("alpha must have at least one entry with exponent and multiplicity >= 1")]
    EmptyAlpha,
    #[error("no common element found below search cap {0}")]
    SearchExhausted(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no divisor/multiple of {n} on level {k}")]
    NoSuchWitness { n: u64, k: u32 },
    #[error("{value} is outside the domain of {map}")]
    DomainError { map: String, value: u64 },
    #[error("map {map} violates its {kind} property at {value}")]
    KindViolation { map: String, kind: &'static str, value: u64 },
    #[error("chain requires a base on a level >= 1 or with evidence of no finite level")]
    NoChainStart,
    #[error("chain link {index} is broken: {reason}")]
    ChainBroken { index: usize, reason: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Filter(#[from] FilterError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}
