pub mod arith;
pub mod checker;
pub mod error;
pub mod filter;
pub mod setlang;
pub mod sieve;
pub mod verdict;
pub mod witness;

pub use arith::{factorize, omega, signature, signature_classes, Factorization, LevelIndex, PrimeSignature};
pub use checker::{run_all, run_suite, SuiteParams, SuiteResult, SUITES};
pub use error::{ArithError, CheckError, FilterError, ParseError, WitnessError};
pub use filter::{
    contains, level_evidence, mk_base, principal, product, pushforward, tails, tilde_divides, FilterBase,
    FilterSpec, LevelEvidence,
};
pub use setlang::SetDescriptor;
pub use verdict::{Proof, Verdict};
pub use witness::NamedMap;
