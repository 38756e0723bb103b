//! Three-valued outcomes for semi-decidable questions about lazy sets and
//! filter bases.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

/// The symbolic justification of a [`Verdict::Proven`]: one or more
/// `(rule, witness)` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Proof {
    steps: BTreeSet<(String, String)>,
}

impl Proof {
    pub fn new(rule: impl Into<String>, witness: impl Into<String>) -> Self {
        let mut steps = BTreeSet::new();
        steps.insert((rule.into(), witness.into()));
        Proof { steps }
    }

    pub fn rules(&self) -> impl Iterator<Item = &str> {
        let names: BTreeSet<&str> = self.steps.iter().map(|(r, _)| r.as_str()).collect();
        names.into_iter()
    }

    pub fn steps(&self) -> impl Iterator<Item = (&str, &str)> {
        self.steps.iter().map(|(r, w)| (r.as_str(), w.as_str()))
    }

    fn merge(mut self, other: Proof) -> Proof {
        self.steps.extend(other.steps);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// A symbolic rule settles the question.
    Proven(Proof),
    /// No counterexample up to the bound, and no rule applied.
    ConsistentUpTo(u64),
    /// A concrete counterexample.
    Refuted(u64),
}

impl Verdict {
    pub fn proven(rule: impl Into<String>, witness: impl Into<String>) -> Self {
        Verdict::Proven(Proof::new(rule, witness))
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn counterexample(&self) -> Option<u64> {
        match self {
            Verdict::Refuted(c) => Some(*c),
            _ => None,
        }
    }

    /// Conjunction. Refuted dominates (smallest counterexample wins), then
    /// ConsistentUpTo with the smaller bound, then Proven (steps are merged).
    /// Associative and commutative.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Refuted(a), Refuted(b)) => Refuted(a.min(b)),
            (Refuted(a), _) | (_, Refuted(a)) => Refuted(a),
            (ConsistentUpTo(a), ConsistentUpTo(b)) => ConsistentUpTo(a.min(b)),
            (ConsistentUpTo(a), _) | (_, ConsistentUpTo(a)) => ConsistentUpTo(a),
            (Proven(p), Proven(q)) => Proven(p.merge(q)),
        }
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Option<Verdict> {
        verdicts.into_iter().reduce(Verdict::and)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proven(p) => {
                write!(f, "Proven(")?;
                for (i, r) in p.rules().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
            Verdict::ConsistentUpTo(b) => write!(f, "ConsistentUpTo({b})"),
            Verdict::Refuted(c) => write!(f, "Refuted({c})"),
        }
    }
}
