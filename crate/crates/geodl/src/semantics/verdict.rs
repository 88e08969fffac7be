//! Satisfaction results carrying an exactness flag.

use serde::{Deserialize, Serialize};

use crate::rat::{fmt_rat, Rat};

/// How a verdict was decided. Region comparisons in this crate reduce to
/// rational sign tests and stay `Exact`; `Numeric` records the tolerance
/// whenever a check had to fall back to an approximate comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    Numeric { epsilon: String },
}

impl Exactness {
    pub fn numeric(eps: &Rat) -> Exactness {
        Exactness::Numeric { epsilon: fmt_rat(eps) }
    }

    /// The weaker of two flags (numeric wins).
    pub fn combine(self, other: Exactness) -> Exactness {
        match (self, other) {
            (Exactness::Exact, Exactness::Exact) => Exactness::Exact,
            (Exactness::Numeric { epsilon }, _) | (_, Exactness::Numeric { epsilon }) => {
                Exactness::Numeric { epsilon }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: bool,
    pub exactness: Exactness,
}

impl Verdict {
    pub fn exact(value: bool) -> Verdict {
        Verdict { value, exactness: Exactness::Exact }
    }

    /// Conjunction: the value is the and, the exactness the weakest part.
    pub fn and(self, other: Verdict) -> Verdict {
        Verdict {
            value: self.value && other.value,
            exactness: self.exactness.combine(other.exactness),
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        Verdict {
            value: self.value || other.value,
            exactness: self.exactness.combine(other.exactness),
        }
    }

    pub fn negate(self) -> Verdict {
        Verdict { value: !self.value, exactness: self.exactness }
    }
}

impl From<bool> for Verdict {
    fn from(value: bool) -> Self {
        Verdict::exact(value)
    }
}
