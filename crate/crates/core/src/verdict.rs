use std::fmt;

/// Outcome of a membership checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// The candidate is invertible but violates a defining condition.
    Reject(String),
    /// The candidate is not invertible.
    Singular,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn reject(reason: impl Into<String>) -> Self {
        Verdict::Reject(reason.into())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "accept"),
            Verdict::Reject(r) => write!(f, "reject ({r})"),
            Verdict::Singular => write!(f, "reject (singular)"),
        }
    }
}
