use serde::Serialize;

/// Result of an exhaustive check: either it holds everywhere, or the first
/// counterexample found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Outcome<W> {
    Holds,
    Fails(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(w) => Some(w),
        }
    }

    pub fn from_witness(witness: Option<W>) -> Self {
        match witness {
            None => Outcome::Holds,
            Some(w) => Outcome::Fails(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Outcome<V> {
        match self {
            Outcome::Holds => Outcome::Holds,
            Outcome::Fails(w) => Outcome::Fails(f(w)),
        }
    }
}
