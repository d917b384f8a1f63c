//! Outcomes of bounded and exact decision procedures.

use serde::Serialize;

/// `Yes` is an exact decision. `SemiDecidedYes` means every check up to
/// `bound` passed and nothing beyond it was examined. `No` is always
/// definitive and carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict<W> {
    Yes,
    SemiDecidedYes { bound: usize },
    No { witness: W },
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        !matches!(self, Verdict::No { .. })
    }

    pub fn is_semi_decided(&self) -> bool {
        matches!(self, Verdict::SemiDecidedYes { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::No { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Yes => Verdict::Yes,
            Verdict::SemiDecidedYes { bound } => Verdict::SemiDecidedYes { bound },
            Verdict::No { witness } => Verdict::No { witness: f(witness) },
        }
    }
}
