use serde::Serialize;

/// Outcome of a check that may only be decidable up to a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(String),
    UndecidedAtBound(usize),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails(witness())
        }
    }

    /// First non-holding verdict wins.
    pub fn and(self, other: Verdict) -> Verdict {
        match self {
            Verdict::Holds => other,
            v => v,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::UndecidedAtBound(_) => "undecided",
        }
    }
}
