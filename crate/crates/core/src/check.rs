//! Result type shared by every exhaustive proposition check.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    /// The hypothesis of the statement is not met on this instance.
    NotApplicable(String),
    Violated(String),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Outcome::Violated(_))
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Outcome::NotApplicable(_))
    }

    /// Runs `next` unless `self` is already a violation. The result is
    /// not-applicable only when both parts are.
    pub fn and_then(self, next: impl FnOnce() -> Outcome) -> Outcome {
        match self {
            Outcome::Violated(_) => self,
            Outcome::Holds => match next() {
                Outcome::NotApplicable(_) => Outcome::Holds,
                other => other,
            },
            Outcome::NotApplicable(_) => next(),
        }
    }
}

impl From<Result<(), String>> for Outcome {
    fn from(r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Outcome::Holds,
            Err(msg) => Outcome::Violated(msg),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Holds => write!(f, "holds"),
            Outcome::NotApplicable(why) => write!(f, "not applicable ({why})"),
            Outcome::Violated(why) => write!(f, "VIOLATED: {why}"),
        }
    }
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}
