//! Three-valued answers.
//!
//! [`TriState`] answers "is this class null-homotopic?" and [`Truth`] answers
//! yes/no questions built from such answers. Neither ever guesses: a value is
//! only decided when the fact catalog certifies it.

use serde::Serialize;
use std::fmt;

/// Triviality of a homotopy class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Zero,
    Nonzero,
    Unknown,
}

impl TriState {
    pub fn is_decided(self) -> bool {
        self != TriState::Unknown
    }

    /// `Zero` as true, `Nonzero` as false.
    pub fn is_zero(self) -> Truth {
        match self {
            TriState::Zero => Truth::True,
            TriState::Nonzero => Truth::False,
            TriState::Unknown => Truth::Unknown,
        }
    }

    pub fn is_nonzero(self) -> Truth {
        self.is_zero().not()
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Zero => "zero",
            TriState::Nonzero => "nonzero",
            TriState::Unknown => "unknown",
        })
    }
}

/// Kleene three-valued truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn is_decided(self) -> bool {
        self != Truth::Unknown
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}
