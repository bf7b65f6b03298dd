//! Ground tableau search over a DHOL branch and its erased HOL companion.
//!
//! A branch has two sides: `D` holds the DHOL theory and context, `H` the
//! erased (and Φ-simplified) HOL theory and context. Native rules work on
//! `D`, the erasure rules move information from `D` to `H`, and the HOL
//! rules work on `H`.

mod search;
pub mod trace;
pub mod validate;

pub use search::{search, SearchConfig, SearchOutcome, Verdict};
pub use trace::{parse_trace, Rule, Trace};
pub use validate::{validate_trace, validate_trace_text, ValidationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    D,
    H,
}

impl Side {
    pub fn letter(self) -> &'static str {
        match self {
            Side::D => "d",
            Side::H => "h",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::D => 0,
            Side::H => 1,
        }
    }
}

/// Which rule families the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleMode {
    /// DHOL rules only.
    NativeOnly,
    /// Erase everything up front, then HOL rules only.
    ErasureOnly,
    /// Native first; if that fails, erasure from the root.
    Staged,
    /// Every rule, interleaved freely.
    Unstaged,
}

impl RuleMode {
    pub fn name(self) -> &'static str {
        match self {
            RuleMode::NativeOnly => "native-only",
            RuleMode::ErasureOnly => "erasure-only",
            RuleMode::Staged => "staged",
            RuleMode::Unstaged => "unstaged",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleMode> {
        [RuleMode::NativeOnly, RuleMode::ErasureOnly, RuleMode::Staged, RuleMode::Unstaged]
            .into_iter()
            .find(|m| m.name() == s)
    }

    pub(crate) fn native(self) -> bool {
        matches!(self, RuleMode::NativeOnly | RuleMode::Unstaged)
    }

    pub(crate) fn erasure(self) -> bool {
        matches!(self, RuleMode::ErasureOnly | RuleMode::Unstaged)
    }
}

/// Refutability stratum of a rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stratum {
    Native,
    Erasure,
    Hol,
}

pub fn stratum(rule: Rule, side: Side) -> Stratum {
    if rule.is_erasure() {
        Stratum::Erasure
    } else if side == Side::D {
        Stratum::Native
    } else {
        Stratum::Hol
    }
}
