use std::fmt;

use serde::{Deserialize, Serialize};

/// Membership of an element in the infinitesimals I(K), the finite elements
/// F(K) and the infinitely large elements L(K).
///
/// Invariants: `infinitesimal` implies `finite`, and exactly one of
/// `finite` / `infinite` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_zero: bool,
    pub infinitesimal: bool,
    pub finite: bool,
    pub infinite: bool,
}

impl Classification {
    pub const ZERO: Classification = Classification {
        is_zero: true,
        infinitesimal: true,
        finite: true,
        infinite: false,
    };

    /// Classification of a nonzero element from the sign of its "order of
    /// magnitude": positive means infinitesimal, zero means finite but
    /// appreciable, negative means infinitely large.
    pub fn from_magnitude(sign: std::cmp::Ordering) -> Classification {
        use std::cmp::Ordering::*;
        Classification {
            is_zero: false,
            infinitesimal: sign == Greater,
            finite: sign != Less,
            infinite: sign == Less,
        }
    }

    pub fn is_consistent(&self) -> bool {
        (!self.infinitesimal || self.finite)
            && (self.finite != self.infinite)
            && (!self.is_zero || self.infinitesimal)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "is_zero: {}, infinitesimal: {}, finite: {}, infinite: {}",
            self.is_zero, self.infinitesimal, self.finite, self.infinite
        )
    }
}
