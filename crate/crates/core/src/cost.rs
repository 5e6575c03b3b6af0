//! Card and shuffle counts.

use std::fmt;

use serde::Serialize;

use crate::protocol::Protocol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Ours(Protocol),
    /// Equality via binary encoding of each input: `2⌈lg k⌉n` cards and `⌈lg k⌉n − 1` shuffles.
    BinaryBaseline,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Ours(p) => write!(f, "{p}"),
            Scheme::BinaryBaseline => write!(f, "baseline"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cost {
    pub cards: u64,
    pub shuffles: u64,
}

/// `⌈log2 k⌉` for `k >= 1`.
pub fn ceil_log2(k: u64) -> u64 {
    assert!(k >= 1);
    u64::from(u64::BITS - (k - 1).leading_zeros())
}

pub fn cost_model(scheme: Scheme, k: u64, n: u64) -> Cost {
    assert!(k >= 2 && n >= 1, "cost model needs k >= 2 and n >= 1");
    match scheme {
        Scheme::Ours(Protocol::Equality | Protocol::SetSize) => Cost {
            cards: k * n,
            shuffles: n,
        },
        Scheme::Ours(Protocol::Set) => Cost {
            cards: k * (n + 1),
            shuffles: n,
        },
        Scheme::BinaryBaseline => Cost {
            cards: 2 * ceil_log2(k) * n,
            shuffles: ceil_log2(k) * n - 1,
        },
    }
}

/// All four schemes at `(k, n)`.
pub fn cost_table(k: u64, n: u64) -> Vec<(Scheme, Cost)> {
    Protocol::ALL
        .into_iter()
        .map(Scheme::Ours)
        .chain([Scheme::BinaryBaseline])
        .map(|s| (s, cost_model(s, k, n)))
        .collect()
}
