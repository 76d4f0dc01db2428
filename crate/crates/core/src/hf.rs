//! Hereditarily finite sets in canonical form.
//!
//! Every [`HfSet`] stores its elements deduplicated and sorted by a fixed total
//! order: first by rank, then lexicographically by element list. Two values are
//! therefore identical exactly when they are equal as sets, and printed literals
//! are byte-stable.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest rank bound accepted by [`v_universe`]; `|V_5| = 65536`.
pub const MAX_UNIVERSE_RANK: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfError {
    #[error("universe V_{0} exceeds the size guard (k <= {MAX_UNIVERSE_RANK})")]
    UniverseTooLarge(usize),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    rank: usize,
    elems: Vec<HfSet>,
}

/// A canonical hereditarily finite set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HfSet(Arc<Node>);

impl HfSet {
    pub fn empty() -> Self {
        HfSet(Arc::new(Node { rank: 0, elems: Vec::new() }))
    }

    /// Builds the canonical set with the given elements (duplicates allowed).
    pub fn canonical(elems: impl IntoIterator<Item = HfSet>) -> Self {
        let mut elems: Vec<HfSet> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        let rank = elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0);
        HfSet(Arc::new(Node { rank, elems }))
    }

    pub fn singleton(x: HfSet) -> Self {
        Self::canonical([x])
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.elems.binary_search(x).is_ok()
    }

    /// Position of `x` in the canonical element order.
    pub fn position(&self, x: &HfSet) -> Option<usize> {
        self.0.elems.binary_search(x).ok()
    }

    /// Zermelo numeral: `0 = {}`, `n + 1 = {n}`.
    pub fn numeral(n: usize) -> Self {
        let mut x = Self::empty();
        for _ in 0..n {
            x = Self::singleton(x);
        }
        x
    }

    /// Returns `n` if this set is the Zermelo numeral `n`.
    pub fn as_numeral(&self) -> Option<usize> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur.elements() {
                [] => return Some(n),
                [inner] => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.elems.cmp(&other.0.elems))
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for HfSet {
    fn default() -> Self {
        Self::empty()
    }
}

/// Numerals print as decimals, everything else as a brace literal.
impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        f.write_str("{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn canonical(elems: impl IntoIterator<Item = HfSet>) -> HfSet {
    HfSet::canonical(elems)
}

pub fn rank(x: &HfSet) -> usize {
    x.rank()
}

pub fn zermelo_numeral(n: usize) -> HfSet {
    HfSet::numeral(n)
}

/// All sets of rank `< k`, in canonical order.
pub fn v_universe(k: usize) -> Result<Vec<HfSet>, HfError> {
    if k > MAX_UNIVERSE_RANK {
        return Err(HfError::UniverseTooLarge(k));
    }
    let mut level: Vec<HfSet> = Vec::new();
    for _ in 0..k {
        level = powerset(&level);
    }
    level.sort();
    Ok(level)
}

fn powerset(base: &[HfSet]) -> Vec<HfSet> {
    let n = base.len();
    (0u64..(1u64 << n))
        .map(|mask| {
            HfSet::canonical(
                base.iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, e)| e.clone()),
            )
        })
        .collect()
}
