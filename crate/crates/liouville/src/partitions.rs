//! Integer partitions (Young diagrams) indexing descendant bases.
//!
//! All level-graded matrices in the crate are laid out in the canonical
//! order produced by [`enumerate`]: lexicographically decreasing on parts.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A partition with non-increasing positive parts. The empty diagram is the
/// unique element of size 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YoungDiagram(Vec<u32>);

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram(Vec::new())
    }

    /// Builds a diagram from parts, rejecting increasing or zero parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(PartitionError::NotSorted(parts.clone()));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::ZeroPart);
        }
        Ok(YoungDiagram(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Smallest (last) part, if any.
    pub fn last_part(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Returns `(ν_1,…,ν_k,n)`. Requires `n ≤ ν_k` so the result stays
    /// non-increasing.
    pub fn append(&self, n: u32) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::ZeroPart);
        }
        if let Some(last) = self.last_part() {
            if n > last {
                return Err(PartitionError::AppendTooLarge { part: n, last });
            }
        }
        let mut parts = self.0.clone();
        parts.push(n);
        Ok(YoungDiagram(parts))
    }

    /// Drops the last (smallest) part.
    pub fn drop_last(&self) -> Self {
        let mut parts = self.0.clone();
        parts.pop();
        YoungDiagram(parts)
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be non-increasing: {0:?}")]
    NotSorted(Vec<u32>),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("appending {part} after last part {last} breaks ordering")]
    AppendTooLarge { part: u32, last: u32 },
}

/// All partitions of `n` in lexicographically decreasing order.
///
/// `enumerate(0)` is `[∅]`; `enumerate(2)` is `[(2), (1,1)]`.
pub fn enumerate(n: u32) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    rec(n, n, &mut stack, &mut out);
    out
}

fn rec(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
    if remaining == 0 {
        out.push(YoungDiagram(stack.clone()));
        return;
    }
    let mut part = remaining.min(max_part);
    while part >= 1 {
        stack.push(part);
        rec(remaining - part, part, stack, out);
        stack.pop();
        part -= 1;
    }
}

/// Number of partitions of each `0..=n` by the pentagonal-number recurrence.
/// Independent of [`enumerate`]; used to cross-check counts.
pub fn partition_counts(n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[i - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                acc += sign * p[i - g2] as i128;
            }
            k += 1;
        }
        p[i] = acc as u64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn enumerate_base_cases() {
        assert_eq!(enumerate(0), vec![YoungDiagram::empty()]);
        assert_eq!(
            enumerate(2),
            vec![
                YoungDiagram::new(vec![2]).unwrap(),
                YoungDiagram::new(vec![1, 1]).unwrap()
            ]
        );
        assert_eq!(enumerate(5).len(), 7);
    }

    #[test]
    fn enumerate_is_lex_decreasing() {
        let list = enumerate(6);
        for w in list.windows(2) {
            assert!(w[0].parts() > w[1].parts(), "{} !> {}", w[0], w[1]);
        }
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let p = partition_counts(12);
        for n in 0..=12u32 {
            assert_eq!(enumerate(n).len() as u64, p[n as usize], "p({n})");
        }
    }

    #[test]
    fn append_rules() {
        let empty = YoungDiagram::empty();
        assert_eq!(empty.append(3).unwrap().parts(), &[3]);
        let d = YoungDiagram::new(vec![4, 2]).unwrap();
        assert_eq!(d.append(2).unwrap().parts(), &[4, 2, 2]);
        assert!(d.append(3).is_err());
    }

    proptest! {
        #[test]
        fn no_duplicates_and_sizes_match(n in 0u32..=14) {
            let list = enumerate(n);
            let set: BTreeSet<_> = list.iter().cloned().collect();
            prop_assert_eq!(set.len(), list.len());
            for d in &list {
                prop_assert_eq!(d.size(), n);
            }
        }
    }
}
