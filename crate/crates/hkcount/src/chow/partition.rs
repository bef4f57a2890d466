//! Integer partitions indexing the Schubert basis.

use std::fmt;

/// A weakly decreasing sequence of positive integers; trailing zeros are
/// stripped on construction, so the empty partition is `Partition(vec![])`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, dropping trailing zeros. Panics unless the parts
    /// are weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(i)`; `(0)` normalizes to empty.
    pub fn row(i: u32) -> Self {
        Partition::new(vec![i])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The part at `row` (0-based), zero beyond the last row.
    pub fn part(&self, row: usize) -> u32 {
        self.0.get(row).copied().unwrap_or(0)
    }

    /// Total number of boxes; the degree of the Schubert class.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Whether the partition fits in a `rows x cols` box.
    pub fn fits_in(&self, rows: u32, cols: u32) -> bool {
        self.0.len() as u32 <= rows && self.0.first().is_none_or(|&p| p <= cols)
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|r| self.part(r) >= other.part(r))
    }

    /// The complement inside a `rows x cols` box: row `r` maps to
    /// `cols - part(rows - 1 - r)`. Requires `fits_in(rows, cols)`.
    pub fn complement_in(&self, rows: u32, cols: u32) -> Partition {
        assert!(self.fits_in(rows, cols), "partition escapes the box");
        let parts = (0..rows as usize)
            .map(|r| cols - self.part(rows as usize - 1 - r))
            .collect();
        Partition::new(parts)
    }

    /// All partitions inside a `rows x cols` box, in a fixed deterministic
    /// order (sorted by weight, then lexicographically).
    pub fn all_in_box(rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = vec![];
        let mut stack = vec![Vec::new()];
        while let Some(current) = stack.pop() {
            if current.len() as u32 == rows {
                out.push(Partition::new(current));
                continue;
            }
            let max = current.last().copied().unwrap_or(cols);
            for next in 0..=max {
                let mut ext = current.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
        out.sort_by_key(|p: &Partition| (p.weight(), p.0.clone()));
        out.dedup();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
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

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_accessors() {
        let p = Partition::new(vec![3, 1, 0, 0]);
        assert_eq!(p.parts(), &[3, 1]);
        assert_eq!(p.weight(), 4);
        assert_eq!(p.part(0), 3);
        assert_eq!(p.part(5), 0);
        assert_eq!(Partition::row(0), Partition::empty());
    }

    #[test]
    fn box_membership_and_complement() {
        let p = Partition::new(vec![2, 1]);
        assert!(p.fits_in(2, 2));
        assert!(!p.fits_in(1, 3));
        assert_eq!(p.complement_in(2, 2), Partition::new(vec![1]));
        assert_eq!(
            Partition::empty().complement_in(4, 2),
            Partition::new(vec![2, 2, 2, 2])
        );
    }

    #[test]
    fn box_enumeration_counts() {
        // |partitions in k x (n-k)| = C(n, k)
        assert_eq!(Partition::all_in_box(2, 2).len(), 6);
        assert_eq!(Partition::all_in_box(4, 2).len(), 15);
        assert_eq!(Partition::all_in_box(2, 3).len(), 10);
        // graded dimensions of Gr(2,2) basis: 1,1,2,1,1
        let counts = Partition::all_in_box(2, 2)
            .iter()
            .fold(vec![0usize; 5], |mut acc, p| {
                acc[p.weight() as usize] += 1;
                acc
            });
        assert_eq!(counts, vec![1, 1, 2, 1, 1]);
    }
}
