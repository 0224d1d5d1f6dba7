use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of the index set `I = {0, …, g−1}` as a bitmask (`g ≤ 32`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(g: usize) -> Self {
        Subset(if g >= 32 { u32::MAX } else { (1u32 << g) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        Subset(idx.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self, g: usize) -> bool {
        self == Self::full(g)
    }

    pub fn complement(self, g: usize) -> Self {
        Subset(!self.0 & Self::full(g).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0..g}` in increasing bitmask order.
    pub fn all(g: usize) -> impl Iterator<Item = Subset> {
        (0..=Self::full(g).0).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A subset of the grid `I × I`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    g: usize,
    cells: Vec<bool>,
}

impl CellSet {
    pub fn empty(g: usize) -> Self {
        CellSet { g, cells: vec![false; g * g] }
    }

    pub fn full(g: usize) -> Self {
        CellSet { g, cells: vec![true; g * g] }
    }

    pub fn diagonal(g: usize) -> Self {
        let mut s = Self::empty(g);
        for i in 0..g {
            s.insert(i, i);
        }
        s
    }

    pub fn from_cells(g: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut s = Self::empty(g);
        for (i, j) in cells {
            s.insert(i, j);
        }
        s
    }

    pub fn from_flags(g: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != g * g {
            return Err(Error::Shape(format!("{} cells for a {g}x{g} grid", cells.len())));
        }
        Ok(CellSet { g, cells })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn flags(&self) -> &[bool] {
        &self.cells
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.g + j]
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.cells[i * self.g + j] = true;
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.cells[i * self.g + j] = v;
    }

    pub fn complement(&self) -> Self {
        CellSet { g: self.g, cells: self.cells.iter().map(|b| !b).collect() }
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let g = self.g;
        self.cells.iter().enumerate().filter(|(_, &b)| b).map(move |(k, _)| (k / g, k % g))
    }

    /// `{i : (i, i) ∈ self}`.
    pub fn diagonal_part(&self) -> Subset {
        Subset::from_indices((0..self.g).filter(|&i| self.contains(i, i)))
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Checks that `sigma` (one-line notation, 0-based) is a bijection of `{0..g}`.
pub fn validate_perm(sigma: &[usize], g: usize) -> Result<()> {
    let mut seen = vec![false; g];
    if sigma.len() != g {
        return Err(Error::InvalidInput(format!("permutation of length {} for g = {g}", sigma.len())));
    }
    for &s in sigma {
        if s >= g || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(())
}

pub fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// The transposition of `a` and `b` on `{0..g}`.
pub fn transposition(g: usize, a: usize, b: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..g).collect();
    s.swap(a, b);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets() {
        let k = Subset::from_indices([0, 2]);
        assert_eq!(k.to_string(), "{1,3}");
        assert_eq!(k.complement(4), Subset::from_indices([1, 3]));
        assert_eq!(Subset::all(3).count(), 8);
        assert!(Subset::full(3).is_full(3));
    }

    #[test]
    fn cells() {
        let u = CellSet::from_cells(3, [(0, 0), (1, 2), (2, 2)]);
        assert_eq!(u.diagonal_part(), Subset::from_indices([0, 2]));
        assert_eq!(u.complement().len(), 6);
        assert_eq!(u.to_string(), "{(1,1),(2,3),(3,3)}");
    }

    #[test]
    fn perms() {
        assert!(validate_perm(&[1, 0, 2], 3).is_ok());
        assert!(validate_perm(&[1, 1, 2], 3).is_err());
        assert!(validate_perm(&[0, 1], 3).is_err());
        assert_eq!(invert_perm(&[1, 2, 0]), vec![2, 0, 1]);
    }
}
