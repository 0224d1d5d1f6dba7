use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cmlat::CellSet;
use crate::error::{Error, Result};

/// Number of `B^{s,t}` summands: `(s,t) ∈ {0,1,2}² ∖ {(1,1)}`.
pub const B_SLOTS: usize = 8;

/// A putative splitting `Δ = Λ + Ξ` in grid shape.
///
/// Each set holds the cells on the Λ side; the Ξ side is the complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    /// `𝔄¹` grid.
    pub u: CellSet,
    /// `𝔄²` grid.
    pub v: CellSet,
    /// `Θ` grid.
    pub w: CellSet,
    /// B-type summands, in row-major order of `(s,t)` skipping `(1,1)`.
    pub l: [bool; B_SLOTS],
}

impl Candidate {
    pub fn new(u: CellSet, v: CellSet, w: CellSet) -> Self {
        Candidate { u, v, w, l: [false; B_SLOTS] }
    }

    /// Every cell on the Λ side.
    pub fn full_lambda(g: usize) -> Self {
        Candidate { u: CellSet::full(g), v: CellSet::full(g), w: CellSet::full(g), l: [true; B_SLOTS] }
    }

    pub fn g(&self) -> usize {
        self.w.g()
    }

    pub fn validate(&self, g: usize) -> Result<()> {
        if self.u.g() != g || self.v.g() != g || self.w.g() != g {
            return Err(Error::Candidate(format!(
                "grids of sizes {}, {}, {} for g = {g}",
                self.u.g(),
                self.v.g(),
                self.w.g()
            )));
        }
        Ok(())
    }

    /// Both sides of the Θ grid are nonempty.
    pub fn is_nontrivial(&self) -> bool {
        !self.w.is_empty() && !self.w.is_full()
    }

    /// Exchange Λ and Ξ.
    pub fn swap(&self) -> Self {
        let mut l = self.l;
        l.iter_mut().for_each(|b| *b = !*b);
        Candidate { u: self.u.complement(), v: self.v.complement(), w: self.w.complement(), l }
    }

    /// Packs the three bits of a cell: `u | v << 1 | w << 2`.
    pub fn cell_code(&self, i: usize, j: usize) -> u8 {
        self.u.contains(i, j) as u8 | (self.v.contains(i, j) as u8) << 1 | (self.w.contains(i, j) as u8) << 2
    }

    pub fn set_cell_code(&mut self, i: usize, j: usize, code: u8) {
        self.u.set(i, j, code & 1 == 1);
        self.v.set(i, j, code & 2 == 2);
        self.w.set(i, j, code & 4 == 4);
    }
}

fn cells_json(s: &CellSet) -> Vec<[usize; 2]> {
    s.iter().map(|(i, j)| [i + 1, j + 1]).collect()
}

impl Serialize for Candidate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Candidate", 5)?;
        st.serialize_field("g", &self.g())?;
        st.serialize_field("u_lambda", &cells_json(&self.u))?;
        st.serialize_field("v_lambda", &cells_json(&self.v))?;
        st.serialize_field("w_lambda", &cells_json(&self.w))?;
        st.serialize_field("l_lambda", &self.l)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_is_involution() {
        let mut c = Candidate::new(CellSet::diagonal(3), CellSet::empty(3), CellSet::diagonal(3));
        c.l[2] = true;
        assert_eq!(c.swap().swap(), c);
        assert!(c.is_nontrivial());
        assert!(!Candidate::full_lambda(3).is_nontrivial());
        assert!(!Candidate::full_lambda(3).swap().is_nontrivial());
    }

    #[test]
    fn cell_codes() {
        let mut c = Candidate::new(CellSet::empty(2), CellSet::empty(2), CellSet::empty(2));
        c.set_cell_code(0, 1, 5);
        assert!(c.u.contains(0, 1) && !c.v.contains(0, 1) && c.w.contains(0, 1));
        assert_eq!(c.cell_code(0, 1), 5);
        assert!(c.validate(3).is_err());
    }
}
