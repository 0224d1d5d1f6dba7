//! Exact arithmetic: rationals, quadratic and general number fields,
//! dense matrices, univariate polynomials and integer lattices.

mod field;
mod lattice;
mod matrix;
mod nf;
mod poly;
mod quad;
mod rat;

pub use field::Field;
pub use lattice::{hnf_rows, ZLattice};
pub use matrix::Matrix;
pub use nf::{irreducibility, known_generator, nf_reduce, Generator, Irreducibility, NfElem, NumberField};
pub use poly::{RatFn, UPoly};
pub use quad::{is_squarefree, QuadInt};
pub use rat::{rat, rat_int, rat_to_string, Rat};
