//! Exact correspondence calculus for self-products of curves whose Jacobian
//! is isogenous to a power of a CM elliptic curve.
//!
//! The crate is layered bottom-up:
//! - [`exact`]: rationals, imaginary quadratic and general number fields,
//!   matrices, polynomials and integer lattices.
//! - [`cmlat`]: the lattice model of `J ~ E^g` with integrality, exponents,
//!   permutation endomorphisms and the Rosati involution.
//! - [`corr`]: codimension-2 correspondences on `(C×C)²` modulo balanced
//!   classes, projector grids and convolution.
//! - [`decomp`]: the indecomposability decision procedure.
//! - [`motcalc`]: Chow–Künneth dimension accounting.
//! - [`fermat`]: differential pullbacks, degrees and the Fermat sextic model.

pub mod cmlat;
pub mod corr;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod fermat;
pub mod json;
pub mod motcalc;

pub use error::{Error, Result};
