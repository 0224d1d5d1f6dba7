//! Codimension-2 correspondences on `(C×C)²` modulo balanced classes.
//!
//! A class is stored as a tensor part in `End_ℚ(J) ⊗ End_ℚ(J)` plus a
//! formal combination of the algebraic grid classes `𝔄¹ᵢⱼ`, `𝔄²ᵢⱼ`.
//! The grid classes vanish modulo balanced correspondences but carry
//! nonzero convolution values, which is what the decision procedure reads.

mod corr2;
mod grid;

pub use corr2::{conv, conv_rosati, AtomKind, Corr2, CorrContext};
pub use grid::{conv_delta_of_candidate, GridProjectors};
