//! Lattice model of a CM abelian variety `J` isogenous to `E^g`.
//!
//! `J` is described by a lattice `Λ ⊂ K^g`, `K = ℚ(√−d)`, containing `𝒪^g`
//! with finite index. Endomorphisms of `J ⊗ ℚ` are `g×g` matrices over `K`
//! ([`EndoQ`]); integral ones preserve `Λ`.

mod endo;
mod liverpool;
mod model;
mod sets;

pub use endo::{elementary, perm_endo, rosati, twisted_idempotent, EndoQ, PermEndoSpec};
pub use liverpool::{liverpool_check, liverpool_scan, LiverpoolOutcome};
pub use model::{AbelianModel, HypothesisCheck, Mode, ModelSpec, Order};
pub use sets::{invert_perm, transposition, validate_perm, CellSet, Subset};
