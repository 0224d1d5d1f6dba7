//! Chow–Künneth motive bookkeeping: dimension vectors, hypersurface projectors
//! and blow-up ledgers.

mod accounting;
mod blowup;
mod ck;
mod cubic;
mod expr;

pub use accounting::{ck_curve, ck_surface, elliptic_times_curve, product_of_curves, ProductReport};
pub use blowup::{blowup_chain, projective_space, AddedPart, BlowupReport, Center};
pub use ck::{hypersurface_ck, CkElem, CkVerification, HypersurfaceCk};
pub use cubic::{cubic_rationality_ledger, CubicLedger, HostVerdict, SurfaceEntry, CUBIC_B4, CUBIC_RHO2};
pub use expr::{hypersurface_middle_betti, MotiveExpr, SurfaceTag};
