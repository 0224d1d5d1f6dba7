//! Differentials, representations and morphism degrees on the Fermat sextic.

mod c6;
mod curve;
mod expr;
mod ff;
mod oracle;

pub use c6::{
    build_c6_instance, coordinate_permutation, fermat_cubic_e, fermat_sextic, phi1, phi2, phi3, tau, weierstrass_e,
    C6Instance, C6Report, MorphismEntry, CM_DISCRIMINANT, G1, G2, REFERENCE_DEGREES,
};
pub use curve::{form_rank, pullback, rep_membership, CurveMorphism, Differential, OmegaCoefficient, PlaneCurve, Rep};
pub use expr::{Evaluator, Expr, CONSTANTS};
pub use ff::{Coef, FfElem, FfEval, FunctionField};
pub use oracle::{degree, roots, DegreeReport, Gf, PrimeSample, MIN_PRIME, REQUIRED_PRIMES};
