//! The Fermat sextic `C₆: x⁶ + y⁶ + z⁶ = 0` with ten morphisms onto the CM curve `E`.

use serde::Serialize;

use crate::cmlat::AbelianModel;
use crate::corr::GridProjectors;
use crate::error::Result;
use crate::motcalc::product_of_curves;

use super::curve::{form_rank, pullback, rep_membership, CurveMorphism, Differential, OmegaCoefficient, PlaneCurve, Rep};
use super::oracle::{degree, DegreeReport};

/// `E` has complex multiplication by `ℤ[ζ₃]`.
pub const CM_DISCRIMINANT: u64 = 3;

/// Degrees stated in the source for `f₁..f₁₀`.
pub const REFERENCE_DEGREES: [u64; 10] = [6, 6, 6, 6, 6, 6, 24, 24, 24, 4];

/// All of `Σ₃` in one-line notation, lexicographic.
pub const G1: [[usize; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

/// Coset representatives for `φ₂`: the third element is `(1,3,2)` so that the
/// three pulled-back forms span `V₃,₀,₀`.
pub const G2: [[usize; 3]; 3] = [[1, 2, 3], [2, 1, 3], [1, 3, 2]];

/// The affine chart `x⁶ + y⁶ + 1 = 0` with `ω = dx/y⁵`.
pub fn fermat_sextic() -> PlaneCurve {
    PlaneCurve::new("C6", "x", "y", "x^6 + y^6 + 1")
        .and_then(|c| c.with_omega_denominator("y^5"))
        .expect("fixed curve")
}

/// `E: v² = u³ − 1` with `τ = du/v`.
pub fn weierstrass_e() -> PlaneCurve {
    PlaneCurve::new("E", "u", "v", "v^2 - u^3 + 1")
        .and_then(|c| c.with_omega_denominator("v"))
        .expect("fixed curve")
}

/// `E` in the coordinates `u′³ + v′³ + 1 = 0`, with `τ = du′/v′²`.
pub fn fermat_cubic_e() -> PlaneCurve {
    PlaneCurve::new("E'", "u'", "v'", "u'^3 + v'^3 + 1")
        .and_then(|c| c.with_omega_denominator("v'^2"))
        .expect("fixed curve")
}

pub fn phi1() -> CurveMorphism {
    CurveMorphism::new("phi1", &fermat_sextic(), &weierstrass_e(), "-x^2", "y^3").expect("verified morphism")
}

pub fn phi2() -> CurveMorphism {
    CurveMorphism::new("phi2", &fermat_sextic(), &weierstrass_e(), "y^4/(cbrt4*x^2)", "(x^6 - 1)/(2*x^3)")
        .expect("verified morphism")
}

pub fn phi3() -> CurveMorphism {
    CurveMorphism::new("phi3", &fermat_sextic(), &fermat_cubic_e(), "x^2", "y^2").expect("verified morphism")
}

/// The invariant form `τ` on the target of `phi`.
pub fn tau(phi: &CurveMorphism) -> Differential {
    let k = if phi.target.name == "E'" { 2 } else { 1 };
    Differential::du_over_v_pow(&phi.target, k)
}

/// The automorphism permuting homogeneous coordinates: the new `k`-th
/// coordinate is the old coordinate `perm[k]` (1-based).
pub fn coordinate_permutation(perm: [usize; 3]) -> Result<CurveMorphism> {
    let coord = |k: usize| ["x", "y", "1"][k - 1];
    let (a, b, c) = (coord(perm[0]), coord(perm[1]), coord(perm[2]));
    let label = format!("sigma({},{},{})", perm[0], perm[1], perm[2]);
    let c6 = fermat_sextic();
    CurveMorphism::new(&label, &c6, &c6, &format!("({a})/({c})"), &format!("({b})/({c})"))
}

/// One `fᵢ = φ∘σ` of the instance.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismEntry {
    /// 1-based index `i` of `fᵢ`.
    pub index: usize,
    pub base: String,
    pub sigma: [usize; 3],
    pub form: String,
    pub rep: Rep,
    pub degree: usize,
    pub reference_degree: u64,
    #[serde(skip)]
    pub degree_report: DegreeReport,
    #[serde(skip)]
    pub pulled_back: OmegaCoefficient,
}

#[derive(Clone, Debug, Serialize)]
pub struct C6Report {
    pub g: usize,
    pub d: u64,
    pub exponents: Vec<u64>,
    pub reference_exponents: Vec<u64>,
    pub degree_mismatches: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    /// Ranks of the pulled-back families for `φ₁, φ₂, φ₃`.
    pub family_ranks: [usize; 3],
    pub dim_transcendental: u64,
}

pub struct C6Instance {
    pub model: AbelianModel,
    pub grids: GridProjectors,
    pub report: C6Report,
}

/// Builds the `g = 10` instance. Exponents are the computed degrees; the
/// reference values and any disagreement are kept in the report.
pub fn build_c6_instance() -> Result<C6Instance> {
    let families: [(CurveMorphism, &[[usize; 3]]); 3] = [(phi1(), &G1), (phi2(), &G2), (phi3(), &[[1, 2, 3]])];
    let mut morphisms = Vec::new();
    let mut family_ranks = [0; 3];
    for (fam, (phi, perms)) in families.iter().enumerate() {
        let tau = tau(phi);
        let mut forms = Vec::new();
        for &perm in perms.iter() {
            let f = phi.compose(&coordinate_permutation(perm)?)?;
            let form = pullback(&f, &tau)?;
            let report = degree(&f)?;
            let index = morphisms.len() + 1;
            morphisms.push(MorphismEntry {
                index,
                base: phi.label.clone(),
                sigma: perm,
                form: form.to_string(),
                rep: rep_membership(&form),
                degree: report.degree,
                reference_degree: REFERENCE_DEGREES[index - 1],
                degree_report: report,
                pulled_back: form.clone(),
            });
            forms.push(form);
        }
        family_ranks[fam] = form_rank(&forms);
    }
    let exponents: Vec<u64> = morphisms.iter().map(|m| m.degree as u64).collect();
    let degree_mismatches = morphisms
        .iter()
        .filter(|m| m.degree as u64 != m.reference_degree)
        .map(|m| format!("f{}: computed degree {} vs stated {}", m.index, m.degree, m.reference_degree))
        .collect();
    let model = AbelianModel::axiomatic(CM_DISCRIMINANT, exponents.clone())?;
    let grids = GridProjectors::build(&model);
    let report = C6Report {
        g: model.g(),
        d: CM_DISCRIMINANT,
        exponents,
        reference_exponents: REFERENCE_DEGREES.to_vec(),
        degree_mismatches,
        morphisms,
        family_ranks,
        dim_transcendental: product_of_curves(model.g() as u64, true).dim_m2_tr,
    };
    Ok(C6Instance { model, grids, report })
}
