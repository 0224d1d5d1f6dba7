//! Plane curves, morphisms between them and pulled-back differentials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, NfElem, NumberField, Rat};

use super::expr::Expr;
use super::ff::{FfElem, FfEval, FunctionField};

/// An affine plane curve `F(x, y) = 0`, reduced with respect to `y`.
///
/// The distinguished differential is `ω = dx/h`; `h` defaults to `∂F/∂y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    pub name: String,
    pub vars: [String; 2],
    pub equation: Expr,
    pub omega_den: Option<Expr>,
}

impl PlaneCurve {
    pub fn new(name: &str, x: &str, y: &str, equation: &str) -> Result<Self> {
        let equation = Expr::parse(equation)?;
        let vars = [x.to_string(), y.to_string()];
        if let Some(bad) = equation.variables().iter().find(|v| !vars.contains(v)) {
            return Err(Error::InvalidInput(format!("curve {name}: unknown variable {bad}")));
        }
        let curve = PlaneCurve { name: name.into(), vars, equation, omega_den: None };
        curve.function_field(&curve.number_field(&BTreeSet::new())?)?;
        Ok(curve)
    }

    pub fn with_omega_denominator(mut self, h: &str) -> Result<Self> {
        let h = Expr::parse(h)?;
        if let Some(bad) = h.variables().iter().find(|v| !self.vars.contains(v)) {
            return Err(Error::InvalidInput(format!("curve {}: unknown variable {bad}", self.name)));
        }
        self.omega_den = Some(h);
        Ok(self)
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = self.equation.constants();
        if let Some(h) = &self.omega_den {
            out.extend(h.constants());
        }
        out
    }

    fn number_field(&self, extra: &BTreeSet<String>) -> Result<Arc<NumberField>> {
        let mut names = self.constants();
        names.extend(extra.iter().cloned());
        field_of(&names)
    }

    fn plain_equation(&self, nf: &Arc<NumberField>) -> Result<FfElem> {
        let ring = FunctionField::polynomial_ring(nf);
        let ev = FfEval {
            ff: &ring,
            vars: vec![(self.vars[0].clone(), FfElem::x(&ring)), (self.vars[1].clone(), FfElem::y(&ring))],
        };
        self.equation.eval(&ev)
    }

    /// `K(x)[y]/(F)` over `nf`, which must contain the curve's constants.
    pub fn function_field(&self, nf: &Arc<NumberField>) -> Result<Arc<FunctionField>> {
        FunctionField::of_equation(&self.plain_equation(nf)?)
    }

    fn bind<'a>(&self, ff: &'a Arc<FunctionField>, x: FfElem, y: FfElem) -> FfEval<'a> {
        FfEval { ff, vars: vec![(self.vars[0].clone(), x), (self.vars[1].clone(), y)] }
    }

    /// `h` evaluated at `(x, y)` in `ff`.
    fn omega_denominator(&self, ff: &Arc<FunctionField>, x: &FfElem, y: &FfElem) -> Result<FfElem> {
        match &self.omega_den {
            Some(h) => h.eval(&self.bind(ff, x.clone(), y.clone())),
            None => {
                let plain = self.plain_equation(ff.nf())?;
                let fy = plain.poly().derivative();
                let own = FfElem::from_poly(&FunctionField::polynomial_ring(ff.nf()), fy);
                eval_poly_at(&own, ff, x, y)
            }
        }
    }

    fn same_curve(&self, o: &PlaneCurve) -> bool {
        self.equation == o.equation && self.omega_den == o.omega_den
    }
}

/// Evaluates a polynomial of the plain ring `K(x)[y]` at `(x, y)` in `ff`.
fn eval_poly_at(p: &FfElem, ff: &Arc<FunctionField>, x: &FfElem, y: &FfElem) -> Result<FfElem> {
    let mut acc = FfElem::from_rat(ff, Rat::from_integer(0.into()));
    for c in p.coeffs().iter().rev() {
        let num = eval_upoly(c.num(), ff, x);
        let den = eval_upoly(c.den(), ff, x);
        acc = &(&acc * y) + &(&num * &den.inv()?);
    }
    Ok(acc)
}

fn eval_upoly(p: &crate::exact::UPoly<NfElem>, ff: &Arc<FunctionField>, x: &FfElem) -> FfElem {
    let mut acc = FfElem::from_rat(ff, Rat::from_integer(0.into()));
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &FfElem::from_nf(ff, c.embed(ff.nf()).expect("coefficient field embeds"));
    }
    acc
}

pub(crate) fn field_of(names: &BTreeSet<String>) -> Result<Arc<NumberField>> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    NumberField::with_constants(&refs)
}

/// A rational map `(x, y) ↦ (u(x, y), v(x, y))` between plane curves.
#[derive(Clone, Debug)]
pub struct CurveMorphism {
    pub label: String,
    pub source: PlaneCurve,
    pub target: PlaneCurve,
    pub u: Expr,
    pub v: Expr,
}

impl CurveMorphism {
    /// Parses the components and checks that the target equation vanishes on the image.
    pub fn new(label: &str, source: &PlaneCurve, target: &PlaneCurve, u: &str, v: &str) -> Result<Self> {
        Self::from_exprs(label, source, target, Expr::parse(u)?, Expr::parse(v)?)
    }

    pub fn from_exprs(label: &str, source: &PlaneCurve, target: &PlaneCurve, u: Expr, v: Expr) -> Result<Self> {
        for e in [&u, &v] {
            if let Some(bad) = e.variables().iter().find(|x| !source.vars.contains(x)) {
                return Err(Error::InvalidInput(format!("{label}: unknown variable {bad}")));
            }
        }
        let phi = CurveMorphism { label: label.into(), source: source.clone(), target: target.clone(), u, v };
        let nf = phi.number_field(&BTreeSet::new())?;
        let ff = phi.source.function_field(&nf)?;
        let (a, b) = phi.components(&ff)?;
        let image = phi.target.equation.eval(&FfEval {
            ff: &ff,
            vars: vec![(phi.target.vars[0].clone(), a), (phi.target.vars[1].clone(), b)],
        })?;
        if !image.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{label}: {} does not vanish on the image of {}",
                phi.target.equation, phi.source.name
            )));
        }
        Ok(phi)
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = self.source.constants();
        out.extend(self.target.constants());
        out.extend(self.u.constants());
        out.extend(self.v.constants());
        out
    }

    fn number_field(&self, extra: &BTreeSet<String>) -> Result<Arc<NumberField>> {
        let mut names = self.constants();
        names.extend(extra.iter().cloned());
        field_of(&names)
    }

    /// `(u, v)` as elements of the source function field `ff`.
    pub fn components(&self, ff: &Arc<FunctionField>) -> Result<(FfElem, FfElem)> {
        let ev = self.source.bind(ff, FfElem::x(ff), FfElem::y(ff));
        Ok((self.u.eval(&ev)?, self.v.eval(&ev)?))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CurveMorphism) -> Result<CurveMorphism> {
        if !inner.target.same_curve(&self.source) {
            return Err(Error::InvalidInput(format!(
                "cannot compose {} after {}: curves differ",
                self.label, inner.label
            )));
        }
        let map: HashMap<String, Expr> = [
            (self.source.vars[0].clone(), inner.u.clone()),
            (self.source.vars[1].clone(), inner.v.clone()),
        ]
        .into_iter()
        .collect();
        CurveMorphism::from_exprs(
            &format!("{}∘{}", self.label, inner.label),
            &inner.source,
            &self.target,
            self.u.substitute(&map),
            self.v.substitute(&map),
        )
    }
}

/// A differential on a target curve.
#[derive(Clone, Debug)]
pub enum Differential {
    /// `P du + Q dv` in the target variables.
    Exact { p: Expr, q: Expr },
    /// `f·ω` for the target's distinguished `ω`.
    Omega(OmegaCoefficient),
}

impl Differential {
    pub fn parse(p: &str, q: &str) -> Result<Self> {
        Ok(Differential::Exact { p: Expr::parse(p)?, q: Expr::parse(q)? })
    }

    /// `du / v^k` on `curve`.
    pub fn du_over_v_pow(curve: &PlaneCurve, k: i64) -> Self {
        Differential::Exact { p: Expr::Pow(Box::new(Expr::var(&curve.vars[1])), -k), q: Expr::int(0) }
    }

    fn constants(&self) -> BTreeSet<String> {
        match self {
            Differential::Exact { p, q } => p.constants().union(&q.constants()).cloned().collect(),
            Differential::Omega(f) => f.nf.generators().iter().map(|g| g.name.clone()).collect(),
        }
    }
}

/// The pullback `φ^*(form)` written as `f·ω` on the source curve.
pub fn pullback(phi: &CurveMorphism, form: &Differential) -> Result<OmegaCoefficient> {
    let nf = phi.number_field(&form.constants())?;
    let ff = phi.source.function_field(&nf)?;
    let (u, v) = phi.components(&ff)?;
    let du = u.derivative()?;
    let pulled = match form {
        Differential::Exact { p, q } => {
            let ev = FfEval {
                ff: &ff,
                vars: vec![(phi.target.vars[0].clone(), u.clone()), (phi.target.vars[1].clone(), v.clone())],
            };
            let p = p.eval(&ev)?;
            let q = q.eval(&ev)?;
            let mut acc = &p * &du;
            if !q.is_zero() {
                acc = &acc + &(&q * &v.derivative()?);
            }
            acc
        }
        Differential::Omega(f) => {
            let h = phi.target.omega_denominator(&ff, &u, &v)?;
            &(&f.eval_at(&ff, &u, &v)? * &du) * &h.inv()?
        }
    };
    let h = phi.source.omega_denominator(&ff, &FfElem::x(&ff), &FfElem::y(&ff))?;
    OmegaCoefficient::from_ff(&(&pulled * &h))
}

/// The polynomial `f` of a form `f·ω`, reduced modulo the curve (degree in `y`
/// below the relation's).
#[derive(Clone, Debug)]
pub struct OmegaCoefficient {
    nf: Arc<NumberField>,
    /// `(i, k)` ↦ coefficient of `x^i y^k`.
    terms: BTreeMap<(u32, u32), NfElem>,
}

impl OmegaCoefficient {
    /// Fails with `Reduction` when the element is not a polynomial in `x, y`.
    pub fn from_ff(e: &FfElem) -> Result<Self> {
        let nf = e.field().nf().clone();
        let mut terms = BTreeMap::new();
        for (k, c) in e.coeffs().iter().enumerate() {
            if !c.is_poly() {
                return Err(Error::Reduction(format!("pole along {} = 0 survives reduction", c.den().degree().unwrap_or(0))));
            }
            for (i, a) in c.num().coeffs().iter().enumerate() {
                if !a.is_nil() {
                    terms.insert((i as u32, k as u32), a.clone());
                }
            }
        }
        Ok(OmegaCoefficient { nf, terms })
    }

    /// Builds `Σ c·x^i y^k` from `((i, k), c)` pairs.
    pub fn from_terms(nf: &Arc<NumberField>, terms: impl IntoIterator<Item = ((u32, u32), NfElem)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            let c = c.embed(nf)?;
            if !c.is_nil() {
                out.insert(m, c);
            }
        }
        Ok(OmegaCoefficient { nf: nf.clone(), terms: out })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.nf
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), NfElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, k)| i + k).max()
    }

    /// `f(x, y)` with `x, y` replaced by function-field elements.
    pub fn eval_at(&self, ff: &Arc<FunctionField>, x: &FfElem, y: &FfElem) -> Result<FfElem> {
        let mut acc = FfElem::from_rat(ff, Rat::from_integer(0.into()));
        for (&(i, k), c) in &self.terms {
            let m = &x.pow(i as i64)? * &y.pow(k as i64)?;
            acc = &acc + &(&m * &FfElem::from_nf(ff, c.embed(ff.nf())?));
        }
        Ok(acc)
    }

    /// Coefficients of the degree-`deg` homogenization, keyed by `(a, b, c)`
    /// for `x^a y^b z^c`; `None` if some term has higher degree.
    pub fn homogenized(&self, deg: u32) -> Option<BTreeMap<[u32; 3], NfElem>> {
        self.terms
            .iter()
            .map(|(&(i, k), c)| (i + k <= deg).then(|| ([i, k, deg - i - k], c.clone())))
            .collect()
    }

    fn embedded(&self, nf: &Arc<NumberField>) -> BTreeMap<(u32, u32), NfElem> {
        self.terms.iter().map(|(m, c)| (*m, c.embed(nf).expect("subfield embeds"))).collect()
    }
}

fn common_field(forms: &[&OmegaCoefficient]) -> Arc<NumberField> {
    let names = forms.iter().flat_map(|f| f.nf.generators().iter().map(|g| g.name.clone())).collect();
    field_of(&names).expect("known constants")
}

impl PartialEq for OmegaCoefficient {
    fn eq(&self, o: &Self) -> bool {
        let nf = common_field(&[self, o]);
        self.embedded(&nf) == o.embedded(&nf)
    }
}

impl fmt::Display for OmegaCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|((i, k), _)| (std::cmp::Reverse(i + k), std::cmp::Reverse(*i)));
        let mut out = String::new();
        for ((i, k), c) in order {
            let mono: Vec<String> = [("x", *i), ("y", *k)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let single = c.terms().len() == 1;
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if single {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(&format!(" - {rest}"));
            } else {
                out.push_str(&format!(" + {term}"));
            }
        }
        write!(f, "{out}")
    }
}

/// The irreducible summands of `H⁰(Ω)` of the Fermat sextic under `Σ₃`,
/// identified by their degree-3 monomial spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rep {
    V111,
    V210,
    V300,
    #[serde(rename = "NONE")]
    None,
}

impl Rep {
    fn span(self) -> &'static [[u32; 3]] {
        match self {
            Rep::V111 => &[[1, 1, 1]],
            Rep::V300 => &[[3, 0, 0], [0, 3, 0], [0, 0, 3]],
            Rep::V210 => &[[2, 1, 0], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [0, 1, 2]],
            Rep::None => &[],
        }
    }

    /// Dimension of the span.
    pub fn dim(self) -> usize {
        self.span().len()
    }
}

const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [0, 3, 0],
    [0, 0, 3],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
    [1, 0, 2],
    [0, 2, 1],
    [0, 1, 2],
    [1, 1, 1],
];

fn cubic_vector(f: &OmegaCoefficient, nf: &Arc<NumberField>) -> Option<Vec<NfElem>> {
    let h = f.homogenized(3)?;
    let zero = NfElem::from_rat(nf, Rat::from_integer(0.into()));
    Some(
        CUBIC_MONOMIALS
            .iter()
            .map(|m| h.get(m).map(|c| c.embed(nf).expect("subfield embeds")).unwrap_or_else(|| zero.clone()))
            .collect(),
    )
}

/// Which monomial span contains `f` after homogenizing to degree 3.
pub fn rep_membership(f: &OmegaCoefficient) -> Rep {
    if f.is_zero() {
        return Rep::None;
    }
    let nf = f.nf.clone();
    let Some(vec) = cubic_vector(f, &nf) else {
        return Rep::None;
    };
    let one = NfElem::from_rat(&nf, Rat::from_integer(1.into()));
    for rep in [Rep::V111, Rep::V210, Rep::V300] {
        let mut rows: Vec<Vec<NfElem>> = rep
            .span()
            .iter()
            .map(|m| CUBIC_MONOMIALS.iter().map(|c| if c == m { one.clone() } else { one.zero_like() }).collect())
            .collect();
        let base = Matrix::from_rows(rows.clone()).expect("rectangular").rank();
        rows.push(vec.clone());
        if Matrix::from_rows(rows).expect("rectangular").rank() == base {
            return rep;
        }
    }
    Rep::None
}

/// Rank of a family of forms over the common number field.
pub fn form_rank(forms: &[OmegaCoefficient]) -> usize {
    if forms.is_empty() {
        return 0;
    }
    let refs: Vec<&OmegaCoefficient> = forms.iter().collect();
    let nf = common_field(&refs);
    let monos: BTreeSet<(u32, u32)> = forms.iter().flat_map(|f| f.terms.keys().copied()).collect();
    if monos.is_empty() {
        return 0;
    }
    let zero = NfElem::from_rat(&nf, Rat::from_integer(0.into()));
    let rows = forms
        .iter()
        .map(|f| {
            let e = f.embedded(&nf);
            monos.iter().map(|m| e.get(m).cloned().unwrap_or_else(|| zero.clone())).collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("rectangular").rank()
}
