mod common;

use std::sync::Arc;

use motivix::cmlat::{perm_endo, rosati, transposition, AbelianModel, CellSet, EndoQ, PermEndoSpec};
use motivix::corr::{conv, conv_delta_of_candidate, AtomKind, Corr2, CorrContext, GridProjectors};
use motivix::decomp::Candidate;
use motivix::exact::{rat, QuadInt};
use motivix::Error;
use proptest::prelude::*;

use common::{diagonal_glue_model, q};

fn model() -> AbelianModel {
    AbelianModel::axiomatic(3, vec![4, 6, 9]).unwrap()
}

fn endo(d: u64, g: usize, s: &[(i64, i64, i64)]) -> EndoQ {
    EndoQ::from_rows((0..g).map(|i| (0..g).map(|j| { let (a, b, c) = s[g * i + j]; q(a, b, c, d) }).collect()).collect())
        .unwrap()
}

fn scalar(d: u64, n: i64, den: i64) -> QuadInt {
    QuadInt::from_rat(rat(n, den), d)
}

#[test]
fn atomic_tensors_are_orthogonal() {
    let m = model();
    let ctx = CorrContext::from_model(&m);
    let e = |i: usize| m.idempotent(motivix::cmlat::Subset::singleton(i));
    let t = |i: usize, j: usize| Corr2::tensor(&ctx, &e(i), &e(j), &rat(1, 1)).unwrap();
    for (i, j, k, l) in quadruples(3) {
        let prod = t(i, j).compose(&t(k, l)).unwrap();
        let want = if (i, j) == (k, l) { t(i, j) } else { Corr2::zero(&ctx) };
        assert_eq!(prod, want);
    }
}

fn quadruples(g: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                for l in 0..g {
                    out.push((i, j, k, l));
                }
            }
        }
    }
    out
}

#[test]
fn grid_is_a_complete_orthogonal_family() {
    for m in [model(), diagonal_glue_model(1, 2, 5), AbelianModel::lattice(2, 1, vec![]).unwrap()] {
        let grids = GridProjectors::build(&m);
        let g = m.g();
        let ctx = grids.context().clone();
        let one = Corr2::identity(&ctx);
        let sum = grids.theta_sum(&CellSet::full(g));
        assert!(sum.eq_mod_balanced(&one));
        assert!(sum.compose(&sum).unwrap().eq_mod_balanced(&sum));
        for (i, j, k, l) in quadruples(g) {
            let prod = grids.theta(i, j).bullet(grids.theta(k, l)).unwrap();
            if (i, j) == (k, l) {
                assert!(prod.eq_mod_balanced(grids.theta(i, j)));
            } else {
                assert!(prod.eq_mod_balanced(&Corr2::zero(&ctx)));
            }
        }
        for i in 0..g {
            for j in 0..g {
                assert!(grids.theta(i, j).transpose().eq_mod_balanced(grids.theta(i, j)));
                assert!(grids.a1(i, j).mod_balanced().is_zero());
            }
        }
    }
}

#[test]
fn unit_laws() {
    let m = model();
    let ctx = CorrContext::from_model(&m);
    let x = Corr2::tensor(&ctx, &endo(3, 3, &[(1, 2, 3); 9]), &m.gamma_t_gamma(0, 2), &rat(2, 1)).unwrap();
    let one = Corr2::identity(&ctx);
    assert_eq!(one.compose(&x).unwrap(), x);
    assert_eq!(x.compose(&one).unwrap(), x);
    assert_eq!(one.bullet(&x).unwrap(), x);
}

#[test]
fn identity_convolution() {
    let m = model();
    let ctx = CorrContext::from_model(&m);
    assert_eq!(conv(&m.identity(), &Corr2::identity(&ctx), &m).unwrap(), m.identity());
}

#[test]
fn convolution_on_tensors() {
    let m = model();
    let ctx = CorrContext::from_model(&m);
    let a = endo(3, 3, &[(1, 0, 1), (0, 1, 2), (2, 1, 1), (3, 0, 1), (1, 1, 3), (0, 0, 1), (1, 0, 2), (4, 1, 1), (0, 2, 1)]);
    let b = endo(3, 3, &[(0, 1, 1), (1, 1, 1), (0, 0, 1), (2, 0, 3), (1, 0, 1), (0, 3, 2), (1, 1, 1), (2, 2, 1), (5, 0, 1)]);
    let sigma = perm_endo(&m, &PermEndoSpec::full(vec![1, 2, 0])).unwrap();
    let x = Corr2::tensor(&ctx, &a, &b, &rat(3, 2)).unwrap();
    let want = (&(&b * &rosati(&sigma, &m)) * &a).scale(&scalar(3, 3, 2));
    assert_eq!(conv(&sigma, &x, &m).unwrap(), want);
}

#[test]
fn convolution_of_theta_regions() {
    let m = diagonal_glue_model(1, 3, 5);
    let grids = GridProjectors::build(&m);
    let cells: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    for sigma in [transposition(3, 0, 1), transposition(3, 1, 2), transposition(3, 0, 2)] {
        let sj = perm_endo(&m, &PermEndoSpec::full(sigma.clone())).unwrap();
        for mask in (0u32..512).step_by(37) {
            let region = CellSet::from_cells(3, cells.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, c)| *c));
            let su = perm_endo(&m, &PermEndoSpec { sigma: sigma.clone(), region: region.clone() }).unwrap();
            let theta = conv(&sj, &grids.theta_sum(&region), &m).unwrap();
            assert_eq!(theta, rosati(&su, &m).scale(&scalar(1, 2, 1)));
            let a = conv(&sj, &grids.a1_sum(&region), &m).unwrap();
            assert_eq!(a, rosati(&su, &m).scale(&scalar(1, -1, 2)));
        }
    }
}

#[test]
fn conv_delta_examples() {
    let m = diagonal_glue_model(1, 3, 5);
    let g = 3;
    let full = Candidate::full_lambda(g);
    assert_eq!(conv_delta_of_candidate(&full, &m).unwrap(), m.identity());
    let empty = Candidate::new(CellSet::empty(g), CellSet::empty(g), CellSet::empty(g));
    assert!(conv_delta_of_candidate(&empty, &m).unwrap().is_zero());
    let w = Candidate::new(CellSet::empty(g), CellSet::empty(g), CellSet::diagonal(g));
    assert_eq!(conv_delta_of_candidate(&w, &m).unwrap(), m.identity().scale(&scalar(1, 2, 1)));
    let bad = Candidate::new(CellSet::empty(2), CellSet::empty(g), CellSet::empty(g));
    assert!(matches!(conv_delta_of_candidate(&bad, &m), Err(Error::Candidate(_))));
}

#[test]
fn b_summands_convolve_to_zero() {
    let m = diagonal_glue_model(1, 2, 5);
    let grids = GridProjectors::build(&m);
    for s in 0..3u8 {
        for t in 0..3u8 {
            if (s, t) == (1, 1) {
                assert!(grids.b_class(s, t).is_err());
                continue;
            }
            let b = grids.b_class(s, t).unwrap();
            for sigma in [vec![0, 1], vec![1, 0]] {
                let sj = perm_endo(&m, &PermEndoSpec::full(sigma)).unwrap();
                assert!(conv(&sj, &b, &m).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn shape_errors() {
    let m3 = model();
    let m2 = diagonal_glue_model(1, 2, 5);
    let c3 = CorrContext::from_model(&m3);
    let c2 = CorrContext::from_model(&m2);
    assert!(matches!(Corr2::tensor(&c3, &m2.identity(), &m2.identity(), &rat(1, 1)), Err(Error::Shape(_))));
    assert!(Corr2::identity(&c3).compose(&Corr2::identity(&c2)).is_err());
    assert!(matches!(conv(&m2.identity(), &Corr2::identity(&c3), &m3), Err(Error::Shape(_))));
}

fn quad() -> impl Strategy<Value = (i64, i64, i64)> {
    (-3i64..=3, -3i64..=3, 1i64..=2)
}

fn corr(ctx: Arc<CorrContext>, d: u64) -> impl Strategy<Value = Corr2> {
    let term = (proptest::collection::vec(quad(), 4), proptest::collection::vec(quad(), 4), -2i64..=2);
    let atoms = proptest::collection::vec((any::<bool>(), 0usize..2, 0usize..2, -2i64..=2), 0..=2);
    (proptest::collection::vec(term, 1..=2), atoms).prop_map(move |(terms, atoms)| {
        let mut x = Corr2::zero(&ctx);
        for (l, r, c) in terms {
            x = x.add(&Corr2::tensor(&ctx, &endo(d, 2, &l), &endo(d, 2, &r), &rat(c, 1)).unwrap()).unwrap();
        }
        for (first, i, j, c) in atoms {
            let kind = if first { AtomKind::A1 } else { AtomKind::A2 };
            x = x.add(&Corr2::atom(&ctx, kind, i, j).scale(&rat(c, 1))).unwrap();
        }
        x
    })
}

fn fixed() -> (AbelianModel, Arc<CorrContext>) {
    let m = AbelianModel::axiomatic(2, vec![4, 7]).unwrap();
    let ctx = CorrContext::from_model(&m);
    (m, ctx)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn transpose_is_an_involutive_anti_homomorphism(x in corr(fixed().1, 2), y in corr(fixed().1, 2)) {
        let (x, y) = (x.mod_balanced(), y.mod_balanced());
        prop_assert_eq!(x.transpose().transpose(), x.clone());
        prop_assert_eq!(x.compose(&y).unwrap().transpose(), y.transpose().compose(&x.transpose()).unwrap());
    }

    #[test]
    fn bullet_distributes(x in corr(fixed().1, 2), y in corr(fixed().1, 2), z in corr(fixed().1, 2)) {
        let lhs = x.bullet(&y.add(&z).unwrap()).unwrap();
        let rhs = x.bullet(&y).unwrap().add(&x.bullet(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conv_is_linear(x in corr(fixed().1, 2), y in corr(fixed().1, 2), s in quad(), c in -3i64..=3) {
        let (m, _) = fixed();
        let sigma = endo(2, 2, &[s, (1, 0, 1), (0, 1, 1), s]);
        let lhs = conv(&sigma, &x.add(&y.scale(&rat(c, 1))).unwrap(), &m).unwrap();
        let rhs = &conv(&sigma, &x, &m).unwrap() + &conv(&sigma, &y, &m).unwrap().scale(&scalar(2, c, 1));
        prop_assert_eq!(lhs, rhs);
    }
}
