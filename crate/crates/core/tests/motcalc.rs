use motivix::exact::rat;
use motivix::motcalc::{
    blowup_chain, ck_curve, ck_surface, cubic_rationality_ledger, elliptic_times_curve, hypersurface_ck,
    hypersurface_middle_betti, product_of_curves, projective_space, Center, CkElem, HostVerdict, MotiveExpr,
    SurfaceTag, CUBIC_B4,
};
use motivix::Error;
use proptest::prelude::*;

/// Betti numbers of a smooth degree-`d` hypersurface in `ℙ^{n+1}` from the
/// Euler characteristic `χ = ((1−d)^{n+2} − 1)/d + n + 2`.
fn middle_betti_oracle(n: i64, d: i64) -> i64 {
    let chi = ((1 - d).pow(n as u32 + 2) - 1) / d + n + 2;
    // Every degree `0, 2, …, 2n` except the middle one contributes a single class.
    let outside_middle = if n % 2 == 0 { n } else { n + 1 };
    if n % 2 == 0 {
        chi - outside_middle
    } else {
        outside_middle - chi
    }
}

#[test]
fn curve_dimensions() {
    assert_eq!(ck_curve(0).dims(), [1, 0, 1]);
    assert_eq!(ck_curve(1).dims(), [1, 2, 1]);
    assert_eq!(ck_curve(10).dims()[1], 20);
    for g in 0..30 {
        assert_eq!(ck_curve(g).total_dim(), 2 * g + 2);
    }
}

#[test]
fn surface_dimensions() {
    assert_eq!(ck_surface(6, 4, 2).unwrap().transcendental_dim(), 2);
    assert_eq!(ck_surface(22, 20, 0).unwrap().transcendental_dim(), 2);
    assert_eq!(ck_surface(106, 86, 0).unwrap().transcendental_dim(), 20);
    assert_eq!(ck_surface(6, 4, 2).unwrap().dims(), [1, 4, 6, 4, 1]);
    assert!(matches!(ck_surface(6, 7, 0), Err(Error::InvalidInput(_))));
    assert!(matches!(MotiveExpr::surface_part(SurfaceTag::M2alg, 3, 4, 0), Err(Error::InvalidInput(_))));
}

#[test]
fn products_of_curves() {
    let r = product_of_curves(10, true);
    assert_eq!(r.dim_m2_tr, 200);
    assert_eq!(r.grid_blocks, Some(100));
    let e = product_of_curves(1, true);
    assert_eq!((e.dim_m2_tr, e.ns_rank), (2, 4));
    assert_eq!(e.dims, ck_surface(6, 4, 2).unwrap().dims());
    for g in 1..=20u64 {
        let split = product_of_curves(g, true);
        let whole = product_of_curves(g, false);
        assert_eq!(split.dims, whole.dims);
        assert_eq!(split.total, (2 * g + 2).pow(2));
        assert_eq!(split.b2, 4 * g * g + 2);
        assert_eq!(split.ns_rank, 2 * g * g + 2);
        assert_eq!(split.dim_m2_alg + split.dim_m2_tr, split.b2);
        assert_eq!(split.expr.transcendental_dim(), 2 * g * g);
        assert_eq!(elliptic_times_curve(g).dim_m2_tr, 2 * g);
    }
}

#[test]
fn hypersurface_betti_numbers() {
    assert_eq!(hypersurface_middle_betti(4, 3), CUBIC_B4);
    assert_eq!(hypersurface_middle_betti(2, 4), 22);
    assert_eq!(hypersurface_middle_betti(2, 6), 106);
    assert_eq!(hypersurface_middle_betti(1, 3), 2);
    for n in 1..=6 {
        for d in 1..=5 {
            assert_eq!(hypersurface_middle_betti(n, d) as i64, middle_betti_oracle(n as i64, d as i64), "n = {n}, d = {d}");
        }
    }
}

#[test]
fn cubic_fourfold_projectors() {
    let ck = hypersurface_ck(4, 3).unwrap();
    let pi2 = ck.projector(2).unwrap();
    assert_eq!(pi2, &CkElem::monomial(4, 3, 3, 1, rat(1, 3)));
    assert_eq!(ck.projector(6).unwrap(), &CkElem::monomial(4, 3, 1, 3, rat(1, 3)));
    assert!(ck.verify().all());
    assert_eq!(ck.verify().middle_dim, 23);
}

#[test]
fn projective_line_as_hypersurface() {
    let ck = hypersurface_ck(1, 1).unwrap();
    assert!(ck.verify().all());
    assert!(ck.middle.is_zero());
    assert_eq!(ck.projectors.len(), 2);
}

#[test]
fn projector_rings_up_to_six_five() {
    for n in 1..=6 {
        for d in 1..=5 {
            let ck = hypersurface_ck(n, d).unwrap();
            let all = ck.all();
            for (w, p) in &all {
                assert_eq!(&p.compose(p), *p, "idempotent n = {n}, d = {d}, weight {w}");
                for (v, q) in &all {
                    if v != w {
                        assert!(p.compose(q).is_zero(), "orthogonal n = {n}, d = {d}, {w} vs {v}");
                    }
                }
            }
            let sum = all.iter().fold(CkElem::zero(n, d), |acc, (_, p)| acc.add(p));
            assert_eq!(sum, ck.diagonal);
        }
    }
    assert!(matches!(hypersurface_ck(0, 3), Err(Error::InvalidInput(_))));
}

#[test]
fn blowup_rows() {
    let p4 = projective_space(4);
    let one = blowup_chain(&p4, 4, &[Center::Point]).unwrap();
    assert_eq!(one.added[0].dims, [0, 0, 1, 0, 1, 0, 1, 0, 0]);
    assert_eq!(one.start_dims, [1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let g = 3;
    let curve = blowup_chain(&p4, 4, &[Center::Curve { g }]).unwrap();
    assert_eq!(curve.added[0].dims, [0, 0, 1, 2 * g, 2, 2 * g, 1, 0, 0]);
    let surf = blowup_chain(&p4, 4, &[Center::Surface { b2: 22, rho: 20, q: 0 }]).unwrap();
    assert_eq!(surf.added[0].dims, [0, 0, 1, 0, 22, 0, 1, 0, 0]);
    assert!(matches!(blowup_chain(&p4, 4, &[Center::Surface { b2: 1, rho: 1, q: 0 }; 1]).map(|_| ()), Ok(())));
    assert!(matches!(blowup_chain(&projective_space(2), 2, &[Center::Curve { g: 1 }]), Err(Error::InvalidInput(_))));
}

#[test]
fn shioda_katsura_points() {
    let c6sq = product_of_curves(10, true).expr;
    let centres = vec![Center::Point; 36];
    let r = blowup_chain(&c6sq, 2, &centres).unwrap();
    assert_eq!(r.added.len(), 1);
    assert_eq!(r.added[0].count, 36);
    assert_eq!(r.added[0].dims, [0, 0, 36, 0, 0]);
    let before = c6sq.dims();
    assert_eq!(r.dims[2], before[2] + 36);
    assert_eq!(r.expr.transcendental_dim(), 200);
}

#[test]
fn cubic_ledger_examples() {
    let k3 = cubic_rationality_ledger(&[(22, 20, 0)], &[], 0).unwrap();
    assert_eq!(k3.dim_prim, 22);
    assert_eq!(k3.surfaces[0].verdict, HostVerdict::CannotHost);
    assert_eq!(k3.summary, "no host available");
    let tight = cubic_rationality_ledger(&[(40, 18, 0)], &[], 0).unwrap();
    assert_eq!(tight.surfaces[0].verdict, HostVerdict::ForcesEquality);
    let big = cubic_rationality_ledger(&[(106, 86, 0), (200, 10, 3)], &[2, 5], 7).unwrap();
    assert_eq!(big.hosts, [1]);
    assert_eq!(big.curve_weight3_dims, [4, 10]);
    let empty = cubic_rationality_ledger(&[], &[], 0).unwrap();
    assert_eq!(empty.summary, "no host available");
    assert!(cubic_rationality_ledger(&[(3, 4, 0)], &[], 0).is_err());
}

#[test]
fn canonical_json_is_stable() {
    let e = MotiveExpr::tensor(ck_curve(2), MotiveExpr::sum(vec![MotiveExpr::lefschetz(1), MotiveExpr::lefschetz(2)]));
    let a = serde_json::to_string(&e.canonical()).unwrap();
    let b = serde_json::to_string(&e.canonical().canonical()).unwrap();
    assert_eq!(a, b);
    assert_eq!(e.canonical().dims(), e.dims());
}

fn motive() -> impl Strategy<Value = MotiveExpr> {
    let leaf = prop_oneof![
        Just(MotiveExpr::Unit),
        (0u32..3).prop_map(MotiveExpr::lefschetz),
        (0u64..5).prop_map(|g| MotiveExpr::CurveH1 { g }),
        (0u64..8, 0u64..8).prop_map(|(a, b)| ck_surface(a + b, a, 1).unwrap()),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 1..3).prop_map(MotiveExpr::sum),
            (inner.clone(), inner).prop_map(|(a, b)| MotiveExpr::tensor(a, b)),
        ]
    })
}

fn cauchy(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn trimmed(mut v: Vec<u64>) -> Vec<u64> {
    if v.is_empty() {
        v.push(0);
    }
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn dims_are_additive_and_convolutive(a in motive(), b in motive()) {
        let sum = MotiveExpr::sum(vec![a.clone(), b.clone()]).dims();
        let (da, db) = (a.dims(), b.dims());
        let n = da.len().max(db.len());
        let want: Vec<u64> = (0..n).map(|k| da.get(k).unwrap_or(&0) + db.get(k).unwrap_or(&0)).collect();
        prop_assert_eq!(trimmed(sum), trimmed(want));
        let prod = MotiveExpr::tensor(a, b).dims();
        prop_assert_eq!(trimmed(prod), cauchy(&da, &db));
    }

    #[test]
    fn surfaces_split_weight_two(b2 in 0u64..60, rho_frac in 0u64..=100, q in 0u64..4) {
        let rho = b2 * rho_frac / 100;
        let s = ck_surface(b2, rho, q).unwrap();
        prop_assert_eq!(s.dims()[2], b2);
        prop_assert_eq!(s.transcendental_dim(), b2 - rho);
    }
}
