use motivix::fermat::{
    coordinate_permutation, degree, fermat_cubic_e, fermat_sextic, form_rank, phi1, phi2, phi3, pullback,
    rep_membership, roots, tau, weierstrass_e, CurveMorphism, Differential, Expr, Gf, Rep, G1, G2,
};
use motivix::Error;

fn mul(p: u64, a: (u64, u64), b: (u64, u64), r: u64) -> (u64, u64) {
    let m = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    ((m(a.0, b.0) + m(m(a.1, b.1), r)) % p, (m(a.0, b.1) + m(a.1, b.0)) % p)
}

/// Monic polynomial with the given roots, coefficients low degree first.
fn from_roots(p: u64, r: u64, rs: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut f = vec![(1, 0)];
    for &z in rs {
        let neg = ((p - z.0) % p, (p - z.1) % p);
        let mut next = vec![(0, 0); f.len() + 1];
        for (k, &c) in f.iter().enumerate() {
            next[k + 1] = ((next[k + 1].0 + c.0) % p, (next[k + 1].1 + c.1) % p);
            let t = mul(p, c, neg, r);
            next[k] = ((next[k].0 + t.0) % p, (next[k].1 + t.1) % p);
        }
        f = next;
    }
    f
}

fn non_residue(p: u64) -> u64 {
    (2..p).find(|&a| (1..p).all(|x| x * x % p != a)).unwrap()
}

#[test]
fn expressions_round_trip() {
    for src in ["y^4/(cbrt4*x^2)", "(x^6 - 1)/(2*x^3)", "-x^2", "x^6 + y^6 + 1", "eps*i - 3*(u'+v')^-2"] {
        let e = Expr::parse(src).unwrap();
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{src}");
    }
    assert_eq!(Expr::parse("2^3").unwrap(), Expr::Pow(Box::new(Expr::int(2)), 3));
    assert!(Expr::parse("x +").is_err());
    assert!(Expr::parse("(x").is_err());
    assert_eq!(Expr::parse("x*cbrt4").unwrap().constants().into_iter().collect::<Vec<_>>(), ["cbrt4"]);
}

#[test]
fn root_finding() {
    let p = 37;
    let gf = Gf::new(p);
    let r = non_residue(p);
    let cases: [&[(u64, u64)]; 4] = [&[(1, 0)], &[(0, 0), (5, 3)], &[(2, 1), (2, 36), (30, 0), (7, 7)], &[]];
    for want in cases {
        let mut want = want.to_vec();
        want.sort_unstable();
        let mut f = from_roots(p, r, &want);
        // a repeated root is reported once
        if let Some(&z) = want.first() {
            f = from_roots(p, r, &[want.clone(), vec![z]].concat());
        }
        assert_eq!(roots(&gf, &f), want);
    }
    // y^{p²} − y splits completely
    let mut all = vec![(0, 0); (p * p + 1) as usize];
    all[1] = (p - 1, 0);
    all[(p * p) as usize] = (1, 0);
    assert_eq!(roots(&gf, &all).len(), (p * p) as usize);
}

#[test]
fn morphisms_land_on_their_targets() {
    let c6 = fermat_sextic();
    let bad = CurveMorphism::new("bad", &c6, &weierstrass_e(), "x^2", "y^3");
    assert!(matches!(bad, Err(Error::InvalidInput(_))));
    assert!(matches!(CurveMorphism::new("bad", &c6, &fermat_cubic_e(), "x^2", "z"), Err(Error::InvalidInput(_))));
    for perm in G1 {
        assert!(coordinate_permutation(perm).is_ok());
    }
    assert!(phi1().compose(&phi3()).is_err());
}

/// Degree of `phi` from a coordinate `h` on the target whose pullback is a
/// rational function of `x` alone: `deg_{C6}(x) = 6`, so
/// `deg φ = 6 · deg_x(φ^*h) / deg_E(h)`.
fn tower_degree(x_degree_of_pullback: u64, target_degree: u64) -> u64 {
    6 * x_degree_of_pullback / target_degree
}

#[test]
fn degrees_match_the_tower_count() {
    // φ₁^*u = −x², u has degree 2 on v² = u³ − 1
    assert_eq!(degree(&phi1()).unwrap().degree as u64, tower_degree(2, 2));
    // φ₂^*v = (x⁶ − 1)/(2x³), v has degree 3
    assert_eq!(degree(&phi2()).unwrap().degree as u64, tower_degree(6, 3));
    // φ₃^*u′ = x², u′ has degree 3 on u′³ + v′³ + 1 = 0
    assert_eq!(degree(&phi3()).unwrap().degree as u64, tower_degree(2, 3));
    let sigma = coordinate_permutation([2, 3, 1]).unwrap();
    let report = degree(&sigma).unwrap();
    assert_eq!(report.degree, 1);
    assert!(report.samples.len() >= 3);
}

#[test]
fn pullbacks_are_functorial() {
    for phi in [phi1(), phi2(), phi3()] {
        let t = tau(&phi);
        let base = pullback(&phi, &t).unwrap();
        for perm in G1 {
            let sigma = coordinate_permutation(perm).unwrap();
            let direct = pullback(&phi.compose(&sigma).unwrap(), &t).unwrap();
            let staged = pullback(&sigma, &Differential::Omega(base.clone())).unwrap();
            assert_eq!(direct, staged, "{} after {perm:?}", phi.label);
        }
    }
}

#[test]
fn representations_are_permutation_invariant() {
    for (phi, rep) in [(phi1(), Rep::V210), (phi2(), Rep::V300), (phi3(), Rep::V111)] {
        let t = tau(&phi);
        for perm in G1 {
            let f = pullback(&phi.compose(&coordinate_permutation(perm).unwrap()).unwrap(), &t).unwrap();
            assert_eq!(rep_membership(&f), rep, "{} after {perm:?}", phi.label);
        }
    }
}

#[test]
fn family_ranks() {
    let family = |phi: &CurveMorphism, perms: &[[usize; 3]]| {
        let t = tau(phi);
        let forms: Vec<_> = perms
            .iter()
            .map(|p| pullback(&phi.compose(&coordinate_permutation(*p).unwrap()).unwrap(), &t).unwrap())
            .collect();
        form_rank(&forms)
    };
    assert_eq!(family(&phi1(), &G1), 6);
    assert_eq!(family(&phi2(), &G2), 3);
    assert_eq!(family(&phi2(), &[[1, 2, 3], [2, 1, 3], [3, 2, 1]]), 2);
    assert_eq!(family(&phi3(), &[[1, 2, 3]]), 1);
    assert_eq!(family(&phi3(), &G1), 1);
}
