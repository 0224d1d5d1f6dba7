//! Model builders shared by the integration tests.
#![allow(dead_code)]

use motivix::cmlat::{AbelianModel, Subset};
use motivix::exact::{rat, QuadInt, Rat};

/// `a/den + (b/den)·√−d`.
pub fn q(a: i64, b: i64, den: i64, d: u64) -> QuadInt {
    QuadInt::new(rat(a, den), rat(b, den), d)
}

/// Glue vector `(1/den)·(a₁ + b₁√−d, …)`.
pub fn glue(d: u64, den: i64, coords: &[(i64, i64)]) -> Vec<QuadInt> {
    coords.iter().map(|&(a, b)| q(a, b, den, d)).collect()
}

/// Glue vector with rational coordinates `(1/den)·(a₁, …)`.
pub fn rational_glue(d: u64, den: i64, coords: &[i64]) -> Vec<QuadInt> {
    coords.iter().map(|&a| q(a, 0, den, d)).collect()
}

pub fn lattice(d: u64, g: usize, glue: Vec<Vec<QuadInt>>) -> AbelianModel {
    AbelianModel::lattice(d, g, glue).expect("valid lattice model")
}

/// `(1/p)·(1, …, 1)`: every proper exponent equals `p`, every coordinate swap is integral.
pub fn diagonal_glue_model(d: u64, g: usize, p: i64) -> AbelianModel {
    lattice(d, g, vec![rational_glue(d, p, &vec![1; g])])
}

/// Lattice models with every proper exponent at least 4, `2 ≤ g ≤ max_g`.
pub fn hypothesis_models(max_g: usize) -> Vec<(String, AbelianModel)> {
    let mut out = Vec::new();
    let mut push = |name: &str, m: AbelianModel| {
        if m.g() <= max_g {
            out.push((name.to_string(), m));
        }
    };
    push("g2 d1 (1/5)(1,1)", diagonal_glue_model(1, 2, 5));
    push("g2 d3 (1/7)(1,1)", diagonal_glue_model(3, 2, 7));
    push("g3 d1 (1/5)(1,1,1)", diagonal_glue_model(1, 3, 5));
    push("g3 d2 (1/4)(1,1,1)", diagonal_glue_model(2, 3, 4));
    push("g3 d3 (1/5)(1,2,1)", lattice(3, 3, vec![rational_glue(3, 5, &[1, 2, 1])]));
    push("g3 d1 (1/5)(1,i,1)", lattice(1, 3, vec![glue(1, 5, &[(1, 0), (0, 1), (1, 0)])]));
    push("g4 d3 (1/5)(1,1,1,1)", diagonal_glue_model(3, 4, 5));
    push("g4 d7 (1/6)(1,1,1,1)", diagonal_glue_model(7, 4, 6));
    push("g5 d1 (1/5)(1,1,1,1,1)", diagonal_glue_model(1, 5, 5));
    push("g5 d2 (1/7)(1,2,3,4,5)", lattice(2, 5, vec![rational_glue(2, 7, &[1, 2, 3, 4, 5])]));
    push("g6 d1 (1/5)(1,...,1)", diagonal_glue_model(1, 6, 5));
    push("g6 d3 (1/4)(1,...,1)", diagonal_glue_model(3, 6, 4));
    out
}

/// Brute-force membership in `ℤ[√−d]^g + Σ ℤ[√−d]·v`: try every glue
/// coefficient modulo the glue denominators.
pub fn in_lattice(x: &[QuadInt], glue: &[Vec<QuadInt>], d: u64) -> bool {
    let dens: Vec<i64> = glue
        .iter()
        .map(|v| {
            v.iter()
                .flat_map(|c| [c.a.denom().clone(), c.b.denom().clone()])
                .fold(1i64, |acc, den| num_integer::lcm(acc, i64::try_from(den).unwrap()))
        })
        .collect();
    let integral = |y: &[QuadInt]| y.iter().all(|c| c.a.is_integer() && c.b.is_integer());
    let mut idx = vec![(0i64, 0i64); glue.len()];
    loop {
        let mut y = x.to_vec();
        for (k, v) in glue.iter().enumerate() {
            let c = q(idx[k].0, idx[k].1, 1, d);
            for (yi, vi) in y.iter_mut().zip(v) {
                *yi = &*yi - &(&c * vi);
            }
        }
        if integral(&y) {
            return true;
        }
        // odometer over (s, t) ∈ [0, den)² per glue vector
        let mut k = 0;
        loop {
            if k == glue.len() {
                return false;
            }
            idx[k].0 += 1;
            if idx[k].0 < dens[k] {
                break;
            }
            idx[k].0 = 0;
            idx[k].1 += 1;
            if idx[k].1 < dens[k] {
                break;
            }
            idx[k].1 = 0;
            k += 1;
        }
    }
}

pub fn brute_exponent(g: usize, d: u64, glue: &[Vec<QuadInt>], k: Subset, bound: u64) -> Option<u64> {
    let s = QuadInt::sqrt_neg_d(d);
    (1..=bound).find(|&m| {
        let mq = QuadInt::from_rat(Rat::from_integer(m.into()), d);
        glue.iter().all(|v| {
            [QuadInt::one(d), s.clone()].iter().all(|w| {
                let img: Vec<QuadInt> =
                    (0..g).map(|i| if k.contains(i) { &(&mq * w) * &v[i] } else { QuadInt::zero(d) }).collect();
                in_lattice(&img, glue, d)
            })
        })
    })
}
