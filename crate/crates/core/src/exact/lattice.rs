use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::Rat;

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns the nonzero rows: each pivot is positive, pivots move strictly
/// right, and entries above a pivot lie in `[0, pivot)`.
pub fn hnf_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let Some(p) = (r..m)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            else {
                break;
            };
            found = true;
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if !a[i][col].is_zero() {
                    let q = a[i][col].div_floor(&a[r][col]);
                    sub_multiple(&mut a, i, r, &q);
                    if !a[i][col].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if !q.is_zero() {
                sub_multiple(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn sub_multiple(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// A full-rank lattice in `ℚ^n`, stored as `(1/scale)·H` with `H` the integer
/// Hermite normal form, so equal lattices have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLattice {
    scale: BigInt,
    hnf: Vec<Vec<BigInt>>,
}

impl ZLattice {
    /// The lattice spanned over ℤ by `gens`, each of length `n`.
    pub fn from_generators(n: usize, gens: &[Vec<Rat>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("ambient rank must be positive".into()));
        }
        if let Some(bad) = gens.iter().find(|v| v.len() != n) {
            return Err(Error::Shape(format!("generator of length {} in rank {n}", bad.len())));
        }
        let scale = gens
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|v| v.iter().map(|x| (x * Rat::from_integer(scale.clone())).to_integer()).collect())
            .collect();
        let h = hnf_rows(&rows);
        if h.len() < n {
            return Err(Error::Rank(format!("generators span rank {} < {n}", h.len())));
        }
        // Shrink the common denominator to the smallest one that still works.
        let content = h.iter().flatten().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let g = content.gcd(&scale);
        let hnf = h.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
        Ok(ZLattice { scale: scale / g, hnf })
    }

    pub fn standard(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        Self::from_generators(n, &rows).expect("identity has full rank")
    }

    pub fn ambient_rank(&self) -> usize {
        self.hnf.len()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> Vec<Vec<Rat>> {
        self.hnf
            .iter()
            .map(|r| r.iter().map(|x| Rat::new(x.clone(), self.scale.clone())).collect())
            .collect()
    }

    /// Recomputes the Hermite normal form from the current basis.
    pub fn hnf(&self) -> Self {
        Self::from_generators(self.ambient_rank(), &self.basis()).expect("basis is full rank")
    }

    /// Absolute determinant of the basis.
    pub fn covolume(&self) -> Rat {
        let n = self.hnf.len();
        let diag = (0..n).fold(BigInt::one(), |acc, i| acc * &self.hnf[i][i]);
        Rat::new(diag, num_traits::pow(self.scale.clone(), n))
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        let n = self.hnf.len();
        if v.len() != n {
            return Err(Error::Shape(format!("vector of length {} in rank {n}", v.len())));
        }
        let s = Rat::from_integer(self.scale.clone());
        let mut w = Vec::with_capacity(n);
        for x in v {
            let y = x * &s;
            if !y.is_integer() {
                return Ok(false);
            }
            w.push(y.to_integer());
        }
        for i in 0..n {
            let p = &self.hnf[i][i];
            let (q, r) = w[i].div_rem(p);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (wj, hj) in w[i..].iter_mut().zip(&self.hnf[i][i..]) {
                    *wj -= &q * hj;
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_hnf() {
        assert_eq!(hnf_rows(&ints(&[&[2, 0], &[1, 1]])), ints(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn identity_is_canonical() {
        let l = ZLattice::standard(4);
        assert_eq!(l.basis(), ZLattice::standard(4).hnf().basis());
        assert_eq!(l.covolume(), rat_int(1));
    }

    #[test]
    fn glue_lattice() {
        let gens = vec![
            vec![rat(1, 5), rat(2, 5)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        let l = ZLattice::from_generators(2, &gens).unwrap();
        assert_eq!(l.covolume(), rat(1, 5));
        assert!(l.contains(&[rat(1, 5), rat(2, 5)]).unwrap());
        assert!(!l.contains(&[rat(1, 5), rat_int(0)]).unwrap());
        assert!(l.contains(&[rat_int(3), rat_int(-7)]).unwrap());
    }

    #[test]
    fn errors() {
        let gens = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]];
        assert!(matches!(ZLattice::from_generators(2, &gens), Err(Error::Rank(_))));
        let l = ZLattice::standard(2);
        assert!(matches!(l.contains(&[rat_int(1)]), Err(Error::Shape(_))));
    }
}
