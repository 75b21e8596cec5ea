//! Exact integer lattices: the congruence-kernel refinement and LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::modmath::{mod_inv, mul_mod, Prime};

/// A lattice given by a basis of row vectors in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    rows: Vec<Vec<BigInt>>,
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

impl Lattice {
    /// The full lattice `Z^n` with the standard basis.
    pub fn standard(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { rows }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        Lattice { rows }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Values of the functional `x -> sum x_j v_j mod p` on each basis row.
    pub fn functional(&self, values: &[u64], p: Prime) -> Vec<u64> {
        let m = p.get();
        self.rows
            .iter()
            .map(|row| row.iter().zip(values).fold(0, |acc, (x, &v)| (acc + mul_mod(residue(x, m), v, m)) % m))
            .collect()
    }

    /// Restricts to the sublattice where the functional vanishes mod `p`.
    /// Returns whether the lattice changed (it shrinks by index `p` exactly when it does).
    pub fn restrict(&mut self, values: &[u64], p: Prime) -> bool {
        let m = p.get();
        let phi = self.functional(values, p);
        let Some(pivot) = phi.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inv(phi[pivot], p).expect("nonzero mod prime");
        let pivot_row = self.rows[pivot].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pivot {
                for x in row.iter_mut() {
                    *x *= m;
                }
            } else if phi[i] != 0 {
                let c = BigInt::from(mul_mod(phi[i], inv, m));
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &c * y;
                }
            }
        }
        debug_assert!(self.functional(values, p).iter().all(|&x| x == 0));
        true
    }

    /// LLL reduction with parameter `delta = num / den`, exact integer arithmetic throughout.
    /// The basis must be linearly independent.
    pub fn lll(&mut self, num: i64, den: i64) {
        let n = self.rows.len();
        if n < 2 {
            return;
        }
        let b = &mut self.rows;
        let dot = |x: &[BigInt], y: &[BigInt]| x.iter().zip(y).map(|(a, c)| a * c).sum::<BigInt>();
        // d[i]: Gram determinant of the first i vectors; lam[i][j] = d[j+1] * mu_ij
        let mut d = vec![BigInt::one(); n + 1];
        let mut lam = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut u = dot(&b[i], &b[j]);
                for l in 0..j {
                    u = (&d[l + 1] * &u - &lam[i][l] * &lam[j][l]) / &d[l];
                }
                if j < i {
                    lam[i][j] = u;
                } else {
                    assert!(u.is_positive(), "LLL needs independent vectors");
                    d[i + 1] = u;
                }
            }
        }

        let red = |b: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt], k: usize, l: usize| {
            let dl = &d[l + 1];
            if (&lam[k][l] * 2u32).abs() <= *dl {
                return;
            }
            let two = BigInt::from(2);
            let q = (&lam[k][l] * &two + dl).div_floor(&(dl * &two));
            let (head, tail) = b.split_at_mut(k);
            for (x, y) in tail[0].iter_mut().zip(&head[l]) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * dl;
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        };

        let (num, den) = (BigInt::from(num), BigInt::from(den));
        let mut k = 1;
        while k < n {
            red(b, &mut lam, &d, k, k - 1);
            let lhs = &den * &d[k + 1] * &d[k - 1];
            let rhs = &num * &d[k] * &d[k] - &den * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                b.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = std::mem::take(&mut lam[k][j]);
                    lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
                }
                let l = lam[k][k - 1].clone();
                let big_b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
                for i in k + 1..n {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                    lam[i][k - 1] = (&big_b * &t + &l * &lam[i][k]) / &d[k + 1];
                }
                d[k] = big_b;
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    red(b, &mut lam, &d, k, l);
                }
                k += 1;
            }
        }
    }
}

/// `max |x_i|`.
pub fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
