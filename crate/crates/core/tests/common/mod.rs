//! Shared test support: independent oracles and a deterministic RNG.
//!
//! The oracles here deliberately avoid the algorithms used by the crate:
//! determinants by cofactor expansion, Smith normal forms by plain repeated
//! row/column reduction without transform tracking.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use k3cover::exactlin::IntMatrix;

/// Small deterministic xorshift generator so oracle sweeps are reproducible.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> XorShift {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform-ish integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| self.int_in(lo, hi)).collect())
            .collect();
        IntMatrix::from_rows(&data).unwrap()
    }

    pub fn symmetric_matrix(&mut self, n: usize, lo: i64, hi: i64) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in i..n {
                let v = BigInt::from(self.int_in(lo, hi));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        m
    }

    /// Random unimodular matrix from a product of elementary operations.
    pub fn unimodular(&mut self, n: usize, steps: usize) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        if n < 2 {
            return u;
        }
        for _ in 0..steps {
            let i = self.int_in(0, n as i64 - 1) as usize;
            let mut j = self.int_in(0, n as i64 - 1) as usize;
            if i == j {
                j = (j + 1) % n;
            }
            let c = BigInt::from(self.int_in(-2, 2));
            // row_i += c * row_j
            for k in 0..n {
                let t = &c * &u[(j, k)];
                u[(i, k)] += t;
            }
        }
        u
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    assert_eq!(n, a.cols());
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return a[(0, 0)].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if a[(0, j)].is_zero() {
            continue;
        }
        let minor = minor_matrix(a, 0, j);
        let term = &a[(0, j)] * cofactor_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn minor_matrix(a: &IntMatrix, row: usize, col: usize) -> IntMatrix {
    let n = a.rows();
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == row {
            continue;
        }
        for j in 0..n {
            if j == col {
                continue;
            }
            entries.push(a[(i, j)].clone());
        }
    }
    IntMatrix::new(n - 1, n - 1, entries).unwrap()
}

/// Inertia by plain symmetric Gaussian congruence over the rationals.
pub fn rational_inertia(a: &IntMatrix) -> (usize, usize, usize) {
    use num_rational::BigRational;
    let n = a.rows();
    assert!(a.is_symmetric());
    let mut w: Vec<Vec<BigRational>> = (0..n)
        .map(|i| a.row(i).iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let (mut plus, mut minus) = (0usize, 0usize);
    let mut k = 0;
    while k < n {
        // diagonal pivot, or make one with e_i += e_j
        let pivot = (k..n).find(|&i| !w[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let mut off = None;
                'out: for i in k..n {
                    for j in i + 1..n {
                        if !w[i][j].is_zero() {
                            off = Some((i, j));
                            break 'out;
                        }
                    }
                }
                let Some((i, j)) = off else { break };
                for c in 0..n {
                    let t = w[j][c].clone();
                    w[i][c] += t;
                }
                for r in 0..n {
                    let t = w[r][j].clone();
                    w[r][i] += t;
                }
                continue;
            }
        };
        w.swap(k, p);
        for row in w.iter_mut() {
            row.swap(k, p);
        }
        let d = w[k][k].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for i in k + 1..n {
            let f = &w[i][k] / &d;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &w[k][j];
                w[i][j] -= t;
            }
        }
        // symmetrize the trailing block from the row-reduced state
        for i in k + 1..n {
            for j in k + 1..n {
                w[j][i] = w[i][j].clone();
            }
        }
        for i in k + 1..n {
            w[i][k] = BigRational::zero();
            w[k][i] = BigRational::zero();
        }
        k += 1;
    }
    (plus, minus, n - plus - minus)
}

/// Smith normal form diagonal by brute-force row/column reduction, with no
/// transform bookkeeping: repeatedly shrink the smallest nonzero entry by
/// remainders until it divides its row and column, clear them, recurse,
/// then fix up the divisibility chain with gcd/lcm folding.
pub fn naive_snf_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let (m, n) = (a.rows(), a.cols());
    let mut w: Vec<Vec<BigInt>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let dims = m.min(n);
    let mut diag: Vec<BigInt> = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < m && left < n {
        // smallest nonzero entry in the block
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..m {
            for j in left..n {
                if w[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if w[pi][pj].abs() <= w[i][j].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap(top, pi);
        for row in w.iter_mut() {
            row.swap(left, pj);
        }
        // reduce row and column by remainders until everything clears
        loop {
            let mut changed = false;
            for i in top + 1..m {
                if w[i][left].is_zero() {
                    continue;
                }
                let q = w[i][left].div_floor(&w[top][left]);
                for j in left..n {
                    let t = &q * &w[top][j];
                    w[i][j] -= t;
                }
                if !w[i][left].is_zero() {
                    w.swap(top, i);
                    changed = true;
                }
            }
            for j in left + 1..n {
                if w[top][j].is_zero() {
                    continue;
                }
                let q = w[top][j].div_floor(&w[top][left]);
                for row in w.iter_mut().take(m).skip(top) {
                    let t = &q * &row[left];
                    row[j] -= t;
                }
                if !w[top][j].is_zero() {
                    for row in w.iter_mut() {
                        row.swap(left, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(w[top][left].abs());
        top += 1;
        left += 1;
    }
    while diag.len() < dims {
        diag.push(BigInt::zero());
    }
    // enforce the divisibility chain on the multiset of diagonal entries
    loop {
        let mut done = true;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[i].is_zero() {
                    diag.swap(i, j);
                    if !diag[i].is_zero() {
                        done = false;
                    }
                    continue;
                }
                if diag[j].is_zero() {
                    continue;
                }
                if (&diag[j] % &diag[i]).is_zero() {
                    continue;
                }
                let g = diag[i].gcd(&diag[j]);
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
                done = false;
            }
        }
        if done {
            break;
        }
    }
    diag
}
