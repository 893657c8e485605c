use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D` with unimodular transforms.
///
/// `D` is diagonal with non-negative entries and each diagonal entry divides
/// the next one.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Diagonal entries > 1, i.e. the elementary divisors of coker(A).
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

// Rounded division: q minimizing |a - q*b|.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = &r * 2i32;
    if two_r > b.abs() {
        if b.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else if two_r < -b.abs() {
        if b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct Worker {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Worker {
    // row dst += q * row src, mirrored on u
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.d.cols() {
            let t = q * &self.d[(src, j)];
            self.d[(dst, j)] += t;
        }
        for j in 0..self.u.cols() {
            let t = q * &self.u[(src, j)];
            self.u[(dst, j)] += t;
        }
    }

    // col dst += q * col src, mirrored on v
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.d.rows() {
            let t = q * &self.d[(i, src)];
            self.d[(i, dst)] += t;
        }
        for i in 0..self.v.rows() {
            let t = q * &self.v[(i, src)];
            self.v[(i, dst)] += t;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.d.cols() {
            let t = -self.d[(i, j)].clone();
            self.d[(i, j)] = t;
        }
        for j in 0..self.u.cols() {
            let t = -self.u[(i, j)].clone();
            self.u[(i, j)] = t;
        }
    }

    // clear row k and column k except the pivot
    fn clear_cross(&mut self, k: usize) {
        let (m, n) = (self.d.rows(), self.d.cols());
        loop {
            let mut clean = true;
            for i in k + 1..m {
                if self.d[(i, k)].is_zero() {
                    continue;
                }
                let q = -div_rounded(&self.d[(i, k)], &self.d[(k, k)]);
                self.add_row(i, k, &q);
                if !self.d[(i, k)].is_zero() {
                    // remainder is strictly smaller; promote it to pivot
                    self.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..n {
                if self.d[(k, j)].is_zero() {
                    continue;
                }
                let q = -div_rounded(&self.d[(k, j)], &self.d[(k, k)]);
                self.add_col(j, k, &q);
                if !self.d[(k, j)].is_zero() {
                    self.swap_cols(k, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
}

/// Smith normal form by elementary row/column operations.
///
/// Pivots are chosen with minimal absolute value to limit entry growth.
/// The zero matrix yields a zero diagonal.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Worker {
        d: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };

    let dims = m.min(n);
    let mut k = 0;
    while k < dims {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if w.d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if w.d[(pi, pj)].abs() <= w.d[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        w.clear_cross(k);

        // the pivot must divide the whole trailing block, otherwise fold the
        // offending row in and redo this step with a smaller pivot
        let mut offender = None;
        'scan: for i in k + 1..m {
            for j in k + 1..n {
                if !(&w.d[(i, j)] % &w.d[(k, k)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            w.add_row(k, i, &BigInt::one());
            continue;
        }
        k += 1;
    }

    for i in 0..dims {
        if w.d[(i, i)].is_negative() {
            w.negate_row(i);
        }
    }

    debug_assert!(is_diagonal(&w.d));
    SmithDecomposition { u: w.u, d: w.d, v: w.v }
}

fn is_diagonal(d: &IntMatrix) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    true
}

/// Row-style Hermite normal form.
///
/// Returns a matrix with the same integer row span as the input, in upper
/// echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows are dropped, so the output is a canonical
/// basis of the row span.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(b, col)].abs() <= h[(i, col)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_rounded(&h[(i, col)], &h[(pivot_row, col)]);
                for j in 0..n {
                    let t = &q * &h[(pivot_row, j)];
                    h[(i, j)] -= t;
                }
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            for j in 0..n {
                let t = -h[(pivot_row, j)].clone();
                h[(pivot_row, j)] = t;
            }
        }
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if q.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &q * &h[(pivot_row, j)];
                h[(i, j)] -= t;
            }
        }
        pivot_row += 1;
    }
    let entries: Vec<BigInt> = (0..pivot_row).flat_map(|i| h.row(i).to_vec()).collect();
    IntMatrix::new(pivot_row, n, entries).expect("hnf shape")
}
