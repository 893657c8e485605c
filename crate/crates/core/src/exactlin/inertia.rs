use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Inertia (n_plus, n_minus, n_zero) of a symmetric integer matrix.
///
/// Computed by fraction-free symmetric elimination: the working matrix is
/// kept integral, each elimination step divides exactly by the previous
/// pivot, and the sign pattern of the successive pivots gives the signature
/// (Jacobi). A stuck step (all remaining diagonal entries zero but the block
/// nonzero) is unblocked by the congruence e_i += e_j, which puts the
/// nonzero value 2*a_ij on the diagonal.
pub fn inertia(a: &IntMatrix) -> Result<(usize, usize, usize)> {
    if !a.is_symmetric() {
        return Err(Error::Shape("inertia requires a symmetric matrix".into()));
    }
    let n = a.rows();
    let mut w = a.clone();
    let mut prev = BigInt::one();
    let (mut n_plus, mut n_minus) = (0usize, 0usize);
    let mut k = 0;
    while k < n {
        // pivot: remaining diagonal entry of minimal magnitude
        let pivot = (k..n)
            .filter(|&i| !w[(i, i)].is_zero())
            .min_by_key(|&i| w[(i, i)].abs());
        let p = match pivot {
            Some(p) => p,
            None => {
                // diagonal exhausted; look for an off-diagonal entry
                let mut off = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !w[(i, j)].is_zero() {
                            off = Some((i, j));
                            break 'search;
                        }
                    }
                }
                match off {
                    None => break, // remaining block is zero
                    Some((i, j)) => {
                        // e_i += e_j keeps the block congruent and integral
                        for c in k..n {
                            let t = w[(j, c)].clone();
                            w[(i, c)] += t;
                        }
                        for r in k..n {
                            let t = w[(r, j)].clone();
                            w[(r, i)] += t;
                        }
                        continue;
                    }
                }
            }
        };
        sym_swap(&mut w, k, p);
        let d = w[(k, k)].clone();
        if (&d * &prev).is_positive() {
            n_plus += 1;
        } else {
            n_minus += 1;
        }
        for i in k + 1..n {
            for j in i..n {
                let num = &w[(i, j)] * &d - &w[(i, k)] * &w[(j, k)];
                let val = num / &prev; // exact: Sylvester identity
                w[(i, j)] = val.clone();
                w[(j, i)] = val;
            }
        }
        prev = d;
        k += 1;
    }
    Ok((n_plus, n_minus, n - n_plus - n_minus))
}

fn sym_swap(w: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    w.swap_rows(i, j);
    w.swap_cols(i, j);
}
