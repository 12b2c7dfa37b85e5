//! Integral Smith normal form.
//!
//! The reduction pivots on a smallest-magnitude nonzero entry of the working
//! submatrix, which keeps coefficient growth tame on the dense integer
//! matrices produced by the twisted complexes. Only correctness and
//! termination matter here; no asymptotic cleverness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntegerMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix, each
/// positive. `r` equals the rank over the rationals.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    reduce(m, false).invariants
}

/// Rank over the rationals, read off the Smith form.
pub fn integer_rank(m: &IntegerMatrix) -> usize {
    reduce(m, false).invariants.len()
}

/// Rank of the reduction mod 2: the number of odd invariant factors.
pub fn rank_mod2(m: &IntegerMatrix) -> usize {
    reduce(m, false).invariants.iter().filter(|d| d.is_odd()).count()
}

/// A basis of the integer kernel `{x ∈ ℤ^cols : Mx = 0}`, returned as the
/// columns of a `cols × (cols - rank)` matrix. The basis spans the full
/// saturated kernel lattice: every integer kernel vector is an integer
/// combination of the columns.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let red = reduce(m, true);
    let v = red.right.expect("right transform requested");
    let rank = red.invariants.len();
    let n = m.cols();
    let mut k = IntegerMatrix::zeros(n, n - rank);
    for j in rank..n {
        for i in 0..n {
            k[(i, j - rank)] = v[(i, j)].clone();
        }
    }
    debug_assert!(m.mul(&k).is_zero(), "kernel columns must be annihilated");
    k
}

struct Reduction {
    invariants: Vec<BigInt>,
    right: Option<IntegerMatrix>,
}

fn reduce(m: &IntegerMatrix, track_right: bool) -> Reduction {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut right = track_right.then(|| IntegerMatrix::identity(cols));

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        if let Some(v) = right.as_mut() {
            v.swap_cols(k, pj);
        }

        loop {
            // Clear the rest of column k with row operations.
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[(i, k)], &a[(k, k)]);
                if !q.is_zero() {
                    for c in k..cols {
                        let sub = &q * &a[(k, c)];
                        a[(i, c)] -= sub;
                    }
                }
                if !a[(i, k)].is_zero() {
                    // Remainder is strictly smaller; promote it to the pivot.
                    a.swap_rows(k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Clear the rest of row k with column operations.
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[(k, j)], &a[(k, k)]);
                if !q.is_zero() {
                    for r in k..rows {
                        let sub = &q * &a[(r, k)];
                        a[(r, j)] -= sub;
                    }
                    if let Some(v) = right.as_mut() {
                        for r in 0..cols {
                            let sub = &q * &v[(r, k)];
                            v[(r, j)] -= sub;
                        }
                    }
                }
                if !a[(k, j)].is_zero() {
                    a.swap_cols(k, j);
                    if let Some(v) = right.as_mut() {
                        v.swap_cols(k, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear. Enforce that the pivot divides the
            // remaining submatrix before moving on.
            if let Some((i, j)) = non_multiple(&a, k) {
                // Fold row i into row k so the gcd surfaces at the pivot.
                for c in k..cols {
                    let add = a[(i, c)].clone();
                    a[(k, c)] += add;
                }
                let _ = j;
                continue;
            }
            break;
        }
        k += 1;
    }

    let mut invariants = Vec::new();
    for i in 0..rows.min(cols) {
        if a[(i, i)].is_zero() {
            break;
        }
        invariants.push(a[(i, i)].abs());
    }
    Reduction { invariants, right }
}

/// Entry of smallest nonzero magnitude in the trailing submatrix.
fn smallest_nonzero(a: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= a[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// First entry of the trailing submatrix not divisible by the pivot.
fn non_multiple(a: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let p = &a[(k, k)];
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if !a[(i, j)].mod_floor(p).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Quotient rounded toward the nearest integer, so remainders satisfy
/// `|r| <= |d|/2`.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let two_r = r.abs() * 2;
    if two_r > d.abs() {
        if (r.sign() == d.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
