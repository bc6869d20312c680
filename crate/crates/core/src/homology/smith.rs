//! Smith normal form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, all
/// positive. Their count is the rank.
pub fn invariant_factors(entries: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = entries.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        let Some((pi, pj)) = min_abs(&a, t, t) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a smaller remainder sits in row t or column t; pivot on it
                let (mut bi, mut bj) = (t, t);
                for i in t..nrows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..ncols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                swap_cols(&mut a, t, bj);
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let bad =
                (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

// row[dst] -= q * row[src]
fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(&src_row) {
        if !s.is_zero() {
            *x -= s * q;
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn min_abs(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
