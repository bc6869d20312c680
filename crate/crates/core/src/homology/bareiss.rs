//! Rank over the fraction field `Q(h)` by fraction-free elimination.

use num_traits::Signed;

use crate::coeff::IntPoly;

/// Rank of a matrix of `Z[h]` entries over `Q(h)`.
///
/// Each step picks the nonzero entry of lowest `h`-degree (ties broken by
/// smallest coefficient height), clears its column with cross-multiplication
/// and strips the polynomial content of every updated row.
pub fn generic_rank(entries: &[Vec<IntPoly>]) -> usize {
    let mut rows: Vec<Vec<IntPoly>> = entries
        .iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect();
    let mut rank = 0;
    loop {
        let Some((pr, pc)) = choose_pivot(&rows) else {
            return rank;
        };
        let pivot_row = rows.swap_remove(pr);
        let piv = pivot_row[pc].clone();
        for row in rows.iter_mut() {
            let a = row[pc].clone();
            if a.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if p.is_zero() {
                    *x = &*x * &piv;
                } else {
                    *x = &(&*x * &piv) - &(&a * p);
                }
            }
            strip_content(row);
        }
        rows.retain(|r| r.iter().any(|e| !e.is_zero()));
        rank += 1;
    }
}

fn choose_pivot(rows: &[Vec<IntPoly>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize, num_bigint::BigInt)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let Some(deg) = e.degree() else { continue };
            let better = match &best {
                None => true,
                Some((_, _, bd, bh)) => deg < *bd || (deg == *bd && e.height() < *bh),
            };
            if better {
                best = Some((i, j, deg, e.height()));
            }
        }
    }
    best.map(|(i, j, _, _)| (i, j))
}

fn strip_content(row: &mut [IntPoly]) {
    let mut g = IntPoly::zero();
    for e in row.iter().filter(|e| !e.is_zero()) {
        g = g.gcd(e);
        if g.is_constant() && g.coeffs()[0].abs() == 1.into() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.div_exact(&g).expect("row content divides every entry");
        }
    }
}
