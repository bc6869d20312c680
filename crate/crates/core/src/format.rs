//! Plain-text rendering of algebra elements in the expression grammar.
//!
//! A coefficient is split into its `h`-power pieces. Pieces are ordered by
//! x-degree, then `h`-power, then monomial (index word of `x^alpha`, then
//! one-line `w`), which keeps golden files stable.

use std::cmp::Ordering;
use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coeff::{write_hpow, IntPoly};
use crate::symgroup::Perm;

/// Compares exponent vectors by their sorted index words, so that
/// `x1 < x1*x2 < x2`, i.e. reverse lexicographic order on `alpha`.
pub(crate) fn cmp_alpha(a: &[u32], b: &[u32]) -> Ordering {
    b.cmp(a)
}

pub(crate) fn write_monomial(out: &mut impl Write, alpha: &[u32], w: &Perm) -> fmt::Result {
    let mut first = true;
    let mut sep = |out: &mut dyn Write| -> fmt::Result {
        if !first {
            out.write_char('*')?;
        }
        first = false;
        Ok(())
    };
    for (j, &a) in alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        sep(out)?;
        if a == 1 {
            write!(out, "x{}", j + 1)?;
        } else {
            write!(out, "x{}^{}", j + 1, a)?;
        }
    }
    for i in w.reduced_word() {
        sep(out)?;
        write!(out, "T{i}")?;
    }
    if first {
        out.write_char('1')?;
    }
    Ok(())
}

pub(crate) fn write_terms<'a>(
    f: &mut impl Write,
    terms: impl Iterator<Item = (&'a [u32], &'a Perm, &'a IntPoly)>,
) -> fmt::Result {
    let mut pieces: Vec<(usize, usize, &[u32], &Perm, &BigInt)> = Vec::new();
    for (alpha, w, c) in terms {
        let deg = alpha.iter().map(|&a| a as usize).sum();
        for (k, ck) in c.terms() {
            pieces.push((deg, k, alpha, w, ck));
        }
    }
    if pieces.is_empty() {
        return f.write_char('0');
    }
    pieces.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(cmp_alpha(a.2, b.2))
            .then(a.3.cmp(b.3))
    });
    for (n, (_, k, alpha, w, c)) in pieces.into_iter().enumerate() {
        let neg = c.is_negative();
        if n == 0 {
            if neg {
                f.write_char('-')?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let mag = c.abs();
        let trivial_mono = alpha.iter().all(|&a| a == 0) && w.is_identity();
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || (k == 0 && trivial_mono) {
            parts.push(mag.to_string());
        }
        if k > 0 {
            let mut s = String::new();
            write_hpow(&mut s, k)?;
            parts.push(s);
        }
        if !trivial_mono {
            let mut s = String::new();
            write_monomial(&mut s, alpha, w)?;
            parts.push(s);
        }
        f.write_str(&parts.join("*"))?;
    }
    Ok(())
}
