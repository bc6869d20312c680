//! Braid words and their images in the finite Hecke algebra.
//!
//! `s_i` maps to `T_i` (a positive half twist) and `s_i^{-1}` to
//! `T_i^{-1} = T_i - h`.

use std::fmt;

use crate::coeff::IntPoly;
use crate::dga::{Dga, DgaElt};
use crate::error::{Error, Result};
use crate::hecke::{sphere_word, HeckeElt};
use crate::symgroup::{check_gen, Side};

/// A word in the braid generators; `+i` is `s_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    kappa: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>, kappa: usize) -> Result<Self> {
        for &l in &letters {
            check_gen(l.unsigned_abs() as usize, kappa)?;
        }
        Ok(BraidWord { kappa, letters })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// The formal inverse: reversed, with every sign flipped.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            kappa: self.kappa,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.kappa != other.kappa {
            return Err(Error::KappaMismatch(self.kappa, other.kappa));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            kappa: self.kappa,
            letters,
        })
    }

    /// `s_1 ... s_{k-2} s_{k-1}^2 s_{k-2} ... s_1`.
    pub fn sphere(kappa: usize) -> BraidWord {
        BraidWord {
            kappa,
            letters: sphere_word(kappa).into_iter().map(|i| i as i32).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("s{}'", -l)
                }
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

/// Parses `s1 s2' s1` (prime marks an inverse) or the signed form `1 -2 1`.
pub fn parse_braid(text: &str, kappa: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in text.split_inclusive(char::is_whitespace) {
        let start = offset;
        offset += tok.len();
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let bad = || Error::Syntax {
            offset: start,
            msg: format!("malformed braid token {tok:?}"),
        };
        let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ'));
        let letter: i64 = match body {
            Some(b) => {
                let (digits, inv) = match b.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (b, false),
                };
                if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let i: i64 = digits.parse().map_err(|_| bad())?;
                if inv {
                    -i
                } else {
                    i
                }
            }
            None => tok.parse().map_err(|_| bad())?,
        };
        let max = kappa as i64 - 1;
        if letter == 0 || letter.abs() > max {
            return Err(Error::IndexOutOfRange {
                what: "braid generator",
                index: letter,
                max,
            });
        }
        letters.push(letter as i32);
    }
    Ok(BraidWord { kappa, letters })
}

/// The Hecke image of a braid word.
pub fn eval_braid(b: &BraidWord) -> HeckeElt {
    let k = b.kappa;
    let mut acc = HeckeElt::one(k);
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        let t = acc.mul_gen(i, Side::Right).expect("validated generator");
        acc = if l > 0 {
            t
        } else {
            &t - &acc.scale(&IntPoly::hbar())
        };
    }
    acc
}

/// `eval(s_i) - eval(s_i^{-1}) - h`, which vanishes in the Hecke algebra.
pub fn skein_residue(i: usize, kappa: usize) -> Result<HeckeElt> {
    check_gen(i, kappa)?;
    let pos = eval_braid(&BraidWord::new(vec![i as i32], kappa)?);
    let neg = eval_braid(&BraidWord::new(vec![-(i as i32)], kappa)?);
    Ok(&(&pos - &neg) - &HeckeElt::scalar(IntPoly::hbar(), kappa))
}

/// The defect `eval(sphere word) - c` of the sphere braid relation, checked
/// to equal `d x_1`, so that the relation holds in `H^0`.
pub fn sphere_relation_class(dga: &Dga) -> Result<DgaElt> {
    let k = dga.kappa();
    let defect = &eval_braid(&BraidWord::sphere(k)) - &HeckeElt::scalar(dga.config().c.clone(), k);
    let out = DgaElt::from_hecke(&defect);
    if out != dga.d_generator(1)? {
        return Err(Error::CheckFailed(format!(
            "sphere word minus c is {out}, but d x1 is {}",
            dga.d_generator(1)?
        )));
    }
    Ok(out)
}
