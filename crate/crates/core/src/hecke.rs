//! The finite Hecke algebra of `S_k` over `Z[h]` in the standard basis
//! `T_w`, with quadratic relation `T_i^2 = 1 + h T_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::IntPoly;
use crate::error::{Error, Result};
use crate::format::write_terms;
use crate::symgroup::{check_gen, Perm, Side};

/// A finite `Z[h]`-linear combination of basis elements `T_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    kappa: usize,
    terms: BTreeMap<Perm, IntPoly>,
}

impl HeckeElt {
    pub fn zero(kappa: usize) -> Self {
        HeckeElt {
            kappa,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kappa: usize) -> Self {
        Self::basis(Perm::identity(kappa))
    }

    pub fn basis(w: Perm) -> Self {
        Self::term(w, IntPoly::one())
    }

    pub fn term(w: Perm, c: IntPoly) -> Self {
        let mut h = Self::zero(w.kappa());
        h.add_term(w, c);
        h
    }

    pub fn scalar(c: IntPoly, kappa: usize) -> Self {
        Self::term(Perm::identity(kappa), c)
    }

    /// The generator `T_i`.
    pub fn t(i: usize, kappa: usize) -> Result<Self> {
        Ok(Self::basis(Perm::simple(i, kappa)?))
    }

    /// `T_i^{-1} = T_i - h`.
    pub fn t_inverse(i: usize, kappa: usize) -> Result<Self> {
        let mut h = Self::t(i, kappa)?;
        h.add_term(Perm::identity(kappa), -IntPoly::hbar());
        Ok(h)
    }

    /// The sphere element `T_1 ... T_{k-2} T_{k-1}^2 T_{k-2} ... T_1`
    /// (the empty product `1` when `k = 1`).
    pub fn theta(kappa: usize) -> Self {
        let mut acc = Self::one(kappa);
        for i in sphere_word(kappa).into_iter().rev() {
            acc = acc.mul_gen(i, Side::Left).expect("index in range");
        }
        acc
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &IntPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Perm) -> IntPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Perm, c: IntPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.kappa(), self.kappa);
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HeckeElt, c: &IntPoly) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &IntPoly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.kappa);
        out.add_scaled(self, c);
        out
    }

    /// Multiplication by the generator `T_i` on the given side.
    pub fn mul_gen(&self, i: usize, side: Side) -> Result<HeckeElt> {
        check_gen(i, self.kappa)?;
        let mut out = HeckeElt::zero(self.kappa);
        for (w, c) in &self.terms {
            let sw = w.mul_simple(i, side);
            if w.has_descent(i, side) {
                out.add_term(w.clone(), c * &IntPoly::hbar());
            }
            out.add_term(sw, c.clone());
        }
        Ok(out)
    }

    /// `T_{i_1} ... T_{i_l} * self`.
    pub fn left_mul_word(&self, word: &[usize]) -> Result<HeckeElt> {
        let mut acc = self.clone();
        for &i in word.iter().rev() {
            acc = acc.mul_gen(i, Side::Left)?;
        }
        Ok(acc)
    }

    /// `self * T_{i_1} ... T_{i_l}`.
    pub fn right_mul_word(&self, word: &[usize]) -> Result<HeckeElt> {
        let mut acc = self.clone();
        for &i in word {
            acc = acc.mul_gen(i, Side::Right)?;
        }
        Ok(acc)
    }

    /// The algebra product. Each basis element of the left factor is expanded
    /// along its canonical reduced word and applied generator by generator.
    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        if self.kappa != other.kappa {
            return Err(Error::KappaMismatch(self.kappa, other.kappa));
        }
        let mut out = HeckeElt::zero(self.kappa);
        for (w, c) in &self.terms {
            let prod = other.left_mul_word(&w.reduced_word())?;
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }

    /// Coefficient-wise evaluation at `h = q`.
    pub fn specialize(&self, q: &BigInt) -> HeckeElt {
        let mut out = HeckeElt::zero(self.kappa);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), IntPoly::constant(c.eval_int(q)));
        }
        out
    }
}

/// The letters `1, 2, ..., k-2, k-1, k-1, k-2, ..., 1` of the sphere word.
pub fn sphere_word(kappa: usize) -> Vec<usize> {
    if kappa < 2 {
        return vec![];
    }
    let mut word: Vec<usize> = (1..kappa).collect();
    word.extend((1..kappa).rev());
    word
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &IntPoly::one());
        out
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &IntPoly::from(-1));
        out
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.scale(&IntPoly::from(-1))
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let empty: &[u32] = &[];
        write_terms(f, self.terms.iter().map(|(w, c)| (empty, w, c)))
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElt({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeTermDoc {
    w: Perm,
    coeff: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct HeckeDoc {
    kappa: usize,
    terms: Vec<HeckeTermDoc>,
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HeckeDoc {
            kappa: self.kappa,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| HeckeTermDoc {
                    w: w.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = HeckeDoc::deserialize(d)?;
        let mut h = HeckeElt::zero(doc.kappa);
        for t in doc.terms {
            if t.w.kappa() != doc.kappa {
                return Err(D::Error::custom("permutation size differs from kappa"));
            }
            h.add_term(t.w, t.coeff);
        }
        Ok(h)
    }
}
