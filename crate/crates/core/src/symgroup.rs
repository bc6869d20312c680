//! The symmetric group `S_k` in one-line notation.
//!
//! Position `i` (1-based) of the one-line vector stores `w(i)`. Products are
//! composition of functions, `(u * v)(i) = u(v(i))`, so left multiplication by
//! the simple transposition `s_i` swaps the *values* `i` and `i + 1`, while
//! right multiplication swaps the *positions* `i` and `i + 1`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., k}`. Ordered lexicographically by one-line
/// notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

/// Which side a generator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Perm {
    pub fn identity(kappa: usize) -> Perm {
        assert!(kappa < 256, "strand count too large");
        Perm((1..=kappa as u8).collect())
    }

    pub fn from_oneline(oneline: Vec<usize>) -> Result<Perm> {
        let k = oneline.len();
        let mut seen = vec![false; k + 1];
        for &v in &oneline {
            if v == 0 || v > k || seen[v] || k >= 256 {
                return Err(Error::InvalidPerm(oneline));
            }
            seen[v] = true;
        }
        Ok(Perm(oneline.into_iter().map(|v| v as u8).collect()))
    }

    /// The simple transposition `s_i` of `S_kappa`.
    pub fn simple(i: usize, kappa: usize) -> Result<Perm> {
        check_gen(i, kappa)?;
        let mut p = Perm::identity(kappa);
        p.0.swap(i - 1, i);
        Ok(p)
    }

    pub fn kappa(&self) -> usize {
        self.0.len()
    }

    pub fn oneline(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn compose(&self, v: &Perm) -> Result<Perm> {
        if self.kappa() != v.kappa() {
            return Err(Error::KappaMismatch(self.kappa(), v.kappa()));
        }
        Ok(Perm(v.0.iter().map(|&j| self.0[j as usize - 1]).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.kappa()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Perm(inv)
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut n = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    n += 1;
                }
            }
        }
        n
    }

    fn position(&self, value: usize) -> usize {
        self.0.iter().position(|&v| v as usize == value).unwrap()
    }

    /// True iff `length(s_i w) < length(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position(i + 1) < self.position(i)
    }

    /// True iff `length(w s_i) < length(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    pub fn has_descent(&self, i: usize, side: Side) -> bool {
        match side {
            Side::Left => self.has_left_descent(i),
            Side::Right => self.has_right_descent(i),
        }
    }

    /// `s_i w` (side = left) or `w s_i` (side = right).
    pub fn mul_simple(&self, i: usize, side: Side) -> Perm {
        let mut out = self.0.clone();
        match side {
            Side::Left => {
                for v in out.iter_mut() {
                    if *v as usize == i {
                        *v += 1;
                    } else if *v as usize == i + 1 {
                        *v -= 1;
                    }
                }
            }
            Side::Right => out.swap(i - 1, i),
        }
        Perm(out)
    }

    /// The lexicographically smallest reduced word `[i_1, ..., i_l]` with
    /// `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let i = (1..w.kappa())
                .find(|&i| w.has_left_descent(i))
                .expect("non-identity permutation has a left descent");
            word.push(i);
            w = w.mul_simple(i, Side::Left);
        }
        word
    }

    /// Product `s_{i_1} ... s_{i_l}` of a word in simple transpositions.
    pub fn from_word(word: &[usize], kappa: usize) -> Result<Perm> {
        let mut w = Perm::identity(kappa);
        for &i in word.iter().rev() {
            check_gen(i, kappa)?;
            w = w.mul_simple(i, Side::Left);
        }
        Ok(w)
    }

    /// All of `S_kappa` in lexicographic order of one-line notation.
    pub fn all(kappa: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=kappa as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

pub(crate) fn check_gen(i: usize, kappa: usize) -> Result<()> {
    if i == 0 || i + 1 > kappa {
        return Err(Error::IndexOutOfRange {
            what: "generator",
            index: i as i64,
            max: kappa as i64 - 1,
        });
    }
    Ok(())
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.oneline())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.oneline().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Perm::from_oneline(Vec::<usize>::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_oneline(v.to_vec()).unwrap()
    }

    /// Every reduced word of `w`, by depth-first search over left descents.
    fn all_reduced_words(w: &Perm) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![vec![]];
        }
        let mut out = vec![];
        for i in 1..w.kappa() {
            if w.has_left_descent(i) {
                for mut rest in all_reduced_words(&w.mul_simple(i, Side::Left)) {
                    rest.insert(0, i);
                    out.push(rest);
                }
            }
        }
        out
    }

    #[test]
    fn compose_examples() {
        let s1 = Perm::simple(1, 2).unwrap();
        assert_eq!(s1.compose(&s1).unwrap(), Perm::identity(2));
        let s1 = Perm::simple(1, 3).unwrap();
        let s2 = Perm::simple(2, 3).unwrap();
        assert_eq!(s1.compose(&s2).unwrap(), p(&[2, 3, 1]));
        let w = p(&[3, 1, 2]);
        assert_eq!(w.compose(&Perm::identity(3)).unwrap(), w);
        assert!(matches!(
            w.compose(&Perm::identity(2)),
            Err(Error::KappaMismatch(3, 2))
        ));
    }

    #[test]
    fn length_examples() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(Perm::simple(1, 3).unwrap().length(), 1);
        assert_eq!(p(&[3, 2, 1]).length(), 3);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Perm::identity(3).reduced_word().is_empty());
        // s2 s1 = [3,1,2]; its only reduced word is [2,1]
        let w = p(&[3, 1, 2]);
        assert_eq!(all_reduced_words(&w), vec![vec![2, 1]]);
        assert_eq!(w.reduced_word(), vec![2, 1]);
        let w0 = p(&[3, 2, 1]);
        let mut words = all_reduced_words(&w0);
        words.sort();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn reduced_word_is_lex_min_and_recovers() {
        for k in 1..=5 {
            for w in Perm::all(k) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Perm::from_word(&word, k).unwrap(), w);
                let min = all_reduced_words(&w).into_iter().min().unwrap();
                assert_eq!(word, min);
            }
        }
    }

    #[test]
    fn length_laws() {
        for k in 1..=4 {
            let all = Perm::all(k);
            assert_eq!(all.len(), (1..=k).product::<usize>());
            for u in &all {
                for i in 1..k {
                    for side in [Side::Left, Side::Right] {
                        let l = u.mul_simple(i, side).length();
                        assert!(l == u.length() + 1 || l + 1 == u.length());
                        assert_eq!(l < u.length(), u.has_descent(i, side));
                    }
                }
                for v in &all {
                    let uv = u.compose(v).unwrap();
                    assert!(uv.length() <= u.length() + v.length());
                    let mut cat = u.reduced_word();
                    cat.extend(v.reduced_word());
                    let reduced = cat.len() == Perm::from_word(&cat, k).unwrap().length();
                    assert_eq!(uv.length() == u.length() + v.length(), reduced);
                }
            }
        }
    }

    #[test]
    fn simple_matches_convention() {
        let w = p(&[2, 3, 1]);
        let s1 = Perm::simple(1, 3).unwrap();
        assert_eq!(w.mul_simple(1, Side::Left), s1.compose(&w).unwrap());
        assert_eq!(w.mul_simple(1, Side::Right), w.compose(&s1).unwrap());
        assert!(Perm::simple(3, 3).is_err());
        assert!(Perm::from_oneline(vec![1, 1]).is_err());
    }

    #[test]
    fn json_is_one_based() {
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        assert!(serde_json::from_str::<Perm>("[0,1]").is_err());
    }
}
