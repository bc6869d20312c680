//! The dga `H_k(c)`: generators `T_1, ..., T_{k-1}` of degree 0 and `x_1` of
//! degree -1, with derived generators `x_{j+1} = T_j^{-1} x_j T_j^{-1}`.
//!
//! Every element is kept in PBW normal form, a `Z[h]`-combination of
//! monomials `x_1^{a_1} ... x_k^{a_k} T_w`. Products are computed by folding
//! the right factor into the left one generator at a time:
//!
//! * `T_i` and `T_i^{-1}` act on the Hecke part directly;
//! * `x_j` is first moved left across `T_w` ([`Dga::pull`]), which yields a
//!   sum of `x_m h_m` with `h_m` in the finite Hecke algebra, and is then
//!   merged into the ordered x-monomial ([`Dga::insert`]) using
//!   `x_k x_j = -x_j x_k B_{jk}` for `j < k`.
//!
//! The differential is `d T_i = 0`, `d x_1 = Theta - c`, extended by the
//! graded Leibniz rule `d(ab) = d(a) b + (-1)^{|a|} a d(b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::IntPoly;
use crate::error::{Error, Result};
use crate::format::{cmp_alpha, write_terms};
use crate::hecke::HeckeElt;
use crate::symgroup::{check_gen, Perm, Side};

/// The PBW monomial `x^alpha T_w`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PbwMono {
    pub alpha: Vec<u32>,
    pub w: Perm,
}

impl PbwMono {
    pub fn new(alpha: Vec<u32>, w: Perm) -> Self {
        debug_assert_eq!(alpha.len(), w.kappa());
        PbwMono { alpha, w }
    }

    pub fn identity(kappa: usize) -> Self {
        PbwMono::new(vec![0; kappa], Perm::identity(kappa))
    }

    /// Number of x letters, `|alpha|`.
    pub fn x_degree(&self) -> usize {
        self.alpha.iter().map(|&a| a as usize).sum()
    }

    /// Cohomological degree `-|alpha|`.
    pub fn degree(&self) -> i64 {
        -(self.x_degree() as i64)
    }

    /// The x letters in nondecreasing index order, 1-based.
    pub fn x_letters(&self) -> Vec<usize> {
        alpha_letters(&self.alpha)
    }
}

fn alpha_letters(alpha: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, &a) in alpha.iter().enumerate() {
        out.extend(std::iter::repeat_n(j + 1, a as usize));
    }
    out
}

impl Ord for PbwMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x_degree()
            .cmp(&other.x_degree())
            .then_with(|| cmp_alpha(&self.alpha, &other.alpha))
            .then_with(|| self.w.cmp(&other.w))
    }
}

impl PartialOrd for PbwMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        crate::format::write_monomial(&mut s, &self.alpha, &self.w)?;
        f.write_str(&s)
    }
}

/// An element of `H_k` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DgaElt {
    kappa: usize,
    terms: BTreeMap<PbwMono, IntPoly>,
}

impl DgaElt {
    pub fn zero(kappa: usize) -> Self {
        DgaElt {
            kappa,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(kappa: usize) -> Self {
        Self::mono(PbwMono::identity(kappa), IntPoly::one())
    }

    pub fn mono(m: PbwMono, c: IntPoly) -> Self {
        let mut e = Self::zero(m.w.kappa());
        e.add_term(m, c);
        e
    }

    pub fn scalar(c: IntPoly, kappa: usize) -> Self {
        Self::mono(PbwMono::identity(kappa), c)
    }

    /// The basis monomial `x_j`.
    pub fn x(j: usize, kappa: usize) -> Result<Self> {
        check_x(j, kappa)?;
        let mut alpha = vec![0; kappa];
        alpha[j - 1] = 1;
        Ok(Self::mono(
            PbwMono::new(alpha, Perm::identity(kappa)),
            IntPoly::one(),
        ))
    }

    pub fn from_hecke(h: &HeckeElt) -> Self {
        let k = h.kappa();
        let mut e = Self::zero(k);
        for (w, c) in h.terms() {
            e.add_term(PbwMono::new(vec![0; k], w.clone()), c.clone());
        }
        e
    }

    /// The degree-0 part as a Hecke element.
    pub fn hecke_part(&self) -> HeckeElt {
        let mut h = HeckeElt::zero(self.kappa);
        for (m, c) in &self.terms {
            if m.x_degree() == 0 {
                h.add_term(m.w.clone(), c.clone());
            }
        }
        h
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMono, &IntPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMono) -> IntPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: PbwMono, c: IntPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, other: &DgaElt, c: &IntPoly) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            let v = if c.is_one() { a.clone() } else { a * c };
            self.add_term(m.clone(), v);
        }
    }

    pub fn scale(&self, c: &IntPoly) -> DgaElt {
        let mut out = DgaElt::zero(self.kappa);
        out.add_scaled(self, c);
        out
    }

    /// The common cohomological degree of all terms, `None` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut degs = self.terms.keys().map(PbwMono::degree);
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    /// Component of x-degree `s`.
    pub fn homogeneous_part(&self, s: usize) -> DgaElt {
        let mut out = DgaElt::zero(self.kappa);
        for (m, c) in &self.terms {
            if m.x_degree() == s {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient-wise evaluation at `h = q`.
    pub fn specialize(&self, q: &BigInt) -> DgaElt {
        let mut out = DgaElt::zero(self.kappa);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), IntPoly::constant(c.eval_int(q)));
        }
        out
    }

    /// Right multiplication by a Hecke element; only the `T_w` parts change.
    pub fn right_mul_hecke(&self, h: &HeckeElt) -> DgaElt {
        let mut out = DgaElt::zero(self.kappa);
        for (alpha, g) in self.alpha_groups() {
            out.add_hecke_part(alpha, &g.mul(h).expect("same strand count"));
        }
        out
    }

    /// The terms grouped by x-monomial: `sum_alpha x^alpha g_alpha` with
    /// `g_alpha` in the finite Hecke algebra.
    pub(crate) fn alpha_groups(&self) -> Vec<(&[u32], HeckeElt)> {
        let mut out: Vec<(&[u32], HeckeElt)> = Vec::new();
        for (m, c) in &self.terms {
            match out.last_mut() {
                Some((a, g)) if *a == m.alpha.as_slice() => g.add_term(m.w.clone(), c.clone()),
                _ => out.push((&m.alpha, HeckeElt::term(m.w.clone(), c.clone()))),
            }
        }
        out
    }

    /// Adds `x^alpha g`.
    pub(crate) fn add_hecke_part(&mut self, alpha: &[u32], g: &HeckeElt) {
        for (w, c) in g.terms() {
            self.add_term(PbwMono::new(alpha.to_vec(), w.clone()), c.clone());
        }
    }

    fn right_mul_gen(&self, i: usize) -> DgaElt {
        let mut out = DgaElt::zero(self.kappa);
        for (m, c) in &self.terms {
            if m.w.has_right_descent(i) {
                out.add_term(m.clone(), c * &IntPoly::hbar());
            }
            out.add_term(
                PbwMono::new(m.alpha.clone(), m.w.mul_simple(i, Side::Right)),
                c.clone(),
            );
        }
        out
    }

    /// Rewrites the element as a sum of generator words, one per term.
    pub fn to_words(&self) -> Vec<GenWord> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut letters: Vec<Letter> = m.x_letters().into_iter().map(Letter::X).collect();
                letters.extend(m.w.reduced_word().into_iter().map(Letter::T));
                GenWord::new(c.clone(), letters)
            })
            .collect()
    }
}

impl Add for &DgaElt {
    type Output = DgaElt;
    fn add(self, rhs: &DgaElt) -> DgaElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &IntPoly::one());
        out
    }
}

impl Sub for &DgaElt {
    type Output = DgaElt;
    fn sub(self, rhs: &DgaElt) -> DgaElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &IntPoly::from(-1));
        out
    }
}

impl Neg for &DgaElt {
    type Output = DgaElt;
    fn neg(self) -> DgaElt {
        self.scale(&IntPoly::from(-1))
    }
}

impl fmt::Display for DgaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .map(|(m, c)| (m.alpha.as_slice(), &m.w, c)),
        )
    }
}

impl fmt::Debug for DgaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DgaElt({self})")
    }
}

/// A generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    T(usize),
    Tinv(usize),
    X(usize),
}

/// A scalar times a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenWord {
    pub prefactor: IntPoly,
    pub letters: Vec<Letter>,
}

impl GenWord {
    pub fn new(prefactor: IntPoly, letters: Vec<Letter>) -> Self {
        GenWord { prefactor, letters }
    }

    pub fn word(letters: &[Letter]) -> Self {
        GenWord::new(IntPoly::one(), letters.to_vec())
    }
}

/// Strand count and central parameter of `H_k(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaConfig {
    pub kappa: usize,
    pub c: IntPoly,
}

impl DgaConfig {
    /// `H_k` itself, i.e. `c = 1`.
    pub fn new(kappa: usize) -> Result<Self> {
        Self::with_c(kappa, IntPoly::one())
    }

    pub fn with_c(kappa: usize, c: IntPoly) -> Result<Self> {
        if kappa == 0 || kappa > 32 {
            return Err(Error::InvalidConfig(format!(
                "strand count {kappa} outside 1..=32"
            )));
        }
        if c.is_zero() {
            return Err(Error::InvalidConfig("central parameter c is zero".into()));
        }
        Ok(DgaConfig { kappa, c })
    }
}

/// Number of PBW monomials of x-degree `s`: `k! * C(s + k - 1, k - 1)`.
pub fn pbw_count(kappa: usize, s: usize) -> u128 {
    let fact: u128 = (1..=kappa as u128).product();
    let mut binom: u128 = 1;
    for i in 0..(kappa as u128 - 1) {
        binom = binom * (s as u128 + 1 + i) / (i + 1);
    }
    fact * binom
}

type PullResult = Arc<Vec<(usize, HeckeElt)>>;
type InsertCache = HashMap<(Vec<u32>, usize), Arc<DgaElt>>;

/// A configured `H_k(c)` together with its memo caches.
///
/// The caches sit behind locks, so a `Dga` can be shared across threads.
/// They never change results.
pub struct Dga {
    cfg: DgaConfig,
    dgen: Vec<HeckeElt>,
    bjk: HashMap<(usize, usize), HeckeElt>,
    pull_cache: RwLock<HashMap<(Perm, usize), PullResult>>,
    insert_cache: RwLock<InsertCache>,
}

// Guard against a non-terminating rewrite; far above any depth seen in practice.
const MAX_DEPTH: usize = 10_000;

impl Dga {
    pub fn new(cfg: DgaConfig) -> Self {
        let k = cfg.kappa;
        let mut dgen = Vec::with_capacity(k);
        let mut dx = &HeckeElt::theta(k) - &HeckeElt::scalar(cfg.c.clone(), k);
        dgen.push(dx.clone());
        for j in 1..k {
            let tinv = HeckeElt::t_inverse(j, k).unwrap();
            dx = tinv.mul(&dx).unwrap().mul(&tinv).unwrap();
            dgen.push(dx.clone());
        }
        let mut bjk = HashMap::new();
        for kk in 2..=k {
            for j in 1..kk {
                bjk.insert((j, kk), anticommutator_factor(j, kk, k));
            }
        }
        Dga {
            cfg,
            dgen,
            bjk,
            pull_cache: RwLock::new(HashMap::new()),
            insert_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &DgaConfig {
        &self.cfg
    }

    pub fn kappa(&self) -> usize {
        self.cfg.kappa
    }

    /// The Hecke element `B_{jk}` with `x_k x_j = -x_j x_k B_{jk}`, `j < k`.
    pub fn anticommutator_factor(&self, j: usize, k: usize) -> Result<&HeckeElt> {
        self.bjk.get(&(j, k)).ok_or(Error::IndexOutOfRange {
            what: "x",
            index: k as i64,
            max: self.kappa() as i64,
        })
    }

    /// `T_w x_j` as a list of `(m, h_m)` with `T_w x_j = sum x_m h_m`.
    pub fn pull(&self, w: &Perm, j: usize) -> Result<PullResult> {
        check_x(j, self.kappa())?;
        if w.kappa() != self.kappa() {
            return Err(Error::KappaMismatch(w.kappa(), self.kappa()));
        }
        Ok(self.pull_cached(w, j))
    }

    fn pull_cached(&self, w: &Perm, j: usize) -> PullResult {
        let key = (w.clone(), j);
        if let Some(r) = self.pull_cache.read().unwrap().get(&key) {
            return r.clone();
        }
        let res = if w.is_identity() {
            Arc::new(vec![(j, HeckeElt::one(self.kappa()))])
        } else {
            let i = w.reduced_word()[0];
            let rest = self.pull_cached(&w.mul_simple(i, Side::Left), j);
            Arc::new(pull_step(i, &rest))
        };
        self.pull_cache.write().unwrap().insert(key, res.clone());
        res
    }

    /// `T_{i_1} ... T_{i_l} x_j` along an explicit word, without caching.
    pub fn pull_word(&self, word: &[usize], j: usize) -> Result<Vec<(usize, HeckeElt)>> {
        check_x(j, self.kappa())?;
        let mut acc = vec![(j, HeckeElt::one(self.kappa()))];
        for &i in word.iter().rev() {
            check_gen(i, self.kappa())?;
            acc = pull_step(i, &acc);
        }
        Ok(acc)
    }

    /// Normal form of `x^alpha x_m`.
    pub fn insert(&self, alpha: &[u32], m: usize) -> Result<Arc<DgaElt>> {
        check_x(m, self.kappa())?;
        if alpha.len() != self.kappa() {
            return Err(Error::KappaMismatch(alpha.len(), self.kappa()));
        }
        Ok(self.insert_inner(alpha, m, 0))
    }

    fn insert_inner(&self, alpha: &[u32], m: usize, depth: usize) -> Arc<DgaElt> {
        assert!(depth < MAX_DEPTH, "PBW rewriting did not terminate");
        let key = (alpha.to_vec(), m);
        if let Some(r) = self.insert_cache.read().unwrap().get(&key) {
            return r.clone();
        }
        let top = alpha.iter().rposition(|&a| a > 0).map(|p| p + 1);
        let res = match top {
            Some(k) if m < k => {
                // x^alpha x_m = x^{alpha'} x_k x_m = -x^{alpha'} x_m x_k B_{mk}
                let mut rest = alpha.to_vec();
                rest[k - 1] -= 1;
                let head = self.insert_inner(&rest, m, depth + 1);
                let with_k = self.mul_x_inner(&head, k, depth + 1);
                -&with_k.right_mul_hecke(&self.bjk[&(m, k)])
            }
            _ => {
                let mut a = alpha.to_vec();
                a[m - 1] += 1;
                DgaElt::mono(
                    PbwMono::new(a, Perm::identity(self.kappa())),
                    IntPoly::one(),
                )
            }
        };
        let res = Arc::new(res);
        self.insert_cache.write().unwrap().insert(key, res.clone());
        res
    }

    /// `a * x_j`.
    pub fn mul_x(&self, a: &DgaElt, j: usize) -> Result<DgaElt> {
        check_x(j, self.kappa())?;
        Ok(self.mul_x_inner(a, j, 0))
    }

    fn mul_x_inner(&self, a: &DgaElt, j: usize, depth: usize) -> DgaElt {
        let k = self.kappa();
        let mut out = DgaElt::zero(k);
        for (alpha, g) in a.alpha_groups() {
            // g x_j = sum_m x_m h_m
            let mut hm: BTreeMap<usize, HeckeElt> = BTreeMap::new();
            for (w, c) in g.terms() {
                for (m, h) in self.pull_cached(w, j).iter() {
                    hm.entry(*m)
                        .or_insert_with(|| HeckeElt::zero(k))
                        .add_scaled(h, c);
                }
            }
            for (m, h) in hm {
                if h.is_zero() {
                    continue;
                }
                let ins = self.insert_inner(alpha, m, depth + 1);
                for (beta, g2) in ins.alpha_groups() {
                    out.add_hecke_part(beta, &g2.mul(&h).unwrap());
                }
            }
        }
        out
    }

    fn apply_letter(&self, acc: &DgaElt, letter: Letter) -> Result<DgaElt> {
        let k = self.kappa();
        Ok(match letter {
            Letter::T(i) => {
                check_gen(i, k)?;
                acc.right_mul_gen(i)
            }
            Letter::Tinv(i) => {
                check_gen(i, k)?;
                let mut out = acc.right_mul_gen(i);
                out.add_scaled(acc, &-IntPoly::hbar());
                out
            }
            Letter::X(j) => self.mul_x(acc, j)?,
        })
    }

    /// `acc * word`, folding letter by letter.
    pub fn right_mul_word(&self, acc: &DgaElt, letters: &[Letter]) -> Result<DgaElt> {
        let mut acc = acc.clone();
        for &l in letters {
            acc = self.apply_letter(&acc, l)?;
        }
        Ok(acc)
    }

    /// The unique PBW expansion of a generator word.
    pub fn normal_form(&self, word: &GenWord) -> Result<DgaElt> {
        let start = DgaElt::scalar(word.prefactor.clone(), self.kappa());
        self.right_mul_word(&start, &word.letters)
    }

    /// Normal form of a sum of words.
    pub fn normal_form_sum(&self, words: &[GenWord]) -> Result<DgaElt> {
        let mut out = DgaElt::zero(self.kappa());
        for w in words {
            out.add_scaled(&self.normal_form(w)?, &IntPoly::one());
        }
        Ok(out)
    }

    /// The dga product `a * b`.
    pub fn mul(&self, a: &DgaElt, b: &DgaElt) -> Result<DgaElt> {
        for e in [a, b] {
            if e.kappa() != self.kappa() {
                return Err(Error::KappaMismatch(e.kappa(), self.kappa()));
            }
        }
        let mut out = DgaElt::zero(self.kappa());
        for (gamma, g) in b.alpha_groups() {
            let mut t = a.clone();
            for j in alpha_letters(gamma) {
                t = self.mul_x_inner(&t, j, 0);
            }
            out.add_scaled(&t.right_mul_hecke(&g), &IntPoly::one());
        }
        Ok(out)
    }

    /// `d x_k` as a Hecke element: `Theta - c` for `k = 1`, then
    /// `T_{k-1}^{-1} (d x_{k-1}) T_{k-1}^{-1}`.
    pub fn d_generator_hecke(&self, k: usize) -> Result<&HeckeElt> {
        check_x(k, self.kappa())?;
        Ok(&self.dgen[k - 1])
    }

    pub fn d_generator(&self, k: usize) -> Result<DgaElt> {
        Ok(DgaElt::from_hecke(self.d_generator_hecke(k)?))
    }

    /// The differential, by the Leibniz rule over each monomial's x letters.
    pub fn differential(&self, a: &DgaElt) -> DgaElt {
        let k = self.kappa();
        let mut out = DgaElt::zero(k);
        for (mono, c) in a.terms() {
            let letters = mono.x_letters();
            let tw = HeckeElt::basis(mono.w.clone());
            for p in 0..letters.len() {
                let mut prefix = vec![0u32; k];
                for &j in &letters[..p] {
                    prefix[j - 1] += 1;
                }
                let mut t = DgaElt::mono(PbwMono::new(prefix, Perm::identity(k)), IntPoly::one())
                    .right_mul_hecke(&self.dgen[letters[p] - 1]);
                for &j in &letters[p + 1..] {
                    t = self.mul_x_inner(&t, j, 0);
                }
                if !mono.w.is_identity() {
                    t = t.right_mul_hecke(&tw);
                }
                let sign = if p % 2 == 0 { c.clone() } else { -c };
                out.add_scaled(&t, &sign);
            }
        }
        out
    }

    /// The differential of a word computed letter by letter with the Leibniz
    /// rule, without first bringing the word to normal form.
    pub fn differential_word(&self, word: &GenWord) -> Result<DgaElt> {
        let k = self.kappa();
        let mut out = DgaElt::zero(k);
        let mut prefix = DgaElt::scalar(word.prefactor.clone(), k);
        let mut sign = IntPoly::one();
        for (p, &l) in word.letters.iter().enumerate() {
            if let Letter::X(j) = l {
                check_x(j, k)?;
                let t = prefix.right_mul_hecke(&self.dgen[j - 1]);
                let t = self.right_mul_word(&t, &word.letters[p + 1..])?;
                out.add_scaled(&t, &sign);
                sign = -sign;
            }
            prefix = self.apply_letter(&prefix, l)?;
        }
        Ok(out)
    }

    /// Residues `LHS - RHS` of every defining and derived relation, plus the
    /// compatibility of `d` with the relations. All must vanish.
    pub fn relation_suite(&self) -> Result<Vec<(String, DgaElt)>> {
        use Letter::*;
        let k = self.kappa();
        let h = IntPoly::hbar;
        let w = |c: IntPoly, l: Vec<Letter>| GenWord::new(c, l);
        let one = IntPoly::one;
        let neg = || IntPoly::from(-1);
        let mut out = Vec::new();
        let mut push = |name: String, words: Vec<GenWord>| -> Result<()> {
            let r = self.normal_form_sum(&words)?;
            out.push((name, r));
            Ok(())
        };

        for i in 1..k {
            push(
                format!("T{i}^2 = 1 + h*T{i}"),
                vec![
                    w(one(), vec![T(i), T(i)]),
                    w(neg(), vec![]),
                    w(-h(), vec![T(i)]),
                ],
            )?;
        }
        for i in 1..k.saturating_sub(1) {
            push(
                format!("T{i}*T{}*T{i} = T{}*T{i}*T{}", i + 1, i + 1, i + 1),
                vec![
                    w(one(), vec![T(i), T(i + 1), T(i)]),
                    w(neg(), vec![T(i + 1), T(i), T(i + 1)]),
                ],
            )?;
        }
        for i in 1..k {
            for j in i + 2..k {
                push(
                    format!("T{i}*T{j} = T{j}*T{i}"),
                    vec![w(one(), vec![T(i), T(j)]), w(neg(), vec![T(j), T(i)])],
                )?;
            }
        }
        for j in 2..k {
            push(
                format!("x1*T{j} = T{j}*x1"),
                vec![w(one(), vec![X(1), T(j)]), w(neg(), vec![T(j), X(1)])],
            )?;
        }
        let eq5 = if k >= 2 {
            vec![
                w(one(), vec![Tinv(1), X(1), Tinv(1), X(1)]),
                w(one(), vec![X(1), Tinv(1), X(1), T(1)]),
            ]
        } else {
            vec![]
        };
        if k >= 2 {
            push("T1^-1*x1*T1^-1*x1 + x1*T1^-1*x1*T1 = 0".into(), eq5.clone())?;
        }

        // derived relations, with every x_j spelled through x_1
        for j in 1..k {
            let mut rhs = vec![Tinv(j)];
            rhs.extend(x_via_x1(j));
            rhs.push(Tinv(j));
            push(
                format!("x{} = T{j}^-1*x{j}*T{j}^-1", j + 1),
                vec![w(one(), vec![X(j + 1)]), w(neg(), rhs)],
            )?;
        }
        for j in 1..k {
            let xj = x_via_x1(j);
            let xj1 = x_via_x1(j + 1);
            push(
                format!("T{j}*x{j} = x{}*T{j} + h*x{j}", j + 1),
                vec![
                    w(one(), [vec![T(j)], xj.clone()].concat()),
                    w(neg(), [xj1.clone(), vec![T(j)]].concat()),
                    w(-h(), xj.clone()),
                ],
            )?;
            push(
                format!("T{j}*x{} = x{j}*T{j} - h*x{j}", j + 1),
                vec![
                    w(one(), [vec![T(j)], xj1.clone()].concat()),
                    w(neg(), [xj.clone(), vec![T(j)]].concat()),
                    w(h(), xj.clone()),
                ],
            )?;
            for m in 1..=k {
                if m != j && m != j + 1 {
                    let xm = x_via_x1(m);
                    push(
                        format!("T{j}*x{m} = x{m}*T{j}"),
                        vec![
                            w(one(), [vec![T(j)], xm.clone()].concat()),
                            w(neg(), [xm, vec![T(j)]].concat()),
                        ],
                    )?;
                }
            }
        }
        for kk in 2..=k {
            for j in 1..kk {
                let xj = x_via_x1(j);
                let xk = x_via_x1(kk);
                let mut second = [xj.clone(), xk.clone()].concat();
                second.extend(anticommutator_word(j, kk));
                push(
                    format!("x{kk}*x{j} + x{j}*x{kk}*B{j}{kk} = 0"),
                    vec![w(one(), [xk, xj].concat()), w(one(), second)],
                )?;
            }
        }

        // d respects the relations
        for j in 2..k {
            let r = &self.differential_word(&w(one(), vec![X(1), T(j)]))?
                - &self.differential_word(&w(one(), vec![T(j), X(1)]))?;
            out.push((format!("d(x1*T{j}) - d(T{j}*x1)"), r));
        }
        if k >= 2 {
            let mut r = DgaElt::zero(k);
            for word in &eq5 {
                r.add_scaled(&self.differential_word(word)?, &one());
            }
            out.push(("d(T1^-1*x1*T1^-1*x1 + x1*T1^-1*x1*T1)".into(), r));
        }
        for j in 1..k {
            let r = &self.differential_word(&w(one(), x_via_x1(j + 1)))?
                - &self.differential(&DgaElt::x(j + 1, k)?);
            out.push((format!("d(x{}) via x1 word", j + 1), r));
        }
        Ok(out)
    }
}

/// One letter of `pull`: given `T_{rest} x_j = sum x_m h_m`, returns
/// `T_i T_{rest} x_j` in the same form.
fn pull_step(i: usize, rest: &[(usize, HeckeElt)]) -> Vec<(usize, HeckeElt)> {
    let mut acc: BTreeMap<usize, HeckeElt> = BTreeMap::new();
    let mut add = |m: usize, h: HeckeElt| {
        let k = h.kappa();
        let slot = acc.entry(m).or_insert_with(|| HeckeElt::zero(k));
        slot.add_scaled(&h, &IntPoly::one());
    };
    for (m, h) in rest {
        let th = h.mul_gen(i, Side::Left).unwrap();
        if *m == i {
            // T_i x_i = x_{i+1} T_i + h x_i
            add(i + 1, th);
            add(i, h.scale(&IntPoly::hbar()));
        } else if *m == i + 1 {
            // T_i x_{i+1} = x_i T_i - h x_i
            add(i, th);
            add(i, h.scale(&-IntPoly::hbar()));
        } else {
            add(*m, th);
        }
    }
    acc.into_iter().filter(|(_, h)| !h.is_zero()).collect()
}

/// Letters of `(T_{j-1}..T_1)(T_{k-1}..T_2) T_1^2 (T_2^-1..T_{k-1}^-1)(T_1^-1..T_{j-1}^-1)`.
fn anticommutator_word(j: usize, k: usize) -> Vec<Letter> {
    let mut word: Vec<Letter> = (1..j).rev().map(Letter::T).collect();
    word.extend((2..k).rev().map(Letter::T));
    word.extend([Letter::T(1), Letter::T(1)]);
    word.extend((2..k).map(Letter::Tinv));
    word.extend((1..j).map(Letter::Tinv));
    word
}

fn anticommutator_factor(j: usize, k: usize, kappa: usize) -> HeckeElt {
    let mut h = HeckeElt::one(kappa);
    for l in anticommutator_word(j, k) {
        h = match l {
            Letter::T(i) => h.mul_gen(i, Side::Right).unwrap(),
            Letter::Tinv(i) => h.mul(&HeckeElt::t_inverse(i, kappa).unwrap()).unwrap(),
            Letter::X(_) => unreachable!(),
        };
    }
    h
}

/// `x_j` spelled through `x_1`: `T_{j-1}^-1 .. T_1^-1 x_1 T_1^-1 .. T_{j-1}^-1`.
pub fn x_via_x1(j: usize) -> Vec<Letter> {
    let mut word: Vec<Letter> = (1..j).rev().map(Letter::Tinv).collect();
    word.push(Letter::X(1));
    word.extend((1..j).map(Letter::Tinv));
    word
}

fn check_x(j: usize, kappa: usize) -> Result<()> {
    if j == 0 || j > kappa {
        return Err(Error::IndexOutOfRange {
            what: "x",
            index: j as i64,
            max: kappa as i64,
        });
    }
    Ok(())
}

/// Serialized form of an element together with its configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaEltDoc {
    pub kappa: usize,
    pub c: IntPoly,
    pub terms: Vec<DgaTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaTermDoc {
    pub alpha: Vec<u32>,
    pub w: Perm,
    pub coeff: IntPoly,
}

impl DgaEltDoc {
    pub fn new(e: &DgaElt, cfg: &DgaConfig) -> Self {
        DgaEltDoc {
            kappa: cfg.kappa,
            c: cfg.c.clone(),
            terms: e
                .terms()
                .map(|(m, c)| DgaTermDoc {
                    alpha: m.alpha.clone(),
                    w: m.w.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn into_elt(self) -> Result<(DgaElt, DgaConfig)> {
        let cfg = DgaConfig::with_c(self.kappa, self.c)?;
        let mut e = DgaElt::zero(cfg.kappa);
        for t in self.terms {
            if t.alpha.len() != cfg.kappa || t.w.kappa() != cfg.kappa {
                return Err(Error::KappaMismatch(t.alpha.len(), cfg.kappa));
            }
            e.add_term(PbwMono::new(t.alpha, t.w), t.coeff);
        }
        Ok((e, cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Letter::*;

    fn h() -> IntPoly {
        IntPoly::hbar()
    }

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn dga(k: usize) -> Dga {
        Dga::new(DgaConfig::new(k).unwrap())
    }

    fn mono(alpha: &[u32], word: &[usize]) -> PbwMono {
        PbwMono::new(alpha.to_vec(), Perm::from_word(word, alpha.len()).unwrap())
    }

    fn elt(k: usize, terms: &[(&[u32], &[usize], IntPoly)]) -> DgaElt {
        let mut e = DgaElt::zero(k);
        for (a, wd, c) in terms {
            assert_eq!(a.len(), k);
            e.add_term(mono(a, wd), c.clone());
        }
        e
    }

    fn nf(d: &Dga, letters: &[Letter]) -> DgaElt {
        d.normal_form(&GenWord::word(letters)).unwrap()
    }

    #[test]
    fn pull_examples() {
        let d = dga(2);
        let s1 = Perm::simple(1, 2).unwrap();
        let r = d.pull(&s1, 1).unwrap();
        assert_eq!(
            *r,
            vec![
                (1, HeckeElt::scalar(h(), 2)),
                (2, HeckeElt::t(1, 2).unwrap())
            ]
        );
        let r = d.pull(&s1, 2).unwrap();
        assert_eq!(*r, vec![(1, HeckeElt::t_inverse(1, 2).unwrap())]);
        let d3 = dga(3);
        let r = d3.pull(&Perm::identity(3), 3).unwrap();
        assert_eq!(*r, vec![(3, HeckeElt::one(3))]);
        assert!(d3.pull(&Perm::identity(3), 4).is_err());
    }

    #[test]
    fn insert_examples() {
        let d = dga(2);
        let r = d.insert(&[0, 1], 1).unwrap();
        let expect = elt(2, &[(&[1, 1], &[], p(&[-1])), (&[1, 1], &[1], p(&[0, -1]))]);
        assert_eq!(*r, expect);
        let r = d.insert(&[1, 0], 2).unwrap();
        assert_eq!(*r, elt(2, &[(&[1, 1], &[], p(&[1]))]));

        // x3 x1 = -x1 x3 B13 with B13 = T2 T1^2 T2^-1
        let d = dga(3);
        let b13 = HeckeElt::t(2, 3)
            .unwrap()
            .mul(&HeckeElt::t(1, 3).unwrap())
            .unwrap()
            .mul(&HeckeElt::t(1, 3).unwrap())
            .unwrap()
            .mul(&HeckeElt::t_inverse(2, 3).unwrap())
            .unwrap();
        let mut expect = DgaElt::zero(3);
        for (w, c) in b13.terms() {
            expect.add_term(PbwMono::new(vec![1, 0, 1], w.clone()), -c);
        }
        assert_eq!(*d.insert(&[0, 0, 1], 1).unwrap(), expect);
        // by hand: T2 (1 + h T1) T2^-1 = 1 + h T2 T1 T2 - h^2 T2 T1
        let mut hand = HeckeElt::one(3);
        hand.add_term(Perm::from_word(&[2, 1, 2], 3).unwrap(), h());
        hand.add_term(Perm::from_word(&[2, 1], 3).unwrap(), p(&[0, 0, -1]));
        assert_eq!(b13, hand);
    }

    #[test]
    fn normal_form_examples() {
        let d = dga(2);
        // T1 x1 T1 = x2 + h x2 T1 + h x1 T1
        let expect = elt(
            2,
            &[
                (&[0, 1], &[], p(&[1])),
                (&[0, 1], &[1], h()),
                (&[1, 0], &[1], h()),
            ],
        );
        assert_eq!(nf(&d, &[T(1), X(1), T(1)]), expect);
        assert_eq!(nf(&d, &[Tinv(1), X(1), Tinv(1)]), DgaElt::x(2, 2).unwrap());
        assert_eq!(nf(&d, &[X(1), X(1)]), elt(2, &[(&[2, 0], &[], p(&[1]))]));
        assert!(d.normal_form(&GenWord::word(&[T(2)])).is_err());
        assert!(d.normal_form(&GenWord::word(&[X(3)])).is_err());
    }

    #[test]
    fn mul_examples() {
        let d = dga(2);
        let x1 = DgaElt::x(1, 2).unwrap();
        let x2 = DgaElt::x(2, 2).unwrap();
        assert_eq!(d.mul(&x1, &x2).unwrap(), elt(2, &[(&[1, 1], &[], p(&[1]))]));
        assert_eq!(
            d.mul(&x2, &x1).unwrap(),
            elt(2, &[(&[1, 1], &[], p(&[-1])), (&[1, 1], &[1], p(&[0, -1]))])
        );
        let t1 = DgaElt::from_hecke(&HeckeElt::t(1, 2).unwrap());
        assert_eq!(
            d.mul(&t1, &t1).unwrap(),
            elt(2, &[(&[0, 0], &[], p(&[1])), (&[0, 0], &[1], h())])
        );
        assert!(d.mul(&x1, &DgaElt::one(3)).is_err());
    }

    #[test]
    fn d_generator_examples() {
        let d = dga(2);
        assert_eq!(d.d_generator(1).unwrap(), elt(2, &[(&[0, 0], &[1], h())]));
        assert_eq!(
            d.d_generator(2).unwrap(),
            elt(2, &[(&[0, 0], &[1], h()), (&[0, 0], &[], p(&[0, 0, -1]))])
        );
        assert!(dga(1).d_generator(1).unwrap().is_zero());
        assert!(d.d_generator(3).is_err());
    }

    #[test]
    fn central_parameter_shifts_dx1() {
        for k in 1..=4 {
            let c = p(&[1, 1]);
            let dc = Dga::new(DgaConfig::with_c(k, c.clone()).unwrap());
            let d1 = dga(k);
            let diff = &dc.d_generator(1).unwrap() - &d1.d_generator(1).unwrap();
            assert_eq!(diff, DgaElt::scalar(&IntPoly::one() - &c, k));
        }
        assert!(DgaConfig::with_c(2, IntPoly::zero()).is_err());
        assert!(DgaConfig::new(0).is_err());
    }

    #[test]
    fn differential_examples() {
        let d = dga(2);
        let x1t = elt(2, &[(&[1, 0], &[1], p(&[1]))]);
        assert_eq!(
            d.differential(&x1t),
            elt(2, &[(&[0, 0], &[], h()), (&[0, 0], &[1], p(&[0, 0, 1]))])
        );
        for k in 1..=4 {
            for w in Perm::all(k) {
                let e = DgaElt::mono(PbwMono::new(vec![0; k], w), IntPoly::one());
                assert!(dga(k).differential(&e).is_zero());
            }
        }
        // d(x1 x2) = (h T1) x2 - x1 (h T1 - h^2) = 0 once T1 x2 is normalized
        let x1x2 = elt(2, &[(&[1, 1], &[], p(&[1]))]);
        assert!(d.differential(&x1x2).is_zero());
        let via_word = d
            .differential_word(&GenWord::word(&[X(1), Tinv(1), X(1), Tinv(1)]))
            .unwrap();
        assert!(via_word.is_zero());
    }

    #[test]
    fn relation_suite_vanishes() {
        for k in 1..=4 {
            for c in [p(&[1]), p(&[1, 1])] {
                let d = Dga::new(DgaConfig::with_c(k, c).unwrap());
                for (name, r) in d.relation_suite().unwrap() {
                    assert!(r.is_zero(), "kappa={k} {name}: {r}");
                }
            }
        }
    }

    #[test]
    fn specialize_examples() {
        let d = dga(2);
        let zero = BigInt::from(0);
        let x1 = DgaElt::x(1, 2).unwrap();
        let x2 = DgaElt::x(2, 2).unwrap();
        assert_eq!(
            d.mul(&x2, &x1).unwrap().specialize(&zero),
            elt(2, &[(&[1, 1], &[], p(&[-1]))])
        );
        for k in 1..=4 {
            assert!(dga(k).d_generator(1).unwrap().specialize(&zero).is_zero());
        }
        let e = elt(2, &[(&[0, 0], &[], p(&[1])), (&[0, 0], &[1], h())]);
        assert_eq!(
            e.specialize(&BigInt::from(1)),
            elt(2, &[(&[0, 0], &[], p(&[1])), (&[0, 0], &[1], p(&[1]))])
        );
    }

    #[test]
    fn display() {
        let d = dga(2);
        assert_eq!(
            nf(&d, &[T(1), X(1), T(1)]).to_string(),
            "x2 + h*x1*T1 + h*x2*T1"
        );
        assert_eq!(d.d_generator(1).unwrap().to_string(), "h*T1");
        assert_eq!(d.d_generator(2).unwrap().to_string(), "h*T1 - h^2");
        assert_eq!(DgaElt::zero(2).to_string(), "0");
        assert_eq!(DgaElt::one(2).to_string(), "1");
    }

    #[test]
    fn json_format() {
        let cfg = DgaConfig::new(2).unwrap();
        let e = elt(2, &[(&[1, 0], &[1], h())]);
        let s = serde_json::to_string(&DgaEltDoc::new(&e, &cfg)).unwrap();
        assert_eq!(
            s,
            r#"{"kappa":2,"c":["1"],"terms":[{"alpha":[1,0],"w":[2,1],"coeff":["0","1"]}]}"#
        );
        let (back, cfg2) = serde_json::from_str::<DgaEltDoc>(&s)
            .unwrap()
            .into_elt()
            .unwrap();
        assert_eq!((back, cfg2), (e, cfg));
    }

    #[test]
    fn degree_query() {
        let e = elt(2, &[(&[1, 0], &[], p(&[1])), (&[0, 1], &[1], p(&[2]))]);
        assert_eq!(e.degree().unwrap(), Some(-1));
        assert_eq!(DgaElt::zero(2).degree().unwrap(), None);
        let mixed = &e + &DgaElt::one(2);
        assert_eq!(mixed.degree(), Err(Error::Inhomogeneous));
    }

    #[test]
    fn pbw_count_formula() {
        assert_eq!(pbw_count(2, 0), 2);
        assert_eq!(pbw_count(2, 1), 4);
        assert_eq!(pbw_count(3, 2), 36);
        assert_eq!(pbw_count(1, 7), 1);
    }

    /// Every reduced word of `w`.
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
    fn pull_independent_of_reduced_word() {
        for k in 2..=4 {
            let d = dga(k);
            for w in Perm::all(k) {
                for j in 1..=k {
                    let canonical = d.pull(&w, j).unwrap();
                    for word in all_reduced_words(&w) {
                        assert_eq!(d.pull_word(&word, j).unwrap(), *canonical);
                    }
                }
            }
        }
    }

    fn random_word(rng: &mut ChaCha8Rng, k: usize, len: usize) -> GenWord {
        let letters = (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 if k > 1 => T(rng.gen_range(1..k)),
                1 if k > 1 => Tinv(rng.gen_range(1..k)),
                _ => X(rng.gen_range(1..=k)),
            })
            .collect();
        GenWord::new(p(&[rng.gen_range(-2..3), rng.gen_range(-2..3)]), letters)
    }

    #[test]
    fn associativity_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 2..=3 {
            let d = dga(k);
            for _ in 0..60 {
                let [a, b, c] = [0; 3].map(|_| {
                    let l = rng.gen_range(0..5);
                    d.normal_form(&random_word(&mut rng, k, l)).unwrap()
                });
                let l = d.mul(&d.mul(&a, &b).unwrap(), &c).unwrap();
                let r = d.mul(&a, &d.mul(&b, &c).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn leibniz_and_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 2..=3 {
            let d = dga(k);
            for _ in 0..40 {
                let l1 = rng.gen_range(0..4);
                let l2 = rng.gen_range(0..4);
                let a = d.normal_form(&random_word(&mut rng, k, l1)).unwrap();
                let b = d.normal_form(&random_word(&mut rng, k, l2)).unwrap();
                let (Some(da), Some(db)) = (a.degree().unwrap(), b.degree().unwrap()) else {
                    continue;
                };
                let ab = d.mul(&a, &b).unwrap();
                if let Some(dab) = ab.degree().unwrap() {
                    assert_eq!(dab, da + db);
                }
                let lhs = d.differential(&ab);
                let mut rhs = d.mul(&d.differential(&a), &b).unwrap();
                let sign = if da % 2 == 0 {
                    IntPoly::one()
                } else {
                    p(&[-1])
                };
                rhs.add_scaled(&d.mul(&a, &d.differential(&b)).unwrap(), &sign);
                assert_eq!(lhs, rhs);
                if let Some(dd) = lhs.degree().unwrap() {
                    assert_eq!(dd, da + db + 1);
                }
            }
        }
    }

    #[test]
    fn d_squared_small() {
        for k in 1..=3 {
            let d = dga(k);
            for s in 0..=3 {
                let mut alphas = vec![vec![]];
                for _ in 0..k {
                    alphas = alphas
                        .into_iter()
                        .flat_map(|a: Vec<u32>| {
                            (0..=s as u32).map(move |e| {
                                let mut b = a.clone();
                                b.push(e);
                                b
                            })
                        })
                        .collect();
                }
                for alpha in alphas
                    .into_iter()
                    .filter(|a| a.iter().sum::<u32>() == s as u32)
                {
                    for w in Perm::all(k) {
                        let e = DgaElt::mono(PbwMono::new(alpha.clone(), w), IntPoly::one());
                        assert!(d.differential(&d.differential(&e)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 1..=4 {
            let d = dga(k);
            for _ in 0..20 {
                let l = rng.gen_range(0..6);
                let e = d.normal_form(&random_word(&mut rng, k, l)).unwrap();
                assert_eq!(d.normal_form_sum(&e.to_words()).unwrap(), e);
            }
        }
    }

    #[test]
    fn kappa_one_is_free_polynomial_algebra() {
        let d = dga(1);
        let x = DgaElt::x(1, 1).unwrap();
        let x2 = d.mul(&x, &x).unwrap();
        assert_eq!(
            x2,
            DgaElt::mono(PbwMono::new(vec![2], Perm::identity(1)), IntPoly::one())
        );
        assert!(d.differential(&x2).is_zero());
    }
}
