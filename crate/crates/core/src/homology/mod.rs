//! Graded slices of `H_k`, matrices of `d`, ranks and homology.
//!
//! Three reports are available because `Z[h]` is not a PID: generic ranks
//! over `Q(h)` ([`generic_betti`]), Smith forms at integer values of `h`
//! ([`specialized_homology`]) and the degree-zero quotient described by
//! explicit image generators ([`h0_presentation`]).

mod bareiss;
mod smith;
mod span;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coeff::IntPoly;
use crate::dga::{pbw_count, Dga, DgaElt, PbwMono};
use crate::error::{Error, Result};
use crate::hecke::HeckeElt;
use crate::symgroup::Perm;

pub use bareiss::generic_rank;
pub use smith::invariant_factors;
pub use span::SpanBasis;

/// Refuse dense matrices with more columns than this.
pub const MAX_COLUMNS: usize = 10_000;

/// The PBW monomials `x^alpha T_w` with `|alpha| = s`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub kappa: usize,
    pub degree: i64,
    pub monomials: Vec<PbwMono>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &PbwMono) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }

    /// Coordinates of `e` in this basis. Fails if `e` has other terms.
    pub fn coordinates(&self, e: &DgaElt) -> Result<Vec<IntPoly>> {
        let mut v = vec![IntPoly::zero(); self.len()];
        for (m, c) in e.terms() {
            let i = self.index_of(m).ok_or(Error::Inhomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }
}

impl Serialize for GradedBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.monomials.iter().map(|m| format!("{m:?}")))
    }
}

fn compositions(kappa: usize, s: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=rest {
            cur.push(a as u32);
            go(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(s, kappa, &mut Vec::with_capacity(kappa), &mut out);
    out
}

pub fn graded_basis(kappa: usize, s: usize) -> GradedBasis {
    let perms = Perm::all(kappa);
    let mut monomials: Vec<PbwMono> = compositions(kappa, s)
        .into_iter()
        .flat_map(|a| {
            perms
                .iter()
                .map(move |w| PbwMono::new(a.clone(), w.clone()))
        })
        .collect();
    monomials.sort();
    GradedBasis {
        kappa,
        degree: -(s as i64),
        monomials,
    }
}

/// Matrix of `d` from degree `-s` (columns) to degree `-s+1` (rows).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMatrix {
    pub rows: GradedBasis,
    pub cols: GradedBasis,
    /// Row-major.
    pub entries: Vec<Vec<IntPoly>>,
}

impl ChainMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> Vec<IntPoly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(IntPoly::is_zero)
    }

    pub fn specialize(&self, q: &BigInt) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval_int(q)).collect())
            .collect()
    }

    /// The product `self * rhs`; requires `rhs.rows == self.cols`.
    pub fn compose(&self, rhs: &ChainMatrix) -> Result<Vec<Vec<IntPoly>>> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidParams("matrices are not consecutive".into()));
        }
        let mut out = vec![vec![IntPoly::zero(); rhs.ncols()]; self.nrows()];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in rhs.entries[k].iter().enumerate() {
                    if !b.is_zero() {
                        out[i][j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn generic_rank(&self) -> usize {
        generic_rank(&self.entries)
    }
}

impl fmt::Display for ChainMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self
            .cols
            .monomials
            .iter()
            .map(|m| format!("{m:?}"))
            .collect();
        let side: Vec<String> = self
            .rows
            .monomials
            .iter()
            .map(|m| format!("{m:?}"))
            .collect();
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        let lw = side.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..head.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([head[j].len()])
                    .max()
                    .unwrap()
            })
            .collect();
        write!(f, "{:lw$}", "")?;
        for (h, w) in head.iter().zip(&widths) {
            write!(f, "  {h:>w$}")?;
        }
        writeln!(f)?;
        for (s, r) in side.iter().zip(&cells) {
            write!(f, "{s:lw$}")?;
            for (c, w) in r.iter().zip(&widths) {
                write!(f, "  {c:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_size(kappa: usize, s: usize) -> Result<()> {
    let n = pbw_count(kappa, s);
    if n > MAX_COLUMNS as u128 {
        return Err(Error::TooLarge(
            n.min(usize::MAX as u128) as usize,
            MAX_COLUMNS,
        ));
    }
    Ok(())
}

/// The matrix of `d` on the degree `-s` slice. Columns are computed in
/// parallel.
pub fn d_matrix(dga: &Dga, s: usize) -> Result<ChainMatrix> {
    if s == 0 {
        return Err(Error::InvalidParams("d_matrix needs s >= 1".into()));
    }
    let k = dga.kappa();
    check_size(k, s)?;
    let rows = graded_basis(k, s - 1);
    let cols = graded_basis(k, s);
    let mut entries = vec![vec![IntPoly::zero(); cols.len()]; rows.len()];
    for (j, col) in d_columns(dga, &cols).into_iter().enumerate() {
        for (t, c) in col.terms() {
            entries[rows.index_of(t).expect("d lowers degree by one")][j] = c.clone();
        }
    }
    Ok(ChainMatrix {
        rows,
        cols,
        entries,
    })
}

fn d_columns(dga: &Dga, basis: &GradedBasis) -> Vec<DgaElt> {
    basis
        .monomials
        .par_iter()
        .map(|m| dga.differential(&DgaElt::mono(m.clone(), IntPoly::one())))
        .collect()
}

/// The degree `-s` basis monomials `m` with `d(d(m)) != 0`. `d` of each
/// degree `-s+1` monomial is computed once, in parallel, and `d(d(m))` is
/// assembled from those by linearity.
pub fn d_squared_failures(dga: &Dga, s: usize) -> Vec<PbwMono> {
    if s < 2 {
        // d vanishes on the Hecke algebra
        return Vec::new();
    }
    let k = dga.kappa();
    let lower = graded_basis(k, s - 1);
    let lower_d = d_columns(dga, &lower);
    let top = graded_basis(k, s);
    top.monomials
        .par_iter()
        .filter(|m| {
            let dm = dga.differential(&DgaElt::mono((*m).clone(), IntPoly::one()));
            let mut dd = DgaElt::zero(k);
            for (t, c) in dm.terms() {
                dd.add_scaled(
                    &lower_d[lower.index_of(t).expect("d lowers degree by one")],
                    c,
                );
            }
            !dd.is_zero()
        })
        .cloned()
        .collect()
}

/// An inclusive range of nonpositive degrees, written `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    lo: i64,
    hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        if hi > 0 {
            return Err(Error::InvalidParams(format!(
                "degree {hi} is positive; H_k lives in degrees <= 0"
            )));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn single(degree: i64) -> Result<Self> {
        DegreeWindow::new(degree, degree)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Degrees from highest to lowest.
    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        (self.lo..=self.hi).rev()
    }
}

impl FromStr for DegreeWindow {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("bad degree window {text:?}, expected A..B"));
        let (a, b) = text.split_once("..").ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        DegreeWindow::new(a, b)
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

// Matrices d_s for s in [s_min, s_max], s >= 1, keyed by s.
fn matrices(dga: &Dga, window: &DegreeWindow) -> Result<BTreeMap<usize, ChainMatrix>> {
    let s_min = (-window.hi) as usize;
    let s_max = (-window.lo) as usize + 1;
    (s_min.max(1)..=s_max)
        .map(|s| Ok((s, d_matrix(dga, s)?)))
        .collect()
}

/// Betti numbers over `Q(h)` for each degree of the window.
pub fn generic_betti(dga: &Dga, window: &DegreeWindow) -> Result<BTreeMap<i64, usize>> {
    let mats = matrices(dga, window)?;
    let ranks: BTreeMap<usize, usize> = mats.iter().map(|(&s, m)| (s, m.generic_rank())).collect();
    let k = dga.kappa();
    Ok(window
        .degrees()
        .map(|deg| {
            let s = (-deg) as usize;
            let dim = pbw_count(k, s) as usize;
            let out = if s == 0 { 0 } else { ranks[&s] };
            (deg, dim - out - ranks[&(s + 1)])
        })
        .collect())
}

/// One cohomology group of the complex specialized at an integer `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    /// Elementary divisors greater than one.
    #[serde(serialize_with = "ser_ints")]
    pub torsion: Vec<BigInt>,
    /// Rank of the outgoing differential.
    pub rank: usize,
    /// Number of basis monomials in this degree.
    pub dim: usize,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}: Z^{}", self.degree, self.betti)?;
        for t in &self.torsion {
            write!(f, " + Z/{t}")?;
        }
        write!(f, "  (dim {}, rank d {})", self.dim, self.rank)
    }
}

/// Homology over `Z` after substituting `h = q`, via Smith normal form.
pub fn specialized_homology(
    dga: &Dga,
    window: &DegreeWindow,
    q: &BigInt,
) -> Result<Vec<HomologyGroup>> {
    let mats = matrices(dga, window)?;
    let factors: BTreeMap<usize, Vec<BigInt>> = mats
        .iter()
        .map(|(&s, m)| (s, invariant_factors(&m.specialize(q))))
        .collect();
    let k = dga.kappa();
    Ok(window
        .degrees()
        .map(|deg| {
            let s = (-deg) as usize;
            let dim = pbw_count(k, s) as usize;
            let rank = if s == 0 { 0 } else { factors[&s].len() };
            let incoming = &factors[&(s + 1)];
            HomologyGroup {
                degree: deg,
                betti: dim - rank - incoming.len(),
                torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
                rank,
                dim,
            }
        })
        .collect())
}

/// The degree-zero cohomology `H^fin / image(d)`.
#[derive(Clone, Debug)]
pub struct H0Report {
    pub kappa: usize,
    /// `(x_k T_w, d(x_k T_w))` for every degree -1 basis monomial.
    pub generators: Vec<(PbwMono, HeckeElt)>,
    /// Each generator equals `L_k (Theta - c) R_k T_w` in the Hecke algebra.
    pub cofactors_verified: bool,
    /// A strong Groebner basis of the image span over `Z[h]`.
    pub span: Vec<HeckeElt>,
    pub statement: String,
    basis: Vec<Perm>,
    gb: SpanBasis,
}

impl H0Report {
    /// Whether `e` lies in the image of `d`, i.e. is zero in `H^0`.
    pub fn is_exact(&self, e: &HeckeElt) -> bool {
        self.gb.contains(&hecke_coords(e, &self.basis))
    }

    /// The normal form of `e` modulo the image.
    pub fn reduce(&self, e: &HeckeElt) -> HeckeElt {
        hecke_from_coords(&self.gb.reduce(&hecke_coords(e, &self.basis)), &self.basis)
    }
}

impl Serialize for H0Report {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Gen<'a> {
            source: String,
            image: &'a HeckeElt,
        }
        let gens: Vec<Gen> = self
            .generators
            .iter()
            .map(|(m, e)| Gen {
                source: format!("{m:?}"),
                image: e,
            })
            .collect();
        let mut st = s.serialize_struct("H0Report", 5)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.serialize_field("generators", &gens)?;
        st.serialize_field("cofactors_verified", &self.cofactors_verified)?;
        st.serialize_field("span", &self.span)?;
        st.serialize_field("statement", &self.statement)?;
        st.end()
    }
}

impl fmt::Display for H0Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "image generators:")?;
        for (m, e) in &self.generators {
            writeln!(f, "  d({m:?}) = {e}")?;
        }
        let verdict = if self.cofactors_verified {
            "verified"
        } else {
            "FAILED"
        };
        writeln!(f, "ideal membership via cofactors: {verdict}")?;
        let span: Vec<String> = self.span.iter().map(|e| e.to_string()).collect();
        writeln!(f, "span: <{}>", span.join(", "))?;
        write!(f, "H^0 = {}", self.statement)
    }
}

fn hecke_coords(e: &HeckeElt, basis: &[Perm]) -> Vec<IntPoly> {
    basis.iter().map(|w| e.coeff(w)).collect()
}

fn hecke_from_coords(v: &[IntPoly], basis: &[Perm]) -> HeckeElt {
    let k = basis[0].kappa();
    let mut e = HeckeElt::zero(k);
    for (w, c) in basis.iter().zip(v) {
        e.add_term(w.clone(), c.clone());
    }
    e
}

/// Image generators of `d` into degree 0, checked against the two-sided
/// ideal of `Theta - c`, and the reduced span they generate.
pub fn h0_presentation(dga: &Dga) -> Result<H0Report> {
    let k = dga.kappa();
    let cols = graded_basis(k, 1);
    let basis = Perm::all(k);
    let core = &HeckeElt::theta(k) - &HeckeElt::scalar(dga.config().c.clone(), k);
    let mut cofactors_verified = true;
    let mut generators = Vec::with_capacity(cols.len());
    for m in &cols.monomials {
        let image = dga
            .differential(&DgaElt::mono(m.clone(), IntPoly::one()))
            .hecke_part();
        let j = m.alpha.iter().position(|&a| a == 1).unwrap() + 1;
        // L_j = T_{j-1}^{-1} ... T_1^{-1}, R_j = T_1^{-1} ... T_{j-1}^{-1}
        let mut expected = core.clone();
        for i in 1..j {
            let tinv = HeckeElt::t_inverse(i, k)?;
            expected = tinv.mul(&expected)?.mul(&tinv)?;
        }
        expected = expected.mul(&HeckeElt::basis(m.w.clone()))?;
        cofactors_verified &= expected == image;
        generators.push((m.clone(), image));
    }
    let vectors: Vec<Vec<IntPoly>> = generators
        .iter()
        .map(|(_, e)| hecke_coords(e, &basis))
        .collect();
    let gb = SpanBasis::new(basis.len(), &vectors);
    let span: Vec<HeckeElt> = gb
        .basis()
        .iter()
        .map(|v| hecke_from_coords(v, &basis))
        .collect();
    let h_times_basis: Vec<Vec<IntPoly>> = (0..basis.len())
        .map(|i| {
            (0..basis.len())
                .map(|j| {
                    if i == j {
                        IntPoly::hbar()
                    } else {
                        IntPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let statement = if gb.is_zero() {
        if k == 1 {
            "Z[h]".to_string()
        } else {
            format!("H_{k}^fin")
        }
    } else if gb.same_span(&SpanBasis::new(basis.len(), &h_times_basis)) {
        if k == 2 {
            "Z[S_2] = Z[T]/(T^2 - 1), h acts by 0".to_string()
        } else {
            format!("Z[S_{k}], h acts by 0")
        }
    } else {
        format!("H_{k}^fin / <Theta - c>")
    };
    Ok(H0Report {
        kappa: k,
        generators,
        cofactors_verified,
        span,
        statement,
        basis,
        gb,
    })
}
