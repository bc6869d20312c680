//! Closed geodesics of the Katok-Finsler metrics `F_lambda` on `S^2`.
//!
//! There are two families, `gamma_-^m` (m >= 0) and `gamma_+^m` (m >= 1),
//! with lengths `2pi (m + eps)/(1 + lambda)` and `2pi (m - eps)/(1 - lambda)`
//! and Morse index the floor of twice the length in `2pi` units. Lengths are
//! reported as exact rationals in units of `2pi`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `lambda` in `[0, 1)` and `eps` in `(0, 1/2)`, both exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatokParams {
    lambda: BigRational,
    epsilon: BigRational,
}

impl KatokParams {
    pub fn new(lambda: BigRational, epsilon: BigRational) -> Result<Self> {
        if lambda.is_negative() || lambda >= BigRational::one() {
            return Err(Error::InvalidParams(format!(
                "lambda = {lambda} is not in [0, 1)"
            )));
        }
        let half = BigRational::new(1.into(), 2.into());
        if !epsilon.is_positive() || epsilon >= half {
            return Err(Error::InvalidParams(format!(
                "epsilon = {epsilon} is not in (0, 1/2)"
            )));
        }
        Ok(KatokParams { lambda, epsilon })
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.001`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParams(format!("not a rational number: {text:?}"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, f)) = t.split_once('.') {
        if f.is_empty() || !f.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = i.starts_with('-');
        let int: BigInt = if i.is_empty() || i == "-" {
            BigInt::zero()
        } else {
            i.parse().map_err(|_| bad())?
        };
        let frac: BigInt = f.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(f.len() as u32);
        let frac = BigRational::new(frac, scale);
        let int = BigRational::from_integer(int.abs());
        let v = int + frac;
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        })
    }
}

impl Branch {
    fn first_m(self) -> u64 {
        match self {
            Branch::Minus => 0,
            Branch::Plus => 1,
        }
    }
}

/// Length of `gamma_branch^m` in units of `2pi`.
pub fn geodesic_length(m: u64, branch: Branch, p: &KatokParams) -> Result<BigRational> {
    let m = BigRational::from_integer(m.into());
    let one = BigRational::one();
    match branch {
        Branch::Minus => Ok((m + &p.epsilon) / (one + &p.lambda)),
        Branch::Plus if m.is_zero() => Err(Error::InvalidParams(
            "the plus branch starts at m = 1".into(),
        )),
        Branch::Plus => Ok((m - &p.epsilon) / (one - &p.lambda)),
    }
}

fn index_of_length(len: &BigRational, what: impl FnOnce() -> String) -> Result<u64> {
    let arg = len * BigRational::from_integer(2.into());
    if arg.is_integer() {
        return Err(Error::BoundaryHit(format!(
            "{} has integral index argument {arg}",
            what()
        )));
    }
    Ok(arg
        .floor()
        .to_integer()
        .to_u64()
        .expect("index fits in u64"))
}

/// Morse index of `gamma_branch^m`: the floor of twice its length.
pub fn geodesic_index(m: u64, branch: Branch, p: &KatokParams) -> Result<u64> {
    let len = geodesic_length(m, branch, p)?;
    index_of_length(&len, || format!("gamma_{branch}^{m}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Geodesic {
    pub branch: Branch,
    pub m: u64,
    #[serde(serialize_with = "ser_rat")]
    pub length: BigRational,
    pub index: u64,
    /// `length - index/2`, the distance from exact proportionality.
    #[serde(serialize_with = "ser_rat")]
    pub defect: BigRational,
}

fn ser_rat<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_rat<S: Serializer>(
    q: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Everything the monotonicity check computed for a window of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub n: u64,
    #[serde(serialize_with = "ser_rat")]
    pub lambda: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub epsilon: BigRational,
    /// All geodesics of index at most `n`, by branch then `m`.
    pub geodesics: Vec<Geodesic>,
    /// The first geodesic of each branch beyond the window.
    pub excluded: Vec<Geodesic>,
    /// Sorted indices of `geodesics`.
    pub merged: Vec<u64>,
    /// `merged == [0, 1, ..., n]`.
    pub contiguous: bool,
    /// Index nondecreasing and length strictly increasing along each branch.
    pub monotone: bool,
    /// `2 L - 1 < index <= 2 L` for every enumerated geodesic.
    pub sandwich: bool,
    /// Every excluded geodesic is longer than the cutoff `n/2`.
    pub excluded_beyond_cutoff: bool,
    #[serde(serialize_with = "ser_opt_rat")]
    pub max_defect: Option<BigRational>,
    #[serde(serialize_with = "ser_rat")]
    pub tolerance: BigRational,
    /// Geodesics whose defect exceeds the tolerance.
    pub flagged: usize,
    pub pass: bool,
}

impl fmt::Display for MonotonicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lambda = {}, epsilon = {}, N = {}",
            self.lambda, self.epsilon, self.n
        )?;
        writeln!(
            f,
            "{:<6} {:>3} {:>14} {:>5} {:>14}",
            "branch", "m", "length/2pi", "index", "defect"
        )?;
        for g in self.geodesics.iter().chain(&self.excluded) {
            let mark = if g.index > self.n { " (excluded)" } else { "" };
            writeln!(
                f,
                "{:<6} {:>3} {:>14} {:>5} {:>14}{mark}",
                g.branch,
                g.m,
                g.length.to_string(),
                g.index,
                g.defect.to_string()
            )?;
        }
        let merged: Vec<String> = self.merged.iter().map(u64::to_string).collect();
        writeln!(f, "merged indices: {}", merged.join(" "))?;
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "contiguous without repeats: {}", yn(self.contiguous))?;
        writeln!(f, "monotone along branches: {}", yn(self.monotone))?;
        writeln!(f, "floor sandwich: {}", yn(self.sandwich))?;
        writeln!(
            f,
            "excluded beyond cutoff: {}",
            yn(self.excluded_beyond_cutoff)
        )?;
        if let Some(d) = &self.max_defect {
            writeln!(
                f,
                "max defect: {d} (tolerance {}, {} flagged)",
                self.tolerance, self.flagged
            )?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Enumerates both branches up to index `n` and checks that the indices
/// rearrange to `0, 1, ..., n` without repeats.
pub fn monotonicity_report(
    n: u64,
    p: &KatokParams,
    tol: &BigRational,
) -> Result<MonotonicityReport> {
    let two = BigRational::from_integer(2.into());
    let cutoff = BigRational::new(n.into(), 2.into());
    let mut geodesics = Vec::new();
    let mut excluded = Vec::new();
    let mut monotone = true;
    for branch in [Branch::Minus, Branch::Plus] {
        let mut prev: Option<Geodesic> = None;
        for m in branch.first_m().. {
            let length = geodesic_length(m, branch, p)?;
            let index = geodesic_index(m, branch, p)?;
            let defect = &length - BigRational::new(index.into(), 2.into());
            let g = Geodesic {
                branch,
                m,
                length,
                index,
                defect,
            };
            if let Some(q) = &prev {
                monotone &= q.index <= g.index && q.length < g.length;
            }
            if index > n {
                excluded.push(g);
                break;
            }
            prev = Some(g.clone());
            geodesics.push(g);
        }
    }
    let mut merged: Vec<u64> = geodesics.iter().map(|g| g.index).collect();
    merged.sort_unstable();
    let contiguous = merged.iter().copied().eq(0..=n);
    let sandwich = geodesics.iter().all(|g| {
        let arg = &g.length * &two;
        let i = BigRational::from_integer(g.index.into());
        &arg - BigRational::one() < i && i <= arg
    });
    let excluded_beyond_cutoff = excluded.iter().all(|g| g.length > cutoff);
    let max_defect = geodesics.iter().map(|g| g.defect.abs()).max();
    let flagged = geodesics.iter().filter(|g| &g.defect.abs() > tol).count();
    Ok(MonotonicityReport {
        n,
        lambda: p.lambda.clone(),
        epsilon: p.epsilon.clone(),
        geodesics,
        excluded,
        merged,
        pass: contiguous && monotone && sandwich && excluded_beyond_cutoff,
        contiguous,
        monotone,
        sandwich,
        excluded_beyond_cutoff,
        max_defect,
        tolerance: tol.clone(),
        flagged,
    })
}

/// `1 - 2/(n+1)`: for larger `lambda`, `gamma_+^1` has index above `n`.
pub fn plus_exit_threshold(n: u64) -> BigRational {
    BigRational::one() - BigRational::new(2.into(), (n + 1).into())
}
