//! The scalar ring `Z[h]`: polynomials in the deformation parameter with
//! arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial in `h` with integer coefficients, stored little-endian.
///
/// The highest stored coefficient is never zero; the zero polynomial is the
/// empty vector, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The variable `h` itself.
    pub fn hbar() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * h^k`
    pub fn monomial<C: Into<BigInt>>(c: C, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `k` such that `h^k` divides `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Nonzero `(power, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `h^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Quotient `q` with `q * divisor == self`, failing unless the division
    /// is exact in `Z[h]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_exact_lc(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                num: self.to_string(),
                den: divisor.to_string(),
            });
        }
        Ok(q)
    }

    // Long division that requires every step's leading coefficient to divide
    // exactly; otherwise reports inexact division.
    fn div_rem_exact_lc(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lb = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((IntPoly::zero(), IntPoly::zero()));
        };
        if da < db {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lb);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    num: self.to_string(),
                    den: divisor.to_string(),
                });
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * b;
            }
            quot[k] = qk;
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let db = divisor.degree().expect("pseudo_rem by zero");
        let lb = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let lr = rem.leading().unwrap().clone();
            let sub = divisor.scale(&lr).shift(dr - db);
            rem = &rem.scale(&lb) - &sub;
        }
        rem
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Greatest common divisor in `Z[h]`, normalized to a positive leading
    /// coefficient. Uses the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont)
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.leading().is_some_and(|c| c.is_negative()) {
        -p
    } else {
        p
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(mut self, rhs: IntPoly) -> IntPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(mut self, rhs: IntPoly) -> IntPoly {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

/// Renders as a sum in increasing powers of `h`, e.g. `2 + h - 3*h^2`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_hpow(f, k)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_hpow(f, k)?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn write_hpow(f: &mut impl fmt::Write, k: usize) -> fmt::Result {
    if k == 1 {
        write!(f, "h")
    } else {
        write!(f, "h^{k}")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
