//! Submodules of `Z[h]^n` via strong Groebner bases.
//!
//! Terms are ordered position over term: a smaller position index wins, then
//! a higher power of `h`. A vector's leading term is the top-degree term of
//! its first nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::IntPoly;

type Vector = Vec<IntPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Lead {
    pos: usize,
    deg: usize,
    coeff: BigInt,
}

fn lead(v: &[IntPoly]) -> Option<Lead> {
    let pos = v.iter().position(|e| !e.is_zero())?;
    let e = &v[pos];
    Some(Lead {
        pos,
        deg: e.degree().unwrap(),
        coeff: e.leading().unwrap().clone(),
    })
}

fn divides(g: &Lead, f: &Lead) -> bool {
    g.pos == f.pos && g.deg <= f.deg && f.coeff.is_multiple_of(&g.coeff)
}

// a * h^k * u + b * h^l * v
fn combine(a: &BigInt, k: usize, u: &[IntPoly], b: &BigInt, l: usize, v: &[IntPoly]) -> Vector {
    u.iter()
        .zip(v)
        .map(|(x, y)| &x.scale(a).shift(k) + &y.scale(b).shift(l))
        .collect()
}

fn normalize_sign(mut v: Vector) -> Vector {
    if lead(&v).is_some_and(|l| l.coeff.is_negative()) {
        v = v.iter().map(|e| -e).collect();
    }
    v
}

/// A strong Groebner basis of a submodule of `Z[h]^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpanBasis {
    dim: usize,
    basis: Vec<Vector>,
}

impl SpanBasis {
    /// Basis of the submodule generated by `gens`, each of length `dim`.
    pub fn new(dim: usize, gens: &[Vector]) -> Self {
        let mut sb = SpanBasis {
            dim,
            basis: Vec::new(),
        };
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut pending: Vec<Vector> = gens.to_vec();
        pending.reverse();
        loop {
            if let Some(g) = pending.pop() {
                sb.push(g, &mut pairs);
                continue;
            }
            let Some((i, j)) = pairs.pop() else { break };
            let (li, lj) = (lead(&sb.basis[i]).unwrap(), lead(&sb.basis[j]).unwrap());
            let m = li.deg.max(lj.deg);
            let (ki, kj) = (m - li.deg, m - lj.deg);
            let l = li.coeff.lcm(&lj.coeff);
            let s = combine(
                &(&l / &li.coeff),
                ki,
                &sb.basis[i],
                &-(&l / &lj.coeff),
                kj,
                &sb.basis[j],
            );
            pending.push(s);
            if !li.coeff.is_multiple_of(&lj.coeff) && !lj.coeff.is_multiple_of(&li.coeff) {
                let eg = li.coeff.extended_gcd(&lj.coeff);
                pending.push(combine(&eg.x, ki, &sb.basis[i], &eg.y, kj, &sb.basis[j]));
            }
        }
        sb.minimize();
        sb
    }

    fn push(&mut self, g: Vector, pairs: &mut Vec<(usize, usize)>) {
        let r = self.reduce(&g);
        let Some(lr) = lead(&r) else { return };
        let n = self.basis.len();
        for (i, b) in self.basis.iter().enumerate() {
            if lead(b).unwrap().pos == lr.pos {
                pairs.push((i, n));
            }
        }
        self.basis.push(normalize_sign(r));
    }

    fn minimize(&mut self) {
        let mut keep: Vec<Vector> = Vec::new();
        let mut all = std::mem::take(&mut self.basis);
        all.sort_by_key(|v| {
            let l = lead(v).unwrap();
            (l.pos, l.deg, l.coeff.abs())
        });
        for v in all {
            let lv = lead(&v).unwrap();
            if keep.iter().all(|k| !divides(&lead(k).unwrap(), &lv)) {
                keep.push(v);
            }
        }
        // tail reduction against the remaining elements
        for i in 0..keep.len() {
            let others: Vec<Vector> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            keep[i] = full_reduce(&keep[i], &others);
        }
        keep.sort_by_key(|v| {
            let l = lead(v).unwrap();
            (l.pos, l.deg)
        });
        self.basis = keep;
    }

    /// Top reduction: the remainder of `v` with no leading term divisible by a
    /// basis leading term. Zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &[IntPoly]) -> Vector {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = v.to_vec();
        while let Some(lr) = lead(&r) {
            let Some(g) = self.basis.iter().find(|g| divides(&lead(g).unwrap(), &lr)) else {
                break;
            };
            let lg = lead(g).unwrap();
            let q = &lr.coeff / &lg.coeff;
            r = combine(&BigInt::one(), 0, &r, &-q, lr.deg - lg.deg, g);
        }
        r
    }

    pub fn contains(&self, v: &[IntPoly]) -> bool {
        self.reduce(v).iter().all(IntPoly::is_zero)
    }

    /// Whether both modules are equal.
    pub fn same_span(&self, other: &SpanBasis) -> bool {
        self.dim == other.dim
            && self.basis.iter().all(|v| other.contains(v))
            && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

// Reduce every term, not only the leading one; leading term of `v` is kept.
fn full_reduce(v: &[IntPoly], basis: &[Vector]) -> Vector {
    let mut r = v.to_vec();
    let Some(lv) = lead(&r) else { return r };
    // walk terms below the leading term, highest first
    let mut pos = lv.pos;
    let mut deg = Some(lv.deg);
    loop {
        // next term strictly below (pos, deg)
        let next = match deg {
            Some(0) | None => None,
            Some(d) => (0..d).rev().find(|&e| !r[pos].coeff(e).is_zero()),
        };
        let (p, d) = match next {
            Some(d) => (pos, d),
            None => {
                let Some(p) = (pos + 1..r.len()).find(|&p| !r[p].is_zero()) else {
                    break;
                };
                (p, r[p].degree().unwrap())
            }
        };
        let c = r[p].coeff(d);
        let t = Lead {
            pos: p,
            deg: d,
            coeff: c.clone(),
        };
        if let Some(g) = basis.iter().find(|g| divides(&lead(g).unwrap(), &t)) {
            let lg = lead(g).unwrap();
            let q = &c / &lg.coeff;
            r = combine(&BigInt::one(), 0, &r, &-q, d - lg.deg, g);
            // the term at (p, d) is now zero; continue below it
        }
        pos = p;
        deg = Some(d);
        if d == 0 {
            deg = None;
        }
    }
    r
}
