//! Edge-weighted matching polynomials of `G(2, n)` and their backward
//! continuation.
//!
//! Weights: the vertical edge in column `i` is `y_i`; the horizontal edges
//! between columns `i` and `i + 1` are `w_i` (top row) and `x_i` (bottom
//! row). The polynomials satisfy
//!
//! ```text
//! M(n + 1) = y_{n+1} M(n) + w_n x_n M(n - 1)
//! ```
//!
//! and running this backward from `M(1), M(2)` divides by the monomial
//! `w_n x_n` at each step, which keeps every result a Laurent polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{build, EdgeKind};
use crate::limits::Limits;
use crate::oracle::Oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    W,
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub family: Family,
    pub index: i64,
}

impl VarId {
    pub fn w(index: i64) -> Self {
        VarId {
            family: Family::W,
            index,
        }
    }
    pub fn x(index: i64) -> Self {
        VarId {
            family: Family::X,
            index,
        }
    }
    pub fn y(index: i64) -> Self {
        VarId {
            family: Family::Y,
            index,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::W => 'w',
            Family::X => 'x',
            Family::Y => 'y',
        };
        write!(f, "{c}_{}", self.index)
    }
}

/// Exponent vector; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<VarId, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_pairs(pairs: &[(VarId, i64)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.bump(v, e);
        }
        m
    }

    fn bump(&mut self, v: VarId, e: i64) {
        let slot = self.0.entry(v).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&v);
        }
    }

    pub fn exponents(&self) -> &BTreeMap<VarId, i64> {
        &self.0
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.0 {
            out.bump(v, e);
        }
        out
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(&v, &e)| (v, -e)).collect())
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.0.values().all(|&e| e > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial with integer coefficients; no zero
/// coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), BigInt::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial::from_pairs(&[(v, 1)]), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &BigInt> {
        self.terms.values()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.times(m), c.clone()))
                .collect(),
        }
    }

    /// Division by the single term `c * m`; exact iff `c` divides every
    /// coefficient.
    pub fn div_term(&self, m: &Monomial, c: &BigInt) -> Result<LaurentPoly> {
        if c.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let inv = m.inverse();
        let mut terms = BTreeMap::new();
        for (k, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "{a} is not divisible by {c}"
                )));
            }
            terms.insert(k.times(&inv), q);
        }
        Ok(LaurentPoly { terms })
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_unit(&self) -> bool {
        self.terms.values().all(|c| c.magnitude().is_one())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = c.magnitude();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `[{"coefficient": "-1", "exponents": {"w_-1": "-1", ...}}, ...]` in
/// canonical term order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Exps<'a>(&'a Monomial);
        impl Serialize for Exps<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0 .0.len()))?;
                for (v, e) in &self.0 .0 {
                    map.serialize_entry(&v.to_string(), &e.to_string())?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: String,
            exponents: Exps<'a>,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&Term {
                coefficient: c.to_string(),
                exponents: Exps(m),
            })?;
        }
        seq.end()
    }
}

/// Sum over the matchings of `G(2, n)` of the product of edge weights.
pub fn weighted_matching_poly(n: usize) -> LaurentPoly {
    assert!(n >= 1, "n must be positive");
    let grid = build(2, n as i64).expect("width 2 is valid");
    let matchings = Oracle::default()
        .forced()
        .enumerate(&grid)
        .expect("forced oracle has no guard");
    let mut out = LaurentPoly::zero();
    for matching in matchings {
        let pairs: Vec<(VarId, i64)> = matching
            .edges
            .iter()
            .map(|e| {
                let col = e.col as i64;
                let v = match (e.kind, e.row) {
                    (EdgeKind::Vertical, _) => VarId::y(col),
                    (EdgeKind::Horizontal, 1) => VarId::w(col),
                    (EdgeKind::Horizontal, _) => VarId::x(col),
                };
                (v, 1)
            })
            .collect();
        out.add_term(Monomial::from_pairs(&pairs), BigInt::one());
    }
    out
}

fn wx(n: i64) -> Monomial {
    Monomial::from_pairs(&[(VarId::w(n), 1), (VarId::x(n), 1)])
}

/// `M(n + 1) = y_{n+1} M(n) + w_n x_n M(n - 1)`.
pub fn step_forward(p_prev: &LaurentPoly, p_curr: &LaurentPoly, n: i64) -> LaurentPoly {
    let y = Monomial::from_pairs(&[(VarId::y(n + 1), 1)]);
    &p_curr.mul_monomial(&y) + &p_prev.mul_monomial(&wx(n))
}

/// `M(n - 1) = (M(n + 1) - y_{n+1} M(n)) / (w_n x_n)`.
pub fn step_backward(p_next: &LaurentPoly, p_curr: &LaurentPoly, n: i64) -> Result<LaurentPoly> {
    let y = Monomial::from_pairs(&[(VarId::y(n + 1), 1)]);
    let numer = p_next - &p_curr.mul_monomial(&y);
    numer.div_term(&wx(n), &BigInt::one())
}

/// `M(n)` for `n_min <= n <= 3`, stepping backward from `M(1), M(2)`.
pub fn extrapolate_laurent(n_min: i64, limits: &Limits) -> Result<BTreeMap<i64, LaurentPoly>> {
    if n_min > 0 {
        return Err(Error::InvalidArgument("n_min must be at most 0".into()));
    }
    if n_min < limits.laurent_depth {
        return Err(Error::CapExceeded {
            what: "Laurent depth",
            value: n_min,
            cap: limits.laurent_depth,
        });
    }
    let mut table = BTreeMap::new();
    for n in 1..=3 {
        table.insert(n as i64, weighted_matching_poly(n));
    }
    let mut n = 1i64;
    while n > n_min {
        let next = step_backward(&table[&(n + 1)], &table[&n], n)?;
        table.insert(n - 1, next);
        n -= 1;
    }
    Ok(table)
}
