//! Annihilating recurrences and two-sided extrapolation.
//!
//! Forward tiling counts come from the transfer matrix. A recurrence with
//! constant coefficients that annihilates them (the characteristic
//! polynomial of the matrix, or the shortest one found by Berlekamp-Massey)
//! can be run backward, and any such recurrence yields the same two-sided
//! sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::IntPoly;
use crate::transfer::TransferMatrix;

/// `q_d a_{n+d} + ... + q_1 a_{n+1} + q_0 a_n = 0`, stored as
/// `(q_0, ..., q_d)` with `q_d > 0` and content 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let p = IntPoly::new(coeffs);
        match p.degree() {
            None | Some(0) => Err(Error::InvalidArgument(
                "a recurrence needs degree at least 1".into(),
            )),
            Some(_) => Ok(LinearRecurrence {
                coeffs: p.primitive().coeffs().to_vec(),
            }),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_poly(p: &IntPoly) -> Result<Self> {
        Self::new(p.coeffs().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `(q_0, ..., q_d)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    /// Divides out the largest power of the shift operator, so that the
    /// constant coefficient becomes nonzero.
    pub fn strip_shift(&self) -> Result<Self> {
        let p = self.to_poly();
        let k = p.x_valuation();
        if k == 0 {
            return Ok(self.clone());
        }
        Self::from_poly(&p.strip_x_power(k)).map_err(|_| Error::ZeroConstantTerm)
    }

    /// Residual of the relation on the window starting at `seq[start]`.
    pub fn residual(&self, seq: &[BigInt], start: usize) -> BigInt {
        self.coeffs
            .iter()
            .zip(&seq[start..=start + self.degree()])
            .map(|(q, a)| q * a)
            .sum()
    }

    /// Index of the first window the relation fails on, if any.
    pub fn first_violation(&self, seq: &[BigInt]) -> Option<usize> {
        let d = self.degree();
        if seq.len() <= d {
            return None;
        }
        (0..seq.len() - d).find(|&i| !self.residual(seq, i).is_zero())
    }

    pub fn annihilates(&self, seq: &[BigInt]) -> bool {
        self.first_violation(seq).is_none()
    }
}

impl Serialize for LinearRecurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_poly().serialize(s)
    }
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recursion. Every division by `k` is exact over the integers.
pub fn char_poly(matrix: &[Vec<BigInt>]) -> IntPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    let sparse: Vec<Vec<(usize, &BigInt)>> = matrix
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let times_a = |m: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        sparse
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); n];
                for &(l, w) in row {
                    for (j, v) in m[l].iter().enumerate() {
                        if !v.is_zero() {
                            out[j] += w * v;
                        }
                    }
                }
                out
            })
            .collect()
    };

    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // aux_k = A aux_{k-1} + c_{n-k+1} I
        let mut next = times_a(&aux);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let prod = times_a(&next);
        let trace: BigInt = (0..n).map(|i| &prod[i][i]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev-LeVerrier trace not divisible by {k}");
        coeffs[n - k] = -q;
        aux = next;
    }
    IntPoly::new(coeffs)
}

pub fn transfer_char_poly(t: &TransferMatrix) -> IntPoly {
    char_poly(&t.to_dense())
}

/// Shortest recurrence over `Q` for `terms[..len - held_out]`
/// (Berlekamp-Massey), cleared to integers and then checked against every
/// window of the full slice.
pub fn minimal_recurrence(terms: &[BigInt], held_out: usize) -> Result<LinearRecurrence> {
    if held_out >= terms.len() {
        return Err(Error::InvalidArgument("no training terms left".into()));
    }
    let training = &terms[..terms.len() - held_out];
    let (connection, length) = berlekamp_massey(training);
    if length == 0 {
        return Err(Error::InvalidArgument(
            "sequence is identically zero on the training window".into(),
        ));
    }
    // q_i = C_{L-i}
    let rational: Vec<BigRational> = (0..=length)
        .map(|i| {
            connection
                .get(length - i)
                .cloned()
                .unwrap_or_else(BigRational::zero)
        })
        .collect();
    let denom_lcm = rational.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = rational
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let rec = LinearRecurrence::new(ints)?;
    match rec.first_violation(terms) {
        Some(i) => Err(Error::HeldOutMismatch {
            index: i + rec.degree(),
        }),
        None => Ok(rec),
    }
}

/// Returns the connection polynomial `C` (constant term first, `C_0 = 1`)
/// and the linear complexity `L`, so that
/// `sum_j C_j s_{i-j} = 0` for `L <= i < len`.
fn berlekamp_massey(seq: &[BigInt]) -> (Vec<BigRational>, usize) {
    let s: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = BigRational::one();

    for i in 0..s.len() {
        let disc: BigRational = c
            .iter()
            .enumerate()
            .filter(|&(j, _)| j <= i)
            .map(|(j, cj)| cj * &s[i - j])
            .sum();
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let scale = &disc / &prev_disc;
        let mut updated = c.clone();
        if updated.len() < b.len() + shift {
            updated.resize(b.len() + shift, BigRational::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            updated[j + shift] -= &scale * bj;
        }
        if 2 * l <= i {
            b = std::mem::replace(&mut c, updated);
            l = i + 1 - l;
            prev_disc = disc;
            shift = 1;
        } else {
            c = updated;
            shift += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    (c, l)
}

/// Exact values of a sequence on a contiguous index range that may extend
/// below zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedTable {
    n_min: i64,
    values: Vec<BigInt>,
}

impl TwoSidedTable {
    pub fn new(n_min: i64, values: Vec<BigInt>) -> Self {
        TwoSidedTable { n_min, values }
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        if n < self.n_min {
            return None;
        }
        self.values.get((n - self.n_min) as usize)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        (self.n_min..).zip(self.values.iter())
    }

    /// The sub-table on `[lo, hi]`, which must lie inside this one.
    pub fn slice(&self, lo: i64, hi: i64) -> TwoSidedTable {
        assert!(lo >= self.n_min && hi <= self.n_max() && lo <= hi + 1);
        let a = (lo - self.n_min) as usize;
        let b = (hi - self.n_min + 1) as usize;
        TwoSidedTable::new(lo, self.values[a..b].to_vec())
    }

    pub fn to_map(&self) -> BTreeMap<i64, BigInt> {
        self.iter().map(|(n, v)| (n, v.clone())).collect()
    }
}

/// Runs `rec` backward from `seed` (values at `n = 0, 1, ..., d - 1`) down to
/// `n_min`. A recurrence with zero constant term is first stripped of its
/// shift factor. Returns the table on `[min(n_min, 0), d - 1]`.
pub fn extrapolate(rec: &LinearRecurrence, seed: &[BigInt], n_min: i64) -> Result<TwoSidedTable> {
    let rec = rec.strip_shift()?;
    let d = rec.degree();
    if seed.len() < d {
        return Err(Error::InvalidArgument(format!(
            "need {d} seed values, got {}",
            seed.len()
        )));
    }
    let q = rec.coeffs();
    let q0 = &q[0];
    let mut values: std::collections::VecDeque<BigInt> = seed[..d].iter().cloned().collect();
    let mut n = 0i64;
    while n > n_min {
        n -= 1;
        let tail: BigInt = (1..=d).map(|i| &q[i] * &values[i - 1]).sum();
        let (quot, rem) = (-tail).div_rem(q0);
        if !rem.is_zero() {
            return Err(Error::NonIntegral { n });
        }
        values.push_front(quot);
    }
    Ok(TwoSidedTable::new(n, values.into()))
}

/// Continues a table forward with `rec` up to `n_max`.
pub fn extend_forward(
    rec: &LinearRecurrence,
    table: &TwoSidedTable,
    n_max: i64,
) -> Result<TwoSidedTable> {
    let d = rec.degree();
    let q = rec.coeffs();
    let qd = &q[d];
    let mut values = table.values.clone();
    if values.len() < d {
        return Err(Error::InvalidArgument(
            "table shorter than recurrence".into(),
        ));
    }
    let mut top = table.n_max();
    while top < n_max {
        let base = values.len() - d;
        let partial: BigInt = (0..d).map(|i| &q[i] * &values[base + i]).sum();
        let (quot, rem) = (-partial).div_rem(qd);
        if !rem.is_zero() {
            return Err(Error::NonIntegral { n: top + 1 });
        }
        values.push(quot);
        top += 1;
    }
    Ok(TwoSidedTable::new(table.n_min, values))
}

/// Builds the table on `[n_min, n_max]` from forward terms `T(1), T(2), ...`
/// with `T(0) = 1`: stored values are used for `n >= 0`, `rec` below zero.
pub fn two_sided_from_forward(
    rec: &LinearRecurrence,
    forward: &[BigInt],
    n_min: i64,
    n_max: i64,
) -> Result<TwoSidedTable> {
    let d = rec.strip_shift()?.degree();
    let mut seed = Vec::with_capacity(forward.len() + 1);
    seed.push(BigInt::one());
    seed.extend_from_slice(forward);
    if seed.len() < d {
        return Err(Error::InvalidArgument("not enough forward terms".into()));
    }
    let back = extrapolate(rec, &seed, n_min.min(0))?;
    let mut values: Vec<BigInt> = back.values()[..(-back.n_min()) as usize].to_vec();
    values.extend(seed);
    let full = TwoSidedTable::new(back.n_min(), values);
    let full = if full.n_max() < n_max {
        extend_forward(rec, &full, n_max)?
    } else {
        full
    };
    Ok(full.slice(n_min, n_max))
}

/// Training and held-out term counts used for order-`order` transfer matrices.
pub fn fit_window(order: usize) -> (usize, usize) {
    (2 * order + 4, order)
}

/// Minimal recurrence of `T(m, 1), T(m, 2), ...`.
pub fn width_recurrence(m: usize, limits: &Limits) -> Result<LinearRecurrence> {
    let t = TransferMatrix::for_width(m, limits)?;
    let (train, held) = fit_window(t.order());
    minimal_recurrence(&t.forward_terms(train + held), held)
}

/// `T(m, n)` for `n_min <= n <= n_max`, forward values from the transfer
/// matrix and backward values from the minimal recurrence.
pub fn two_sided_table(m: usize, n_min: i64, n_max: i64, limits: &Limits) -> Result<TwoSidedTable> {
    if n_min > n_max {
        return Err(Error::InvalidArgument("empty range".into()));
    }
    let t = TransferMatrix::for_width(m, limits)?;
    let (train, held) = fit_window(t.order());
    let forward = t.forward_terms((train + held).max(n_max.max(0) as usize));
    let rec = minimal_recurrence(&forward, forward.len() - train)?;
    two_sided_from_forward(&rec, &forward, n_min, n_max)
}
