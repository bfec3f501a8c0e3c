//! Column transfer matrices and fast forward counting.
//!
//! A profile `c = (c_1, ..., c_m)` records, for the rightmost column of a
//! partially built strip, which vertices are kept (`c_i = 1`, matched inside
//! the strip) and which are deleted (`c_i = 0`, to be matched by a horizontal
//! edge into the next column). Profiles are encoded with `c_1` as the most
//! significant bit, so for `m = 2` the index order is `00, 01, 10, 11`.
//!
//! `S(n)` is the row vector of signed counts indexed by profile and
//! `S(n + 1) = S(n) M`. The tiling count `T(m, n)` is the all-ones component
//! of `S(n)`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Below this order the vector-matrix product stays on the calling thread.
const PARALLEL_ORDER: usize = 256;

/// A profile bitmask, see the module docs for the bit order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateMask(pub usize);

impl StateMask {
    pub fn full(bits: usize) -> Self {
        StateMask((1usize << bits) - 1)
    }

    /// `c_i` for 1-based row `i` of a `bits`-row profile.
    pub fn kept(self, bits: usize, row: usize) -> bool {
        (self.0 >> (bits - row)) & 1 == 1
    }

    pub fn from_rows(bits: &[bool]) -> Self {
        StateMask(bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b)))
    }
}

/// Whether the set bits of `mask` form maximal runs of even length, i.e.
/// whether the corresponding rows of one column can be paired off by
/// vertical edges (in exactly one way).
pub fn splits_into_even_runs(mask: usize) -> bool {
    let mut rest = mask;
    while rest != 0 {
        rest >>= rest.trailing_zeros();
        let run = rest.trailing_ones();
        if run % 2 == 1 {
            return false;
        }
        rest = rest.checked_shr(run).unwrap_or(0);
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector(pub Vec<BigInt>);

impl StateVector {
    pub fn unit(order: usize, index: usize) -> Self {
        let mut v = vec![BigInt::zero(); order];
        v[index] = BigInt::from(1);
        StateVector(v)
    }

    pub fn get(&self, mask: StateMask) -> &BigInt {
        &self.0[mask.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Square non-negative integer matrix over profiles, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    bits: usize,
    rows: Vec<Vec<(usize, u64)>>,
    cols: Vec<Vec<(usize, u64)>>,
}

impl TransferMatrix {
    /// Builds from sparse rows; zero weights are dropped.
    pub fn from_rows(bits: usize, rows: Vec<Vec<(usize, u64)>>) -> Self {
        let order = 1usize << bits;
        assert_eq!(rows.len(), order, "row count must be 2^bits");
        let rows: Vec<Vec<(usize, u64)>> = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|&(_, w)| w != 0);
                r.sort_unstable();
                r
            })
            .collect();
        let mut cols = vec![Vec::new(); order];
        for (c, row) in rows.iter().enumerate() {
            for &(d, w) in row {
                assert!(d < order, "column index out of range");
                cols[d].push((c, w));
            }
        }
        TransferMatrix { bits, rows, cols }
    }

    /// The 2D strip matrix for width `m`, under the default cap.
    pub fn for_width(m: usize, limits: &Limits) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument("width m must be at least 1".into()));
        }
        if m > limits.max_width {
            return Err(Error::CapExceeded {
                what: "strip width m",
                value: m as i64,
                cap: limits.max_width as i64,
            });
        }
        let order = 1usize << m;
        let rows = (0..order)
            .map(|c| {
                (0..order)
                    .filter(|&d| column_fill_allowed(m, c, d))
                    .map(|d| (d, 1))
                    .collect()
            })
            .collect();
        Ok(Self::from_rows(m, rows))
    }

    /// Number of profile bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn full_mask(&self) -> StateMask {
        StateMask::full(self.bits)
    }

    pub fn entry(&self, c: usize, d: usize) -> u64 {
        self.rows[c]
            .binary_search_by_key(&d, |&(j, _)| j)
            .map(|k| self.rows[c][k].1)
            .unwrap_or(0)
    }

    pub fn row(&self, c: usize) -> &[(usize, u64)] {
        &self.rows[c]
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let n = self.order();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (c, row) in self.rows.iter().enumerate() {
            for &(d, w) in row {
                out[c][d] = BigInt::from(w);
            }
        }
        out
    }

    /// Row-major matrix of decimal strings, for the JSON dump.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.order())
            .map(|c| {
                (0..self.order())
                    .map(|d| self.entry(c, d).to_string())
                    .collect()
            })
            .collect()
    }

    /// `v M`.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(v.len(), self.order());
        let column = |col: &Vec<(usize, u64)>| -> BigInt {
            col.iter()
                .filter(|(c, _)| !v.0[*c].is_zero())
                .map(|&(c, w)| &v.0[c] * w)
                .sum()
        };
        let out = if self.order() >= PARALLEL_ORDER {
            self.cols.par_iter().map(column).collect()
        } else {
            self.cols.iter().map(column).collect()
        };
        StateVector(out)
    }

    /// `S(1)`: the all-ones row, i.e. one step from the empty strip.
    pub fn initial_state(&self) -> StateVector {
        self.apply(&StateVector::unit(self.order(), self.full_mask().0))
    }

    /// `S(1), S(2), ..., S(n)`.
    pub fn state_vectors(&self, n: usize) -> Vec<StateVector> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(self.initial_state());
        for _ in 1..n {
            let next = self.apply(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// `T(1), ..., T(n_max)` by iterated vector-matrix products.
    pub fn forward_terms(&self, n_max: usize) -> Vec<BigInt> {
        let full = self.full_mask();
        let mut out = Vec::with_capacity(n_max);
        let mut state = StateVector::unit(self.order(), full.0);
        for _ in 0..n_max {
            state = self.apply(&state);
            out.push(state.get(full).clone());
        }
        out
    }

    pub fn count_by_iteration(&self, n: usize) -> BigInt {
        assert!(n >= 1);
        let mut state = self.initial_state();
        for _ in 1..n {
            state = self.apply(&state);
        }
        state.get(self.full_mask()).clone()
    }

    /// `(M^n)[full][full]` through repeated squaring of the dense matrix.
    pub fn count_by_squaring(&self, n: usize) -> BigInt {
        let full = self.full_mask().0;
        let mut result = StateVector::unit(self.order(), full);
        let mut base = self.to_dense();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = StateVector(vec_times_dense(&result.0, &base));
            }
            k >>= 1;
            if k > 0 {
                base = dense_square(&base);
            }
        }
        result.0[full].clone()
    }

    /// `T(n)` picking whichever of iteration or squaring is cheaper.
    pub fn count(&self, n: usize) -> BigInt {
        assert!(n >= 1);
        let order = self.order() as f64;
        let iter_cost = n as f64 * self.nonzeros().max(1) as f64;
        let square_cost = (n as f64).log2().max(1.0) * order * order * order;
        if square_cost < iter_cost {
            self.count_by_squaring(n)
        } else {
            self.count_by_iteration(n)
        }
    }
}

impl Serialize for TransferMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: String,
            entries: Vec<Vec<String>>,
        }
        Repr {
            order: self.order().to_string(),
            entries: self.to_decimal_rows(),
        }
        .serialize(s)
    }
}

/// Entry rule for the 2D matrix: every deleted row of `c` must be filled by
/// a horizontal edge (so it is kept in `d`), and the rows kept in both must
/// pair off vertically inside the new column.
fn column_fill_allowed(m: usize, c: usize, d: usize) -> bool {
    let all = (1usize << m) - 1;
    let deleted = !c & all;
    if deleted & !d != 0 {
        return false;
    }
    splits_into_even_runs(c & d)
}

fn vec_times_dense(v: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, mij) in m[i].iter().enumerate() {
            if !mij.is_zero() {
                out[j] += vi * mij;
            }
        }
    }
    out
}

fn dense_square(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    m.par_iter().map(|row| vec_times_dense(row, m)).collect()
}

/// The 2D transfer matrix for width `m` under the default caps.
pub fn build_transfer_matrix(m: usize) -> Result<TransferMatrix> {
    TransferMatrix::for_width(m, &Limits::default())
}

/// `S(1)` for width `m`: the kept rows of column 1 must pair off vertically.
pub fn initial_state(m: usize) -> StateVector {
    StateVector(
        (0..1usize << m)
            .map(|c| BigInt::from(u8::from(splits_into_even_runs(c))))
            .collect(),
    )
}

/// `T(m, n)` for `n >= 1`.
pub fn count_fast(m: usize, n: usize) -> Result<BigInt> {
    count_fast_with(m, n, &Limits::default())
}

pub fn count_fast_with(m: usize, n: usize, limits: &Limits) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(TransferMatrix::for_width(m, limits)?.count(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_i64(t: &TransferMatrix) -> Vec<Vec<i64>> {
        (0..t.order())
            .map(|c| (0..t.order()).map(|d| t.entry(c, d) as i64).collect())
            .collect()
    }

    #[test]
    fn width_two_matrix_matches_published_form() {
        let t = build_transfer_matrix(2).unwrap();
        assert_eq!(
            dense_i64(&t),
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn width_one_matrix_is_a_swap() {
        let t = build_transfer_matrix(1).unwrap();
        assert_eq!(dense_i64(&t), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn width_three_entries_are_binary() {
        let t = build_transfer_matrix(3).unwrap();
        let d = dense_i64(&t);
        assert!(d.iter().flatten().all(|&x| x == 0 || x == 1));
        // Column of height 3 from the all-kept profile: all rows horizontal,
        // or one vertical pair (rows 1-2 or 2-3) plus one horizontal.
        let targets: Vec<usize> = (0..8).filter(|&j| d[7][j] != 0).collect();
        assert_eq!(targets, vec![0b000, 0b011, 0b110]);
    }

    #[test]
    fn initial_states() {
        let s = initial_state(2);
        assert_eq!(
            s.0,
            vec![1, 0, 0, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        assert_eq!(initial_state(1).0, vec![BigInt::from(1), BigInt::from(0)]);
        for m in 1..=8 {
            assert_eq!(initial_state(m).0[0], BigInt::from(1));
            let t = build_transfer_matrix(m).unwrap();
            assert_eq!(t.initial_state(), initial_state(m), "m={m}");
        }
    }

    #[test]
    fn even_runs() {
        assert!(splits_into_even_runs(0));
        assert!(splits_into_even_runs(0b11));
        assert!(splits_into_even_runs(0b110011));
        assert!(!splits_into_even_runs(0b111));
        assert!(!splits_into_even_runs(0b1011));
        assert!(splits_into_even_runs(usize::MAX));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_fast(2, 5).unwrap(), BigInt::from(8));
        assert_eq!(count_fast(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(count_fast(4, 4).unwrap(), BigInt::from(36));
        // 8x8 chessboard.
        assert_eq!(count_fast(8, 8).unwrap(), BigInt::from(12_988_816));
    }

    #[test]
    fn iteration_and_squaring_agree() {
        for m in 1..=5 {
            let t = build_transfer_matrix(m).unwrap();
            for n in 1..=20 {
                assert_eq!(
                    t.count_by_iteration(n),
                    t.count_by_squaring(n),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let tight = Limits {
            max_width: 3,
            ..Limits::default()
        };
        assert!(matches!(
            TransferMatrix::for_width(4, &tight),
            Err(Error::CapExceeded { .. })
        ));
        assert!(build_transfer_matrix(0).is_err());
        assert!(count_fast(2, 0).is_err());
    }

    #[test]
    fn state_mask_bit_order() {
        let c = StateMask::from_rows(&[true, false, false]);
        assert_eq!(c.0, 0b100);
        assert!(c.kept(3, 1));
        assert!(!c.kept(3, 3));
    }

    #[test]
    fn json_dump_is_row_major_strings() {
        let t = build_transfer_matrix(1).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"order": "2", "entries": [["0", "1"], ["1", "0"]]})
        );
    }
}
