//! Tilings of `k x m x n` boxes by `1 x 1 x 2` blocks, with `n` as the
//! transfer axis.
//!
//! A cross-section is the `k x m` array of cells. Cell `(i, j)` has flat index
//! `(i - 1) m + (j - 1)` and occupies profile bit `km - 1 - index`, so index 0
//! is the most significant bit; for `k = 1` this is exactly the 2D profile
//! encoding.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{GraphEdge, Sign, SignedGraph, Site};
use crate::limits::Limits;
use crate::recurrence::{fit_window, minimal_recurrence, two_sided_from_forward, LinearRecurrence};
use crate::transfer::TransferMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossSection {
    k: usize,
    m: usize,
}

impl CrossSection {
    pub fn new(k: usize, m: usize, limits: &Limits) -> Result<Self> {
        if k < 1 || m < 1 {
            return Err(Error::InvalidArgument(
                "box sides must be at least 1".into(),
            ));
        }
        let cells = k * m;
        if cells > limits.max_cells_3d {
            return Err(Error::CapExceeded {
                what: "cross-section cell count k*m",
                value: cells as i64,
                cap: limits.max_cells_3d as i64,
            });
        }
        Ok(CrossSection { k, m })
    }

    pub fn cells(&self) -> usize {
        self.k * self.m
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.m + (j - 1)
    }

    pub fn bit(&self, index: usize) -> usize {
        1 << (self.cells() - 1 - index)
    }

    /// Neighbours of a cell with a larger flat index.
    fn forward_neighbours(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = (index / self.m, index % self.m);
        let right = (j + 1 < self.m).then_some(index + 1);
        let down = (i + 1 < self.k).then_some(index + self.m);
        right.into_iter().chain(down)
    }

    /// Adds one row per matching of the cells of `avail` (not necessarily
    /// perfect), keyed by the set of covered cells.
    fn matchings_within(&self, avail: usize, out: &mut Vec<usize>) {
        fn go(cs: &CrossSection, idx: usize, free: usize, covered: usize, out: &mut Vec<usize>) {
            let cells = cs.cells();
            let mut idx = idx;
            while idx < cells && free & cs.bit(idx) == 0 {
                idx += 1;
            }
            if idx == cells {
                out.push(covered);
                return;
            }
            let here = cs.bit(idx);
            // leave this cell for the next slice
            go(cs, idx + 1, free & !here, covered, out);
            for nb in cs.forward_neighbours(idx) {
                let there = cs.bit(nb);
                if free & there != 0 {
                    go(
                        cs,
                        idx + 1,
                        free & !here & !there,
                        covered | here | there,
                        out,
                    );
                }
            }
        }
        go(self, 0, avail, 0, out);
    }
}

/// Transfer matrix of order `2^{km}`. Entry `(c, d)` is zero when a cell is
/// deleted in both profiles, and otherwise the number of perfect matchings
/// of the cross-section induced on the cells kept in both.
pub fn build_transfer_3d(cs: &CrossSection) -> TransferMatrix {
    let bits = cs.cells();
    let all = (1usize << bits) - 1;
    let rows = (0..=all)
        .into_par_iter()
        .map(|c| {
            let mut covers = Vec::new();
            cs.matchings_within(c, &mut covers);
            covers.sort_unstable();
            let mut row: Vec<(usize, u64)> = Vec::new();
            for r in covers {
                let d = (!c & all) | r;
                match row.last_mut() {
                    Some((last, w)) if *last == d => *w += 1,
                    _ => row.push((d, 1)),
                }
            }
            row
        })
        .collect();
    TransferMatrix::from_rows(bits, rows)
}

/// `T(k, m, n)` for `n >= 1`.
pub fn count_3d(k: usize, m: usize, n: usize, limits: &Limits) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let cs = CrossSection::new(k, m, limits)?;
    let all = (1usize << cs.cells()) - 1;
    // Sparse propagation over reachable profiles only; rows are built on
    // first use, so short boxes never touch most of the 2^{km} states.
    let mut rows: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut state: BTreeMap<usize, BigInt> = BTreeMap::from([(all, BigInt::from(1))]);
    for _ in 0..n {
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, weight) in &state {
            let covers = rows.entry(*c).or_insert_with(|| {
                let mut v = Vec::new();
                cs.matchings_within(*c, &mut v);
                v
            });
            for r in covers.iter() {
                *next.entry((!c & all) | r).or_default() += weight;
            }
        }
        state = next;
    }
    Ok(state.remove(&all).unwrap_or_default())
}

/// The `a x b x c` box as a plain graph (all edges positive), for
/// brute-force checks. Vertex labels are `(flat index + 1, 1)`.
pub fn box_graph(a: usize, b: usize, c: usize) -> SignedGraph {
    let id = |x: usize, y: usize, z: usize| (x * b + y) * c + z;
    let labels = (0..a * b * c).map(|i| Site::new(i + 1, 1)).collect();
    let mut edges = Vec::new();
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                let here = id(x, y, z);
                let mut link = |there: usize| {
                    edges.push(GraphEdge {
                        a: here,
                        b: there,
                        sign: Sign::Plus,
                    })
                };
                if x + 1 < a {
                    link(id(x + 1, y, z));
                }
                if y + 1 < b {
                    link(id(x, y + 1, z));
                }
                if z + 1 < c {
                    link(id(x, y, z + 1));
                }
            }
        }
    }
    SignedGraph::new(labels, edges).expect("box graph is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row3d {
    #[serde(serialize_with = "ser_display")]
    pub n: i64,
    #[serde(serialize_with = "ser_display")]
    pub t_forward: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub t_reflected: BigInt,
    /// Observed ratio `T(k,m,-2-n) / T(k,m,n)`: `+1`, `-1`, or `0` when both vanish.
    #[serde(serialize_with = "ser_display")]
    pub sign: i8,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report3d {
    #[serde(serialize_with = "ser_display")]
    pub k: usize,
    #[serde(serialize_with = "ser_display")]
    pub m: usize,
    #[serde(serialize_with = "ser_display")]
    pub n_max: usize,
    pub recurrence: LinearRecurrence,
    pub rows: Vec<Row3d>,
    pub pass: bool,
}

fn ser_display<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Extrapolates `T(k, m, .)` backward through its minimal recurrence and
/// compares `|T(k, m, -2 - n)|` with `|T(k, m, n)|` for `0 <= n <= n_max`.
/// The signs are recorded as observed.
pub fn verify_3d(k: usize, m: usize, n_max: usize, limits: &Limits) -> Result<Report3d> {
    let cs = CrossSection::new(k, m, limits)?;
    let t = build_transfer_3d(&cs);
    let (train, held) = fit_window(t.order());
    let forward = t.forward_terms((train + held).max(n_max));
    let rec = minimal_recurrence(&forward, forward.len() - train)?;
    let top = n_max as i64;
    let table = two_sided_from_forward(&rec, &forward, -2 - top, top)?;

    let rows: Vec<Row3d> = (0..=top)
        .map(|n| {
            let t_forward = table.get(n).expect("in range").clone();
            let t_reflected = table.get(-2 - n).expect("in range").clone();
            let sign = if t_forward == BigInt::from(0) && t_reflected == BigInt::from(0) {
                0
            } else if t_reflected == t_forward {
                1
            } else if t_reflected == -&t_forward {
                -1
            } else {
                0
            };
            let pass = t_reflected.magnitude() == t_forward.magnitude();
            Row3d {
                n,
                t_forward,
                t_reflected,
                sign,
                pass,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(Report3d {
        k,
        m,
        n_max,
        recurrence: rec,
        rows,
        pass,
    })
}
