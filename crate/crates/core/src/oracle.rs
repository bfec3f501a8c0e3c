//! Exhaustive signed matching enumeration.
//!
//! This is the ground truth every faster computation is checked against, so
//! it shares no code with the transfer-matrix path: a plain backtracking
//! search that always matches the lowest-indexed free vertex next.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grid::{GraphEdge, Matching, Sign, SignedGraph, SignedGrid};
use crate::limits::Limits;

/// A perfect matching of a [`SignedGraph`], as indices into its edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMatching {
    pub edges: Vec<usize>,
    pub sign: Sign,
}

/// Enumerator with its vertex guard.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    max_vertices: usize,
    force: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(&Limits::default())
    }
}

impl Oracle {
    pub fn new(limits: &Limits) -> Self {
        Oracle {
            max_vertices: limits.oracle_vertices,
            force: false,
        }
    }

    /// Lifts the vertex guard.
    pub fn forced(self) -> Self {
        Oracle {
            force: true,
            ..self
        }
    }

    pub fn accepts(&self, vertices: usize) -> bool {
        self.force || vertices <= self.max_vertices
    }

    fn guard(&self, vertices: usize) -> Result<()> {
        if self.accepts(vertices) {
            Ok(())
        } else {
            Err(Error::CapExceeded {
                what: "oracle vertex count",
                value: vertices as i64,
                cap: self.max_vertices as i64,
            })
        }
    }

    /// All perfect matchings with their signs, sorted lexicographically by
    /// edge list.
    pub fn enumerate(&self, grid: &SignedGrid) -> Result<Vec<Matching>> {
        let graph = grid.to_graph();
        let mut out: Vec<Matching> = self
            .enumerate_graph(&graph)?
            .into_iter()
            .map(|gm| {
                let mut edges: Vec<_> = gm.edges.iter().map(|&i| grid.edges()[i]).collect();
                edges.sort();
                Matching {
                    edges,
                    sign: gm.sign,
                }
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn count_signed(&self, grid: &SignedGrid) -> Result<BigInt> {
        self.count_graph(&grid.to_graph())
    }

    pub fn enumerate_graph(&self, graph: &SignedGraph) -> Result<Vec<GraphMatching>> {
        self.guard(graph.vertex_count())?;
        let mut search = Search::new(graph);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        search.enumerate(&mut chosen, Sign::Plus, &mut out);
        for m in &mut out {
            m.edges.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    pub fn count_graph(&self, graph: &SignedGraph) -> Result<BigInt> {
        self.guard(graph.vertex_count())?;
        Ok(BigInt::from(Search::new(graph).count()))
    }
}

/// Convenience wrapper using the default guard.
pub fn enumerate_matchings(grid: &SignedGrid) -> Result<Vec<Matching>> {
    Oracle::default().enumerate(grid)
}

/// Convenience wrapper using the default guard.
pub fn count_signed(grid: &SignedGrid) -> Result<BigInt> {
    Oracle::default().count_signed(grid)
}

/// Parity of the vertical edge count shared by all matchings of the
/// `m x n` grid: `n * m * (m - 1) / 2 mod 2`.
pub fn vertical_parity_predicted(m: usize, n: usize) -> u8 {
    let tri = (m * m.saturating_sub(1) / 2) % 2;
    ((n % 2) * tri) as u8
}

struct Search<'g> {
    edges: &'g [GraphEdge],
    incidence: Vec<Vec<usize>>,
    matched: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g SignedGraph) -> Self {
        Search {
            edges: graph.edges(),
            incidence: graph.incidence(),
            matched: vec![false; graph.vertex_count()],
        }
    }

    fn first_free(&self) -> Option<usize> {
        self.matched.iter().position(|&m| !m)
    }

    fn count(&mut self) -> i128 {
        let Some(u) = self.first_free() else {
            return 1;
        };
        let mut total = 0;
        for k in 0..self.incidence[u].len() {
            let e = self.edges[self.incidence[u][k]];
            let v = e.other(u);
            if self.matched[v] {
                continue;
            }
            self.matched[u] = true;
            self.matched[v] = true;
            let sub = self.count();
            total += i128::from(e.sign.value()) * sub;
            self.matched[u] = false;
            self.matched[v] = false;
        }
        total
    }

    fn enumerate(&mut self, chosen: &mut Vec<usize>, sign: Sign, out: &mut Vec<GraphMatching>) {
        let Some(u) = self.first_free() else {
            out.push(GraphMatching {
                edges: chosen.clone(),
                sign,
            });
            return;
        };
        for k in 0..self.incidence[u].len() {
            let ei = self.incidence[u][k];
            let e = self.edges[ei];
            let v = e.other(u);
            if self.matched[v] {
                continue;
            }
            self.matched[u] = true;
            self.matched[v] = true;
            chosen.push(ei);
            self.enumerate(chosen, sign.times(e.sign), out);
            chosen.pop();
            self.matched[u] = false;
            self.matched[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build, EdgeKind};

    #[test]
    fn g_2_minus_5_has_three_negative_matchings() {
        let ms = enumerate_matchings(&build(2, -5).unwrap()).unwrap();
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| m.sign == Sign::Minus));
        assert_eq!(
            count_signed(&build(2, -5).unwrap()).unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn width_m_at_zero_and_minus_two_has_unique_positive_matching() {
        for m in 1..=5 {
            for n in [0, -2] {
                let ms = enumerate_matchings(&build(m, n).unwrap()).unwrap();
                assert_eq!(ms.len(), 1, "m={m} n={n}");
                assert_eq!(ms[0].sign, Sign::Plus);
            }
        }
    }

    #[test]
    fn g_2_minus_1_has_no_matching() {
        assert!(enumerate_matchings(&build(2, -1).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn known_counts() {
        assert_eq!(
            count_signed(&build(2, 5).unwrap()).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            count_signed(&build(4, 4).unwrap()).unwrap(),
            BigInt::from(36)
        );
        assert_eq!(
            count_signed(&build(3, 2).unwrap()).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn parity_prediction() {
        assert_eq!(vertical_parity_predicted(2, 3), 1);
        assert!((1..20).all(|n| vertical_parity_predicted(4, n) == 0));
        assert_eq!(vertical_parity_predicted(6, 3), 1);
        assert_eq!(vertical_parity_predicted(6, 4), 0);
        assert_eq!(vertical_parity_predicted(1, 7), 0);
    }

    #[test]
    fn positive_grids_count_plain_matchings() {
        for m in 1..=4 {
            for n in 1..=5 {
                let g = build(m, n).unwrap();
                let ms = enumerate_matchings(&g).unwrap();
                assert!(ms.iter().all(|x| x.sign == Sign::Plus));
                assert_eq!(count_signed(&g).unwrap(), BigInt::from(ms.len()));
            }
        }
    }

    #[test]
    fn every_matching_covers_each_vertex_once() {
        let g = build(3, -4).unwrap();
        for m in enumerate_matchings(&g).unwrap() {
            let mut seen = vec![0; g.vertex_count()];
            for e in &m.edges {
                let (a, b) = e.endpoints();
                seen[g.vertex_index(a)] += 1;
                seen[g.vertex_index(b)] += 1;
            }
            assert!(seen.iter().all(|&c| c == 1));
            let negatives = m.edges.iter().filter(|e| e.sign == Sign::Minus).count();
            assert_eq!(m.sign == Sign::Minus, negatives % 2 == 1);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_repeatable() {
        let g = build(3, 4).unwrap();
        let a = enumerate_matchings(&g).unwrap();
        let b = enumerate_matchings(&g).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn guard_refuses_large_graphs_unless_forced() {
        let g = build(5, 9).unwrap();
        assert!(matches!(count_signed(&g), Err(Error::CapExceeded { .. })));
        let small = Limits {
            oracle_vertices: 4,
            ..Limits::default()
        };
        let o = Oracle::new(&small);
        assert!(o.count_signed(&build(2, 3).unwrap()).is_err());
        assert_eq!(
            o.forced().count_signed(&build(2, 3).unwrap()).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn vertical_count_helper() {
        let ms = enumerate_matchings(&build(2, 2).unwrap()).unwrap();
        let mut counts: Vec<usize> = ms.iter().map(|m| m.vertical_count()).collect();
        counts.sort();
        assert_eq!(counts, vec![0, 2]);
        assert_eq!(
            ms.iter()
                .map(|m| m
                    .edges
                    .iter()
                    .filter(|e| e.kind == EdgeKind::Horizontal)
                    .count())
                .sum::<usize>(),
            2
        );
    }
}
