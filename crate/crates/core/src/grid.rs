//! Signed strip graphs.
//!
//! A [`SignedGrid`] is a subgraph of the `m x N` grid graph whose edges carry
//! a sign of `+1` or `-1`. Vertices are identified by `(row, col)`, both
//! 1-based. [`build`] produces the family `G(m, n)` for every integer `n`:
//!
//! * `n >= 1`: the plain `m x n` grid, every edge positive;
//! * `n <= 0`: an `m x (2 - n)` grid whose first and last columns carry no
//!   vertical edges and whose remaining vertical edges are all negative.
//!
//! [`adjoin`] places two grids of equal width side by side and joins them
//! with one positive horizontal edge per row. Chain shrinking produces graphs
//! outside the grid family, so it lives on the general [`SignedGraph`].

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// `Horizontal` at `(row, col)` joins `(row, col)`-`(row, col + 1)`;
/// `Vertical` joins `(row, col)`-`(row + 1, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub kind: EdgeKind,
    pub row: usize,
    pub col: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn endpoints(&self) -> (Site, Site) {
        let a = Site::new(self.row, self.col);
        let b = match self.kind {
            EdgeKind::Horizontal => Site::new(self.row, self.col + 1),
            EdgeKind::Vertical => Site::new(self.row + 1, self.col),
        };
        (a, b)
    }

    fn slot(&self) -> (EdgeKind, usize, usize) {
        (self.kind, self.row, self.col)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: EdgeKind,
            row: String,
            col: String,
            sign: Sign,
        }
        Repr {
            kind: self.kind,
            row: self.row.to_string(),
            col: self.col.to_string(),
            sign: self.sign,
        }
        .serialize(s)
    }
}

/// A vertex label `(row, col)`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub row: usize,
    pub col: usize,
}

impl Site {
    pub fn new(row: usize, col: usize) -> Self {
        Site { row, col }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGrid {
    width: usize,
    columns: usize,
    edges: Vec<Edge>,
}

impl SignedGrid {
    /// Validates and canonicalizes (sorts) the edge list.
    pub fn new(width: usize, columns: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if width == 0 || columns == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid must have at least one row and column, got {width} x {columns}"
            )));
        }
        for e in &edges {
            let in_range = e.row >= 1
                && e.col >= 1
                && match e.kind {
                    EdgeKind::Horizontal => e.row <= width && e.col < columns,
                    EdgeKind::Vertical => e.row < width && e.col <= columns,
                };
            if !in_range {
                return Err(Error::InvalidArgument(format!(
                    "edge {e:?} leaves the {width} x {columns} grid"
                )));
            }
        }
        edges.sort();
        if edges.windows(2).any(|w| w[0].slot() == w[1].slot()) {
            return Err(Error::InvalidArgument("duplicate edge".into()));
        }
        Ok(SignedGrid {
            width,
            columns,
            edges,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn vertex_count(&self) -> usize {
        self.width * self.columns
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn count_edges(&self, kind: EdgeKind, sign: Sign) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind == kind && e.sign == sign)
            .count()
    }

    /// Column-major vertex numbering used by [`SignedGrid::to_graph`].
    pub fn vertex_index(&self, site: Site) -> usize {
        (site.col - 1) * self.width + (site.row - 1)
    }

    /// The same graph as a general [`SignedGraph`]. Edge `i` of the result is
    /// `self.edges()[i]`.
    pub fn to_graph(&self) -> SignedGraph {
        let mut labels = Vec::with_capacity(self.vertex_count());
        for col in 1..=self.columns {
            for row in 1..=self.width {
                labels.push(Site::new(row, col));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                GraphEdge {
                    a: self.vertex_index(a),
                    b: self.vertex_index(b),
                    sign: e.sign,
                }
            })
            .collect();
        SignedGraph { labels, edges }
    }
}

impl Serialize for SignedGrid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            width: String,
            columns: String,
            vertex_count: String,
            edges: &'a [Edge],
        }
        Repr {
            width: self.width.to_string(),
            columns: self.columns.to_string(),
            vertex_count: self.vertex_count().to_string(),
            edges: &self.edges,
        }
        .serialize(s)
    }
}

/// `G(m, n)`.
pub fn build(m: usize, n: i64) -> Result<SignedGrid> {
    if m < 1 {
        return Err(Error::InvalidArgument("width m must be at least 1".into()));
    }
    let mut edges = Vec::new();
    let columns;
    if n >= 1 {
        columns = n as usize;
        push_horizontals(&mut edges, m, columns);
        for col in 1..=columns {
            for row in 1..m {
                edges.push(vertical(row, col, Sign::Plus));
            }
        }
    } else {
        columns = (2 - n) as usize;
        push_horizontals(&mut edges, m, columns);
        for col in 2..columns {
            for row in 1..m {
                edges.push(vertical(row, col, Sign::Minus));
            }
        }
    }
    SignedGrid::new(m, columns, edges)
}

fn push_horizontals(edges: &mut Vec<Edge>, m: usize, columns: usize) {
    for row in 1..=m {
        for col in 1..columns {
            edges.push(Edge {
                kind: EdgeKind::Horizontal,
                row,
                col,
                sign: Sign::Plus,
            });
        }
    }
}

fn vertical(row: usize, col: usize, sign: Sign) -> Edge {
    Edge {
        kind: EdgeKind::Vertical,
        row,
        col,
        sign,
    }
}

/// Places `left` before `right` and joins the facing columns with one
/// positive horizontal edge per row.
pub fn adjoin(left: &SignedGrid, right: &SignedGrid) -> Result<SignedGrid> {
    if left.width != right.width {
        return Err(Error::WidthMismatch {
            left: left.width,
            right: right.width,
        });
    }
    let offset = left.columns;
    let mut edges = left.edges.clone();
    edges.extend(right.edges.iter().map(|e| Edge {
        col: e.col + offset,
        ..*e
    }));
    for row in 1..=left.width {
        edges.push(Edge {
            kind: EdgeKind::Horizontal,
            row,
            col: offset,
            sign: Sign::Plus,
        });
    }
    SignedGrid::new(left.width, left.columns + right.columns, edges)
}

/// A perfect matching of a [`SignedGrid`] together with its sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    pub edges: Vec<Edge>,
    pub sign: Sign,
}

impl Matching {
    pub fn vertical_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Vertical)
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub sign: Sign,
}

impl GraphEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

/// A signed multigraph with labelled vertices. Parallel edges are allowed,
/// self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    labels: Vec<Site>,
    edges: Vec<GraphEdge>,
}

impl SignedGraph {
    pub fn new(labels: Vec<Site>, edges: Vec<GraphEdge>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(*l, i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate vertex label {l}"
                )));
            }
        }
        for e in &edges {
            if e.a >= labels.len() || e.b >= labels.len() || e.a == e.b {
                return Err(Error::InvalidArgument(format!("bad edge {e:?}")));
            }
        }
        Ok(SignedGraph { labels, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Site] {
        &self.labels
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn index_of(&self, site: Site) -> Option<usize> {
        self.labels.iter().position(|&l| l == site)
    }

    /// Adjacency lists of edge indices, in edge order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.a].push(i);
            inc[e.b].push(i);
        }
        inc
    }

    /// Deletes the given vertices together with their incident edges.
    pub fn remove_vertices(&self, sites: &[Site]) -> Result<SignedGraph> {
        let mut drop = vec![false; self.labels.len()];
        for &s in sites {
            let i = self
                .index_of(s)
                .ok_or_else(|| Error::InvalidArgument(format!("no vertex {s}")))?;
            drop[i] = true;
        }
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, &l) in self.labels.iter().enumerate() {
            if !drop[i] {
                remap[i] = labels.len();
                labels.push(l);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !drop[e.a] && !drop[e.b])
            .map(|e| GraphEdge {
                a: remap[e.a],
                b: remap[e.b],
                sign: e.sign,
            })
            .collect();
        SignedGraph::new(labels, edges)
    }

    /// Contracts the chain `u - v - w` to a single vertex.
    ///
    /// `v` must have exactly the two incident edges `uv` and `vw`, both
    /// positive. `v` is deleted and `w` is merged into `u`, which keeps its
    /// label; edges that would become loops (former `uw` edges) are dropped
    /// since no perfect matching can use them.
    pub fn shrink_chain(&self, u: Site, v: Site, w: Site) -> Result<SignedGraph> {
        let find = |s: Site| {
            self.index_of(s)
                .ok_or_else(|| Error::ShrinkPrecondition(format!("no vertex {s}")))
        };
        let (ui, vi, wi) = (find(u)?, find(v)?, find(w)?);
        if ui == vi || vi == wi || ui == wi {
            return Err(Error::ShrinkPrecondition("u, v, w must be distinct".into()));
        }
        let at_v: Vec<&GraphEdge> = self.edges.iter().filter(|e| e.touches(vi)).collect();
        if at_v.len() != 2 {
            return Err(Error::ShrinkPrecondition(format!(
                "middle vertex {v} has degree {}, expected 2",
                at_v.len()
            )));
        }
        let hits_u = at_v.iter().filter(|e| e.other(vi) == ui).count();
        let hits_w = at_v.iter().filter(|e| e.other(vi) == wi).count();
        if hits_u != 1 || hits_w != 1 {
            return Err(Error::ShrinkPrecondition(format!(
                "middle vertex {v} must be adjacent to exactly {u} and {w}"
            )));
        }
        if at_v.iter().any(|e| e.sign == Sign::Minus) {
            return Err(Error::ShrinkPrecondition("chain edges must be +1".into()));
        }

        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, &l) in self.labels.iter().enumerate() {
            if i == vi || i == wi {
                continue;
            }
            remap[i] = labels.len();
            labels.push(l);
        }
        remap[wi] = remap[ui];
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.touches(vi))
            .map(|e| GraphEdge {
                a: remap[e.a],
                b: remap[e.b],
                sign: e.sign,
            })
            .filter(|e| e.a != e.b)
            .collect();
        SignedGraph::new(labels, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_2_5_is_plain_grid() {
        let g = build(2, 5).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edges().len(), 13);
        assert!(g.edges().iter().all(|e| e.sign == Sign::Plus));
    }

    #[test]
    fn g_2_minus_5_has_negative_inner_verticals() {
        let g = build(2, -5).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.count_edges(EdgeKind::Horizontal, Sign::Plus), 12);
        assert_eq!(g.count_edges(EdgeKind::Horizontal, Sign::Minus), 0);
        assert_eq!(g.count_edges(EdgeKind::Vertical, Sign::Minus), 5);
        assert_eq!(g.count_edges(EdgeKind::Vertical, Sign::Plus), 0);
        let cols: Vec<usize> = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Vertical)
            .map(|e| e.col)
            .collect();
        assert_eq!(cols, vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn g_3_0_has_no_verticals() {
        let g = build(3, 0).unwrap();
        assert_eq!((g.width(), g.columns()), (3, 2));
        assert_eq!(g.edges().len(), 3);
        assert!(g.edges().iter().all(|e| e.kind == EdgeKind::Horizontal));
    }

    #[test]
    fn build_rejects_zero_width() {
        assert!(matches!(build(0, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn edge_count_formula() {
        for m in 1..=5usize {
            for n in -6i64..=6 {
                let g = build(m, n).unwrap();
                let expected = if n >= 1 {
                    let n = n as usize;
                    m * (n - 1) + (m - 1) * n
                } else {
                    let k = (-n) as usize;
                    m * (1 + k) + (m - 1) * k
                };
                assert_eq!(g.edges().len(), expected, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn adjoin_positive_parts_is_literal_concatenation() {
        let g = adjoin(&build(2, 2).unwrap(), &build(2, 3).unwrap()).unwrap();
        assert_eq!(g, build(2, 5).unwrap());
    }

    #[test]
    fn adjoin_matches_figures() {
        // G(2,3) G(2,-3): 8 columns, 3 positive verticals then 3 negative ones.
        let g = adjoin(&build(2, 3).unwrap(), &build(2, -3).unwrap()).unwrap();
        assert_eq!(g.columns(), 8);
        assert_eq!(g.count_edges(EdgeKind::Horizontal, Sign::Plus), 14);
        let verts: Vec<(usize, Sign)> = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Vertical)
            .map(|e| (e.col, e.sign))
            .collect();
        use Sign::*;
        assert_eq!(
            verts,
            vec![
                (1, Plus),
                (2, Plus),
                (3, Plus),
                (5, Minus),
                (6, Minus),
                (7, Minus)
            ]
        );

        // G(2,-2) G(2,-3): 9 columns, negative verticals at 2,3 and 6,7,8.
        let g = adjoin(&build(2, -2).unwrap(), &build(2, -3).unwrap()).unwrap();
        assert_eq!(g.columns(), 9);
        let cols: Vec<usize> = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Vertical)
            .map(|e| e.col)
            .collect();
        assert_eq!(cols, vec![2, 3, 6, 7, 8]);
        assert_eq!(g.count_edges(EdgeKind::Horizontal, Sign::Plus), 16);
    }

    #[test]
    fn adjoin_rejects_width_mismatch() {
        let r = adjoin(&build(2, 1).unwrap(), &build(3, 1).unwrap());
        assert_eq!(r, Err(Error::WidthMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn adjoin_is_associative() {
        let a = build(3, 2).unwrap();
        let b = build(3, -1).unwrap();
        let c = build(3, 1).unwrap();
        let left = adjoin(&adjoin(&a, &b).unwrap(), &c).unwrap();
        let right = adjoin(&a, &adjoin(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn grid_rejects_out_of_range_and_duplicates() {
        let bad = Edge {
            kind: EdgeKind::Vertical,
            row: 2,
            col: 1,
            sign: Sign::Plus,
        };
        assert!(SignedGrid::new(2, 2, vec![bad]).is_err());
        let e = Edge {
            kind: EdgeKind::Horizontal,
            row: 1,
            col: 1,
            sign: Sign::Plus,
        };
        let e2 = Edge {
            sign: Sign::Minus,
            ..e
        };
        assert!(SignedGrid::new(2, 2, vec![e, e2]).is_err());
    }

    #[test]
    fn shrink_path_to_single_vertex() {
        let labels = vec![Site::new(1, 1), Site::new(1, 2), Site::new(1, 3)];
        let edges = vec![
            GraphEdge {
                a: 0,
                b: 1,
                sign: Sign::Plus,
            },
            GraphEdge {
                a: 1,
                b: 2,
                sign: Sign::Plus,
            },
        ];
        let g = SignedGraph::new(labels, edges).unwrap();
        let s = g
            .shrink_chain(Site::new(1, 1), Site::new(1, 2), Site::new(1, 3))
            .unwrap();
        assert_eq!(s.vertex_count(), 1);
        assert!(s.edges().is_empty());
        assert_eq!(s.labels(), &[Site::new(1, 1)]);
    }

    #[test]
    fn shrink_rejects_bad_chains() {
        let g = build(2, 3).unwrap().to_graph();
        // (1,2) has degree 3.
        let r = g.shrink_chain(Site::new(1, 1), Site::new(1, 2), Site::new(1, 3));
        assert!(matches!(r, Err(Error::ShrinkPrecondition(_))));

        let labels = vec![Site::new(1, 1), Site::new(1, 2), Site::new(1, 3)];
        let edges = vec![
            GraphEdge {
                a: 0,
                b: 1,
                sign: Sign::Plus,
            },
            GraphEdge {
                a: 1,
                b: 2,
                sign: Sign::Minus,
            },
        ];
        let g = SignedGraph::new(labels, edges).unwrap();
        let r = g.shrink_chain(Site::new(1, 1), Site::new(1, 2), Site::new(1, 3));
        assert!(matches!(r, Err(Error::ShrinkPrecondition(_))));
    }

    #[test]
    fn grid_json_shape() {
        let g = build(1, 2).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "width": "1",
                "columns": "2",
                "vertex_count": "2",
                "edges": [{"kind": "horizontal", "row": "1", "col": "1", "sign": "+1"}]
            })
        );
    }
}
