//! Finite graph families: grids, chessboard graphs, lattice patches, and the
//! product / square operators used to relate them.
//!
//! Every board family uses row-major vertex order over 0-based `(i, j)`
//! coordinates, so vertex `i * cols + j` is the cell in row `i`, column `j`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Largest graph any constructor will build.
pub const MAX_VERTICES: usize = 4096;

/// Which connected color class of a bishop board. `Black` holds the cells with
/// `i + j` even (it contains the corner `(0, 0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BishopColor {
    Black,
    White,
}

impl BishopColor {
    pub fn contains(self, i: usize, j: usize) -> bool {
        (i + j).is_multiple_of(2) == (self == BishopColor::Black)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `P_rows □ P_cols`.
    PathGrid {
        rows: usize,
        cols: usize,
    },
    /// `P_rows □ C_cols`: the column index wraps, `(i, 0) ~ (i, cols - 1)`.
    CylinderGrid {
        rows: usize,
        cols: usize,
    },
    /// `C_rows □ C_cols`.
    TorusGrid {
        rows: usize,
        cols: usize,
    },
    King {
        n: usize,
    },
    RKing {
        n: usize,
        r: usize,
    },
    Rook {
        n: usize,
    },
    RRook {
        n: usize,
        r: usize,
    },
    BishopComponent {
        n: usize,
        color: BishopColor,
    },
    RBishopComponent {
        n: usize,
        r: usize,
        color: BishopColor,
    },
    /// Both bishop components as one (disconnected) graph.
    Bishop {
        n: usize,
    },
    Queen {
        n: usize,
    },
    Knight {
        n: usize,
    },
    TriangularPatch {
        k: usize,
    },
    HexagonalPatch {
        k: usize,
    },
    Complete {
        n: usize,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
}

impl FamilySpec {
    pub fn path_grid(k: usize) -> Self {
        FamilySpec::PathGrid { rows: k, cols: k }
    }

    pub fn cylinder_grid(k: usize) -> Self {
        FamilySpec::CylinderGrid { rows: k, cols: k }
    }

    pub fn torus_grid(k: usize) -> Self {
        FamilySpec::TorusGrid { rows: k, cols: k }
    }

    /// Short family name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::PathGrid { .. } => "path_grid",
            FamilySpec::CylinderGrid { .. } => "cylinder_grid",
            FamilySpec::TorusGrid { .. } => "torus_grid",
            FamilySpec::King { .. } => "king",
            FamilySpec::RKing { .. } => "r_king",
            FamilySpec::Rook { .. } => "rook",
            FamilySpec::RRook { .. } => "r_rook",
            FamilySpec::BishopComponent { .. } => "bishop_component",
            FamilySpec::RBishopComponent { .. } => "r_bishop_component",
            FamilySpec::Bishop { .. } => "bishop",
            FamilySpec::Queen { .. } => "queen",
            FamilySpec::Knight { .. } => "knight",
            FamilySpec::TriangularPatch { .. } => "triangular_patch",
            FamilySpec::HexagonalPatch { .. } => "hexagonal_patch",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteMultipartite { .. } => "complete_multipartite",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
        }
    }

    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        let positive = |field: &'static str, v: usize| {
            if v == 0 {
                Err(Error::param(field, "must be at least 1"))
            } else {
                Ok(())
            }
        };
        match self {
            PathGrid { rows, cols } => {
                positive("rows", *rows)?;
                positive("cols", *cols)
            }
            CylinderGrid { rows, cols } => {
                positive("rows", *rows)?;
                if *cols < 3 {
                    return Err(Error::param("cols", "cycle length must be at least 3"));
                }
                Ok(())
            }
            TorusGrid { rows, cols } => {
                if *rows < 3 {
                    return Err(Error::param("rows", "cycle length must be at least 3"));
                }
                if *cols < 3 {
                    return Err(Error::param("cols", "cycle length must be at least 3"));
                }
                Ok(())
            }
            King { n } | Rook { n } | Queen { n } | Knight { n } | Bishop { n } => {
                positive("n", *n)
            }
            BishopComponent { n, .. } => positive("n", *n),
            RKing { n, r } | RRook { n, r } | RBishopComponent { n, r, .. } => {
                positive("n", *n)?;
                positive("r", *r)
            }
            TriangularPatch { k } | HexagonalPatch { k } => positive("k", *k),
            Complete { n } | Path { n } => positive("n", *n),
            Cycle { n } => {
                if *n < 3 {
                    Err(Error::param("n", "cycle length must be at least 3"))
                } else {
                    Ok(())
                }
            }
            CompleteMultipartite { parts } => {
                if parts.is_empty() {
                    return Err(Error::param("parts", "at least one part is required"));
                }
                if parts.contains(&0) {
                    return Err(Error::param("parts", "part sizes must be at least 1"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            PathGrid { rows, cols } => write!(f, "P{rows}xP{cols}"),
            CylinderGrid { rows, cols } => write!(f, "P{rows}xC{cols}"),
            TorusGrid { rows, cols } => write!(f, "C{rows}xC{cols}"),
            King { n } => write!(f, "king({n})"),
            RKing { n, r } => write!(f, "{r}-king({n})"),
            Rook { n } => write!(f, "rook({n})"),
            RRook { n, r } => write!(f, "{r}-rook({n})"),
            BishopComponent { n, color } => write!(f, "bishop({n},{color:?})"),
            RBishopComponent { n, r, color } => write!(f, "{r}-bishop({n},{color:?})"),
            Bishop { n } => write!(f, "bishop({n})"),
            Queen { n } => write!(f, "queen({n})"),
            Knight { n } => write!(f, "knight({n})"),
            TriangularPatch { k } => write!(f, "triangular({k})"),
            HexagonalPatch { k } => write!(f, "hexagonal({k})"),
            Complete { n } => write!(f, "K{n}"),
            CompleteMultipartite { parts } => {
                let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "K({})", p.join(","))
            }
            Path { n } => write!(f, "P{n}"),
            Cycle { n } => write!(f, "C{n}"),
        }
    }
}

/// Immutable finite simple graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bitset>,
    labels: Option<Vec<(usize, usize)>>,
    family: Option<FamilySpec>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edge_count())
            .field("family", &self.family)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are rejected and repeated
    /// edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                requested: n,
                cap: MAX_VERTICES,
            });
        }
        let mut adj = vec![Bitset::new(n); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::Domain { vertex: u, n });
            }
            if v >= n {
                return Err(Error::Domain { vertex: v, n });
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            adj,
            labels: None,
            family: None,
        })
    }

    fn from_rows(adj: Vec<Bitset>) -> Self {
        let g = Graph {
            adj,
            labels: None,
            family: None,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    fn with_labels(mut self, labels: Vec<(usize, usize)>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    fn with_family(mut self, family: FamilySpec) -> Self {
        self.family = Some(family);
        self
    }

    /// Symmetric, irreflexive, distinct labels.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for (u, row) in self.adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "row {u} has width {}",
                    row.len()
                )));
            }
            if row.contains(u) {
                return Err(Error::Precondition(format!("self-loop at {u}")));
            }
            for v in row.iter() {
                if !self.adj[v].contains(u) {
                    return Err(Error::Precondition(format!(
                        "edge {u}->{v} is not symmetric"
                    )));
                }
            }
        }
        if let Some(labels) = &self.labels {
            let mut seen = HashMap::new();
            for (v, l) in labels.iter().enumerate() {
                if let Some(w) = seen.insert(*l, v) {
                    return Err(Error::Precondition(format!(
                        "vertices {w} and {v} share label {l:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    /// `N[v]` as a fresh bitset.
    pub fn closed_neighborhood(&self, v: usize) -> Bitset {
        let mut b = self.adj[v].clone();
        b.insert(v);
        b
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[(usize, usize)]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<(usize, usize)> {
        self.labels.as_ref().map(|l| l[v])
    }

    /// Vertex id carrying the given board coordinate.
    pub fn vertex_at(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|&l| l == (i, j))
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    /// Same edge set under the shared vertex numbering.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// Largest BFS distance; `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.n();
        let mut best = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            let far = *dist.iter().max()?;
            if far == usize::MAX {
                return None;
            }
            best = best.max(far);
        }
        Some(best)
    }

    /// Subgraph induced by `keep`, renumbered in increasing vertex order.
    pub fn induced(&self, keep: &Bitset) -> Graph {
        let ids: Vec<usize> = keep.iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in ids.iter().enumerate() {
            index[old] = new;
        }
        let m = ids.len();
        let adj = ids
            .iter()
            .map(|&old| {
                let mut row = Bitset::new(m);
                for w in self.adj[old].iter() {
                    if index[w] != usize::MAX {
                        row.insert(index[w]);
                    }
                }
                row
            })
            .collect();
        let mut g = Graph::from_rows(adj);
        if let Some(labels) = &self.labels {
            g.labels = Some(ids.iter().map(|&v| labels[v]).collect());
        }
        g
    }
}

/// Constructs the graph described by `spec`.
pub fn build(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    use FamilySpec::*;
    let g = match *spec {
        PathGrid { rows, cols } => {
            board(rows, cols, |_, _| true, |a, b| grid_adjacent(a, b, None))?
        }
        CylinderGrid { rows, cols } => board(
            rows,
            cols,
            |_, _| true,
            |a, b| grid_adjacent(a, b, Some((None, Some(cols)))),
        )?,
        TorusGrid { rows, cols } => board(
            rows,
            cols,
            |_, _| true,
            |a, b| grid_adjacent(a, b, Some((Some(rows), Some(cols)))),
        )?,
        King { n } => board(n, n, |_, _| true, |a, b| king_adjacent(a, b, 1))?,
        RKing { n, r } => board(n, n, |_, _| true, |a, b| king_adjacent(a, b, r))?,
        Rook { n } => board(n, n, |_, _| true, |a, b| rook_adjacent(a, b, usize::MAX))?,
        RRook { n, r } => board(n, n, |_, _| true, |a, b| rook_adjacent(a, b, r))?,
        BishopComponent { n, color } => board(
            n,
            n,
            |i, j| color.contains(i, j),
            |a, b| bishop_adjacent(a, b, usize::MAX),
        )?,
        RBishopComponent { n, r, color } => board(
            n,
            n,
            |i, j| color.contains(i, j),
            |a, b| bishop_adjacent(a, b, r),
        )?,
        Bishop { n } => board(n, n, |_, _| true, |a, b| bishop_adjacent(a, b, usize::MAX))?,
        Queen { n } => board(
            n,
            n,
            |_, _| true,
            |a, b| rook_adjacent(a, b, usize::MAX) || bishop_adjacent(a, b, usize::MAX),
        )?,
        Knight { n } => board(
            n,
            n,
            |_, _| true,
            |a, b| {
                let (di, dj) = (a.0.abs_diff(b.0), a.1.abs_diff(b.1));
                (di == 1 && dj == 2) || (di == 2 && dj == 1)
            },
        )?,
        TriangularPatch { k } => board(k, k, |_, _| true, triangular_adjacent)?,
        HexagonalPatch { k } => board(k, k, |_, _| true, hexagonal_adjacent)?,
        Complete { n } => {
            check_capacity(n)?;
            let adj = (0..n)
                .map(|v| {
                    let mut row = Bitset::full(n);
                    row.remove(v);
                    row
                })
                .collect();
            Graph::from_rows(adj)
        }
        CompleteMultipartite { ref parts } => {
            let n: usize = parts.iter().sum();
            check_capacity(n)?;
            let part_of: Vec<usize> = parts
                .iter()
                .enumerate()
                .flat_map(|(p, &size)| std::iter::repeat_n(p, size))
                .collect();
            let adj = (0..n)
                .map(|u| {
                    let mut row = Bitset::new(n);
                    for v in (0..n).filter(|&v| part_of[v] != part_of[u]) {
                        row.insert(v);
                    }
                    row
                })
                .collect();
            Graph::from_rows(adj)
        }
        Path { n } => Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))?,
        Cycle { n } => Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))?,
    };
    Ok(g.with_family(spec.clone()))
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            requested: n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

type Cell = (usize, usize);

/// Generic board builder: cells of a `rows x cols` board passing `keep`, in
/// row-major order, joined whenever `adjacent` holds.
fn board(
    rows: usize,
    cols: usize,
    keep: impl Fn(usize, usize) -> bool,
    adjacent: impl Fn(Cell, Cell) -> bool,
) -> Result<Graph> {
    let total = rows.checked_mul(cols).ok_or(Error::Capacity {
        requested: usize::MAX,
        cap: MAX_VERTICES,
    })?;
    check_capacity(total)?;
    let cells: Vec<Cell> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .collect();
    let m = cells.len();
    let mut adj = vec![Bitset::new(m); m];
    for u in 0..m {
        for v in u + 1..m {
            if adjacent(cells[u], cells[v]) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    Ok(Graph::from_rows(adj).with_labels(cells))
}

/// Distance along one axis, optionally cyclic.
fn axis_step(a: usize, b: usize, modulus: Option<usize>) -> bool {
    match modulus {
        None => a.abs_diff(b) == 1,
        Some(m) => {
            let d = a.abs_diff(b);
            d == 1 || d == m - 1
        }
    }
}

fn grid_adjacent(a: Cell, b: Cell, wrap: Option<(Option<usize>, Option<usize>)>) -> bool {
    let (wi, wj) = wrap.unwrap_or((None, None));
    (a.1 == b.1 && axis_step(a.0, b.0, wi)) || (a.0 == b.0 && axis_step(a.1, b.1, wj))
}

fn king_adjacent(a: Cell, b: Cell, r: usize) -> bool {
    a != b && a.0.abs_diff(b.0) <= r && a.1.abs_diff(b.1) <= r
}

fn rook_adjacent(a: Cell, b: Cell, r: usize) -> bool {
    (a.0 == b.0 && a.1 != b.1 && a.1.abs_diff(b.1) <= r)
        || (a.1 == b.1 && a.0 != b.0 && a.0.abs_diff(b.0) <= r)
}

fn bishop_adjacent(a: Cell, b: Cell, r: usize) -> bool {
    let d = a.0.abs_diff(b.0);
    d > 0 && d == a.1.abs_diff(b.1) && d <= r
}

/// Six-neighbour skew embedding: `(i±1, j)`, `(i, j±1)`, `(i+1, j-1)`, `(i-1, j+1)`.
fn triangular_adjacent(a: Cell, b: Cell) -> bool {
    let di = b.0 as i64 - a.0 as i64;
    let dj = b.1 as i64 - a.1 as i64;
    matches!(
        (di, dj),
        (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1)
    )
}

/// Brick wall: `(i, j±1)`, plus `(i+1, j)` when `i + j` is even.
fn hexagonal_adjacent(a: Cell, b: Cell) -> bool {
    if a.0 == b.0 {
        return a.1.abs_diff(b.1) == 1;
    }
    if a.1 != b.1 || a.0.abs_diff(b.0) != 1 {
        return false;
    }
    let lower = if a.0 < b.0 { a } else { b };
    (lower.0 + lower.1) % 2 == 0
}

/// `G □ H` on vertices `(u, v)` numbered `u * |H| + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    product(g, h, |gu, hv| {
        let mut out = Vec::new();
        for v2 in hv.1.iter() {
            out.push((gu.0, v2));
        }
        for u2 in gu.1.iter() {
            out.push((u2, hv.0));
        }
        out
    })
}

/// `G ⊠ H`: Cartesian edges plus `(u, v) ~ (u', v')` for `uu' ∈ E(G)`, `vv' ∈ E(H)`.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    product(g, h, |gu, hv| {
        let mut out = Vec::new();
        for v2 in hv.1.iter() {
            out.push((gu.0, v2));
        }
        for u2 in gu.1.iter() {
            out.push((u2, hv.0));
            for v2 in hv.1.iter() {
                out.push((u2, v2));
            }
        }
        out
    })
}

fn product(
    g: &Graph,
    h: &Graph,
    neighbors: impl Fn((usize, &Bitset), (usize, &Bitset)) -> Vec<(usize, usize)>,
) -> Result<Graph> {
    let (ng, nh) = (g.n(), h.n());
    let total = ng.saturating_mul(nh);
    check_capacity(total)?;
    let mut adj = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for u in 0..ng {
        for v in 0..nh {
            let mut row = Bitset::new(total);
            for (u2, v2) in neighbors((u, g.neighbors(u)), (v, h.neighbors(v))) {
                row.insert(u2 * nh + v2);
            }
            adj.push(row);
            labels.push((u, v));
        }
    }
    Ok(Graph::from_rows(adj).with_labels(labels))
}

/// `G²`: same vertices, adjacency at distance at most two.
pub fn square(g: &Graph) -> Graph {
    let n = g.n();
    let adj = (0..n)
        .map(|v| {
            let mut row = g.neighbors(v).clone();
            for w in g.neighbors(v).iter() {
                row.union_with(g.neighbors(w));
            }
            row.remove(v);
            row
        })
        .collect();
    let mut sq = Graph::from_rows(adj);
    sq.labels = g.labels.clone();
    sq
}

/// Size of a maximum independent subset of `candidates`, stopping early once
/// `target` is reached.
pub(crate) fn independent_subset_reaches(g: &Graph, candidates: &Bitset, target: usize) -> bool {
    fn go(g: &Graph, cand: Bitset, have: usize, target: usize) -> bool {
        if have >= target {
            return true;
        }
        if have + cand.count() < target {
            return false;
        }
        let Some(v) = cand.first() else {
            return false;
        };
        let mut with = cand.clone();
        with.remove(v);
        with.difference_with(g.neighbors(v));
        if go(g, with, have + 1, target) {
            return true;
        }
        let mut without = cand;
        without.remove(v);
        go(g, without, have, target)
    }
    go(g, candidates.clone(), 0, target)
}

/// True iff no vertex has `r` pairwise non-adjacent neighbours (no induced `K_{1,r}`).
pub fn is_claw_free(g: &Graph, r: usize) -> Result<bool> {
    if r < 3 {
        return Err(Error::param("r", "star order must be at least 3"));
    }
    Ok((0..g.n()).all(|v| !independent_subset_reaches(g, g.neighbors(v), r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(k: usize) -> Graph {
        build(&FamilySpec::path_grid(k)).unwrap()
    }

    #[test]
    fn path_grid_counts() {
        let g = grid(3);
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.label(5), Some((1, 2)));
    }

    #[test]
    fn king_degrees() {
        let g = build(&FamilySpec::King { n: 3 }).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(4), 8);
    }

    #[test]
    fn cylinder_wraps_columns_only() {
        let g = build(&FamilySpec::cylinder_grid(4)).unwrap();
        let at = |i, j| g.vertex_at(i, j).unwrap();
        assert!(g.adjacent(at(1, 0), at(1, 3)));
        assert!(!g.adjacent(at(0, 1), at(3, 1)));
        let t = build(&FamilySpec::torus_grid(4)).unwrap();
        assert!(t.adjacent(at(0, 1), at(3, 1)));
        assert!((0..16).all(|v| t.degree(v) == 4));
    }

    #[test]
    fn invalid_params_name_the_field() {
        match build(&FamilySpec::Cycle { n: 2 }) {
            Err(Error::Parameter { field, .. }) => assert_eq!(field, "n"),
            other => panic!("unexpected {other:?}"),
        }
        match build(&FamilySpec::RKing { n: 4, r: 0 }) {
            Err(Error::Parameter { field, .. }) => assert_eq!(field, "r"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            build(&FamilySpec::PathGrid { rows: 65, cols: 65 }),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn k2_square_product_is_c4() {
        let k2 = build(&FamilySpec::Complete { n: 2 }).unwrap();
        let p = cartesian_product(&k2, &k2).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.edge_count(), 4);
        assert!((0..4).all(|v| p.degree(v) == 2));
    }

    #[test]
    fn p3_product_is_grid() {
        let p3 = build(&FamilySpec::Path { n: 3 }).unwrap();
        let p = cartesian_product(&p3, &p3).unwrap();
        assert!(p.same_adjacency(&grid(3)));
    }

    #[test]
    fn k3_product_is_rook() {
        let k3 = build(&FamilySpec::Complete { n: 3 }).unwrap();
        let p = cartesian_product(&k3, &k3).unwrap();
        assert!((0..9).all(|v| p.degree(v) == 4));
        assert!(p.same_adjacency(&build(&FamilySpec::Rook { n: 3 }).unwrap()));
    }

    #[test]
    fn strong_products() {
        let p2 = build(&FamilySpec::Path { n: 2 }).unwrap();
        let k4 = strong_product(&p2, &p2).unwrap();
        assert_eq!(k4.edge_count(), 6);
        for n in [3, 4] {
            let p = build(&FamilySpec::Path { n }).unwrap();
            let king = build(&FamilySpec::King { n }).unwrap();
            assert!(strong_product(&p, &p).unwrap().same_adjacency(&king));
        }
        let p1 = build(&FamilySpec::Path { n: 1 }).unwrap();
        let c5 = build(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert!(strong_product(&p1, &c5).unwrap().same_adjacency(&c5));
    }

    #[test]
    fn squares() {
        let p4 = build(&FamilySpec::Path { n: 4 }).unwrap();
        let sq = square(&p4);
        assert_eq!(sq.edge_count(), 5);
        assert!(sq.adjacent(0, 2) && sq.adjacent(1, 3) && !sq.adjacent(0, 3));
        let k5 = build(&FamilySpec::Complete { n: 5 }).unwrap();
        assert!(square(&k5).same_adjacency(&k5));
    }

    #[test]
    fn queen_has_diameter_two() {
        let q = build(&FamilySpec::Queen { n: 4 }).unwrap();
        assert_eq!(q.diameter(), Some(2));
    }

    #[test]
    fn claw_freeness() {
        let rook = build(&FamilySpec::Rook { n: 4 }).unwrap();
        assert!(is_claw_free(&rook, 3).unwrap());
        assert!(is_claw_free(&grid(4), 5).unwrap());
        assert!(!is_claw_free(&grid(3), 3).unwrap());
        assert!(is_claw_free(&grid(3), 2).is_err());
    }

    #[test]
    fn r_variants_match_classic_pieces() {
        for n in 2..7 {
            let king = build(&FamilySpec::King { n }).unwrap();
            let rking = build(&FamilySpec::RKing { n, r: 1 }).unwrap();
            assert!(king.same_adjacency(&rking));
            let rook = build(&FamilySpec::Rook { n }).unwrap();
            let rrook = build(&FamilySpec::RRook { n, r: n - 1 }).unwrap();
            assert!(rook.same_adjacency(&rrook));
        }
    }

    #[test]
    fn bishop_component_sizes() {
        for n in 1..8 {
            let black = build(&FamilySpec::BishopComponent {
                n,
                color: BishopColor::Black,
            })
            .unwrap();
            let white = build(&FamilySpec::BishopComponent {
                n,
                color: BishopColor::White,
            })
            .unwrap();
            assert_eq!(black.n(), (n * n).div_ceil(2));
            assert_eq!(white.n(), n * n / 2);
            if n >= 2 {
                assert!(black.diameter().is_some());
            }
        }
    }

    #[test]
    fn knight_flips_cell_color() {
        let g = build(&FamilySpec::Knight { n: 6 }).unwrap();
        for (u, v) in g.edges() {
            let (a, b) = (g.label(u).unwrap(), g.label(v).unwrap());
            assert_ne!((a.0 + a.1) % 2, (b.0 + b.1) % 2);
        }
        assert_eq!(g.max_degree(), 8);
    }

    #[test]
    fn lattice_patches() {
        let tri = build(&FamilySpec::TriangularPatch { k: 5 }).unwrap();
        assert_eq!(tri.max_degree(), 6);
        let hex = build(&FamilySpec::HexagonalPatch { k: 6 }).unwrap();
        assert_eq!(hex.max_degree(), 3);
        let at = |i, j| hex.vertex_at(i, j).unwrap();
        assert_eq!(hex.degree(at(2, 2)), 3);
        assert!(hex.adjacent(at(2, 2), at(3, 2)));
        assert!(hex.adjacent(at(2, 3), at(1, 3)));
    }

    #[test]
    fn multipartite() {
        let g = build(&FamilySpec::CompleteMultipartite {
            parts: vec![3, 3, 3],
        })
        .unwrap();
        assert_eq!(g.n(), 9);
        assert!((0..9).all(|v| g.degree(v) == 6));
        assert!(!g.adjacent(0, 2) && g.adjacent(0, 3));
    }
}
