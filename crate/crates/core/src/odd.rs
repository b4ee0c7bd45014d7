//! Odd independence predicates, forbidden / forcing pairs, and the analytic
//! upper bounds for regular `K_{1,r}`-free graphs.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};

/// A subset of the vertices of one specific graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "VertexList", try_from = "VertexList")]
pub struct VertexSet {
    members: Bitset,
    size: usize,
}

#[derive(Serialize, Deserialize)]
struct VertexList {
    universe: usize,
    vertices: Vec<usize>,
}

impl From<VertexSet> for VertexList {
    fn from(s: VertexSet) -> Self {
        VertexList {
            universe: s.universe(),
            vertices: s.to_vec(),
        }
    }
}

impl TryFrom<VertexList> for VertexSet {
    type Error = Error;

    fn try_from(l: VertexList) -> Result<Self> {
        VertexSet::from_vertices(l.universe, l.vertices)
    }
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            members: Bitset::new(n),
            size: 0,
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::Domain { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Looks up each `(i, j)` among the graph's labels.
    pub fn from_cells(g: &Graph, cells: &[(usize, usize)]) -> Result<Self> {
        let labels = g
            .labels()
            .ok_or_else(|| Error::Precondition("graph has no coordinate labels".into()))?;
        let mut s = VertexSet::empty(g.n());
        for &cell in cells {
            let v = labels.iter().position(|&l| l == cell).ok_or_else(|| {
                Error::Precondition(format!("cell {cell:?} is not a vertex of the graph"))
            })?;
            s.insert(v);
        }
        Ok(s)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = self.members.insert(v);
        self.size += usize::from(fresh);
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let had = self.members.remove(v);
        self.size -= usize::from(had);
        had
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn bits(&self) -> &Bitset {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Member coordinates, when the graph carries labels.
    pub fn cells(&self, g: &Graph) -> Option<Vec<(usize, usize)>> {
        let labels = g.labels()?;
        Some(self.iter().map(|v| labels[v]).collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCheckReport {
    pub independent: bool,
    /// Vertices outside the set seeing a positive even number of members,
    /// with that count.
    pub violators: Vec<(usize, usize)>,
    pub ok: bool,
}

fn check_domain(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.n() {
        let vertex = s.iter().find(|&v| v >= g.n()).unwrap_or(s.universe());
        return Err(Error::Domain { vertex, n: g.n() });
    }
    Ok(())
}

fn odd_check(
    g: &Graph,
    s: &VertexSet,
    constrained: impl Fn(usize) -> bool,
) -> Result<OddCheckReport> {
    check_domain(g, s)?;
    let members = s.bits();
    let independent = s.iter().all(|v| g.neighbors(v).is_disjoint(members));
    let violators: Vec<(usize, usize)> = (0..g.n())
        .filter(|&v| !members.contains(v) && constrained(v))
        .filter_map(|v| {
            let c = g.neighbors(v).intersection_count(members);
            (c > 0 && c.is_multiple_of(2)).then_some((v, c))
        })
        .collect();
    Ok(OddCheckReport {
        independent,
        ok: independent && violators.is_empty(),
        violators,
    })
}

/// Independent, and every outside vertex sees zero or an odd number of members.
pub fn is_odd_independent(g: &Graph, s: &VertexSet) -> Result<OddCheckReport> {
    odd_check(g, s, |_| true)
}

/// Interior vertices of a `P_rows □ P_cols` board, where the parity rule applies
/// in the internal variant.
pub fn interior_mask(g: &Graph) -> Result<Vec<bool>> {
    match g.family() {
        Some(&FamilySpec::PathGrid { rows, cols }) if rows >= 3 && cols >= 3 => Ok((0..g.n())
            .map(|v| {
                let (i, j) = (v / cols, v % cols);
                (1..rows - 1).contains(&i) && (1..cols - 1).contains(&j)
            })
            .collect()),
        _ => Err(Error::Family {
            expected: "path_grid with both sides at least 3",
        }),
    }
}

/// Internal variant on a planar grid: independence everywhere, parity only at
/// degree-4 vertices.
pub fn is_internally_odd_independent(g: &Graph, s: &VertexSet) -> Result<OddCheckReport> {
    let mask = interior_mask(g)?;
    odd_check(g, s, |v| mask[v])
}

fn pair_precondition(g: &Graph, x: usize, y: usize) -> Result<()> {
    for v in [x, y] {
        if v >= g.n() {
            return Err(Error::Domain {
                vertex: v,
                n: g.n(),
            });
        }
    }
    if x == y {
        return Err(Error::Precondition(
            "pair needs two distinct vertices".into(),
        ));
    }
    if g.adjacent(x, y) {
        return Err(Error::Precondition(format!(
            "vertices {x} and {y} are adjacent"
        )));
    }
    Ok(())
}

fn common_neighbors(g: &Graph, x: usize, y: usize) -> Bitset {
    let mut c = g.neighbors(x).clone();
    c.intersect_with(g.neighbors(y));
    c
}

fn forbidden_unchecked(g: &Graph, x: usize, y: usize) -> bool {
    let mut cover = g.closed_neighborhood(x);
    cover.union_with(&g.closed_neighborhood(y));
    common_neighbors(g, x, y)
        .iter()
        .any(|z| g.closed_neighborhood(z).is_subset(&cover))
}

/// Some common neighbour `z` has `N[z] ⊆ N[x] ∪ N[y]`.
pub fn forbidden_pair(g: &Graph, x: usize, y: usize) -> Result<bool> {
    pair_precondition(g, x, y)?;
    Ok(forbidden_unchecked(g, x, y))
}

/// Some common neighbour `z` such that every `w ∈ N(z) \ {x, y}` not adjacent
/// to `x` or not adjacent to `y` forms a forbidden pair with `x` or with `y`.
pub fn forcing_pair(g: &Graph, x: usize, y: usize) -> Result<bool> {
    pair_precondition(g, x, y)?;
    let common = common_neighbors(g, x, y);
    if common.is_empty() {
        return Err(Error::Precondition(format!(
            "vertices {x} and {y} have no common neighbour"
        )));
    }
    let forbidden_with = |a: usize, w: usize| !g.adjacent(a, w) && forbidden_unchecked(g, a, w);
    Ok(common.iter().any(|z| {
        g.neighbors(z)
            .iter()
            .filter(|&w| w != x && w != y)
            .filter(|&w| !g.adjacent(w, x) || !g.adjacent(w, y))
            .all(|w| forbidden_with(x, w) || forbidden_with(y, w))
    }))
}

/// Where a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundContext {
    /// Edge counting in a `d`-regular `K_{1,r}`-free graph.
    RegularStarFree,
    /// Periodic construction (lower bound on density).
    Construction,
    /// Edge counting applied asymptotically to nearly regular lattices.
    AsymptoticStarFree,
    /// Finite window packing with the internal variant.
    InternalPacking,
    /// Matching or triangle partition argument.
    Partition,
}

/// Exact rational bound, always in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Ratio<i64>,
    pub context: BoundContext,
}

impl BoundValue {
    pub fn new(numer: i64, denom: i64, context: BoundContext) -> Self {
        // Ratio::new reduces and normalises the sign.
        BoundValue {
            value: Ratio::new(numer, denom),
            context,
        }
    }

    pub fn numerator(&self) -> i64 {
        *self.value.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.value.denom()
    }

    /// Integer part, i.e. the bound on a vertex count.
    pub fn floor(&self) -> i64 {
        self.value.floor().to_integer()
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format_ratio(self.value))
    }
}

/// `α_od ≤ (r-1)n/(d+r-1)` for even `r`, `(r-2)n/(d+r-2)` for odd `r`.
pub fn star_free_upper_bound(d: u64, r: u64, n: u64) -> Result<BoundValue> {
    if r < 3 {
        return Err(Error::param("r", "star order must be at least 3"));
    }
    if d < 1 {
        return Err(Error::param("d", "degree must be at least 1"));
    }
    if n < 1 {
        return Err(Error::param("n", "order must be at least 1"));
    }
    let s = if r.is_multiple_of(2) { r - 1 } else { r - 2 };
    let numer = i64::try_from(s * n).map_err(|_| Error::param("n", "too large"))?;
    let denom = i64::try_from(d + s).map_err(|_| Error::param("d", "too large"))?;
    Ok(BoundValue::new(numer, denom, BoundContext::RegularStarFree))
}

/// Infinite lattices with published density bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeFamily {
    PlanarGrid,
    RRook,
    RBishop,
    Triangular,
    Hexagonal,
}

/// Known `(lower, upper)` bounds on the odd independence density.
pub fn density_bounds(family: LatticeFamily, r: Option<u64>) -> Result<(BoundValue, BoundValue)> {
    use BoundContext::*;
    match family {
        LatticeFamily::PlanarGrid => Ok((
            BoundValue::new(3, 8, Construction),
            BoundValue::new(260, 676, InternalPacking),
        )),
        LatticeFamily::RRook | LatticeFamily::RBishop => {
            let r = r.ok_or_else(|| Error::param("r", "reach is required for this family"))?;
            if r < 1 {
                return Err(Error::param("r", "reach must be at least 1"));
            }
            let r = r as i64;
            Ok((
                BoundValue::new(1, 2 * r + 1, Construction),
                BoundValue::new(3, 4 * r + 3, AsymptoticStarFree),
            ))
        }
        LatticeFamily::Triangular => Ok((
            BoundValue::new(1, 3, Construction),
            BoundValue::new(1, 3, Partition),
        )),
        LatticeFamily::Hexagonal => Ok((
            BoundValue::new(1, 2, Construction),
            BoundValue::new(1, 2, Partition),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;

    fn grid(k: usize) -> Graph {
        build(&FamilySpec::path_grid(k)).unwrap()
    }

    #[test]
    fn appendix_k3_set_is_odd_independent() {
        let g = grid(3);
        let s = VertexSet::from_cells(&g, &[(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]).unwrap();
        let rep = is_odd_independent(&g, &s).unwrap();
        assert!(rep.ok);
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn empty_set_is_fine() {
        let g = grid(4);
        assert!(is_odd_independent(&g, &VertexSet::empty(16)).unwrap().ok);
        assert!(
            is_internally_odd_independent(&g, &VertexSet::empty(16))
                .unwrap()
                .ok
        );
    }

    #[test]
    fn c4_opposite_pair_fails_parity() {
        let c4 = build(&FamilySpec::Cycle { n: 4 }).unwrap();
        let s = VertexSet::from_vertices(4, [0, 2]).unwrap();
        let rep = is_odd_independent(&c4, &s).unwrap();
        assert!(rep.independent);
        assert!(!rep.ok);
        assert_eq!(rep.violators, vec![(1, 2), (3, 2)]);
    }

    #[test]
    fn domain_errors() {
        let g = grid(3);
        assert!(matches!(
            is_odd_independent(&g, &VertexSet::empty(4)),
            Err(Error::Domain { .. })
        ));
        assert!(VertexSet::from_vertices(3, [3]).is_err());
        let c5 = build(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert!(matches!(
            is_internally_odd_independent(&c5, &VertexSet::empty(5)),
            Err(Error::Family { .. })
        ));
    }

    #[test]
    fn internal_variant_ignores_boundary() {
        let g = grid(4);
        // (0,0) and (0,2): boundary vertex (0,1) sees two, interior vertices see at most one.
        let s = VertexSet::from_cells(&g, &[(0, 0), (0, 2)]).unwrap();
        assert!(!is_odd_independent(&g, &s).unwrap().ok);
        assert!(is_internally_odd_independent(&g, &s).unwrap().ok);
    }

    #[test]
    fn forbidden_pairs() {
        let king = build(&FamilySpec::King { n: 3 }).unwrap();
        let at = |i, j| king.vertex_at(i, j).unwrap();
        assert!(forbidden_pair(&king, at(0, 1), at(2, 1)).unwrap());
        let p4 = build(&FamilySpec::Path { n: 4 }).unwrap();
        assert!(!forbidden_pair(&p4, 0, 3).unwrap());
        let p3 = build(&FamilySpec::Path { n: 3 }).unwrap();
        assert!(forbidden_pair(&p3, 0, 2).unwrap());
        assert!(forbidden_pair(&p3, 0, 1).is_err());
        assert!(forbidden_pair(&p3, 0, 0).is_err());
    }

    #[test]
    fn forcing_pairs() {
        let p3 = build(&FamilySpec::Path { n: 3 }).unwrap();
        assert!(forcing_pair(&p3, 0, 2).unwrap());
        let p4 = build(&FamilySpec::Path { n: 4 }).unwrap();
        assert!(matches!(
            forcing_pair(&p4, 0, 3),
            Err(Error::Precondition(_))
        ));
        // Centre of a claw: the third leaf is independent of both and forms no
        // forbidden pair with either, so two leaves are not forcing.
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!forcing_pair(&claw, 1, 2).unwrap());
        assert!(!forbidden_pair(&claw, 1, 2).unwrap());
    }

    #[test]
    fn star_free_bounds() {
        let b = star_free_upper_bound(8, 8, 1).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (7, 15));
        let b = star_free_upper_bound(12, 5, 1).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (1, 5));
        let b = star_free_upper_bound(2, 4, 6).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (18, 5));
        assert_eq!(b.floor(), 3);
        assert!(star_free_upper_bound(2, 2, 6).is_err());
    }

    #[test]
    fn published_density_bounds() {
        let (lo, hi) = density_bounds(LatticeFamily::PlanarGrid, None).unwrap();
        assert_eq!(lo.value, Ratio::new(3, 8));
        assert_eq!(hi.value, Ratio::new(5, 13));
        let (lo, hi) = density_bounds(LatticeFamily::Triangular, None).unwrap();
        assert_eq!((lo.value, hi.value), (Ratio::new(1, 3), Ratio::new(1, 3)));
        let (lo, hi) = density_bounds(LatticeFamily::RRook, Some(1)).unwrap();
        assert_eq!((lo.value, hi.value), (Ratio::new(1, 3), Ratio::new(3, 7)));
        assert!(density_bounds(LatticeFamily::RBishop, None).is_err());
    }
}
