//! Strong odd coloring verifier and the explicit colorings of grids, king
//! boards and infinite lattices.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build, FamilySpec, Graph};

/// Total assignment vertex -> color id, every id below `palette`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    assignment: Vec<u32>,
    palette: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<u32>, palette: usize) -> Result<Self> {
        if let Some((v, &c)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &c)| c as usize >= palette)
        {
            return Err(Error::param(
                "assignment",
                format!("vertex {v} has color {c} outside palette {palette}"),
            ));
        }
        Ok(Coloring {
            assignment,
            palette,
        })
    }

    pub fn color(&self, v: usize) -> u32 {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.assignment.iter().collect::<HashSet<_>>().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColoringViolation {
    Improper {
        u: usize,
        v: usize,
    },
    EvenColor {
        vertex: usize,
        color: u32,
        multiplicity: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongOddReport {
    pub ok: bool,
    pub proper: bool,
    pub violators: Vec<ColoringViolation>,
}

/// Proper, and every color present in each open neighbourhood has odd multiplicity.
pub fn verify_strong_odd(g: &Graph, c: &Coloring) -> Result<StrongOddReport> {
    if c.len() != g.n() {
        return Err(Error::Precondition(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            g.n()
        )));
    }
    let mut violators = Vec::new();
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            violators.push(ColoringViolation::Improper { u, v });
        }
    }
    let proper = violators.is_empty();
    for v in 0..g.n() {
        let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
        for w in g.neighbors(v).iter() {
            *mult.entry(c.color(w)).or_default() += 1;
        }
        for (color, m) in mult {
            if m % 2 == 0 {
                violators.push(ColoringViolation::EvenColor {
                    vertex: v,
                    color,
                    multiplicity: m,
                });
            }
        }
    }
    Ok(StrongOddReport {
        ok: violators.is_empty(),
        proper,
        violators,
    })
}

fn self_verified(g: &Graph, c: Coloring, what: &str) -> Result<Coloring> {
    let rep = verify_strong_odd(g, &c)?;
    if rep.ok {
        Ok(c)
    } else {
        Err(Error::Construction(format!(
            "{what}: {} violations, first {:?}",
            rep.violators.len(),
            rep.violators[0]
        )))
    }
}

fn board_coloring(
    rows: usize,
    cols: usize,
    palette: usize,
    f: impl Fn(usize, usize) -> u32,
) -> Result<Coloring> {
    let assignment = (0..rows)
        .flat_map(|a| (0..cols).map(move |b| (a, b)))
        .map(|(a, b)| f(a, b))
        .collect();
    Coloring::new(assignment, palette)
}

/// `(2a + b) mod 5` on `P_p □ P_q`: each vertex sees four distinct colors.
pub fn grid_5_coloring(p: usize, q: usize) -> Result<Coloring> {
    let g = build(&FamilySpec::PathGrid { rows: p, cols: q })?;
    let c = board_coloring(p, q, 5, |a, b| ((2 * a + b) % 5) as u32)?;
    self_verified(&g, c, "grid 5-coloring")
}

/// `(a mod m) + m (b mod m)` with `m = 2r + 1` on the `r`-king board of size `n`.
pub fn king_coloring(n: usize, r: usize) -> Result<Coloring> {
    let g = build(&FamilySpec::RKing { n, r })?;
    let m = 2 * r + 1;
    let c = board_coloring(n, n, m * m, |a, b| ((a % m) + m * (b % m)) as u32)?;
    self_verified(&g, c, "king coloring")
}

/// How the leftover color pair is relabelled between stacked blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LeftoverSwap {
    /// 1<->3, 2<->4.
    Straight,
    /// 1->3, 2->4, 3->2, 4->1.
    Crossed,
}

/// One `(2t-1) x 2t` block: nested frames of two overlapping squares, with the
/// even-row cells of the first and last column filled from the other pair.
/// `first_col_starts_high` / `last_col_starts_high` pick which leftover color
/// opens the alternation in the outermost frame. Colors are 0-based.
fn frame_block(
    t: usize,
    first_col_starts_high: bool,
    last_col_starts_high: bool,
) -> Vec<Vec<Option<u32>>> {
    let rows = 2 * t - 1;
    let cols = 2 * t;
    let mut grid = vec![vec![None; cols]; rows];
    // (left frame, right frame, leftover low, leftover high)
    let (mut left, mut right, mut low, mut high) = (0u32, 1u32, 2u32, 3u32);
    let (mut r0, mut c0) = (0usize, 0usize);
    let (mut h, mut w) = (rows as isize, cols as isize);
    while h > 0 {
        let size = h as usize;
        let in_ring = |a: usize, b: usize| {
            let edge = |x: usize| x < 2 || x + 2 >= size;
            edge(a) || edge(b)
        };
        for (col_shift, color) in [(0usize, left), (1usize, right)] {
            for a in 0..size {
                for b in 0..size {
                    if in_ring(a, b) && (a + b) % 2 == 0 {
                        let cell = &mut grid[r0 + a][c0 + col_shift + b];
                        if cell.is_none() {
                            *cell = Some(color);
                        }
                    }
                }
            }
        }
        for (col, starts_high) in [
            (c0, first_col_starts_high),
            (c0 + w as usize - 1, last_col_starts_high),
        ] {
            let mut use_high = starts_high;
            for a in (1..size.saturating_sub(1)).step_by(2) {
                let cell = &mut grid[r0 + a][col];
                if cell.is_none() {
                    *cell = Some(if use_high { high } else { low });
                }
                use_high = !use_high;
            }
        }
        r0 += 2;
        c0 += 2;
        h -= 4;
        w -= 4;
        std::mem::swap(&mut left, &mut low);
        std::mem::swap(&mut right, &mut high);
    }
    grid
}

/// Strong odd 4-coloring of `P_{m(2t-1)} □ P_{2t}` assembled from `m` frame blocks.
///
/// The first and last row of every block use only one color pair, and the pair
/// alternates between consecutive blocks. The block parameters that the
/// construction leaves open are tried in a fixed order and the first variant
/// that passes the verifier on the whole board is returned.
pub fn grid_frame_4_coloring(t: usize, m: usize) -> Result<Coloring> {
    if t < 2 {
        return Err(Error::param("t", "must be at least 2"));
    }
    if m < 1 {
        return Err(Error::param("m", "must be at least 1"));
    }
    let rows = m * (2 * t - 1);
    let cols = 2 * t;
    let g = build(&FamilySpec::PathGrid { rows, cols })?;
    let mut last_err = None;
    for swap in [LeftoverSwap::Straight, LeftoverSwap::Crossed] {
        for (first_high, last_high) in [(false, false), (true, false), (false, true), (true, true)]
        {
            let block = frame_block(t, first_high, last_high);
            let Some(block): Option<Vec<Vec<u32>>> = block
                .into_iter()
                .map(|row| row.into_iter().collect())
                .collect()
            else {
                return Err(Error::Construction(format!(
                    "frame block for t={t} left cells uncolored"
                )));
            };
            let mut assignment = Vec::with_capacity(rows * cols);
            let mut current = block;
            for _ in 0..m {
                assignment.extend(current.iter().flatten().copied());
                current = current
                    .iter()
                    .map(|row| row.iter().map(|&c| relabel(c, swap)).collect())
                    .collect();
            }
            let c = Coloring::new(assignment, 4)?;
            match self_verified(&g, c, "frame 4-coloring") {
                Ok(c) if rows_use_single_pair(&c, t, m, cols) => return Ok(c),
                Ok(_) => {
                    last_err = Some(Error::Construction(
                        "block border rows mix color pairs".into(),
                    ))
                }
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Construction("no variant verified".into())))
}

fn relabel(c: u32, swap: LeftoverSwap) -> u32 {
    match (swap, c) {
        (_, 0) => 2,
        (_, 1) => 3,
        (LeftoverSwap::Straight, 2) => 0,
        (LeftoverSwap::Straight, _) => 1,
        (LeftoverSwap::Crossed, 2) => 1,
        (LeftoverSwap::Crossed, _) => 0,
    }
}

fn rows_use_single_pair(c: &Coloring, t: usize, m: usize, cols: usize) -> bool {
    let h = 2 * t - 1;
    (0..m).all(|blk| {
        let pair: &[u32] = if blk % 2 == 0 { &[0, 1] } else { &[2, 3] };
        [blk * h, blk * h + h - 1]
            .iter()
            .all(|&row| (0..cols).all(|b| pair.contains(&c.color(row * cols + b))))
    })
}

/// Infinite lattice underlying a [`LatticeColoring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    /// `ℤ^d` with the `2d` unit neighbours.
    Grid,
    /// Six-neighbour skew embedding in `ℤ²`.
    Triangular,
    /// Brick-wall embedding in `ℤ²`.
    Hexagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeRule {
    /// `(a_1 + ... + a_d) mod 3`.
    SumMod3,
    /// `((a_1 + ... + a_{d-1}) mod 3 + a_d mod 2) mod 3`.
    SumMod3ShiftedByLastParity,
    /// `(Σ i·a_i) mod (2d + 1)`.
    WeightedSum,
    /// `(i - j) mod 3`.
    DiagonalMod3,
    /// `(i + j) mod 2`.
    Checkerboard,
    Constant,
}

/// A closed-form coloring of an infinite lattice with a declared period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeColoring {
    pub rule: LatticeRule,
    pub lattice: Lattice,
    pub dimension: usize,
    pub palette: usize,
    pub period: Vec<usize>,
}

impl LatticeColoring {
    pub fn color_at(&self, p: &[i64]) -> u32 {
        let d = self.dimension;
        let v = match self.rule {
            LatticeRule::SumMod3 => p.iter().sum::<i64>().rem_euclid(3),
            LatticeRule::SumMod3ShiftedByLastParity => {
                let head: i64 = p[..d - 1].iter().sum();
                (head.rem_euclid(3) + p[d - 1].rem_euclid(2)) % 3
            }
            LatticeRule::WeightedSum => {
                let s: i64 = p.iter().enumerate().map(|(i, a)| (i as i64 + 1) * a).sum();
                s.rem_euclid(2 * d as i64 + 1)
            }
            LatticeRule::DiagonalMod3 => (p[0] - p[1]).rem_euclid(3),
            LatticeRule::Checkerboard => (p[0] + p[1]).rem_euclid(2),
            LatticeRule::Constant => 0,
        };
        v as u32
    }

    /// Constant single-color rule on `ℤ^d`; never strong odd.
    pub fn constant(d: usize) -> Self {
        LatticeColoring {
            rule: LatticeRule::Constant,
            lattice: Lattice::Grid,
            dimension: d,
            palette: 1,
            period: vec![1; d],
        }
    }
}

/// Three-color strong odd coloring of the infinite `d`-dimensional grid.
pub fn dgrid_3_coloring(d: usize) -> Result<LatticeColoring> {
    if d < 1 {
        return Err(Error::param("d", "dimension must be at least 1"));
    }
    let (rule, period) = if d % 2 == 1 {
        (LatticeRule::SumMod3, vec![3; d])
    } else {
        let mut p = vec![3; d];
        p[d - 1] = 6;
        (LatticeRule::SumMod3ShiftedByLastParity, p)
    };
    Ok(LatticeColoring {
        rule,
        lattice: Lattice::Grid,
        dimension: d,
        palette: 3,
        period,
    })
}

/// Proper coloring of the square of the `d`-dimensional grid with `2d + 1` colors.
pub fn dgrid_square_coloring(d: usize) -> Result<LatticeColoring> {
    if d < 1 {
        return Err(Error::param("d", "dimension must be at least 1"));
    }
    Ok(LatticeColoring {
        rule: LatticeRule::WeightedSum,
        lattice: Lattice::Grid,
        dimension: d,
        palette: 2 * d + 1,
        period: vec![2 * d + 1; d],
    })
}

pub fn triangular_3_coloring() -> LatticeColoring {
    LatticeColoring {
        rule: LatticeRule::DiagonalMod3,
        lattice: Lattice::Triangular,
        dimension: 2,
        palette: 3,
        period: vec![3, 3],
    }
}

pub fn hexagonal_2_coloring() -> LatticeColoring {
    LatticeColoring {
        rule: LatticeRule::Checkerboard,
        lattice: Lattice::Hexagonal,
        dimension: 2,
        palette: 2,
        period: vec![2, 2],
    }
}

/// Lattice neighbours of `p`.
pub fn lattice_neighbors(lattice: Lattice, p: &[i64]) -> Vec<Vec<i64>> {
    match lattice {
        Lattice::Grid => {
            let mut out = Vec::with_capacity(2 * p.len());
            for axis in 0..p.len() {
                for step in [-1, 1] {
                    let mut q = p.to_vec();
                    q[axis] += step;
                    out.push(q);
                }
            }
            out
        }
        Lattice::Triangular => [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
            .iter()
            .map(|(di, dj)| vec![p[0] + di, p[1] + dj])
            .collect(),
        Lattice::Hexagonal => {
            let vertical = if (p[0] + p[1]).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            vec![
                vec![p[0], p[1] - 1],
                vec![p[0], p[1] + 1],
                vec![p[0] + vertical, p[1]],
            ]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowMode {
    StrongOdd,
    ProperOnSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub ok: bool,
    /// Sample of failing interior points (at most 16).
    pub violators: Vec<Vec<i64>>,
    pub interior_points: usize,
    /// Interior extent per axis.
    pub interior_extent: Vec<usize>,
    /// The interior holds a full period box, so success extends to the whole lattice.
    pub covers_full_period: bool,
}

/// Checks the rule at every window point whose relevant neighbourhood (radius
/// one for `StrongOdd`, two for `ProperOnSquare`) lies inside `[0, window)`.
pub fn verify_lattice_coloring(
    rule: &LatticeColoring,
    d: usize,
    window: &[usize],
    mode: WindowMode,
) -> Result<LatticeReport> {
    if d != rule.dimension {
        return Err(Error::param(
            "d",
            format!("rule is {}-dimensional", rule.dimension),
        ));
    }
    if window.len() != d {
        return Err(Error::param("window", format!("expected {d} extents")));
    }
    let margin = match mode {
        WindowMode::StrongOdd => 1,
        WindowMode::ProperOnSquare => 2,
    };
    let interior_extent: Vec<usize> = window
        .iter()
        .map(|&w| w.saturating_sub(2 * margin))
        .collect();
    let covers_full_period = interior_extent
        .iter()
        .zip(&rule.period)
        .all(|(e, p)| e >= p);
    let inside = |q: &[i64]| {
        q.iter()
            .zip(window)
            .all(|(&x, &w)| x >= 0 && (x as usize) < w)
    };

    let mut violators = Vec::new();
    let mut bad = 0usize;
    let mut interior_points = 0usize;
    let mut point = vec![margin as i64; d];
    if interior_extent.contains(&0) {
        return Ok(LatticeReport {
            ok: true,
            violators,
            interior_points: 0,
            interior_extent,
            covers_full_period: false,
        });
    }
    loop {
        interior_points += 1;
        let nbrs = lattice_neighbors(rule.lattice, &point);
        debug_assert!(nbrs.iter().all(|q| inside(q)));
        let own = rule.color_at(&point);
        let failed = match mode {
            WindowMode::StrongOdd => {
                let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
                for q in &nbrs {
                    *mult.entry(rule.color_at(q)).or_default() += 1;
                }
                mult.contains_key(&own) || mult.values().any(|m| m % 2 == 0)
            }
            WindowMode::ProperOnSquare => {
                let mut ball: HashSet<Vec<i64>> = HashSet::new();
                for q in &nbrs {
                    ball.insert(q.clone());
                    for r in lattice_neighbors(rule.lattice, q) {
                        ball.insert(r);
                    }
                }
                ball.remove(&point);
                debug_assert!(ball.iter().all(|q| inside(q)));
                ball.iter().any(|q| rule.color_at(q) == own)
            }
        };
        if failed {
            bad += 1;
            if violators.len() < 16 {
                violators.push(point.clone());
            }
        }
        // odometer over the interior box
        let mut axis = 0;
        loop {
            if axis == d {
                return Ok(LatticeReport {
                    ok: bad == 0,
                    violators,
                    interior_points,
                    interior_extent,
                    covers_full_period,
                });
            }
            point[axis] += 1;
            if (point[axis] as usize) < window[axis] - margin {
                break;
            }
            point[axis] = margin as i64;
            axis += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn king_nine_coloring() {
        let c = king_coloring(3, 1).unwrap();
        assert_eq!(c.colors_used(), 9);
        for n in 3..9 {
            king_coloring(n, 1).unwrap();
        }
    }

    #[test]
    fn rainbow_is_strong_odd() {
        let g = build(&FamilySpec::Queen { n: 4 }).unwrap();
        let c = Coloring::new((0..16).collect(), 16).unwrap();
        assert!(verify_strong_odd(&g, &c).unwrap().ok);
    }

    #[test]
    fn proper_two_coloring_of_c4_fails() {
        let g = build(&FamilySpec::Cycle { n: 4 }).unwrap();
        let c = Coloring::new(vec![0, 1, 0, 1], 2).unwrap();
        let rep = verify_strong_odd(&g, &c).unwrap();
        assert!(rep.proper);
        assert!(!rep.ok);
        assert_eq!(rep.violators.len(), 4);
    }

    #[test]
    fn coloring_rejects_out_of_palette() {
        assert!(Coloring::new(vec![0, 3], 3).is_err());
    }

    #[test]
    fn grid_five_colorings() {
        for (p, q) in [(7, 7), (1, 4), (2, 2), (3, 11)] {
            let c = grid_5_coloring(p, q).unwrap();
            assert!(c.colors_used() <= 5);
        }
    }

    #[test]
    fn frame_colorings_verify() {
        for (t, m) in [(4, 1), (2, 1), (3, 2), (2, 3), (5, 2)] {
            let c = grid_frame_4_coloring(t, m).unwrap();
            assert_eq!(c.len(), m * (2 * t - 1) * 2 * t);
            assert!(c.colors_used() <= 4);
        }
        assert!(grid_frame_4_coloring(1, 1).is_err());
    }

    #[test]
    fn dgrid_three_colorings() {
        let r = dgrid_3_coloring(1).unwrap();
        let rep = verify_lattice_coloring(&r, 1, &[9], WindowMode::StrongOdd).unwrap();
        assert!(rep.ok && rep.covers_full_period);
        let r = dgrid_3_coloring(2).unwrap();
        let rep = verify_lattice_coloring(&r, 2, &[12, 12], WindowMode::StrongOdd).unwrap();
        assert!(rep.ok && rep.covers_full_period);
        let r = dgrid_3_coloring(3).unwrap();
        let rep = verify_lattice_coloring(&r, 3, &[9, 9, 9], WindowMode::StrongOdd).unwrap();
        assert!(rep.ok && rep.covers_full_period);
    }

    #[test]
    fn plain_sum_fails_in_even_dimension() {
        let mut r = dgrid_3_coloring(2).unwrap();
        r.rule = LatticeRule::SumMod3;
        assert!(
            !verify_lattice_coloring(&r, 2, &[8, 8], WindowMode::StrongOdd)
                .unwrap()
                .ok
        );
    }

    #[test]
    fn square_colorings() {
        let r = dgrid_square_coloring(1).unwrap();
        assert!(
            verify_lattice_coloring(&r, 1, &[9], WindowMode::ProperOnSquare)
                .unwrap()
                .ok
        );
        let r = dgrid_square_coloring(2).unwrap();
        let rep = verify_lattice_coloring(&r, 2, &[10, 10], WindowMode::ProperOnSquare).unwrap();
        assert!(rep.ok && rep.covers_full_period);
        let r = dgrid_square_coloring(4).unwrap();
        assert_eq!(r.palette, 9);
        let rep =
            verify_lattice_coloring(&r, 4, &[9, 9, 9, 9], WindowMode::ProperOnSquare).unwrap();
        assert!(rep.ok);
        assert!(!rep.covers_full_period);
    }

    #[test]
    fn constant_rule_fails() {
        let r = LatticeColoring::constant(2);
        let rep = verify_lattice_coloring(&r, 2, &[6, 6], WindowMode::StrongOdd).unwrap();
        assert!(!rep.ok);
        assert!(!rep.violators.is_empty());
    }

    #[test]
    fn triangular_and_hexagonal() {
        let t = triangular_3_coloring();
        assert!(
            verify_lattice_coloring(&t, 2, &[12, 12], WindowMode::StrongOdd)
                .unwrap()
                .ok
        );
        let h = hexagonal_2_coloring();
        assert!(
            verify_lattice_coloring(&h, 2, &[12, 12], WindowMode::StrongOdd)
                .unwrap()
                .ok
        );
        // Two colors cannot be proper on a lattice containing triangles.
        let mut two = t.clone();
        two.rule = LatticeRule::Checkerboard;
        assert!(
            !verify_lattice_coloring(&two, 2, &[12, 12], WindowMode::StrongOdd)
                .unwrap()
                .ok
        );
    }
}
