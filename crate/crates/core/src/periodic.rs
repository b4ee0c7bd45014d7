//! Doubly-periodic subsets of `ℤ²` and their odd independence under the
//! lattice adjacencies of grids, chessboard pieces and planar tilings.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};
use crate::odd::{is_odd_independent, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PatternFamily {
    PlanarGrid,
    RRook {
        r: usize,
    },
    /// One color class of the `r`-bishop lattice.
    RBishopComponent {
        r: usize,
    },
    Knight,
    Triangular,
    Hexagonal,
}

impl PatternFamily {
    /// Offsets from `(i, j)` to its lattice neighbours, one entry per neighbour.
    pub fn offsets(&self, i: i64, j: i64) -> Vec<(i64, i64)> {
        match *self {
            PatternFamily::PlanarGrid => vec![(1, 0), (-1, 0), (0, 1), (0, -1)],
            PatternFamily::RRook { r } => (1..=r as i64)
                .flat_map(|t| [(t, 0), (-t, 0), (0, t), (0, -t)])
                .collect(),
            PatternFamily::RBishopComponent { r } => (1..=r as i64)
                .flat_map(|t| [(t, t), (t, -t), (-t, t), (-t, -t)])
                .collect(),
            PatternFamily::Knight => vec![
                (1, 2),
                (2, 1),
                (-1, 2),
                (-2, 1),
                (1, -2),
                (2, -1),
                (-1, -2),
                (-2, -1),
            ],
            PatternFamily::Triangular => vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)],
            PatternFamily::Hexagonal => {
                let vertical = if (i + j).rem_euclid(2) == 0 { 1 } else { -1 };
                vec![(0, 1), (0, -1), (vertical, 0)]
            }
        }
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternFamily::PlanarGrid => write!(f, "planar_grid"),
            PatternFamily::RRook { r } => write!(f, "r_rook(r={r})"),
            PatternFamily::RBishopComponent { r } => write!(f, "r_bishop_component(r={r})"),
            PatternFamily::Knight => write!(f, "knight"),
            PatternFamily::Triangular => write!(f, "triangular"),
            PatternFamily::Hexagonal => write!(f, "hexagonal"),
        }
    }
}

/// Cells of a `p × q` fundamental domain, repeated over `ℤ²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicPattern {
    period: (usize, usize),
    cells: BTreeSet<(usize, usize)>,
    family: PatternFamily,
}

impl PeriodicPattern {
    pub fn new(
        period: (usize, usize),
        cells: impl IntoIterator<Item = (usize, usize)>,
        family: PatternFamily,
    ) -> Result<Self> {
        let (p, q) = period;
        if p == 0 || q == 0 {
            return Err(Error::param("period", "both periods must be positive"));
        }
        let cells: BTreeSet<_> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|&&(i, j)| i >= p || j >= q) {
            return Err(Error::param(
                "cells",
                format!("{c:?} outside the {p}x{q} domain"),
            ));
        }
        match family {
            PatternFamily::Hexagonal if p % 2 == 1 || q % 2 == 1 => {
                return Err(Error::param(
                    "period",
                    "hexagonal patterns need even periods",
                ));
            }
            PatternFamily::RBishopComponent { .. } => {
                if p % 2 == 1 || q % 2 == 1 {
                    return Err(Error::param(
                        "period",
                        "bishop component patterns need even periods",
                    ));
                }
                let colors: BTreeSet<_> = cells.iter().map(|&(i, j)| (i + j) % 2).collect();
                if colors.len() > 1 {
                    return Err(Error::param("cells", "cells must share one square color"));
                }
            }
            _ => {}
        }
        if let PatternFamily::RRook { r } | PatternFamily::RBishopComponent { r } = family {
            if r == 0 {
                return Err(Error::param("r", "must be at least 1"));
            }
        }
        Ok(PeriodicPattern {
            period,
            cells,
            family,
        })
    }

    pub fn period(&self) -> (usize, usize) {
        self.period
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    pub fn family(&self) -> PatternFamily {
        self.family
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        let (p, q) = self.period;
        self.cells.contains(&(
            i.rem_euclid(p as i64) as usize,
            j.rem_euclid(q as i64) as usize,
        ))
    }

    /// Same family and period, every cell moved by `(di, dj)`.
    pub fn translated(&self, di: i64, dj: i64) -> Result<Self> {
        let (p, q) = (self.period.0 as i64, self.period.1 as i64);
        let cells = self.cells.iter().map(|&(i, j)| {
            (
                (i as i64 + di).rem_euclid(p) as usize,
                (j as i64 + dj).rem_euclid(q) as usize,
            )
        });
        PeriodicPattern::new(self.period, cells, self.family)
    }

    /// Fraction of the lattice's vertices that are selected. For a bishop
    /// component the lattice is the one color class.
    pub fn density(&self) -> Ratio<i64> {
        let (p, q) = self.period;
        let area = match self.family {
            PatternFamily::RBishopComponent { .. } => p * q / 2,
            _ => p * q,
        };
        Ratio::new(self.cells.len() as i64, area as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    #[serde(with = "ratio_pair")]
    pub density: Ratio<i64>,
    pub ok: bool,
    /// Sample of failing cells (at most 16).
    pub violators: Vec<(i64, i64)>,
}

mod ratio_pair {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        (*r.numer(), *r.denom()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let (n, m) = <(i64, i64)>::deserialize(d)?;
        if m == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(n, m))
    }
}

const MAX_VIOLATORS: usize = 16;

fn cell_fails(pat: &PeriodicPattern, i: i64, j: i64) -> bool {
    let hits = pat
        .family
        .offsets(i, j)
        .iter()
        .filter(|&&(a, b)| pat.contains(i + a, j + b))
        .count();
    if pat.contains(i, j) {
        hits > 0
    } else {
        hits % 2 == 0 && hits > 0
    }
}

/// Checks every cell of one fundamental domain with wraparound; by
/// periodicity this settles the whole infinite set.
pub fn verify_periodic(pat: &PeriodicPattern) -> DensityReport {
    let (p, q) = pat.period;
    let mut violators = Vec::new();
    let mut ok = true;
    for i in 0..p as i64 {
        for j in 0..q as i64 {
            if cell_fails(pat, i, j) {
                ok = false;
                if violators.len() < MAX_VIOLATORS {
                    violators.push((i, j));
                }
            }
        }
    }
    DensityReport {
        density: pat.density(),
        ok,
        violators,
    }
}

/// Restricts the pattern to `[0, rows) × [0, cols)` and checks the cells whose
/// whole neighbourhood lies inside the window.
pub fn verify_window(pat: &PeriodicPattern, rows: usize, cols: usize) -> DensityReport {
    let inside = |i: i64, j: i64| i >= 0 && j >= 0 && (i as usize) < rows && (j as usize) < cols;
    let mut violators = Vec::new();
    for i in 0..rows as i64 {
        for j in 0..cols as i64 {
            let offs = pat.family.offsets(i, j);
            if !offs.iter().all(|&(a, b)| inside(i + a, j + b)) {
                continue;
            }
            if cell_fails(pat, i, j) && violators.len() < MAX_VIOLATORS {
                violators.push((i, j));
            }
        }
    }
    DensityReport {
        density: pat.density(),
        ok: violators.is_empty(),
        violators,
    }
}

/// Tiles the plane with an odd independent set of the `k × k` torus.
pub fn from_torus_solution(k: usize, s: &VertexSet) -> Result<PeriodicPattern> {
    let g = crate::graph::build(&FamilySpec::torus_grid(k))?;
    torus_pattern(&g, k, s)
}

fn torus_pattern(g: &Graph, k: usize, s: &VertexSet) -> Result<PeriodicPattern> {
    if s.universe() != g.n() {
        return Err(Error::Precondition(format!(
            "set over {} vertices, torus has {}",
            s.universe(),
            g.n()
        )));
    }
    let rep = is_odd_independent(g, s)?;
    if !rep.ok {
        return Err(Error::Precondition(format!(
            "set is not odd independent on the {k}x{k} torus: {:?}",
            rep.violators
        )));
    }
    let cells = s.cells(g).expect("torus vertices carry labels");
    PeriodicPattern::new((k, k), cells, PatternFamily::PlanarGrid)
}

/// `r + 1` rooks on a diagonal followed by `r` empty columns, repeated.
pub fn r_rook_diagonal_pattern(r: usize) -> Result<PeriodicPattern> {
    if r == 0 {
        return Err(Error::param("r", "must be at least 1"));
    }
    PeriodicPattern::new(
        (r + 1, 2 * r + 1),
        (0..=r).map(|a| (a, a)),
        PatternFamily::RRook { r },
    )
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The diagonal rook pattern carried onto the black squares by
/// `(u, v) -> (u + v, u - v)`.
pub fn r_bishop_pattern(r: usize) -> Result<PeriodicPattern> {
    let rook = r_rook_diagonal_pattern(r)?;
    let (p, q) = rook.period();
    let l = p / gcd(p, q) * q;
    let side = 2 * l;
    let mut cells = Vec::new();
    for i in 0..side as i64 {
        for j in (0..side as i64).filter(|j| (i + j) % 2 == 0) {
            let u = (i + j) / 2;
            let v = (i - j) / 2;
            if rook.contains(u, v) {
                cells.push((i as usize, j as usize));
            }
        }
    }
    PeriodicPattern::new((side, side), cells, PatternFamily::RBishopComponent { r })
}

/// Rows of the period-8 knight pattern: all black cells of odd rows, and in
/// row `2m` every black cell except column `2ms mod 8`.
fn knight_pattern_with_shift(s: usize) -> Result<PeriodicPattern> {
    let cells = (0..8usize).flat_map(|i| {
        (0..8usize)
            .filter(move |j| (i + j) % 2 == 0)
            .filter(move |&j| i % 2 == 1 || j != (i * s) % 8)
            .map(move |j| (i, j))
    });
    PeriodicPattern::new((8, 8), cells, PatternFamily::Knight)
}

/// Density-7/16 knight pattern; the diagonal shift is the first in `0..8`
/// that verifies.
pub fn knight_central_pattern() -> Result<PeriodicPattern> {
    for s in 0..8 {
        let pat = knight_pattern_with_shift(s)?;
        if verify_periodic(&pat).ok {
            return Ok(pat);
        }
    }
    Err(Error::Construction(
        "no diagonal shift gives an odd independent knight pattern".into(),
    ))
}

/// Color class `(i - j) ≡ 0 (mod 3)` of the triangular lattice.
pub fn triangular_class_pattern() -> Result<PeriodicPattern> {
    PeriodicPattern::new((3, 3), (0..3).map(|a| (a, a)), PatternFamily::Triangular)
}

/// Even class of the hexagonal lattice's bipartition.
pub fn hexagonal_class_pattern() -> Result<PeriodicPattern> {
    PeriodicPattern::new((2, 2), [(0, 0), (1, 1)], PatternFamily::Hexagonal)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    /// Largest torus ratio `α_od(C_k □ C_k) / k²` and its `k`.
    #[serde(with = "ratio_pair")]
    pub lower: Ratio<i64>,
    pub lower_k: usize,
    /// Smallest internal ratio `α_iod(P_k □ P_k) / k²` and its `k`.
    #[serde(with = "ratio_pair")]
    pub upper: Ratio<i64>,
    pub upper_k: usize,
    pub ok: bool,
}

/// Compares torus values `(k, α_od)` with internal values `(k, α_iod)`.
pub fn sandwich_check(torus: &[(usize, usize)], iod: &[(usize, usize)]) -> Result<SandwichReport> {
    let ratio = |&(k, v): &(usize, usize)| -> Result<(Ratio<i64>, usize)> {
        if k < 3 {
            return Err(Error::param("k", "sizes start at 3"));
        }
        Ok((Ratio::new(v as i64, (k * k) as i64), k))
    };
    let lows = torus.iter().map(ratio).collect::<Result<Vec<_>>>()?;
    let highs = iod.iter().map(ratio).collect::<Result<Vec<_>>>()?;
    let (lower, lower_k) = lows
        .into_iter()
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .ok_or_else(|| Error::param("torus", "no values"))?;
    let (upper, upper_k) = highs
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or_else(|| Error::param("iod", "no values"))?;
    Ok(SandwichReport {
        lower,
        lower_k,
        upper,
        upper_k,
        ok: lower <= upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_patterns() {
        let empty = PeriodicPattern::new((3, 5), [], PatternFamily::Knight).unwrap();
        let rep = verify_periodic(&empty);
        assert!(rep.ok);
        assert_eq!(rep.density, Ratio::from_integer(0));
        let all = PeriodicPattern::new(
            (2, 2),
            [(0, 0), (0, 1), (1, 0), (1, 1)],
            PatternFamily::PlanarGrid,
        )
        .unwrap();
        assert!(!verify_periodic(&all).ok);
    }

    #[test]
    fn validation() {
        assert!(PeriodicPattern::new((0, 3), [], PatternFamily::PlanarGrid).is_err());
        assert!(PeriodicPattern::new((3, 3), [(3, 0)], PatternFamily::PlanarGrid).is_err());
        assert!(PeriodicPattern::new((3, 2), [], PatternFamily::Hexagonal).is_err());
        assert!(PeriodicPattern::new(
            (2, 2),
            [(0, 0), (0, 1)],
            PatternFamily::RBishopComponent { r: 1 }
        )
        .is_err());
    }

    #[test]
    fn rook_patterns() {
        for r in 1..=4 {
            let pat = r_rook_diagonal_pattern(r).unwrap();
            let rep = verify_periodic(&pat);
            assert!(rep.ok, "r={r}: {:?}", rep.violators);
            assert_eq!(rep.density, Ratio::new(1, 2 * r as i64 + 1));
        }
    }

    #[test]
    fn bishop_pattern() {
        let rep = verify_periodic(&r_bishop_pattern(3).unwrap());
        assert!(rep.ok);
        assert_eq!(rep.density, Ratio::new(1, 7));
    }

    #[test]
    fn knight_pattern() {
        let pat = knight_central_pattern().unwrap();
        assert_eq!(pat.density(), Ratio::new(7, 16));
        assert!(verify_window(&pat, 16, 16).ok);
        assert!(!verify_periodic(&knight_pattern_with_shift(0).unwrap()).ok);
    }

    #[test]
    fn tilings() {
        let t = triangular_class_pattern().unwrap();
        assert!(verify_periodic(&t).ok);
        assert!(verify_periodic(&t.translated(1, 0).unwrap()).ok);
        assert_eq!(t.density(), Ratio::new(1, 3));
        let h = hexagonal_class_pattern().unwrap();
        assert!(verify_periodic(&h).ok);
        assert_eq!(h.density(), Ratio::new(1, 2));
    }

    #[test]
    fn sandwich() {
        let rep = sandwich_check(&[(4, 6)], &[(4, 7)]).unwrap();
        assert!(rep.ok);
        assert_eq!(
            (rep.lower, rep.upper),
            (Ratio::new(3, 8), Ratio::new(7, 16))
        );
        assert!(sandwich_check(&[], &[(4, 7)]).is_err());
    }
}
