//! Catalog of certified optimal sets for small grids: text parser, vetted
//! JSON snapshots, verification against the tabulated values, table
//! reproduction and result persistence.
//!
//! Text format: `table <planar|cylinder|torus|iod>` opens a section, each
//! record starts with `k=<int>  max |S| = <int>` and is followed by cells
//! written as `(i, j)` on any number of lines. Blank lines and lines starting
//! with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build, FamilySpec};
use crate::odd::{is_internally_odd_independent, is_odd_independent, VertexSet};
use crate::periodic::{sandwich_check, SandwichReport};
use crate::solver::{solve_alpha_iod, solve_alpha_od, SolveOptions};

pub const APPENDIX_TEXT: &str = include_str!("../data/appendix.txt");

const SNAPSHOTS: [&str; 4] = [
    include_str!("../data/planar.json"),
    include_str!("../data/cylinder.json"),
    include_str!("../data/torus.json"),
    include_str!("../data/iod.json"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Planar,
    Cylinder,
    Torus,
    Iod,
}

impl Table {
    pub const ALL: [Table; 4] = [Table::Planar, Table::Cylinder, Table::Torus, Table::Iod];

    pub fn name(self) -> &'static str {
        match self {
            Table::Planar => "planar",
            Table::Cylinder => "cylinder",
            Table::Torus => "torus",
            Table::Iod => "iod",
        }
    }

    pub fn graph_label(self) -> &'static str {
        match self {
            Table::Planar => "P_k□P_k",
            Table::Cylinder => "P_k□C_k",
            Table::Torus => "C_k□C_k",
            Table::Iod => "α_iod",
        }
    }

    pub fn family(self, k: usize) -> FamilySpec {
        match self {
            Table::Planar | Table::Iod => FamilySpec::path_grid(k),
            Table::Cylinder => FamilySpec::cylinder_grid(k),
            Table::Torus => FamilySpec::torus_grid(k),
        }
    }

    /// Tabulated optimum for size `k`, if listed.
    pub fn value(self, k: usize) -> Option<usize> {
        let (first, row): (usize, &[usize]) = match self {
            Table::Planar => (3, &[5, 5, 12, 12, 20, 21, 29, 33, 42, 48, 60, 64]),
            Table::Cylinder => (3, &[2, 5, 6, 12, 14, 24, 25, 34, 37, 48, 52, 70]),
            Table::Torus => (3, &[1, 6, 5, 12, 12, 24, 21, 30, 34, 54, 49, 62]),
            Table::Iod => (
                3,
                &[
                    5, 7, 12, 15, 21, 26, 34, 40, 49, 57, 68, 77, 89, 100, 114, 125, 141, 155, 172,
                    187, 204, 222, 242, 260,
                ],
            ),
        };
        k.checked_sub(first).and_then(|i| row.get(i)).copied()
    }

    pub fn tabulated_sizes(self) -> impl Iterator<Item = usize> {
        (3..).take_while(move |&k| self.value(k).is_some())
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::param("table", format!("unknown table `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixRecord {
    pub table: Table,
    pub k: usize,
    pub claimed_size: usize,
    pub cells: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// The text was normalized to a pair; the record must still verify.
    Repaired,
    /// The record is malformed as written.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Repaired => "repaired",
            Severity::Invalid => "invalid",
        };
        write!(f, "{}:{}: {tag}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedRecord {
    pub record: AppendixRecord,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedRecord {
    pub fn is_clean(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn is_invalid(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Invalid)
    }
}

struct Builder {
    record: AppendixRecord,
    diagnostics: Vec<Diagnostic>,
    /// Text of a pair left open at a line break, with its start position.
    open: Option<(usize, usize, String)>,
    positions: Vec<(usize, usize)>,
}

impl Builder {
    fn finish(mut self) -> ParsedRecord {
        if let Some((line, column, _)) = self.open.take() {
            self.invalid(line, column, "unterminated pair");
        }
        self.restore_dropped_row_digits();
        let k = self.record.k;
        let mut seen = BTreeSet::new();
        for (idx, &(i, j)) in self.record.cells.iter().enumerate() {
            let (line, column) = self.positions[idx];
            if i >= k || j >= k {
                self.diagnostics.push(invalid(
                    line,
                    column,
                    format!("cell ({i}, {j}) outside 0..{k}"),
                ));
            }
            if !seen.insert((i, j)) {
                self.diagnostics
                    .push(invalid(line, column, format!("duplicate cell ({i}, {j})")));
            }
        }
        if self.record.cells.len() != self.record.claimed_size {
            let (line, column) = self.positions.first().copied().unwrap_or((0, 0));
            self.diagnostics.push(invalid(
                line,
                column,
                format!(
                    "k={} lists {} cells but claims {}",
                    k,
                    self.record.cells.len(),
                    self.record.claimed_size
                ),
            ));
        }
        ParsedRecord {
            record: self.record,
            diagnostics: self.diagnostics,
        }
    }

    /// Listings are in row-major order. A cell that breaks the order while
    /// both its neighbours lie in row `r`, and whose own row reads as `r`
    /// with trailing digits lost, is moved back into row `r`.
    fn restore_dropped_row_digits(&mut self) {
        let cells = &mut self.record.cells;
        for idx in 1..cells.len().saturating_sub(1) {
            let (prev, (i, j), next) = (cells[idx - 1], cells[idx], cells[idx + 1]);
            if prev < (i, j) || prev.0 != next.0 || i == prev.0 {
                continue;
            }
            let row = prev.0.to_string();
            let restored = (prev.0, j);
            if row.starts_with(&i.to_string()) && prev < restored && restored < next {
                let (line, column) = self.positions[idx];
                self.diagnostics.push(Diagnostic {
                    line,
                    column,
                    severity: Severity::Repaired,
                    message: format!("out-of-order cell ({i}, {j}) read as {restored:?}, between {prev:?} and {next:?}"),
                });
                cells[idx] = restored;
            }
        }
    }

    fn invalid(&mut self, line: usize, column: usize, message: &str) {
        self.diagnostics
            .push(invalid(line, column, message.to_string()));
    }

    fn close_pair(&mut self, line: usize, column: usize, raw: &str) {
        let cleaned: String = raw
            .chars()
            .filter(|c| *c != '~' && !c.is_whitespace())
            .collect();
        if let Some(cell) = parse_pair(&cleaned) {
            self.push(cell, line, column);
            return;
        }
        let stray: String = cleaned
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .collect();
        let stripped: String = cleaned
            .chars()
            .filter(|c| !c.is_ascii_alphabetic())
            .collect();
        match parse_pair(&stripped) {
            Some(cell) if !stray.is_empty() => {
                self.diagnostics.push(Diagnostic {
                    line,
                    column,
                    severity: Severity::Repaired,
                    message: format!("dropped stray `{stray}` in `({raw})`"),
                });
                self.push(cell, line, column);
            }
            _ => self.invalid(line, column, &format!("malformed pair `({raw})`")),
        }
    }

    fn push(&mut self, cell: (usize, usize), line: usize, column: usize) {
        self.record.cells.push(cell);
        self.positions.push((line, column));
    }
}

fn invalid(line: usize, column: usize, message: String) -> Diagnostic {
    Diagnostic {
        line,
        column,
        severity: Severity::Invalid,
        message,
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    (digits(a) && digits(b))
        .then(|| (a.parse().ok(), b.parse().ok()))
        .and_then(|(a, b)| Some((a?, b?)))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let compact: String = line
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '~')
        .collect();
    let rest = compact.strip_prefix("k=")?;
    let (k, size) = rest.split_once("max|S|=")?;
    Some((k.parse().ok()?, size.parse().ok()?))
}

/// Parses the text format. Structural problems (unknown table, bad header,
/// cells before any header) abort with a positioned error; problems inside a
/// record are attached to that record and parsing continues.
pub fn parse_appendix(text: &str) -> Result<Vec<ParsedRecord>> {
    let mut out = Vec::new();
    let mut table: Option<Table> = None;
    let mut current: Option<Builder> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |column: usize, message: String| Error::Parse {
            line: line_no,
            column,
            message,
        };
        let indent = raw_line.len() - raw_line.trim_start().len() + 1;
        if let Some(name) = trimmed.strip_prefix("table ") {
            out.extend(current.take().map(Builder::finish));
            table = Some(
                name.trim()
                    .parse()
                    .map_err(|_| parse_err(indent, format!("unknown table `{}`", name.trim())))?,
            );
            continue;
        }
        if trimmed.starts_with("k=") || trimmed.starts_with("k ") {
            out.extend(current.take().map(Builder::finish));
            let t =
                table.ok_or_else(|| parse_err(indent, "record before any `table` line".into()))?;
            let (k, claimed_size) = parse_header(trimmed)
                .ok_or_else(|| parse_err(indent, format!("malformed record header `{trimmed}`")))?;
            current = Some(Builder {
                record: AppendixRecord {
                    table: t,
                    k,
                    claimed_size,
                    cells: Vec::new(),
                },
                diagnostics: Vec::new(),
                open: None,
                positions: Vec::new(),
            });
            continue;
        }
        let b = current
            .as_mut()
            .ok_or_else(|| parse_err(indent, "cells before any record header".into()))?;
        scan_cells(b, raw_line, line_no);
    }
    out.extend(current.take().map(Builder::finish));
    Ok(out)
}

fn scan_cells(b: &mut Builder, line: &str, line_no: usize) {
    for (col0, ch) in line.chars().enumerate() {
        let column = col0 + 1;
        match (&mut b.open, ch) {
            (Some(_), ')') => {
                let (l, c, raw) = b.open.take().expect("open pair");
                b.close_pair(l, c, &raw);
            }
            (Some((l, c, _)), '(') => {
                let (l, c) = (*l, *c);
                b.open = Some((line_no, column, String::new()));
                b.invalid(l, c, "pair opened inside another pair");
            }
            (Some((_, _, raw)), _) => raw.push(ch),
            (None, '(') => b.open = Some((line_no, column, String::new())),
            (None, c) if c.is_whitespace() || c == '~' => {}
            (None, c) => b.invalid(line_no, column, &format!("unexpected `{c}` between pairs")),
        }
    }
    // A hyphen at a line break inside a pair joins the two halves.
    if let Some((_, _, raw)) = &mut b.open {
        if raw.trim_end().ends_with('-') {
            let cut = raw.trim_end().len() - 1;
            raw.truncate(cut);
        }
    }
}

/// Renders records in the text format.
pub fn serialize_appendix(records: &[AppendixRecord]) -> String {
    let mut out = String::new();
    let mut table = None;
    for rec in records {
        if table != Some(rec.table) {
            if table.is_some() {
                out.push('\n');
            }
            let _ = writeln!(out, "table {}", rec.table);
            table = Some(rec.table);
        }
        let _ = writeln!(out, "\nk={}  max |S| = {}", rec.k, rec.claimed_size);
        for chunk in rec.cells.chunks(12) {
            let line: Vec<String> = chunk.iter().map(|(i, j)| format!("({i}, {j})")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

/// One JSON array per table, one record per line.
pub fn records_to_json(records: &[AppendixRecord]) -> Result<String> {
    let lines = records
        .iter()
        .map(|r| serde_json::to_string(r).map_err(|e| Error::Precondition(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(format!("[\n{}\n]\n", lines.join(",\n")))
}

pub fn records_from_json(text: &str) -> Result<Vec<AppendixRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// The vetted records shipped with the crate, all four tables.
pub fn bundled_records() -> Result<Vec<AppendixRecord>> {
    let mut all = Vec::new();
    for text in SNAPSHOTS {
        all.extend(records_from_json(text)?);
    }
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordVerdict {
    pub table: Table,
    pub k: usize,
    pub claimed_size: usize,
    /// The cells form a valid set of the claimed size under the table's predicate.
    pub verified: bool,
    pub table_value: Option<usize>,
    /// `None` when not cross-checked or the size is not tabulated.
    pub table_match: Option<bool>,
    /// Cells violating the parity rule, with their member counts.
    pub violators: Vec<((usize, usize), usize)>,
    pub problems: Vec<String>,
}

impl RecordVerdict {
    pub fn pass(&self) -> bool {
        self.verified && self.table_match != Some(false)
    }
}

pub fn verify_record(rec: &AppendixRecord, cross_check_tables: bool) -> Result<RecordVerdict> {
    let g = build(&rec.table.family(rec.k))?;
    let mut problems = Vec::new();
    let mut violators = Vec::new();
    let distinct: BTreeSet<_> = rec.cells.iter().collect();
    if distinct.len() != rec.cells.len() {
        problems.push("duplicate cells".to_string());
    }
    if rec.cells.len() != rec.claimed_size {
        problems.push(format!(
            "{} cells listed, {} claimed",
            rec.cells.len(),
            rec.claimed_size
        ));
    }
    match VertexSet::from_cells(&g, &rec.cells) {
        Ok(s) => {
            let rep = match rec.table {
                Table::Iod => is_internally_odd_independent(&g, &s)?,
                _ => is_odd_independent(&g, &s)?,
            };
            if !rep.independent {
                problems.push("not independent".to_string());
            }
            violators = rep
                .violators
                .iter()
                .map(|&(v, c)| (g.label(v).expect("grid labels"), c))
                .collect();
            if !violators.is_empty() {
                problems.push(format!(
                    "{} vertices see an even positive number of members",
                    violators.len()
                ));
            }
        }
        Err(e) => problems.push(e.to_string()),
    }
    let table_value = rec.table.value(rec.k);
    let table_match = if cross_check_tables {
        table_value.map(|v| v == rec.claimed_size)
    } else {
        None
    };
    Ok(RecordVerdict {
        table: rec.table,
        k: rec.k,
        claimed_size: rec.claimed_size,
        verified: problems.is_empty(),
        table_value,
        table_match,
        violators,
        problems,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub verdicts: Vec<RecordVerdict>,
    pub passed: usize,
    pub failed: usize,
}

impl CatalogSummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

pub fn verify_catalog(
    records: &[AppendixRecord],
    cross_check_tables: bool,
) -> Result<CatalogSummary> {
    let verdicts = records
        .iter()
        .map(|r| verify_record(r, cross_check_tables))
        .collect::<Result<Vec<_>>>()?;
    let passed = verdicts.iter().filter(|v| v.pass()).count();
    Ok(CatalogSummary {
        failed: verdicts.len() - passed,
        passed,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub table: Table,
    pub k: usize,
    pub diagnostics: Vec<Diagnostic>,
    pub problems: Vec<String>,
    /// Single-cell edits under which the record would verify; never applied.
    pub suggestions: Vec<Repair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Repair {
    AddCell {
        cell: (usize, usize),
    },
    MoveCell {
        from: (usize, usize),
        to: (usize, usize),
    },
    /// The listed cells verify, at this size.
    ListedSetVerifiesAt {
        size: usize,
    },
}

impl fmt::Display for Repair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repair::AddCell { cell } => write!(f, "add {cell:?}"),
            Repair::MoveCell { from, to } => write!(f, "replace {from:?} by {to:?}"),
            Repair::ListedSetVerifiesAt { size } => write!(f, "listed cells verify at size {size}"),
        }
    }
}

fn cells_verify(rec: &AppendixRecord, cells: Vec<(usize, usize)>) -> Result<bool> {
    let candidate = AppendixRecord {
        claimed_size: cells.len(),
        cells,
        ..rec.clone()
    };
    Ok(verify_record(&candidate, false)?.verified)
}

/// Searches single-cell edits that make a failing record verify.
pub fn suggest_repairs(rec: &AppendixRecord) -> Result<Vec<Repair>> {
    let k = rec.k;
    let listed: BTreeSet<(usize, usize)> = rec
        .cells
        .iter()
        .copied()
        .filter(|&(i, j)| i < k && j < k)
        .collect();
    if listed.len() != rec.cells.len() {
        return Ok(Vec::new());
    }
    let all_cells = || (0..k).flat_map(move |i| (0..k).map(move |j| (i, j)));
    let mut out = Vec::new();
    if cells_verify(rec, rec.cells.clone())? {
        if rec.cells.len() != rec.claimed_size {
            out.push(Repair::ListedSetVerifiesAt {
                size: rec.cells.len(),
            });
        }
        return Ok(out);
    }
    if rec.cells.len() + 1 == rec.claimed_size {
        for cell in all_cells().filter(|c| !listed.contains(c)) {
            let mut cells = rec.cells.clone();
            cells.push(cell);
            if cells_verify(rec, cells)? {
                out.push(Repair::AddCell { cell });
            }
        }
    }
    if rec.cells.len() == rec.claimed_size {
        // Only cells next to a conflict or a parity violation are worth moving.
        let verdict = verify_record(rec, false)?;
        let near =
            |a: (usize, usize), b: (usize, usize)| a.0.abs_diff(b.0) + a.1.abs_diff(b.1) <= 1;
        let suspects: Vec<(usize, usize)> = rec
            .cells
            .iter()
            .copied()
            .filter(|&c| {
                verdict.violators.iter().any(|&(v, _)| near(c, v))
                    || rec.cells.iter().any(|&d| d != c && near(c, d))
            })
            .collect();
        for from in suspects {
            for to in all_cells().filter(|c| !listed.contains(c)) {
                let cells: Vec<_> = rec
                    .cells
                    .iter()
                    .map(|&c| if c == from { to } else { c })
                    .collect();
                if cells_verify(rec, cells)? {
                    out.push(Repair::MoveCell { from, to });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vetting {
    pub accepted: Vec<AppendixRecord>,
    /// Accepted records whose text needed normalization, with what was done.
    pub repairs: Vec<(Table, usize, Vec<Diagnostic>)>,
    pub errata: Vec<Erratum>,
}

/// Parses and vets the bundled appendix text.
pub fn vet_bundled_text() -> Result<Vetting> {
    vet(parse_appendix(APPENDIX_TEXT)?)
}

/// Keeps a parsed record when it has no invalid diagnostics and verifies
/// under its predicate; everything else is an erratum.
pub fn vet(parsed: Vec<ParsedRecord>) -> Result<Vetting> {
    let mut v = Vetting {
        accepted: Vec::new(),
        repairs: Vec::new(),
        errata: Vec::new(),
    };
    for p in parsed {
        let verdict = verify_record(&p.record, false)?;
        if p.is_invalid() || !verdict.verified {
            v.errata.push(Erratum {
                table: p.record.table,
                k: p.record.k,
                suggestions: suggest_repairs(&p.record)?,
                diagnostics: p.diagnostics,
                problems: verdict.problems,
            });
            continue;
        }
        if !p.is_clean() {
            v.repairs.push((p.record.table, p.record.k, p.diagnostics));
        }
        v.accepted.push(p.record);
    }
    Ok(v)
}

/// Sandwich bound from the verified torus and internal records.
pub fn catalog_sandwich(records: &[AppendixRecord]) -> Result<SandwichReport> {
    let mut torus = Vec::new();
    let mut iod = Vec::new();
    for r in records {
        if !verify_record(r, false)?.verified {
            continue;
        }
        match r.table {
            Table::Torus => torus.push((r.k, r.claimed_size)),
            Table::Iod => iod.push((r.k, r.claimed_size)),
            _ => {}
        }
    }
    sandwich_check(&torus, &iod)
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    AlphaOd,
    AlphaIod,
    ChiSo,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Search,
    Formula,
    VerifiedCert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResultValue {
    Count(u64),
    Ratio { numer: i64, denom: i64 },
}

impl From<Ratio<i64>> for ResultValue {
    fn from(r: Ratio<i64>) -> Self {
        ResultValue::Ratio {
            numer: *r.numer(),
            denom: *r.denom(),
        }
    }
}

impl fmt::Display for ResultValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResultValue::Count(c) => write!(f, "{c}"),
            ResultValue::Ratio { numer, denom } => write!(f, "{numer}/{denom}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub schema: u32,
    pub family: String,
    pub params: BTreeMap<String, usize>,
    pub quantity: Quantity,
    pub value: Option<ResultValue>,
    pub method: Method,
    pub proof_complete: bool,
    pub elapsed_ms: u64,
}

impl ResultRow {
    pub fn new(
        family: impl Into<String>,
        params: &[(&str, usize)],
        quantity: Quantity,
        method: Method,
    ) -> Self {
        ResultRow {
            schema: SCHEMA_VERSION,
            family: family.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            quantity,
            value: None,
            method,
            proof_complete: false,
            elapsed_ms: 0,
        }
    }
}

pub fn append_jsonl(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let io = |e: std::io::Error| Error::Precondition(format!("{}: {e}", path.display()));
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    for row in rows {
        let line = serde_json::to_string(row).map_err(|e| Error::Precondition(e.to_string()))?;
        writeln!(f, "{line}").map_err(io)?;
    }
    Ok(())
}

pub fn read_jsonl(path: &Path) -> Result<Vec<ResultRow>> {
    let f = std::fs::File::open(path)
        .map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Error::Precondition(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let row = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            column: e.column(),
            message: e.to_string(),
        })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(w: W, rows: &[ResultRow]) -> Result<()> {
    let err = |e: csv::Error| Error::Precondition(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "schema",
        "family",
        "params",
        "quantity",
        "value",
        "method",
        "proof_complete",
        "elapsed_ms",
    ])
    .map_err(err)?;
    for r in rows {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let quantity = serde_json::to_value(r.quantity).expect("enum serializes");
        let method = serde_json::to_value(r.method).expect("enum serializes");
        out.write_record([
            r.schema.to_string(),
            r.family.clone(),
            params.join(";"),
            quantity.as_str().unwrap_or_default().to_string(),
            r.value.map(|v| v.to_string()).unwrap_or_default(),
            method.as_str().unwrap_or_default().to_string(),
            r.proof_complete.to_string(),
            r.elapsed_ms.to_string(),
        ])
        .map_err(err)?;
    }
    out.flush().map_err(|e| Error::Precondition(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TablesOutput {
    pub rows: Vec<ResultRow>,
    pub rendered: String,
}

/// Solves every listed size from 3 up to the given maximum per table. Sizes
/// whose search runs out of budget fall back to the bundled certificate,
/// marked as a lower bound only.
pub fn make_tables(limits: &[(Table, usize)], opts: &SolveOptions) -> Result<TablesOutput> {
    let bundled = bundled_records()?;
    let mut rows = Vec::new();
    let mut rendered = String::new();
    for &(table, k_max) in limits {
        let mut header = vec![format!("{:<10}", "k")];
        let mut line = vec![format!("{:<10}", table.graph_label())];
        let mut ratios = vec![format!("{:<10}", "ratio")];
        for k in 3..=k_max {
            let start = Instant::now();
            let g = build(&table.family(k))?;
            let rep = match table {
                Table::Iod => solve_alpha_iod(&g, opts)?,
                _ => solve_alpha_od(&g, opts)?,
            };
            let quantity = if table == Table::Iod {
                Quantity::AlphaIod
            } else {
                Quantity::AlphaOd
            };
            let mut row = ResultRow::new(
                table.family(k).name(),
                &[("k", k)],
                quantity,
                Method::Search,
            );
            row.elapsed_ms = start.elapsed().as_millis() as u64;
            let cell = if rep.proof_complete {
                row.value = Some(ResultValue::Count(rep.optimum as u64));
                row.proof_complete = true;
                Some((rep.optimum, ""))
            } else if let Some(cert) = bundled.iter().find(|r| r.table == table && r.k == k) {
                if verify_record(cert, false)?.verified {
                    row.method = Method::VerifiedCert;
                    row.value = Some(ResultValue::Count(cert.claimed_size as u64));
                    Some((cert.claimed_size, "*"))
                } else {
                    None
                }
            } else {
                None
            };
            rows.push(row);
            header.push(format!("{k:>9}"));
            match cell {
                Some((v, mark)) => {
                    line.push(format!("{:>9}", format!("{v}{mark}")));
                    ratios.push(format!("{:>9.6}", v as f64 / (k * k) as f64));
                }
                None => {
                    line.push(format!("{:>9}", "?"));
                    ratios.push(format!("{:>9}", "?"));
                }
            }
        }
        for l in [header, line, ratios] {
            let _ = writeln!(rendered, "{}", l.concat().trim_end());
        }
        rendered.push('\n');
    }
    if rows.iter().any(|r| r.method == Method::VerifiedCert) {
        rendered.push_str("* lower bound from a verified certificate; search did not finish\n");
    }
    Ok(TablesOutput { rows, rendered })
}
