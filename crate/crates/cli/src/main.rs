use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use oddgrid::catalog::{self, Method, Quantity, ResultRow, ResultValue, Table};
use oddgrid::coloring::{self, WindowMode};
use oddgrid::odd::{self, LatticeFamily};
use oddgrid::periodic::{self, PeriodicPattern};
use oddgrid::solver::{self, Budget, SolveOptions};
use oddgrid::{build, format_ratio, FamilySpec, VertexSet};

#[derive(Parser)]
#[command(
    name = "oddgrid",
    version,
    about = "Odd independence and strong odd colorings on grids and chessboards"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads for a single solve.
    #[arg(long, global = true, env = "ODDGRID_THREADS")]
    threads: Option<usize>,
    /// Single-threaded search with reproducible reports and canonical witnesses.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    node_budget: u64,
    /// Seconds.
    #[arg(long, global = true, default_value_t = 600)]
    time_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Version, capacity and thread settings.
    BuildInfo,
    /// Exact search on one graph, e.g. `solve king n=7 --count`.
    Solve {
        family: String,
        /// `key=value` parameters; `k=` sets both sides of a grid.
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = SolveQuantity::AlphaOd)]
        quantity: SolveQuantity,
        /// Count maximum sets.
        #[arg(long)]
        count: bool,
        /// Largest palette tried for chi-so.
        #[arg(long, default_value_t = 6)]
        palette_max: usize,
    },
    /// Check a set of cells, given as `(i, j)` pairs or a JSON list of pairs.
    VerifySet {
        file: PathBuf,
        family: String,
        params: Vec<String>,
        /// Enforce parity only at interior vertices of a planar grid.
        #[arg(long)]
        internal: bool,
    },
    /// Verify the bundled certificates (or a given text / JSON catalog).
    VerifyCatalog {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Skip comparing claimed sizes with the tabulated values.
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Reproduce the grid tables by search.
    Tables {
        #[arg(long, default_value_t = 7)]
        planar: usize,
        #[arg(long, default_value_t = 7)]
        cylinder: usize,
        #[arg(long, default_value_t = 7)]
        torus: usize,
        #[arg(long, default_value_t = 6)]
        iod: usize,
        /// Append result rows to this JSON-lines file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and self-verify an explicit coloring.
    Color {
        #[arg(value_enum)]
        construction: Construction,
        /// Board sides, frame parameters, king size, or lattice dimension.
        #[arg(long, value_delimiter = ',', default_value = "7")]
        size: Vec<usize>,
        /// Lattice window extent per axis.
        #[arg(long, default_value_t = 12)]
        window: usize,
    },
    /// Verify a periodic pattern and print its exact density.
    Density {
        #[arg(value_enum)]
        pattern: PatternName,
        /// Reach for rook / bishop patterns, or k for a torus import.
        #[arg(long, default_value_t = 3)]
        param: usize,
    },
    /// Analytic upper bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveQuantity {
    AlphaOd,
    AlphaIod,
    ChiSo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Grid5,
    Frame4,
    King,
    Dgrid3,
    DgridSquare,
    Triangular,
    Hexagonal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternName {
    TorusImport,
    RRook,
    RBishop,
    Knight,
    Triangular,
    Hexagonal,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Bound for a d-regular graph on n vertices with no induced K_{1,r}.
    StarFree { d: u64, r: u64, n: u64 },
    /// Density bounds for an infinite lattice.
    Density {
        #[arg(value_enum)]
        family: LatticeArg,
        #[arg(long)]
        r: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeArg {
    PlanarGrid,
    RRook,
    RBishop,
    Triangular,
    Hexagonal,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] oddgrid::Error),
}

/// Outcome of a command, mapped onto the process exit code.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
    Budget,
}

impl Outcome {
    fn from_flags(ok: bool, complete: bool) -> Self {
        match (ok, complete) {
            (_, false) => Outcome::Budget,
            (true, true) => Outcome::Pass,
            (false, true) => Outcome::Fail,
        }
    }
}

struct Output {
    outcome: Outcome,
    json: Value,
    pretty: String,
    rows: Vec<ResultRow>,
}

fn family_spec(name: &str, params: &[String]) -> Result<FamilySpec, CliError> {
    let mut obj = serde_json::Map::new();
    obj.insert("family".into(), json!(name.replace('-', "_")));
    for p in params {
        let (key, value) = p
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("parameter `{p}` is not key=value")))?;
        let v = if key == "parts" {
            let parts: Result<Vec<usize>, _> = value.split(',').map(str::parse).collect();
            json!(parts.map_err(|_| CliError::Input(format!("bad list `{value}`")))?)
        } else if let Ok(n) = value.parse::<usize>() {
            json!(n)
        } else {
            json!(value.to_ascii_lowercase())
        };
        if key == "k" {
            obj.insert("rows".into(), v.clone());
            obj.insert("cols".into(), v);
        } else {
            obj.insert(key.into(), v);
        }
    }
    let spec: FamilySpec = serde_json::from_value(Value::Object(obj))
        .map_err(|e| CliError::Input(format!("family `{name}`: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

fn solve_options(g: &Global, count: bool) -> SolveOptions {
    let threads = g
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    SolveOptions {
        budget: budget(g),
        count_optima: count,
        threads,
        deterministic: g.deterministic,
        ..SolveOptions::default()
    }
}

fn budget(g: &Global) -> Budget {
    Budget {
        max_nodes: g.node_budget,
        max_time: Duration::from_secs(g.time_budget),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn params_of(spec: &FamilySpec) -> Vec<(String, usize)> {
    match to_json(spec) {
        Value::Object(m) => m
            .into_iter()
            .filter_map(|(k, v)| v.as_u64().map(|n| (k, n as usize)))
            .collect(),
        _ => Vec::new(),
    }
}

fn row_for(spec: &FamilySpec, quantity: Quantity, method: Method) -> ResultRow {
    let params = params_of(spec);
    let borrowed: Vec<(&str, usize)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    ResultRow::new(spec.name(), &borrowed, quantity, method)
}

fn cmd_build_info(g: &Global) -> Output {
    let opts = solve_options(g, false);
    let info = json!({
        "name": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "max_vertices": oddgrid::graph::MAX_VERTICES,
        "threads": if opts.deterministic { 1 } else { opts.threads },
        "deterministic": opts.deterministic,
        "node_budget": opts.budget.max_nodes,
        "time_budget_s": opts.budget.max_time.as_secs(),
        "result_schema": catalog::SCHEMA_VERSION,
    });
    let pretty = info
        .as_object()
        .expect("object")
        .iter()
        .map(|(k, v)| format!("{k:<15} {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    Output {
        outcome: Outcome::Pass,
        json: info,
        pretty,
        rows: Vec::new(),
    }
}

fn cmd_solve(
    g: &Global,
    family: &str,
    params: &[String],
    quantity: SolveQuantity,
    count: bool,
    palette_max: usize,
) -> Result<Output, CliError> {
    let spec = family_spec(family, params)?;
    let graph = build(&spec)?;
    let start = Instant::now();
    match quantity {
        SolveQuantity::AlphaOd | SolveQuantity::AlphaIod => {
            let opts = solve_options(g, count);
            let (rep, q) = if quantity == SolveQuantity::AlphaOd {
                (solver::solve_alpha_od(&graph, &opts)?, Quantity::AlphaOd)
            } else {
                (solver::solve_alpha_iod(&graph, &opts)?, Quantity::AlphaIod)
            };
            let mut row = row_for(&spec, q, Method::Search);
            row.value = rep
                .proof_complete
                .then_some(ResultValue::Count(rep.optimum as u64));
            row.proof_complete = rep.proof_complete;
            row.elapsed_ms = start.elapsed().as_millis() as u64;
            let cells = rep.witness.cells(&graph);
            let mut pretty = format!(
                "{spec}\n{} = {}{}\nnodes {}  elapsed {:.3}s",
                if q == Quantity::AlphaOd {
                    "alpha_od"
                } else {
                    "alpha_iod"
                },
                rep.optimum,
                if rep.proof_complete {
                    ""
                } else {
                    " (lower bound, budget exhausted)"
                },
                rep.nodes_explored,
                rep.elapsed.as_secs_f64()
            );
            if let Some(c) = rep.optimum_count {
                pretty += &format!(
                    "\nmaximum sets: {c}{}",
                    if rep.count_overflow { "+" } else { "" }
                );
            }
            match &cells {
                Some(c) => pretty += &format!("\nwitness: {c:?}"),
                None => pretty += &format!("\nwitness: {:?}", rep.witness.to_vec()),
            }
            let mut json = to_json(&rep);
            json["elapsed_ms"] = json!(rep.elapsed.as_millis() as u64);
            json["cells"] = to_json(&cells);
            Ok(Output {
                outcome: Outcome::from_flags(true, rep.proof_complete),
                json,
                pretty,
                rows: vec![row],
            })
        }
        SolveQuantity::ChiSo => {
            let rep = solver::solve_chi_so(&graph, palette_max, budget(g))?;
            let mut row = row_for(&spec, Quantity::ChiSo, Method::Search);
            row.value = rep.chi_so.map(|c| ResultValue::Count(c as u64));
            row.proof_complete = rep.proof_complete;
            row.elapsed_ms = start.elapsed().as_millis() as u64;
            let proven: Vec<usize> = rep
                .infeasible_below
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i + 1)
                .collect();
            let pretty = format!(
                "{spec}\nchi_so = {}\npalettes proven infeasible: {proven:?}\nnodes {}  elapsed {:.3}s",
                rep.chi_so.map_or("unknown".into(), |c| c.to_string()),
                rep.nodes_explored,
                rep.elapsed.as_secs_f64()
            );
            let mut json = to_json(&rep);
            json["elapsed_ms"] = json!(rep.elapsed.as_millis() as u64);
            let exhausted = !rep.proof_complete
                && rep.infeasible_below.len() < palette_max
                && rep.coloring.is_none();
            let outcome = if exhausted || (!rep.proof_complete && rep.coloring.is_some()) {
                Outcome::Budget
            } else {
                Outcome::from_flags(rep.chi_so.is_some(), true)
            };
            Ok(Output {
                outcome,
                json,
                pretty,
                rows: vec![row],
            })
        }
    }
}

fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    if let Ok(cells) = serde_json::from_str::<Vec<(usize, usize)>>(text) {
        return Ok(cells);
    }
    let mut cells = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut rest = line;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| CliError::Input(format!("line {}: unclosed `(`", ln + 1)))?;
            let inner = &rest[open + 1..open + close];
            let pair = inner
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| {
                    CliError::Input(format!("line {}: malformed pair `({inner})`", ln + 1))
                })?;
            cells.push(pair);
            rest = &rest[open + close + 1..];
        }
    }
    Ok(cells)
}

fn cmd_verify_set(
    file: &PathBuf,
    family: &str,
    params: &[String],
    internal: bool,
) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let cells = parse_cells(&text)?;
    let spec = family_spec(family, params)?;
    let g = build(&spec)?;
    let set = VertexSet::from_cells(&g, &cells)?;
    let rep = if internal {
        odd::is_internally_odd_independent(&g, &set)?
    } else {
        odd::is_odd_independent(&g, &set)?
    };
    let violators: Vec<_> = rep
        .violators
        .iter()
        .map(|&(v, c)| (g.label(v), c))
        .collect();
    let pretty = format!(
        "{spec}\n|S| = {}\nindependent: {}\nparity violators: {violators:?}\n{}",
        set.len(),
        rep.independent,
        if rep.ok { "PASS" } else { "FAIL" }
    );
    let mut row = row_for(
        &spec,
        if internal {
            Quantity::AlphaIod
        } else {
            Quantity::AlphaOd
        },
        Method::VerifiedCert,
    );
    row.value = rep.ok.then_some(ResultValue::Count(set.len() as u64));
    Ok(Output {
        outcome: Outcome::from_flags(rep.ok, true),
        json: json!({"size": set.len(), "report": to_json(&rep), "violator_cells": violators}),
        pretty,
        rows: vec![row],
    })
}

fn cmd_verify_catalog(input: Option<&PathBuf>, cross_check: bool) -> Result<Output, CliError> {
    let (records, errata, repairs) = match input {
        None => {
            let v = catalog::vet_bundled_text()?;
            (v.accepted, v.errata, v.repairs)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if path.extension().is_some_and(|e| e == "json") {
                (catalog::records_from_json(&text)?, Vec::new(), Vec::new())
            } else {
                let v = catalog::vet(catalog::parse_appendix(&text)?)?;
                (v.accepted, v.errata, v.repairs)
            }
        }
    };
    let summary = catalog::verify_catalog(&records, cross_check)?;
    let mut pretty = String::new();
    for v in &summary.verdicts {
        let cross = match v.table_match {
            Some(true) => " = table",
            Some(false) => " != table",
            None => "",
        };
        pretty += &format!(
            "{} {:<8} k={:<3} |S|={:<4}{cross}{}\n",
            if v.pass() { "PASS" } else { "FAIL" },
            v.table.name(),
            v.k,
            v.claimed_size,
            if v.problems.is_empty() {
                String::new()
            } else {
                format!("  {}", v.problems.join("; "))
            }
        );
    }
    for (t, k, diags) in &repairs {
        for d in diags {
            pretty += &format!("note     {:<8} k={k:<3} {d}\n", t.name());
        }
    }
    for e in &errata {
        let hints: Vec<String> = e.suggestions.iter().map(ToString::to_string).collect();
        pretty += &format!(
            "ERRATUM  {:<8} k={:<3} {}{}\n",
            e.table.name(),
            e.k,
            e.problems.join("; "),
            if hints.is_empty() {
                String::new()
            } else {
                format!("  (would verify if: {})", hints.join(" or "))
            }
        );
    }
    pretty += &format!(
        "{} verified, {} failed, {} errata",
        summary.passed,
        summary.failed,
        errata.len()
    );
    let rows = summary
        .verdicts
        .iter()
        .map(|v| {
            let q = if v.table == Table::Iod {
                Quantity::AlphaIod
            } else {
                Quantity::AlphaOd
            };
            let mut row = ResultRow::new(
                v.table.family(v.k).name(),
                &[("k", v.k)],
                q,
                Method::VerifiedCert,
            );
            row.value = v
                .pass()
                .then_some(ResultValue::Count(v.claimed_size as u64));
            row
        })
        .collect();
    Ok(Output {
        outcome: Outcome::from_flags(summary.all_pass() && errata.is_empty(), true),
        json: json!({"summary": to_json(&summary), "errata": to_json(&errata)}),
        pretty,
        rows,
    })
}

fn cmd_tables(g: &Global, limits: [usize; 4], out: Option<&PathBuf>) -> Result<Output, CliError> {
    let opts = solve_options(g, false);
    let limits: Vec<(Table, usize)> = Table::ALL
        .into_iter()
        .zip(limits)
        .filter(|&(_, k)| k >= 3)
        .collect();
    let t = catalog::make_tables(&limits, &opts)?;
    if let Some(path) = out {
        catalog::append_jsonl(path, &t.rows)?;
    }
    let mismatches: Vec<String> = t
        .rows
        .iter()
        .filter_map(|r| {
            let table = if r.quantity == Quantity::AlphaIod {
                Table::Iod
            } else {
                Table::ALL
                    .into_iter()
                    .find(|t| t.family(3).name() == r.family)?
            };
            let k = *r.params.get("k")?;
            match (r.value, table.value(k)) {
                (Some(ResultValue::Count(v)), Some(want))
                    if r.proof_complete && v as usize != want =>
                {
                    Some(format!("{table} k={k}: searched {v}, table {want}"))
                }
                _ => None,
            }
        })
        .collect();
    let complete = t.rows.iter().all(|r| r.proof_complete);
    let mut pretty = t.rendered.clone();
    for m in &mismatches {
        pretty += &format!("MISMATCH {m}\n");
    }
    Ok(Output {
        outcome: Outcome::from_flags(mismatches.is_empty(), complete),
        json: json!({"rows": to_json(&t.rows), "mismatches": mismatches}),
        pretty: pretty.trim_end().to_string(),
        rows: t.rows,
    })
}

fn cmd_color(
    construction: Construction,
    size: &[usize],
    window: usize,
) -> Result<Output, CliError> {
    let arg = |i: usize, default: usize| size.get(i).copied().unwrap_or(default);
    let lattice = |rule: coloring::LatticeColoring, mode: WindowMode| -> Result<Output, CliError> {
        let d = rule.dimension;
        let rep = coloring::verify_lattice_coloring(&rule, d, &vec![window; d], mode)?;
        let pretty = format!(
            "{:?} on {:?} d={d}, {} colors, period {:?}\ninterior points checked: {}  covers full period: {}\n{}",
            rule.rule,
            rule.lattice,
            rule.palette,
            rule.period,
            rep.interior_points,
            rep.covers_full_period,
            if rep.ok { "PASS" } else { "FAIL" }
        );
        Ok(Output {
            outcome: Outcome::from_flags(rep.ok, true),
            json: json!({"rule": to_json(&rule), "report": to_json(&rep)}),
            pretty,
            rows: Vec::new(),
        })
    };
    let board =
        |spec: FamilySpec, c: oddgrid::Result<oddgrid::Coloring>| -> Result<Output, CliError> {
            let c = c?;
            let g = build(&spec)?;
            let rep = oddgrid::verify_strong_odd(&g, &c)?;
            let (rows, cols) = match spec {
                FamilySpec::PathGrid { rows, cols } => (rows, cols),
                FamilySpec::RKing { n, .. } => (n, n),
                _ => (0, 0),
            };
            let mut pretty = format!("{spec}: {} colors used\n", c.colors_used());
            for i in 0..rows.min(40) {
                let line: Vec<String> = (0..cols.min(40))
                    .map(|j| (c.color(i * cols + j) + 1).to_string())
                    .collect();
                pretty += &line.join(" ");
                pretty.push('\n');
            }
            pretty += if rep.ok { "PASS" } else { "FAIL" };
            let mut row = row_for(&spec, Quantity::ChiSo, Method::Formula);
            row.value = rep.ok.then_some(ResultValue::Count(c.colors_used() as u64));
            row.proof_complete = false;
            Ok(Output {
                outcome: Outcome::from_flags(rep.ok, true),
                json: json!({"coloring": to_json(&c), "report": to_json(&rep)}),
                pretty,
                rows: vec![row],
            })
        };
    match construction {
        Construction::Grid5 => {
            let (p, q) = (arg(0, 7), arg(1, arg(0, 7)));
            board(
                FamilySpec::PathGrid { rows: p, cols: q },
                coloring::grid_5_coloring(p, q),
            )
        }
        Construction::Frame4 => {
            let (t, m) = (arg(0, 2), arg(1, 1));
            if t < 2 || m < 1 {
                return Err(CliError::Input(
                    "frame needs --size t,m with t >= 2, m >= 1".into(),
                ));
            }
            let spec = FamilySpec::PathGrid {
                rows: m * (2 * t - 1),
                cols: 2 * t,
            };
            board(spec, coloring::grid_frame_4_coloring(t, m))
        }
        Construction::King => {
            let (n, r) = (arg(0, 7), arg(1, 1));
            board(FamilySpec::RKing { n, r }, coloring::king_coloring(n, r))
        }
        Construction::Dgrid3 => lattice(
            coloring::dgrid_3_coloring(arg(0, 2))?,
            WindowMode::StrongOdd,
        ),
        Construction::DgridSquare => lattice(
            coloring::dgrid_square_coloring(arg(0, 2))?,
            WindowMode::ProperOnSquare,
        ),
        Construction::Triangular => {
            lattice(coloring::triangular_3_coloring(), WindowMode::StrongOdd)
        }
        Construction::Hexagonal => lattice(coloring::hexagonal_2_coloring(), WindowMode::StrongOdd),
    }
}

fn cmd_density(pattern: PatternName, param: usize) -> Result<Output, CliError> {
    let pat: PeriodicPattern = match pattern {
        PatternName::TorusImport => {
            let rec = catalog::bundled_records()?
                .into_iter()
                .find(|r| r.table == Table::Torus && r.k == param)
                .ok_or_else(|| {
                    CliError::Input(format!("no verified torus certificate for k={param}"))
                })?;
            let g = build(&FamilySpec::torus_grid(param))?;
            periodic::from_torus_solution(param, &VertexSet::from_cells(&g, &rec.cells)?)?
        }
        PatternName::RRook => periodic::r_rook_diagonal_pattern(param)?,
        PatternName::RBishop => periodic::r_bishop_pattern(param)?,
        PatternName::Knight => periodic::knight_central_pattern()?,
        PatternName::Triangular => periodic::triangular_class_pattern()?,
        PatternName::Hexagonal => periodic::hexagonal_class_pattern()?,
    };
    let rep = periodic::verify_periodic(&pat);
    let pretty = format!(
        "{} pattern, period {:?}, {} cells\ndensity {}\n{}",
        pat.family(),
        pat.period(),
        pat.cells().len(),
        format_ratio(rep.density),
        if rep.ok { "PASS" } else { "FAIL" }
    );
    let mut row = ResultRow::new(
        pat.family().to_string(),
        &[],
        Quantity::Density,
        Method::VerifiedCert,
    );
    row.value = rep.ok.then_some(rep.density.into());
    Ok(Output {
        outcome: Outcome::from_flags(rep.ok, true),
        json: json!({"pattern": to_json(&pat), "report": to_json(&rep)}),
        pretty,
        rows: vec![row],
    })
}

fn cmd_bounds(which: &BoundsCmd) -> Result<Output, CliError> {
    let (json, pretty) = match *which {
        BoundsCmd::StarFree { d, r, n } => {
            let b = odd::star_free_upper_bound(d, r, n)?;
            (
                json!({"numerator": b.numerator(), "denominator": b.denominator(), "floor": b.floor()}),
                format!("alpha_od <= {b}  (at most {} vertices)", b.floor()),
            )
        }
        BoundsCmd::Density { family, r } => {
            let fam = match family {
                LatticeArg::PlanarGrid => LatticeFamily::PlanarGrid,
                LatticeArg::RRook => LatticeFamily::RRook,
                LatticeArg::RBishop => LatticeFamily::RBishop,
                LatticeArg::Triangular => LatticeFamily::Triangular,
                LatticeArg::Hexagonal => LatticeFamily::Hexagonal,
            };
            let (lo, hi) = odd::density_bounds(fam, r)?;
            (
                json!({"lower": [lo.numerator(), lo.denominator()], "upper": [hi.numerator(), hi.denominator()]}),
                format!("{lo} <= density <= {hi}"),
            )
        }
    };
    Ok(Output {
        outcome: Outcome::Pass,
        json,
        pretty,
        rows: Vec::new(),
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::BuildInfo => Ok(cmd_build_info(g)),
        Command::Solve {
            family,
            params,
            quantity,
            count,
            palette_max,
        } => cmd_solve(g, family, params, *quantity, *count, *palette_max),
        Command::VerifySet {
            file,
            family,
            params,
            internal,
        } => cmd_verify_set(file, family, params, *internal),
        Command::VerifyCatalog {
            input,
            no_cross_check,
        } => cmd_verify_catalog(input.as_ref(), !no_cross_check),
        Command::Tables {
            planar,
            cylinder,
            torus,
            iod,
            out,
        } => cmd_tables(g, [*planar, *cylinder, *torus, *iod], out.as_ref()),
        Command::Color {
            construction,
            size,
            window,
        } => cmd_color(*construction, size, *window),
        Command::Density { pattern, param } => cmd_density(*pattern, *param),
        Command::Bounds { which } => cmd_bounds(which),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let stdout = std::io::stdout();
            let written = match cli.global.format {
                Format::Json => writeln!(
                    stdout.lock(),
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json")
                ),
                Format::Pretty => writeln!(stdout.lock(), "{}", out.pretty),
                Format::Csv => catalog::write_csv(stdout.lock(), &out.rows)
                    .map_err(|e| std::io::Error::other(e.to_string())),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            ExitCode::from(match out.outcome {
                Outcome::Pass => 0,
                Outcome::Fail => 1,
                Outcome::Budget => 2,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
