//! Vendored reference tables and cell-by-cell comparison against computed values.
//!
//! | id | content |
//! |----|---------|
//! | `T1` | naive rays, `n = 4` |
//! | `T2` | naive statistics, `n = 1..8` |
//! | `T3` | `fixed:5,3` rays, `n = 3` |
//! | `T4` | `fixed:5,3` statistics, `n = 1..8` |
//! | `T5-integer` | pattern rays, `n = 5`, with marked perturbation entries |
//! | `T6` | linear statistics, `n = 1..8` |

use std::fmt;

use crate::error::{Error, Result};
use crate::fan::{format_ratio, FanStats};
use crate::rays::{Construction, RayAssignment};

const T1: &str = include_str!("../golden/t1_naive_n4.txt");
const T2: &str = include_str!("../golden/t2_naive_stats.txt");
const T3: &str = include_str!("../golden/t3_fixed53_n3.txt");
const T4: &str = include_str!("../golden/t4_fixed53_stats.txt");
const T5: &str = include_str!("../golden/t5_integer_n5.txt");
const T6: &str = include_str!("../golden/t6_linear_stats.txt");

pub const STATS_TABLES: [&str; 3] = ["T2", "T4", "T6"];
pub const RAY_TABLES: [&str; 3] = ["T1", "T3", "T5-integer"];

/// One column of a statistics table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsColumn {
    pub n: usize,
    pub bad_ridges: u64,
    pub degenerate_ridges: u64,
    pub ridges: u64,
    pub ridge_ratio: String,
    pub degenerate_cones: u64,
    pub cones: u64,
    pub cone_ratio: String,
    pub minimal_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsTable {
    pub id: String,
    pub construction: Construction,
    pub columns: Vec<StatsColumn>,
}

impl StatsTable {
    pub fn column(&self, n: usize) -> Option<&StatsColumn> {
        self.columns.iter().find(|c| c.n == n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTable {
    pub id: String,
    pub construction: Construction,
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
    /// `(row, column)` pairs, 0-based, of marked entries.
    pub marked: Vec<(usize, usize)>,
}

/// Comparison of a single cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub actual: String,
}

impl Cell {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} [{}] expected {} got {}", self.row, self.column, self.expected, self.actual)
    }
}

fn header_construction(text: &str) -> Result<Construction> {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .flat_map(str::split_whitespace)
        .find_map(|t| t.strip_prefix("construction="))
        .ok_or_else(|| Error::Parse("reference table lacks a construction".into()))?
        .parse()
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))
}

fn parse_stats(id: &str, text: &str) -> Result<StatsTable> {
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    for line in data_lines(text) {
        let mut tokens = line.split_whitespace().map(str::to_string);
        let name = tokens.next().expect("non-empty line");
        rows.push((name, tokens.collect()));
    }
    let get = |name: &str| -> Result<&Vec<String>> {
        rows.iter()
            .find(|(r, _)| r == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Parse(format!("{id} lacks row {name}")))
    };
    let ns = get("n")?;
    let mut columns = Vec::new();
    for (k, n) in ns.iter().enumerate() {
        let at = |name: &str| -> Result<&String> {
            get(name)?.get(k).ok_or_else(|| Error::Parse(format!("{id} row {name} is short")))
        };
        columns.push(StatsColumn {
            n: parse_num(n)?,
            bad_ridges: parse_num(at("bad_ridges")?)?,
            degenerate_ridges: parse_num(at("degenerate_ridges")?)?,
            ridges: parse_num(at("ridges")?)?,
            ridge_ratio: at("ridge_ratio")?.clone(),
            degenerate_cones: parse_num(at("degenerate_cones")?)?,
            cones: parse_num(at("cones")?)?,
            cone_ratio: at("cone_ratio")?.clone(),
            minimal_dimension: parse_num(at("minimal_dimension")?)?,
        });
    }
    Ok(StatsTable { id: id.to_string(), construction: header_construction(text)?, columns })
}

fn parse_rays(id: &str, text: &str) -> Result<RayTable> {
    let n = text
        .lines()
        .filter_map(|l| l.strip_prefix('#'))
        .flat_map(str::split_whitespace)
        .find_map(|t| t.strip_prefix("n="))
        .ok_or_else(|| Error::Parse(format!("{id} lacks n")))?;
    let n = parse_num(n)?;
    let mut rows = Vec::new();
    let mut marked = Vec::new();
    for (r, line) in data_lines(text).enumerate() {
        let mut tokens = line.split_whitespace();
        let pos: usize = parse_num(tokens.next().expect("non-empty line"))?;
        if pos != r + 1 {
            return Err(Error::Parse(format!("{id}: row {pos} out of order")));
        }
        let mut row = Vec::new();
        for (c, t) in tokens.enumerate() {
            let value = match t.strip_suffix('*') {
                Some(v) => {
                    marked.push((r, c));
                    v
                }
                None => t,
            };
            row.push(parse_num(value)?);
        }
        rows.push(row);
    }
    Ok(RayTable { id: id.to_string(), construction: header_construction(text)?, n, rows, marked })
}

pub fn stats_table(id: &str) -> Result<StatsTable> {
    match id {
        "T2" => parse_stats(id, T2),
        "T4" => parse_stats(id, T4),
        "T6" => parse_stats(id, T6),
        _ => Err(Error::Parse(format!("no statistics table `{id}`"))),
    }
}

pub fn ray_table(id: &str) -> Result<RayTable> {
    match id {
        "T1" => parse_rays(id, T1),
        "T3" => parse_rays(id, T3),
        "T5-integer" => parse_rays(id, T5),
        _ => Err(Error::Parse(format!("no ray table `{id}`"))),
    }
}

/// Compares every cell of a statistics column with computed statistics. Ratio
/// cells are compared with the ratios of the vendored counts, not the printed ones.
pub fn compare_stats(expected: &StatsColumn, actual: &FanStats) -> Vec<Cell> {
    let column = format!("n={}", expected.n);
    let cell =
        |row: &str, e: String, a: String| Cell { row: row.to_string(), column: column.clone(), expected: e, actual: a };
    vec![
        cell("bad ridges", expected.bad_ridges.to_string(), actual.bad_ridges.to_string()),
        cell("degenerate ridges", expected.degenerate_ridges.to_string(), actual.degenerate_ridges.to_string()),
        cell("ridges", expected.ridges.to_string(), actual.ridges.to_string()),
        cell(
            "ridge ratio",
            format_ratio(expected.degenerate_ridges, expected.ridges),
            actual.degenerate_ridge_ratio.clone(),
        ),
        cell("degenerate cones", expected.degenerate_cones.to_string(), actual.degenerate_cones.to_string()),
        cell("cones", expected.cones.to_string(), actual.cones.to_string()),
        cell(
            "cone ratio",
            format_ratio(expected.degenerate_cones, expected.cones),
            actual.degenerate_cone_ratio.clone(),
        ),
        cell("minimal dimension", expected.minimal_dimension.to_string(), actual.minimal_dimension.to_string()),
    ]
}

/// Compares every coordinate of a ray table with a ray assignment.
pub fn compare_rays(expected: &RayTable, actual: &RayAssignment) -> Vec<Cell> {
    let mut out = Vec::new();
    for (r, row) in expected.rows.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            let got =
                actual.rays.get(r).and_then(|v| v.0.get(c)).map_or_else(|| "missing".to_string(), ToString::to_string);
            out.push(Cell {
                row: format!("position {}", r + 1),
                column: format!("coordinate {}", c + 1),
                expected: x.to_string(),
                actual: got,
            });
        }
    }
    if actual.rays.len() != expected.rows.len() {
        out.push(Cell {
            row: "rows".into(),
            column: "count".into(),
            expected: expected.rows.len().to_string(),
            actual: actual.rays.len().to_string(),
        });
    }
    out
}
