//! Regeneration of the vendored reference tables, cell by cell.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use multiassoc::complex::all_facets;
use multiassoc::fan::{certify_fan, CertifyOptions};
use multiassoc::multitri::{enumerate_k_triangulations, triangulation_to_facet};
use multiassoc::rays::{build_rays, loday_closed_form, Construction};
use multiassoc::reference::{compare_rays, compare_stats, ray_table, stats_table, Cell};
use multiassoc::word::multiassociahedron_word;

use crate::CliError;

pub const TABLE_IDS: [&str; 8] = ["T1", "T2", "T3", "T4", "T5-integer", "T6", "F10", "F12"];

/// Largest `n` any statistics column covers.
pub const MAX_N: usize = 8;

#[derive(Debug, Default)]
pub struct Report {
    pub cells: Vec<Cell>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed()).count()
    }

    pub fn render(&self, id: &str) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&format!("{c}\n"));
        }
        let failed = self.failed();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {id}: {} of {} cells match\n", self.cells.len() - failed, self.cells.len()));
        out
    }
}

fn cell(row: impl Into<String>, column: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Cell {
    Cell { row: row.into(), column: column.into(), expected: expected.to_string(), actual: actual.to_string() }
}

fn catalan(m: usize) -> u64 {
    (0..m as u64).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Default `n` range of a table when none is given, capped by `tier_max`.
pub fn default_range(id: &str, tier_max: usize) -> RangeInclusive<usize> {
    match id {
        "T1" => 4..=4,
        "T3" => 3..=3,
        "T5-integer" | "F12" => 5..=5,
        "F10" => 2..=6,
        _ => 1..=tier_max,
    }
}

/// The `n` values a table can be regenerated for.
pub fn admissible(id: &str) -> RangeInclusive<usize> {
    match id {
        "F10" => 1..=MAX_N,
        _ => default_range(id, MAX_N),
    }
}

pub fn reproduce(id: &str, range: RangeInclusive<usize>) -> Result<Report, CliError> {
    match id {
        "T1" | "T3" | "T5-integer" => rays(id),
        "T2" | "T4" | "T6" => stats(id, range),
        "F10" => loday(range),
        "F12" => pattern_table(),
        _ => Err(CliError::Usage(format!("unknown table `{id}`; expected one of {}", TABLE_IDS.join(", ")))),
    }
}

fn rays(id: &str) -> Result<Report, CliError> {
    let table = ray_table(id)?;
    let ra = build_rays(&table.construction, table.n, None)?;
    Ok(Report { cells: compare_rays(&table, &ra) })
}

fn stats(id: &str, range: RangeInclusive<usize>) -> Result<Report, CliError> {
    let table = stats_table(id)?;
    let mut report = Report::default();
    for n in range {
        let column = table.column(n).ok_or_else(|| CliError::Usage(format!("{id} has no column n={n}")))?;
        let ra = build_rays(&table.construction, n, None)?;
        let idx = all_facets(&ra.word)?;
        let got = certify_fan(&ra, &idx, &CertifyOptions::stats_only())?.stats;
        report.cells.extend(compare_stats(column, &got));
    }
    Ok(report)
}

fn loday(range: RangeInclusive<usize>) -> Result<Report, CliError> {
    let mut report = Report::default();
    for n in range {
        let column = format!("n={n}");
        let ra = build_rays(&Construction::Loday, n, None)?;
        let closed = loday_closed_form(n)?;
        let same = if ra.rays == closed.rays && ra.word == closed.word { "equal" } else { "different" };
        report.cells.push(cell("closed form", &column, "equal", same));
        let idx = all_facets(&ra.word)?;
        report.cells.push(cell("facets", &column, catalan(n + 1), idx.facets.len()));
        if n <= 4 {
            report.cells.push(cell("oracle", &column, "equal", oracle_agreement(1, n)?.verdict()));
        }
        let cert = certify_fan(&ra, &idx, &CertifyOptions::default())?;
        report.cells.push(cell("fan", &column, "certified", cert.verdict()));
    }
    Ok(report)
}

fn pattern_table() -> Result<Report, CliError> {
    let table = ray_table("T5-integer")?;
    let pattern = build_rays(&Construction::Pattern, table.n, None)?;
    let linear = build_rays(&Construction::Linear, table.n, None)?;
    let mut report = Report { cells: compare_rays(&table, &pattern) };
    let mut deviations = Vec::new();
    for (r, (p, l)) in pattern.rays.iter().zip(&linear.rays).enumerate() {
        for (c, (x, y)) in p.0.iter().zip(&l.0).enumerate() {
            if x != y {
                deviations.push(((r, c), (x - y).to_string()));
            }
        }
    }
    report.cells.push(cell("deviations from linear", "count", table.marked.len(), deviations.len()));
    for (k, &(r, c)) in table.marked.iter().enumerate() {
        let found = deviations.get(k);
        let at = found.map_or_else(|| "none".to_string(), |((r, c), _)| format!("({},{})", r + 1, c + 1));
        report.cells.push(cell(format!("deviation {}", k + 1), "entry", format!("({},{})", r + 1, c + 1), at));
        let expected = ["-1", "-2", "-1"].get(k).copied().unwrap_or("?");
        let value = found.map_or("none", |d| d.1.as_str());
        report.cells.push(cell(format!("deviation {}", k + 1), "value", expected, value));
    }
    Ok(report)
}

pub struct OracleAgreement {
    pub triangulations: usize,
    pub facets: usize,
    pub equal: bool,
}

impl OracleAgreement {
    pub fn verdict(&self) -> &'static str {
        if self.equal {
            "equal"
        } else {
            "different"
        }
    }
}

/// Maps every k-triangulation to a facet of `c^k w∘(c)` and compares the two sets.
pub fn oracle_agreement(k: usize, n: usize) -> Result<OracleAgreement, CliError> {
    let triangulations = enumerate_k_triangulations(k, n)?;
    let mapped = triangulations
        .iter()
        .map(|t| triangulation_to_facet(k, n, t).map(|f| f.0))
        .collect::<Result<BTreeSet<u64>, _>>()?;
    let idx = all_facets(&multiassociahedron_word(k, n)?)?;
    let facets: BTreeSet<u64> = idx.facets.iter().map(|f| f.0).collect();
    Ok(OracleAgreement { triangulations: triangulations.len(), facets: facets.len(), equal: mapped == facets })
}
