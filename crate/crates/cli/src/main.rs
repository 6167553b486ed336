//! `multiassoc`: build, certify and compare ray assignments for
//! multiassociahedra from the command line.
//!
//! Exit codes: 0 for a certified fan or a passing comparison, 1 for a verified
//! failure, 2 for usage and IO errors.

mod manifest;
mod reproduce;

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multiassoc::complex::{all_facets, write_facets};
use multiassoc::fan::{certify_fan, CertifyOptions, ConditionOne};
use multiassoc::rays::{build_rays, read_rays, write_rays, Construction};
use multiassoc::word::multiassociahedron_word;
use multiassoc::Word;
use thiserror::Error;

use manifest::RunManifest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] multiassoc::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tier {
    /// n <= 4
    Quick,
    /// n <= 5
    Desk,
    /// n <= 8
    Full,
}

impl Tier {
    fn max_n(self) -> usize {
        match self {
            Tier::Quick => 4,
            Tier::Desk => 5,
            Tier::Full => 8,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "multiassoc", version, about = "Fan realizations of multiassociahedra in exact arithmetic")]
struct Cli {
    /// Worker threads for enumeration and ridge classification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest n that table reproduction may reach.
    #[arg(long, global = true, value_enum, default_value_t = Tier::Desk)]
    tier: Tier,
    /// Seed for perturbed rays and sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the output to this file and a manifest next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the facets of a subword complex.
    Facets {
        /// Word such as "c^2 w0(3)" or "n=2; 1 2 1 2 1".
        #[arg(long, conflicts_with = "kn", required_unless_present = "kn")]
        word: Option<String>,
        /// Shorthand for the word c^k w0(n), given as `k,n`.
        #[arg(long)]
        kn: Option<String>,
    },
    /// Build a ray assignment.
    Rays {
        /// naive, fixed:A,B, linear, perturbed, pattern, pattern-verbatim or loday.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        n: usize,
    },
    /// Compute statistics for a ray file and try to certify the fan.
    Check {
        #[arg(long)]
        rays: PathBuf,
        /// Word the rays are expected to sit on.
        #[arg(long)]
        word: Option<String>,
        /// Exit 0 when the pairwise cone check was only sampled.
        #[arg(long)]
        allow_partial: bool,
        /// Check every pair of cones against the base facet.
        #[arg(long, conflicts_with = "sample")]
        full_sweep: bool,
        /// Check only this many random facets, whatever the rank.
        #[arg(long)]
        sample: Option<usize>,
        /// Statistics only, no pairwise cone check.
        #[arg(long)]
        stats_only: bool,
        /// Also write the certificate as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Regenerate a reference table and compare it cell by cell.
    Reproduce {
        /// T1, T2, T3, T4, T5-integer, T6, F10 or F12.
        id: String,
        /// Columns as `a..b` (inclusive) or a single `n`.
        #[arg(long)]
        n: Option<String>,
    },
    /// Compare brute-force k-triangulations with subword complex facets.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

struct Run {
    text: String,
    outcome: Outcome,
    manifest: RunManifest,
}

fn parse_word(spec: &str) -> Result<Word, CliError> {
    Ok(spec.parse()?)
}

fn parse_kn(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected `k,n`, got `{spec}`"));
    let (k, n) = spec.split_once(',').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn parse_range(spec: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("expected `a..b` or `n`, got `{spec}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match spec.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => num(spec)?..=num(spec)?,
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn facets(cli: &Cli, word: Option<&str>, kn: Option<&str>) -> Result<Run, CliError> {
    let mut manifest = RunManifest::new("facets");
    let w = match (word, kn) {
        (Some(spec), _) => parse_word(spec)?,
        (None, Some(spec)) => {
            let (k, n) = parse_kn(spec)?;
            manifest.k = Some(k);
            multiassociahedron_word(k, n)?
        }
        (None, None) => return Err(CliError::Usage("pass --word or --kn".into())),
    };
    manifest.n = Some(w.rank());
    manifest.threads = cli.threads;
    let idx = all_facets(&w)?;
    let mut text = Vec::new();
    write_facets(&mut text, &w, &idx.facets).expect("writing to memory");
    Ok(Run { text: String::from_utf8(text).expect("facet files are UTF-8"), outcome: Outcome::Pass, manifest })
}

fn rays(cli: &Cli, construction: &str, n: usize) -> Result<Run, CliError> {
    let construction: Construction = construction.parse()?;
    let ra = build_rays(&construction, n, cli.seed)?;
    let mut manifest = RunManifest::new("rays");
    manifest.construction = Some(ra.construction.clone());
    manifest.n = Some(n);
    manifest.k = Some(construction.k());
    manifest.seed = ra.seed;
    let mut text = Vec::new();
    write_rays(&mut text, &ra).expect("writing to memory");
    Ok(Run { text: String::from_utf8(text).expect("ray files are UTF-8"), outcome: Outcome::Pass, manifest })
}

struct CheckArgs<'a> {
    rays: &'a Path,
    word: Option<&'a str>,
    allow_partial: bool,
    full_sweep: bool,
    sample: Option<usize>,
    stats_only: bool,
    json: Option<&'a Path>,
}

fn check(cli: &Cli, args: CheckArgs<'_>) -> Result<Run, CliError> {
    let file = File::open(args.rays).map_err(|e| CliError::io(args.rays, e))?;
    let ra = read_rays(BufReader::new(file))?;
    if let Some(spec) = args.word {
        let w = parse_word(spec)?;
        if w.len() != ra.word.len() {
            return Err(multiassoc::Error::DimensionMismatch { expected: w.len(), got: ra.word.len() }.into());
        }
        if w != ra.word {
            return Err(CliError::Usage(format!("ray file sits on `{}`, not on `{w}`", ra.word)));
        }
    }
    let mut opts = CertifyOptions {
        condition_one: !args.stats_only,
        full_sweep: args.full_sweep,
        seed: cli.seed.unwrap_or(0),
        ..CertifyOptions::default()
    };
    if let Some(size) = args.sample {
        opts.sample_size = size;
        opts.full_sweep_max_rank = 0;
    }
    let idx = all_facets(&ra.word)?;
    let cert = certify_fan(&ra, &idx, &opts)?;

    let mut text = cert.stats.to_string();
    let condition = match &cert.condition_one {
        ConditionOne::Verified { checked, .. } => format!("verified against {checked} facets"),
        ConditionOne::Partial { checked, total, seed, .. } => {
            format!("sampled {checked} of {total} facets (seed {seed})")
        }
        ConditionOne::Violated { witness, .. } => format!("violated by facet {witness:?}"),
        ConditionOne::Skipped => "skipped".to_string(),
    };
    text.push_str(&format!("{:<22}{condition}\n", "cone intersections"));
    if let Some(failure) = &cert.failure {
        let json = serde_json::to_string(failure).expect("failures serialize");
        text.push_str(&format!("{:<22}{json}\n", "first failure"));
    }
    text.push_str(&format!("{:<22}{}\n", "verdict", cert.verdict()));

    if let Some(path) = args.json {
        let json = serde_json::to_string_pretty(&cert).expect("certificates serialize") + "\n";
        fs::write(path, json).map_err(|e| CliError::io(path, e))?;
    }

    let accepted = cert.certified
        || (args.stats_only && cert.failure.is_none())
        || (cert.partially_certified && args.allow_partial);
    let outcome = if accepted { Outcome::Pass } else { Outcome::Fail };
    let mut manifest = RunManifest::new("check");
    manifest.construction = Some(ra.construction.clone());
    manifest.n = Some(ra.word.rank());
    manifest.seed = Some(opts.seed);
    manifest.threads = cli.threads;
    Ok(Run { text, outcome, manifest })
}

fn reproduce_table(cli: &Cli, id: &str, n: Option<&str>) -> Result<Run, CliError> {
    if !reproduce::TABLE_IDS.contains(&id) {
        return Err(CliError::Usage(format!(
            "unknown table `{id}`; expected one of {}",
            reproduce::TABLE_IDS.join(", ")
        )));
    }
    let range = match n {
        Some(spec) => parse_range(spec)?,
        None => reproduce::default_range(id, cli.tier.max_n()),
    };
    let admissible = reproduce::admissible(id);
    if !admissible.contains(range.start()) || !admissible.contains(range.end()) {
        return Err(CliError::Usage(format!(
            "n range {}..{} is outside {}..{} for {id}",
            range.start(),
            range.end(),
            admissible.start(),
            admissible.end()
        )));
    }
    let limit = cli.tier.max_n().max(*admissible.start());
    if *range.end() > limit {
        return Err(CliError::Usage(format!(
            "n={} exceeds the {} tier (n <= {limit}); pass --tier full",
            range.end(),
            format!("{:?}", cli.tier).to_lowercase()
        )));
    }
    let report = reproduce::reproduce(id, range.clone())?;
    let outcome = if report.failed() == 0 { Outcome::Pass } else { Outcome::Fail };
    let mut manifest = RunManifest::new("reproduce");
    manifest.construction = Some(id.to_string());
    manifest.n = Some(*range.end());
    manifest.threads = cli.threads;
    Ok(Run { text: report.render(id), outcome, manifest })
}

fn oracle(cli: &Cli, k: usize, n: usize) -> Result<Run, CliError> {
    let agreement = reproduce::oracle_agreement(k, n)?;
    let (outcome, verdict) = if agreement.equal { (Outcome::Pass, "PASS") } else { (Outcome::Fail, "FAIL") };
    let text = format!(
        "{verdict} k={k} n={n}: {} triangulations, {} facets, sets {}\n",
        agreement.triangulations,
        agreement.facets,
        agreement.verdict()
    );
    let mut manifest = RunManifest::new("oracle");
    manifest.k = Some(k);
    manifest.n = Some(n);
    manifest.threads = cli.threads;
    Ok(Run { text, outcome, manifest })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let result = match &cli.command {
        Command::Facets { word, kn } => facets(cli, word.as_deref(), kn.as_deref())?,
        Command::Rays { construction, n } => rays(cli, construction, *n)?,
        Command::Check { rays, word, allow_partial, full_sweep, sample, stats_only, json } => check(
            cli,
            CheckArgs {
                rays,
                word: word.as_deref(),
                allow_partial: *allow_partial,
                full_sweep: *full_sweep,
                sample: *sample,
                stats_only: *stats_only,
                json: json.as_deref(),
            },
        )?,
        Command::Reproduce { id, n } => reproduce_table(cli, id, n.as_deref())?,
        Command::Oracle { k, n } => oracle(cli, *k, *n)?,
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, &result.text).map_err(|e| CliError::io(path, e))?;
            let sidecar = result.manifest.finish(path, result.text.as_bytes()).map_err(|e| CliError::io(path, e))?;
            eprintln!("wrote {} and {}", path.display(), sidecar.display());
        }
        None => io::stdout().write_all(result.text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
    }
    Ok(result.outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
