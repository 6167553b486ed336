//! Certification of complete simplicial fans and the degeneracy statistics
//! of ray assignments.
//!
//! A family of cones spanned by the facets of a pseudomanifold is a complete
//! simplicial fan when every cone is full dimensional, the two rays exchanged
//! across each ridge lie strictly on opposite sides of it, and some cone meets
//! no other cone in its interior.
//!
//! The production path signs every facet determinant once and classifies each
//! ridge by comparing the two signs. [`classify_ridge`] is the slower kernel
//! formulation used to cross-check it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{greedy_facet, ComplexIndex, DualEdge, Facet};
use crate::error::{Error, Result};
use crate::linalg::{determinant_i128, kernel, multiply, rank, rank_i128, signed_adjugate, Matrix};
use crate::lp::is_feasible;
use crate::rays::RayAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RidgeStatus {
    Good,
    Bad,
    Degenerate,
}

impl fmt::Display for RidgeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RidgeStatus::Good => "good",
            RidgeStatus::Bad => "bad",
            RidgeStatus::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeReport {
    pub ridge: Vec<usize>,
    pub leave: usize,
    pub enter: usize,
    pub status: RidgeStatus,
    /// Primitive dependence on `ridge ++ [leave, enter]`, normalized so the
    /// coefficient of `leave` is positive. Present when unique.
    #[serde(serialize_with = "serialize_bigints")]
    pub dependence: Option<Vec<BigInt>>,
}

fn serialize_bigints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
    }
}

/// Integer rays, in machine integers when they fit.
struct Columns {
    big: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i128>>>,
}

impl Columns {
    fn new(ra: &RayAssignment) -> Self {
        let big = ra.integer_rays();
        let small = big
            .iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).ok().map(i128::from)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        Columns { big, small }
    }

    fn big_matrix(&self, positions: &[usize]) -> Matrix<BigInt> {
        let cols: Vec<&[BigInt]> = positions.iter().map(|&p| self.big[p - 1].as_slice()).collect();
        Matrix::from_columns(&cols)
    }

    fn determinant(&self, f: Facet) -> BigInt {
        let positions = f.positions();
        match &self.small {
            Some(small) => {
                let cols: Vec<&[i128]> = positions.iter().map(|&p| small[p - 1].as_slice()).collect();
                determinant_i128(Matrix::from_columns(&cols))
            }
            None => crate::linalg::determinant(&self.big_matrix(&positions)),
        }
    }

    fn rank(&self, f: Facet) -> usize {
        let positions = f.positions();
        match &self.small {
            Some(small) => {
                let cols: Vec<&[i128]> = positions.iter().map(|&p| small[p - 1].as_slice()).collect();
                rank_i128(Matrix::from_columns(&cols))
            }
            None => rank(&self.big_matrix(&positions)),
        }
    }
}

fn check_shapes(ra: &RayAssignment, idx: &ComplexIndex) -> Result<()> {
    if ra.word != idx.word {
        return Err(Error::InapplicableMove("ray assignment and complex use different words".into()));
    }
    if ra.dim != idx.facet_size() {
        return Err(Error::DimensionMismatch { expected: idx.facet_size(), got: ra.dim });
    }
    Ok(())
}

/// Rank of the rays of `f`.
pub fn facet_rank(ra: &RayAssignment, f: Facet) -> usize {
    Columns::new(ra).rank(f)
}

/// Kernel classification of the ridge shared by the adjacent facets `f`, `g`.
pub fn classify_ridge(ra: &RayAssignment, f: Facet, g: Facet) -> Result<RidgeReport> {
    let ridge = Facet(f.0 & g.0);
    if f.len() != g.len() || ridge.len() + 1 != f.len() {
        return Err(Error::NotAdjacent);
    }
    let leave = (f.0 & !g.0).trailing_zeros() as usize + 1;
    let enter = (g.0 & !f.0).trailing_zeros() as usize + 1;
    let cols = Columns::new(ra);
    let d = ra.dim;
    let mut report =
        RidgeReport { ridge: ridge.positions(), leave, enter, status: RidgeStatus::Degenerate, dependence: None };
    if cols.rank(f) < d || cols.rank(g) < d {
        return Ok(report);
    }
    let mut positions = report.ridge.clone();
    positions.push(leave);
    positions.push(enter);
    let basis = kernel(&cols.big_matrix(&positions));
    if basis.len() != 1 {
        return Ok(report);
    }
    let mut v = basis.into_iter().next().expect("one kernel vector");
    let m = v.len();
    if v[m - 2].is_negative() {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    report.status = if v[m - 2].is_positive() && v[m - 1].is_positive() { RidgeStatus::Good } else { RidgeStatus::Bad };
    report.dependence = Some(v);
    Ok(report)
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Opposite-side test from the signed facet determinants.
fn ridge_status(edge: &DualEdge, ridge: Facet, det_a: i8, det_b: i8) -> RidgeStatus {
    if det_a == 0 || det_b == 0 {
        return RidgeStatus::Degenerate;
    }
    let (lo, hi) = if edge.leave < edge.enter { (edge.leave, edge.enter) } else { (edge.enter, edge.leave) };
    let between_mask = if hi - lo <= 1 { 0 } else { ((1u64 << (hi - 1)) - 1) & !((1u64 << lo) - 1) };
    let between = (ridge.0 & between_mask).count_ones();
    let sign = if between.is_multiple_of(2) { det_a * det_b } else { -det_a * det_b };
    if sign < 0 {
        RidgeStatus::Good
    } else {
        RidgeStatus::Bad
    }
}

/// Facets of `others` whose open cone meets the open cone of `base`; returns
/// the first one in the given order.
pub fn condition_one(ra: &RayAssignment, base: Facet, others: &[Facet]) -> Result<Option<Facet>> {
    let cols = Columns::new(ra);
    let b = cols.big_matrix(&base.positions());
    let adj = signed_adjugate(&b).ok_or(Error::RankDeficientBase)?;
    let hit = others.par_iter().filter(|&&f| f != base).find_first(|&&f| {
        let m = multiply(&adj, &cols.big_matrix(&f.positions()));
        is_feasible(&m)
    });
    Ok(hit.copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ConditionOne {
    /// Every other facet was checked against the base.
    Verified {
        base: Vec<usize>,
        checked: usize,
    },
    /// A sample of the facets was checked.
    Partial {
        base: Vec<usize>,
        checked: usize,
        total: usize,
        seed: u64,
    },
    Violated {
        base: Vec<usize>,
        witness: Vec<usize>,
    },
    /// Not run: disabled, or conditions on cones and ridges already failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub condition_one: bool,
    /// Run the pairwise cone test against every facet even for large ranks.
    pub full_sweep: bool,
    /// Ranks up to this value always get the full sweep.
    pub full_sweep_max_rank: usize,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { condition_one: true, full_sweep: false, full_sweep_max_rank: 5, sample_size: 10_000, seed: 0 }
    }
}

impl CertifyOptions {
    /// Statistics only.
    pub fn stats_only() -> Self {
        CertifyOptions { condition_one: false, ..Self::default() }
    }
}

/// `100·count/total` rounded half up to two decimals, from exact integers.
pub fn format_ratio(count: u64, total: u64) -> String {
    if total == 0 {
        return "0.00".to_string();
    }
    let hundredths = (20_000 * count as u128 + total as u128) / (2 * total as u128);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanStats {
    pub n: usize,
    pub dimension: usize,
    pub construction: String,
    pub seed: Option<u64>,
    pub bad_ridges: u64,
    pub degenerate_ridges: u64,
    pub ridges: u64,
    pub degenerate_ridge_ratio: String,
    pub degenerate_cones: u64,
    pub cones: u64,
    pub degenerate_cone_ratio: String,
    pub minimal_dimension: usize,
}

impl fmt::Display for FanStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(f, "# construction={} n={} d={} seed={seed}", self.construction, self.n, self.dimension)?;
        let rows: [(&str, String); 8] = [
            ("# bad ridges", self.bad_ridges.to_string()),
            ("# degenerate ridges", self.degenerate_ridges.to_string()),
            ("# ridges", self.ridges.to_string()),
            ("ratio", self.degenerate_ridge_ratio.clone()),
            ("# degenerate cones", self.degenerate_cones.to_string()),
            ("# cones", self.cones.to_string()),
            ("ratio", self.degenerate_cone_ratio.clone()),
            ("minimal dimension", self.minimal_dimension.to_string()),
        ];
        for (name, value) in rows {
            writeln!(f, "{name:<22}{value:>12}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    DegenerateCone { facet: Vec<usize>, rank: usize },
    Ridge(RidgeReport),
    IntersectingCones { base: Vec<usize>, other: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// All cones full dimensional, all ridges good and the pairwise cone test run on every facet.
    pub certified: bool,
    /// As `certified`, except that the pairwise cone test was only sampled.
    pub partially_certified: bool,
    pub stats: FanStats,
    pub condition_one: ConditionOne,
    pub failure: Option<Failure>,
}

impl Certificate {
    pub fn verdict(&self) -> &'static str {
        if self.certified {
            "certified"
        } else if self.partially_certified {
            "partial certificate"
        } else {
            "not certified"
        }
    }
}

/// Computes the statistics and checks both fan conditions. The result does not
/// depend on the number of worker threads.
pub fn certify_fan(ra: &RayAssignment, idx: &ComplexIndex, opts: &CertifyOptions) -> Result<Certificate> {
    check_shapes(ra, idx)?;
    let d = ra.dim;
    let cols = Columns::new(ra);
    let signs: Vec<i8> = idx.facets.par_iter().map(|&f| sign_of(&cols.determinant(f))).collect();
    let degenerate: Vec<usize> = (0..signs.len()).filter(|&k| signs[k] == 0).collect();
    let ranks: Vec<usize> = degenerate.par_iter().map(|&k| cols.rank(idx.facets[k])).collect();
    let minimal_dimension = ranks.iter().copied().min().unwrap_or(d);

    let statuses: Vec<RidgeStatus> = idx
        .dual_edges
        .par_iter()
        .map(|e| ridge_status(e, e.ridge(idx), signs[e.a as usize], signs[e.b as usize]))
        .collect();
    let bad = statuses.iter().filter(|s| **s == RidgeStatus::Bad).count() as u64;
    let degenerate_ridges = statuses.iter().filter(|s| **s == RidgeStatus::Degenerate).count() as u64;

    let ridges = idx.dual_edges.len() as u64;
    let cones = idx.facets.len() as u64;
    let stats = FanStats {
        n: ra.word.rank(),
        dimension: d,
        construction: ra.construction.clone(),
        seed: ra.seed,
        bad_ridges: bad,
        degenerate_ridges,
        ridges,
        degenerate_ridge_ratio: format_ratio(degenerate_ridges, ridges),
        degenerate_cones: degenerate.len() as u64,
        cones,
        degenerate_cone_ratio: format_ratio(degenerate.len() as u64, cones),
        minimal_dimension,
    };

    let mut failure =
        degenerate.first().map(|&k| Failure::DegenerateCone { facet: idx.facets[k].positions(), rank: ranks[0] });
    if failure.is_none() {
        if let Some(k) = statuses.iter().position(|s| *s != RidgeStatus::Good) {
            let e = &idx.dual_edges[k];
            let report = classify_ridge(ra, idx.facets[e.a as usize], idx.facets[e.b as usize])?;
            failure = Some(Failure::Ridge(report));
        }
    }

    let mut condition = ConditionOne::Skipped;
    if failure.is_none() && opts.condition_one && !idx.facets.is_empty() {
        let greedy = greedy_facet(&idx.word)?;
        let base = idx.facet_id(greedy).filter(|&k| signs[k] != 0).unwrap_or(0);
        let base = idx.facets[base];
        let total = idx.facets.len() - 1;
        let full = opts.full_sweep || ra.word.rank() <= opts.full_sweep_max_rank || opts.sample_size >= total;
        let others: Vec<Facet> = if full {
            idx.facets.iter().copied().filter(|&f| f != base).collect()
        } else {
            let pool: Vec<Facet> = idx.facets.iter().copied().filter(|&f| f != base).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut picked = sample(&mut rng, pool.len(), opts.sample_size).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|k| pool[k]).collect()
        };
        let checked = others.len();
        condition = match condition_one(ra, base, &others)? {
            Some(w) => {
                failure = Some(Failure::IntersectingCones { base: base.positions(), other: w.positions() });
                ConditionOne::Violated { base: base.positions(), witness: w.positions() }
            }
            None if full => ConditionOne::Verified { base: base.positions(), checked },
            None => ConditionOne::Partial { base: base.positions(), checked, total, seed: opts.seed },
        };
    }

    let certified = failure.is_none() && matches!(condition, ConditionOne::Verified { .. });
    let partially_certified = failure.is_none() && matches!(condition, ConditionOne::Partial { .. });
    Ok(Certificate { certified, partially_certified, stats, condition_one: condition, failure })
}
