//! Exact ray coordinates attached to the letters of a word, the geometric
//! counterparts of doubling and braid moves, and the named constructions.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::integer_multiple;
use crate::moves::{apply_move, commute_to, fattening_sequence, Label, MoveEvent, MoveKind, MoveTrace};
use crate::multitri::{polygon_size, position_to_diagonal, Diagonal};
use crate::word::{c_sorted_word, coxeter_word, multiassociahedron_word, Word};
use crate::Rational;

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayVec(pub Vec<Rational>);

impl RayVec {
    pub fn zero(d: usize) -> Self {
        RayVec(vec![Rational::zero(); d])
    }

    pub fn from_integers(v: &[i64]) -> Self {
        RayVec(v.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `self ⊕ t`.
    pub fn extend(&self, t: Rational) -> Self {
        let mut v = self.0.clone();
        v.push(t);
        RayVec(v)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        RayVec(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &RayVec) -> Self {
        RayVec(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &RayVec) -> Self {
        RayVec(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }

    /// Integer coordinates when every entry is an integer.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect()
    }
}

impl fmt::Display for RayVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Rays attached to the positions of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayAssignment {
    pub word: Word,
    /// `rays[r - 1]` belongs to position `r`.
    pub rays: Vec<RayVec>,
    pub dim: usize,
    pub construction: String,
    pub seed: Option<u64>,
}

impl RayAssignment {
    /// Zero vectors in `R^0` on every letter.
    pub fn empty(word: Word) -> Self {
        let rays = vec![RayVec::zero(0); word.len()];
        RayAssignment { word, rays, dim: 0, construction: String::new(), seed: None }
    }

    pub fn ray(&self, r: usize) -> &RayVec {
        &self.rays[r - 1]
    }

    /// Each ray scaled to a primitive-denominator integer vector (positive factors).
    pub fn integer_rays(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().map(|v| integer_multiple(&v.0)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.rays.iter().all(RayVec::is_integral)
    }

    fn check_dims(&self) -> Result<()> {
        for v in &self.rays {
            if v.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
            }
        }
        if self.rays.len() != self.word.len() {
            return Err(Error::DimensionMismatch { expected: self.word.len(), got: self.rays.len() });
        }
        Ok(())
    }
}

/// Doubling at `r`: the two resulting letters get `ρ ⊕ α f` and `ρ ⊕ β f`,
/// every other ray gains a zero coordinate.
pub fn double_transform(ra: &RayAssignment, r: usize, alpha: &Rational, beta: &Rational) -> Result<RayAssignment> {
    if (alpha * beta).is_positive() || alpha.is_zero() || beta.is_zero() {
        return Err(Error::SameSignDoubling);
    }
    let (word, _) = apply_move(&ra.word, MoveEvent::double(r))?;
    let mut rays: Vec<RayVec> = Vec::with_capacity(word.len());
    for (k, v) in ra.rays.iter().enumerate() {
        if k + 1 == r {
            rays.push(v.extend(alpha.clone()));
            rays.push(v.extend(beta.clone()));
        } else {
            rays.push(v.extend(Rational::zero()));
        }
    }
    Ok(RayAssignment { word, rays, dim: ra.dim + 1, ..ra.clone() })
}

/// Braid at `r`: the middle ray becomes `a ρ_r + b ρ_{r+2} − ε ρ_{r+1}` and the
/// outer rays are exchanged.
pub fn braid_transform(
    ra: &RayAssignment,
    r: usize,
    a: &Rational,
    b: &Rational,
    eps: &Rational,
) -> Result<RayAssignment> {
    for (name, x) in [("a", a), ("b", b), ("epsilon", eps)] {
        if !x.is_positive() {
            return Err(Error::NonPositiveCoefficient(format!("{name} = {x}")));
        }
    }
    let (word, _) = apply_move(&ra.word, MoveEvent::braid(r))?;
    let mut rays = ra.rays.clone();
    let (x, y, z) = (&ra.rays[r - 1], &ra.rays[r], &ra.rays[r + 1]);
    rays[r] = x.scaled(a).add(&z.scaled(b)).sub(&y.scaled(eps));
    rays[r - 1] = z.clone();
    rays[r + 1] = x.clone();
    Ok(RayAssignment { word, rays, ..ra.clone() })
}

pub fn commutation_transform(ra: &RayAssignment, r: usize) -> Result<RayAssignment> {
    let (word, _) = apply_move(&ra.word, MoveEvent::commutation(r))?;
    let mut rays = ra.rays.clone();
    rays.swap(r - 1, r);
    Ok(RayAssignment { word, rays, ..ra.clone() })
}

/// `constant + ci·i + cj·j` evaluated on the braid indices `(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: Rational,
    pub ci: Rational,
    pub cj: Rational,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Affine { constant: c, ci: Rational::zero(), cj: Rational::zero() }
    }

    pub fn eval(&self, i: usize, j: usize) -> Rational {
        &self.constant + &self.ci * int(i as i64) + &self.cj * int(j as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Perturbation {
    None,
    /// Adds `k / denominator` with `k` uniform in `[-magnitude, magnitude]` to
    /// each of `λL` and `λR`, drawn in braid order from a seeded stream.
    Seeded {
        seed: u64,
        denominator: i64,
        magnitude: i64,
    },
}

/// Coefficients of a two-step construction. `λL`, `λR` weight the outer rays of
/// braid moves in the first fattening, `a`, `b`, `c` weight `ρ_r`, `ρ_{r+1}`,
/// `ρ_{r+2}` in the second one; `alpha`, `beta` are the doubling coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientScheme {
    pub lambda_left: Affine,
    pub lambda_right: Affine,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub perturbation: Perturbation,
}

impl CoefficientScheme {
    pub fn fixed(left: i64, right: i64) -> Self {
        CoefficientScheme {
            lambda_left: Affine::constant(int(left)),
            lambda_right: Affine::constant(int(right)),
            a: Rational::one(),
            b: Rational::one(),
            c: Rational::one(),
            alpha: -Rational::one(),
            beta: Rational::one(),
            perturbation: Perturbation::None,
        }
    }

    pub fn naive() -> Self {
        Self::fixed(1, 1)
    }

    /// `λL = 2n+4−i−j`, `λR = 2n+3−i−j`.
    pub fn linear(n: usize) -> Self {
        let n = n as i64;
        CoefficientScheme {
            lambda_left: Affine { constant: int(2 * n + 4), ci: int(-1), cj: int(-1) },
            lambda_right: Affine { constant: int(2 * n + 3), ci: int(-1), cj: int(-1) },
            ..Self::naive()
        }
    }

    pub fn perturbed(n: usize, seed: u64) -> Self {
        CoefficientScheme {
            perturbation: Perturbation::Seeded { seed, denominator: 1_000_000, magnitude: 1000 },
            ..Self::linear(n)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Naive,
    Fixed(i64, i64),
    Linear,
    Perturbed,
    Pattern,
    PatternVerbatim,
    Loday,
}

impl Construction {
    /// Whether the construction realizes `Δ_{1,n}` rather than `Δ_{2,n}`.
    pub fn k(&self) -> usize {
        if *self == Construction::Loday {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Naive => write!(f, "naive"),
            Construction::Fixed(l, r) => write!(f, "fixed:{l},{r}"),
            Construction::Linear => write!(f, "linear"),
            Construction::Perturbed => write!(f, "perturbed"),
            Construction::Pattern => write!(f, "pattern"),
            Construction::PatternVerbatim => write!(f, "pattern-verbatim"),
            Construction::Loday => write!(f, "loday"),
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "naive" => Construction::Naive,
            "linear" => Construction::Linear,
            "perturbed" => Construction::Perturbed,
            "pattern" => Construction::Pattern,
            "pattern-verbatim" => Construction::PatternVerbatim,
            "loday" => Construction::Loday,
            _ => {
                let rest = s
                    .strip_prefix("fixed:")
                    .or_else(|| s.strip_prefix("fixed(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::UnknownConstruction(s.to_string()))?;
                let (l, r) = rest.split_once(',').ok_or_else(|| Error::UnknownConstruction(s.to_string()))?;
                let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::UnknownConstruction(s.to_string()));
                let (l, r) = (parse(l)?, parse(r)?);
                if l <= 0 || r <= 0 {
                    return Err(Error::NonPositiveCoefficient(format!("fixed:{l},{r}")));
                }
                Construction::Fixed(l, r)
            }
        })
    }
}

/// Replays a trace on rays. Doublings use `alpha`, `beta`; braids call `braid`
/// with the labels of the three letters to get `(a, b, ε)`.
fn replay_rays(
    mut ra: RayAssignment,
    trace: &MoveTrace,
    alpha: &Rational,
    beta: &Rational,
    mut braid: impl FnMut(&[Option<Label>], usize) -> Result<(Rational, Rational, Rational)>,
) -> Result<RayAssignment> {
    if ra.word != trace.initial {
        return Err(Error::InapplicableMove("rays and trace start from different words".into()));
    }
    for (k, step) in trace.steps.iter().enumerate() {
        let r = step.event.r;
        ra = match step.event.kind {
            MoveKind::Commutation => commutation_transform(&ra, r)?,
            MoveKind::Double => double_transform(&ra, r, alpha, beta)?,
            MoveKind::Braid => {
                let (_, labels) = trace.before(k);
                let (a, b, eps) = braid(labels, r)?;
                braid_transform(&ra, r, &a, &b, &eps)?
            }
        };
    }
    Ok(ra)
}

fn apply_commutations(mut ra: RayAssignment, events: &[MoveEvent]) -> Result<RayAssignment> {
    for e in events {
        ra = commutation_transform(&ra, e.r)?;
    }
    Ok(ra)
}

/// Braid indices `(i,j)` from the middle label `(i,j+1)`.
fn braid_indices(labels: &[Option<Label>], r: usize) -> Result<(usize, usize)> {
    match labels.get(r) {
        Some(Some(l)) if !l.primed && l.j >= 2 => Ok((l.i, l.j - 1)),
        _ => Err(Error::InapplicableMove(format!("braid at {r} outside a fattened triangle"))),
    }
}

/// First fattening of a bare triangle, ending on `c w∘(c)`.
pub fn first_fattening(n: usize, scheme: &CoefficientScheme) -> Result<RayAssignment> {
    let tri = c_sorted_word(n)?;
    let trace = fattening_sequence(&tri, 1)?;
    let mut rng = match scheme.perturbation {
        Perturbation::Seeded { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Perturbation::None => None,
    };
    let mut noise = || -> Rational {
        match (&mut rng, &scheme.perturbation) {
            (Some(rng), Perturbation::Seeded { denominator, magnitude, .. }) => {
                let k = rng.gen_range(-*magnitude..=*magnitude);
                Rational::new(BigInt::from(k), BigInt::from(*denominator))
            }
            _ => Rational::zero(),
        }
    };
    let ra = replay_rays(RayAssignment::empty(tri), &trace, &scheme.alpha, &scheme.beta, |labels, r| {
        let (i, j) = braid_indices(labels, r)?;
        let left = scheme.lambda_left.eval(i, j) + noise();
        let right = scheme.lambda_right.eval(i, j) + noise();
        Ok((left, right, Rational::one()))
    })?;
    let target = coxeter_word(n)?.concat(&c_sorted_word(n)?);
    let events = commute_to(&ra.word, &target)?;
    apply_commutations(ra, &events)
}

/// Fattens the suffix triangle of `c w∘(c)` and commutes to `c² w∘(c)`.
pub fn second_fattening(ra: RayAssignment, scheme: &CoefficientScheme) -> Result<RayAssignment> {
    let n = ra.word.rank();
    let trace = fattening_sequence(&ra.word, n + 1)?;
    let ra = replay_rays(ra, &trace, &scheme.alpha, &scheme.beta, |_, _| {
        Ok((scheme.a.clone(), scheme.c.clone(), scheme.b.clone()))
    })?;
    let target = multiassociahedron_word(2, n)?;
    let events = commute_to(&ra.word, &target)?;
    apply_commutations(ra, &events)
}

pub fn two_step(n: usize, scheme: &CoefficientScheme) -> Result<RayAssignment> {
    second_fattening(first_fattening(n, scheme)?, scheme)
}

/// Builds the named construction for `Δ_{2,n}` (or `Δ_{1,n}` for `loday`).
/// The seed is only used by `perturbed`.
pub fn build_rays(construction: &Construction, n: usize, seed: Option<u64>) -> Result<RayAssignment> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut ra = match construction {
        Construction::Naive => two_step(n, &CoefficientScheme::naive())?,
        Construction::Fixed(l, r) => two_step(n, &CoefficientScheme::fixed(*l, *r))?,
        Construction::Linear => two_step(n, &CoefficientScheme::linear(n))?,
        Construction::Perturbed => two_step(n, &CoefficientScheme::perturbed(n, seed.unwrap_or(0)))?,
        Construction::Pattern => pattern_rays(n, PatternVariant::Corrected)?,
        Construction::PatternVerbatim => pattern_rays(n, PatternVariant::Verbatim)?,
        Construction::Loday => first_fattening(n, &CoefficientScheme::naive())?,
    };
    ra.construction = construction.to_string();
    ra.seed = if *construction == Construction::Perturbed { Some(seed.unwrap_or(0)) } else { None };
    ra.check_dims()?;
    Ok(ra)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternVariant {
    /// Last family with the factor `2n+2−i`, which matches the integer table for `n = 5`.
    Corrected,
    /// Last family with the factor `2n+4−i`.
    Verbatim,
}

/// Closed-form ray of a 2-relevant diagonal `(a,b)` of the `(n+5)`-gon, in the
/// basis `e_1..e_n, f_1..f_n`.
pub fn pattern_ray(n: usize, d: Diagonal, variant: PatternVariant) -> Result<RayVec> {
    let m = polygon_size(2, n);
    if !d.is_relevant(2, m) {
        return Err(Error::IrrelevantDiagonal { a: d.a, b: d.b, k: 2, m });
    }
    let nn = n as i64;
    let mut v = vec![0i64; 2 * n];
    let e = |v: &mut Vec<i64>, j: usize, x: i64| v[j - 1] += x;
    let f = |v: &mut Vec<i64>, j: usize, x: i64| v[n + j - 1] += x;
    match d.a {
        1 => {
            let j = d.b - 4;
            e(&mut v, n, 1);
            f(&mut v, n, -1);
            if j >= 1 {
                let w = 2 * nn + 2 - j as i64;
                e(&mut v, j, w);
                e(&mut v, j + 1, -w);
                f(&mut v, j, 1);
            }
        }
        2 => {
            let j = d.b - 4;
            if j == n {
                e(&mut v, n, 1);
                f(&mut v, n, 1);
            } else {
                let w = 2 * nn + 2 - j as i64;
                e(&mut v, j, 1 + w);
                e(&mut v, j + 1, -w);
                f(&mut v, j, 1);
            }
        }
        3 => e(&mut v, d.b - 5, -1),
        4 => {
            let j = d.b - 6;
            let w = 2 * nn + 2 - j as i64;
            e(&mut v, j, 1 + w);
            e(&mut v, j + 1, -w);
            f(&mut v, j, -1);
        }
        a => {
            let i = a - 4;
            let j = d.b - i - 6;
            let jj = j as i64;
            let w = match variant {
                PatternVariant::Corrected => 2 * nn + 2 - i as i64,
                PatternVariant::Verbatim => 2 * nn + 4 - i as i64,
            };
            e(&mut v, i, jj);
            e(&mut v, i + j, -(jj - 1));
            e(&mut v, i + j + 1, -(jj - 1));
            e(&mut v, i + j, w);
            e(&mut v, i + 1, -w);
            f(&mut v, i, 1);
            f(&mut v, i + j, -1);
        }
    }
    Ok(RayVec::from_integers(&v))
}

/// The diagonal of the closed-form pattern attached to a position of `c² w∘(c)`:
/// the identified diagonal with every vertex label shifted by 2 around the polygon.
pub fn pattern_diagonal(n: usize, pos: usize) -> Result<Diagonal> {
    let m = polygon_size(2, n);
    let d = position_to_diagonal(2, n, pos)?;
    let shift = |x: usize| (x + 1) % m + 1;
    Ok(Diagonal::new(shift(d.a), shift(d.b)))
}

pub fn pattern_rays(n: usize, variant: PatternVariant) -> Result<RayAssignment> {
    let word = multiassociahedron_word(2, n)?;
    let rays =
        (1..=word.len()).map(|p| pattern_ray(n, pattern_diagonal(n, p)?, variant)).collect::<Result<Vec<_>>>()?;
    Ok(RayAssignment { word, rays, dim: 2 * n, construction: String::new(), seed: None })
}

/// Rays of `c w∘(c)` read off the labels of the first fattening: `(i,1)` gets
/// `−f_i`, `(i,1)'` gets `f_i` and `(i,j+1)` gets `f_i − f_{i+j}`.
pub fn loday_closed_form(n: usize) -> Result<RayAssignment> {
    let tri = c_sorted_word(n)?;
    let mut trace = fattening_sequence(&tri, 1)?;
    let target = coxeter_word(n)?.concat(&tri);
    for e in commute_to(trace.final_word(), &target)? {
        trace.push(e)?;
    }
    let rays = trace
        .final_labels()
        .iter()
        .map(|l| {
            let l = l.ok_or_else(|| Error::InapplicableMove("unlabelled letter after fattening".into()))?;
            let mut v = vec![0i64; n];
            if l.j == 1 {
                v[l.i - 1] = if l.primed { 1 } else { -1 };
            } else {
                v[l.i - 1] = 1;
                v[l.i + l.j - 2] = -1;
            }
            Ok(RayVec::from_integers(&v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RayAssignment { word: target, rays, dim: n, construction: "loday".into(), seed: None })
}

pub fn write_rays<W: Write>(out: &mut W, ra: &RayAssignment) -> std::io::Result<()> {
    let seed = ra.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    let name = if ra.construction.is_empty() { "custom" } else { &ra.construction };
    writeln!(out, "# n={} d={} construction={name} seed={seed}", ra.word.rank(), ra.dim)?;
    for (k, v) in ra.rays.iter().enumerate() {
        write!(out, "{} s{}", k + 1, ra.word.letter(k + 1))?;
        for x in &v.0 {
            write!(out, " {x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_rays<R: BufRead>(input: R) -> Result<RayAssignment> {
    let mut lines = input.lines();
    let header =
        lines.next().ok_or_else(|| Error::Parse("empty ray file".into()))?.map_err(|e| Error::Parse(e.to_string()))?;
    let body = header.strip_prefix('#').ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
    let mut n = None;
    let mut d = None;
    let mut construction = String::new();
    let mut seed = None;
    for field in body.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse(format!("bad header field `{field}`")))?;
        let bad = || Error::Parse(format!("bad header field `{field}`"));
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            "d" => d = Some(value.parse::<usize>().map_err(|_| bad())?),
            "construction" => construction = value.to_string(),
            "seed" => seed = if value == "none" { None } else { Some(value.parse().map_err(|_| bad())?) },
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("header lacks n".into()))?;
    let d = d.ok_or_else(|| Error::Parse("header lacks d".into()))?;
    let mut letters = Vec::new();
    let mut rays = Vec::new();
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let pos: usize =
            tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse(format!("bad ray line `{line}`")))?;
        if pos != rays.len() + 1 {
            return Err(Error::Parse(format!("expected position {}, found {pos}", rays.len() + 1)));
        }
        let letter: u8 = tokens
            .next()
            .and_then(|t| t.strip_prefix('s'))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad letter in `{line}`")))?;
        let coords = tokens
            .map(|t| t.parse::<Rational>().map_err(|_| Error::Parse(format!("bad coordinate `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: coords.len() });
        }
        letters.push(letter);
        rays.push(RayVec(coords));
    }
    let word = Word::new(n, letters)?;
    Ok(RayAssignment { word, rays, dim: d, construction, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::vertex_status;

    fn rows(ra: &RayAssignment) -> Vec<Vec<i64>> {
        ra.rays.iter().map(|v| v.to_i64().unwrap()).collect()
    }

    #[test]
    fn doubling_examples() {
        let w = Word::new(1, vec![1]).unwrap();
        let ra = RayAssignment { dim: 0, ..RayAssignment::empty(w) };
        let d = double_transform(&ra, 1, &int(-1), &int(1)).unwrap();
        assert_eq!(rows(&d), vec![vec![-1], vec![1]]);
        assert_eq!(double_transform(&ra, 1, &int(1), &int(2)), Err(Error::SameSignDoubling));
    }

    #[test]
    fn braid_examples() {
        let w = Word::new(2, vec![1, 2, 1]).unwrap();
        let ra = RayAssignment {
            word: w,
            rays: vec![RayVec::from_integers(&[1, 0]), RayVec::zero(2), RayVec::from_integers(&[0, 1])],
            dim: 2,
            construction: String::new(),
            seed: None,
        };
        let b = braid_transform(&ra, 1, &int(1), &int(1), &int(1)).unwrap();
        assert_eq!(rows(&b), vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        assert_eq!(b.word.letters(), &[2, 1, 2]);
        assert!(braid_transform(&ra, 1, &int(0), &int(1), &int(1)).is_err());
    }

    #[test]
    fn construction_names() {
        for s in ["naive", "fixed:5,3", "linear", "perturbed", "pattern", "pattern-verbatim", "loday"] {
            assert_eq!(s.parse::<Construction>().unwrap().to_string(), s);
        }
        assert_eq!("fixed(5,3)".parse::<Construction>().unwrap(), Construction::Fixed(5, 3));
        assert!(matches!("cubic".parse::<Construction>(), Err(Error::UnknownConstruction(_))));
        assert!("fixed:0,3".parse::<Construction>().is_err());
    }

    #[test]
    fn naive_first_doubling_n4() {
        let ra = build_rays(&Construction::Naive, 4, None).unwrap();
        assert_eq!(ra.dim, 8);
        assert_eq!(ra.ray(1).0[4], int(0));
        assert_eq!(rows(&ra)[0], vec![-1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(rows(&ra)[4][4], -1);
    }

    #[test]
    fn fixed_n3_row_7() {
        let ra = build_rays(&Construction::Fixed(5, 3), 3, None).unwrap();
        assert_eq!(rows(&ra)[6], vec![0, 2, 0, 1, -1, 0]);
    }

    #[test]
    fn pattern_n1() {
        let ra = build_rays(&Construction::Pattern, 1, None).unwrap();
        assert_eq!(rows(&ra), vec![vec![-1, 0], vec![1, -1], vec![1, 1]]);
        assert_eq!(pattern_diagonal(1, 1).unwrap(), Diagonal::new(3, 6));
        let by_diagonal: Vec<Vec<i64>> = [(1, 4), (2, 5), (3, 6)]
            .iter()
            .map(|&(a, b)| pattern_ray(1, Diagonal::new(a, b), PatternVariant::Corrected).unwrap())
            .map(|v| v.to_i64().unwrap())
            .collect();
        assert_eq!(by_diagonal, vec![vec![1, -1], vec![1, 1], vec![-1, 0]]);
    }

    #[test]
    fn pattern_c_family_n3() {
        for j in 1..=3 {
            let v = pattern_ray(3, Diagonal::new(3, j + 5), PatternVariant::Corrected).unwrap();
            let mut expected = vec![0i64; 6];
            expected[j - 1] = -1;
            assert_eq!(v.to_i64().unwrap(), expected);
        }
    }

    #[test]
    fn zero_rays_on_non_vertices() {
        for n in 1..=4 {
            let ra = first_fattening(n, &CoefficientScheme::naive()).unwrap();
            let status = vertex_status(&ra.word).unwrap();
            for (v, s) in ra.rays.iter().zip(status) {
                assert!(s || v.is_zero());
            }
        }
    }

    #[test]
    fn loday_matches_closed_form() {
        for n in 1..=5 {
            let built = build_rays(&Construction::Loday, n, None).unwrap();
            let closed = loday_closed_form(n).unwrap();
            assert_eq!(built.word, closed.word);
            assert_eq!(built.rays, closed.rays);
        }
    }

    #[test]
    fn ray_file_round_trip() {
        for (c, seed) in [(Construction::Fixed(5, 3), None), (Construction::Perturbed, Some(42))] {
            let ra = build_rays(&c, 3, seed).unwrap();
            let mut buf = Vec::new();
            write_rays(&mut buf, &ra).unwrap();
            let back = read_rays(&buf[..]).unwrap();
            assert_eq!(back, ra);
            let mut again = Vec::new();
            write_rays(&mut again, &back).unwrap();
            assert_eq!(again, buf);
        }
        let ra = build_rays(&Construction::Perturbed, 2, Some(5)).unwrap();
        let mut buf = Vec::new();
        write_rays(&mut buf, &ra).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# n=2 d=4 construction=perturbed seed=5\n"));
        assert!(text.contains('/'));
    }
}
