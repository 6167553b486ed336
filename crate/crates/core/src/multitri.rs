//! k-relevant diagonals of a convex `(n+2k+1)`-gon, brute-force k-triangulations
//! and their identification with positions of `c^k w∘(c)`.

use std::fmt;

use crate::complex::Facet;
use crate::error::{Error, Result};

/// Largest `k·n` accepted by [`enumerate_k_triangulations`].
pub const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    pub a: usize,
    pub b: usize,
}

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Self {
        Diagonal { a: a.min(b), b: a.max(b) }
    }

    pub fn is_relevant(self, k: usize, m: usize) -> bool {
        self.a >= 1 && self.b <= m && self.b - self.a > k && m - (self.b - self.a) > k
    }

    pub fn crosses(self, other: Diagonal) -> bool {
        (self.a < other.a && other.a < self.b && self.b < other.b)
            || (other.a < self.a && self.a < other.b && other.b < self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

pub fn polygon_size(k: usize, n: usize) -> usize {
    n + 2 * k + 1
}

/// All k-relevant diagonals in lexicographic order.
pub fn relevant_diagonals(k: usize, n: usize) -> Vec<Diagonal> {
    let m = polygon_size(k, n);
    let mut out = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            let d = Diagonal { a, b };
            if d.is_relevant(k, m) {
                out.push(d);
            }
        }
    }
    out
}

/// Every inclusion-maximal set of k-relevant diagonals without `k+1` mutually
/// crossing members, each sorted lexicographically; the list itself is sorted.
pub fn enumerate_k_triangulations(k: usize, n: usize) -> Result<Vec<Vec<Diagonal>>> {
    let diagonals = relevant_diagonals(k, n);
    if k * n > ORACLE_LIMIT || diagonals.len() > 64 {
        return Err(Error::TooLarge { k, n, limit: ORACLE_LIMIT });
    }
    let count = diagonals.len();
    let cross: Vec<u64> = diagonals
        .iter()
        .map(|d| diagonals.iter().enumerate().filter(|(_, e)| d.crosses(**e)).fold(0u64, |acc, (t, _)| acc | 1 << t))
        .collect();
    let mut search = Search { k, cross: &cross, count, found: Vec::new() };
    search.run(0, 0, 0);
    let mut out: Vec<Vec<Diagonal>> = search
        .found
        .into_iter()
        .map(|mask| (0..count).filter(|t| mask >> t & 1 == 1).map(|t| diagonals[t]).collect::<Vec<_>>())
        .collect();
    out.sort();
    Ok(out)
}

struct Search<'a> {
    k: usize,
    cross: &'a [u64],
    count: usize,
    found: Vec<u64>,
}

impl Search<'_> {
    /// Whether the diagonals in `candidates` contain `size` mutually crossing ones.
    fn has_clique(&self, candidates: u64, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        if (candidates.count_ones() as usize) < size {
            return false;
        }
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.has_clique(rest & self.cross[v], size - 1) {
                return true;
            }
        }
        false
    }

    fn blocked(&self, chosen: u64, d: usize) -> bool {
        self.has_clique(chosen & self.cross[d], self.k)
    }

    fn run(&mut self, next: usize, chosen: u64, excluded: u64) {
        let remaining = if next >= 64 { 0 } else { !0u64 << next & mask(self.count) };
        // An excluded diagonal that can no longer be blocked rules out maximality.
        let mut ex = excluded;
        while ex != 0 {
            let e = ex.trailing_zeros() as usize;
            ex &= ex - 1;
            if self.cross[e] & remaining == 0 && !self.blocked(chosen, e) {
                return;
            }
        }
        if next == self.count {
            self.found.push(chosen);
            return;
        }
        if !self.blocked(chosen, next) {
            self.run(next + 1, chosen | 1 << next, excluded);
        }
        self.run(next + 1, chosen, excluded | 1 << next);
    }
}

fn mask(count: usize) -> u64 {
    if count >= 64 {
        !0
    } else {
        (1u64 << count) - 1
    }
}

/// Position of a k-relevant diagonal in `c^k w∘(c)`.
///
/// `(i, i+j+k)` with `i ≤ k` is the `j`-th letter of the `i`-th copy of `c`;
/// `(i+k, i+j+2k)` is the `j`-th letter of the `i`-th block of the triangle.
pub fn diagonal_to_position(k: usize, n: usize, d: Diagonal) -> Result<usize> {
    let m = polygon_size(k, n);
    if !d.is_relevant(k, m) {
        return Err(Error::IrrelevantDiagonal { a: d.a, b: d.b, k, m });
    }
    let j = d.b - d.a - k;
    if d.a <= k {
        Ok((d.a - 1) * n + j)
    } else {
        let i = d.a - k;
        Ok((k + i - 1) * n - (i - 1) * i.saturating_sub(2) / 2 + j)
    }
}

pub fn position_to_diagonal(k: usize, n: usize, pos: usize) -> Result<Diagonal> {
    let p = k * n + n * (n + 1) / 2;
    if pos == 0 || pos > p {
        return Err(Error::PositionOutOfRange(pos));
    }
    if pos <= k * n {
        let i = (pos - 1) / n + 1;
        let j = pos - (i - 1) * n;
        return Ok(Diagonal { a: i, b: i + j + k });
    }
    let mut start = k * n;
    for i in 1..=n {
        let block = n + 1 - i;
        if pos <= start + block {
            let j = pos - start;
            return Ok(Diagonal { a: i + k, b: i + j + 2 * k });
        }
        start += block;
    }
    unreachable!("position bound checked above")
}

/// The facet of `c^k w∘(c)` identified with a k-triangulation.
pub fn triangulation_to_facet(k: usize, n: usize, t: &[Diagonal]) -> Result<Facet> {
    let positions = t.iter().map(|&d| diagonal_to_position(k, n, d)).collect::<Result<Vec<_>>>()?;
    Facet::from_positions(&positions)
}

/// One triangulation per line, `a-b` pairs separated by spaces.
pub fn format_triangulation(t: &[Diagonal]) -> String {
    t.iter().map(Diagonal::to_string).collect::<Vec<_>>().join(" ")
}
