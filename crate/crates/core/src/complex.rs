//! Facets, flips and flip-graph enumeration of spherical type-A subword complexes.
//!
//! A facet is stored as a `u64` bitset over positions: bit `r - 1` is set when
//! position `r` belongs to the facet. Words longer than 64 letters are rejected.

use std::fmt;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::word::{Permutation, Word};

pub const MAX_POSITIONS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Facet(pub u64);

impl Facet {
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &r in positions {
            if r == 0 || r > MAX_POSITIONS {
                return Err(Error::PositionOutOfRange(r));
            }
            bits |= 1 << (r - 1);
        }
        Ok(Facet(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, r: usize) -> bool {
        (1..=MAX_POSITIONS).contains(&r) && self.0 >> (r - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Sorted 1-based positions.
    pub fn positions(self) -> Vec<usize> {
        iter_bits(self.0).collect()
    }

    pub fn without(self, r: usize) -> Facet {
        Facet(self.0 & !(1 << (r - 1)))
    }

    pub fn with(self, r: usize) -> Facet {
        Facet(self.0 | 1 << (r - 1))
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in iter_bits(self.0) {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        Ok(())
    }
}

/// 1-based positions of the set bits, ascending.
pub fn iter_bits(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(r + 1)
        }
    })
}

fn check_word(w: &Word) -> Result<()> {
    if w.len() > MAX_POSITIONS {
        return Err(Error::WordTooLong { len: w.len(), max: MAX_POSITIONS });
    }
    if !w.contains_longest() {
        return Err(Error::MissingLongest);
    }
    Ok(())
}

/// Whether the complement of `f` is a reduced expression of the longest element.
pub fn is_facet(w: &Word, f: Facet) -> bool {
    let sub = w.complement_subword(f.0);
    sub.len() == w.longest_length() && sub.is_reduced()
}

/// The lexicographically smallest facet: keep every letter that extends the
/// reduced prefix, skip the rest.
pub fn greedy_facet(w: &Word) -> Result<Facet> {
    check_word(w)?;
    let mut perm = Permutation::identity(w.rank() + 1);
    let mut bits = 0u64;
    for (k, &l) in w.letters().iter().enumerate() {
        if perm.is_ascent(l) {
            perm.mul_simple(l);
        } else {
            bits |= 1 << k;
        }
    }
    Ok(Facet(bits))
}

/// Reference flip: try every candidate position and test the complement directly.
pub fn flip_naive(w: &Word, f: Facet, r: usize) -> Result<(usize, Facet)> {
    if r == 0 || r > w.len() {
        return Err(Error::PositionOutOfRange(r));
    }
    if !f.contains(r) {
        return Err(Error::NotInFacet(r));
    }
    let ridge = f.without(r);
    (1..=w.len())
        .filter(|&s| s != r && !ridge.contains(s))
        .map(|s| (s, ridge.with(s)))
        .find(|&(_, g)| is_facet(w, g))
        .ok_or(Error::NoFlip(r))
}

/// Root configuration of a facet: for each position, the unordered pair
/// `{π(i), π(i+1)}` where `π` is the product of complement letters strictly
/// before that position and `s_i` is the letter there.
pub fn root_configuration(w: &Word, f: Facet) -> Vec<(u8, u8)> {
    let mut perm = Permutation::identity(w.rank() + 1);
    w.letters()
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let im = perm.images();
            let (a, b) = (im[l as usize - 1], im[l as usize]);
            if f.0 >> k & 1 == 0 {
                perm.mul_simple(l);
            }
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Flips the facet at every one of its positions, returning `(r, r', f')` triples
/// in increasing order of `r`.
///
/// Each complement position carries a distinct root, and the flip partner of a
/// facet position is the complement position carrying the same root.
pub fn all_flips(w: &Word, f: Facet) -> Vec<(usize, usize, Facet)> {
    let size = w.rank() + 2;
    let roots = root_configuration(w, f);
    let mut table = vec![0u8; size * size];
    for (k, &(a, b)) in roots.iter().enumerate() {
        if f.0 >> k & 1 == 0 {
            table[a as usize * size + b as usize] = (k + 1) as u8;
        }
    }
    iter_bits(f.0)
        .map(|r| {
            let (a, b) = roots[r - 1];
            let s = table[a as usize * size + b as usize] as usize;
            debug_assert!(s != 0, "every root of a facet position appears in the complement");
            (r, s, f.without(r).with(s))
        })
        .collect()
}

/// Production flip via the root configuration.
pub fn flip(w: &Word, f: Facet, r: usize) -> Result<(usize, Facet)> {
    if r == 0 || r > w.len() {
        return Err(Error::PositionOutOfRange(r));
    }
    if !f.contains(r) {
        return Err(Error::NotInFacet(r));
    }
    let roots = root_configuration(w, f);
    let target = roots[r - 1];
    roots
        .iter()
        .enumerate()
        .find(|&(k, &root)| f.0 >> k & 1 == 0 && root == target)
        .map(|(k, _)| (k + 1, f.without(r).with(k + 1)))
        .ok_or(Error::NoFlip(r))
}

/// An edge of the dual graph: facets `a < b` (ids) sharing a ridge; `leave` is
/// the position of facet `a` not in `b`, `enter` the position of `b` not in `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub a: u32,
    pub b: u32,
    pub leave: u8,
    pub enter: u8,
}

impl DualEdge {
    pub fn ridge(&self, idx: &ComplexIndex) -> Facet {
        Facet(idx.facets[self.a as usize].0 & idx.facets[self.b as usize].0)
    }
}

#[derive(Clone, Debug)]
pub struct ComplexIndex {
    pub word: Word,
    /// Sorted by bitset value; a facet's id is its index here.
    pub facets: Vec<Facet>,
    pub vertex_flags: Vec<bool>,
    pub dual_edges: Vec<DualEdge>,
}

impl ComplexIndex {
    pub fn facet_id(&self, f: Facet) -> Option<usize> {
        self.facets.binary_search(&f).ok()
    }

    pub fn ridge_count(&self) -> usize {
        self.dual_edges.len()
    }

    /// Dimension of the ambient space of a fan realization, i.e. the facet size.
    pub fn facet_size(&self) -> usize {
        self.word.len() - self.word.longest_length()
    }
}

/// Every facet reachable from the greedy facet by flips, with vertex flags and
/// the dual graph. The result does not depend on the number of worker threads.
pub fn all_facets(w: &Word) -> Result<ComplexIndex> {
    let seed = greedy_facet(w)?;
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    seen.insert(seed.0);
    let mut frontier = vec![seed.0];
    while !frontier.is_empty() {
        let candidates: Vec<u64> =
            frontier.par_iter().flat_map_iter(|&f| all_flips(w, Facet(f)).into_iter().map(|(_, _, g)| g.0)).collect();
        let mut next = Vec::new();
        for g in candidates {
            if seen.insert(g) {
                next.push(g);
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    let mut facets: Vec<Facet> = seen.into_iter().map(Facet).collect();
    facets.par_sort_unstable();

    let union = facets.par_iter().map(|f| f.0).reduce(|| 0, |a, b| a | b);
    let vertex_flags = (0..w.len()).map(|k| union >> k & 1 == 1).collect();

    let dual_edges = facets
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, &f)| {
            let facets = &facets;
            all_flips(w, f).into_iter().filter(move |&(_, _, g)| g > f).map(move |(r, s, g)| {
                let b = facets.binary_search(&g).expect("flip stays inside the complex");
                DualEdge { a: a as u32, b: b as u32, leave: r as u8, enter: s as u8 }
            })
        })
        .collect();

    Ok(ComplexIndex { word: w.clone(), facets, vertex_flags, dual_edges })
}

/// Position `r` is a vertex iff deleting it keeps the longest element.
pub fn vertex_status(w: &Word) -> Result<Vec<bool>> {
    check_word(w)?;
    Ok((1..=w.len()).map(|r| w.delete(&[r]).contains_longest()).collect())
}

/// Whether some facet contains all the given positions.
pub fn common_facet_exists(w: &Word, positions: &[usize]) -> bool {
    w.delete(positions).contains_longest()
}

/// Brute force over all position subsets of the right size; for tests and tiny words.
pub fn facets_by_subsets(w: &Word) -> Vec<Facet> {
    let p = w.len();
    assert!(p <= 24, "brute-force facet enumeration is limited to short words");
    let size = p.saturating_sub(w.longest_length());
    let mut out: Vec<Facet> =
        (0u64..1 << p).filter(|m| m.count_ones() as usize == size).map(Facet).filter(|&f| is_facet(w, f)).collect();
    out.sort_unstable();
    out
}

pub fn write_facets<W: Write>(out: &mut W, w: &Word, facets: &[Facet]) -> std::io::Result<()> {
    writeln!(out, "# word: {w}; facets: {}", facets.len())?;
    for f in facets {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

pub fn read_facets<R: BufRead>(input: R) -> Result<(Word, Vec<Facet>)> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty facet file".into()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    let body = header.strip_prefix("# word:").ok_or_else(|| Error::Parse(format!("bad facet header `{header}`")))?;
    let (word, count) =
        body.rsplit_once("; facets:").ok_or_else(|| Error::Parse(format!("bad facet header `{header}`")))?;
    let word: Word = word.parse()?;
    let count: usize = count.trim().parse().map_err(|_| Error::Parse(format!("bad facet count in `{header}`")))?;
    let mut facets = Vec::with_capacity(count);
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let positions = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad position `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        facets.push(Facet::from_positions(&positions)?);
    }
    if facets.len() != count {
        return Err(Error::Parse(format!("header announces {count} facets, found {}", facets.len())));
    }
    Ok((word, facets))
}
