//! Words over the simple transpositions `s_1, …, s_n` of the symmetric group
//! on `n + 1` letters, their 0-Hecke (Demazure) evaluation and the canonical
//! words used throughout the crate.
//!
//! Positions are 1-based everywhere a position is exposed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `[n + 1]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation { images: (1..=size as u8).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size + 1];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > size || seen[x] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Right multiplication by `s_i`, i.e. swapping the entries at `i` and `i + 1`.
    pub fn mul_simple(&mut self, i: u8) {
        let i = i as usize;
        self.images.swap(i - 1, i);
    }

    /// Whether right multiplication by `s_i` increases the length.
    #[inline]
    pub fn is_ascent(&self, i: u8) -> bool {
        let i = i as usize;
        self.images[i - 1] < self.images[i]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `[n+1, n, …, 1]`.
pub fn longest_element(n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(Permutation { images: (1..=(n + 1) as u8).rev().collect() })
}

/// A word in the letters `s_1, …, s_rank`; letter value `i` stands for `s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(rank: usize, letters: Vec<u8>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if rank > 64 {
            return Err(Error::Parse(format!("rank {rank} too large")));
        }
        for &l in &letters {
            if l == 0 || l as usize > rank {
                return Err(Error::LetterOutOfRange { letter: l as usize, rank });
            }
        }
        Ok(Word { rank, letters })
    }

    pub(crate) fn from_parts_unchecked(rank: usize, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1 && l as usize <= rank));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at a 1-based position.
    pub fn letter(&self, pos: usize) -> u8 {
        self.letters[pos - 1]
    }

    /// Length of a reduced expression of the longest element, `n(n+1)/2`.
    pub fn longest_length(&self) -> usize {
        self.rank * (self.rank + 1) / 2
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "concatenating words of different rank");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { rank: self.rank, letters }
    }

    /// The word with the given 1-based positions removed.
    pub fn delete(&self, positions: &[usize]) -> Word {
        let letters =
            self.letters.iter().enumerate().filter(|(k, _)| !positions.contains(&(k + 1))).map(|(_, &l)| l).collect();
        Word { rank: self.rank, letters }
    }

    /// The subword at positions whose bit is clear in `mask` (bit `r-1` is position `r`).
    pub fn complement_subword(&self, mask: u64) -> Word {
        let letters = self.letters.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 0).map(|(_, &l)| l).collect();
        Word { rank: self.rank, letters }
    }

    /// Demazure product: left-to-right fold in the 0-Hecke monoid.
    pub fn demazure_product(&self) -> Permutation {
        let mut w = Permutation::identity(self.rank + 1);
        for &l in &self.letters {
            if w.is_ascent(l) {
                w.mul_simple(l);
            }
        }
        w
    }

    /// Ordinary product in the symmetric group.
    pub fn product(&self) -> Permutation {
        let mut w = Permutation::identity(self.rank + 1);
        for &l in &self.letters {
            w.mul_simple(l);
        }
        w
    }

    pub fn contains_longest(&self) -> bool {
        // The Demazure product is w∘ iff its length is maximal.
        self.demazure_product().length() == self.longest_length()
    }

    pub fn is_reduced(&self) -> bool {
        let mut w = Permutation::identity(self.rank + 1);
        for &l in &self.letters {
            if !w.is_ascent(l) {
                return false;
            }
            w.mul_simple(l);
        }
        true
    }

    /// `s_{n+1-i_ℓ} s_{i_1} … s_{i_{ℓ-1}}`, with the position correspondence
    /// `old[r-1] = new position of old position r`.
    pub fn rotate(&self) -> Result<(Word, Vec<usize>)> {
        let p = self.letters.len();
        if p == 0 {
            return Err(Error::EmptyWord);
        }
        let last = self.letters[p - 1];
        let mut letters = Vec::with_capacity(p);
        letters.push(self.rank as u8 + 1 - last);
        letters.extend_from_slice(&self.letters[..p - 1]);
        let corr = (1..=p).map(|r| if r == p { 1 } else { r + 1 }).collect();
        Ok((Word { rank: self.rank, letters }, corr))
    }

    pub fn mirror(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { rank: self.rank, letters }
    }

    /// Replace every letter `s_i` by `s_{n+1-i}`.
    pub fn complement_letters(&self) -> Word {
        let letters = self.letters.iter().map(|&l| self.rank as u8 + 1 - l).collect();
        Word { rank: self.rank, letters }
    }
}

/// `s_1 s_2 … s_n s_1 … s_{n-1} … s_1 s_2 s_1`.
pub fn c_sorted_word(n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut letters = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        letters.extend(1..=(n + 1 - i) as u8);
    }
    Word::new(n, letters)
}

/// The Coxeter word `c = s_1 … s_n`.
pub fn coxeter_word(n: usize) -> Result<Word> {
    Word::new(n, (1..=n as u8).collect())
}

/// `c^k w∘(c)`.
pub fn multiassociahedron_word(k: usize, n: usize) -> Result<Word> {
    let c = coxeter_word(n)?;
    let mut w = Word::new(n, Vec::new())?;
    for _ in 0..k {
        w = w.concat(&c);
    }
    Ok(w.concat(&c_sorted_word(n)?))
}

#[inline]
pub fn letters_commute(a: u8, b: u8) -> bool {
    a.abs_diff(b) >= 2
}

/// If `u` and `v` are related by commutation moves, the letter correspondence
/// (`corr[r-1]` = position in `v` of the letter at position `r` in `u`).
///
/// Two letters never exchange places unless they commute, so the `t`-th
/// occurrence of a letter in `u` is matched with its `t`-th occurrence in `v`.
pub fn commutation_correspondence(u: &Word, v: &Word) -> Result<Vec<usize>> {
    if u.rank != v.rank || u.len() != v.len() {
        return Err(Error::NotCommutationEquivalent);
    }
    let n = u.rank;
    // Projections onto every pair of non-commuting letters must agree.
    for a in 1..=n as u8 {
        for b in a..=(n as u8).min(a + 1) {
            let pu = u.letters.iter().filter(|&&x| x == a || x == b);
            let pv = v.letters.iter().filter(|&&x| x == a || x == b);
            if !pu.eq(pv) {
                return Err(Error::NotCommutationEquivalent);
            }
        }
    }
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (k, &l) in v.letters.iter().enumerate() {
        occurrences[l as usize].push(k + 1);
    }
    let mut seen = vec![0usize; n + 1];
    Ok(u.letters
        .iter()
        .map(|&l| {
            let pos = occurrences[l as usize][seen[l as usize]];
            seen[l as usize] += 1;
            pos
        })
        .collect())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.rank)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `n=3; 1 2 3 1 2 1`, `w0(3)`, `c w0(3)` and `c^2 w0(4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("n=") {
            let (rank, letters) = rest.split_once(';').ok_or_else(|| Error::Parse(format!("missing `;` in `{s}`")))?;
            let rank: usize = rank.trim().parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
            let letters = letters
                .split_whitespace()
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad letter `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            return Word::new(rank, letters);
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (k, tail) = if let Some(rest) = compact.strip_prefix("c^") {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let k = digits.parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
            (k, &rest[digits.len()..])
        } else if let Some(rest) = compact.strip_prefix('c') {
            (1, rest)
        } else {
            (0, compact.as_str())
        };
        let inner = tail
            .strip_prefix("w0(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unrecognised word `{s}`")))?;
        let n = inner.parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        multiassociahedron_word(k, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, letters: &[u8]) -> Word {
        Word::new(rank, letters.to_vec()).unwrap()
    }

    #[test]
    fn longest() {
        assert_eq!(longest_element(1).unwrap().images(), &[2, 1]);
        assert_eq!(longest_element(3).unwrap().images(), &[4, 3, 2, 1]);
        // pairs i<j with image(i) > image(j): all 10 of them
        assert_eq!(longest_element(4).unwrap().length(), 10);
        assert_eq!(longest_element(0), Err(Error::ZeroRank));
    }

    #[test]
    fn demazure() {
        assert_eq!(w(1, &[1, 1]).demazure_product().images(), &[2, 1]);
        assert_eq!(w(2, &[]).demazure_product(), Permutation::identity(3));
        // s1 s2 s1 s2 s1 s2 s1: the fold stops increasing after s1 s2 s1.
        let q = multiassociahedron_word(2, 2).unwrap();
        assert_eq!(q.letters(), &[1, 2, 1, 2, 1, 2, 1]);
        assert_eq!(q.demazure_product().images(), &[3, 2, 1]);
    }

    #[test]
    fn contains_and_reduced() {
        assert!(c_sorted_word(3).unwrap().contains_longest());
        assert!(!coxeter_word(2).unwrap().contains_longest());
        assert!(multiassociahedron_word(2, 4).unwrap().contains_longest());
        assert!(w(2, &[1, 2, 1]).is_reduced());
        assert!(!w(1, &[1, 1]).is_reduced());
        let w5 = c_sorted_word(5).unwrap();
        assert!(w5.is_reduced());
        assert_eq!(w5.len(), 15);
    }

    #[test]
    fn c_sorted() {
        assert_eq!(c_sorted_word(1).unwrap().letters(), &[1]);
        assert_eq!(c_sorted_word(2).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(c_sorted_word(4).unwrap().letters(), &[1, 2, 3, 4, 1, 2, 3, 1, 2, 1]);
        for n in 1..=10 {
            let q = c_sorted_word(n).unwrap();
            assert!(q.is_reduced());
            assert_eq!(q.product(), longest_element(n).unwrap());
        }
    }

    #[test]
    fn multiassociahedron_lengths() {
        assert_eq!(multiassociahedron_word(0, 3).unwrap().len(), 6);
        assert_eq!(multiassociahedron_word(2, 4).unwrap().len(), 18);
        assert_eq!(multiassociahedron_word(2, 8).unwrap().len(), 52);
    }

    #[test]
    fn rotation_and_mirror() {
        let (r, corr) = w(1, &[1]).rotate().unwrap();
        assert_eq!(r.letters(), &[1]);
        assert_eq!(corr, vec![1]);
        let (r, corr) = w(2, &[1, 2, 1]).rotate().unwrap();
        assert_eq!(r.letters(), &[2, 1, 2]);
        assert_eq!(corr, vec![2, 3, 1]);
        assert_eq!(w(2, &[]).rotate(), Err(Error::EmptyWord));

        assert_eq!(w(2, &[1, 2]).mirror().letters(), &[2, 1]);
        let q = c_sorted_word(3).unwrap();
        assert_eq!(q.mirror().letters(), &[1, 2, 1, 3, 2, 1]);
        assert_eq!(q.mirror().mirror(), q);
    }

    #[test]
    fn parse_and_display() {
        let q: Word = "n=3; 1 2 3 1 2 1".parse().unwrap();
        assert_eq!(q, c_sorted_word(3).unwrap());
        assert_eq!(q.to_string(), "n=3; 1 2 3 1 2 1");
        assert_eq!("w0(3)".parse::<Word>().unwrap(), q);
        assert_eq!("c^2 w0(4)".parse::<Word>().unwrap(), multiassociahedron_word(2, 4).unwrap());
        assert_eq!("c w0(2)".parse::<Word>().unwrap(), multiassociahedron_word(1, 2).unwrap());
        assert!("n=2; 1 3".parse::<Word>().is_err());
        assert!("v0(2)".parse::<Word>().is_err());
    }

    #[test]
    fn commutation_classes() {
        let u = w(3, &[1, 3, 2]);
        let v = w(3, &[3, 1, 2]);
        assert_eq!(commutation_correspondence(&u, &v).unwrap(), vec![2, 1, 3]);
        assert!(commutation_correspondence(&w(2, &[1, 2]), &w(2, &[2, 1])).is_err());
    }
}
