//! Commutation, 0-Hecke (doubling) and braid moves, fattening traces and the
//! labels carried by the letters of a distinguished triangle.

use std::fmt;
use std::io::{BufRead, Write};

use crate::complex::{common_facet_exists, vertex_status};
use crate::error::{Error, Result};
use crate::word::{c_sorted_word, commutation_correspondence, letters_commute, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Commutation,
    Double,
    Braid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoveEvent {
    pub kind: MoveKind,
    /// 1-based position where the move applies.
    pub r: usize,
}

impl MoveEvent {
    pub fn commutation(r: usize) -> Self {
        MoveEvent { kind: MoveKind::Commutation, r }
    }

    pub fn double(r: usize) -> Self {
        MoveEvent { kind: MoveKind::Double, r }
    }

    pub fn braid(r: usize) -> Self {
        MoveEvent { kind: MoveKind::Braid, r }
    }
}

impl fmt::Display for MoveEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            MoveKind::Commutation => 'C',
            MoveKind::Double => 'D',
            MoveKind::Braid => 'B',
        };
        write!(f, "{tag} {}", self.r)
    }
}

/// Label `(i,j)` of a letter of a fattened triangle, possibly primed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub i: usize,
    pub j: usize,
    pub primed: bool,
}

impl Label {
    pub fn new(i: usize, j: usize) -> Self {
        Label { i, j, primed: false }
    }

    pub fn primed(i: usize, j: usize) -> Self {
        Label { i, j, primed: true }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)?;
        if self.primed {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// Applies a move, returning the new word and the old-to-new position map.
///
/// For a doubling at `r`, old position `r` stays at `r` and the new copy sits at `r + 1`.
/// For a braid at `r`, positions `r` and `r + 2` are exchanged.
pub fn apply_move(w: &Word, e: MoveEvent) -> Result<(Word, Vec<usize>)> {
    let p = w.len();
    let bad = || Error::InapplicableMove(format!("{e} on {w}"));
    let mut letters = w.letters().to_vec();
    let r = e.r;
    let corr: Vec<usize> = match e.kind {
        MoveKind::Commutation => {
            if r == 0 || r + 1 > p || !letters_commute(letters[r - 1], letters[r]) {
                return Err(bad());
            }
            letters.swap(r - 1, r);
            (1..=p)
                .map(|k| {
                    if k == r {
                        r + 1
                    } else if k == r + 1 {
                        r
                    } else {
                        k
                    }
                })
                .collect()
        }
        MoveKind::Double => {
            if r == 0 || r > p {
                return Err(bad());
            }
            letters.insert(r, letters[r - 1]);
            (1..=p).map(|k| if k <= r { k } else { k + 1 }).collect()
        }
        MoveKind::Braid => {
            if r == 0 || r + 2 > p {
                return Err(bad());
            }
            let (a, b, c) = (letters[r - 1], letters[r], letters[r + 1]);
            if a != c || a.abs_diff(b) != 1 {
                return Err(bad());
            }
            letters[r - 1] = b;
            letters[r] = a;
            letters[r + 1] = b;
            (1..=p)
                .map(|k| {
                    if k == r {
                        r + 2
                    } else if k == r + 2 {
                        r
                    } else {
                        k
                    }
                })
                .collect()
        }
    };
    Ok((Word::from_parts_unchecked(w.rank(), letters), corr))
}

/// Carries labels along a move: labels follow the position map, and the new
/// copy produced by a doubling gets the primed version of the original label.
pub fn transport_labels(labels: &[Option<Label>], e: MoveEvent, corr: &[usize]) -> Vec<Option<Label>> {
    let new_len = if e.kind == MoveKind::Double { labels.len() + 1 } else { labels.len() };
    let mut out = vec![None; new_len];
    for (k, l) in labels.iter().enumerate() {
        out[corr[k] - 1] = *l;
    }
    if e.kind == MoveKind::Double {
        out[e.r] = labels[e.r - 1].map(|l| Label { primed: true, ..l });
    }
    out
}

/// The five effects of a braid move on a subword complex, by vertex status of
/// the three letters involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidCase {
    /// No vertex: isomorphic complexes.
    NoVertex = 1,
    /// One outer vertex: isomorphic complexes.
    OneVertex = 2,
    /// Two outer vertices: stellar subdivision of the outer edge.
    Subdivision = 3,
    /// Three vertices without a common facet: reverse subdivision.
    ReverseSubdivision = 4,
    /// Three vertices in a common facet: the middle vertex crosses the outer edge.
    Crossing = 5,
}

impl BraidCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

pub fn classify_braid(w: &Word, r: usize) -> Result<BraidCase> {
    let p = w.len();
    if r == 0 || r + 2 > p {
        return Err(Error::InapplicableMove(format!("B {r} on {w}")));
    }
    let (a, b, c) = (w.letter(r), w.letter(r + 1), w.letter(r + 2));
    if a != c || a.abs_diff(b) != 1 {
        return Err(Error::InapplicableMove(format!("B {r} on {w}")));
    }
    let status = vertex_status(w)?;
    let v = [status[r - 1], status[r], status[r + 1]];
    match v {
        [false, false, false] => Ok(BraidCase::NoVertex),
        [true, false, false] | [false, false, true] => Ok(BraidCase::OneVertex),
        [true, false, true] => Ok(BraidCase::Subdivision),
        [true, true, true] => {
            if common_facet_exists(w, &[r, r + 1, r + 2]) {
                Ok(BraidCase::Crossing)
            } else {
                Ok(BraidCase::ReverseSubdivision)
            }
        }
        _ => Err(Error::InapplicableMove(format!("B {r} on {w}: vertex pattern {v:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub event: MoveEvent,
    pub word: Word,
    pub labels: Vec<Option<Label>>,
}

/// A replayable sequence of moves with the resulting words and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub initial: Word,
    pub initial_labels: Vec<Option<Label>>,
    pub steps: Vec<TraceStep>,
}

impl MoveTrace {
    pub fn new(initial: Word, initial_labels: Vec<Option<Label>>) -> Self {
        assert_eq!(initial.len(), initial_labels.len());
        MoveTrace { initial, initial_labels, steps: Vec::new() }
    }

    pub fn final_word(&self) -> &Word {
        self.steps.last().map_or(&self.initial, |s| &s.word)
    }

    pub fn final_labels(&self) -> &[Option<Label>] {
        self.steps.last().map_or(&self.initial_labels, |s| &s.labels)
    }

    pub fn events(&self) -> impl Iterator<Item = MoveEvent> + '_ {
        self.steps.iter().map(|s| s.event)
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.steps.iter().filter(|s| s.event.kind == kind).count()
    }

    pub fn push(&mut self, e: MoveEvent) -> Result<()> {
        let (word, corr) = apply_move(self.final_word(), e)?;
        let labels = transport_labels(self.final_labels(), e, &corr);
        self.steps.push(TraceStep { event: e, word, labels });
        Ok(())
    }

    pub fn extend(&mut self, other: MoveTrace) -> Result<()> {
        if other.initial != *self.final_word() {
            return Err(Error::InapplicableMove("traces do not chain".into()));
        }
        self.steps.extend(other.steps);
        Ok(())
    }

    /// Rebuilds a trace from its events.
    pub fn replay(
        initial: Word,
        initial_labels: Vec<Option<Label>>,
        events: impl IntoIterator<Item = MoveEvent>,
    ) -> Result<Self> {
        let mut t = MoveTrace::new(initial, initial_labels);
        for e in events {
            t.push(e)?;
        }
        Ok(t)
    }

    /// Words before every step, followed by the final word.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.word))
    }

    /// Words and labels as they are just before the `k`-th step.
    pub fn before(&self, k: usize) -> (&Word, &[Option<Label>]) {
        if k == 0 {
            (&self.initial, &self.initial_labels)
        } else {
            (&self.steps[k - 1].word, &self.steps[k - 1].labels)
        }
    }
}

/// Bubble letters left so that `w` reads `target`; the letters are matched by
/// occurrence order, which is forced for commutation-equivalent words.
pub fn commute_to(w: &Word, target: &Word) -> Result<Vec<MoveEvent>> {
    commutation_correspondence(w, target)?;
    let mut letters = w.letters().to_vec();
    let mut events = Vec::new();
    commute_region(&mut letters, 0, target.letters(), &mut events)?;
    Ok(events)
}

/// Commutes `letters[offset..offset + target.len()]` into `target`, pushing
/// events with 1-based global positions.
fn commute_region(letters: &mut [u8], offset: usize, target: &[u8], events: &mut Vec<MoveEvent>) -> Result<()> {
    for (t, &x) in target.iter().enumerate() {
        let here = offset + t;
        let found = (here..offset + target.len()).find(|&q| letters[q] == x).ok_or(Error::NotCommutationEquivalent)?;
        for q in (here..found).rev() {
            if !letters_commute(letters[q], letters[q + 1]) {
                return Err(Error::NotCommutationEquivalent);
            }
            letters.swap(q, q + 1);
            events.push(MoveEvent::commutation(q + 1));
        }
    }
    Ok(())
}

/// Labels of a triangle `w∘(c)` starting at `start`: block `i`, letter `j`.
pub fn triangle_labels(w: &Word, start: usize) -> Result<Vec<Option<Label>>> {
    let n = w.rank();
    let tri = c_sorted_word(n)?;
    let end = start + tri.len() - 1;
    if start == 0 || end > w.len() || w.letters()[start - 1..end] != *tri.letters() {
        return Err(Error::NotATriangle(start));
    }
    let mut labels = vec![None; w.len()];
    let mut pos = start;
    for i in 1..=n {
        for j in 1..=n + 1 - i {
            labels[pos - 1] = Some(Label::new(i, j));
            pos += 1;
        }
    }
    Ok(labels)
}

/// Offset (0-based) of block `i` inside `w∘(c[m])`.
fn block_offset(m: usize, i: usize) -> usize {
    (1..i).map(|t| m + 1 - t).sum()
}

struct Builder {
    trace: MoveTrace,
    letters: Vec<u8>,
}

impl Builder {
    fn push(&mut self, e: MoveEvent) -> Result<()> {
        self.trace.push(e)?;
        self.letters = self.trace.final_word().letters().to_vec();
        Ok(())
    }

    fn commute_region(&mut self, start: usize, target: &[u8]) -> Result<()> {
        let mut events = Vec::new();
        let mut scratch = self.letters.clone();
        commute_region(&mut scratch, start - 1, target, &mut events)?;
        for e in events {
            self.push(e)?;
        }
        Ok(())
    }

    /// Moves the factor `s_1 w∘(c[m])` at `start` (the `s_1` being an extra
    /// letter in front) to `w∘(c[m]) s_m`.
    fn insert(&mut self, start: usize, m: usize) -> Result<()> {
        let mut p = start + 1;
        for k in 1..m {
            let k8 = k as u8;
            let second =
                (p + 1..=self.letters.len()).find(|&q| self.letters[q - 1] == k8).ok_or(Error::NotATriangle(start))?;
            for q in (p + 2..second).rev() {
                self.push(MoveEvent::commutation(q))?;
            }
            self.push(MoveEvent::braid(p))?;
            p += 2;
        }
        let mut target = c_sorted_word(m)?.letters().to_vec();
        target.push(m as u8);
        self.commute_region(start, &target)
    }

    /// Fattens the triangle `w∘(c[m])` at `start` into `w∘(c[m]) c[m]^T`.
    fn fatten(&mut self, start: usize, m: usize) -> Result<()> {
        self.push(MoveEvent::double(start))?;
        if m >= 2 {
            self.fatten(start + 1 + m, m - 1)?;
        }
        self.insert(start, m)
    }
}

fn check_triangle(w: &Word, start: usize, m: usize) -> Result<()> {
    let tri = c_sorted_word(m)?;
    let end = start + tri.len() - 1;
    if start == 0 || end > w.len() || w.letters()[start - 1..end] != *tri.letters() {
        return Err(Error::NotATriangle(start));
    }
    Ok(())
}

/// Moves the triangle `w∘(c)` at `start` to `w∘(c) s_ℓ` by doubling the first
/// letter `s_1` of its suffix `w∘(c[ℓ])` and applying `ℓ - 1` braid moves.
pub fn insertion_sequence(w: &Word, start: usize, ell: usize) -> Result<MoveTrace> {
    let n = w.rank();
    if ell == 0 || ell > n {
        return Err(Error::InsertionOutOfRange(ell));
    }
    let labels = triangle_labels(w, start)?;
    let sub = start + block_offset(n, n + 1 - ell);
    check_triangle(w, sub, ell)?;
    let mut b = Builder { trace: MoveTrace::new(w.clone(), labels), letters: w.letters().to_vec() };
    b.push(MoveEvent::double(sub))?;
    b.insert(sub, ell)?;
    Ok(b.trace)
}

/// Fattens the triangle `w∘(c)` at `start` into `w∘(c) c^T`: `n` doublings
/// first, then `n(n-1)/2` braid moves interlaced with commutations.
pub fn fattening_sequence(w: &Word, start: usize) -> Result<MoveTrace> {
    let labels = triangle_labels(w, start)?;
    let mut b = Builder { trace: MoveTrace::new(w.clone(), labels), letters: w.letters().to_vec() };
    b.fatten(start, w.rank())?;
    Ok(b.trace)
}

/// Expected labels of `w∘(c) c^T` after fattening: the `c` prefix reads
/// `(i,1)`, the middle `w∘(c[n-1])` reads `(i,j+1)`, and the `i`-th letter of
/// the suffix `s_n … s_1` reads `(i,1)'`.
pub fn fattened_labels(n: usize) -> Vec<Label> {
    let mut out: Vec<Label> = (1..=n).map(|i| Label::new(i, 1)).collect();
    for i in 1..n {
        for j in 1..=n - i {
            out.push(Label::new(i, j + 1));
        }
    }
    out.extend((1..=n).map(|i| Label::primed(i, 1)));
    out
}

pub fn write_trace<W: Write>(out: &mut W, t: &MoveTrace, verbose: bool) -> std::io::Result<()> {
    writeln!(out, "# initial: {}", t.initial)?;
    if let Some(start) = t.initial_labels.iter().position(|l| *l == Some(Label::new(1, 1))) {
        writeln!(out, "# triangle: {}", start + 1)?;
    }
    for s in &t.steps {
        writeln!(out, "{}", s.event)?;
        if verbose {
            writeln!(out, "{}", s.word)?;
        }
    }
    Ok(())
}

/// Reads a trace file; words given on verbose lines are checked against the replay.
pub fn read_trace<R: BufRead>(input: R) -> Result<MoveTrace> {
    let mut initial: Option<Word> = None;
    let mut triangle: Option<usize> = None;
    let mut events: Vec<(MoveEvent, Option<Word>)> = Vec::new();
    for line in input.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# initial:") {
            initial = Some(rest.parse()?);
        } else if let Some(rest) = line.strip_prefix("# triangle:") {
            triangle = Some(rest.trim().parse().map_err(|_| Error::Parse(format!("bad triangle `{line}`")))?);
        } else if line.starts_with('#') {
            continue;
        } else if line.starts_with("n=") {
            let w: Word = line.parse()?;
            let last = events.last_mut().ok_or_else(|| Error::Parse("word before any move".into()))?;
            last.1 = Some(w);
        } else {
            let (tag, r) = line.split_once(' ').ok_or_else(|| Error::Parse(format!("bad move `{line}`")))?;
            let r: usize = r.trim().parse().map_err(|_| Error::Parse(format!("bad move `{line}`")))?;
            let e = match tag {
                "C" => MoveEvent::commutation(r),
                "D" => MoveEvent::double(r),
                "B" => MoveEvent::braid(r),
                _ => return Err(Error::Parse(format!("bad move `{line}`"))),
            };
            events.push((e, None));
        }
    }
    let initial = initial.ok_or_else(|| Error::Parse("missing `# initial:` header".into()))?;
    let labels = match triangle {
        Some(start) => triangle_labels(&initial, start)?,
        None => vec![None; initial.len()],
    };
    let mut t = MoveTrace::new(initial, labels);
    for (e, w) in events {
        t.push(e)?;
        if let Some(w) = w {
            if w != *t.final_word() {
                return Err(Error::Parse(format!("word after `{e}` does not match the replay")));
            }
        }
    }
    Ok(t)
}
