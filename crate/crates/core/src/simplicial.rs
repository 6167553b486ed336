//! Pure abstract simplicial complexes given by their facets, with the
//! operations produced by 0-Hecke and braid moves.

use std::collections::BTreeSet;

use crate::complex::Facet;

/// Facets are sorted vertex lists; the facet set itself is ordered, so equality
/// is equality of complexes on the same labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    facets: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new<I, F>(facets: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let facets = facets
            .into_iter()
            .map(|f| {
                let mut v: Vec<usize> = f.into_iter().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        SimplicialComplex { facets }
    }

    pub fn from_bitsets(facets: &[Facet]) -> Self {
        Self::new(facets.iter().map(|f| f.positions()))
    }

    pub fn facets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.facets.iter()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn is_vertex(&self, x: usize) -> bool {
        self.facets.iter().any(|f| f.contains(&x))
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| face.iter().all(|x| f.contains(x)))
    }

    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::new(self.facets.iter().map(|f| f.iter().map(|&x| map(x)).collect::<Vec<_>>()))
    }

    /// Facets `F ∪ G` over all pairs; labels are assumed disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> Self {
        let mut out = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                out.push(f.iter().chain(g).copied().collect::<Vec<_>>());
            }
        }
        Self::new(out)
    }

    /// Join with the two-point complex `{u1, u2}`.
    pub fn suspension(&self, u1: usize, u2: usize) -> Self {
        self.join(&Self::new([vec![u1], vec![u2]]))
    }

    /// Replace `x` by the edge `{x0, x1}` in facets containing it, and cone the
    /// others over `x0` and over `x1`. A non-vertex `x` gives the suspension.
    pub fn one_point_suspension(&self, x: usize, x0: usize, x1: usize) -> Self {
        let mut out = Vec::new();
        for f in &self.facets {
            if f.contains(&x) {
                let mut g: Vec<usize> = f.iter().copied().filter(|&y| y != x).collect();
                g.push(x0);
                g.push(x1);
                out.push(g);
            } else {
                for y in [x0, x1] {
                    let mut g = f.clone();
                    g.push(y);
                    out.push(g);
                }
            }
        }
        Self::new(out)
    }

    /// Stellar subdivision of a face with a new vertex `v`.
    pub fn stellar_subdivision(&self, face: &[usize], v: usize) -> Self {
        let mut out = Vec::new();
        for f in &self.facets {
            if face.iter().all(|x| f.contains(x)) {
                for a in face {
                    let mut g: Vec<usize> = f.iter().copied().filter(|y| y != a).collect();
                    g.push(v);
                    out.push(g);
                }
            } else {
                out.push(f.clone());
            }
        }
        Self::new(out)
    }

    /// Every codimension-one face lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        let mut ridges = std::collections::BTreeMap::<Vec<usize>, usize>::new();
        for f in &self.facets {
            for k in 0..f.len() {
                let mut r = f.clone();
                r.remove(k);
                *ridges.entry(r).or_default() += 1;
            }
        }
        ridges.values().all(|&c| c == 2)
    }
}
