//! Exact-arithmetic construction and certification of simplicial fan
//! realizations of multiassociahedra, seen as type-A subword complexes.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: words in simple transpositions, Demazure products, canonical words.
//! * [`complex`]: facets, flips and flip-graph enumeration of subword complexes.
//! * [`multitri`]: k-relevant diagonals, brute-force k-triangulations and their
//!   identification with positions of `c^k w∘(c)`.
//! * [`simplicial`]: abstract complexes with joins, one-point suspensions and
//!   stellar subdivisions.
//! * [`moves`]: commutation, 0-Hecke and braid moves, fattening traces with labels.
//! * [`rays`]: exact ray assignments built by replaying traces, and the closed
//!   integer pattern.
//! * [`linalg`], [`lp`]: fraction-free elimination and an exact simplex.
//! * [`fan`]: ridge classification, degeneracy statistics and fan certification.
//! * [`reference`]: hand-transcribed reference tables used for reproduction.

pub mod complex;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod lp;
pub mod moves;
pub mod multitri;
pub mod rays;
pub mod reference;
pub mod simplicial;
pub mod word;

pub use complex::{all_facets, ComplexIndex, DualEdge, Facet};
pub use error::{Error, Result};
pub use fan::{certify_fan, Certificate, CertifyOptions, FanStats, RidgeReport, RidgeStatus};
pub use moves::{Label, MoveEvent, MoveKind, MoveTrace};
pub use multitri::Diagonal;
pub use rays::{build_rays, CoefficientScheme, Construction, RayAssignment, RayVec};
pub use word::{Permutation, Word};

/// Exact rational scalar used for every stored coordinate.
pub type Rational = num_rational::BigRational;
