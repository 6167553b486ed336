use std::collections::BTreeSet;

use multiassoc::complex::all_facets;
use multiassoc::multitri::{
    diagonal_to_position, enumerate_k_triangulations, polygon_size, position_to_diagonal, relevant_diagonals,
    triangulation_to_facet,
};
use multiassoc::word::multiassociahedron_word;
use multiassoc::Error;

#[test]
fn triangulations_are_facets() {
    for (k, n) in [(1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
        let oracle: BTreeSet<u64> = enumerate_k_triangulations(k, n)
            .unwrap()
            .iter()
            .map(|t| triangulation_to_facet(k, n, t).unwrap().0)
            .collect();
        let facets: BTreeSet<u64> =
            all_facets(&multiassociahedron_word(k, n).unwrap()).unwrap().facets.iter().map(|f| f.0).collect();
        assert_eq!(oracle, facets, "k = {k}, n = {n}");
    }
}

#[test]
fn catalan_and_known_counts() {
    let catalan = [1usize, 1, 2, 5, 14, 42, 132];
    for n in 1..=5 {
        assert_eq!(enumerate_k_triangulations(1, n).unwrap().len(), catalan[n + 1]);
    }
    assert_eq!(enumerate_k_triangulations(2, 3).unwrap().len(), 84);
}

#[test]
fn identification_is_a_bijection() {
    for (k, n) in [(1, 3), (2, 2), (2, 5), (3, 3), (2, 8)] {
        let diagonals = relevant_diagonals(k, n);
        assert_eq!(diagonals.len(), k * n + n * (n + 1) / 2);
        let positions: BTreeSet<usize> = diagonals.iter().map(|&d| diagonal_to_position(k, n, d).unwrap()).collect();
        assert_eq!(positions, (1..=diagonals.len()).collect());
        for &d in &diagonals {
            assert_eq!(position_to_diagonal(k, n, diagonal_to_position(k, n, d).unwrap()).unwrap(), d);
        }
    }
}

#[test]
fn guard_and_relevance() {
    assert!(matches!(enumerate_k_triangulations(2, 7), Err(Error::TooLarge { .. })));
    let m = polygon_size(2, 3);
    assert_eq!(m, 8);
    assert!(matches!(
        diagonal_to_position(2, 3, multiassoc::Diagonal::new(1, 3)),
        Err(Error::IrrelevantDiagonal { .. })
    ));
}
