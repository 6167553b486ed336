use multiassoc::complex::{all_facets, vertex_status};
use multiassoc::moves::{apply_move, classify_braid, fattening_sequence, BraidCase};
use multiassoc::simplicial::SimplicialComplex;
use multiassoc::word::{c_sorted_word, coxeter_word};
use multiassoc::{MoveEvent, MoveKind, MoveTrace, Word};

fn complex(w: &Word) -> SimplicialComplex {
    SimplicialComplex::from_bitsets(&all_facets(w).unwrap().facets)
}

/// Both fattenings of the two-step construction, chained by commutations.
fn construction_traces(n: usize) -> Vec<MoveTrace> {
    let tri = c_sorted_word(n).unwrap();
    let first = fattening_sequence(&tri, 1).unwrap();
    let cw = coxeter_word(n).unwrap().concat(&tri);
    let second = fattening_sequence(&cw, n + 1).unwrap();
    vec![first, second]
}

fn steps(t: &MoveTrace) -> impl Iterator<Item = (&Word, MoveEvent)> {
    (0..t.steps.len()).map(move |k| (t.before(k).0, t.steps[k].event))
}

#[test]
fn doubling_is_a_one_point_suspension() {
    let mut vertex_doublings = 0;
    for n in 1..=3 {
        for t in construction_traces(n) {
            for (w, e) in steps(&t).filter(|(_, e)| e.kind == MoveKind::Double) {
                let r = e.r;
                let (doubled, corr) = apply_move(w, e).unwrap();
                let expected = complex(w).relabel(|x| corr[x - 1]).one_point_suspension(r, r, r + 1);
                assert_eq!(complex(&doubled), expected, "doubling at {r} in {w}");
                if vertex_status(w).unwrap()[r - 1] {
                    vertex_doublings += 1;
                }
            }
        }
    }
    assert!(vertex_doublings > 0);
}

#[test]
fn subdividing_braids_are_stellar_subdivisions() {
    let mut seen = 0;
    for n in 2..=3 {
        for t in construction_traces(n) {
            for (w, e) in steps(&t).filter(|(_, e)| e.kind == MoveKind::Braid) {
                if classify_braid(w, e.r).unwrap() != BraidCase::Subdivision {
                    continue;
                }
                let r = e.r;
                let (braided, corr) = apply_move(w, e).unwrap();
                let expected = complex(w).stellar_subdivision(&[r, r + 2], r + 1).relabel(|x| corr[x - 1]);
                assert_eq!(complex(&braided), expected, "braid at {r} in {w}");
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn fattening_braids_are_case_three_or_five() {
    for n in 1..=5 {
        let [first, second]: [MoveTrace; 2] = construction_traces(n).try_into().unwrap();
        for (w, e) in steps(&first).filter(|(_, e)| e.kind == MoveKind::Braid) {
            assert_eq!(classify_braid(w, e.r).unwrap(), BraidCase::Subdivision, "n = {n}, {w}");
        }
        for (w, e) in steps(&second).filter(|(_, e)| e.kind == MoveKind::Braid) {
            assert_eq!(classify_braid(w, e.r).unwrap(), BraidCase::Crossing, "n = {n}, {w}");
        }
        assert_eq!(first.count(MoveKind::Double), n);
        assert_eq!(first.count(MoveKind::Braid), n * (n - 1) / 2);
        assert_eq!(second.count(MoveKind::Braid), n * (n - 1) / 2);
    }
}

#[test]
fn fattening_ends_on_the_transposed_triangle() {
    for n in 1..=6 {
        let tri = c_sorted_word(n).unwrap();
        let t = fattening_sequence(&tri, 1).unwrap();
        let mut reversed: Vec<u8> = coxeter_word(n).unwrap().letters().to_vec();
        reversed.reverse();
        let expected = tri.concat(&Word::new(n, reversed).unwrap());
        assert_eq!(t.final_word(), &expected);
    }
}
