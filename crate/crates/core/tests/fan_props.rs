use multiassoc::complex::all_facets;
use multiassoc::fan::{certify_fan, classify_ridge, format_ratio, CertifyOptions};
use multiassoc::linalg::{kernel, kernel_rational, Matrix};
use multiassoc::rays::{build_rays, write_rays, Construction};
use multiassoc::{Rational, RidgeStatus};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (1usize..=6, 1usize..=7).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| Matrix {
            rows,
            cols,
            data: v.into_iter().map(BigInt::from).collect(),
        })
    })
}

fn constructions() -> impl Strategy<Value = Construction> {
    prop_oneof![
        Just(Construction::Naive),
        Just(Construction::Fixed(5, 3)),
        Just(Construction::Linear),
        Just(Construction::Pattern),
        Just(Construction::Perturbed),
    ]
}

proptest! {
    #[test]
    fn kernel_vectors_annihilate(m in small_matrix()) {
        let basis = kernel(&m);
        let rational = kernel_rational(&m.map(|x| Rational::from_integer(x.clone())));
        prop_assert_eq!(basis.len(), rational.len());
        for v in &basis {
            for i in 0..m.rows {
                let s: BigInt = (0..m.cols).map(|j| m.at(i, j) * &v[j]).sum();
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn ridge_classification_is_symmetric(c in constructions(), n in 2usize..=3, pick in any::<prop::sample::Index>()) {
        let ra = build_rays(&c, n, Some(7)).unwrap();
        let idx = all_facets(&ra.word).unwrap();
        let e = idx.dual_edges[pick.index(idx.dual_edges.len())];
        let (f, g) = (idx.facets[e.a as usize], idx.facets[e.b as usize]);
        let forward = classify_ridge(&ra, f, g).unwrap();
        let backward = classify_ridge(&ra, g, f).unwrap();
        prop_assert_eq!(forward.status, backward.status);
        prop_assert_eq!((forward.leave, forward.enter), (backward.enter, backward.leave));
        if forward.status != RidgeStatus::Degenerate {
            prop_assert!(forward.dependence.is_some());
        }
    }

    #[test]
    fn ratios_stay_within_bounds(count in 0u64..1_000_000, extra in 1u64..1_000_000) {
        let total = count + extra;
        let r = format_ratio(count, total);
        let (whole, frac) = r.split_once('.').unwrap();
        prop_assert_eq!(frac.len(), 2);
        let hundredths: u64 = whole.parse::<u64>().unwrap() * 100 + frac.parse::<u64>().unwrap();
        prop_assert!(hundredths <= 10_000);
        let exact = 10_000.0 * count as f64 / total as f64;
        prop_assert!((hundredths as f64 - exact).abs() <= 0.5 + 1e-9);
    }
}

#[test]
fn certification_ignores_thread_count() {
    for c in [Construction::Linear, Construction::Pattern] {
        let ra = build_rays(&c, 4, None).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
                let idx = all_facets(&ra.word).unwrap();
                certify_fan(&ra, &idx, &CertifyOptions::default()).unwrap()
            })
        };
        assert_eq!(run(1), run(8));
    }
}

#[test]
fn perturbed_rays_are_reproducible() {
    let bytes = |seed| {
        let mut buf = Vec::new();
        write_rays(&mut buf, &build_rays(&Construction::Perturbed, 4, Some(seed)).unwrap()).unwrap();
        buf
    };
    assert_eq!(bytes(42), bytes(42));
    assert_ne!(bytes(42), bytes(43));
}

#[test]
fn sampled_condition_one_is_partial() {
    let ra = build_rays(&Construction::Pattern, 4, None).unwrap();
    let idx = all_facets(&ra.word).unwrap();
    let opts = CertifyOptions { full_sweep_max_rank: 3, sample_size: 50, seed: 3, ..CertifyOptions::default() };
    let cert = certify_fan(&ra, &idx, &opts).unwrap();
    assert!(cert.partially_certified && !cert.certified);
    assert_eq!(cert.verdict(), "partial certificate");
    let again = certify_fan(&ra, &idx, &opts).unwrap();
    assert_eq!(cert, again);
}
