use steiner_core::poly::truncated_binomial;
use steiner_core::realize::{
    build_simplex_pair, dissection_volume, hull_volume, verify_realization, verify_realization_with, VolumeMethod,
    VolumeOracle,
};
use steiner_core::ulc::quermass_from_coeffs;
use steiner_core::{QuermassTuple, Tolerance};

fn binomial_tuple(n: usize, j: usize, k: usize) -> QuermassTuple {
    quermass_from_coeffs(&truncated_binomial(n, j, k).unwrap(), k, n - j, Tolerance::DEFAULT).unwrap()
}

#[test]
fn monte_carlo_oracle_in_dimension_five() {
    let q = binomial_tuple(5, 1, 4);
    let report = verify_realization_with(
        &q,
        VolumeOracle::MonteCarlo {
            samples: 200_000,
            seed: 0x5EED,
        },
    )
    .unwrap();
    assert_eq!(report.method, VolumeMethod::MonteCarlo);
    assert!(report.passed, "{report:?}");
    assert!(report.halfwidths.iter().all(|h| *h > 0.0));
}

#[test]
fn dissection_oracle_above_four() {
    for (n, j, k) in [(5, 1, 4), (6, 2, 5), (6, 0, 6)] {
        let report = verify_realization(&binomial_tuple(n, j, k)).unwrap();
        assert_eq!(report.method, VolumeMethod::Dissection);
        assert!(report.passed);
        assert!(report.max_relative_error < 1e-9);
    }
}

#[test]
fn hull_matches_dissection_with_nearly_equal_ratios() {
    // Quermassintegrals that are almost geometric make neighbouring facets
    // of the Minkowski sum almost coplanar.
    let w: Vec<f64> = (0..=3).map(|i| 2f64.powi(-i) * (1.0 - 1e-9 * (i * i) as f64)).collect();
    let q = QuermassTuple::new(w, Tolerance::DEFAULT).unwrap();
    let pair = build_simplex_pair(&q).unwrap();
    for lambda in [0.5, 1.0, 2.0, 3.0] {
        let hull = hull_volume(&pair.minkowski_vertices(lambda), 3).unwrap().volume;
        let closed = dissection_volume(&pair, lambda).volume;
        assert!((hull - closed).abs() <= 1e-10 * closed, "lambda = {lambda}: {hull} vs {closed}");
    }
}
