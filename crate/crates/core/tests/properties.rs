use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use steiner_core::cone::{membership, prism_embed, random_ulc_sequence, table1_range, ConeStore};
use steiner_core::poly::{
    antiderivative_cap, antiderivative_steiner, derivative_steiner, poly_from_roots, reciprocal, roots_of,
    truncated_binomial, ComplexPolynomial,
};
use steiner_core::ulc::{c_coeff, coeffs_from_quermass, newton_check, quermass_from_coeffs, validate_steiner};
use steiner_core::{CoeffSequence, Complex64, Tolerance};

fn sequence(max_n: usize) -> impl Strategy<Value = CoeffSequence<f64>> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 0..n))
        .prop_flat_map(|(n, lo)| (Just(n), Just(lo), lo + 1..=n, any::<u64>()))
        .prop_map(|(n, lo, hi, seed)| random_ulc_sequence(n, (lo, hi), seed).unwrap())
}

fn store() -> &'static ConeStore {
    static STORE: OnceLock<ConeStore> = OnceLock::new();
    STORE.get_or_init(|| ConeStore::from_scan(&table1_range(5..=12).unwrap()).unwrap())
}

#[test]
fn c_coefficients_increase_along_the_diagonal() {
    for n in 2..40 {
        for j in 1..n {
            assert!(c_coeff(n, j).unwrap() < c_coeff(n + 1, j + 1).unwrap(), "n = {n}, j = {j}");
        }
    }
}

#[test]
fn truncated_binomials_are_steiner() {
    for n in 1..=20 {
        for j in 0..n {
            for k in j + 1..=n {
                let dims = validate_steiner(&truncated_binomial(n, j, k).unwrap(), Tolerance::DEFAULT).unwrap();
                assert_eq!((dims.r, dims.s), (k, n - j));
            }
        }
    }
}

#[test]
fn truncated_binomial_roots_round_trip() {
    for n in 1..=20 {
        for j in 0..n {
            for k in j + 1..=n {
                let seq = truncated_binomial(n, j, k).unwrap().to_f64();
                let rs = roots_of(&seq).unwrap();
                let back = poly_from_roots(&rs.expanded(), 1e-9);
                let lead = seq.coeffs()[k];
                let peak = seq.coeffs().iter().fold(0.0f64, |m, v| m.max(*v)) / lead;
                for (a, b) in seq.coeffs().iter().zip(back.coeffs()) {
                    assert!((a / lead - b.re).abs() <= 1e-8 * peak, "P{n}_({j},{k})");
                    assert_eq!(b.im, 0.0);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_sequences_validate(seq in sequence(16)) {
        prop_assert!(validate_steiner(&seq, Tolerance::DEFAULT).is_ok());
        let scaled = seq.scaled(&123.5).unwrap();
        prop_assert!(validate_steiner(&scaled, Tolerance::DEFAULT).is_ok());
        prop_assert!(validate_steiner(&seq.normalized(), Tolerance::DEFAULT).is_ok());
    }

    #[test]
    fn exact_quermass_round_trip(seq in sequence(10)) {
        let exact = seq.to_exact();
        let dims = validate_steiner(&exact, Tolerance::DEFAULT).unwrap();
        let w = quermass_from_coeffs(&exact, dims.r, dims.s, Tolerance::DEFAULT).unwrap();
        prop_assert_eq!(coeffs_from_quermass(&w), exact);
    }

    #[test]
    fn roots_round_trip(seq in sequence(20)) {
        let rs = roots_of(&seq).unwrap();
        let degree = seq.degree();
        prop_assert_eq!(rs.total_multiplicity(), degree);
        let lead = seq.coeffs()[degree];
        let peak = seq.coeffs().iter().fold(0.0f64, |m, v| m.max(*v)) / lead;
        let back = poly_from_roots(&rs.expanded(), 1e-9);
        for (a, b) in seq.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((a / lead - b.re).abs() <= 1e-8 * peak);
        }
    }

    #[test]
    fn roots_are_polished_and_closed(seq in sequence(20)) {
        let p = ComplexPolynomial::from_sequence(&seq);
        let rs = roots_of(&seq).unwrap();
        let sum: f64 = seq.coeffs().iter().sum();
        let d = seq.degree() as i32;
        for root in &rs.roots {
            let z = root.value;
            prop_assert!(p.eval(z).norm() <= 1e-9 * sum * z.norm().max(1.0).powi(d));
            prop_assert!(!(z.im == 0.0 && z.re > 0.0));
            let partner = rs.roots.iter().find(|r| r.value == z.conj());
            prop_assert!(partner.map(|r| r.multiplicity) == Some(root.multiplicity));
        }
    }

    #[test]
    fn derivative_and_antiderivative_stay_steiner(seq in sequence(12), t in 0.0f64..=1.0) {
        let n = seq.dimension();
        let d = derivative_steiner(&seq).unwrap();
        prop_assert_eq!(d.dimension(), n - 1);
        prop_assert!(validate_steiner(&d, Tolerance::DEFAULT).is_ok());
        let c0 = match antiderivative_cap(&seq) {
            Some(cap) if seq.coeffs()[0] > 0.0 => cap * t,
            _ => 0.0,
        };
        let up = antiderivative_steiner(&seq, c0).unwrap();
        prop_assert_eq!(up.dimension(), n + 1);
        prop_assert!(validate_steiner(&up, Tolerance::DEFAULT).is_ok());
    }

    #[test]
    fn reciprocal_inverts_roots(seq in sequence(12)) {
        let rec = reciprocal(&seq);
        prop_assert_eq!(&reciprocal(&rec), &seq);
        let dims = validate_steiner(&seq, Tolerance::DEFAULT).unwrap();
        let back = validate_steiner(&rec, Tolerance::DEFAULT).unwrap();
        prop_assert_eq!((back.r, back.s), (dims.s, dims.r));
        let forward = roots_of(&seq).unwrap().expanded_nonzero();
        let inverse = roots_of(&rec).unwrap().expanded_nonzero();
        prop_assert_eq!(forward.len(), inverse.len());
        for z in &forward {
            let target = z.inv();
            let best = inverse.iter().map(|w| (w - target).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best <= 1e-6 * target.norm().max(1.0));
        }
    }

    #[test]
    fn prism_adds_a_zero_root(seq in sequence(10)) {
        let lifted = prism_embed(&seq).unwrap();
        prop_assert_eq!(lifted.dimension(), seq.dimension() + 1);
        let a = roots_of(&seq).unwrap();
        let b = roots_of(&lifted).unwrap();
        prop_assert_eq!(b.zero_multiplicity, a.zero_multiplicity + 1);
        prop_assert_eq!(a.expanded_nonzero().len(), b.expanded_nonzero().len());
    }

    #[test]
    fn newton_accepts_nonpositive_reals(gammas in proptest::collection::vec(prop_oneof![Just(0.0), -10.0f64..=0.0], 1..=8)) {
        prop_assert!(newton_check(&gammas, gammas.len()).is_ok());
    }

    #[test]
    fn membership_is_scale_and_conjugation_invariant(
        n in 2usize..=12,
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        scale in 1e-3f64..1e3,
    ) {
        let g = Complex64::new(re, im);
        let base = membership(g, n, store()).verdict;
        prop_assert_eq!(membership(g.conj(), n, store()).verdict, base);
        prop_assert_eq!(membership(g * scale, n, store()).verdict, base);
    }

    #[test]
    fn integer_sequences_match_direct_inequalities(a in proptest::collection::vec(0i64..5, 2..=9)) {
        prop_assume!(a.iter().any(|&v| v > 0));
        let n = a.len() - 1;
        let nonzero: Vec<usize> = (0..=n).filter(|&i| a[i] > 0).collect();
        let contiguous = nonzero.len() == nonzero[nonzero.len() - 1] - nonzero[0] + 1;
        let ulc = (1..n).all(|i| {
            (i * (n - i)) as i64 * a[i] * a[i] >= ((i + 1) * (n - i + 1)) as i64 * a[i - 1] * a[i + 1]
        });
        let seq = CoeffSequence::new(a.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).unwrap();
        prop_assert_eq!(validate_steiner(&seq, Tolerance::DEFAULT).is_ok(), contiguous && ulc);
    }
}
