use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::elem_sym;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::ulc::{binomial_big, c_coeff, validate_steiner, CoeffSequence};

fn check_indices(n: usize, j: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, i: k });
    }
    if j >= k {
        return Err(Error::IndexOutOfRange { n, i: j });
    }
    Ok(())
}

/// `P^n_{j,k}(z) = sum_{i=j}^{k} C(n, i) z^i`, exactly.
pub fn truncated_binomial(n: usize, j: usize, k: usize) -> Result<CoeffSequence> {
    check_indices(n, j, k)?;
    let coeffs = (0..=n)
        .map(|i| {
            if (j..=k).contains(&i) {
                BigRational::from_integer(binomial_big(n, i).into())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    CoeffSequence::new(coeffs)
}

/// [`truncated_binomial`] rounded to doubles.
pub fn truncated_binomial_f64(n: usize, j: usize, k: usize) -> Result<CoeffSequence<f64>> {
    check_indices(n, j, k)?;
    let coeffs = (0..=n)
        .map(|i| {
            if (j..=k).contains(&i) {
                binomial_big(n, i).to_f64().unwrap_or(f64::INFINITY)
            } else {
                0.0
            }
        })
        .collect();
    CoeffSequence::new(coeffs)
}

/// Builds the Steiner polynomial in `R^n` with roots `gammas`, or explains why
/// none exists.
///
/// `gammas` holds the `r` roots of `f_{K;E}` for `dim E = r`, `dim K = s`;
/// exactly `n - s` of them are zero. With `e_i` the elementary symmetric
/// values, the conditions are `(-1)^i e_i > 0` for `i <= r + s - n`,
/// `e_i = 0` beyond, and `c_{r-i,n} e_i^2 >= e_{i-1} e_{i+1}` for
/// `1 <= i <= r - 1`. The result is monic of degree `r`.
pub fn steiner_from_roots(
    gammas: &[Complex64],
    n: usize,
    r: usize,
    s: usize,
    tol: f64,
) -> Result<CoeffSequence<f64>> {
    if n == 0 {
        return Err(Error::Dimension { min: 1, got: 0 });
    }
    if r > n {
        return Err(Error::IndexOutOfRange { n, i: r });
    }
    if s > n || r + s < n {
        return Err(Error::IndexOutOfRange { n, i: s });
    }
    if gammas.len() != r {
        return Err(Error::RootCount {
            expected: r,
            got: gammas.len(),
        });
    }
    for (index, z) in gammas.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
    }
    let zeros = gammas.iter().filter(|z| z.norm() <= tol).count();
    if zeros != n - s {
        return Err(Error::SupportMismatch {
            expected_r: r,
            expected_s: s,
            r,
            s: n - zeros,
        });
    }

    let e = elem_sym(gammas);
    let magnitudes: Vec<Complex64> = gammas.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect();
    let scale: Vec<f64> = elem_sym(&magnitudes).iter().map(|c| c.re).collect();
    for (index, (value, bound)) in e.iter().zip(&scale).enumerate() {
        if value.im.abs() > tol * bound {
            return Err(Error::NotConjugateClosed { index });
        }
    }
    let signed: Vec<f64> = e
        .iter()
        .enumerate()
        .map(|(i, value)| if i % 2 == 0 { value.re } else { -value.re })
        .collect();
    let nonzero = r + s - n;
    for i in 0..=r {
        let ok = if i <= nonzero {
            signed[i] > tol * scale[i]
        } else {
            signed[i].abs() <= tol * scale[i]
        };
        if !ok {
            return Err(Error::SignPattern { index: i });
        }
    }
    for i in 1..r {
        let c = Scalar::to_f64(&c_coeff(n, r - i)?);
        let lhs = c * signed[i] * signed[i];
        let rhs = signed[i - 1] * signed[i + 1];
        if lhs - rhs < -tol * lhs.abs().max(rhs.abs()) {
            return Err(Error::UlcViolation { index: r - i });
        }
    }

    let mut coeffs = vec![0.0; n + 1];
    for i in 0..=r {
        let m = r - i;
        coeffs[i] = if m <= nonzero { signed[m].max(0.0) } else { 0.0 };
    }
    CoeffSequence::with_dimension(n, coeffs)
}

/// `f'`, a Steiner polynomial in `R^(n-1)`.
pub fn derivative_steiner<T: Scalar>(seq: &CoeffSequence<T>) -> Result<CoeffSequence<T>> {
    validate_steiner(seq, Tolerance::DEFAULT)?;
    let coeffs = seq
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| T::from_u64(i as u64) * a.clone())
        .collect();
    CoeffSequence::new(coeffs)
}

/// Largest admissible constant `n a_0^2 / ((n+1) a_1)` for
/// [`antiderivative_steiner`]; `None` when `a_1 = 0` (no bound).
pub fn antiderivative_cap<T: Scalar>(seq: &CoeffSequence<T>) -> Option<T> {
    let a = seq.coeffs();
    if a[1].is_zero() {
        return None;
    }
    let n = seq.dimension() as u64;
    Some(T::from_u64(n) * a[0].clone() * a[0].clone() / (T::from_u64(n + 1) * a[1].clone()))
}

/// `c0 + integral_0^z f`, a Steiner polynomial in `R^(n+1)`.
pub fn antiderivative_steiner<T: Scalar>(seq: &CoeffSequence<T>, c0: T) -> Result<CoeffSequence<T>> {
    validate_steiner(seq, Tolerance::DEFAULT)?;
    if !c0.is_finite_value() {
        return Err(Error::NonFinite { index: 0 });
    }
    if c0.is_negative() {
        return Err(Error::NegativeCoefficient { index: 0 });
    }
    if !c0.is_zero() {
        if seq.coeffs()[0].is_zero() {
            return Err(Error::ConstantNeedsFullDimension);
        }
        if let Some(cap) = antiderivative_cap(seq) {
            if c0 > cap {
                return Err(Error::ConstantAboveCap {
                    c0: c0.to_string(),
                    cap: cap.to_string(),
                });
            }
        }
    }
    let coeffs = std::iter::once(c0)
        .chain(
            seq.coeffs()
                .iter()
                .enumerate()
                .map(|(i, a)| a.clone() / T::from_u64(i as u64 + 1)),
        )
        .collect();
    let out = CoeffSequence::new(coeffs)?;
    validate_steiner(&out, Tolerance::DEFAULT)?;
    Ok(out)
}

/// `z^n f(1/z)`: swaps the roles of the two bodies.
pub fn reciprocal<T: Scalar>(seq: &CoeffSequence<T>) -> CoeffSequence<T> {
    let mut coeffs = seq.coeffs().to_vec();
    coeffs.reverse();
    CoeffSequence::new(coeffs).expect("reversal keeps a valid sequence valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{min_angle_root, roots_of};
    use crate::scalar::rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ints(seq: &CoeffSequence) -> Vec<i64> {
        seq.coeffs().iter().map(|q| q.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn truncated_binomial_examples() {
        assert_eq!(ints(&truncated_binomial(4, 1, 4).unwrap()), vec![0, 4, 6, 4, 1]);
        assert_eq!(ints(&truncated_binomial(5, 0, 5).unwrap()), vec![1, 5, 10, 10, 5, 1]);
        let p = truncated_binomial(10, 3, 8).unwrap();
        let dims = validate_steiner(&p, Tolerance::DEFAULT).unwrap();
        assert_eq!((dims.r, dims.s), (8, 7));
        assert_eq!(p.degree(), 8);
        assert!(truncated_binomial(4, 2, 2).is_err());
        assert!(truncated_binomial(4, 1, 5).is_err());
    }

    #[test]
    fn large_truncated_binomial_is_finite() {
        let p = truncated_binomial_f64(160, 0, 80).unwrap();
        assert!(p.coeffs().iter().all(|a| a.is_finite()));
        assert_eq!(p.coeffs()[80], binomial_big(160, 80).to_f64().unwrap());
    }

    #[test]
    fn from_roots_examples() {
        let gammas = [c(-1.0, 1.0), c(-1.0, -1.0), c(-2.0, 0.0), c(0.0, 0.0)];
        let seq = steiner_from_roots(&gammas, 4, 4, 3, 1e-9).unwrap();
        assert_eq!(seq.coeffs(), &[0.0, 4.0, 6.0, 4.0, 1.0]);

        let ones = vec![c(-1.0, 0.0); 6];
        let seq = steiner_from_roots(&ones, 6, 6, 6, 1e-9).unwrap();
        assert_eq!(seq.coeffs(), &[1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0]);

        let window = [c(-1.0, 3.0), c(-1.0, -3.0), c(-0.1, 0.0)];
        assert!(steiner_from_roots(&window, 3, 3, 3, 1e-9).is_err());
    }

    #[test]
    fn from_roots_rejections() {
        let gammas = [c(-1.0, 1.0), c(-1.0, 0.5)];
        assert!(matches!(
            steiner_from_roots(&gammas, 2, 2, 2, 1e-9),
            Err(Error::NotConjugateClosed { .. })
        ));
        assert!(matches!(
            steiner_from_roots(&[c(1.0, 0.0)], 1, 1, 1, 1e-9),
            Err(Error::SignPattern { index: 1 })
        ));
        assert!(matches!(
            steiner_from_roots(&[c(-1.0, 0.0)], 2, 2, 2, 1e-9),
            Err(Error::RootCount { .. })
        ));
        assert!(matches!(
            steiner_from_roots(&[c(-1.0, 0.0), c(-1.0, 0.0)], 2, 2, 1, 1e-9),
            Err(Error::SupportMismatch { .. })
        ));
    }

    #[test]
    fn derivative_and_antiderivative() {
        let cube: CoeffSequence = CoeffSequence::new(vec![rational(1, 1), rational(3, 1), rational(3, 1), rational(1, 1)]).unwrap();
        let d = derivative_steiner(&cube).unwrap();
        assert_eq!(ints(&d), vec![3, 6, 3]);

        let p = truncated_binomial(4, 1, 4).unwrap();
        let a = antiderivative_steiner(&p, BigRational::zero()).unwrap();
        assert_eq!(a.dimension(), 5);
        assert_eq!(validate_steiner(&a, Tolerance::DEFAULT).unwrap().r, 5);
    }

    #[test]
    fn antiderivative_cap_is_enforced() {
        let seq: CoeffSequence = CoeffSequence::new(vec![rational(1, 1), rational(2, 1), rational(1, 1)]).unwrap();
        let cap = antiderivative_cap(&seq).unwrap();
        assert_eq!(cap, rational(1, 3));
        assert!(antiderivative_steiner(&seq, cap.clone()).is_ok());
        let above = cap + rational(1, 1_000_000);
        assert!(matches!(
            antiderivative_steiner(&seq, above),
            Err(Error::ConstantAboveCap { .. })
        ));
        assert!(antiderivative_steiner(&seq, rational(7, 10)).is_err());

        let p = truncated_binomial(4, 1, 4).unwrap();
        assert_eq!(
            antiderivative_steiner(&p, rational(1, 10)),
            Err(Error::ConstantNeedsFullDimension)
        );
    }

    #[test]
    fn reciprocal_swaps_indices() {
        assert_eq!(reciprocal(&truncated_binomial(9, 2, 6).unwrap()), truncated_binomial(9, 3, 7).unwrap());
        let pal = CoeffSequence::new(vec![1.0, 2.0, 1.0]).unwrap();
        assert_eq!(reciprocal(&pal), pal);

        let p = truncated_binomial_f64(4, 1, 4).unwrap();
        let rs = roots_of(&reciprocal(&p)).unwrap();
        assert_eq!(rs.zero_multiplicity, 0);
        let expected = [c(-0.5, -0.5), c(-0.5, 0.5), c(-0.5, 0.0)];
        for z in expected {
            let hits: usize = rs
                .roots
                .iter()
                .filter(|r| (r.value - z).norm() < 1e-10)
                .map(|r| r.multiplicity)
                .sum();
            assert_eq!(hits, 1, "{z}");
        }
        let (g, _) = min_angle_root(&roots_of(&p).unwrap()).unwrap();
        let (h, _) = min_angle_root(&rs).unwrap();
        let mapped = g.conj().inv();
        assert!((Complex64::new(mapped.re, mapped.im.abs()) - h).norm() < 1e-10);
    }
}
