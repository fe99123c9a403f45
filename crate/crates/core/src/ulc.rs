//! Ultra-logconcave sequences and the coefficient/quermassintegral dictionary.
//!
//! A nonnegative sequence `a_0..a_n` is the coefficient sequence of a relative
//! Steiner polynomial `vol(K + zE)` of bodies with `dim E = r`, `dim K = s`
//! spanning `R^n` exactly when its positive entries form the contiguous block
//! `n - s ..= r` and `c_{i,n} a_i^2 >= a_{i-1} a_{i+1}` holds for every interior
//! index, with `c_{i,n} = (i / (i + 1)) ((n - i) / (n - i + 1))`.
//! The quermassintegrals are `W_i = a_i / C(n, i)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_from_f64, Scalar, Tolerance};

/// Largest `n` accepted by [`binomial`]: `C(64, 32)` still fits in a `u64`.
pub const EXACT_BINOMIAL_MAX: usize = 64;

/// `C(n, i)` as a machine integer, for `0 <= i <= n <= 64`.
pub fn binomial(n: usize, i: usize) -> Result<u64> {
    if i > n || n > EXACT_BINOMIAL_MAX {
        return Err(Error::IndexOutOfRange { n, i });
    }
    let i = i.min(n - i);
    let mut acc: u128 = 1;
    for k in 0..i {
        // acc * (n - k) is divisible by k + 1 at every step.
        acc = acc * (n - k) as u128 / (k + 1) as u128;
    }
    Ok(acc as u64)
}

/// `C(n, i)` for any `n`.
pub fn binomial_big(n: usize, i: usize) -> BigUint {
    if i > n {
        return BigUint::zero();
    }
    let i = i.min(n - i);
    let mut acc = BigUint::one();
    for k in 0..i {
        acc = acc * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    acc
}

/// `C(n, i)` in the requested arithmetic (zero when `i > n`).
pub fn binomial_in<T: Scalar>(n: usize, i: usize) -> T {
    if n <= EXACT_BINOMIAL_MAX && i <= n {
        return T::from_u64(binomial(n, i).expect("checked range"));
    }
    T::from_rational(&BigRational::from_integer(BigInt::from(binomial_big(n, i))))
}

/// The ultra-logconcavity constant `c_{i,n} = (i/(i+1)) ((n-i)/(n-i+1))`.
pub fn c_coeff(n: usize, i: usize) -> Result<BigRational> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { n, i });
    }
    let num = BigInt::from(i) * BigInt::from(n - i);
    let den = BigInt::from(i + 1) * BigInt::from(n - i + 1);
    Ok(BigRational::new(num, den))
}

/// Nonnegative coefficients `a_0..a_n` of a Steiner polynomial candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct CoeffSequence<T = BigRational> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CoeffSequence<T> {
    /// Validates nonnegativity and rejects the all-zero sequence; the ambient
    /// dimension is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Dimension {
                min: 1,
                got: coeffs.len().saturating_sub(1),
            });
        }
        for (index, a) in coeffs.iter().enumerate() {
            if !a.is_finite_value() {
                return Err(Error::NonFinite { index });
            }
            if a.is_negative() {
                return Err(Error::NegativeCoefficient { index });
            }
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(Self { coeffs })
    }

    pub fn with_dimension(n: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != n + 1 {
            return Err(Error::Length {
                expected: n + 1,
                got: coeffs.len(),
            });
        }
        Self::new(coeffs)
    }

    /// Ambient dimension `n`.
    pub fn dimension(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn sum(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, a| acc + a.clone())
    }

    /// Rescales so the coefficients sum to one, i.e. `vol(K + E) = 1`.
    pub fn normalized(&self) -> Self {
        let total = self.sum();
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() / total.clone()).collect(),
        }
    }

    pub fn scaled(&self, factor: &T) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a.clone() * factor.clone()).collect())
    }

    pub fn to_f64(&self) -> CoeffSequence<f64> {
        CoeffSequence {
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Highest index with a positive coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|a| !a.is_zero())
            .expect("nonzero by construction")
    }
}

impl CoeffSequence<f64> {
    /// The same values as exact rationals (every finite double is rational).
    pub fn to_exact(&self) -> CoeffSequence<BigRational> {
        CoeffSequence {
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| rational_from_f64(a).expect("finite by construction"))
                .collect(),
        }
    }
}

/// Smallest and largest positive index; fails on an interior zero.
pub fn support_interval<T: Scalar>(seq: &CoeffSequence<T>) -> Result<(usize, usize)> {
    support_of(seq.coeffs())
}

fn support_of<T: Scalar>(values: &[T]) -> Result<(usize, usize)> {
    let lo = values.iter().position(|a| !a.is_zero()).ok_or(Error::AllZero)?;
    let hi = values.iter().rposition(|a| !a.is_zero()).ok_or(Error::AllZero)?;
    if let Some(gap) = (lo..=hi).find(|&i| values[i].is_zero()) {
        return Err(Error::SupportGap { index: gap });
    }
    Ok((lo, hi))
}

/// One ultra-logconcavity inequality `c_{i,n} a_i^2 >= a_{i-1} a_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct UlcRow<T> {
    pub i: usize,
    pub c_in: BigRational,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub equality: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct UlcReport<T> {
    pub n: usize,
    pub rows: Vec<UlcRow<T>>,
    /// All rows hold.
    pub verdict: bool,
    /// `None` when the support has a gap, see `gap_at`.
    pub support: Option<(usize, usize)>,
    pub gap_at: Option<usize>,
}

impl<T> UlcReport<T> {
    pub fn first_violation(&self) -> Option<usize> {
        self.rows.iter().find(|row| !row.holds).map(|row| row.i)
    }

    pub fn equalities(&self) -> Vec<usize> {
        self.rows.iter().filter(|row| row.equality).map(|row| row.i).collect()
    }
}

/// Evaluates every ultra-logconcavity row. Rows are independent of each other
/// and of the support check.
pub fn check_ulc<T: Scalar>(seq: &CoeffSequence<T>, tol: Tolerance) -> UlcReport<T> {
    let n = seq.dimension();
    let a = seq.coeffs();
    let rows = (1..n)
        .map(|i| {
            let c_in = c_coeff(n, i).expect("1 <= i < n");
            let lhs = T::from_rational(&c_in) * a[i].clone() * a[i].clone();
            let rhs = a[i - 1].clone() * a[i + 1].clone();
            let margin = lhs.clone() - rhs.clone();
            let scale = T::max_of(&lhs, &rhs);
            UlcRow {
                i,
                holds: T::nonneg_within(&margin, &scale, tol),
                equality: T::zero_within(&margin, &scale, tol),
                c_in,
                lhs,
                rhs,
                margin,
            }
        })
        .collect::<Vec<_>>();
    let (support, gap_at) = match support_interval(seq) {
        Ok(s) => (Some(s), None),
        Err(Error::SupportGap { index }) => (None, Some(index)),
        Err(_) => (None, None),
    };
    UlcReport {
        n,
        verdict: rows.iter().all(|row| row.holds),
        rows,
        support,
        gap_at,
    }
}

/// Dimensions of the two bodies behind an accepted sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerDims {
    /// `dim E`, the largest index with `a_i > 0`.
    pub r: usize,
    /// `dim K`, `n` minus the smallest index with `a_i > 0`.
    pub s: usize,
}

/// Decides whether `seq` is a relative Steiner polynomial in `R^n`.
pub fn validate_steiner<T: Scalar>(seq: &CoeffSequence<T>, tol: Tolerance) -> Result<SteinerDims> {
    let (lo, hi) = support_interval(seq)?;
    let report = check_ulc(seq, tol);
    if let Some(index) = report.first_violation() {
        return Err(Error::UlcViolation { index });
    }
    Ok(SteinerDims {
        r: hi,
        s: seq.dimension() - lo,
    })
}

/// Relative quermassintegrals `W_0..W_n` of a pair with `dim E = r`,
/// `dim K = s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct QuermassTuple<T = BigRational> {
    w: Vec<T>,
    r: usize,
    s: usize,
}

impl<T: Scalar> QuermassTuple<T> {
    /// Checks contiguous positive support and `W_i^2 >= W_{i-1} W_{i+1}`.
    pub fn new(w: Vec<T>, tol: Tolerance) -> Result<Self> {
        let q = Self::new_unchecked(w)?;
        if let Some(index) = q.af_violation(tol) {
            return Err(Error::UlcViolation { index });
        }
        Ok(q)
    }

    /// Checks only nonnegativity and contiguous support, skipping the
    /// Aleksandrov-Fenchel inequalities. Used to push invalid tuples through
    /// the realization pipeline.
    pub fn new_unchecked(w: Vec<T>) -> Result<Self> {
        let seq = CoeffSequence::new(w)?;
        let (lo, hi) = support_interval(&seq)?;
        let n = seq.dimension();
        Ok(Self {
            w: seq.into_coeffs(),
            r: hi,
            s: n - lo,
        })
    }

    pub fn dimension(&self) -> usize {
        self.w.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.w
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `(n - s, r)`.
    pub fn support(&self) -> (usize, usize) {
        (self.dimension() - self.s, self.r)
    }

    pub fn to_f64(&self) -> QuermassTuple<f64> {
        QuermassTuple {
            w: self.w.iter().map(Scalar::to_f64).collect(),
            r: self.r,
            s: self.s,
        }
    }

    pub fn scaled(&self, factor: &T) -> Result<Self> {
        Self::new_unchecked(self.w.iter().map(|x| x.clone() * factor.clone()).collect())
    }

    fn af_rows(&self) -> impl Iterator<Item = (usize, T, T)> + '_ {
        (1..self.dimension()).map(move |i| {
            let lhs = self.w[i].clone() * self.w[i].clone();
            let rhs = self.w[i - 1].clone() * self.w[i + 1].clone();
            (i, lhs, rhs)
        })
    }

    fn af_violation(&self, tol: Tolerance) -> Option<usize> {
        self.af_rows()
            .find(|(_, lhs, rhs)| {
                let scale = T::max_of(lhs, rhs);
                !T::nonneg_within(&(lhs.clone() - rhs.clone()), &scale, tol)
            })
            .map(|(i, _, _)| i)
    }
}

/// `a_i = C(n, i) W_i`.
pub fn coeffs_from_quermass<T: Scalar>(q: &QuermassTuple<T>) -> CoeffSequence<T> {
    let n = q.dimension();
    let coeffs = q
        .values()
        .iter()
        .enumerate()
        .map(|(i, w)| binomial_in::<T>(n, i) * w.clone())
        .collect();
    CoeffSequence::new(coeffs).expect("a valid tuple has a valid coefficient sequence")
}

/// `W_i = a_i / C(n, i)`; `r`, `s` must match the support of `seq`.
pub fn quermass_from_coeffs<T: Scalar>(
    seq: &CoeffSequence<T>,
    r: usize,
    s: usize,
    tol: Tolerance,
) -> Result<QuermassTuple<T>> {
    let n = seq.dimension();
    let w: Vec<T> = seq
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.clone() / binomial_in::<T>(n, i))
        .collect();
    let q = QuermassTuple::new(w, tol)?;
    if q.r != r || q.s != s {
        return Err(Error::SupportMismatch {
            expected_r: r,
            expected_s: s,
            r: q.r,
            s: q.s,
        });
    }
    Ok(q)
}

/// Indices `1 <= i <= n-1` where `W_i^2 = W_{i-1} W_{i+1}` holds, including
/// rows where both sides vanish.
pub fn af_equalities<T: Scalar>(q: &QuermassTuple<T>, tol: Tolerance) -> Vec<usize> {
    q.af_rows()
        .filter(|(_, lhs, rhs)| {
            let scale = T::max_of(lhs, rhs);
            T::zero_within(&(lhs.clone() - rhs.clone()), &scale, tol)
        })
        .map(|(i, _, _)| i)
        .collect()
}

/// Checks that `n` nonpositive reals are the roots of a Steiner polynomial:
/// builds `prod (z - gamma_j)` exactly and validates it.
pub fn newton_check(gammas: &[f64], n: usize) -> Result<SteinerDims> {
    if gammas.len() != n {
        return Err(Error::RootCount {
            expected: n,
            got: gammas.len(),
        });
    }
    let negated = gammas
        .iter()
        .enumerate()
        .map(|(index, &g)| {
            if !g.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if g > 0.0 {
                return Err(Error::PositiveRoot { index, value: g });
            }
            Ok(rational_from_f64(-g).expect("finite"))
        })
        .collect::<Result<Vec<_>>>()?;
    // e_k of the negated roots; a_i = e_{n-i}.
    let mut e = vec![BigRational::zero(); n + 1];
    e[0] = BigRational::one();
    for x in &negated {
        for k in (1..=n).rev() {
            let term = e[k - 1].clone() * x;
            e[k] += term;
        }
    }
    e.reverse();
    let seq = CoeffSequence::with_dimension(n, e)?;
    validate_steiner(&seq, Tolerance::DEFAULT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn exact(values: &[i64]) -> CoeffSequence {
        CoeffSequence::new(values.iter().map(|&v| rational(v, 1)).collect()).unwrap()
    }

    fn pascal(n: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![1u64]];
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = vec![1u64; m + 1];
            for i in 1..m {
                row[i] = prev[i - 1] + prev[i];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 3).unwrap(), 120);
        let table = pascal(20);
        assert_eq!(table[20][7], 77520);
        assert_eq!(binomial(20, 7).unwrap(), table[20][7]);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert_eq!(binomial_big(64, 32), BigUint::from(1_832_624_140_942_590_534u64));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let table = pascal(64);
        for n in 0..=64 {
            for i in 0..=n {
                assert_eq!(binomial(n, i).unwrap(), table[n][i], "C({n},{i})");
            }
        }
    }

    #[test]
    fn binomial_rejects_out_of_range() {
        assert_eq!(binomial(3, 4), Err(Error::IndexOutOfRange { n: 3, i: 4 }));
        assert!(binomial(65, 2).is_err());
        assert_eq!(binomial_big(160, 80).to_string().len(), 47);
    }

    #[test]
    fn c_coeff_values() {
        assert_eq!(c_coeff(2, 1).unwrap(), rational(1, 4));
        assert_eq!(c_coeff(4, 2).unwrap(), rational(4, 9));
        assert_eq!(c_coeff(11, 3).unwrap(), rational(2, 3));
        assert!(c_coeff(4, 0).is_err());
        assert!(c_coeff(4, 4).is_err());
    }

    #[test]
    fn c_coeff_equals_binomial_ratio() {
        for n in 2..=40 {
            for i in 1..n {
                let b = |k| BigInt::from(binomial_big(n, k));
                let ratio = BigRational::new(b(i - 1) * b(i + 1), b(i) * b(i));
                assert_eq!(c_coeff(n, i).unwrap(), ratio);
            }
        }
    }

    #[test]
    fn c_coeff_increases_along_the_diagonal() {
        for n in 2..=40 {
            for j in 1..n {
                assert!(c_coeff(n, j).unwrap() < c_coeff(n + 1, j + 1).unwrap());
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            CoeffSequence::<f64>::new(vec![0.0, 0.0, 0.0]),
            Err(Error::AllZero)
        );
        assert_eq!(
            CoeffSequence::<f64>::new(vec![1.0, -1.0]),
            Err(Error::NegativeCoefficient { index: 1 })
        );
        assert_eq!(
            CoeffSequence::<f64>::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
        assert!(CoeffSequence::<f64>::new(vec![1.0]).is_err());
        assert!(CoeffSequence::<f64>::with_dimension(3, vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn support_interval_examples() {
        assert_eq!(support_interval(&exact(&[0, 4, 6, 4, 1])).unwrap(), (1, 4));
        assert_eq!(support_interval(&exact(&[1, 2, 1])).unwrap(), (0, 2));
        assert_eq!(
            support_interval(&exact(&[1, 0, 1])),
            Err(Error::SupportGap { index: 1 })
        );
    }

    #[test]
    fn check_ulc_examples() {
        let report = check_ulc(&exact(&[1, 2, 1]), Tolerance::DEFAULT);
        assert!(report.verdict);
        assert_eq!(report.rows[0].lhs, rational(1, 1));
        assert_eq!(report.rows[0].rhs, rational(1, 1));
        assert!(report.rows[0].equality);

        assert!(check_ulc(&exact(&[0, 4, 6, 4, 1]), Tolerance::DEFAULT).verdict);

        let report = check_ulc(&exact(&[1, 1, 1]), Tolerance::DEFAULT);
        assert!(!report.verdict);
        assert_eq!(report.first_violation(), Some(1));
        assert_eq!(report.rows[0].lhs, rational(1, 4));
    }

    #[test]
    fn check_ulc_reports_gap_without_failing_rows() {
        let report = check_ulc(&exact(&[1, 0, 1]), Tolerance::DEFAULT);
        assert_eq!(report.gap_at, Some(1));
        assert_eq!(report.support, None);
        // 0 >= 1 fails: the row is evaluated on its own.
        assert!(!report.verdict);
    }

    #[test]
    fn numeric_mode_honours_tolerance() {
        let tight = CoeffSequence::new(vec![1.0, 2.0 * (1.0 - 1e-12), 1.0]).unwrap();
        let report = check_ulc(&tight, Tolerance::DEFAULT);
        assert!(report.verdict);
        assert!(report.rows[0].equality);
        let loose = CoeffSequence::new(vec![1.0, 2.0 * (1.0 - 1e-6), 1.0]).unwrap();
        assert!(!check_ulc(&loose, Tolerance::DEFAULT).verdict);
    }

    #[test]
    fn validate_steiner_examples() {
        let p = exact(&[0, 5, 10, 10, 5, 0]);
        assert_eq!(
            validate_steiner(&p, Tolerance::DEFAULT).unwrap(),
            SteinerDims { r: 4, s: 4 }
        );
        let top = exact(&[0, 0, 0, 1]);
        assert_eq!(
            validate_steiner(&top, Tolerance::DEFAULT).unwrap(),
            SteinerDims { r: 3, s: 0 }
        );
        let constant = exact(&[3, 0, 0]);
        assert_eq!(
            validate_steiner(&constant, Tolerance::DEFAULT).unwrap(),
            SteinerDims { r: 0, s: 2 }
        );
        assert_eq!(
            validate_steiner(&exact(&[1, 1, 1]), Tolerance::DEFAULT),
            Err(Error::UlcViolation { index: 1 })
        );
        assert_eq!(
            validate_steiner(&exact(&[1, 0, 1]), Tolerance::DEFAULT),
            Err(Error::SupportGap { index: 1 })
        );
    }

    #[test]
    fn normalization_never_changes_the_verdict() {
        for values in [[1, 2, 1, 0], [0, 4, 6, 4], [1, 1, 1, 1], [2, 9, 12, 5]] {
            let seq = exact(&values);
            let normalized = seq.normalized();
            assert_eq!(normalized.sum(), BigRational::one());
            assert_eq!(
                validate_steiner(&seq, Tolerance::DEFAULT),
                validate_steiner(&normalized, Tolerance::DEFAULT)
            );
        }
    }

    #[test]
    fn perturbing_one_entry_only_touches_adjacent_rows() {
        let base = exact(&[1, 6, 15, 20, 15, 6, 1]);
        let before = check_ulc(&base, Tolerance::DEFAULT);
        assert!(before.verdict);
        let mut bumped = base.coeffs().to_vec();
        bumped[3] *= rational(10, 1);
        let after = check_ulc(&CoeffSequence::new(bumped).unwrap(), Tolerance::DEFAULT);
        for (row_before, row_after) in before.rows.iter().zip(&after.rows) {
            match row_after.i {
                2 | 4 => assert!(!row_after.holds),
                _ => assert_eq!(row_before.holds, row_after.holds),
            }
        }
    }

    #[test]
    fn quermass_dictionary_examples() {
        let q = QuermassTuple::new(
            [0, 1, 1, 1, 1].iter().map(|&v| rational(v, 1)).collect(),
            Tolerance::DEFAULT,
        )
        .unwrap();
        assert_eq!((q.r(), q.s()), (4, 3));
        assert_eq!(coeffs_from_quermass(&q), exact(&[0, 4, 6, 4, 1]));

        let q = QuermassTuple::new(vec![rational(1, 1); 3], Tolerance::DEFAULT).unwrap();
        assert_eq!(coeffs_from_quermass(&q), exact(&[1, 2, 1]));

        let back = quermass_from_coeffs(&exact(&[0, 4, 6, 4, 1]), 4, 3, Tolerance::DEFAULT).unwrap();
        assert_eq!(back.values()[1], rational(1, 1));
        assert!(matches!(
            quermass_from_coeffs(&exact(&[0, 4, 6, 4, 1]), 4, 4, Tolerance::DEFAULT),
            Err(Error::SupportMismatch { .. })
        ));
    }

    #[test]
    fn af_equalities_examples() {
        let tuple = |values: Vec<BigRational>| QuermassTuple::new(values, Tolerance::DEFAULT).unwrap();
        let q = tuple([0, 1, 1, 1, 1].iter().map(|&v| rational(v, 1)).collect());
        assert_eq!(af_equalities(&q, Tolerance::DEFAULT), vec![2, 3]);

        let q = tuple(vec![rational(2, 1), rational(1, 1), rational(1, 2), rational(1, 4), rational(0, 1)]);
        assert_eq!(af_equalities(&q, Tolerance::DEFAULT), vec![1, 2]);

        let q = tuple(vec![rational(1, 1); 3]);
        assert_eq!(af_equalities(&q, Tolerance::DEFAULT), vec![1]);
    }

    #[test]
    fn newton_check_examples() {
        assert_eq!(
            newton_check(&[-1.0, -1.0, -1.0], 3).unwrap(),
            SteinerDims { r: 3, s: 3 }
        );
        // e(0, 0, 2) = (1, 2, 0, 0) reversed: a = (0, 0, 2, 1).
        assert_eq!(
            newton_check(&[0.0, 0.0, -2.0], 3).unwrap(),
            SteinerDims { r: 3, s: 1 }
        );
        assert!(matches!(
            newton_check(&[-1.0, 0.5], 2),
            Err(Error::PositiveRoot { index: 1, .. })
        ));
        assert!(newton_check(&[-1.0], 2).is_err());
    }
}
