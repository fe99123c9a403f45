//! Algebra of low-dimensional boundary cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{steiner_from_roots, ComplexPolynomial};
use crate::scalar::{Scalar, Tolerance};
use crate::ulc::{af_equalities, binomial_in, validate_steiner, CoeffSequence, QuermassTuple};

/// Whether `-a +- b i` and `-c` are together the roots of a Steiner
/// polynomial in `R^3`: either `c <= a - sqrt(3) b` or
/// `c >= (a^2 + b^2) / (a - sqrt(3) b)`.
pub fn r3_real_root_compat(a: f64, b: f64, c: f64) -> Result<bool> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Precondition(format!("{name} must be finite and nonnegative, got {v}")));
        }
    }
    let gap = a - 3f64.sqrt() * b;
    if gap < 0.0 {
        return Err(Error::Precondition(format!(
            "-a + bi lies outside the three-dimensional cone (a - sqrt(3) b = {gap})"
        )));
    }
    if c <= gap {
        return Ok(true);
    }
    Ok(gap > 0.0 && c >= (a * a + b * b) / gap)
}

/// The same question answered by [`steiner_from_roots`].
pub fn r3_via_roots(a: f64, b: f64, c: f64, tol: f64) -> bool {
    let gammas = [Complex64::new(-a, b), Complex64::new(-a, -b), Complex64::new(-c, 0.0)];
    let s = if c == 0.0 { 2 } else { 3 };
    steiner_from_roots(&gammas, 3, 3, s, tol).is_ok()
}

/// One inequality of the quartic boundary system with its value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub expression: String,
    pub value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFamily {
    /// `f = W_4 (z^2 + 2z + 2)(z^2 + cz + d)`.
    Quartic { c: f64, d: f64, inequalities: Vec<InequalityCheck> },
    /// `f = (z^2 + 2z + 2)(cz + d)` with `dim E = 3`.
    Cubic { c: f64, d: f64, ratios: [f64; 4] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct R4Report {
    pub family: BoundaryFamily,
    pub quermass: Vec<f64>,
    pub af_equalities: Vec<usize>,
    pub certified: bool,
    /// Names of the failing conditions when not certified.
    pub violated: Vec<String>,
}

/// The three polynomial inequalities in `(c, d)` that ultra-logconcavity of
/// `(z^2 + 2z + 2)(z^2 + cz + d)` reduces to.
pub fn r4_inequalities<T: Scalar>(c: &T, d: &T, tol: Tolerance) -> Vec<InequalityCheck> {
    let k = |v: u64| T::from_u64(v);
    let c2 = c.clone() * c.clone();
    let d2 = d.clone() * d.clone();
    let i3 = k(3) * c2.clone() - k(4) * c.clone() - k(8) * d.clone() - k(4);
    let i2 = c2.clone() + (d.clone() + k(2)) * c.clone() - k(2) * (d2.clone() - k(5) * d.clone() + k(4));
    let i1 = k(3) * c2.clone() - k(2) * c.clone() * d.clone() - d2.clone() - k(8) * d.clone();
    let scale = T::max_of(&k(1), &T::max_of(&c2, &d2)) * k(16);
    let neg_i2 = -i2.clone();
    vec![
        InequalityCheck {
            name: "I3".into(),
            expression: "3c^2 - 4c - 8d - 4 >= 0".into(),
            value: i3.to_f64(),
            holds: T::nonneg_within(&i3, &scale, tol),
        },
        InequalityCheck {
            name: "I2".into(),
            expression: "c^2 + (d + 2)c - 2(d^2 - 5d + 4) <= 0".into(),
            value: i2.to_f64(),
            holds: T::nonneg_within(&neg_i2, &scale, tol),
        },
        InequalityCheck {
            name: "I1".into(),
            expression: "3c^2 - 2cd - d^2 - 8d >= 0".into(),
            value: i1.to_f64(),
            holds: T::nonneg_within(&i1, &scale, tol),
        },
    ]
}

/// Certifies a four-dimensional Steiner polynomial vanishing at `-1 + i`:
/// the quartic case must be `P^4_{1,4}` up to scale (`c = 2`, `d = 0`), the
/// cubic case must have `c = d`. Sequences that are not Steiner polynomials
/// are reported uncertified with the failing conditions named.
pub fn r4_boundary_certify<T: Scalar>(seq: &CoeffSequence<T>, tol: Tolerance) -> Result<R4Report> {
    if seq.dimension() != 4 {
        return Err(Error::Precondition(format!("needs n = 4, got {}", seq.dimension())));
    }
    let p = ComplexPolynomial::from_sequence(seq);
    let z = Complex64::new(-1.0, 1.0);
    let residual = p.eval(z).norm();
    if residual > 1e-8 * p.abs_eval(z) {
        return Err(Error::Precondition(format!("-1 + i is not a root (|f(-1+i)| = {residual:e})")));
    }
    let n = seq.dimension();
    let w: Vec<T> = seq
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.clone() / binomial_in::<T>(n, i))
        .collect();
    let q = QuermassTuple::new_unchecked(w)?;
    let quermass: Vec<f64> = q.values().iter().map(Scalar::to_f64).collect();
    let af = af_equalities(&q, tol);
    let a = seq.coeffs();
    let two = T::from_u64(2);
    let mut violated = Vec::new();
    if let Err(e) = validate_steiner(seq, tol) {
        violated.push(e.to_string());
    }
    let family = if !a[4].is_zero() {
        let c = a[3].clone() / a[4].clone() - two.clone();
        let d = a[0].clone() / (two * a[4].clone());
        let inequalities = r4_inequalities(&c, &d, tol);
        violated.extend(inequalities.iter().filter(|i| !i.holds).map(|i| i.name.clone()));
        let unit = T::from_u64(1);
        if !T::zero_within(&d, &unit, tol) {
            violated.push("d = 0".into());
        }
        if !T::zero_within(&(c.clone() - T::from_u64(2)), &unit, tol) {
            violated.push("c = 2".into());
        }
        BoundaryFamily::Quartic {
            c: c.to_f64(),
            d: d.to_f64(),
            inequalities,
        }
    } else {
        let c = a[3].clone();
        let d = a[0].clone() / two;
        let scale = T::max_of(&c, &d);
        if !T::zero_within(&(c.clone() - d.clone()), &scale, tol) {
            violated.push("c = d".into());
        }
        let w = &quermass;
        BoundaryFamily::Cubic {
            c: c.to_f64(),
            d: d.to_f64(),
            ratios: [w[0] / 2.0, w[1], 2.0 * w[2], 4.0 * w[3]],
        }
    };
    Ok(R4Report {
        family,
        quermass,
        af_equalities: af,
        certified: violated.is_empty(),
        violated,
    })
}

/// Grid points `(i, k)` with `(c, d) = (i / 100, k / 100)`, `0 <= i, k <=
/// 100 * extent`, satisfying all three quartic inequalities. Evaluated in
/// exact integer arithmetic after clearing the common denominator.
pub fn r4_grid_feasible(extent: i64) -> Vec<(i64, i64)> {
    let top = 100 * extent;
    let mut out = Vec::new();
    for i in 0..=top {
        for k in 0..=top {
            let i3 = 3 * i * i - 400 * i - 800 * k - 40_000;
            let i2 = i * i + (k + 200) * i - 2 * (k * k - 500 * k + 40_000);
            let i1 = 3 * i * i - 2 * k * i - k * k - 800 * k;
            if i3 >= 0 && i2 <= 0 && i1 >= 0 {
                out.push((i, k));
            }
        }
    }
    out
}
