//! Complex polynomials, root extraction and the root-side form of the
//! Steiner characterization.

mod roots;
mod steiner;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::ulc::CoeffSequence;

pub use roots::{min_angle_root, roots, roots_of, Root, RootSet, DEFAULT_ROOT_TOL, MAX_ITERATIONS};
pub use steiner::{
    antiderivative_steiner, antiderivative_cap, derivative_steiner, reciprocal, steiner_from_roots,
    truncated_binomial, truncated_binomial_f64,
};

/// Polynomial with complex coefficients in ascending powers, trimmed so the
/// leading coefficient is nonzero (the zero polynomial keeps one zero entry).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_sequence<T: Scalar>(seq: &CoeffSequence<T>) -> Self {
        Self::new(seq.coeffs().iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Horner evaluation, highest power first.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval(&self.coeffs, z)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect(),
        )
    }

    /// `sum |c_i| |z|^i`, the natural scale for a residual at `z`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// Horner evaluation of ascending coefficients.
pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Elementary symmetric values `e_0 = 1, e_1, ..., e_d` of `values`.
pub fn elem_sym(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (count, &z) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            let term = e[k - 1] * z;
            e[k] += term;
        }
    }
    e
}

/// The monic polynomial `prod (z - gamma_j)`, with coefficient of `z^i` equal
/// to `(-1)^(d-i) e_(d-i)`. Imaginary parts at most `tol` times the scale
/// `e_i(|gamma|)` are truncated to zero, which makes the coefficients of a
/// conjugate-closed set exactly real.
pub fn poly_from_roots(values: &[Complex64], tol: f64) -> ComplexPolynomial {
    let d = values.len();
    let e = elem_sym(values);
    let magnitudes: Vec<Complex64> = values.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect();
    let scale = elem_sym(&magnitudes);
    let coeffs = (0..=d)
        .map(|i| {
            let k = d - i;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let mut c = e[k] * sign;
            if c.im.abs() <= tol * scale[k].re {
                c.im = 0.0;
            }
            c
        })
        .collect();
    ComplexPolynomial::new(coeffs)
}
