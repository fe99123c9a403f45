use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scan::table1_scan;
use crate::error::{Error, Result};
use crate::poly::{min_angle_root, roots_of, truncated_binomial_f64};
use crate::scalar::{rational, Scalar, Tolerance};
use crate::ulc::{validate_steiner, CoeffSequence};

/// Largest dimension accepted by [`accumulation_check`].
pub const ACCUMULATION_MAX_N: usize = 160;

/// `z f(z)` viewed in `R^(n+1)`: the prism over `E` of height one keeps the
/// nonzero roots and adds the root 0.
pub fn prism_embed<T: Scalar>(seq: &CoeffSequence<T>) -> Result<CoeffSequence<T>> {
    validate_steiner(seq, Tolerance::DEFAULT)?;
    let coeffs = std::iter::once(T::zero()).chain(seq.coeffs().iter().cloned()).collect();
    let out = CoeffSequence::new(coeffs)?;
    validate_steiner(&out, Tolerance::DEFAULT)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccumulationRow {
    pub n: usize,
    pub k: usize,
    /// Root of `P^n_{0,k}` nearest to 1 and its distance.
    pub closest_root: Complex64,
    pub min_distance_to_one: f64,
    /// Roots inside `|z - 1/3| <= 2/3`.
    pub roots_in_disk: usize,
    /// `max | |z| - |1 + z|^2 / 4 |` over those roots.
    pub max_curve_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccumulationReport {
    pub rows: Vec<AccumulationRow>,
    /// Distances to 1 decrease strictly along the given dimensions.
    pub decreasing: bool,
    /// Exact check that 1 lies on the limit curve and on the disk boundary.
    pub one_on_curve: bool,
}

/// `|1| = |1 + 1|^2 / 4` and `|1 - 1/3| = 2/3`, in rationals: the curve
/// `|z| = a (1 - a)^(1/a - 1) |1 + z|^(1/a)` at `a = 1/2` and the disk
/// `|z - a^2 / (1 - a^2)| <= a / (1 - a^2)` both pass through 1.
pub fn one_on_accumulation_curve() -> bool {
    let a = rational(1, 2);
    let z = BigRational::one();
    let one_minus = BigRational::one() - a.clone();
    // 1/a - 1 = 1 and 1/a = 2 at a = 1/2.
    let rhs = a.clone() * one_minus.clone() * (BigRational::one() + z.clone()) * (BigRational::one() + z.clone());
    let center = a.clone() * a.clone() / (BigRational::one() - a.clone() * a.clone());
    let radius = a.clone() / (BigRational::one() - a.clone() * a);
    let on_curve = z == rhs;
    let on_disk_boundary = (z - center) == radius;
    on_curve && on_disk_boundary && !one_minus.is_zero()
}

/// Roots of `P^n_{0, floor(n/2)}` against the limit set of the family.
pub fn accumulation_check(ns: &[usize]) -> Result<AccumulationReport> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if !(2..=ACCUMULATION_MAX_N).contains(&n) {
            return Err(Error::Precondition(format!(
                "accumulation check needs 2 <= n <= {ACCUMULATION_MAX_N}, got {n}"
            )));
        }
        let k = n / 2;
        let seq = truncated_binomial_f64(n, 0, k)?;
        let roots = roots_of(&seq).map_err(|e| Error::Stage {
            stage: "accumulation roots",
            message: format!("n = {n}: {e}"),
        })?;
        let one = Complex64::new(1.0, 0.0);
        let center = Complex64::new(1.0 / 3.0, 0.0);
        let mut closest = Complex64::new(f64::NAN, f64::NAN);
        let mut min_distance = f64::INFINITY;
        let mut in_disk = 0;
        let mut residual = 0.0f64;
        for r in &roots.roots {
            let z = r.value;
            let d = (z - one).norm();
            if d < min_distance {
                min_distance = d;
                closest = Complex64::new(z.re, z.im.abs());
            }
            if (z - center).norm() <= 2.0 / 3.0 {
                in_disk += r.multiplicity;
                residual = residual.max((z.norm() - (one + z).norm_sqr() / 4.0).abs());
            }
        }
        rows.push(AccumulationRow {
            n,
            k,
            closest_root: closest,
            min_distance_to_one: min_distance,
            roots_in_disk: in_disk,
            max_curve_residual: residual,
        });
    }
    let decreasing = rows
        .windows(2)
        .all(|w| w[1].min_distance_to_one < w[0].min_distance_to_one);
    Ok(AccumulationReport {
        rows,
        decreasing,
        one_on_curve: one_on_accumulation_curve(),
    })
}

/// `vol(E) P^n_{1,n}`, the polynomial of a cap body over a full-dimensional
/// simplex.
pub fn capbody_polynomial(n: usize, vol_e: f64) -> Result<CoeffSequence<f64>> {
    if n < 3 {
        return Err(Error::Dimension { min: 3, got: n });
    }
    if !(vol_e.is_finite() && vol_e > 0.0) {
        return Err(Error::Precondition(format!("volume must be positive, got {vol_e}")));
    }
    truncated_binomial_f64(n, 1, n)?.scaled(&vol_e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapBodyReport {
    pub n: usize,
    pub gamma: Complex64,
    pub alpha: f64,
    pub max_real_part: f64,
    pub table_alpha: f64,
    /// The cap-body root lies strictly inside the table-scan cone.
    pub strictly_inside: bool,
}

/// Compares the minimal-angle root of the cap-body polynomial with the table
/// scan in the same dimension.
pub fn capbody_check(n: usize, vol_e: f64) -> Result<CapBodyReport> {
    let seq = capbody_polynomial(n, vol_e)?;
    let roots = roots_of(&seq)?;
    let (gamma, alpha) = min_angle_root(&roots)?;
    let max_real_part = roots.roots.iter().map(|r| r.value.re).fold(f64::NEG_INFINITY, f64::max);
    let row = table1_scan(n)?;
    Ok(CapBodyReport {
        n,
        gamma,
        alpha,
        max_real_part,
        table_alpha: row.alpha,
        strictly_inside: alpha > row.alpha + 1e-9,
    })
}
