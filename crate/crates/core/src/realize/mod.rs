//! Explicit simplex pairs realizing a quermassintegral tuple, and an
//! independent volume check of the realization.
//!
//! For a valid tuple with `dim E = r`, `dim K = s` the pair is
//! `K = conv{0, e_(n-s+1), ..., e_n}` and `E = conv{0, a_1 e_1, ..., a_r e_r}`
//! where `a_i = (n! W_(n-s))^(1/(n-s))` for `i <= n - s` and
//! `a_i = W_i / W_(i-1)` above. Then `W_i(K; E) = a_1 ... a_i / n!`.
//! When `s = n` that product pins `W_0 = 1/n!`, so both bodies are scaled by
//! `mu = (n! W_0)^(1/n)`, recorded as [`SimplexPair::scale`].

mod hull;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use hull::{
    hull_volume, hull_volume_with, Facet, Hull, HullVolume, VolumeMethod, EXACT_HULL_MAX_DIM,
    MC_SAMPLES, MC_SEED, Z_99,
};

use crate::error::{Error, Result};
use crate::scalar::{rational_from_f64, Scalar, Tolerance};
use crate::ulc::{binomial_in, QuermassTuple};

/// Dissection and hull volumes must agree to this relative tolerance.
pub const DISSECTION_TOL: f64 = 1e-10;
/// Recovered quermassintegrals must match to this relative tolerance.
pub const RECOVERY_TOL: f64 = 1e-6;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// The realizing sequence `alpha_1..alpha_n` and the common body scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alphas {
    pub values: Vec<f64>,
    pub scale: f64,
}

/// Computes the alpha sequence; fails if it increases on `n-s+1..r`, which
/// happens exactly when the tuple violates `W_i^2 >= W_(i-1) W_(i+1)`.
pub fn alphas_from_quermass<T: Scalar>(q: &QuermassTuple<T>) -> Result<Alphas> {
    let n = q.dimension();
    let (r, s) = (q.r(), q.s());
    let w = q.values();
    let head = n - s;

    // Ratios in the tuple's own arithmetic so exact inputs get an exact check.
    let ratios: Vec<T> = (head + 1..=r).map(|i| w[i].clone() / w[i - 1].clone()).collect();
    for (offset, pair) in ratios.windows(2).enumerate() {
        let margin = pair[0].clone() - pair[1].clone();
        let scale = T::max_of(&pair[0], &pair[1]);
        if !T::nonneg_within(&margin, &scale, Tolerance(1e-12)) {
            return Err(Error::NonMonotoneAlpha {
                index: head + 1 + offset,
                prev: pair[0].to_f64(),
                next: pair[1].to_f64(),
            });
        }
    }

    let nf = factorial(n);
    let scale = if head == 0 {
        (nf * w[0].to_f64()).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let volume_unit = scale.powi(n as i32);
    let mut values = vec![0.0; n];
    if head > 0 {
        let a = (nf * w[head].to_f64() / volume_unit).powf(1.0 / head as f64);
        values[..head].iter_mut().for_each(|v| *v = a);
    }
    for (k, ratio) in ratios.iter().enumerate() {
        values[head + k] = ratio.to_f64();
    }
    Ok(Alphas { values, scale })
}

/// `K` and `E` as vertex lists in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPair {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub alphas: Vec<f64>,
    /// Both bodies are multiplied by this factor (1 unless `s = n`).
    pub scale: f64,
    pub k_vertices: Vec<Vec<f64>>,
    pub e_vertices: Vec<Vec<f64>>,
}

pub fn build_simplex_pair<T: Scalar>(q: &QuermassTuple<T>) -> Result<SimplexPair> {
    let n = q.dimension();
    let (r, s) = (q.r(), q.s());
    let Alphas { values: alphas, scale } = alphas_from_quermass(q)?;
    let axis = |i: usize, length: f64| -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = length;
        v
    };
    let origin = vec![0.0; n];
    let k_vertices = std::iter::once(origin.clone())
        .chain((n - s..n).map(|i| axis(i, scale)))
        .collect();
    let e_vertices = std::iter::once(origin)
        .chain((0..r).map(|i| axis(i, scale * alphas[i])))
        .collect();
    Ok(SimplexPair {
        n,
        r,
        s,
        alphas,
        scale,
        k_vertices,
        e_vertices,
    })
}

/// `vol(K + lambda E)` for a pair of this shape; `method` says how it was
/// obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeSample {
    pub lambda: f64,
    pub volume: f64,
    pub method: VolumeMethod,
    pub ci_halfwidth: f64,
}

impl SimplexPair {
    /// `W_i = mu^n a_1 ... a_i / n!` on the support, zero elsewhere.
    pub fn closed_form_quermass(&self) -> Vec<f64> {
        let n = self.n;
        let unit = self.scale.powi(n as i32) / factorial(n);
        let mut product = 1.0;
        (0..=n)
            .map(|i| {
                if i > 0 {
                    product *= self.alphas[i - 1];
                }
                if i + self.s >= n && i <= self.r {
                    unit * product
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// Vertex candidates of `K + lambda E`: the origin, `e_i + lambda q_j`
    /// for `j <= i`, `e_i` for `i > r` and `lambda q_j` for `j <= n - s`.
    pub fn minkowski_vertices(&self, lambda: f64) -> Vec<Vec<f64>> {
        let n = self.n;
        let mut out = vec![vec![0.0; n]];
        for i in (n - self.s)..n {
            for j in 0..=i.min(self.r.saturating_sub(1)) {
                if j >= self.r {
                    break;
                }
                let mut v = vec![0.0; n];
                v[i] += self.scale;
                v[j] += lambda * self.scale * self.alphas[j];
                out.push(v);
            }
            if i >= self.r {
                let mut v = vec![0.0; n];
                v[i] = self.scale;
                out.push(v);
            }
        }
        for j in 0..(n - self.s) {
            let mut v = vec![0.0; n];
            v[j] = lambda * self.scale * self.alphas[j];
            out.push(v);
        }
        out
    }

    /// Every sum of a vertex of `K` and a vertex of `lambda E`.
    pub fn product_vertices(&self, lambda: f64) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        for k in &self.k_vertices {
            for e in &self.e_vertices {
                out.push(k.iter().zip(e).map(|(a, b)| a + lambda * b).collect());
            }
        }
        out
    }
}

/// Closed-form volume from the dissection into the pieces `K_m + E_m`.
pub fn dissection_volume(sp: &SimplexPair, lambda: f64) -> VolumeSample {
    let n = sp.n;
    let volume = sp
        .closed_form_quermass()
        .iter()
        .enumerate()
        .map(|(i, w)| binomial_in::<f64>(n, i) * w * lambda.powi(i as i32))
        .sum();
    VolumeSample {
        lambda,
        volume,
        method: VolumeMethod::Dissection,
        ci_halfwidth: 0.0,
    }
}

/// Volume oracle used by [`quermass_via_interpolation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeOracle {
    Dissection,
    /// Exact hull up to dimension four, sampling above.
    Hull,
    MonteCarlo { samples: usize, seed: u64 },
}

pub fn sample_volume(sp: &SimplexPair, lambda: f64, oracle: VolumeOracle) -> Result<VolumeSample> {
    let hull = match oracle {
        VolumeOracle::Dissection => return Ok(dissection_volume(sp, lambda)),
        VolumeOracle::Hull => hull_volume(&sp.minkowski_vertices(lambda), sp.n)?,
        VolumeOracle::MonteCarlo { samples, seed } => {
            let h = Hull::new(&sp.minkowski_vertices(lambda), sp.n)?;
            let (volume, ci_halfwidth) = h.monte_carlo_volume(samples, seed);
            HullVolume { volume, ci_halfwidth, method: VolumeMethod::MonteCarlo, flat: h.flat }
        }
    };
    Ok(VolumeSample {
        lambda,
        volume: hull.volume,
        method: hull.method,
        ci_halfwidth: hull.ci_halfwidth,
    })
}

/// Quermassintegrals recovered from sampled volumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuermassEstimate {
    pub values: Vec<f64>,
    /// Propagated sampling half-widths; zero for exact oracles.
    pub halfwidths: Vec<f64>,
    pub samples: Vec<VolumeSample>,
}

/// Solves `sum_i a_i lambda^i = v(lambda)` at `lambda = 1..n+1` exactly in
/// rationals. Returns the coefficients and the rows of the inverse matrix.
fn solve_vandermonde(volumes: &[f64]) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let m = volumes.len();
    let int = |v: usize| BigRational::from_integer(v.into());
    // Augmented [V | y | I].
    let mut rows: Vec<Vec<BigRational>> = (0..m)
        .map(|row| {
            let lambda = int(row + 1);
            let mut out = Vec::with_capacity(2 * m + 1);
            let mut power = BigRational::one();
            for _ in 0..m {
                out.push(power.clone());
                power *= &lambda;
            }
            let y = rational_from_f64(volumes[row]).ok_or(Error::NonFinite { index: row })?;
            out.push(y);
            out.extend((0..m).map(|c| if c == row { BigRational::one() } else { BigRational::zero() }));
            Ok(out)
        })
        .collect::<Result<_>>()?;
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or_else(|| Error::Precondition("singular interpolation system".into()))?;
        rows.swap(col, pivot);
        let inv = BigRational::one() / rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let (src, dst) = if r < col {
                    let (a, b) = rows.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &factor * s;
                }
            }
        }
    }
    let coeffs = rows.iter().map(|row| row[m].clone()).collect();
    let inverse = rows.iter().map(|row| row[m + 1..].to_vec()).collect();
    Ok((coeffs, inverse))
}

/// Samples `vol(K + lambda E)` at `lambda = 1, ..., n + 1` and interpolates
/// the Steiner coefficients.
pub fn quermass_via_interpolation(sp: &SimplexPair, oracle: VolumeOracle) -> Result<QuermassEstimate> {
    let n = sp.n;
    let samples = (1..=n + 1)
        .map(|l| sample_volume(sp, l as f64, oracle))
        .collect::<Result<Vec<_>>>()?;
    let volumes: Vec<f64> = samples.iter().map(|s| s.volume).collect();
    let (coeffs, inverse) = solve_vandermonde(&volumes)?;
    let values = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| Scalar::to_f64(&(a / binomial_in::<BigRational>(n, i))))
        .collect();
    let halfwidths = inverse
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let spread: f64 = row
                .iter()
                .zip(&samples)
                .map(|(v, s)| Scalar::to_f64(&v.abs()) * s.ci_halfwidth)
                .sum();
            spread / binomial_in::<f64>(n, i)
        })
        .collect();
    Ok(QuermassEstimate {
        values,
        halfwidths,
        samples,
    })
}

/// Per-lambda comparison of the dissection formula with the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaCheck {
    pub lambda: f64,
    pub dissection: f64,
    pub oracle: f64,
    pub ci_halfwidth: f64,
    pub relative_error: f64,
    /// Every sum of vertices of `K` and `lambda E` lies in the hull of the
    /// reduced vertex set (always `true` for the dissection oracle).
    pub contains_product_set: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub method: VolumeMethod,
    pub alphas: Vec<f64>,
    pub scale: f64,
    pub checks: Vec<LambdaCheck>,
    pub expected: Vec<f64>,
    pub recovered: Vec<f64>,
    pub halfwidths: Vec<f64>,
    pub max_relative_error: f64,
    pub passed: bool,
}

fn stage(stage: &'static str) -> impl Fn(Error) -> Error {
    move |e| Error::Stage {
        stage,
        message: e.to_string(),
    }
}

/// Runs the whole construction for `q` with the exact hull oracle up to
/// dimension four and the dissection formula above.
pub fn verify_realization<T: Scalar>(q: &QuermassTuple<T>) -> Result<RealizationReport> {
    let oracle = if q.dimension() <= EXACT_HULL_MAX_DIM {
        VolumeOracle::Hull
    } else {
        VolumeOracle::Dissection
    };
    verify_realization_with(q, oracle)
}

pub fn verify_realization_with<T: Scalar>(q: &QuermassTuple<T>, oracle: VolumeOracle) -> Result<RealizationReport> {
    let n = q.dimension();
    // Alpha monotonicity surfaces as its own error before any volume work.
    let alphas = alphas_from_quermass(q)?;
    let sp = build_simplex_pair(q).map_err(stage("build"))?;
    let estimate = quermass_via_interpolation(&sp, oracle).map_err(stage("interpolate"))?;

    let mut checks = Vec::with_capacity(n + 1);
    for sample in &estimate.samples {
        let reference = dissection_volume(&sp, sample.lambda).volume;
        let contains_product_set = match sample.method {
            VolumeMethod::Dissection => true,
            _ => {
                let hull = Hull::new(&sp.minkowski_vertices(sample.lambda), n).map_err(stage("hull"))?;
                sp.product_vertices(sample.lambda)
                    .iter()
                    .all(|p| hull.contains(p, 1e-9))
            }
        };
        checks.push(LambdaCheck {
            lambda: sample.lambda,
            dissection: reference,
            oracle: sample.volume,
            ci_halfwidth: sample.ci_halfwidth,
            relative_error: (reference - sample.volume).abs() / reference.abs().max(f64::MIN_POSITIVE),
            contains_product_set,
        });
    }

    let expected: Vec<f64> = q.values().iter().map(Scalar::to_f64).collect();
    let peak = expected.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_relative_error = 0.0f64;
    let mut within = true;
    for ((want, got), half) in expected.iter().zip(&estimate.values).zip(&estimate.halfwidths) {
        let denom = if *want == 0.0 { peak } else { want.abs() };
        let err = (got - want).abs() / denom;
        max_relative_error = max_relative_error.max(err);
        within &= if *half > 0.0 {
            (got - want).abs() <= 3.0 * half
        } else {
            err <= RECOVERY_TOL
        };
    }
    let volumes_agree = checks.iter().all(|c| {
        c.contains_product_set
            && if c.ci_halfwidth > 0.0 {
                (c.dissection - c.oracle).abs() <= 3.0 * c.ci_halfwidth
            } else {
                c.relative_error <= DISSECTION_TOL
            }
    });
    let method = estimate.samples.first().map(|s| s.method).unwrap_or(VolumeMethod::Dissection);
    Ok(RealizationReport {
        n,
        r: sp.r,
        s: sp.s,
        method,
        alphas: alphas.values,
        scale: alphas.scale,
        checks,
        expected,
        recovered: estimate.values,
        halfwidths: estimate.halfwidths,
        max_relative_error,
        passed: within && volumes_agree,
    })
}

/// One point per line, coordinates separated by spaces.
pub fn format_points(points: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for p in points {
        let line: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::truncated_binomial;
    use crate::scalar::rational;
    use crate::ulc::quermass_from_coeffs;

    fn tuple(values: &[f64]) -> QuermassTuple<f64> {
        QuermassTuple::new(values.to_vec(), Tolerance::DEFAULT).unwrap()
    }

    fn binomial_tuple(n: usize, j: usize, k: usize) -> QuermassTuple {
        let seq = truncated_binomial(n, j, k).unwrap();
        quermass_from_coeffs(&seq, k, n - j, Tolerance::DEFAULT).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let a = alphas_from_quermass(&tuple(&[0.5, 0.5, 0.5])).unwrap();
        assert_eq!(a.values, vec![1.0, 1.0]);
        assert!((a.scale - 1.0).abs() < 1e-15);

        let a = alphas_from_quermass(&tuple(&[0.0, 1.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(a.values, vec![24.0, 1.0, 1.0, 1.0]);

        let a = alphas_from_quermass(&binomial_tuple(6, 2, 5)).unwrap();
        let c = 720f64.sqrt();
        for (got, want) in a.values.iter().zip([c, c, 1.0, 1.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn full_dimensional_k_is_scaled() {
        let sp = build_simplex_pair(&tuple(&[1.0, 1.0, 1.0])).unwrap();
        assert!((sp.scale - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sp.alphas, vec![1.0, 1.0]);
        let w = sp.closed_form_quermass();
        for v in w {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn binomial_pair_vertices() {
        let sp = build_simplex_pair(&binomial_tuple(4, 1, 4)).unwrap();
        assert_eq!(sp.k_vertices.len(), 4);
        assert_eq!(sp.k_vertices[1], vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(sp.e_vertices[1], vec![24.0, 0.0, 0.0, 0.0]);
        assert_eq!(sp.e_vertices[4], vec![0.0, 0.0, 0.0, 1.0]);
        assert!((dissection_volume(&sp, 1.0).volume - 15.0).abs() < 1e-12);
    }

    #[test]
    fn dissection_examples() {
        let sp = build_simplex_pair(&tuple(&[1.0 / 6.0; 4])).unwrap();
        assert!((dissection_volume(&sp, 1.0).volume - 8.0 / 6.0).abs() < 1e-14);
        assert!((dissection_volume(&sp, 0.0).volume - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn point_body_k() {
        let q = tuple(&[0.0, 0.0, 0.0, 2.0]);
        let sp = build_simplex_pair(&q).unwrap();
        assert_eq!(sp.k_vertices, vec![vec![0.0; 3]]);
        assert!((dissection_volume(&sp, 2.0).volume - 16.0).abs() < 1e-12);
        assert!(verify_realization(&q).unwrap().passed);
    }

    #[test]
    fn point_body_e() {
        let q = tuple(&[3.0, 0.0, 0.0]);
        let sp = build_simplex_pair(&q).unwrap();
        assert_eq!(sp.e_vertices, vec![vec![0.0; 2]]);
        assert!(verify_realization(&q).unwrap().passed);
    }

    #[test]
    fn hull_matches_dissection_on_p3() {
        let sp = build_simplex_pair(&binomial_tuple(3, 1, 3)).unwrap();
        let hull = hull_volume(&sp.minkowski_vertices(1.0), 3).unwrap();
        let reference = dissection_volume(&sp, 1.0).volume;
        assert!((hull.volume - reference).abs() <= 1e-10 * reference);
    }

    #[test]
    fn interpolation_round_trip() {
        let sp = build_simplex_pair(&tuple(&[1.0, 1.0, 1.0])).unwrap();
        let est = quermass_via_interpolation(&sp, VolumeOracle::Hull).unwrap();
        for v in &est.values {
            assert!((v - 1.0).abs() < 1e-10, "{est:?}");
        }
        let report = verify_realization(&binomial_tuple(4, 1, 4)).unwrap();
        assert!(report.passed, "{report:?}");
        for (got, want) in report.recovered.iter().zip([0.0, 1.0, 1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn every_small_truncated_binomial_realizes() {
        for n in 1..=4 {
            for j in 0..n {
                for k in j + 1..=n {
                    let report = verify_realization(&binomial_tuple(n, j, k)).unwrap();
                    assert!(report.passed, "({n}, {j}, {k}): {report:?}");
                    assert_eq!(report.method, VolumeMethod::HullExact);
                }
            }
        }
    }

    #[test]
    fn exact_tuple_input() {
        let q = QuermassTuple::new(vec![rational(1, 2), rational(1, 3), rational(1, 5)], Tolerance::DEFAULT).unwrap();
        assert!(verify_realization(&q).unwrap().passed);
    }

    #[test]
    fn invalid_tuple_is_flagged_before_volumes() {
        let q = QuermassTuple::new_unchecked(vec![1.0, 1.0, 2.0, 1.0]).unwrap();
        assert!(matches!(
            verify_realization(&q),
            Err(Error::NonMonotoneAlpha { index: 1, .. })
        ));
    }

    #[test]
    fn dimension_six_uses_dissection() {
        let report = verify_realization(&binomial_tuple(6, 2, 5)).unwrap();
        assert_eq!(report.method, VolumeMethod::Dissection);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn monte_carlo_oracle_in_dimension_five() {
        let q = binomial_tuple(5, 2, 4);
        let report = verify_realization_with(&q, VolumeOracle::MonteCarlo { samples: 100_000, seed: MC_SEED }).unwrap();
        assert_eq!(report.method, VolumeMethod::MonteCarlo);
        assert!(report.checks.iter().all(|c| c.contains_product_set));
        assert!(report.checks.iter().all(|c| (c.dissection - c.oracle).abs() <= 3.0 * c.ci_halfwidth));
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![vec![0.0, 1.5], vec![-2.0, 1e-3]];
        assert_eq!(parse_points(&format_points(&pts)).unwrap(), pts);
    }
}
