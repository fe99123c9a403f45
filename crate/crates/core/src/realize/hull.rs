//! Volumes of small convex hulls.
//!
//! Facets are found by brute force: every `d`-subset of the points spans a
//! candidate hyperplane, kept when all points lie on one side. The volume is
//! the sum of cones over the facets from the vertex centroid, with facet
//! volumes computed recursively one dimension down, in integer arithmetic
//! on the binary coordinates scaled to a common denominator. Above dimension four the
//! volume is estimated by sampling the bounding box against the facet list.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest dimension handled by exact facet triangulation.
pub const EXACT_HULL_MAX_DIM: usize = 4;
pub const MC_SAMPLES: usize = 1_000_000;
pub const MC_SEED: u64 = 0x5EED;
/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.5758;

const PLANE_TOL: f64 = 1e-9;
const MC_BATCH: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    Dissection,
    HullExact,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullVolume {
    pub volume: f64,
    pub ci_halfwidth: f64,
    pub method: VolumeMethod,
    /// The points span less than the full dimension; `volume` is 0.
    pub flat: bool,
}

/// Supporting hyperplane `normal . x <= offset` with unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// Indices of the input points on the hyperplane.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub facets: Vec<Facet>,
    pub flat: bool,
    scale: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut value = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("nonempty");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            value = -value;
        }
        value *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    value
}

/// Vector orthogonal to the `d - 1` rows of `rows` (generalized cross product).
fn normal_of(rows: &[Vec<f64>], d: usize) -> Vec<f64> {
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<f64>> = rows
                .iter()
                .map(|row| (0..d).filter(|&c| c != k).map(|c| row[c]).collect())
                .collect();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            if minor.is_empty() {
                sign
            } else {
                sign * det(minor)
            }
        })
        .collect()
}

/// Orthonormal basis of the span of `vectors`, dropping dependent ones.
fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > tol {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < pos + n - k {
                break;
            }
        }
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

impl Hull {
    pub fn new(points: &[Vec<f64>], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension { min: 1, got: 0 });
        }
        if points.is_empty() {
            return Err(Error::Precondition("empty point set".into()));
        }
        if let Some(bad) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::Length {
                expected: dim,
                got: points[bad].len(),
            });
        }
        let scale = points
            .iter()
            .flat_map(|p| p.iter().map(|x| x.abs()))
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let tol = PLANE_TOL * scale;
        let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        let flat = orthonormal_basis(&diffs, tol).len() < dim;
        let mut hull = Hull {
            dim,
            points: points.to_vec(),
            facets: Vec::new(),
            flat,
            scale,
        };
        if flat {
            return Ok(hull);
        }
        if dim == 1 {
            let (lo, hi) = min_max(points.iter().map(|p| p[0]));
            let on = |v: f64| -> Vec<usize> {
                (0..points.len()).filter(|&i| (points[i][0] - v).abs() <= tol).collect()
            };
            hull.facets.push(Facet { normal: vec![1.0], offset: hi, vertices: on(hi) });
            hull.facets.push(Facet { normal: vec![-1.0], offset: -lo, vertices: on(lo) });
            return Ok(hull);
        }
        let mut seen = BTreeSet::new();
        let mut facets = Vec::new();
        combinations(points.len(), dim, |subset| {
            let base = &points[subset[0]];
            let rows: Vec<Vec<f64>> = subset[1..].iter().map(|&i| sub(&points[i], base)).collect();
            let normal = normal_of(&rows, dim);
            let length = dot(&normal, &normal).sqrt();
            if length <= 0.0 || !length.is_finite() {
                return;
            }
            // Rows must span a hyperplane; a tiny normal means a degenerate subset.
            if orthonormal_basis(&rows, tol).len() < dim - 1 {
                return;
            }
            let mut normal: Vec<f64> = normal.into_iter().map(|x| x / length).collect();
            let mut offset = dot(&normal, base);
            let (mut below, mut above) = (false, false);
            for p in points {
                let side = dot(&normal, p) - offset;
                below |= side < -tol;
                above |= side > tol;
            }
            if below && above {
                return;
            }
            if above {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
            }
            let on: Vec<usize> = (0..points.len())
                .filter(|&i| (dot(&normal, &points[i]) - offset).abs() <= tol)
                .collect();
            if seen.insert(on.clone()) {
                facets.push(Facet { normal, offset, vertices: on });
            }
        });
        hull.facets = facets;
        Ok(hull)
    }

    /// `x` satisfies every facet inequality up to `tol` times the hull scale.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if self.flat {
            return false;
        }
        let slack = tol * self.scale;
        self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset + slack)
    }

    /// Volume by coning facets over the vertex centroid, evaluated exactly
    /// on the binary values of the coordinates.
    pub fn exact_volume(&self) -> f64 {
        if self.flat {
            return 0.0;
        }
        let (lattice, denom) = to_lattice(&self.points);
        let volume = lattice_volume(&lattice, self.dim) / BigRational::from_integer(denom.pow(self.dim as u32));
        Scalar::to_f64(&volume)
    }

    /// Bounding-box sampling with a 99% normal-approximation interval.
    pub fn monte_carlo_volume(&self, samples: usize, seed: u64) -> (f64, f64) {
        if self.flat || samples == 0 {
            return (0.0, 0.0);
        }
        let d = self.dim;
        let bounds: Vec<(f64, f64)> = (0..d)
            .map(|k| min_max(self.points.iter().map(|p| p[k])))
            .collect();
        let box_volume: f64 = bounds.iter().map(|(lo, hi)| hi - lo).product();
        let batches = samples.div_ceil(MC_BATCH);
        let hits: usize = (0..batches)
            .into_par_iter()
            .map(|batch| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(batch as u64));
                let count = MC_BATCH.min(samples - batch * MC_BATCH);
                let mut x = vec![0.0; d];
                let mut inside = 0;
                for _ in 0..count {
                    for (xk, (lo, hi)) in x.iter_mut().zip(&bounds) {
                        *xk = rng.gen_range(*lo..=*hi);
                    }
                    if self.contains(&x, 0.0) {
                        inside += 1;
                    }
                }
                inside
            })
            .sum();
        let p = hits as f64 / samples as f64;
        let half = Z_99 * (p * (1.0 - p) / samples as f64).sqrt();
        (p * box_volume, half * box_volume)
    }
}

/// Points scaled by the common denominator of their coordinates.
fn to_lattice(points: &[Vec<f64>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let exact: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| p.iter().map(|&x| BigRational::from_float(x).expect("finite coordinates")).collect())
        .collect();
    let denom = exact
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lattice = exact
        .iter()
        .map(|p| p.iter().map(|x| (x * &denom).to_integer()).collect())
        .collect();
    (lattice, denom)
}

fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => (0..n)
            .filter(|&c| !m[0][c].is_zero())
            .map(|c| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| (0..n).filter(|&k| k != c).map(|k| row[k].clone()).collect())
                    .collect();
                let term = &m[0][c] * det_int(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Volume of the hull of integer points in `Z^d`.
///
/// Each facet with integer normal `N` contributes `h vol(F) / d`; dropping a
/// coordinate `k` with `N_k != 0` scales `vol(F)` by `|N_k| / |N|` and `h` is
/// `(b - N c) / |N|`, so the product stays rational.
fn lattice_volume(points: &[Vec<BigInt>], d: usize) -> BigRational {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if d == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().expect("nonempty");
        let hi = pts.iter().map(|p| &p[0]).max().expect("nonempty");
        return BigRational::from_integer(hi - lo);
    }
    if pts.len() <= d {
        return BigRational::zero();
    }
    let m = BigInt::from(pts.len());
    let centroid_sum: Vec<BigInt> = (0..d).map(|k| pts.iter().map(|p| &p[k]).sum()).collect();
    let mut seen = BTreeSet::new();
    let mut total = BigRational::zero();
    combinations(pts.len(), d, |subset| {
        let base = &pts[subset[0]];
        let rows: Vec<Vec<BigInt>> = subset[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal: Vec<BigInt> = (0..d)
            .map(|k| {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|row| (0..d).filter(|&c| c != k).map(|c| row[c].clone()).collect())
                    .collect();
                let v = det_int(&minor);
                if k % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let Some(k) = normal.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let mut offset = dot_int(&normal, base);
        let (mut below, mut above) = (false, false);
        let mut on = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            match (dot_int(&normal, p) - &offset).sign() {
                Sign::Minus => below = true,
                Sign::Plus => above = true,
                Sign::NoSign => on.push(i),
            }
        }
        if (below && above) || !seen.insert(on.clone()) {
            return;
        }
        if above {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        let projected: Vec<Vec<BigInt>> = on
            .iter()
            .map(|&i| pts[i].iter().enumerate().filter(|(c, _)| *c != k).map(|(_, x)| x.clone()).collect())
            .collect();
        let area = lattice_volume(&projected, d - 1);
        let height = BigRational::new(
            &m * &offset - dot_int(&normal, &centroid_sum),
            &m * normal[k].abs() * BigInt::from(d),
        );
        total += height * area;
    });
    total
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Volume of `conv(points)` in `R^dim`: exact up to dimension four, Monte
/// Carlo with the default sample count and seed above.
pub fn hull_volume(points: &[Vec<f64>], dim: usize) -> Result<HullVolume> {
    hull_volume_with(points, dim, MC_SAMPLES, MC_SEED)
}

pub fn hull_volume_with(points: &[Vec<f64>], dim: usize, samples: usize, seed: u64) -> Result<HullVolume> {
    let hull = Hull::new(points, dim)?;
    if hull.flat {
        let method = if dim <= EXACT_HULL_MAX_DIM {
            VolumeMethod::HullExact
        } else {
            VolumeMethod::MonteCarlo
        };
        return Ok(HullVolume { volume: 0.0, ci_halfwidth: 0.0, method, flat: true });
    }
    if dim <= EXACT_HULL_MAX_DIM {
        Ok(HullVolume {
            volume: hull.exact_volume(),
            ci_halfwidth: 0.0,
            method: VolumeMethod::HullExact,
            flat: false,
        })
    } else {
        let (volume, ci_halfwidth) = hull.monte_carlo_volume(samples, seed);
        Ok(HullVolume { volume, ci_halfwidth, method: VolumeMethod::MonteCarlo, flat: false })
    }
}
