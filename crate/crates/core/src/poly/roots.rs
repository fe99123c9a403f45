use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{eval, ComplexPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::ulc::CoeffSequence;

/// Convergence tolerance used when callers do not pick one.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Iteration cap of the simultaneous iteration.
pub const MAX_ITERATIONS: usize = 500;

/// Rotation of the initial ring (radians); breaks the symmetry of real inputs.
const RING_OFFSET: f64 = 0.618_033_988_749_894_8;

/// Angles closer than this count as ties in [`min_angle_root`].
const ANGLE_TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// `|p(value)|` on the input polynomial after polishing.
    pub residual: f64,
}

/// Roots of a polynomial. The root `0` is not listed in `roots`; its exact
/// multiplicity is `zero_multiplicity`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub zero_multiplicity: usize,
    pub degree: usize,
    pub iterations: usize,
}

impl RootSet {
    /// Every root repeated by multiplicity, zeros last.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = self.expanded_nonzero();
        out.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), self.zero_multiplicity));
        out
    }

    pub fn expanded_nonzero(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.zero_multiplicity + self.roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    /// Nonzero root with the largest real part.
    pub fn max_real_part(&self) -> Option<Complex64> {
        self.roots
            .iter()
            .map(|r| r.value)
            .max_by(|a, b| a.re.total_cmp(&b.re).then(a.im.abs().total_cmp(&b.im.abs())))
    }
}

/// Roots of the real polynomial `sum a_i z^i`.
pub fn roots_of<T: Scalar>(seq: &CoeffSequence<T>) -> Result<RootSet> {
    roots(&ComplexPolynomial::from_sequence(seq), DEFAULT_ROOT_TOL)
}

/// All complex roots of `p`.
///
/// The zero root is read off the low-order zero coefficients. The rest come
/// from Aberth-Ehrlich iteration on the max-scaled cofactor, started from a
/// rotated ring of radius `|c_0 / c_d|^(1/d)`, followed by Newton polishing on
/// `p`, clustering of multiple roots, and (for real `p`) exact conjugate
/// pairing.
pub fn roots(p: &ComplexPolynomial, tol: f64) -> Result<RootSet> {
    let degree = p.degree();
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let zero_multiplicity = p
        .coeffs()
        .iter()
        .position(|c| c.norm() != 0.0)
        .expect("trimmed polynomial has a nonzero leading coefficient");
    let cofactor = &p.coeffs()[zero_multiplicity..];
    let mut set = RootSet {
        roots: Vec::new(),
        zero_multiplicity,
        degree,
        iterations: 0,
    };
    if cofactor.len() == 1 {
        return Ok(set);
    }

    let scale = cofactor.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scaled: Vec<Complex64> = cofactor.iter().map(|c| c / scale).collect();
    let (mut values, iterations) = aberth(&scaled, tol)?;
    set.iterations = iterations;

    for z in values.iter_mut() {
        *z = newton_polish(p, *z, 5);
    }
    let mut clustered = cluster(p, &values, tol);
    if p.is_real() {
        enforce_conjugate_pairs(&mut clustered, tol);
    }
    clustered.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    for root in clustered.iter_mut() {
        root.residual = p.eval(root.value).norm();
    }
    set.roots = clustered;
    Ok(set)
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + c.norm();
    }
    (p, dp, bound)
}

fn aberth(coeffs: &[Complex64], tol: f64) -> Result<(Vec<Complex64>, usize)> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Ok((vec![-coeffs[0] / coeffs[1]], 0));
    }
    let radius = (coeffs[0].norm() / coeffs[d].norm()).powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + RING_OFFSET))
        .collect();
    let mut done = vec![false; d];
    let roundoff = 4.0 * d as f64 * f64::EPSILON;

    for iteration in 1..=MAX_ITERATIONS {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (value, slope, bound) = eval_with_derivative(coeffs, z[i]);
            if value.norm() <= roundoff * bound {
                done[i] = true;
                continue;
            }
            let ratio = value / slope;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                // Stationary point or coincident iterates: nudge and retry.
                let nudge = Complex64::from_polar(1e-3 * (1.0 + z[i].norm()), iteration as f64);
                z[i] += nudge;
                continue;
            }
            z[i] -= step;
            if step.norm() <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&flag| flag) {
            return Ok((z, iteration));
        }
    }
    let residuals = z.iter().map(|&x| eval(coeffs, x).norm()).collect();
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        best: z,
        residuals,
    })
}

fn newton_polish(p: &ComplexPolynomial, mut z: Complex64, steps: usize) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..steps {
        if best == 0.0 {
            break;
        }
        let (value, slope, _) = eval_with_derivative(p.coeffs(), z);
        let candidate = z - value / slope;
        if !(candidate.re.is_finite() && candidate.im.is_finite()) {
            break;
        }
        let residual = p.eval(candidate).norm();
        if residual >= best {
            break;
        }
        z = candidate;
        best = residual;
    }
    z
}

/// Groups iterates that approximate one multiple root. A group of `m` values
/// qualifies when all lie within `tol^(1/m) (1 + |center|)` of their centroid
/// and every other iterate is at least ten radii away.
fn cluster(p: &ComplexPolynomial, values: &[Complex64], tol: f64) -> Vec<Root> {
    let mut assigned = vec![false; values.len()];
    let mut out = Vec::new();
    for i in 0..values.len() {
        if assigned[i] {
            continue;
        }
        let mut order: Vec<usize> = (0..values.len()).filter(|&j| !assigned[j] && j != i).collect();
        order.sort_by(|&a, &b| {
            (values[a] - values[i])
                .norm()
                .total_cmp(&(values[b] - values[i]).norm())
        });
        let mut chosen = vec![i];
        for m in (2..=order.len() + 1).rev() {
            let members: Vec<usize> = std::iter::once(i).chain(order[..m - 1].iter().copied()).collect();
            let center = members.iter().map(|&j| values[j]).sum::<Complex64>() / m as f64;
            let radius = members
                .iter()
                .map(|&j| (values[j] - center).norm())
                .fold(0.0, f64::max);
            if radius > tol.powf(1.0 / m as f64) * (1.0 + center.norm()) {
                continue;
            }
            let separation = (0..values.len())
                .filter(|j| !members.contains(j))
                .map(|j| (values[j] - center).norm())
                .fold(f64::INFINITY, f64::min);
            if separation > 10.0 * radius {
                chosen = members;
                break;
            }
        }
        for &j in &chosen {
            assigned[j] = true;
        }
        let m = chosen.len();
        let value = if m == 1 {
            values[i]
        } else {
            let center = chosen.iter().map(|&j| values[j]).sum::<Complex64>() / m as f64;
            polish_multiple(p, center, m)
        };
        out.push(Root {
            value,
            multiplicity: m,
            residual: 0.0,
        });
    }
    out
}

/// A root of multiplicity `m` is a simple root of the `(m-1)`-th derivative.
fn polish_multiple(p: &ComplexPolynomial, center: Complex64, m: usize) -> Complex64 {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    newton_polish(&q, center, 5)
}

/// Makes a root list of a real polynomial conjugate-closed bitwise: partners
/// are averaged, unpaired near-real roots become real.
fn enforce_conjugate_pairs(roots: &mut [Root], tol: f64) {
    let near_real = tol.sqrt();
    for root in roots.iter_mut() {
        if root.value.im.abs() <= near_real * (1.0 + root.value.norm()) {
            root.value.im = 0.0;
        }
    }
    let mut upper: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].value.im > 0.0).collect();
    upper.sort_by(|&a, &b| roots[b].value.im.total_cmp(&roots[a].value.im));
    let mut lower: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].value.im < 0.0).collect();
    for u in upper {
        let target = roots[u].value;
        let partner = lower
            .iter()
            .enumerate()
            .filter(|(_, &l)| roots[l].multiplicity == roots[u].multiplicity)
            .min_by(|(_, &a), (_, &b)| {
                (roots[a].value.conj() - target)
                    .norm()
                    .total_cmp(&(roots[b].value.conj() - target).norm())
            })
            .map(|(pos, &l)| (pos, l));
        match partner {
            Some((pos, l)) => {
                lower.swap_remove(pos);
                let mean = (target + roots[l].value.conj()) / 2.0;
                roots[u].value = mean;
                roots[l].value = mean.conj();
            }
            None => roots[u].value.im = 0.0,
        }
    }
    for l in lower {
        roots[l].value.im = 0.0;
    }
}

/// The nonzero root of minimal principal argument in the closed upper
/// half-plane, with its angle in `(0, pi]`. Ties prefer the larger modulus,
/// then the smaller `(re, im)`.
pub fn min_angle_root(rs: &RootSet) -> Result<(Complex64, f64)> {
    let mut best: Option<(Complex64, f64)> = None;
    for root in &rs.roots {
        let z = Complex64::new(root.value.re, root.value.im.abs());
        if z.im == 0.0 && z.re >= 0.0 {
            continue;
        }
        let alpha = z.im.atan2(z.re);
        best = Some(match best {
            None => (z, alpha),
            Some(current) => match compare_candidates((z, alpha), current) {
                Ordering::Less => (z, alpha),
                _ => current,
            },
        });
    }
    best.ok_or(Error::OnlyTrivialRoots)
}

fn compare_candidates(a: (Complex64, f64), b: (Complex64, f64)) -> Ordering {
    if (a.1 - b.1).abs() > ANGLE_TIE {
        return a.1.total_cmp(&b.1);
    }
    b.0.norm()
        .total_cmp(&a.0.norm())
        .then(a.0.re.total_cmp(&b.0.re))
        .then(a.0.im.total_cmp(&b.0.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{poly_from_roots, truncated_binomial_f64};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots_real(coeffs: &[f64]) -> RootSet {
        roots(&ComplexPolynomial::from_real(coeffs), DEFAULT_ROOT_TOL).unwrap()
    }

    #[test]
    fn quadratic_pair() {
        let rs = roots_real(&[2.0, 2.0, 1.0]);
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0].value - c(-1.0, -1.0)).norm() < 1e-14);
        assert_eq!(rs.roots[0].value, rs.roots[1].value.conj());
    }

    #[test]
    fn zero_roots_are_exact() {
        let rs = roots_real(&[0.0, 3.0, 3.0, 1.0]);
        assert_eq!(rs.zero_multiplicity, 1);
        let expected = c(-1.5, 3f64.sqrt() / 2.0);
        assert!(rs.roots.iter().any(|r| (r.value - expected).norm() < 1e-12));
        assert_eq!(rs.total_multiplicity(), 3);
    }

    #[test]
    fn repeated_root_is_clustered() {
        let rs = roots_real(&[1.0, 5.0, 10.0, 10.0, 5.0, 1.0]);
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 5);
        assert!((rs.roots[0].value - c(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn binomial_powers_cluster() {
        for n in 1..=12 {
            let seq = truncated_binomial_f64(n, 0, n).unwrap();
            let rs = roots_of(&seq).unwrap();
            assert_eq!(rs.roots.len(), 1, "n = {n}: {:?}", rs.roots);
            assert_eq!(rs.roots[0].multiplicity, n);
            assert!((rs.roots[0].value + 1.0).norm() < 1e-8);
        }
    }

    #[test]
    fn min_angle_examples() {
        let p = truncated_binomial_f64(4, 1, 4).unwrap();
        let (gamma, alpha) = min_angle_root(&roots_of(&p).unwrap()).unwrap();
        assert!((gamma - c(-1.0, 1.0)).norm() < 1e-12);
        assert!((alpha - 3.0 * PI / 4.0).abs() < 1e-12);

        let (gamma, alpha) = min_angle_root(&roots_real(&[1.0, 3.0, 3.0, 1.0])).unwrap();
        assert_eq!(alpha, PI);
        assert!((gamma + 1.0).norm() < 1e-8);

        let p = truncated_binomial_f64(10, 3, 8).unwrap();
        let (gamma, alpha) = min_angle_root(&roots_of(&p).unwrap()).unwrap();
        assert!((alpha - 1.5574).abs() < 1e-3);
        assert!((gamma.re - 0.0158).abs() < 1e-3);
        assert!((gamma.im - 1.1903).abs() < 1e-3);
    }

    #[test]
    fn only_trivial_roots() {
        let rs = roots_real(&[0.0, 0.0, 1.0]);
        assert_eq!(min_angle_root(&rs), Err(Error::OnlyTrivialRoots));
        assert_eq!(roots_real(&[0.0, 0.0, 1.0]).zero_multiplicity, 2);
    }

    #[test]
    fn degree_zero_rejected() {
        let p = ComplexPolynomial::from_real(&[3.0]);
        assert_eq!(roots(&p, DEFAULT_ROOT_TOL), Err(Error::DegreeZero));
    }

    #[test]
    fn complex_coefficients() {
        let target = [c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let p = poly_from_roots(&target, 0.0);
        let rs = roots(&p, DEFAULT_ROOT_TOL).unwrap();
        for t in target {
            assert!(rs.roots.iter().any(|r| (r.value - t).norm() < 1e-10));
        }
    }

    #[test]
    fn high_degree_partial_binomial() {
        let p = truncated_binomial_f64(160, 0, 80).unwrap();
        let rs = roots_of(&p).unwrap();
        assert_eq!(rs.total_multiplicity(), 80);
        let poly = ComplexPolynomial::from_sequence(&p);
        for root in &rs.roots {
            let bound = poly.abs_eval(root.value).max(1.0);
            assert!(root.residual <= 1e-9 * bound, "{root:?}");
        }
    }
}
