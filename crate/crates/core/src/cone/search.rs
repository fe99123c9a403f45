use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::membership::{ConeEstimate, EstimateKind, Witness, WitnessSource};
use super::scan::{scan_family, table1_scan};
use crate::error::{Error, Result};
use crate::poly::{min_angle_root, roots_of};
use crate::scalar::Tolerance;
use crate::ulc::{binomial_in, validate_steiner, CoeffSequence};

/// Roots with real part above this count as leaving the left half-plane.
pub const STABILITY_THRESHOLD: f64 = 1e-9;

/// Curvature subtracted in log space to keep sampled sequences strictly
/// inside the feasible cone.
const STRICTNESS: f64 = 1e-9;

/// Independent seed for task `index` of a run seeded with `seed` (splitmix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Least concave majorant of `(i, values[i])`, evaluated at every `i`.
pub fn concave_majorant(values: &[f64]) -> Vec<f64> {
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..values.len() {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or below the chord from a to i.
            let lhs = (values[b] - values[a]) * (i - a) as f64;
            let rhs = (values[i] - values[a]) * (b - a) as f64;
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = vec![0.0; values.len()];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        for (i, slot) in out.iter_mut().enumerate().take(b + 1).skip(a) {
            let t = (i - a) as f64 / (b - a) as f64;
            *slot = values[a] + t * (values[b] - values[a]);
        }
    }
    if hull.len() == 1 {
        out[0] = values[0];
    }
    out
}

/// Makes `b` strictly concave by a tiny quadratic and shifts its maximum to 0.
fn tighten(b: &mut [f64]) {
    let mid = (b.len() - 1) as f64 / 2.0;
    for (i, v) in b.iter_mut().enumerate() {
        let x = i as f64 - mid;
        *v -= STRICTNESS * x * x;
    }
    let top = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    b.iter_mut().for_each(|v| *v -= top);
}

/// Random concave sequence of length `m`: either sorted random slopes with
/// repeated values (so some inequalities are nearly tight) or the concave
/// majorant of random values.
fn random_log_concave(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut b = vec![0.0; m];
    if m == 1 {
        return b;
    }
    if rng.gen_bool(0.5) {
        let mut slopes: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
        slopes.sort_by(|x, y| y.total_cmp(x));
        for i in 1..slopes.len() {
            if rng.gen_bool(0.3) {
                slopes[i] = slopes[i - 1];
            }
        }
        for i in 1..m {
            b[i] = b[i - 1] + slopes[i - 1];
        }
    } else {
        let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(-6.0..6.0)).collect();
        b = concave_majorant(&raw);
    }
    tighten(&mut b);
    b
}

fn sequence_from_log(n: usize, lo: usize, b: &[f64]) -> Result<CoeffSequence<f64>> {
    let mut coeffs = vec![0.0; n + 1];
    for (t, v) in b.iter().enumerate() {
        coeffs[lo + t] = binomial_in::<f64>(n, lo + t) * v.exp();
    }
    CoeffSequence::with_dimension(n, coeffs)
}

fn check_support(n: usize, (lo, hi): (usize, usize)) -> Result<()> {
    if hi > n {
        return Err(Error::IndexOutOfRange { n, i: hi });
    }
    if lo >= hi {
        return Err(Error::IndexOutOfRange { n, i: lo });
    }
    Ok(())
}

/// Random Steiner sequence in `R^n` supported on `lo..=hi`.
///
/// `log W` is drawn concave on the support, so `a_i = C(n, i) W_i` is
/// ultra-logconcave; a tiny strictly concave correction keeps the sequence
/// valid even under exact checking of its floating-point values.
pub fn random_ulc_sequence(n: usize, support: (usize, usize), seed: u64) -> Result<CoeffSequence<f64>> {
    check_support(n, support)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_log_concave(support.1 - support.0 + 1, &mut rng);
    sequence_from_log(n, support.0, &b)
}

fn random_support(n: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let lo = rng.gen_range(0..n);
    let hi = rng.gen_range(lo + 1..=n);
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceSource {
    TruncatedBinomial { j: usize, k: usize },
    Random { index: u64, lo: usize, hi: usize },
}

/// A root in the closed right half-plane and the sequence it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Offender {
    pub source: SequenceSource,
    pub root: Complex64,
    pub sequence: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub binomial_polynomials: usize,
    pub offenders: Vec<Offender>,
    /// Largest real part over all nonzero roots examined.
    pub max_real_part: f64,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.offenders.is_empty()
    }

    /// Offending root of `P^n_{j,k}`, upper half-plane representative.
    pub fn binomial_witness(&self, j: usize, k: usize) -> Option<Complex64> {
        self.offenders
            .iter()
            .filter(|o| o.source == SequenceSource::TruncatedBinomial { j, k })
            .map(|o| o.root)
            .max_by(|a, b| a.re.total_cmp(&b.re))
    }
}

fn offenders_of(seq: &CoeffSequence<f64>, source: SequenceSource) -> Result<(Vec<Offender>, f64)> {
    let roots = roots_of(seq)?;
    let max_re = roots
        .roots
        .iter()
        .map(|r| r.value.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let offenders = roots
        .roots
        .iter()
        .filter(|r| r.value.re > STABILITY_THRESHOLD && r.value.im >= 0.0)
        .map(|r| Offender {
            source: source.clone(),
            root: r.value,
            sequence: seq.coeffs().to_vec(),
        })
        .collect();
    Ok((offenders, max_re))
}

/// Looks for Steiner polynomials in `R^n` with a root of positive real part
/// among all truncated binomials and `samples` random sequences.
pub fn weak_stability_search(n: usize, samples: u64, seed: u64) -> Result<StabilityReport> {
    if n < 2 {
        return Err(Error::Dimension { min: 2, got: n });
    }
    let family = scan_family(n, 0)?;
    let mut offenders = Vec::new();
    let mut max_real_part = f64::NEG_INFINITY;
    for member in &family {
        for r in &member.roots.roots {
            max_real_part = max_real_part.max(r.value.re);
            if r.value.re > STABILITY_THRESHOLD && r.value.im >= 0.0 {
                offenders.push(Offender {
                    source: SequenceSource::TruncatedBinomial {
                        j: member.j,
                        k: member.k,
                    },
                    root: r.value,
                    sequence: crate::poly::truncated_binomial_f64(n, member.j, member.k)?.into_coeffs(),
                });
            }
        }
    }
    let random: Vec<(Vec<Offender>, f64)> = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index));
            let (lo, hi) = random_support(n, &mut rng);
            let b = random_log_concave(hi - lo + 1, &mut rng);
            let seq = sequence_from_log(n, lo, &b)?;
            offenders_of(&seq, SequenceSource::Random { index, lo, hi })
        })
        .collect::<Result<_>>()?;
    for (found, max_re) in random {
        offenders.extend(found);
        max_real_part = max_real_part.max(max_re);
    }
    Ok(StabilityReport {
        n,
        samples,
        seed,
        binomial_polynomials: family.len(),
        offenders,
        max_real_part,
    })
}

/// Derivative-free minimization (Nelder-Mead) of `f` from `x0`.
fn nelder_mead(f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], step: f64, max_evals: usize) -> (Vec<f64>, f64, usize) {
    let d = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut evals = d + 1;
    while evals < max_evals {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if (values[d] - values[0]).abs() <= 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| simplex[..d].iter().map(|x| x[k]).sum::<f64>() / d as f64)
            .collect();
        let towards = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[d])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let reflected = towards(1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < values[0] {
            let expanded = towards(2.0);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                simplex[d] = expanded;
                values[d] = fe;
            } else {
                simplex[d] = reflected;
                values[d] = fr;
            }
        } else if fr < values[d - 1] {
            simplex[d] = reflected;
            values[d] = fr;
        } else {
            let contracted = if fr < values[d] { towards(0.5) } else { towards(-0.5) };
            let fc = f(&contracted);
            evals += 1;
            if fc < values[d].min(fr) {
                simplex[d] = contracted;
                values[d] = fc;
            } else {
                for i in 1..=d {
                    let shrunk: Vec<f64> = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    values[i] = f(&shrunk);
                    simplex[i] = shrunk;
                }
                evals += d;
            }
        }
    }
    let best = (0..=d)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty");
    (simplex[best].clone(), values[best], evals)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerResult {
    pub estimate: ConeEstimate,
    pub sequence: Vec<f64>,
    pub support: (usize, usize),
    pub table_alpha: f64,
    /// The optimizer found a strictly smaller angle than the table scan.
    pub improved: bool,
    pub evaluations: usize,
}

const EVALS_PER_DIM: usize = 200;

/// Angle, root, sequence and support of a validated candidate.
type Candidate = (f64, Complex64, Vec<f64>, (usize, usize));
const HINGE_WEIGHT: f64 = 100.0;

fn angle_of(seq: &CoeffSequence<f64>) -> Option<(Complex64, f64)> {
    roots_of(seq).ok().and_then(|r| min_angle_root(&r).ok())
}

/// Searches log-concave quermassintegral sequences for a root of smaller
/// angle than the best truncated binomial in dimension `n`.
///
/// Restart 0 starts from the table-scan polynomial; the others from random
/// supports and sequences. Constraint violations are penalized during the
/// search and removed by projection before a candidate is accepted, so the
/// result is always a valid Steiner sequence and never worse than the scan.
pub fn angle_optimizer(n: usize, restarts: usize, seed: u64) -> Result<OptimizerResult> {
    if n < 5 {
        return Err(Error::Dimension { min: 5, got: n });
    }
    let row = table1_scan(n)?;
    let starts: Vec<((usize, usize), Vec<f64>)> = (0..restarts.max(1))
        .map(|index| {
            if index == 0 {
                ((row.j, row.k), vec![0.0; row.k - row.j + 1])
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64));
                let (lo, hi) = random_support(n, &mut rng);
                ((lo, hi), random_log_concave(hi - lo + 1, &mut rng))
            }
        })
        .collect();

    let runs: Vec<(Option<Candidate>, usize)> = starts
        .into_par_iter()
        .map(|((lo, hi), b0)| {
            let mut objective = |b: &[f64]| -> f64 {
                let hinge: f64 = b
                    .windows(3)
                    .map(|w| (w[0] + w[2] - 2.0 * w[1]).max(0.0))
                    .sum();
                let top = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let shifted: Vec<f64> = b.iter().map(|v| v - top).collect();
                let angle = sequence_from_log(n, lo, &shifted)
                    .ok()
                    .and_then(|s| angle_of(&s))
                    .map(|(_, a)| a)
                    .unwrap_or(10.0);
                angle + HINGE_WEIGHT * hinge
            };
            let (x, _, evals) = nelder_mead(&mut objective, &b0, 0.1, EVALS_PER_DIM * b0.len());
            let mut projected = concave_majorant(&x);
            tighten(&mut projected);
            let candidate = sequence_from_log(n, lo, &projected).ok().and_then(|seq| {
                validate_steiner(&seq.to_exact(), Tolerance::DEFAULT).ok()?;
                let (gamma, alpha) = angle_of(&seq)?;
                Some((alpha, gamma, seq.into_coeffs(), (lo, hi)))
            });
            (candidate, evals)
        })
        .collect();

    let mut best_alpha = row.alpha;
    let mut best = (
        row.gamma,
        crate::poly::truncated_binomial_f64(n, row.j, row.k)?.into_coeffs(),
        (row.j, row.k),
    );
    let mut improved = false;
    let mut evaluations = 0;
    for (candidate, evals) in runs {
        evaluations += evals;
        if let Some((alpha, gamma, seq, support)) = candidate {
            if alpha < best_alpha - 1e-12 {
                best_alpha = alpha;
                best = (gamma, seq, support);
                improved = true;
            }
        }
    }
    let (gamma, sequence, support) = best;
    Ok(OptimizerResult {
        estimate: ConeEstimate {
            n,
            kind: EstimateKind::Witnessed,
            theta: best_alpha,
            witness: Some(Witness {
                j: support.0,
                k: support.1,
                gamma,
                source: if improved {
                    WitnessSource::Optimizer
                } else {
                    WitnessSource::TableScan
                },
                sequence: sequence.clone(),
            }),
        },
        sequence,
        support,
        table_alpha: row.alpha,
        improved,
        evaluations,
    })
}
