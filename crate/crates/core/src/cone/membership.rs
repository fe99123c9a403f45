use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::scan::ScanRow;
use crate::error::{Error, Result};
use crate::poly::truncated_binomial_f64;

/// Boundary angle of the root cone in dimensions 2, 3, 4: the cones are
/// the nonpositive axis, `x + sqrt(3) y <= 0` and `x + y <= 0`.
pub fn exact_cone_angle(n: usize) -> Result<f64> {
    match n {
        2 => Ok(PI),
        3 => Ok(5.0 * PI / 6.0),
        4 => Ok(3.0 * PI / 4.0),
        _ => Err(Error::NoExactCone { n }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    Witnessed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    TableScan,
    Optimizer,
}

/// A Steiner sequence with a root on the ray at angle `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub j: usize,
    pub k: usize,
    pub gamma: Complex64,
    pub source: WitnessSource,
    pub sequence: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeEstimate {
    pub n: usize,
    pub kind: EstimateKind,
    pub theta: f64,
    pub witness: Option<Witness>,
}

impl ConeEstimate {
    pub fn exact(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            kind: EstimateKind::Exact,
            theta: exact_cone_angle(n)?,
            witness: None,
        })
    }

    pub fn from_scan(row: &ScanRow) -> Result<Self> {
        Ok(Self {
            n: row.n,
            kind: EstimateKind::Witnessed,
            theta: row.alpha,
            witness: Some(Witness {
                j: row.j,
                k: row.k,
                gamma: row.gamma,
                source: WitnessSource::TableScan,
                sequence: truncated_binomial_f64(row.n, row.j, row.k)?.into_coeffs(),
            }),
        })
    }
}

/// Cone estimates keyed by dimension, persisted as JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeStore {
    estimates: BTreeMap<usize, ConeEstimate>,
}

impl ConeStore {
    /// Store holding the exact cones for `n = 2, 3, 4`.
    pub fn with_exact() -> Self {
        let mut store = Self::default();
        for n in 2..=4 {
            store.estimates.insert(n, ConeEstimate::exact(n).expect("in range"));
        }
        store
    }

    /// Exact cones plus table-scan witnesses for every row with `n >= 5`.
    pub fn from_scan(rows: &[ScanRow]) -> Result<Self> {
        let mut store = Self::with_exact();
        for row in rows.iter().filter(|r| r.n >= 5) {
            store.insert(ConeEstimate::from_scan(row)?);
        }
        Ok(store)
    }

    /// Inserts `estimate` unless an exact cone or a witness with a smaller
    /// or equal angle is already stored. Returns whether it was stored.
    pub fn insert(&mut self, estimate: ConeEstimate) -> bool {
        match self.estimates.get(&estimate.n) {
            Some(current) if current.kind == EstimateKind::Exact => false,
            Some(current) if current.theta <= estimate.theta && estimate.kind != EstimateKind::Exact => false,
            _ => {
                self.estimates.insert(estimate.n, estimate);
                true
            }
        }
    }

    pub fn get(&self, n: usize) -> Option<&ConeEstimate> {
        self.estimates.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConeEstimate> {
        self.estimates.values()
    }

    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    /// First consecutive pair of stored dimensions whose angles fail to
    /// decrease strictly.
    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let items: Vec<&ConeEstimate> = self.estimates.values().collect();
        items
            .windows(2)
            .find(|w| w[1].theta >= w[0].theta)
            .map(|w| (w[0].n, w[1].n))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    InsideCertified,
    OutsideCertified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// `gamma` is a nonpositive real number.
    NonPositiveReal,
    /// `gamma` is a positive real number; no nonnegative polynomial vanishes there.
    PositiveReal,
    /// Half-plane description of the cone in dimension `n <= 4`.
    ExactCone { n: usize, theta: f64 },
    /// The cone spanned by the nonpositive axis and `gamma_w` contains `gamma`.
    Witness {
        j: usize,
        k: usize,
        gamma_w: Complex64,
        sequence: Vec<f64>,
    },
    /// No stored witness reaches `gamma`.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub gamma: Complex64,
    pub n: usize,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

/// Decides whether `gamma` is a root of some Steiner polynomial in `R^n`.
///
/// Dimensions up to four are decided exactly. Above, a point is certified
/// inside when the stored witness root lies at an angle no larger than
/// `arg gamma`, by convexity of the cone; otherwise the verdict is unknown.
pub fn membership(gamma: Complex64, n: usize, store: &ConeStore) -> MembershipVerdict {
    let g = Complex64::new(gamma.re, gamma.im.abs());
    let verdict = |verdict, certificate| MembershipVerdict {
        gamma: g,
        n,
        verdict,
        certificate,
    };
    if g.im == 0.0 {
        return if g.re <= 0.0 {
            verdict(Verdict::InsideCertified, Certificate::NonPositiveReal)
        } else {
            verdict(Verdict::OutsideCertified, Certificate::PositiveReal)
        };
    }
    if n <= 4 {
        let cone_n = n.max(2);
        let inside = match cone_n {
            2 => false,
            3 => g.re + 3f64.sqrt() * g.im <= 0.0,
            _ => g.re + g.im <= 0.0,
        };
        let certificate = Certificate::ExactCone {
            n: cone_n,
            theta: exact_cone_angle(cone_n).expect("in range"),
        };
        let v = if inside {
            Verdict::InsideCertified
        } else {
            Verdict::OutsideCertified
        };
        return verdict(v, certificate);
    }
    let witness = store.get(n).and_then(|e| e.witness.as_ref());
    match witness {
        Some(w) => {
            let w_up = Complex64::new(w.gamma.re, w.gamma.im.abs());
            // arg g >= arg w_up, both in the upper half-plane.
            if w_up.re * g.im - w_up.im * g.re >= 0.0 {
                verdict(
                    Verdict::InsideCertified,
                    Certificate::Witness {
                        j: w.j,
                        k: w.k,
                        gamma_w: w_up,
                        sequence: w.sequence.clone(),
                    },
                )
            } else {
                verdict(Verdict::Unknown, Certificate::None)
            }
        }
        None => verdict(Verdict::Unknown, Certificate::None),
    }
}
