use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{min_angle_root, roots_of, truncated_binomial_f64, RootSet};

/// Rows whose angle is within this of the minimum are recorded as ties.
pub const SCAN_TIE: f64 = 1e-6;
/// Moduli closer than this do not break a tie.
const MODULUS_TIE: f64 = 1e-9;

/// Largest dimension accepted by [`table1_scan`].
pub const SCAN_MAX_N: usize = 64;

/// Roots of one truncated binomial polynomial and its minimal-angle root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub j: usize,
    pub k: usize,
    pub roots: RootSet,
    pub gamma: Complex64,
    pub alpha: f64,
}

/// The truncated binomial polynomial with the minimal-angle root in
/// dimension `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub gamma: Complex64,
    pub alpha: f64,
    pub residual: f64,
    /// All `(j, k)` whose angle is within [`SCAN_TIE`] of the minimum.
    pub all_minimal: Vec<(usize, usize)>,
}

/// Roots of `P^n_{j,k}` for every `j_min <= j < k <= n`, ordered by `(j, k)`.
pub fn scan_family(n: usize, j_min: usize) -> Result<Vec<FamilyMember>> {
    let pairs: Vec<(usize, usize)> = (j_min..n)
        .flat_map(|j| (j + 1..=n).map(move |k| (j, k)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(j, k)| {
            let wrap = |e: Error| Error::ScanRoot {
                j,
                k,
                message: e.to_string(),
            };
            let seq = truncated_binomial_f64(n, j, k).map_err(wrap)?;
            let roots = roots_of(&seq).map_err(wrap)?;
            let (gamma, alpha) = min_angle_root(&roots).map_err(wrap)?;
            Ok(FamilyMember {
                j,
                k,
                roots,
                gamma,
                alpha,
            })
        })
        .collect()
}

/// Scans `P^n_{j,k}`, `0 < j < k <= n`, for the root of minimal angle.
///
/// Reciprocal pairs `(j, k)` and `(n - k, n - j)` have roots `gamma` and
/// `1 / conj(gamma)` of equal angle. Among near-ties the root of larger
/// modulus is reported, then the smallest `j`, then the smallest `k`.
pub fn table1_scan(n: usize) -> Result<ScanRow> {
    if !(3..=SCAN_MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("scan needs 3 <= n <= {SCAN_MAX_N}, got {n}")));
    }
    let family = scan_family(n, 1)?;
    let best_alpha = family.iter().map(|m| m.alpha).fold(f64::INFINITY, f64::min);
    let ties: Vec<&FamilyMember> = family.iter().filter(|m| m.alpha - best_alpha <= SCAN_TIE).collect();
    let chosen = ties
        .iter()
        .copied()
        .reduce(|best, m| {
            let (a, b) = (m.gamma.norm(), best.gamma.norm());
            if a > b + MODULUS_TIE {
                m
            } else if b > a + MODULUS_TIE {
                best
            } else if (m.j, m.k) < (best.j, best.k) {
                m
            } else {
                best
            }
        })
        .expect("the family is nonempty for n >= 3");
    let residual = chosen
        .roots
        .roots
        .iter()
        .filter(|r| (r.value.re - chosen.gamma.re).abs() < 1e-12 && (r.value.im.abs() - chosen.gamma.im).abs() < 1e-12)
        .map(|r| r.residual)
        .fold(0.0, f64::max);
    Ok(ScanRow {
        n,
        j: chosen.j,
        k: chosen.k,
        gamma: chosen.gamma,
        alpha: chosen.alpha,
        residual,
        all_minimal: ties.iter().map(|m| (m.j, m.k)).collect(),
    })
}

pub fn table1_range(ns: impl IntoIterator<Item = usize>) -> Result<Vec<ScanRow>> {
    ns.into_iter().map(table1_scan).collect()
}

/// `x` rounded to six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    // Exponent after rounding, so 0.9999999 counts as 1.
    let sci = format!("{:.5e}", x.abs());
    let exponent: i32 = sci.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (5 - exponent).max(0) as usize;
    let text = format!("{x:.decimals$}");
    // Values that round to zero lose their sign.
    if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        text.trim_start_matches('-').to_string()
    } else {
        text
    }
}

pub const CSV_HEADER: &str = "n,j,k,re_gamma,im_gamma,alpha";

/// Scan rows as CSV; with `ties`, an extra column lists the near-minimal
/// pairs as `j:k` separated by spaces.
pub fn scan_csv(rows: &[ScanRow], ties: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if ties {
        out.push_str(",ties");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            row.n,
            row.j,
            row.k,
            format_sig6(row.gamma.re),
            format_sig6(row.gamma.im),
            format_sig6(row.alpha)
        );
        if ties {
            let pairs: Vec<String> = row.all_minimal.iter().map(|(j, k)| format!("{j}:{k}")).collect();
            let _ = write!(out, ",{}", pairs.join(" "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let row = table1_scan(3).unwrap();
        assert_eq!((row.j, row.k), (1, 3));
        assert!((row.gamma - Complex64::new(-1.5, 0.8660)).norm() < 1e-3);
        assert!((row.alpha - 2.6179).abs() < 1e-3);

        let row = table1_scan(10).unwrap();
        assert_eq!((row.j, row.k), (3, 8));
        assert!((row.gamma - Complex64::new(0.0158, 1.1903)).norm() < 1e-3);
        assert!(row.all_minimal.contains(&(2, 7)));
        assert!(row.residual < 1e-9);
    }

    #[test]
    fn scan_bounds() {
        assert!(table1_scan(2).is_err());
        assert!(table1_scan(65).is_err());
    }

    #[test]
    fn family_size() {
        assert_eq!(scan_family(6, 0).unwrap().len(), 21);
        assert_eq!(scan_family(6, 1).unwrap().len(), 15);
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig6(-1.5), "-1.50000");
        assert_eq!(format_sig6(0.015_812_345), "0.0158123");
        assert_eq!(format_sig6(2.617_993_877), "2.61799");
        assert_eq!(format_sig6(0.0), "0");
        assert_eq!(format_sig6(-1e-12), "-0.00000000000100000");
    }

    #[test]
    fn csv_layout() {
        let rows = vec![table1_scan(4).unwrap()];
        let csv = scan_csv(&rows, false);
        assert_eq!(csv, "n,j,k,re_gamma,im_gamma,alpha\n4,1,4,-1.00000,1.00000,2.35619\n");
        let with_ties = scan_csv(&rows, true);
        assert!(with_ties.starts_with("n,j,k,re_gamma,im_gamma,alpha,ties\n4,1,4,"));
        assert!(with_ties.trim_end().ends_with("1:4"));
    }
}
