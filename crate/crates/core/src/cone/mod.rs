//! The cones `R(n)` spanned by roots of Steiner polynomials in `R^n`.
//!
//! In dimensions 2, 3, 4 the cone is known exactly. Above, its boundary is
//! approached from inside by witnesses: roots of truncated binomial
//! polynomials found by scanning, optionally improved by a local search over
//! ultra-logconcave sequences.

mod asymptotic;
mod boundary;
mod membership;
mod scan;
mod search;

pub use asymptotic::{
    accumulation_check, capbody_check, capbody_polynomial, one_on_accumulation_curve, prism_embed,
    AccumulationReport, AccumulationRow, CapBodyReport, ACCUMULATION_MAX_N,
};
pub use boundary::{
    r3_real_root_compat, r3_via_roots, r4_boundary_certify, r4_grid_feasible, r4_inequalities,
    BoundaryFamily, InequalityCheck, R4Report,
};
pub use membership::{
    exact_cone_angle, membership, Certificate, ConeEstimate, ConeStore, EstimateKind, MembershipVerdict,
    Verdict, Witness, WitnessSource,
};
pub use scan::{
    format_sig6, scan_csv, scan_family, table1_range, table1_scan, FamilyMember, ScanRow, CSV_HEADER,
    SCAN_MAX_N, SCAN_TIE,
};
pub use search::{
    angle_optimizer, concave_majorant, derive_seed, random_ulc_sequence, weak_stability_search, Offender,
    OptimizerResult, SequenceSource, StabilityReport, STABILITY_THRESHOLD,
};
