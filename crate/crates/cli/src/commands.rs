use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64;
use serde::Serialize;
use steiner_core::cone::{
    accumulation_check, angle_optimizer, exact_cone_angle, membership, r4_boundary_certify, scan_csv, scan_family,
    table1_range, table1_scan, weak_stability_search, Certificate, ConeEstimate, ConeStore, ScanRow, Verdict,
};
use steiner_core::realize::{build_simplex_pair, format_points, verify_realization};
use steiner_core::ulc::{check_ulc, validate_steiner};
use steiner_core::{CoeffSequence, QuermassTuple, Scalar, Tolerance};

use crate::config::{parse_complex, parse_range, parse_rationals, read_tokens, Common, Failure, Format, RunConfig};
use crate::plot::{Plot, Ray};

/// Last dimension of the reference table; later rows are extrapolated.
const TABLE_MAX_N: usize = 20;

type Outcome = Result<u8, Failure>;

fn emit(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn envelope<T: Serialize>(config: &RunConfig, result: &T) -> String {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        config: &'a RunConfig,
        result: &'a T,
    }
    let mut text = serde_json::to_string_pretty(&Envelope { config, result }).expect("serializable");
    text.push('\n');
    text
}

fn unsupported(config: &RunConfig) -> Failure {
    Failure::Usage(format!("format {:?} is not available for {}", config.format, config.command))
}

fn load_store(path: &Path) -> Result<ConeStore, Failure> {
    if !path.exists() {
        return Ok(ConeStore::with_exact());
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(ConeStore::from_json(&text)?)
}

fn save_store(path: &Path, store: &ConeStore) -> Result<(), Failure> {
    fs::write(path, store.to_json() + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Coefficients a_0 .. a_n (integers, decimals or fractions).
    #[arg(allow_negative_numbers = true)]
    pub coeffs: Vec<String>,
    /// Read the coefficients from a file instead.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Ambient dimension; must equal the number of coefficients minus one.
    #[arg(long)]
    pub n: Option<usize>,
    /// Check in floating point with relative tolerance `--tol` instead of exactly.
    #[arg(long)]
    pub float: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct RowOut {
    i: usize,
    c_in: String,
    lhs: String,
    rhs: String,
    holds: bool,
    equality: bool,
}

#[derive(Serialize)]
struct ValidateReport {
    n: usize,
    exact: bool,
    accepted: bool,
    r: Option<usize>,
    s: Option<usize>,
    reason: Option<String>,
    support: Option<(usize, usize)>,
    gap_at: Option<usize>,
    equalities: Vec<usize>,
    rows: Vec<RowOut>,
}

fn validate_report<T: Scalar + Display>(seq: &CoeffSequence<T>, tol: Tolerance, exact: bool) -> ValidateReport {
    let verdict = validate_steiner(seq, tol);
    let report = check_ulc(seq, tol);
    ValidateReport {
        n: seq.dimension(),
        exact,
        accepted: verdict.is_ok(),
        r: verdict.as_ref().ok().map(|d| d.r),
        s: verdict.as_ref().ok().map(|d| d.s),
        reason: verdict.as_ref().err().map(ToString::to_string),
        support: report.support,
        gap_at: report.gap_at,
        equalities: report.equalities(),
        rows: report
            .rows
            .iter()
            .map(|row| RowOut {
                i: row.i,
                c_in: row.c_in.to_string(),
                lhs: row.lhs.to_string(),
                rhs: row.rhs.to_string(),
                holds: row.holds,
                equality: row.equality,
            })
            .collect(),
    }
}

pub fn validate(args: &ValidateArgs) -> Outcome {
    let mut config = RunConfig::new("validate", &args.common, Format::Text);
    let tokens = read_tokens(&args.coeffs, args.file.as_deref())?;
    config.inputs = tokens.clone();
    config.n = args.n;
    if let Some(n) = args.n {
        if tokens.len() != n + 1 {
            return Err(Failure::Usage(format!(
                "--n {n} needs {} coefficients, got {}",
                n + 1,
                tokens.len()
            )));
        }
    }
    let tol = Tolerance(args.common.tol);
    let report = if args.float {
        let values = tokens
            .iter()
            .map(|t| t.parse::<f64>().map_err(|_| Failure::Usage(format!("cannot parse {t:?} as a number"))))
            .collect::<Result<Vec<_>, _>>()?;
        validate_report(&CoeffSequence::new(values)?, tol, false)
    } else {
        validate_report(&CoeffSequence::new(parse_rationals(&tokens)?)?, tol, true)
    };
    let text = match config.format {
        Format::Json => envelope(&config, &report),
        Format::Text => {
            let mut s = String::new();
            match (report.r, report.s, &report.reason) {
                (Some(r), Some(s_dim), _) => {
                    let _ = writeln!(s, "accept: n = {}, r = {r}, s = {s_dim}", report.n);
                }
                (_, _, Some(reason)) => {
                    let _ = writeln!(s, "reject: {reason}");
                }
                _ => unreachable!("a verdict has dimensions or a reason"),
            }
            for row in &report.rows {
                let mark = if !row.holds {
                    "fails"
                } else if row.equality {
                    "equality"
                } else {
                    "holds"
                };
                let _ = writeln!(
                    s,
                    "  i = {}: c = {}, c a_i^2 = {}, a_(i-1) a_(i+1) = {}  {mark}",
                    row.i, row.c_in, row.lhs, row.rhs
                );
            }
            s
        }
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(if report.accepted { 0 } else { 1 })
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// A single dimension.
    #[arg(long, conflicts_with = "range")]
    pub n: Option<usize>,
    /// Inclusive range of dimensions, e.g. 3..20.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(usize, usize)>,
    /// Add a column listing all near-minimal (j, k) pairs.
    #[arg(long)]
    pub ties: bool,
    /// Merge the witnesses into this cone-estimate store (JSON).
    #[arg(long)]
    pub store: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct TableRow<'a> {
    #[serde(flatten)]
    row: &'a ScanRow,
    extrapolated: bool,
}

pub fn table1(args: &Table1Args) -> Outcome {
    let mut config = RunConfig::new("table1", &args.common, Format::Csv);
    let (lo, hi) = match (args.n, args.range) {
        (Some(n), _) => (n, n),
        (None, Some(range)) => range,
        (None, None) => (3, TABLE_MAX_N),
    };
    config.n = args.n;
    config.range = Some((lo, hi));
    if args.ties {
        config.inputs.push("--ties".into());
    }
    let rows = table1_range(lo..=hi)?;
    if hi > TABLE_MAX_N {
        eprintln!("note: rows with n > {TABLE_MAX_N} are extrapolated");
    }
    if let Some(path) = &args.store {
        let mut store = load_store(path)?;
        for row in rows.iter().filter(|r| r.n >= 5) {
            store.insert(ConeEstimate::from_scan(row)?);
        }
        save_store(path, &store)?;
    }
    let text = match config.format {
        Format::Csv | Format::Text => scan_csv(&rows, args.ties),
        Format::Json => {
            let out: Vec<TableRow> = rows
                .iter()
                .map(|row| TableRow {
                    row,
                    extrapolated: row.n > TABLE_MAX_N,
                })
                .collect();
            envelope(&config, &out)
        }
        Format::Svg => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(0)
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    /// The point, e.g. -1+0.5i.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[arg(long)]
    pub n: usize,
    /// Cone-estimate store; without it the witness for `n` is computed.
    #[arg(long)]
    pub store: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

pub fn cmd_membership(args: &MembershipArgs) -> Outcome {
    let mut config = RunConfig::new("membership", &args.common, Format::Text);
    config.n = Some(args.n);
    config.inputs = vec![args.gamma.clone()];
    let gamma = parse_complex(&args.gamma)?;
    let store = match &args.store {
        Some(path) => load_store(path)?,
        None if (5..=steiner_core::cone::SCAN_MAX_N).contains(&args.n) => {
            ConeStore::from_scan(&[table1_scan(args.n)?])?
        }
        None => ConeStore::with_exact(),
    };
    let v = membership(gamma, args.n, &store);
    let text = match config.format {
        Format::Json => envelope(&config, &v),
        Format::Text => {
            let verdict = match v.verdict {
                Verdict::InsideCertified => "inside (certified)",
                Verdict::OutsideCertified => "outside (certified)",
                Verdict::Unknown => "unknown",
            };
            let why = match &v.certificate {
                Certificate::NonPositiveReal => "nonpositive real number".to_string(),
                Certificate::PositiveReal => "positive real number".to_string(),
                Certificate::ExactCone { n, theta } => format!("exact cone for n = {n}, boundary angle {theta}"),
                Certificate::Witness { j, k, gamma_w, .. } => {
                    format!("root {} of P({j},{k}) at a smaller angle", fmt_complex(*gamma_w))
                }
                Certificate::None => "no stored witness reaches this angle".to_string(),
            };
            format!("{verdict}: {why}\n")
        }
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(0)
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Quermassintegrals W_0 .. W_n.
    #[arg(allow_negative_numbers = true)]
    pub values: Vec<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

pub fn realize(args: &RealizeArgs) -> Outcome {
    let mut config = RunConfig::new("realize", &args.common, Format::Text);
    let tokens = read_tokens(&args.values, args.file.as_deref())?;
    config.inputs = tokens.clone();
    let q = QuermassTuple::new(parse_rationals(&tokens)?, Tolerance(args.common.tol))?;
    config.n = Some(q.dimension());
    let pair = build_simplex_pair(&q)?;
    let report = verify_realization(&q)?;
    let json = envelope(&config, &report);
    if let Some(dir) = &config.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("k_vertices.txt"), format_points(&pair.k_vertices))?;
        fs::write(dir.join("e_vertices.txt"), format_points(&pair.e_vertices))?;
        fs::write(dir.join("report.json"), &json)?;
    }
    let text = match config.format {
        Format::Json => json,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "n = {}, r = {}, s = {}, volumes by {:?}",
                report.n, report.r, report.s, report.method
            );
            let _ = writeln!(s, "K vertices:\n{}", format_points(&pair.k_vertices).trim_end());
            let _ = writeln!(s, "E vertices:\n{}", format_points(&pair.e_vertices).trim_end());
            for (i, (want, got)) in report.expected.iter().zip(&report.recovered).enumerate() {
                let _ = writeln!(s, "W_{i}: expected {want}, recovered {got}");
            }
            let _ = writeln!(
                s,
                "{} (max relative error {:e})",
                if report.passed { "pass" } else { "FAIL" },
                report.max_relative_error
            );
            s
        }
        _ => return Err(unsupported(&config)),
    };
    if config.out.is_none() || config.format == Format::Text {
        print!("{text}");
    }
    Ok(if report.passed { 0 } else { 1 })
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Plot the roots of every truncated binomial polynomial in dimension `n`.
    #[arg(long, conflicts_with = "scan")]
    pub n: Option<usize>,
    /// Plot the minimal-angle roots of a CSV produced by `table1`.
    #[arg(long)]
    pub scan: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

fn parse_scan_csv(text: &str) -> Result<Vec<(usize, Complex64, f64)>, Failure> {
    let bad = |line: &str| Failure::Usage(format!("malformed scan row {line:?}"));
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() < 6 {
                return Err(bad(line));
            }
            let n = f[0].parse().map_err(|_| bad(line))?;
            let re: f64 = f[3].parse().map_err(|_| bad(line))?;
            let im: f64 = f[4].parse().map_err(|_| bad(line))?;
            let alpha = f[5].parse().map_err(|_| bad(line))?;
            Ok((n, Complex64::new(re, im), alpha))
        })
        .collect()
}

pub fn plot(args: &PlotArgs) -> Outcome {
    let mut config = RunConfig::new("plot", &args.common, Format::Svg);
    if config.format != Format::Svg {
        return Err(unsupported(&config));
    }
    let plot = match (&args.scan, args.n) {
        (Some(path), _) => {
            config.inputs = vec![path.display().to_string()];
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let rows = parse_scan_csv(&text)?;
            Plot {
                title: "Minimal-angle roots".into(),
                roots: Vec::new(),
                rays: rows
                    .iter()
                    .map(|&(n, _, theta)| Ray {
                        theta,
                        label: format!("n = {n}"),
                    })
                    .collect(),
                witnesses: rows.iter().map(|r| r.1).collect(),
            }
        }
        (None, n) => {
            let n = n.unwrap_or(4);
            config.n = Some(n);
            if n < 2 {
                return Err(Failure::Usage(format!("plot needs n >= 2, got {n}")));
            }
            let family = scan_family(n, 0)?;
            let roots = family.iter().flat_map(|m| m.roots.expanded_nonzero()).collect();
            let (theta, witnesses) = if n <= 4 {
                let w = if n >= 3 { vec![table1_scan(n)?.gamma] } else { Vec::new() };
                (exact_cone_angle(n)?, w)
            } else {
                let row = table1_scan(n)?;
                (row.alpha, vec![row.gamma])
            };
            Plot {
                title: format!("Roots of truncated binomial polynomials, n = {n}"),
                roots,
                rays: vec![Ray {
                    theta,
                    label: format!("{theta:.4}"),
                }],
                witnesses,
            }
        }
    };
    emit(&config, &plot.render())?;
    Ok(0)
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long, conflicts_with = "range")]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(usize, usize)>,
    #[command(flatten)]
    pub common: Common,
}

pub fn stability(args: &StabilityArgs) -> Outcome {
    let mut config = RunConfig::new("stability", &args.common, Format::Text);
    let (lo, hi) = match (args.n, args.range) {
        (Some(n), _) => (n, n),
        (None, Some(range)) => range,
        (None, None) => return Err(Failure::Usage("stability needs --n or --range".into())),
    };
    config.n = args.n;
    config.range = Some((lo, hi));
    let reports = (lo..=hi)
        .map(|n| weak_stability_search(n, args.common.samples, args.common.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match config.format {
        Format::Json => envelope(&config, &reports),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                if r.is_stable() {
                    let _ = writeln!(s, "n = {}: weakly stable, max real part {:e}", r.n, r.max_real_part);
                } else {
                    let worst = r
                        .offenders
                        .iter()
                        .max_by(|a, b| a.root.re.total_cmp(&b.root.re))
                        .expect("nonempty");
                    let _ = writeln!(
                        s,
                        "n = {}: {} roots with positive real part, largest {} from {:?}",
                        r.n,
                        r.offenders.len(),
                        fmt_complex(worst.root),
                        worst.source
                    );
                }
            }
            s
        }
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(0)
}

#[derive(Debug, Args)]
pub struct AccumulationArgs {
    /// Dimensions, comma separated.
    #[arg(long = "n", value_delimiter = ',', default_value = "40,80,160")]
    pub ns: Vec<usize>,
    #[command(flatten)]
    pub common: Common,
}

pub fn accumulation(args: &AccumulationArgs) -> Outcome {
    let mut config = RunConfig::new("accumulation", &args.common, Format::Text);
    config.inputs = args.ns.iter().map(ToString::to_string).collect();
    let report = accumulation_check(&args.ns)?;
    let text = match config.format {
        Format::Json => envelope(&config, &report),
        Format::Text => {
            let mut s = String::new();
            for row in &report.rows {
                let _ = writeln!(
                    s,
                    "n = {}: nearest root {} at distance {:.6}, {} roots in the disk, curve residual {:.3e}",
                    row.n,
                    fmt_complex(row.closest_root),
                    row.min_distance_to_one,
                    row.roots_in_disk,
                    row.max_curve_residual
                );
            }
            let _ = writeln!(s, "distances decreasing: {}", report.decreasing);
            let _ = writeln!(s, "1 on the limit curve: {}", report.one_on_curve);
            s
        }
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(if report.decreasing && report.one_on_curve { 0 } else { 1 })
}

#[derive(Debug, Args)]
pub struct Certify4Args {
    /// Coefficients a_0 .. a_4 of a polynomial vanishing at -1+i.
    #[arg(allow_negative_numbers = true)]
    pub coeffs: Vec<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

pub fn certify4(args: &Certify4Args) -> Outcome {
    let mut config = RunConfig::new("certify4", &args.common, Format::Text);
    let tokens = read_tokens(&args.coeffs, args.file.as_deref())?;
    config.inputs = tokens.clone();
    config.n = Some(4);
    let seq = CoeffSequence::new(parse_rationals(&tokens)?)?;
    let report = r4_boundary_certify(&seq, Tolerance(args.common.tol))?;
    let text = match config.format {
        Format::Json => envelope(&config, &report),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "family: {:?}", report.family);
            let _ = writeln!(s, "quermassintegrals: {:?}", report.quermass);
            let _ = writeln!(s, "equality cases: {:?}", report.af_equalities);
            if report.certified {
                let _ = writeln!(s, "certified");
            } else {
                let _ = writeln!(s, "not certified: {}", report.violated.join("; "));
            }
            s
        }
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(if report.certified { 0 } else { 1 })
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Record an improved witness in this store.
    #[arg(long)]
    pub store: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

pub fn optimize(args: &OptimizeArgs) -> Outcome {
    let mut config = RunConfig::new("optimize", &args.common, Format::Json);
    config.n = Some(args.n);
    config.inputs = vec![format!("restarts={}", args.restarts)];
    let result = angle_optimizer(args.n, args.restarts, args.common.seed)?;
    if let Some(path) = &args.store {
        let mut store = load_store(path)?;
        store.insert(result.estimate.clone());
        save_store(path, &store)?;
    }
    let text = match config.format {
        Format::Json => envelope(&config, &result),
        Format::Text => format!(
            "n = {}: angle {} (table {}), improved: {}, {} evaluations\n",
            args.n, result.estimate.theta, result.table_alpha, result.improved, result.evaluations
        ),
        _ => return Err(unsupported(&config)),
    };
    emit(&config, &text)?;
    Ok(0)
}
