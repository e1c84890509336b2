//! Command-line front end.
//!
//! Every subcommand is a thin wrapper over one library module: `count` over
//! the closed formulas, `oracle` over the brute-force enumerator, `sum` over
//! the summatory evaluators, `constants` over the Euler-Maclaurin engine,
//! `verify-series` over the Dirichlet-series checker and `report` over the
//! asymptotic fitter. The binary never computes anything itself; it parses
//! arguments, calls the library and renders the result.
//!
//! Exit codes: 0 success, 1 i/o or serialization failure, 2 usage error,
//! 3 resource cap or overflow, 4 dual-route disagreement or internal
//! inconsistency. Code 4 always comes with a `reproduce with:` command on
//! stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constants;
use crate::counts::{self, CountKind};
use crate::dd::Dd;
use crate::error::{CensusError, Result};
use crate::oracle::{self, GroupSpec};
use crate::report::{self, ReportDocument};
use crate::series::{self, IdentityKind, SeriesCheckResult};
use crate::summatory::{self, Method, SumKind};

/// Largest grid edge `count --grid` will materialize (G^2 rows of CSV).
const COUNT_GRID_CAP: u64 = 1000;

/// Cutoff for the experimental tau-weighted divisor-remainder series shown
/// by `constants`. The series converges like k^(-5/3), so this many terms
/// pin roughly four digits.
const TAU_DELTA_CUTOFF: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "subgroup-census",
    version,
    about = "Exact subgroup counts of Z_m x Z_n, their summatory functions, \
             and the analytic constants in their average orders"
)]
struct Cli {
    /// Worker threads for parallel sections; 0 keeps the rayon default.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Reserved for future randomized subcommands; accepted, currently
    /// unused so that scripted invocations stay forward-compatible.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Write the primary output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format for the tabular subcommands (sum, verify-series,
    /// report).
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prime factorization of n, e.g. "2^2 3 5"; "1" for n = 1.
    Factor { n: u64 },

    /// Evaluate one counting function at a point or over a square grid.
    ///
    /// The pair kinds s (all subgroups), c (cyclic subgroups) and T (the
    /// dominating auxiliary convolution) take m and n, with n defaulting to
    /// m. The rank-bounded kinds t2 and u2 take a single argument.
    Count {
        /// Counting function: s, c, T, t2 or u2.
        #[arg(long)]
        kind: String,

        /// m [n] for the pair kinds, n for t2 and u2.
        #[arg(value_name = "ARG")]
        args: Vec<u64>,

        /// Emit CSV "m,n,value" over the full grid 1..=G x 1..=G instead of
        /// a single value (pair kinds only).
        #[arg(long, value_name = "G", conflicts_with = "args")]
        grid: Option<u64>,
    },

    /// Enumerate every subgroup of Z_m x Z_n by brute force and print the
    /// census as CSV "m,n,total,cyclic".
    Oracle {
        m: u64,
        n: u64,

        /// Cross-check the enumeration against the closed formulas and the
        /// triangular-matrix route; any mismatch exits with code 4.
        #[arg(long)]
        compare: bool,

        /// Largest group order the enumerator accepts.
        #[arg(long, value_name = "N", default_value_t = oracle::DEFAULT_ORACLE_CAP)]
        cap: u64,
    },

    /// Evaluate a summatory function at one or more points as CSV
    /// "x,kind,method,value,seconds". The seconds column is wall time and
    /// varies run to run; every other column is deterministic.
    Sum {
        /// One of SUM_S, SUM_C, SUM_T, SUM_S_RANK2, SUM_C_RANK2, SUM_S_DIAG,
        /// SUM_C_DIAG, SUM_PSI, U_COPRIME, D_DIVISOR (case-insensitive).
        #[arg(long)]
        kind: String,

        /// "fast" (sieve and hyperbola routes) or "naive" (literal loops,
        /// guarded by a small cap).
        #[arg(long, default_value = "fast")]
        method: String,

        /// Evaluation points.
        #[arg(value_name = "X", required = true)]
        xs: Vec<u64>,
    },

    /// Print every analytic constant with its error bound and provenance.
    ///
    /// Provenance is "closed-form" (exact expression), "series" (truncated
    /// expansion with a certified bound), "product" (truncated Euler product
    /// with a tail bound) or "EXPERIMENTAL" (partial sum of a slowly
    /// converging series, no certified bound).
    Constants {
        /// Emit JSON instead of the text table; with a FILE argument, write
        /// the JSON there, otherwise to stdout (or --out).
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        json: Option<PathBuf>,

        /// Significant digits in the text table (1..=30).
        #[arg(long, default_value_t = 30)]
        precision: usize,
    },

    /// Check truncated Dirichlet series against their closed forms; any
    /// residual above its proven tail bound exits with code 4.
    VerifySeries {
        /// JSON array of extra check points, each an object with "identity"
        /// (DIR_S, DIR_C, DIR_T2, DIR_U2 or DIR_TAU_K), the exponents the
        /// identity needs (z and w, or z, or k and s) and a cutoff "n".
        /// Defaults to the built-in suite.
        #[arg(long, value_name = "FILE")]
        points: Option<PathBuf>,
    },

    /// Fit main terms over a grid of points and probe the empirical error
    /// exponent of each summatory function.
    Report {
        /// Comma-separated summatory kinds.
        #[arg(long, value_delimiter = ',', default_values_t = default_report_kinds())]
        kind: Vec<String>,

        /// Comma-separated evaluation points, at least four, strictly
        /// increasing. Defaults to seven points from 10^3 to 10^6.
        #[arg(long, value_delimiter = ',', value_name = "X,X,...")]
        grid: Option<Vec<u64>>,
    },

    /// Run the internal cross-check battery: counting routes against each
    /// other and the enumerator, fast against naive summation, both
    /// coefficient routes, and a handful of series identities.
    #[command(hide = true)]
    Selftest {
        /// Deliberately report a route disagreement to exercise the exit-4
        /// path end to end.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn default_report_kinds() -> Vec<String> {
    vec!["SUM_S".to_string(), "SUM_C".to_string()]
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Failure here means a pool already exists (tests, repeated init);
        // the requested width is advisory, so keep going.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let out = cli.out;
    let format = cli.format;
    let text = match cli.command {
        Command::Factor { n } => factor_text(n)?,
        Command::Count { kind, args, grid } => count_text(&kind, &args, grid)?,
        Command::Oracle { m, n, compare, cap } => oracle_text(m, n, compare, cap)?,
        Command::Sum { kind, method, xs } => sum_text(&kind, &method, &xs, format)?,
        Command::Constants { json, precision } => {
            return constants_cmd(json, precision, &out);
        }
        Command::VerifySeries { points } => {
            return verify_series_cmd(points, format, &out);
        }
        Command::Report { kind, grid } => report_text(&kind, grid, format)?,
        Command::Selftest { inject_fault } => selftest_text(inject_fault)?,
    };
    emit(&out, &text)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| CensusError::io(path, e)),
    }
}

fn factor_text(n: u64) -> Result<String> {
    let f = arith::factorize(n)?;
    if f.factors().is_empty() {
        return Ok("1\n".to_string());
    }
    let parts: Vec<String> = f
        .factors()
        .iter()
        .map(|&(p, k)| {
            if k == 1 {
                p.to_string()
            } else {
                format!("{p}^{k}")
            }
        })
        .collect();
    Ok(parts.join(" ") + "\n")
}

fn pair_count(kind: CountKind, m: u64, n: u64) -> Result<u64> {
    match kind {
        CountKind::STotal => counts::s_count(m, n),
        CountKind::CCyclic => counts::c_count(m, n),
        CountKind::TAux => counts::t_count(m, n),
        CountKind::T2RankLe2 | CountKind::U2RankLe2 => unreachable!("single-argument kind"),
    }
}

fn count_text(kind: &str, args: &[u64], grid: Option<u64>) -> Result<String> {
    let kind = CountKind::from_str(kind)?;
    if let Some(g) = grid {
        if !kind.takes_pair() {
            return Err(CensusError::InvalidInput(format!(
                "--grid applies to the pair kinds s, c and T, not {kind}"
            )));
        }
        if g == 0 {
            return Err(CensusError::InvalidInput(
                "grid size must be positive".to_string(),
            ));
        }
        if g > COUNT_GRID_CAP {
            return Err(CensusError::ResourceCap(format!(
                "grid edge {g} exceeds the cap {COUNT_GRID_CAP}"
            )));
        }
        let mut text = String::from("m,n,value\n");
        for m in 1..=g {
            for n in 1..=g {
                writeln!(text, "{m},{n},{}", pair_count(kind, m, n)?).unwrap();
            }
        }
        return Ok(text);
    }
    let value = if kind.takes_pair() {
        let (m, n) = match args {
            [m] => (*m, *m),
            [m, n] => (*m, *n),
            _ => {
                return Err(CensusError::InvalidInput(format!(
                    "kind {kind} takes m [n], got {} arguments",
                    args.len()
                )))
            }
        };
        pair_count(kind, m, n)?
    } else {
        let n = match args {
            [n] => *n,
            _ => {
                return Err(CensusError::InvalidInput(format!(
                    "kind {kind} takes exactly one argument, got {}",
                    args.len()
                )))
            }
        };
        match kind {
            CountKind::T2RankLe2 => counts::t2(n)?,
            CountKind::U2RankLe2 => counts::u2(n)?,
            _ => unreachable!(),
        }
    };
    Ok(format!("{value}\n"))
}

fn oracle_text(m: u64, n: u64, compare: bool, cap: u64) -> Result<String> {
    let spec = GroupSpec::new(m, n, cap)?;
    let (total, cyclic) = oracle::census(spec)?;
    if compare {
        let s = counts::s_count(m, n)?;
        let c = counts::c_count(m, n)?;
        let hnf = oracle::hnf_subgroup_count(m, n)?;
        if total != s || cyclic != c || hnf != s {
            return Err(CensusError::RouteDisagreement {
                what: "subgroup census",
                details: format!(
                    "enumeration found ({total}, {cyclic}), the formulas give \
                     ({s}, {c}), the triangular route gives {hnf}"
                ),
                reproduce: format!("subgroup-census oracle {m} {n} --compare"),
            });
        }
    }
    Ok(format!("m,n,total,cyclic\n{m},{n},{total},{cyclic}\n"))
}

fn sum_text(kind: &str, method: &str, xs: &[u64], format: Format) -> Result<String> {
    let kind = SumKind::from_str(kind)?;
    let method = Method::from_str(method)?;
    let method_label = match method {
        Method::Fast => "fast",
        Method::Naive => "naive",
    };
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let start = Instant::now();
        let value = summatory::evaluate(kind, x, method)?;
        rows.push((x, value, start.elapsed().as_secs_f64()));
    }
    match format {
        Format::Csv => {
            let mut text = String::from("x,kind,method,value,seconds\n");
            for (x, value, seconds) in rows {
                writeln!(
                    text,
                    "{x},{},{method_label},{value},{seconds:.3}",
                    kind.label()
                )
                .unwrap();
            }
            Ok(text)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                x: u64,
                kind: &'a str,
                method: &'a str,
                value: String,
                seconds: f64,
            }
            let rows: Vec<Row> = rows
                .into_iter()
                .map(|(x, value, seconds)| Row {
                    x,
                    kind: kind.label(),
                    method: method_label,
                    value: value.to_string(),
                    seconds,
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

/// One line of the `constants` table. `exact` keeps the full working
/// precision for the text renderer; JSON carries the f64 projection.
#[derive(Serialize)]
struct ConstantRow {
    name: &'static str,
    value: f64,
    /// Certified absolute error of `value` as an approximation of the true
    /// constant; absent for EXPERIMENTAL rows.
    error_bound: Option<f64>,
    provenance: &'static str,
    #[serde(skip)]
    exact: Dd,
}

fn row(name: &'static str, exact: Dd, error_bound: Option<f64>, provenance: &'static str) -> ConstantRow {
    ConstantRow {
        name,
        value: exact.to_f64(),
        error_bound,
        provenance,
        exact,
    }
}

fn constant_rows() -> Result<Vec<ConstantRow>> {
    // Bound for values produced by the Euler-Maclaurin engine. The dual-depth
    // agreement checks are tighter; this is the published guarantee.
    const SERIES_EPS: f64 = 1e-24;
    // Closed forms are exact expressions; the displayed digits are limited
    // only by the 106-bit working type.
    const EXACT: Option<f64> = Some(0.0);

    let a = constants::analytic()?;
    let t = constants::t_sum_main_coeffs()?;
    let s3 = constants::s_sum_main_coeffs()?;
    let c3 = constants::c_sum_main_coeffs()?;
    let sr = constants::s_rank2_main_coeffs()?;
    let cr = constants::c_rank2_main_coeffs()?;
    let b = constants::coprime_main_coeffs()?;
    let bp = constants::coprime_square_constant_product();
    let delta_partial = constants::tau_delta_series_partial(TAU_DELTA_CUTOFF)?;

    let pi2 = Dd::PI * Dd::PI;
    let series = |bound: f64| Some(bound);

    Ok(vec![
        row("gamma", a.gamma, series(SERIES_EPS), "series"),
        row("gamma_1", a.gamma1, series(SERIES_EPS), "series"),
        row("gamma_2", a.gamma2, series(SERIES_EPS), "series"),
        row("zeta(2)", a.zeta2, series(SERIES_EPS), "series"),
        row("zeta(3)", a.zeta3, series(SERIES_EPS), "series"),
        row("zeta(4)", a.zeta4, series(SERIES_EPS), "series"),
        row("zeta(5)", a.zeta5, series(SERIES_EPS), "series"),
        row("zeta(6)", a.zeta6, series(SERIES_EPS), "series"),
        row("zeta'(2)", a.zeta_prime_2, series(SERIES_EPS), "series"),
        row("zeta''(2)", a.zeta_double_prime_2, series(SERIES_EPS), "series"),
        row("t_cubic", t[0], EXACT, "closed-form"),
        row("t_quadratic", t[1], series(SERIES_EPS), "series"),
        row("t_linear", t[2], series(SERIES_EPS), "series"),
        row("A3", s3[0], EXACT, "closed-form"),
        row("A2", s3[1], series(SERIES_EPS), "series"),
        row("A1", s3[2], series(SERIES_EPS), "series"),
        row("B3", c3[0], EXACT, "closed-form"),
        row("B2", c3[1], series(SERIES_EPS), "series"),
        row("B1", c3[2], series(SERIES_EPS), "series"),
        row("C3", sr[0], EXACT, "closed-form"),
        row("C2", sr[1], series(b[0].bound + SERIES_EPS), "series"),
        row("C1", sr[2], series(b[1].bound + SERIES_EPS), "series"),
        row("D3", cr[0], EXACT, "closed-form"),
        row("D2", cr[1], series(b[0].bound + SERIES_EPS), "series"),
        row("D1", cr[2], series(b[1].bound + SERIES_EPS), "series"),
        row("b2_series", b[0].value, series(b[0].bound), "series"),
        row("b1_series", b[1].value, series(b[1].bound), "series"),
        row("b0_series", b[2].value, series(b[2].bound), "series"),
        row("b2_product", bp.value, series(bp.bound), "product"),
        row(
            "s_diag_quadratic",
            pi2 * Dd::from_ratio(5, 24),
            EXACT,
            "closed-form",
        ),
        row("c_diag_quadratic", Dd::from_ratio(5, 4), EXACT, "closed-form"),
        row(
            "psi_quadratic",
            Dd::from_ratio(15, 2) * pi2.recip(),
            EXACT,
            "closed-form",
        ),
        row(
            "divisor_linear",
            a.two_gamma_minus_one(),
            series(SERIES_EPS),
            "series",
        ),
        row("tau_delta_series_1e5", delta_partial, None, "EXPERIMENTAL"),
    ])
}

/// Render a double-double value as `d.ddd...e<exp>` with `digits`
/// significant digits. Falls back to f64 formatting when f64 already
/// carries enough precision.
fn format_dd(v: Dd, digits: usize) -> String {
    let hi = v.hi();
    if hi == 0.0 {
        return format!("{:.*e}", digits.saturating_sub(1), 0.0);
    }
    if digits <= 16 {
        return format!("{:.*e}", digits - 1, hi);
    }
    let neg = hi < 0.0;
    let ten = Dd::from_u64(10);
    let mut e10 = hi.abs().log10().floor() as i32;
    let mut m = v.abs() * ten.powi(-e10);
    // log10 rounding can leave the mantissa one decade off.
    while m.hi() >= 10.0 {
        m = m * ten.powi(-1);
        e10 += 1;
    }
    while m.hi() < 1.0 {
        m = m * ten;
        e10 -= 1;
    }
    let mut ds = Vec::with_capacity(digits);
    for _ in 0..digits {
        let d = (m.hi().floor() as i64).clamp(0, 9);
        ds.push(d as u8);
        m = (m - Dd::from_i64(d)) * ten;
    }
    // Round on the first dropped digit, propagating the carry.
    if m.hi() >= 5.0 {
        let mut i = digits;
        loop {
            if i == 0 {
                // 9.99... rounded up to 10.0...: shift the exponent.
                ds[0] = 1;
                e10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push((b'0' + ds[0]) as char);
    if digits > 1 {
        s.push('.');
        for &d in &ds[1..] {
            s.push((b'0' + d) as char);
        }
    }
    s.push('e');
    s.push_str(&e10.to_string());
    s
}

fn render_constants_table(rows: &[ConstantRow], precision: usize) -> String {
    let name_w = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let val_w = (precision + 7).max(5);
    let mut text = format!(
        "{:<name_w$}  {:<val_w$}  {:>11}  provenance\n",
        "name", "value", "error_bound"
    );
    for r in rows {
        let bound = match r.error_bound {
            None => "-".to_string(),
            Some(b) => format!("{b:.1e}"),
        };
        writeln!(
            text,
            "{:<name_w$}  {:<val_w$}  {:>11}  {}",
            r.name,
            format_dd(r.exact, precision),
            bound,
            r.provenance
        )
        .unwrap();
    }
    text
}

fn constants_cmd(json: Option<PathBuf>, precision: usize, out: &Option<PathBuf>) -> Result<()> {
    if !(1..=30).contains(&precision) {
        return Err(CensusError::InvalidInput(format!(
            "precision {precision} outside 1..=30"
        )));
    }
    let rows = constant_rows()?;
    match json {
        None => emit(out, &render_constants_table(&rows, precision)),
        Some(path) => {
            let doc = serde_json::to_string_pretty(&rows)? + "\n";
            if path.as_os_str() == "-" {
                emit(out, &doc)
            } else {
                std::fs::write(&path, doc).map_err(|e| CensusError::io(&path, e))
            }
        }
    }
}

/// One user-supplied series check point, deserialized from the
/// `verify-series --points` file.
#[derive(Deserialize)]
struct PointSpec {
    identity: String,
    #[serde(default)]
    z: Option<f64>,
    #[serde(default)]
    w: Option<f64>,
    #[serde(default)]
    k: Option<u64>,
    #[serde(default)]
    s: Option<f64>,
    n: u64,
}

fn check_point(p: &PointSpec) -> Result<SeriesCheckResult> {
    let kind = IdentityKind::from_str(&p.identity)?;
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| {
            CensusError::InvalidInput(format!("{kind} point needs parameter {name:?}"))
        })
    };
    match kind {
        IdentityKind::STotal => series::check_dir_s(need(p.z, "z")?, need(p.w, "w")?, p.n),
        IdentityKind::CCyclic => series::check_dir_c(need(p.z, "z")?, need(p.w, "w")?, p.n),
        IdentityKind::T2Diagonal => series::check_dir_t2(need(p.z, "z")?, p.n),
        IdentityKind::U2Diagonal => series::check_dir_u2(need(p.z, "z")?, p.n),
        IdentityKind::ScaledTau => {
            let k = p.k.ok_or_else(|| {
                CensusError::InvalidInput(format!("{kind} point needs parameter \"k\""))
            })?;
            series::check_dir_tau_k(k, need(p.s, "s")?, p.n)
        }
    }
}

fn render_series_results(results: &[SeriesCheckResult], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut text =
                String::from("identity,params,cutoff,lhs,rhs,residual,tail_bound,status\n");
            for r in results {
                writeln!(
                    text,
                    "{},\"{}\",{},{:.14e},{:.14e},{:.14e},{:.14e},{}",
                    r.identity,
                    r.params,
                    r.cutoff,
                    r.lhs_partial,
                    r.rhs_closed,
                    r.residual,
                    r.tail_bound,
                    if r.pass { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            Ok(text)
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "identity": r.identity.label(),
                        "params": r.params,
                        "cutoff": r.cutoff,
                        "lhs_partial": r.lhs_partial,
                        "rhs_closed": r.rhs_closed,
                        "residual": r.residual,
                        "tail_bound": r.tail_bound,
                        "pass": r.pass,
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

fn verify_series_cmd(
    points: Option<PathBuf>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<()> {
    let results = match points {
        None => series::run_default_suite()?,
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CensusError::io(&path, e))?;
            let specs: Vec<PointSpec> = serde_json::from_str(&text)?;
            if specs.is_empty() {
                return Err(CensusError::InvalidInput(
                    "points file contains no checks".to_string(),
                ));
            }
            specs
                .iter()
                .map(check_point)
                .collect::<Result<Vec<_>>>()?
        }
    };
    emit(out, &render_series_results(&results, format)?)?;
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CensusError::RouteDisagreement {
            what: "series identity verification",
            details: format!(
                "{failed} of {} checks exceeded their tail bounds",
                results.len()
            ),
            reproduce: "subgroup-census verify-series".to_string(),
        });
    }
    Ok(())
}

fn report_text(kinds: &[String], grid: Option<Vec<u64>>, format: Format) -> Result<String> {
    let grid = grid.unwrap_or_else(report::default_grid);
    let kinds: Vec<SumKind> = kinds
        .iter()
        .map(|s| SumKind::from_str(s))
        .collect::<Result<_>>()?;
    if kinds.is_empty() {
        return Err(CensusError::InvalidInput(
            "at least one --kind is required".to_string(),
        ));
    }
    let mut models = Vec::with_capacity(kinds.len());
    let mut probes = Vec::with_capacity(kinds.len());
    for &kind in &kinds {
        models.push(report::fit_main_term(kind, &grid)?);
        probes.push(report::exponent_probe(kind, &grid)?);
    }
    match format {
        Format::Csv => {
            let mut text = String::new();
            for (model, probe) in models.iter().zip(&probes) {
                writeln!(text, "# kind={}", model.kind.label()).unwrap();
                text.push_str(&report::render_csv(model));
                writeln!(
                    text,
                    "# probe slope={:.6} intercept={:.6} rms={:.6} ({})",
                    probe.slope, probe.intercept, probe.rms_deviation, probe.note
                )
                .unwrap();
            }
            Ok(text)
        }
        Format::Json => {
            Ok(serde_json::to_string_pretty(&ReportDocument { models, probes })? + "\n")
        }
    }
}

fn disagree(what: &'static str, details: String, reproduce: String) -> CensusError {
    CensusError::RouteDisagreement {
        what,
        details,
        reproduce,
    }
}

fn selftest_text(inject_fault: bool) -> Result<String> {
    if inject_fault {
        return Err(disagree(
            "fault injection",
            "selftest was asked to report a fabricated disagreement; this \
             exercises the nonzero-exit path and is not a real failure"
                .to_string(),
            "subgroup-census selftest --inject-fault".to_string(),
        ));
    }
    let mut text = String::new();

    for m in 1..=30u64 {
        for n in 1..=30u64 {
            let s = counts::s_count(m, n)?;
            let routes = [
                ("divisor convolution", counts::s_via_divisor_sum(m, n)?),
                ("coprime tau product", counts::s_via_product_tau(m, n)?),
                ("cyclic-count convolution", counts::s_from_c(m, n)?),
            ];
            for (route, v) in routes {
                if v != s {
                    return Err(disagree(
                        "total-count routes",
                        format!("s({m}, {n}): prime-power route {s}, {route} {v}"),
                        format!("subgroup-census count --kind s {m} {n}"),
                    ));
                }
            }
            let c = counts::c_count(m, n)?;
            let c_routes = [
                ("divisor convolution", counts::c_via_divisor_sum(m, n)?),
                ("inverse convolution", counts::c_from_s(m, n)?),
            ];
            for (route, v) in c_routes {
                if v != c {
                    return Err(disagree(
                        "cyclic-count routes",
                        format!("c({m}, {n}): prime-power route {c}, {route} {v}"),
                        format!("subgroup-census count --kind c {m} {n}"),
                    ));
                }
            }
        }
    }
    writeln!(
        text,
        "ok: four s routes and three c routes agree for all m, n <= 30"
    )
    .unwrap();

    for (m, n) in [(2, 2), (4, 6), (6, 10), (12, 8), (9, 9), (30, 1)] {
        let spec = GroupSpec::new(m, n, oracle::DEFAULT_ORACLE_CAP)?;
        let (total, cyclic) = oracle::census(spec)?;
        let s = counts::s_count(m, n)?;
        let c = counts::c_count(m, n)?;
        let hnf = oracle::hnf_subgroup_count(m, n)?;
        if total != s || cyclic != c || hnf != s {
            return Err(disagree(
                "subgroup census",
                format!(
                    "Z_{m} x Z_{n}: enumeration ({total}, {cyclic}), formulas \
                     ({s}, {c}), triangular route {hnf}"
                ),
                format!("subgroup-census oracle {m} {n} --compare"),
            ));
        }
    }
    writeln!(
        text,
        "ok: brute-force enumeration matches the formulas on six groups"
    )
    .unwrap();

    for kind in summatory::ALL_SUM_KINDS {
        for x in [1u64, 2, 7, 40] {
            let fast = summatory::evaluate(kind, x, Method::Fast)?;
            let naive = summatory::evaluate(kind, x, Method::Naive)?;
            if fast != naive {
                return Err(disagree(
                    "summatory evaluation",
                    format!("{} at {x}: fast {fast}, naive {naive}", kind.label()),
                    format!(
                        "subgroup-census sum --kind {} --method naive {x}",
                        kind.label()
                    ),
                ));
            }
        }
    }
    writeln!(
        text,
        "ok: fast and naive summation agree for every kind at x <= 40"
    )
    .unwrap();

    let check = constants::mobius_coefficient_check()?;
    writeln!(
        text,
        "ok: Euler-Maclaurin and Mobius coefficient routes agree \
         (max difference {:.2e})",
        check.max_abs_diff
    )
    .unwrap();

    let smoke = [
        series::check_dir_s(3.0, 3.0, 200)?,
        series::check_dir_c(3.0, 3.0, 200)?,
        series::check_dir_t2(3.0, 1000)?,
        series::check_dir_u2(3.0, 1000)?,
        series::check_dir_tau_k(2, 2.0, 1000)?,
    ];
    for r in &smoke {
        if !r.pass {
            return Err(disagree(
                "series identity verification",
                format!(
                    "{} at {} left residual {:.3e} above bound {:.3e}",
                    r.identity, r.params, r.residual, r.tail_bound
                ),
                "subgroup-census verify-series".to_string(),
            ));
        }
    }
    writeln!(
        text,
        "ok: five series identities hold within their tail bounds"
    )
    .unwrap();

    text.push_str("selftest: PASS\n");
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn factor_text_formats_prime_powers() {
        assert_eq!(factor_text(1).unwrap(), "1\n");
        assert_eq!(factor_text(12).unwrap(), "2^2 3\n");
        assert_eq!(factor_text(97).unwrap(), "97\n");
        assert_eq!(factor_text(600851475143).unwrap(), "71 839 1471 6857\n");
        assert_eq!(factor_text(0).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn count_text_handles_pairs_diagonals_and_grids() {
        assert_eq!(count_text("s", &[4, 6], None).unwrap(), "16\n");
        assert_eq!(count_text("s", &[4], None).unwrap(), {
            let v = counts::s_count(4, 4).unwrap();
            format!("{v}\n")
        });
        assert_eq!(count_text("t2", &[8], None).unwrap(), "12\n");

        let grid = count_text("c", &[], Some(3)).unwrap();
        let lines: Vec<&str> = grid.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "m,n,value");
        let c33 = counts::c_count(3, 3).unwrap();
        assert_eq!(lines[9], format!("3,3,{c33}"));

        assert_eq!(count_text("t2", &[], Some(3)).unwrap_err().exit_code(), 2);
        assert_eq!(count_text("s", &[], None).unwrap_err().exit_code(), 2);
        assert_eq!(count_text("s", &[1, 2, 3], None).unwrap_err().exit_code(), 2);
        assert_eq!(count_text("u2", &[1, 2], None).unwrap_err().exit_code(), 2);
        assert_eq!(count_text("q", &[1], None).unwrap_err().exit_code(), 2);
        assert_eq!(
            count_text("s", &[], Some(COUNT_GRID_CAP + 1))
                .unwrap_err()
                .exit_code(),
            3
        );
    }

    #[test]
    fn oracle_text_reports_and_cross_checks() {
        let s = counts::s_count(4, 6).unwrap();
        let c = counts::c_count(4, 6).unwrap();
        let expected = format!("m,n,total,cyclic\n4,6,{s},{c}\n");
        assert_eq!(oracle_text(4, 6, false, 2000).unwrap(), expected);
        assert_eq!(oracle_text(4, 6, true, 2000).unwrap(), expected);
        assert_eq!(oracle_text(100, 100, false, 50).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn sum_text_matches_direct_evaluation() {
        let v = summatory::evaluate(SumKind::S, 40, Method::Naive).unwrap();
        let csv = sum_text("SUM_S", "naive", &[40], Format::Csv).unwrap();
        assert!(csv.starts_with("x,kind,method,value,seconds\n"));
        assert!(csv.contains(&format!("40,SUM_S,naive,{v},")));

        let json = sum_text("sum_s", "fast", &[10, 20], Format::Json).unwrap();
        let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["kind"], "SUM_S");
        assert_eq!(
            rows[1]["value"],
            summatory::evaluate(SumKind::S, 20, Method::Fast)
                .unwrap()
                .to_string()
        );

        assert_eq!(
            sum_text("SUM_Q", "fast", &[1], Format::Csv)
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            sum_text("SUM_S", "slow", &[1], Format::Csv)
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn format_dd_agrees_with_f64_at_low_precision() {
        let g = constants::analytic().unwrap().gamma;
        assert_eq!(format_dd(g, 12), format!("{:.11e}", g.to_f64()));
        assert_eq!(format_dd(Dd::from_i64(-12), 5), "-1.2000e1");
        assert_eq!(format_dd(Dd::ZERO, 3), "0.00e0");
    }

    #[test]
    fn format_dd_reaches_thirty_digits() {
        let g = constants::analytic().unwrap().gamma;
        assert_eq!(format_dd(g, 30), "5.77215664901532860606512090082e-1");
        assert_eq!(
            format_dd(Dd::from_ratio(1, 3), 20),
            "3.3333333333333333333e-1"
        );
        assert_eq!(
            format_dd(Dd::from_u64(1000), 20),
            "1.0000000000000000000e3"
        );
        assert_eq!(
            format_dd(Dd::from_ratio(1, 1000), 20),
            "1.0000000000000000000e-3"
        );
    }

    #[test]
    fn format_dd_carries_rounding_across_all_nines() {
        let v = Dd::from_ratio(999_999, 1_000_000);
        assert_eq!(format_dd(v, 4), "1.000e0");
        let w = Dd::from_ratio(2_999_999, 1_000_000);
        assert_eq!(format_dd(w, 4), "3.000e0");
    }

    #[test]
    fn constant_rows_cover_the_published_table() {
        let rows = constant_rows().unwrap();
        let get = |name: &str| rows.iter().find(|r| r.name == name).unwrap();

        assert!((get("gamma").value - 0.5772156649015329).abs() < 1e-15);
        assert!((get("A3").value - 0.20264236728467554).abs() < 1e-15);
        assert!((get("c_diag_quadratic").value - 1.25).abs() < 1e-15);
        assert!((get("s_diag_quadratic").value - 2.0561675835602830).abs() < 1e-13);
        assert!((get("psi_quadratic").value - 0.75990887731753329).abs() < 1e-13);
        assert!((get("divisor_linear").value - 0.15443132980306572).abs() < 1e-15);

        let bp = get("b2_product");
        assert_eq!(bp.provenance, "product");
        assert!(bp.error_bound.unwrap() < 1e-6);

        let experimental = get("tau_delta_series_1e5");
        assert_eq!(experimental.provenance, "EXPERIMENTAL");
        assert!(experimental.error_bound.is_none());
        assert!((experimental.value - 4.201129268917363).abs() < 1e-9);

        // Rank-two coefficients shift the rank-free ones by the b values.
        let a2 = get("A2").value;
        let c2 = get("C2").value;
        let b2 = get("b2_series").value;
        assert!((a2 - c2 - b2).abs() < 1e-12);
    }

    #[test]
    fn constants_renderings_are_deterministic() {
        let rows = constant_rows().unwrap();
        let t1 = render_constants_table(&rows, 30);
        let t2 = render_constants_table(&rows, 30);
        assert_eq!(t1, t2);
        let j1 = serde_json::to_string_pretty(&rows).unwrap();
        let j2 = serde_json::to_string_pretty(&rows).unwrap();
        assert_eq!(j1, j2);
        assert!(j1.contains("\"error_bound\": null"));
    }

    #[test]
    fn check_point_dispatches_and_validates() {
        let p = PointSpec {
            identity: "DIR_T2".to_string(),
            z: Some(3.0),
            w: None,
            k: None,
            s: None,
            n: 500,
        };
        assert!(check_point(&p).unwrap().pass);

        let missing = PointSpec {
            identity: "DIR_S".to_string(),
            z: Some(3.0),
            w: None,
            k: None,
            s: None,
            n: 100,
        };
        let err = check_point(&missing).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("\"w\""));
    }

    #[test]
    fn series_csv_quotes_the_params_column() {
        let r = series::check_dir_s(3.0, 3.0, 100).unwrap();
        let csv = render_series_results(std::slice::from_ref(&r), Format::Csv).unwrap();
        assert!(csv.contains("\"z = 3, w = 3\"") || csv.contains(&format!("\"{}\"", r.params)));
        assert!(csv.ends_with("PASS\n"));
    }

    #[test]
    fn report_text_emits_one_block_per_kind() {
        let grid = vec![100, 200, 400, 800];
        let csv = report_text(
            &["SUM_PSI".to_string(), "D_DIVISOR".to_string()],
            Some(grid.clone()),
            Format::Csv,
        )
        .unwrap();
        assert!(csv.contains("# kind=SUM_PSI"));
        assert!(csv.contains("# kind=D_DIVISOR"));
        assert!(csv.contains("x,exact,main_term,residual,residual_over_x2"));

        let json = report_text(&["SUM_PSI".to_string()], Some(grid), Format::Json).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["models"][0]["kind"], "SUM_PSI");
        assert_eq!(doc["probes"][0]["points"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn selftest_passes_and_fault_injection_reports_exit_four() {
        let text = selftest_text(false).unwrap();
        assert!(text.ends_with("selftest: PASS\n"));
        assert_eq!(text.matches("ok:").count(), 5);

        let err = selftest_text(true).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err
            .to_string()
            .contains("reproduce with: subgroup-census selftest --inject-fault"));
    }

    #[test]
    fn emit_writes_the_requested_file() {
        let path = std::env::temp_dir().join(format!(
            "subgroup-census-cli-test-{}.csv",
            std::process::id()
        ));
        emit(&Some(path.clone()), "m,n,value\n1,1,1\n").unwrap();
        let read_back = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(read_back, "m,n,value\n1,1,1\n");

        let bad = PathBuf::from("/nonexistent-dir/census.csv");
        assert_eq!(emit(&Some(bad), "x").unwrap_err().exit_code(), 1);
    }
}
