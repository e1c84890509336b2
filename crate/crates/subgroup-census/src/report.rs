//! Comparison of exact summatory values against their asymptotic main
//! terms: models with analytically fixed logarithm coefficients and a
//! single fitted constant, empirical error-exponent probes, and CSV/JSON
//! rendering of the results.

use serde::Serialize;

use crate::constants;
use crate::error::{CensusError, Result};
use crate::summatory::{evaluate, Method, SumKind};

/// The standard evaluation grid: half-decade steps from 10^3 to 10^6.
pub fn default_grid() -> Vec<u64> {
    vec![1000, 3162, 10_000, 31_623, 100_000, 316_228, 1_000_000]
}

/// Shape of the main term a kind is compared against.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(tag = "form")]
pub enum MainTermForm {
    /// x^2 (k3 ln^3 x + k2 ln^2 x + k1 ln x + c0) with fixed k's from the
    /// analytic constants and c0 fitted by least squares on the grid.
    FittedLogCubic { fixed: [f64; 3], fitted_c0: f64 },
    /// constant * x^2 with a fully pinned constant; nothing is fitted.
    PinnedQuadratic { constant: f64 },
    /// x ln x + linear * x, the divisor summatory main term.
    DivisorMain { linear: f64 },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModelPoint {
    pub x: u64,
    /// Exact value; serialized as a string since it can exceed 2^64.
    #[serde(serialize_with = "serialize_u128_as_string")]
    pub exact: u128,
    pub main_term: f64,
    pub residual: f64,
    pub residual_over_x2: f64,
}

fn serialize_u128_as_string<S: serde::Serializer>(
    v: &u128,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticModel {
    #[serde(serialize_with = "serialize_kind_label")]
    pub kind: SumKind,
    #[serde(flatten)]
    pub form: MainTermForm,
    pub points: Vec<ModelPoint>,
}

fn serialize_kind_label<S: serde::Serializer>(
    kind: &SumKind,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(kind.label())
}

/// Empirical log-log regression of the absolute model residual.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentProbe {
    #[serde(serialize_with = "serialize_kind_label")]
    pub kind: SumKind,
    /// (x, |residual|) pairs that entered the regression.
    pub points: Vec<(u64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of the log residuals from the line.
    pub rms_deviation: f64,
    pub note: &'static str,
}

pub const PROBE_NOTE: &str = "empirical slope only; no claim about the true \
                              error exponent (e.g. 1117/701)";

fn validate_grid(grid: &[u64]) -> Result<()> {
    if grid.len() < 4 {
        return Err(CensusError::InvalidInput(format!(
            "report grid needs at least 4 points, got {}",
            grid.len()
        )));
    }
    for pair in grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(CensusError::InvalidInput(
                "report grid must be strictly increasing".into(),
            ));
        }
    }
    if grid[0] < 2 {
        return Err(CensusError::InvalidInput(
            "report grid points must be at least 2".into(),
        ));
    }
    Ok(())
}

/// Fixed model pieces for each kind, before any fitting.
fn form_skeleton(kind: SumKind) -> Result<MainTermForm> {
    let c = constants::analytic()?;
    let as_f64 = |v: [crate::dd::Dd; 3]| [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()];
    Ok(match kind {
        SumKind::S => MainTermForm::FittedLogCubic {
            fixed: as_f64(constants::s_sum_main_coeffs()?),
            fitted_c0: f64::NAN,
        },
        SumKind::C => MainTermForm::FittedLogCubic {
            fixed: as_f64(constants::c_sum_main_coeffs()?),
            fitted_c0: f64::NAN,
        },
        SumKind::T => MainTermForm::FittedLogCubic {
            fixed: as_f64(constants::t_sum_main_coeffs()?),
            fitted_c0: f64::NAN,
        },
        SumKind::SRank2 => MainTermForm::FittedLogCubic {
            fixed: as_f64(constants::s_rank2_main_coeffs()?),
            fitted_c0: f64::NAN,
        },
        SumKind::CRank2 => MainTermForm::FittedLogCubic {
            fixed: as_f64(constants::c_rank2_main_coeffs()?),
            fitted_c0: f64::NAN,
        },
        SumKind::UCoprime => {
            let [b2, b1, _] = constants::coprime_main_coeffs()?;
            MainTermForm::FittedLogCubic {
                fixed: [0.0, b2.value.to_f64(), b1.value.to_f64()],
                fitted_c0: f64::NAN,
            }
        }
        // single poles at 2: the quadratic constants fall out of the
        // Dirichlet series residues
        SumKind::SDiag => MainTermForm::PinnedQuadratic {
            constant: (c.zeta2.powi(3) / (c.zeta4 + c.zeta4)).to_f64(),
        },
        SumKind::CDiag => MainTermForm::PinnedQuadratic {
            constant: (c.zeta2.powi(2) / (c.zeta4 + c.zeta4)).to_f64(),
        },
        SumKind::Psi => MainTermForm::PinnedQuadratic {
            constant: (c.zeta2 / (c.zeta4 + c.zeta4)).to_f64(),
        },
        SumKind::DDivisor => MainTermForm::DivisorMain {
            linear: c.two_gamma_minus_one().to_f64(),
        },
    })
}

/// Least-squares constant: the mean of exact/x^2 minus the fixed log part.
fn fit_constant(fixed: [f64; 3], points: &[(u64, u128)]) -> f64 {
    let mut acc = 0f64;
    for &(x, exact) in points {
        let xf = x as f64;
        let l = xf.ln();
        acc += exact as f64 / (xf * xf) - (fixed[0] * l * l * l + fixed[1] * l * l + fixed[2] * l);
    }
    acc / points.len() as f64
}

fn main_term_value(form: &MainTermForm, x: u64) -> f64 {
    let xf = x as f64;
    let l = xf.ln();
    match *form {
        MainTermForm::FittedLogCubic { fixed, fitted_c0 } => {
            xf * xf * (fixed[0] * l * l * l + fixed[1] * l * l + fixed[2] * l + fitted_c0)
        }
        MainTermForm::PinnedQuadratic { constant } => constant * xf * xf,
        MainTermForm::DivisorMain { linear } => xf * l + linear * xf,
    }
}

/// Evaluates the kind exactly on the grid and attaches the model: fixed
/// logarithm coefficients from the analytic constants, with the constant
/// term fitted on this same grid where the model has one.
pub fn fit_main_term(kind: SumKind, grid: &[u64]) -> Result<AsymptoticModel> {
    validate_grid(grid)?;
    let mut exact = Vec::with_capacity(grid.len());
    for &x in grid {
        exact.push((x, evaluate(kind, x, Method::Fast)?));
    }
    let mut form = form_skeleton(kind)?;
    if let MainTermForm::FittedLogCubic { fixed, fitted_c0 } = &mut form {
        *fitted_c0 = fit_constant(*fixed, &exact);
    }
    let points = exact
        .into_iter()
        .map(|(x, e)| {
            let main = main_term_value(&form, x);
            let residual = e as f64 - main;
            let xf = x as f64;
            ModelPoint {
                x,
                exact: e,
                main_term: main,
                residual,
                residual_over_x2: residual / (xf * xf),
            }
        })
        .collect();
    Ok(AsymptoticModel { kind, form, points })
}

/// Log-log regression of |residual| against x on the given grid. The model
/// (including any fitted constant) is built on the same grid first.
pub fn exponent_probe(kind: SumKind, grid: &[u64]) -> Result<ExponentProbe> {
    let model = fit_main_term(kind, grid)?;
    let points: Vec<(u64, f64)> = model
        .points
        .iter()
        .filter(|p| p.residual.abs() > 0.0)
        .map(|p| (p.x, p.residual.abs()))
        .collect();
    if points.len() < 3 {
        return Err(CensusError::InvalidInput(format!(
            "exponent probe for {} needs at least 3 nonzero residuals, got {}",
            kind.label(),
            points.len()
        )));
    }
    let lx: Vec<f64> = points.iter().map(|&(x, _)| (x as f64).ln()).collect();
    let le: Vec<f64> = points.iter().map(|&(_, e)| e.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let me = le.iter().sum::<f64>() / n;
    let mut sxx = 0f64;
    let mut sxy = 0f64;
    for i in 0..lx.len() {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (le[i] - me);
    }
    let slope = sxy / sxx;
    let intercept = me - slope * mx;
    let mut ss = 0f64;
    for i in 0..lx.len() {
        let d = le[i] - (slope * lx[i] + intercept);
        ss += d * d;
    }
    let rms_deviation = (ss / n).sqrt();
    Ok(ExponentProbe {
        kind,
        points,
        slope,
        intercept,
        rms_deviation,
        note: PROBE_NOTE,
    })
}

/// CSV rendering of one model: a fixed header and one row per grid point,
/// floats at full double precision.
pub fn render_csv(model: &AsymptoticModel) -> String {
    let mut out = String::from("x,exact,main_term,residual,residual_over_x2\n");
    for p in &model.points {
        out.push_str(&format!(
            "{},{},{:.14e},{:.14e},{:.14e}\n",
            p.x, p.exact, p.main_term, p.residual, p.residual_over_x2
        ));
    }
    out
}

/// The full report payload for JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub models: Vec<AsymptoticModel>,
    pub probes: Vec<ExponentProbe>,
}
