//! Numerical verification of the Dirichlet-series identities behind the
//! counting functions: truncated partial sums are compared against closed
//! zeta-product forms, with explicit tail bounds deciding pass or fail.
//!
//! Each check reports the partial sum, the closed form, their difference,
//! and a rigorously derived bound on the truncation tail. A check passes
//! when the observed residual sits inside the bound, so a genuine formula
//! defect cannot hide behind truncation error.

use std::fmt;
use std::str::FromStr;

use crate::arith::{factorize, primes_up_to, SpfSieve};
use crate::constants::{self, zeta_at, EmDepth};
use crate::error::{CensusError, Result};

/// Which identity a check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// Double series of s(m,n) m^(-z) n^(-w) against
    /// zeta(z)^2 zeta(w)^2 zeta(z+w-1) / zeta(z+w).
    STotal,
    /// Double series of c(m,n), one more 1/zeta(z+w) factor.
    CCyclic,
    /// Single series of t2(n) n^(-z) against
    /// zeta(z)^2 zeta(2z)^2 zeta(2z-1) times an Euler correction.
    T2Diagonal,
    /// Single series of u2(n) n^(-z); one zeta(2z) factor drops.
    U2Diagonal,
    /// Scaled divisor series sum tau(Kn) n^(-s) against
    /// tau(K) zeta(s)^2 F_K(s).
    ScaledTau,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::STotal,
        IdentityKind::CCyclic,
        IdentityKind::T2Diagonal,
        IdentityKind::U2Diagonal,
        IdentityKind::ScaledTau,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityKind::STotal => "DIR_S",
            IdentityKind::CCyclic => "DIR_C",
            IdentityKind::T2Diagonal => "DIR_T2",
            IdentityKind::U2Diagonal => "DIR_U2",
            IdentityKind::ScaledTau => "DIR_TAU_K",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityKind {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<IdentityKind> {
        let up = s.to_ascii_uppercase();
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.label() == up)
            .ok_or_else(|| {
                CensusError::InvalidInput(format!(
                    "unknown series identity {s:?}; expected one of \
                     DIR_S, DIR_C, DIR_T2, DIR_U2, DIR_TAU_K"
                ))
            })
    }
}

/// Outcome of one truncated-series comparison.
#[derive(Clone, Debug)]
pub struct SeriesCheckResult {
    pub identity: IdentityKind,
    /// Human-readable exponents and scale, e.g. "z=3, w=2.5" or "K=12, s=2".
    pub params: String,
    pub cutoff: u64,
    pub lhs_partial: f64,
    pub rhs_closed: f64,
    /// lhs_partial - rhs_closed.
    pub residual: f64,
    /// Upper bound on the absolute truncation tail.
    pub tail_bound: f64,
    pub pass: bool,
}

const SERIES_CUTOFF_CAP: u64 = 10_000_000;
const EULER_PRODUCT_PRIME_CUTOFF: u64 = 200_000;

fn require_cutoff(n: u64) -> Result<()> {
    if n == 0 {
        return Err(CensusError::InvalidInput(
            "series cutoff must be at least 1".into(),
        ));
    }
    if n > SERIES_CUTOFF_CAP {
        return Err(CensusError::ResourceCap(format!(
            "series cutoff {n} exceeds the supported limit {SERIES_CUTOFF_CAP}"
        )));
    }
    Ok(())
}

fn require_exponent(name: &str, value: f64) -> Result<()> {
    if !(value > 1.0) || !value.is_finite() {
        return Err(CensusError::InvalidInput(format!(
            "series exponent {name} must exceed 1, got {value}"
        )));
    }
    Ok(())
}

fn zeta_f64(s: f64) -> Result<f64> {
    Ok(zeta_at(s, EmDepth::Full)?.to_f64())
}

/// Upper bound on sum over a > m of tau(a) a^(-z) for z > 1, by partial
/// summation with the elementary envelope D(t) <= t (ln t + 1).
fn tau_tail(m: u64, z: f64) -> f64 {
    let mf = m as f64;
    let z1 = z - 1.0;
    z * mf.powf(1.0 - z) * ((mf.ln() + 1.0) / z1 + 1.0 / (z1 * z1))
}

/// Shared body for the two divisor-weighted double series. The truncated
/// sum over d <= N with inner cutoffs floor(N/d) covers exactly the pairs
/// (m, n) with both coordinates <= N, so the tail is the complement of
/// that square and splits into three bounded pieces.
fn check_divisor_weighted(
    kind: IdentityKind,
    z: f64,
    w: f64,
    n: u64,
) -> Result<SeriesCheckResult> {
    require_exponent("z", z)?;
    require_exponent("w", w)?;
    require_cutoff(n)?;
    let nn = n as usize;
    let sieve = SpfSieve::build(nn);
    let tau = sieve.column_u32(|_, k, _| k + 1);
    let weight = match kind {
        IdentityKind::STotal => sieve.column_u64(crate::arith::pp_phi),
        IdentityKind::CCyclic => sieve.column_u64(crate::arith::pp_mu_star_phi),
        _ => unreachable!("divisor-weighted checks cover DIR_S and DIR_C only"),
    };
    drop(sieve);

    let mut prefix_z = vec![0f64; nn + 1];
    let mut prefix_w = vec![0f64; nn + 1];
    for a in 1..=nn {
        let af = a as f64;
        let t = tau[a] as f64;
        prefix_z[a] = prefix_z[a - 1] + t * af.powf(-z);
        prefix_w[a] = prefix_w[a - 1] + t * af.powf(-w);
    }

    let zeta_z_sq = {
        let v = zeta_f64(z)?;
        v * v
    };
    let zeta_w_sq = {
        let v = zeta_f64(w)?;
        v * v
    };

    let mut lhs = 0f64;
    // tail over the three missing regions: pairs whose d <= N part has an
    // inner index beyond floor(N/d), bounded by the tau tails, plus the
    // d > N block under weight(d) <= d
    let mut tail = 0f64;
    for d in 1..=nn {
        let q = nn / d;
        let wd = weight[d] as f64;
        let scale = wd * (d as f64).powf(-(z + w));
        lhs += scale * prefix_z[q] * prefix_w[q];
        tail += scale * (zeta_z_sq * tau_tail(q as u64, w) + zeta_w_sq * tau_tail(q as u64, z));
    }
    tail += zeta_z_sq * zeta_w_sq * (n as f64).powf(2.0 - z - w) / (z + w - 2.0);

    // alternative route via the sharp pointwise envelope 4 s(m,n) <= 5 m n,
    // useful deep in the convergent region
    if z > 2.0 && w > 2.0 {
        let envelope = 1.25
            * ((n as f64).powf(2.0 - z) * zeta_f64(w - 1.0)? / (z - 2.0)
                + zeta_f64(z - 1.0)? * (n as f64).powf(2.0 - w) / (w - 2.0));
        tail = tail.min(envelope);
    }

    let mut rhs = zeta_z_sq * zeta_w_sq * zeta_f64(z + w - 1.0)? / zeta_f64(z + w)?;
    if kind == IdentityKind::CCyclic {
        rhs /= zeta_f64(z + w)?;
    }
    let residual = lhs - rhs;
    Ok(SeriesCheckResult {
        identity: kind,
        params: format!("z={z}, w={w}"),
        cutoff: n,
        lhs_partial: lhs,
        rhs_closed: rhs,
        residual,
        tail_bound: tail,
        pass: residual.abs() <= tail,
    })
}

pub fn check_dir_s(z: f64, w: f64, n: u64) -> Result<SeriesCheckResult> {
    check_divisor_weighted(IdentityKind::STotal, z, w, n)
}

pub fn check_dir_c(z: f64, w: f64, n: u64) -> Result<SeriesCheckResult> {
    check_divisor_weighted(IdentityKind::CCyclic, z, w, n)
}

/// t2 at a prime power: sum over i <= k/2 of p^i (k-2i+1) (floor((k-2i)/2)+1).
fn t2_prime_power(p: u64, k: u32) -> u64 {
    let mut total = 0u64;
    let mut p_i = 1u64;
    for i in 0..=(k / 2) {
        let r = (k - 2 * i) as u64;
        total += p_i * (r + 1) * (r / 2 + 1);
        if i < k / 2 {
            p_i *= p;
        }
    }
    total
}

/// u2 at a prime power: t2 minus its shift by p^2.
fn u2_prime_power(p: u64, k: u32) -> u64 {
    if k >= 2 {
        t2_prime_power(p, k) - t2_prime_power(p, k - 2)
    } else {
        t2_prime_power(p, k)
    }
}

/// Euler correction prod over p of (1 + p^(-2z) - 2 p^(-3z)), truncated
/// where the omitted factors are below double precision.
fn diagonal_euler_correction(z: f64) -> f64 {
    let mut acc = 1f64;
    for p in primes_up_to(EULER_PRODUCT_PRIME_CUTOFF) {
        let pf = p as f64;
        acc *= 1.0 + pf.powf(-2.0 * z) - 2.0 * pf.powf(-3.0 * z);
    }
    acc
}

/// Closed form of the full t2 or u2 Dirichlet series at exponent u > 1.
fn diagonal_closed_form(kind: IdentityKind, u: f64) -> Result<f64> {
    let zeta_u = zeta_f64(u)?;
    let zeta_2u = zeta_f64(2.0 * u)?;
    let base = zeta_u * zeta_u * zeta_2u * zeta_f64(2.0 * u - 1.0)? * diagonal_euler_correction(u);
    Ok(match kind {
        IdentityKind::T2Diagonal => base * zeta_2u,
        IdentityKind::U2Diagonal => base,
        _ => unreachable!("closed form covers DIR_T2 and DIR_U2 only"),
    })
}

fn check_diagonal(kind: IdentityKind, z: f64, n: u64) -> Result<SeriesCheckResult> {
    require_exponent("z", z)?;
    require_cutoff(n)?;
    let sieve = SpfSieve::build(n as usize);
    let column = match kind {
        IdentityKind::T2Diagonal => sieve.column_u64(|p, k, _| t2_prime_power(p, k)),
        IdentityKind::U2Diagonal => sieve.column_u64(|p, k, _| u2_prime_power(p, k)),
        _ => unreachable!(),
    };
    drop(sieve);
    let mut lhs = 0f64;
    for (i, &v) in column.iter().enumerate().skip(1) {
        lhs += v as f64 * (i as f64).powf(-z);
    }
    let rhs = diagonal_closed_form(kind, z)?;
    // shifted-majorant tail: the terms are nonnegative, so the tail at
    // exponent z is at most N^(-delta) times the full series at z - delta
    let delta = (z - 1.0) / 2.0;
    let tail = (n as f64).powf(-delta) * diagonal_closed_form(kind, z - delta)?;
    let residual = lhs - rhs;
    Ok(SeriesCheckResult {
        identity: kind,
        params: format!("z={z}"),
        cutoff: n,
        lhs_partial: lhs,
        rhs_closed: rhs,
        residual,
        tail_bound: tail,
        pass: residual.abs() <= tail,
    })
}

pub fn check_dir_t2(z: f64, n: u64) -> Result<SeriesCheckResult> {
    check_diagonal(IdentityKind::T2Diagonal, z, n)
}

pub fn check_dir_u2(z: f64, n: u64) -> Result<SeriesCheckResult> {
    check_diagonal(IdentityKind::U2Diagonal, z, n)
}

/// Scaled divisor series: sum over n <= cutoff of tau(Kn) n^(-s) against
/// tau(K) zeta(s)^2 F_K(s). The terms come from plain factorization of Kn,
/// which keeps this route independent of the sieve-merge logic used by the
/// summatory evaluators.
pub fn check_dir_tau_k(k: u64, s: f64, n: u64) -> Result<SeriesCheckResult> {
    if k == 0 {
        return Err(CensusError::InvalidInput(
            "scale K must be positive".into(),
        ));
    }
    require_exponent("s", s)?;
    require_cutoff(n)?;
    let tau_k = factorize(k)?.tau();
    let mut lhs = 0f64;
    for j in 1..=n {
        let kn = k.checked_mul(j).ok_or(CensusError::Overflow {
            context: "scaled divisor series term",
            a: k,
            b: j,
        })?;
        lhs += factorize(kn)?.tau() as f64 * (j as f64).powf(-s);
    }
    let zeta_s = zeta_f64(s)?;
    let rhs = tau_k as f64
        * zeta_s
        * zeta_s
        * constants::scaled_tau_euler_factor(k, s)?.to_f64();
    // tau(Kn) <= tau(K) tau(n) bounds the tail by the scaled tau tail
    let tail = tau_k as f64 * tau_tail(n, s);
    let residual = lhs - rhs;
    Ok(SeriesCheckResult {
        identity: IdentityKind::ScaledTau,
        params: format!("K={k}, s={s}"),
        cutoff: n,
        lhs_partial: lhs,
        rhs_closed: rhs,
        residual,
        tail_bound: tail,
        pass: residual.abs() <= tail,
    })
}

/// The standard verification suite: every identity at representative
/// exponents, all expected to pass within their tail bounds.
pub fn run_default_suite() -> Result<Vec<SeriesCheckResult>> {
    Ok(vec![
        check_dir_s(3.0, 3.0, 1000)?,
        check_dir_s(4.0, 2.5, 1000)?,
        check_dir_c(3.0, 3.0, 1000)?,
        check_dir_c(4.0, 2.5, 1000)?,
        check_dir_t2(3.0, 10_000)?,
        check_dir_t2(2.0, 100_000)?,
        check_dir_u2(3.0, 10_000)?,
        check_dir_u2(2.0, 100_000)?,
        check_dir_tau_k(1, 2.0, 5000)?,
        check_dir_tau_k(2, 2.0, 5000)?,
        check_dir_tau_k(12, 2.0, 5000)?,
        check_dir_tau_k(12, 3.0, 2000)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts;

    #[test]
    fn prime_power_columns_match_pair_fold_definitions() {
        let sieve = SpfSieve::build(500);
        let t2_col = sieve.column_u64(|p, k, _| t2_prime_power(p, k));
        let u2_col = sieve.column_u64(|p, k, _| u2_prime_power(p, k));
        for n in 1..=500u64 {
            assert_eq!(t2_col[n as usize], counts::t2(n).unwrap(), "t2({n})");
            assert_eq!(u2_col[n as usize], counts::u2(n).unwrap(), "u2({n})");
        }
    }

    #[test]
    fn euler_correction_matches_frozen_values() {
        assert!((diagonal_euler_correction(2.0) - 1.0432362407753081).abs() < 1e-11);
        assert!((diagonal_euler_correction(3.0) - 1.0130769764392097).abs() < 1e-11);
    }

    #[test]
    fn divisor_weighted_residuals_match_frozen_values() {
        let s33 = check_dir_s(3.0, 3.0, 200).unwrap();
        assert!((s33.residual - (-2.719e-4)).abs() < 1e-6, "{}", s33.residual);
        let c33 = check_dir_c(3.0, 3.0, 200).unwrap();
        assert!((c33.residual - (-2.536e-4)).abs() < 1e-6, "{}", c33.residual);
        let s425 = check_dir_s(4.0, 2.5, 200).unwrap();
        assert!((s425.residual - (-2.03e-3)).abs() < 1e-5, "{}", s425.residual);
        let c425 = check_dir_c(4.0, 2.5, 200).unwrap();
        assert!((c425.residual - (-1.96e-3)).abs() < 1e-5, "{}", c425.residual);
        for r in [s33, c33, s425, c425] {
            assert!(r.pass, "{} at {} should pass", r.identity, r.params);
        }
    }

    #[test]
    fn diagonal_residuals_match_frozen_values() {
        let t2_z3 = check_dir_t2(3.0, 10_000).unwrap();
        assert!((t2_z3.residual - (-3.72e-7)).abs() < 1e-8, "{}", t2_z3.residual);
        let u2_z3 = check_dir_u2(3.0, 10_000).unwrap();
        assert!((u2_z3.residual - (-2.71e-7)).abs() < 1e-8, "{}", u2_z3.residual);
        let t2_z2 = check_dir_t2(2.0, 100_000).unwrap();
        assert!((t2_z2.residual - (-1.217e-3)).abs() < 1e-6, "{}", t2_z2.residual);
        let u2_z2 = check_dir_u2(2.0, 100_000).unwrap();
        assert!((u2_z2.residual - (-8.588e-4)).abs() < 1e-6, "{}", u2_z2.residual);
        for r in [t2_z3, u2_z3, t2_z2, u2_z2] {
            assert!(r.pass, "{} at {} should pass", r.identity, r.params);
        }
    }

    #[test]
    fn residual_shrinks_under_repeated_doubling() {
        let mut last_s = f64::INFINITY;
        let mut last_c = f64::INFINITY;
        for n in [200u64, 400, 800, 1600] {
            let rs = check_dir_s(3.0, 3.0, n).unwrap();
            let rc = check_dir_c(3.0, 3.0, n).unwrap();
            assert!(rs.residual.abs() < last_s, "s stalled at N={n}");
            assert!(rc.residual.abs() < last_c, "c stalled at N={n}");
            last_s = rs.residual.abs();
            last_c = rc.residual.abs();
        }
    }

    #[test]
    fn double_series_is_symmetric_in_the_exponents() {
        let a = check_dir_s(3.0, 4.0, 300).unwrap();
        let b = check_dir_s(4.0, 3.0, 300).unwrap();
        assert!((a.lhs_partial - b.lhs_partial).abs() <= 1e-14 * a.lhs_partial.abs());
        assert!((a.rhs_closed - b.rhs_closed).abs() <= 1e-14 * a.rhs_closed.abs());
    }

    #[test]
    fn scaled_series_reduces_to_squared_zeta_at_k_one() {
        let r = check_dir_tau_k(1, 2.0, 5000).unwrap();
        let z2 = zeta_f64(2.0).unwrap();
        assert!((r.rhs_closed - z2 * z2).abs() < 1e-13);
        assert!(r.pass);
        assert!(r.residual < 0.0, "truncation from below");
    }

    #[test]
    fn scaled_series_examples_pass() {
        for (k, s, n) in [(2u64, 2.0, 2000u64), (12, 2.0, 2000), (12, 3.0, 1000)] {
            let r = check_dir_tau_k(k, s, n).unwrap();
            assert!(r.pass, "K={k}, s={s}: residual {} vs bound {}", r.residual, r.tail_bound);
            assert!(r.tail_bound.is_finite() && r.tail_bound > 0.0);
        }
    }

    #[test]
    fn default_suite_passes_throughout() {
        let suite = run_default_suite().unwrap();
        assert_eq!(suite.len(), 12);
        for r in &suite {
            assert!(
                r.pass,
                "{} ({}) N={}: residual {:e} vs bound {:e}",
                r.identity, r.params, r.cutoff, r.residual, r.tail_bound
            );
        }
    }

    #[test]
    fn domain_violations_are_rejected() {
        assert!(check_dir_s(1.0, 3.0, 100).is_err());
        assert!(check_dir_s(3.0, 0.5, 100).is_err());
        assert!(check_dir_t2(1.0, 100).is_err());
        assert!(check_dir_tau_k(0, 2.0, 100).is_err());
        assert!(check_dir_tau_k(2, 2.0, 0).is_err());
        assert!(matches!(
            check_dir_t2(2.0, SERIES_CUTOFF_CAP + 1),
            Err(CensusError::ResourceCap { .. })
        ));
    }

    #[test]
    fn identity_labels_round_trip() {
        for kind in IdentityKind::ALL {
            let parsed: IdentityKind = kind.label().parse().unwrap();
            assert_eq!(parsed, kind);
            let lower: IdentityKind = kind.label().to_ascii_lowercase().parse().unwrap();
            assert_eq!(lower, kind);
        }
        assert!("DIR_X".parse::<IdentityKind>().is_err());
    }
}
