//! Factorization, the classical multiplicative functions, Dirichlet
//! convolution, and linear sieves. Everything downstream (subgroup counts,
//! summatory functions, series checks) is built on this module.

use crate::error::{CensusError, Result};

/// Largest supported sieve limit. Tables above roughly 10^7 are
/// memory-hungry; the cap keeps requests inside what exact 64-bit
/// per-element values can honor.
pub const SIEVE_CAP: u64 = 100_000_000;

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization of a positive integer below 2^63, factors ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.n
    }

    /// Prime-exponent pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, k)| k as u64 + 1).product()
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, k)| {
                let pk = p.pow(k);
                pk - pk / p
            })
            .product()
    }

    pub fn psi(&self) -> Result<u64> {
        let mut acc: u64 = 1;
        for &(p, k) in &self.factors {
            let pk = p
                .checked_pow(k)
                .ok_or(CensusError::Overflow {
                    context: "psi",
                    a: self.n,
                    b: self.n,
                })?;
            let factor = pk + pk / p;
            acc = acc.checked_mul(factor).ok_or(CensusError::Overflow {
                context: "psi",
                a: self.n,
                b: self.n,
            })?;
        }
        Ok(acc)
    }

    pub fn mu(&self) -> i64 {
        if self.factors.iter().any(|&(_, k)| k > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The Dirichlet convolution of mu and phi evaluated at the factored
    /// value: p - 2 at a prime, p^(k-2)(p-1)^2 at higher prime powers.
    /// Always nonnegative and at most phi.
    pub fn mu_star_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, k)| {
                if k == 1 {
                    p - 2
                } else {
                    let pk2 = p.pow(k - 2);
                    pk2 * (p - 1) * (p - 1)
                }
            })
            .product()
    }

    /// Number of ways to write the value as a^2 * b: the product of
    /// floor(k/2) + 1 over prime exponents k.
    pub fn tau12(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, k)| (k / 2) as u64 + 1)
            .product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, k) in &self.factors {
            let base = divs.len();
            let mut pe = 1u64;
            for _ in 0..k {
                pe *= p;
                for i in 0..base {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Deterministic factorization: trial division through a 30-wheel up to
/// 10^6, then Miller-Rabin with fixed witnesses plus Pollard's rho for any
/// remaining cofactor.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(CensusError::InvalidInput(
            "factorize requires n >= 1".into(),
        ));
    }
    if n >= 1u64 << 63 {
        return Err(CensusError::InvalidInput(format!(
            "factorize supports n < 2^63, got {n}"
        )));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rem = n;
    for p in [2u64, 3, 5] {
        if rem % p == 0 {
            let mut k = 0u32;
            while rem % p == 0 {
                rem /= p;
                k += 1;
            }
            factors.push((p, k));
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut wi = 0usize;
    while d <= TRIAL_LIMIT && d * d <= rem {
        if rem % d == 0 {
            let mut k = 0u32;
            while rem % d == 0 {
                rem /= d;
                k += 1;
            }
            factors.push((d, k));
        }
        d += WHEEL[wi];
        wi = (wi + 1) & 7;
    }
    if rem > 1 {
        if d * d > rem {
            factors.push((rem, 1));
        } else {
            let mut primes = Vec::new();
            split_into_primes(rem, &mut primes);
            primes.sort_unstable();
            let mut i = 0;
            while i < primes.len() {
                let p = primes[i];
                let mut k = 0u32;
                while i < primes.len() && primes[i] == p {
                    k += 1;
                    i += 1;
                }
                factors.push((p, k));
            }
        }
    }
    Ok(Factorization { n, factors })
}

fn split_into_primes(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    split_into_primes(d, out);
    split_into_primes(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut x = 2u64;
    let mut y = 2u64;
    let mut d = 1u64;
    let mut power = 1u64;
    let mut lam = 1u64;
    while d == 1 {
        if power == lam {
            x = y;
            power <<= 1;
            lam = 0;
        }
        y = f(y);
        lam += 1;
        d = gcd(x.abs_diff(y), n);
    }
    if d != n {
        Some(d)
    } else {
        None
    }
}

macro_rules! evaluator {
    ($name:ident, $method:ident, $ret:ty) => {
        pub fn $name(n: u64) -> Result<$ret> {
            Ok(factorize(n)?.$method())
        }
    };
}

evaluator!(tau, tau, u64);
evaluator!(phi, phi, u64);
evaluator!(mu, mu, i64);
evaluator!(mu_star_phi, mu_star_phi, u64);
evaluator!(tau12, tau12, u64);

pub fn psi(n: u64) -> Result<u64> {
    factorize(n)?.psi()
}

/// Sorted divisors of n.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Dirichlet convolution of two integer functions given as slices indexed
/// from 1 (index 0 is ignored). Both inputs must have the same length.
pub fn dirichlet_convolve(f: &[i64], g: &[i64]) -> Result<Vec<i64>> {
    if f.len() != g.len() {
        return Err(CensusError::InvalidInput(format!(
            "dirichlet_convolve requires equal lengths, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    let n = f.len().saturating_sub(1);
    let mut acc = vec![0i128; n + 1];
    for d in 1..=n {
        let fd = f[d] as i128;
        if fd == 0 {
            continue;
        }
        let mut m = d;
        let mut q = 1usize;
        while m <= n {
            acc[m] += fd * g[q] as i128;
            m += d;
            q += 1;
        }
    }
    let mut out = vec![0i64; n + 1];
    for i in 1..=n {
        out[i] = i64::try_from(acc[i]).map_err(|_| CensusError::Overflow {
            context: "dirichlet_convolve",
            a: i as u64,
            b: n as u64,
        })?;
    }
    Ok(out)
}

/// Smallest-prime-factor sieve with the prime-power component of each index,
/// shared by all multiplicative-column builders.
pub(crate) struct SpfSieve {
    pub limit: usize,
    pub spf: Vec<u32>,
    low: Vec<u32>,
}

impl SpfSieve {
    pub fn build(limit: usize) -> SpfSieve {
        let mut spf = vec![0u32; limit + 1];
        let mut low = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                low[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                if p > si {
                    break;
                }
                let ip = i * p as usize;
                if ip > limit {
                    break;
                }
                spf[ip] = p;
                low[ip] = if p == si { low[i] * p } else { p };
            }
        }
        SpfSieve { limit, spf, low }
    }

    /// Builds a multiplicative column from its prime-power values.
    pub fn column_u64(&self, f_pp: impl Fn(u64, u32, u64) -> u64) -> Vec<u64> {
        let mut col = vec![0u64; self.limit + 1];
        if self.limit >= 1 {
            col[1] = 1;
        }
        for n in 2..=self.limit {
            let pk = self.low[n] as usize;
            if pk == n {
                let p = self.spf[n] as u64;
                let mut k = 0u32;
                let mut v = n as u64;
                while v > 1 {
                    v /= p;
                    k += 1;
                }
                col[n] = f_pp(p, k, n as u64);
            } else {
                col[n] = col[n / pk] * col[pk];
            }
        }
        col
    }

    pub fn column_u32(&self, f_pp: impl Fn(u64, u32, u64) -> u32) -> Vec<u32> {
        let mut col = vec![0u32; self.limit + 1];
        if self.limit >= 1 {
            col[1] = 1;
        }
        for n in 2..=self.limit {
            let pk = self.low[n] as usize;
            if pk == n {
                let p = self.spf[n] as u64;
                let mut k = 0u32;
                let mut v = n as u64;
                while v > 1 {
                    v /= p;
                    k += 1;
                }
                col[n] = f_pp(p, k, n as u64);
            } else {
                col[n] = col[n / pk] * col[pk];
            }
        }
        col
    }

    pub fn column_mu(&self) -> Vec<i8> {
        let mut col = vec![0i8; self.limit + 1];
        if self.limit >= 1 {
            col[1] = 1;
        }
        for n in 2..=self.limit {
            let pk = self.low[n] as usize;
            if pk == n {
                col[n] = if self.spf[n] as usize == n { -1 } else { 0 };
            } else {
                col[n] = col[n / pk] * col[pk];
            }
        }
        col
    }
}

pub(crate) fn pp_phi(p: u64, _k: u32, pk: u64) -> u64 {
    pk - pk / p
}

pub(crate) fn pp_psi(p: u64, _k: u32, pk: u64) -> u64 {
    pk + pk / p
}

pub(crate) fn pp_mu_star_phi(p: u64, k: u32, pk: u64) -> u64 {
    if k == 1 {
        p - 2
    } else {
        (pk / p / p) * (p - 1) * (p - 1)
    }
}

/// Table of the six arithmetic-function columns over 1..=limit, all built in
/// one linear-sieve pass family. Arrays are indexed by n; index 0 is unused.
pub struct ArithTable {
    limit: usize,
    pub tau: Vec<u32>,
    pub phi: Vec<u64>,
    pub mu: Vec<i8>,
    pub psi: Vec<u64>,
    pub mu_star_phi: Vec<u64>,
    pub tau12: Vec<u32>,
}

impl ArithTable {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }
}

pub fn sieve_range(limit: u64) -> Result<ArithTable> {
    if limit == 0 {
        return Err(CensusError::InvalidInput(
            "sieve_range requires limit >= 1".into(),
        ));
    }
    if limit > SIEVE_CAP {
        return Err(CensusError::ResourceCap(format!(
            "sieve_range limit {limit} exceeds cap {SIEVE_CAP}"
        )));
    }
    let n = limit as usize;
    let sieve = SpfSieve::build(n);
    Ok(ArithTable {
        limit: n,
        tau: sieve.column_u32(|_, k, _| k + 1),
        phi: sieve.column_u64(pp_phi),
        mu: sieve.column_mu(),
        psi: sieve.column_u64(pp_psi),
        mu_star_phi: sieve.column_u64(pp_mu_star_phi),
        tau12: sieve.column_u32(|_, k, _| k / 2 + 1),
    })
}

/// Primes up to and including limit, by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
