//! Double-double arithmetic: each value is an unevaluated sum `hi + lo` of
//! two `f64` components with `|lo| <= ulp(hi)/2`, giving roughly 31-32
//! significant decimal digits. Used as the working precision for every
//! analytic constant so that cancellation-heavy coefficient expressions keep
//! comfortably more than 30 correct digits before rounding to `f64` for
//! reports.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// pi with the low word carrying the bits beyond f64 precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    pub const LN_2: Dd = Dd {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion: the rounding residue of `x as f64` is recovered in
    /// the low word.
    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    pub fn from_i64(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    /// Conversion exact to within one double-double rounding.
    pub fn from_u128(x: u128) -> Dd {
        let top = (x >> 64) as u64;
        let bottom = x as u64;
        Dd::from_u64(top) * Dd { hi: 1.8446744073709552e19, lo: 0.0 } + Dd::from_u64(bottom)
    }

    pub fn from_i128(x: i128) -> Dd {
        if x < 0 {
            -Dd::from_u128(x.unsigned_abs())
        } else {
            Dd::from_u128(x as u128)
        }
    }

    /// Correctly represented rational: numerator divided by denominator in
    /// double-double precision.
    pub fn from_ratio(num: i64, den: i64) -> Dd {
        Dd::from_i64(num) / Dd::from_i64(den)
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    #[inline]
    fn mul_f64(self, c: f64) -> Dd {
        let (p, e) = two_prod(self.hi, c);
        let (hi, lo) = quick_two_sum(p, self.lo.mul_add(c, e));
        Dd { hi, lo }
    }

    /// Multiplication by an exact power of two.
    #[inline]
    fn scale_pow2(self, c: f64) -> Dd {
        Dd {
            hi: self.hi * c,
            lo: self.lo * c,
        }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        assert!(self.hi >= 0.0, "sqrt of negative double-double");
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::from_f64(self.hi.sqrt());
        // One Newton step doubles the 53-bit seed to full precision.
        let r = self - y * y;
        y + r / (y + y)
    }

    /// exp(self) by argument reduction over ln 2, a scaled Taylor series and
    /// repeated squaring. Accurate to a few units in the 32nd digit for
    /// |self| up to several hundred.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = (self - Dd::LN_2.mul_f64(k)).scale_pow2(1.0 / 512.0);
        // p accumulates exp(r) - 1. Each term divides by the exact Dd
        // integer: multiplying by a rounded 1/i instead would plant a
        // 2^-54 relative error that the squarings below amplify.
        let mut p = r;
        let mut term = r;
        let mut i = 2.0f64;
        while term.hi.abs() > 1e-40 && i < 40.0 {
            term = (term * r) / Dd::from_f64(i);
            p = p + term;
            i += 1.0;
        }
        for _ in 0..9 {
            p = p.scale_pow2(2.0) + p * p;
        }
        (Dd::ONE + p).scale_pow2((2.0f64).powi(k as i32))
    }

    /// Natural logarithm via Newton iteration on exp, seeded from `f64::ln`.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Real power of a positive base.
    pub fn powf(self, e: Dd) -> Dd {
        (self.ln() * e).exp()
    }

    /// Parses a decimal literal (optional sign, fraction, exponent) into a
    /// double-double with relative error around 1e-31. Intended for test
    /// reference values; returns None on malformed input.
    pub fn parse(s: &str) -> Option<Dd> {
        let s = s.trim();
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mantissa, exp10) = match rest.find(['e', 'E']) {
            Some(pos) => {
                let e: i32 = rest[pos + 1..].parse().ok()?;
                (&rest[..pos], e)
            }
            None => (rest, 0),
        };
        // Accumulate digits in u128 chunks so almost all of the mantissa is
        // combined exactly; digit-at-a-time Dd updates would pile up tens of
        // rounding errors over a 50-digit reference string.
        let ten = Dd::from_f64(10.0);
        let mut acc = Dd::ZERO;
        let mut chunk: u128 = 0;
        let mut chunk_len = 0i32;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut seen_digit = false;
        for ch in mantissa.chars() {
            match ch {
                '0'..='9' => {
                    chunk = chunk * 10 + (ch as u8 - b'0') as u128;
                    chunk_len += 1;
                    if chunk_len == 34 {
                        acc = acc * ten.powi(chunk_len) + Dd::from_u128(chunk);
                        chunk = 0;
                        chunk_len = 0;
                    }
                    if seen_dot {
                        frac_digits += 1;
                    }
                    seen_digit = true;
                }
                '.' if !seen_dot => seen_dot = true,
                _ => return None,
            }
        }
        if chunk_len > 0 {
            acc = acc * ten.powi(chunk_len) + Dd::from_u128(chunk);
        }
        if !seen_digit {
            return None;
        }
        let scale = exp10 - frac_digits;
        let result = acc * ten.powi(scale);
        Some(if neg { -result } else { result })
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl From<u64> for Dd {
    fn from(x: u64) -> Dd {
        Dd::from_u64(x)
    }
}
