//! Binary floating point numbers with arbitrary mantissa length.
//!
//! A `Real` is `m * 2^e` with `|m| < 2^prec`. Every operation rounds its
//! result to the larger precision of its operands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use std::f64::consts::LOG2_10;

/// Mantissa bits needed to carry `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 16
}

#[derive(Clone)]
pub struct Real {
    m: BigInt,
    e: i64,
    prec: u32,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64 - 16.0) / LOG2_10).max(1.0) as u32;
        f.write_str(&self.to_decimal(digits))
    }
}

fn round_shift(mag: BigUint, sh: u64) -> BigUint {
    if sh == 0 {
        return mag;
    }
    let half = BigUint::one() << (sh - 1);
    (mag + half) >> sh
}

impl Real {
    fn make(m: BigInt, e: i64, prec: u32) -> Real {
        if m.is_zero() {
            return Real::zero(prec);
        }
        let bits = m.bits();
        if bits <= prec as u64 {
            return Real { m, e, prec };
        }
        let sh = bits - prec as u64;
        let (s, mag) = m.into_parts();
        let mag = round_shift(mag, sh);
        Real { m: BigInt::from_biguint(s, mag), e: e + sh as i64, prec }
    }

    pub fn zero(prec: u32) -> Real {
        Real { m: BigInt::zero(), e: 0, prec }
    }

    pub fn one(prec: u32) -> Real {
        Real::from_int(BigInt::one(), prec)
    }

    pub fn from_int(n: BigInt, prec: u32) -> Real {
        Real::make(n, 0, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Real {
        Real::make(BigInt::from(n), 0, prec)
    }

    /// `num / den` rounded once.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Real {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Real::zero(prec);
        }
        let sh = (prec as i64 + 2 + den.bits() as i64 - num.bits() as i64).max(0);
        let q = (num << sh as usize) / den;
        Real::make(q, -sh, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Real {
        Real::from_ratio(q.numer(), q.denom(), prec)
    }

    /// `m * 2^e` exactly, then rounded.
    pub fn from_parts(m: BigInt, e: i64, prec: u32) -> Real {
        Real::make(m, e, prec)
    }

    /// Parses decimal notation such as `-1.25e-3`.
    pub fn parse(s: &str, prec: u32) -> Option<Real> {
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (ip, fp) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        let digits: String = format!("{ip}{fp}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let e10 = exp - fp.len() as i64;
        let ten = BigInt::from(10);
        if e10 >= 0 {
            Some(Real::from_int(n * num_traits::pow(ten, e10 as usize), prec))
        } else {
            Some(Real::from_ratio(&n, &num_traits::pow(ten, (-e10) as usize), prec))
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        Real::make(self.m.clone(), self.e, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Real {
        Real { m: self.m.abs(), e: self.e, prec: self.prec }
    }

    /// Position of the leading bit: `|x|` lies in `[2^(t-1), 2^t)`.
    fn top(&self) -> i64 {
        self.e + self.m.bits() as i64
    }

    /// `log2 |x|` as a double, finite even when `x` overflows `f64`.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.m.bits();
        let sh = bits.saturating_sub(60);
        let top = (self.m.abs() >> sh).to_f64().unwrap();
        top.log2() + (self.e + sh as i64) as f64
    }

    /// Natural logarithm of `|x|` as a double.
    pub fn ln_abs_f64(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LN_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let sh = bits.saturating_sub(60);
        let top = (&self.m >> sh).to_f64().unwrap();
        let e = self.e + sh as i64;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        Real::make(&self.m * k, self.e, self.prec)
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real::make(&self.m * k, self.e, self.prec)
    }

    pub fn div_int(&self, k: &BigInt) -> Real {
        self / &Real::from_int(k.clone(), self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Real {
        self.div_int(&BigInt::from(k))
    }

    /// Multiplication by `2^k`.
    pub fn ldexp(&self, k: i64) -> Real {
        Real { m: self.m.clone(), e: self.e + k, prec: self.prec }
    }

    pub fn powi(&self, k: u32) -> Real {
        let mut acc = Real::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Real {
        &Real::one(self.prec) / self
    }

    /// `round(x * 10^k)`.
    pub fn round_scaled(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10);
        let (mut num, mut den) = (self.m.clone(), BigInt::one());
        if k >= 0 {
            num *= num_traits::pow(ten, k as usize);
        } else {
            den *= num_traits::pow(ten, (-k) as usize);
        }
        if self.e >= 0 {
            num <<= self.e as usize;
        } else {
            den <<= (-self.e) as usize;
        }
        round_div(&num, &den)
    }

    /// Exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// Decimal rendering with `digits` significant digits.
    ///
    /// Positional notation for moderate magnitudes, scientific otherwise.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1) as i64;
        let mut e10 = (self.log2_abs() / LOG2_10).floor() as i64;
        let lo = num_traits::pow(BigInt::from(10), (digits - 1) as usize);
        let hi = &lo * 10;
        let mut scaled;
        loop {
            scaled = self.abs().round_scaled(digits - 1 - e10);
            if scaled >= hi {
                e10 += 1;
            } else if scaled < lo {
                e10 -= 1;
            } else {
                break;
            }
        }
        let ds = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if (-5..=24).contains(&e10) {
            if e10 >= 0 {
                let ip = e10 as usize + 1;
                if ds.len() <= ip {
                    format!("{}{}", ds, "0".repeat(ip - ds.len()))
                } else {
                    format!("{}.{}", &ds[..ip], &ds[ip..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-e10 - 1) as usize), ds)
            }
        } else if ds.len() > 1 {
            format!("{}.{}e{}", &ds[..1], &ds[1..], e10)
        } else {
            format!("{}e{}", ds, e10)
        };
        format!("{sign}{body}")
    }

    pub fn cmp_abs(&self, other: &Real) -> Ordering {
        (&self.abs() - &other.abs()).signum().cmp(&0)
    }

    pub fn max_abs<'a>(xs: impl IntoIterator<Item = &'a Real>, prec: u32) -> Real {
        let mut best = Real::zero(prec);
        for x in xs {
            if x.cmp_abs(&best) == Ordering::Greater {
                best = x.abs();
            }
        }
        best
    }
}

/// Nearest-integer quotient, ties away from zero.
pub fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice = r.abs() * 2;
    if twice >= den.abs() {
        if num.is_negative() != den.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        (self - other).is_zero()
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some((self - other).signum().cmp(&0))
    }
}

fn add_impl(a: &Real, b: &Real, negate_b: bool) -> Real {
    let prec = a.prec.max(b.prec);
    if b.is_zero() {
        return a.with_prec(prec);
    }
    if a.is_zero() {
        let r = b.with_prec(prec);
        return if negate_b { -r } else { r };
    }
    let bm = if negate_b { -&b.m } else { b.m.clone() };
    let (ta, tb) = (a.top(), b.top());
    let gap = prec as i64 + 4;
    if ta < tb - gap {
        return Real::make(bm, b.e, prec);
    }
    if tb < ta - gap {
        return a.with_prec(prec);
    }
    let e = a.e.min(b.e);
    let m = (&a.m << (a.e - e) as usize) + (bm << (b.e - e) as usize);
    Real::make(m, e, prec)
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real::make(&self.m * &rhs.m, self.e + rhs.e, prec)
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Real::zero(prec);
        }
        let sh = (prec as i64 + 2 + rhs.m.bits() as i64 - self.m.bits() as i64).max(0);
        let q = (&self.m << sh as usize) / &rhs.m;
        Real::make(q, self.e - rhs.e - sh, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Real> for Real {
            type Output = Real;
            fn $f(self, rhs: Real) -> Real {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $f(self, rhs: &Real) -> Real {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $f(self, rhs: Real) -> Real {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { m: -self.m, e: self.e, prec: self.prec }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { m: -&self.m, e: self.e, prec: self.prec }
    }
}

/// `sum 1/(x^(2k+1) (2k+1))` with alternating signs, in fixed point `2^bits`.
fn atan_inv_fixed(x: u64, bits: u64) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π by Machin's formula.
pub fn pi(prec: u32) -> Real {
    let guard = 32u64;
    let bits = prec as u64 + guard;
    let v = atan_inv_fixed(5, bits) * 16 - atan_inv_fixed(239, bits) * 4;
    Real::make(v, -(bits as i64), prec)
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Real {
    let p = prec + 32;
    atanh(&Real::from_ratio(&BigInt::one(), &BigInt::from(3), p)).mul_i64(2).with_prec(prec)
}

/// `atanh t` by its Taylor series, for `|t| < 1/2`.
pub fn atanh(t: &Real) -> Real {
    let prec = t.prec;
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut k: i64 = 1;
    loop {
        power = &power * &t2;
        let term = power.div_i64(2 * k + 1);
        if term.is_zero() || term.top() < sum.top() - prec as i64 - 8 {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

/// Natural logarithm of a positive number.
pub fn ln(x: &Real) -> Real {
    assert!(!x.is_zero() && !x.is_negative(), "logarithm of a non-positive number");
    let prec = x.prec;
    let p = prec + 32;
    // x = y * 2^k with y in [1/sqrt2, sqrt2)
    let mut k = x.top();
    let mut y = x.with_prec(p).ldexp(-k);
    if y.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
        y = y.ldexp(1);
        k -= 1;
    }
    let one = Real::one(p);
    let t = &(&y - &one) / &(&y + &one);
    let v = &atanh(&t).mul_i64(2) + &ln2(p).mul_i64(k);
    v.with_prec(prec)
}

/// Sine by argument reduction to `[-π, π]` and the Taylor series.
pub fn sin(x: &Real) -> Real {
    let prec = x.prec;
    let extra = (x.top().max(0) as u32) + 32;
    let p = prec + extra;
    let pi_ = pi(p);
    let two_pi = pi_.mul_i64(2);
    let k = (&x.with_prec(p) / &two_pi).round_scaled(0);
    let mut y = &x.with_prec(p) - &two_pi.mul_int(&k);
    if y > pi_ {
        y = &y - &two_pi;
    }
    let y2 = &y * &y;
    let mut term = y.clone();
    let mut sum = y.clone();
    let mut n: i64 = 1;
    loop {
        term = -(&(&term * &y2) / &Real::from_i64((2 * n) * (2 * n + 1), p));
        if term.is_zero() || term.top() < -(p as i64) - 8 {
            break;
        }
        sum = &sum + &term;
        n += 1;
    }
    sum.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn arithmetic_roundtrip() {
        let a = Real::from_ratio(&BigInt::from(1), &BigInt::from(3), P);
        let b = &a.mul_i64(3) - &Real::one(P);
        assert!(b.log2_abs() < -190.0);
    }

    #[test]
    fn decimal_rendering() {
        let x = Real::parse("1.25", P).unwrap();
        assert_eq!(x.to_decimal(3), "1.25");
        assert_eq!(Real::parse("-0.00125", P).unwrap().to_decimal(3), "-0.00125");
        assert_eq!(Real::parse("12345", P).unwrap().to_decimal(5), "12345");
        assert_eq!(Real::parse("1e40", P).unwrap().to_decimal(2), "1.0e40");
    }

    #[test]
    fn pi_digits() {
        let p = pi(bits_for_digits(40));
        assert_eq!(p.to_decimal(30), "3.14159265358979323846264338328");
    }

    #[test]
    fn ln_and_sin() {
        let two = Real::from_i64(2, P);
        assert!((&ln(&two) - &ln2(P)).log2_abs() < -190.0);
        let x = Real::parse("0.5", P).unwrap();
        assert!((sin(&x).to_f64() - 0.5f64.sin()).abs() < 1e-15);
        let big = Real::from_i64(100, P);
        assert!((sin(&big).to_f64() - 100f64.sin()).abs() < 1e-13);
        let e = Real::parse("2.718281828459045235360287471352662497757", P).unwrap();
        assert!((ln(&e).to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cancellation_is_exact() {
        let a = Real::parse("1e30", P).unwrap();
        let b = &(&a + &Real::one(P)) - &a;
        assert_eq!(b.to_decimal(5), "1.0000");
    }
}
