//! Bernoulli numbers, ζ(k) and Euler's constant.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::real::{bits_for_digits, pi, Real};

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let row = binomial_row(m + 1);
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += bk * BigRational::from_integer(row[k].clone());
            }
        }
        b.push(-s / BigRational::from_integer(row[m].clone()));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_table(n).pop().unwrap()
}

/// `ζ(2k) / ζ(2)^k = |B_2k| 2^{2k−1} 6^k / (2k)!`.
pub fn even_zeta_ratio(k: usize) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let b = bernoulli(2 * k).abs();
    let mut fact = BigInt::one();
    for i in 2..=2 * k {
        fact *= i;
    }
    let num = BigInt::one() << (2 * k - 1);
    let six = num_traits::pow(BigInt::from(6), k);
    b * BigRational::new(num * six, fact)
}

/// `ζ(2k)` from `π` and `B_2k`.
pub fn even_zeta_closed_form(k: usize, prec: u32) -> Real {
    let r = even_zeta_ratio(k);
    let p2 = pi(prec).powi(2).div_i64(6);
    &Real::from_rational(&r, prec) * &p2.powi(k as u32)
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Real>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Real>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: (u32, u32), f: impl FnOnce() -> Real) -> Real {
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = f();
    cache().lock().unwrap().insert(key, v.clone());
    v
}

/// `ζ(k)` by Euler–Maclaurin.
///
/// The summation stops once a correction term falls below `10^{−digits−10}`;
/// for real `s > 1` the remainder is bounded by the first omitted term.
pub fn zeta_value(k: u32, digits: u32) -> Real {
    assert!(k >= 2, "ζ(k) needs k ≥ 2");
    cached((k, digits), || zeta_em(k, digits))
}

fn zeta_em(s: u32, digits: u32) -> Real {
    let prec = bits_for_digits(digits + 15);
    let n = (digits as usize / 2 + 10).max(10);
    let tiny = (digits as f64 + 10.0) * std::f64::consts::LOG2_10;
    let mut total = Real::zero(prec);
    for m in 1..n {
        total = &total + &Real::from_i64(m as i64, prec).powi(s).recip();
    }
    let nr = Real::from_i64(n as i64, prec);
    let n_pow_s = nr.powi(s).recip();
    // N^{1−s}/(s−1) + N^{−s}/2
    total = &total + &(&n_pow_s * &nr).div_i64(s as i64 - 1);
    total = &total + &n_pow_s.ldexp(-1);
    let inv_n2 = nr.powi(2).recip();
    let bern = bernoulli_table(2 * n + 2);
    // term_j = B_2j/(2j)! · s(s+1)···(s+2j−2) · N^{−s−2j+1}
    let mut rising = BigRational::from_integer(BigInt::from(s));
    let mut fact = BigInt::from(2);
    let mut power = &n_pow_s * &nr.recip();
    for j in 1..=n {
        let coef = &bern[2 * j] * &rising / BigRational::from_integer(fact.clone());
        let term = &Real::from_rational(&coef, prec) * &power;
        total = &total + &term;
        if term.is_zero() || term.log2_abs() < -tiny {
            break;
        }
        let a = BigInt::from(s as usize + 2 * j - 1);
        let b = BigInt::from(s as usize + 2 * j);
        rising *= BigRational::from_integer(a * b);
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        power = &power * &inv_n2;
    }
    total.with_prec(bits_for_digits(digits + 5))
}

/// `ln 2 = Σ_{k≥1} 1/(k 2^k)`.
fn ln2_series(prec: u32) -> Real {
    let mut total = Real::zero(prec);
    let mut k: i64 = 1;
    loop {
        let term = Real::from_i64(1, prec).ldexp(-k).div_i64(k);
        if term.log2_abs() < -(prec as f64) - 8.0 {
            break;
        }
        total = &total + &term;
        k += 1;
    }
    total
}

/// Smallest `j` with `|B_2j| / N^2j < 10^{−digits}`, using
/// `|B_2j| ≈ 2 (2j)! / (2π)^2j`.
fn em_terms_needed(n: f64, digits: f64) -> usize {
    let mut log10_term = 0.0;
    for j in 1..usize::MAX {
        let a = (2 * j - 1) as f64;
        let b = (2 * j) as f64;
        log10_term += (a * b / (2.0 * std::f64::consts::PI * n).powi(2)).log10();
        if log10_term < -digits {
            return j;
        }
    }
    unreachable!()
}

/// Euler's constant from `H_{N−1} − ln N + 1/(2N) + Σ B_2j/(2j N^2j)` with
/// `N` a power of two.
fn gamma_em(digits: u32) -> Real {
    let prec = bits_for_digits(digits + 15);
    let m = ((digits as f64).log2().ceil() as u32).max(4);
    let n: usize = 1 << m;
    let tiny = (digits as f64 + 10.0) * std::f64::consts::LOG2_10;
    let mut h = BigRational::zero();
    for k in 1..n {
        h += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    let mut total = Real::from_rational(&h, prec);
    total = &total - &crate::real::ln2(prec).mul_i64(m as i64);
    total = &total + &Real::from_ratio(&BigInt::one(), &BigInt::from(2 * n), prec);
    let jmax = em_terms_needed(n as f64, digits as f64 + 12.0);
    let bern = bernoulli_table(2 * jmax + 2);
    let inv_n2 = Real::from_ratio(&BigInt::one(), &(BigInt::from(n) * n), prec);
    let mut power = inv_n2.clone();
    for j in 1..=jmax {
        let coef = &bern[2 * j] / BigRational::from_integer(BigInt::from(2 * j));
        let term = &Real::from_rational(&coef, prec) * &power;
        total = &total + &term;
        if term.is_zero() || term.log2_abs() < -tiny {
            break;
        }
        power = &power * &inv_n2;
    }
    total.with_prec(bits_for_digits(digits + 5))
}

/// Euler's constant by the Brent–McMillan Bessel-function sums, with
/// `ln n` taken from an independent series for `ln 2`.
fn gamma_bessel(digits: u32) -> Real {
    let prec = bits_for_digits(digits + 20);
    // error ≈ π e^{−4n}
    let need = (digits as f64 + 10.0) * std::f64::consts::LN_10 / 4.0;
    let m = need.log2().ceil().max(2.0) as i64;
    let n: i64 = 1 << m;
    let ln_n = ln2_series(prec).mul_i64(m);
    let n2 = BigInt::from(n) * n;
    let mut a = -ln_n.clone();
    let mut b = Real::one(prec);
    let mut u = a.clone();
    let mut v = b.clone();
    let kmax = (3.6 * n as f64) as i64 + 10;
    for k in 1..=kmax {
        let k2 = BigInt::from(k) * k;
        b = b.mul_int(&n2).div_int(&k2);
        a = &a.mul_int(&n2).div_i64(k) + &b;
        a = a.div_i64(k);
        u = &u + &a;
        v = &v + &b;
    }
    (&u / &v).with_prec(bits_for_digits(digits + 5))
}

/// Euler's constant, cross-checked between two independent methods.
pub fn euler_gamma(digits: u32) -> Real {
    cached((1, digits), || {
        let x = gamma_em(digits);
        let y = gamma_bessel(digits);
        let d = (&x - &y).abs();
        let limit = -(digits as f64) * std::f64::consts::LOG2_10;
        assert!(d.is_zero() || d.log2_abs() < limit, "Euler constant methods disagree");
        x
    })
}

/// `|ζ(2k) − closed form|` in bits, for self-checks.
pub fn even_zeta_discrepancy(k: usize, digits: u32) -> f64 {
    let prec = bits_for_digits(digits + 5);
    let d = (&zeta_value(2 * k as u32, digits) - &even_zeta_closed_form(k, prec)).abs();
    if d.is_zero() {
        f64::NEG_INFINITY
    } else {
        d.log2_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn even_ratios() {
        assert_eq!(even_zeta_ratio(2), q(2, 5));
        assert_eq!(even_zeta_ratio(3), q(8, 35));
    }
}
