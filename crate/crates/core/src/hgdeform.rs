//! The deformed hypergeometric operator
//! `(D−u_1)(D+u_1)···(D−u_n)(D+u_n)·D^{N−2n} − q` of `P^{N−1}`, its formal
//! solutions `R_{±u_i}`, their Wronskians and the sine formula for the
//! limits of Wronskian coefficient ratios.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::apery::extrapolate;
use crate::error::{Error, Result};
use crate::real::{bits_for_digits, pi, sin, Real};

#[derive(Clone, Debug)]
pub struct DeformParams {
    pub n: usize,
    pub u: Vec<BigRational>,
    pub digits: u32,
}

impl DeformParams {
    pub fn new(n: usize, u: Vec<BigRational>, digits: u32) -> Result<DeformParams> {
        if n < 2 || 2 * u.len() > n {
            return Err(Error::Config(format!("need N ≥ 2 and 2n ≤ N, got N = {n}, n = {}", u.len())));
        }
        let half = BigRational::new(1.into(), 2.into());
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() || a.abs() >= half {
                return Err(Error::Config(format!("u_{} = {a} must satisfy 0 < |u| < 1/2", i + 1)));
            }
            for b in &u[..i] {
                if (a - b).is_integer() || (a + b).is_integer() {
                    return Err(Error::Config(format!("u = {a} and {b} collide")));
                }
            }
        }
        Ok(DeformParams { n, u, digits })
    }

    fn d_power(&self) -> usize {
        self.n - 2 * self.u.len()
    }

    /// The symbol `P(x) = Π (x − u_j)(x + u_j) · x^{N−2n}`.
    pub fn symbol(&self, x: &BigRational) -> BigRational {
        let mut p = num_traits::pow(x.clone(), self.d_power());
        for u in &self.u {
            p *= (x - u) * (x + u);
        }
        p
    }

    /// Exponent `±u_i` for the 1-based index `i`.
    pub fn exponent(&self, i: usize, sign: i32) -> BigRational {
        if sign < 0 {
            -self.u[i - 1].clone()
        } else {
            self.u[i - 1].clone()
        }
    }

    fn check_exponent(&self, a: &BigRational) -> Result<()> {
        if !self.u.iter().any(|u| u == a || &-u.clone() == a) {
            return Err(Error::Precondition(format!("{a} is not one of ±u_i")));
        }
        Ok(())
    }
}

/// Coefficients `c_m` of `R_a = Σ c_m q^{a+m}` with `c_0 = 1` and
/// `c_{m+1} = c_m / P(a+m+1)`.
pub fn formal_solution_coeffs(p: &DeformParams, a: &BigRational, terms: usize, prec: u32) -> Result<Vec<Real>> {
    p.check_exponent(a)?;
    let mut out = Vec::with_capacity(terms + 1);
    let mut c = Real::one(prec);
    out.push(c.clone());
    for m in 0..terms {
        let x = a + BigRational::from_integer(BigInt::from(m + 1));
        let s = p.symbol(&x);
        if s.is_zero() {
            return Err(Error::Numeric(format!("P({x}) vanishes")));
        }
        c = &c / &Real::from_rational(&s, prec);
        out.push(c.clone());
    }
    Ok(out)
}

/// The same coefficients as exact rationals.
pub fn formal_solution_exact(p: &DeformParams, a: &BigRational, terms: usize) -> Result<Vec<BigRational>> {
    p.check_exponent(a)?;
    let mut out = vec![BigRational::one()];
    for m in 0..terms {
        let x = a + BigRational::from_integer(BigInt::from(m + 1));
        let s = p.symbol(&x);
        if s.is_zero() {
            return Err(Error::Numeric(format!("P({x}) vanishes")));
        }
        let next = &out[m] / s;
        out.push(next);
    }
    Ok(out)
}

/// `S = R_1' R_2 − R_2' R_1` with `' = q d/dq` for series with exponent
/// offsets `a1 = −a2`; `S` has integer exponents.
pub fn wronskian(a1: &BigRational, c: &[Real], a2: &BigRational, d: &[Real]) -> Result<Vec<Real>> {
    if a1 != &-a2.clone() {
        return Err(Error::Precondition("exponent offsets must be opposite".into()));
    }
    let len = c.len().min(d.len());
    let prec = c[0].prec();
    let diff = Real::from_rational(&(a1 - a2), prec);
    // coefficient at q^k: Σ_{m1+m2=k} ((a1+m1) − (a2+m2)) c_{m1} d_{m2}
    let out = (0..len)
        .into_par_iter()
        .map(|k| {
            let mut s = Real::zero(prec);
            for m1 in 0..=k {
                let m2 = k - m1;
                let w = &diff + &Real::from_i64(m1 as i64 - m2 as i64, prec);
                s = &s + &(&w * &(&c[m1] * &d[m2]));
            }
            s
        })
        .collect();
    Ok(out)
}

/// Working precision in bits: the Wronskian sums cancel roughly half a
/// digit per term.
pub fn working_prec(p: &DeformParams, terms: usize) -> u32 {
    bits_for_digits(p.digits + terms as u32 / 2 + 20)
}

/// `S_i` for `i = 1..n`.
pub fn wronskians(p: &DeformParams, terms: usize) -> Result<Vec<Vec<Real>>> {
    let prec = working_prec(p, terms);
    (1..=p.u.len())
        .map(|i| {
            let (a, b) = (p.exponent(i, 1), p.exponent(i, -1));
            let c = formal_solution_coeffs(p, &a, terms, prec)?;
            let d = formal_solution_coeffs(p, &b, terms, prec)?;
            wronskian(&a, &c, &b, &d)
        })
        .collect()
}

/// `κ(u)κ(−u)` for `κ(a) = 1 / (Π_j Γ(1+a−u_j)Γ(1+a+u_j) · Γ(1+a)^{N−2n})` at
/// `u = u_i`, through `Γ(1+x)Γ(1−x) = πx / sin(πx)`.
///
/// This converts the `c_0 = 1` normalization of `R_{±u_i}` into the
/// Γ-normalized one.
pub fn gamma_normalization(p: &DeformParams, i: usize, prec: u32) -> Real {
    let pi_ = pi(prec);
    let sinc = |x: &BigRational| -> Real {
        if x.is_zero() {
            return Real::one(prec);
        }
        let xr = Real::from_rational(x, prec);
        let px = &pi_ * &xr;
        &sin(&px) / &px
    };
    let u = &p.u[i - 1];
    let mut k = sinc(u).powi(p.d_power() as u32);
    for uj in &p.u {
        k = &k * &sinc(&(u - uj));
        k = &k * &sinc(&(u + uj));
    }
    k
}

#[derive(Clone, Debug)]
pub struct SineRow {
    pub i: usize,
    pub j: usize,
    /// Limit of `s_i^(k) / s_j^(k)` for the `c_0 = 1` solutions.
    pub raw_ratio: Real,
    /// Limit after the Γ normalization of both Wronskians.
    pub empirical: Real,
    pub predicted: Real,
    pub deviation: f64,
    pub error_estimate: f64,
}

/// Compares limits of Wronskian coefficient ratios with
/// `sin(2πu_i)/sin(2πu_j)`.
pub fn sine_check(p: &DeformParams, terms: usize) -> Result<Vec<SineRow>> {
    if terms < 200 {
        return Err(Error::Precondition("sine_check needs at least 200 terms".into()));
    }
    let s = wronskians(p, terms)?;
    let prec = bits_for_digits(p.digits + 40);
    let two_pi = pi(prec).ldexp(1);
    let sines: Vec<Real> = p.u.iter().map(|u| sin(&(&two_pi * &Real::from_rational(u, prec)))).collect();
    let kappa: Vec<Real> = (1..=p.u.len()).map(|i| gamma_normalization(p, i, prec)).collect();
    let mut rows = Vec::new();
    for i in 1..=p.u.len() {
        for j in 1..=p.u.len() {
            let seq: Vec<(usize, Real)> = (terms / 3..=terms)
                .filter(|&k| !s[j - 1][k].is_zero())
                .map(|k| (k, (&s[i - 1][k] / &s[j - 1][k]).with_prec(prec)))
                .collect();
            let lim = extrapolate(&seq, 20)?;
            let scale = &kappa[i - 1] / &kappa[j - 1];
            let empirical = &lim.value * &scale;
            let predicted = &sines[i - 1] / &sines[j - 1];
            let dev = (&empirical - &predicted).abs();
            rows.push(SineRow {
                i,
                j,
                raw_ratio: lim.value.clone(),
                deviation: if dev.is_zero() { 0.0 } else { dev.to_f64() },
                error_estimate: (&lim.error * &scale).abs().to_f64(),
                empirical,
                predicted,
            });
        }
    }
    Ok(rows)
}

/// Largest `|P(a+m) c_m − c_{m−1}| / |c_{m−1}|` over the series, together
/// with `|P(a) c_0|`.
pub fn deform_residual(p: &DeformParams, series: &[Real], a: &BigRational) -> f64 {
    let prec = series[0].prec();
    let mut worst = {
        let r = (&Real::from_rational(&p.symbol(a), prec) * &series[0]).abs();
        if r.is_zero() {
            0.0
        } else {
            r.to_f64()
        }
    };
    for m in 1..series.len() {
        let x = a + BigRational::from_integer(BigInt::from(m));
        let lhs = &Real::from_rational(&p.symbol(&x), prec) * &series[m];
        let r = (&lhs - &series[m - 1]).abs();
        if r.is_zero() {
            continue;
        }
        let rel = (r.log2_abs() - series[m - 1].log2_abs()).exp2();
        worst = worst.max(rel);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn undeformed_coefficients() {
        // n = 0 is not a valid parameter set, so emulate via the recurrence.
        let p = DeformParams { n: 3, u: vec![], digits: 30 };
        let mut c = BigRational::one();
        for m in 1..6 {
            c /= p.symbol(&BigRational::from_integer(BigInt::from(m)));
        }
        assert_eq!(c, q(1, 120 * 120 * 120));
    }

    #[test]
    fn coefficients_solve_the_operator() {
        let p = DeformParams::new(2, vec![q(1, 4)], 30).unwrap();
        let c = formal_solution_coeffs(&p, &q(1, 4), 40, 200).unwrap();
        assert!(deform_residual(&p, &c, &q(1, 4)) < 1e-50);
        let e = formal_solution_exact(&p, &q(1, 4), 3).unwrap();
        // P(5/4) = (5/4 − 1/4)(5/4 + 1/4) = 3/2
        assert_eq!(e[1], q(2, 3));
    }

    #[test]
    fn constant_series_wronskian() {
        let one = vec![Real::one(100), Real::zero(100)];
        let s = wronskian(&q(1, 5), &one, &q(-1, 5), &one).unwrap();
        assert!((&s[0] - &Real::from_rational(&q(2, 5), 100)).abs().to_f64() < 1e-25);
        assert!(s[1].is_zero());
    }

    #[test]
    fn rejects_collisions() {
        assert!(DeformParams::new(5, vec![q(1, 4), q(-1, 4)], 30).is_err());
        assert!(DeformParams::new(5, vec![q(1, 2)], 30).is_err());
        assert!(DeformParams::new(3, vec![q(1, 5), q(1, 7)], 30).is_err());
    }
}
