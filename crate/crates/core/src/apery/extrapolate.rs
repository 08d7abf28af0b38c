//! Limits of slowly or oscillating convergent sequences.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Clone, Debug)]
pub struct Limit {
    pub value: Real,
    pub error: Real,
    /// Residue classes mod `period` converge separately.
    pub period: usize,
    /// Per-class limits when `period > 1`.
    pub branches: Vec<Real>,
    pub terms_used: usize,
    pub method: &'static str,
}

/// Polynomial extrapolation to `h = 0` through `(1/n_i, x_i)`.
fn richardson(ns: &[usize], xs: &[Real]) -> Real {
    let prec = xs[0].prec();
    let mut total = Real::zero(prec);
    // weight_i = Π_{j≠i} n_i / (n_i − n_j)
    for i in 0..ns.len() {
        let mut num = num_bigint::BigInt::from(1);
        let mut den = num_bigint::BigInt::from(1);
        for j in 0..ns.len() {
            if j != i {
                num *= ns[i] as i64;
                den *= ns[i] as i64 - ns[j] as i64;
            }
        }
        let w = Real::from_ratio(&num, &den, prec);
        total = &total + &(&w * &xs[i]);
    }
    total
}

/// Wynn's epsilon algorithm on an odd number of terms.
fn wynn(xs: &[Real]) -> Option<Real> {
    let prec = xs[0].prec();
    let mut prev: Vec<Real> = vec![Real::zero(prec); xs.len() + 1];
    let mut cur: Vec<Real> = xs.to_vec();
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = &cur[i + 1] - &cur[i];
            if d.is_zero() {
                return None;
            }
            next.push(&prev[i + 1] + &d.recip());
        }
        prev = cur;
        cur = next;
        col += 1;
    }
    if col % 2 == 0 {
        Some(cur.pop().unwrap())
    } else {
        None
    }
}

struct Candidate {
    value: Real,
    error: Real,
    method: &'static str,
    used: usize,
}

/// Rounding floor, never below one unit at the working precision so that
/// limits vanishing only up to cancellation are not over-credited.
fn floor_error(v: &Real, scale: &Real) -> Real {
    let prec = v.prec();
    max_real(max_real(v.clone(), scale.clone()), Real::one(prec)).ldexp(-(prec as i64) + 12)
}

fn max_real(a: Real, b: Real) -> Real {
    if a.cmp_abs(&b).is_ge() {
        a.abs()
    } else {
        b.abs()
    }
}

fn best_for_class(ns: &[usize], xs: &[Real], max_order: usize, scale: &Real) -> Option<Candidate> {
    let len = xs.len();
    if len < 3 {
        return None;
    }
    let last = &xs[len - 1];
    let mut best = Candidate {
        value: last.clone(),
        error: max_real((last - &xs[len - 2]).abs(), floor_error(last, scale)),
        method: "tail",
        used: 2,
    };
    let mut consider = |c: Candidate| {
        if c.error.cmp_abs(&best.error).is_lt() {
            best = c;
        }
    };
    // Richardson in 1/n with orders up to max_order.
    let mut p = 1;
    while p <= max_order && p + 2 < len {
        let end = len;
        let a = richardson(&ns[end - p - 1..end], &xs[end - p - 1..end]);
        let b = richardson(&ns[end - p - 2..end - 1], &xs[end - p - 2..end - 1]);
        let c = richardson(&ns[end - p..end], &xs[end - p..end]);
        let err = max_real(max_real((&a - &b).abs(), (&a - &c).abs()), floor_error(&a, scale));
        consider(Candidate { value: a, error: err, method: "richardson", used: p + 2 });
        p += if p < 8 { 1 } else { 2 };
    }
    // Shanks transforms for geometric tails.
    let mut k = 1;
    while 2 * k + 2 <= len && k <= max_order / 2 + 1 {
        let w = 2 * k + 1;
        let a = wynn(&xs[len - w..]);
        let b = wynn(&xs[len - w - 1..len - 1]);
        if let (Some(a), Some(b)) = (a, b) {
            let err = max_real((&a - &b).abs(), floor_error(&a, scale));
            consider(Candidate { value: a, error: err, method: "wynn", used: w + 1 });
        }
        k += 1;
    }
    Some(best)
}

/// Accelerated limit of `(n, x_n)`, trying periods 1 through 6.
///
/// Only a tail window is used, but error floors are relative to the largest
/// term of the whole sequence.
pub fn extrapolate(seq: &[(usize, Real)], max_order: usize) -> Result<Limit> {
    let max_order = max_order.max(1);
    if seq.len() < 3 * max_order.min(4) {
        return Err(Error::Numeric(format!("only {} terms available", seq.len())));
    }
    let prec = seq[0].1.prec();
    let scale = Real::max_abs(seq.iter().map(|p| &p.1), prec);
    let window = seq.len().min(6 * max_order + 12);
    let tail = &seq[seq.len() - window..];
    if tail.iter().all(|(_, x)| x.is_zero()) {
        return Ok(Limit {
            value: Real::zero(prec),
            error: Real::zero(prec),
            period: 1,
            branches: Vec::new(),
            terms_used: window,
            method: "zero",
        });
    }

    let mut per_period: Vec<(usize, Vec<Candidate>, Real)> = Vec::new();
    for s in 1..=6usize {
        let mut cands = Vec::new();
        let mut ok = true;
        for c in 0..s {
            let (ns, xs): (Vec<usize>, Vec<Real>) =
                tail.iter().filter(|(n, _)| n % s == c).map(|(n, x)| (*n, x.clone())).unzip();
            match best_for_class(&ns, &xs, max_order.min(xs.len().saturating_sub(3)), &scale) {
                Some(cand) => cands.push(cand),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        let worst = cands.iter().fold(Real::zero(prec), |acc, c| max_real(acc, c.error.clone()));
        per_period.push((s, cands, worst));
    }
    if per_period.is_empty() {
        return Err(Error::Numeric("too few terms for any period".into()));
    }
    let min_err = per_period.iter().map(|p| p.2.log2_abs()).fold(f64::INFINITY, f64::min);
    let chosen = per_period
        .iter()
        .position(|p| p.2.log2_abs() <= min_err + 10.0 || p.2.is_zero())
        .unwrap_or(0);
    let (s, cands, err) = per_period.swap_remove(chosen);
    let used = cands.iter().map(|c| c.used).sum::<usize>();
    let method = cands[0].method;
    if s == 1 {
        let c = cands.into_iter().next().unwrap();
        return Ok(Limit { value: c.value, error: c.error, period: 1, branches: Vec::new(), terms_used: used, method });
    }
    let values: Vec<Real> = cands.iter().map(|c| c.value.clone()).collect();
    let mut spread = Real::zero(prec);
    for v in &values {
        spread = max_real(spread, (v - &values[0]).abs());
    }
    if spread.cmp_abs(&err.mul_i64(4)).is_le() {
        let mut mean = Real::zero(prec);
        for v in &values {
            mean = &mean + v;
        }
        let mean = mean.div_i64(values.len() as i64);
        return Ok(Limit { value: mean, error: max_real(err, spread), period: 1, branches: Vec::new(), terms_used: used, method });
    }
    // Distinct branch limits: report the one containing the last index.
    let last_n = tail.last().unwrap().0;
    let value = values[last_n % s].clone();
    Ok(Limit { value, error: err, period: s, branches: values, terms_used: used, method })
}
