//! Apéry class, componentwise behaviour, convergence speed and comparison
//! of two varieties linked by a hyperplane section.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AperyEstimate;
use crate::error::{Error, Result};
use crate::gpqh::QHOperator;
use crate::linalg::{echelon, solve_rational};
use crate::qde::{Scalar, SolutionSeries};
use crate::real::Real;

/// The class `a` with `<a, γ_j> = Apery(γ_j)` for every kernel seed.
#[derive(Clone, Debug)]
pub struct AperyClassReport {
    /// Basis indices spanning the chosen complement of `im M_0`.
    pub section: Vec<usize>,
    /// Kernel seeds, the point class first.
    pub seeds: Vec<Vec<BigInt>>,
    /// `coefficients[i][j]`: coordinate `section[i]` of `a` is
    /// `Σ_j coefficients[i][j] · Apery(seeds[j])`.
    pub coefficients: Vec<Vec<BigRational>>,
    /// Coordinates of `a` evaluated with the numeric constants.
    pub values: Vec<Real>,
}

/// Indices not hit as pivots when the columns of `M_0` are eliminated in
/// basis order.
pub fn image_complement(op: &QHOperator) -> Vec<usize> {
    let n = op.size();
    let m0 = op.classical();
    let rows: Vec<Vec<BigInt>> = (0..n).map(|c| (0..n).map(|r| BigInt::from(m0.get(r, c))).collect()).collect();
    let ech = echelon(rows, n);
    (0..n).filter(|i| !ech.pivots.contains(i)).collect()
}

pub fn apery_class(op: &QHOperator, denominator: &[BigInt], constants: &[AperyEstimate]) -> Result<AperyClassReport> {
    let section = image_complement(op);
    let mut seeds = vec![denominator.to_vec()];
    seeds.extend(constants.iter().map(|e| e.seed.clone()));
    if seeds.len() != section.len() {
        return Err(Error::Internal(format!("{} seeds for a section of size {}", seeds.len(), section.len())));
    }
    let mu = seeds.len();
    // <σ_u, σ_v> = δ(v, u∨)
    let pairing: Vec<Vec<BigRational>> = seeds
        .iter()
        .map(|g| section.iter().map(|&i| BigRational::from_integer(g[op.involution[i]].clone())).collect())
        .collect();
    let mut coefficients = vec![vec![BigRational::zero(); mu]; mu];
    for j in 0..mu {
        let mut e = vec![BigRational::zero(); mu];
        e[j] = BigRational::one();
        let col = solve_rational(&pairing, &e).ok_or_else(|| Error::Internal("singular pairing on the section".into()))?;
        for i in 0..mu {
            coefficients[i][j] = col[i].clone();
        }
    }
    let prec = constants.first().map(|c| c.value.prec()).unwrap_or(256);
    let mut vals = vec![Real::one(prec)];
    vals.extend(constants.iter().map(|c| c.value.clone()));
    let values = coefficients
        .iter()
        .map(|row| {
            row.iter().zip(&vals).fold(Real::zero(prec), |acc, (q, v)| &acc + &(&Real::from_rational(q, prec) * v))
        })
        .collect();
    Ok(AperyClassReport { section, seeds, coefficients, values })
}

impl AperyClassReport {
    /// Checks `P · coefficients = I` exactly, with `P` the pairing matrix.
    pub fn pairing_is_exact(&self, op: &QHOperator) -> bool {
        let mu = self.seeds.len();
        for (j, g) in self.seeds.iter().enumerate() {
            for k in 0..mu {
                let mut s = BigRational::zero();
                for (i, &b) in self.section.iter().enumerate() {
                    s += BigRational::from_integer(g[op.involution[b]].clone()) * &self.coefficients[i][k];
                }
                let want = if j == k { BigRational::one() } else { BigRational::zero() };
                if s != want {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub seed_codim: usize,
    /// `(codim, deviation at the window start, deviation at the end)`.
    pub per_codim: Vec<(usize, f64, f64)>,
    /// `max_i |φ_γ,i − a φ_0,i| / max_i |φ_γ,i|` per codimension at the last index.
    pub block_residuals: Vec<(usize, f64)>,
}

fn log_dev(x: &Real, a: &Real) -> f64 {
    let d = (x - a).abs();
    if d.is_zero() {
        f64::NEG_INFINITY
    } else {
        d.log2_abs() / std::f64::consts::LOG2_10
    }
}

/// Coordinatewise ratios `φ_γ,i^(k) / φ_0,i^(k)` against the constant, over
/// the last quarter of the indices, as `log10` deviations.
pub fn componentwise_check(
    op: &QHOperator,
    den: &SolutionSeries,
    num: &SolutionSeries,
    estimate: &AperyEstimate,
) -> ComponentReport {
    let prec = estimate.value.prec();
    let n = den.terms.min(num.terms);
    let start = n - n / 4;
    let a = &estimate.value;
    let mut per_codim = Vec::new();
    let mut block_residuals = Vec::new();
    let first = den.real_vector(start, prec);
    let first_n = num.real_vector(start, prec);
    let last = den.real_vector(n, prec);
    let last_n = num.real_vector(n, prec);
    for g in 0..=op.dim_x {
        let idx: Vec<usize> = (0..op.size()).filter(|&i| op.grading[i] == g).collect();
        let dev = |d: &[Real], x: &[Real]| {
            idx.iter()
                .filter(|&&i| !d[i].is_zero())
                .map(|&i| log_dev(&(&x[i] / &d[i]), a))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let d0 = dev(&first, &first_n);
        let d1 = dev(&last, &last_n);
        if d0.is_finite() || d1.is_finite() {
            per_codim.push((g, d0, d1));
        }
        let scale = Real::max_abs(idx.iter().map(|&i| &last_n[i]), prec);
        if !scale.is_zero() {
            let res = idx
                .iter()
                .map(|&i| (&last_n[i] - &(a * &last[i])).abs())
                .fold(Real::zero(prec), |m, x| if x.cmp_abs(&m).is_gt() { x } else { m });
            let r = if res.is_zero() { f64::NEG_INFINITY } else { (res.log2_abs() - scale.log2_abs()) / std::f64::consts::LOG2_10 };
            block_residuals.push((g, r));
        }
    }
    ComponentReport { seed_codim: estimate.seed_codim, per_codim, block_residuals }
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    /// `(n, δ_n)` with `δ_n = ln ln q_n − ln ln(1/|α − p_n/q_n|)`.
    pub points: Vec<(usize, f64)>,
    /// Sign of the mean of `δ_n` over the last half of the points.
    pub tail_sign: i32,
}

/// Convergence speed of the reduced fractions `p_n/q_n` of the ratio
/// sequence towards `alpha`, for `n ≥ from`.
///
/// Negative values mean `|α − p_n/q_n|` is smaller than `1/q_n` to a
/// power above one.
pub fn convergence_diagnostic(num: &[Scalar], den: &[Scalar], alpha: &Real, from: usize) -> Result<Diagnostic> {
    let prec = alpha.prec();
    let floor = -(prec as f64) + 24.0;
    let mut points = Vec::new();
    for n in from..num.len().min(den.len()) {
        let (Scalar::Exact(a, b), Scalar::Exact(c, d)) = (&num[n], &den[n]) else {
            return Err(Error::Precondition("the diagnostic needs exact sequences".into()));
        };
        if c.is_zero() {
            continue;
        }
        let mut p = a * d;
        let mut q = b * c;
        let g = p.gcd(&q);
        if !g.is_zero() {
            p /= &g;
            q /= &g;
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        if q.is_one() {
            continue;
        }
        let err = (alpha - &Real::from_ratio(&p, &q, prec)).abs();
        if err.is_zero() || err.log2_abs() < floor {
            continue;
        }
        let ln_q = q.bits() as f64 * std::f64::consts::LN_2;
        let ln_inv_err = -err.ln_abs_f64();
        if ln_q <= 1.0 || ln_inv_err <= 1.0 {
            continue;
        }
        points.push((n, ln_q.ln() - ln_inv_err.ln()));
    }
    let half = &points[points.len() / 2..];
    let mean = if half.is_empty() { 0.0 } else { half.iter().map(|p| p.1).sum::<f64>() / half.len() as f64 };
    let tail_sign = if mean < 0.0 {
        -1
    } else if mean > 0.0 {
        1
    } else {
        0
    };
    Ok(Diagnostic { points, tail_sign })
}

#[derive(Clone, Debug)]
pub struct StrainMatch {
    pub weight: usize,
    pub x_value: Real,
    pub y_value: Real,
    /// `+1` if the values agree, `-1` if they agree up to sign.
    pub sign: i32,
}

#[derive(Clone, Debug)]
pub struct StrainReport {
    pub matched: Vec<StrainMatch>,
    pub x_only: Vec<(usize, Real)>,
    pub y_only: Vec<(usize, Real)>,
}

impl StrainReport {
    pub fn full_match(&self) -> bool {
        self.x_only.is_empty() && self.y_only.is_empty()
    }
}

/// Pairs constants of `x` and `y` with equal weight and equal value (up to
/// sign) within the combined error plus `tol`.
pub fn strain_compare(x: &[AperyEstimate], y: &[AperyEstimate], tol: &Real) -> StrainReport {
    let mut used = vec![false; y.len()];
    let mut matched = Vec::new();
    let mut x_only = Vec::new();
    for a in x {
        let bound = |b: &AperyEstimate| &(&a.error_estimate + &b.error_estimate) + tol;
        let mut hit = None;
        for (j, b) in y.iter().enumerate() {
            if used[j] || b.weight != a.weight {
                continue;
            }
            if (&a.value - &b.value).abs().cmp_abs(&bound(b)).is_le() {
                hit = Some((j, 1));
                break;
            }
            if hit.is_none() && (&a.value + &b.value).abs().cmp_abs(&bound(b)).is_le() {
                hit = Some((j, -1));
            }
        }
        match hit {
            Some((j, sign)) => {
                used[j] = true;
                matched.push(StrainMatch { weight: a.weight, x_value: a.value.clone(), y_value: y[j].value.clone(), sign });
            }
            None => x_only.push((a.weight, a.value.clone())),
        }
    }
    let y_only = y.iter().zip(&used).filter(|(_, &u)| !u).map(|(b, _)| (b.weight, b.value.clone())).collect();
    StrainReport { matched, x_only, y_only }
}
