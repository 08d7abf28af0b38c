//! Holomorphic solutions of `D φ = H ⋆ φ`, `D = q d/dq`.
//!
//! Writing `φ = Σ φ^(n) q^n` gives `(n − M_0) φ^(n) = Σ_{d≥1} M_d φ^(n−d)`,
//! and `(n − M_0)^{-1}` is a finite Neumann sum because `M_0` is nilpotent.
//!
//! In exact mode the vectors are kept as integer numerators over the
//! common denominator `seed_den · (n!)^(dim+1)`, which is always enough
//! to clear the Neumann sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpqh::QHOperator;
use crate::linalg::{integer_nullspace, primitive_part};
use crate::real::{bits_for_digits, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Rational,
    Float { digits: u32 },
}

impl Mode {
    /// Exact arithmetic for small bases, floating point otherwise.
    pub fn default_for(op: &QHOperator, digits: u32) -> Mode {
        if op.size() <= 60 {
            Mode::Rational
        } else {
            Mode::Float { digits: digits.max(40) + 60 }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Float { .. } => "float",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Coeffs {
    Exact { numer: Vec<Vec<BigInt>>, denom: Vec<BigInt> },
    Float { values: Vec<Vec<Real>>, prec: u32 },
}

#[derive(Clone, Debug)]
pub struct SolutionSeries {
    pub seed: Vec<BigRational>,
    pub coeffs: Coeffs,
    pub terms: usize,
    pub dim_x: usize,
}

/// A term of a fundamental sequence.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// `num / den`, not necessarily reduced.
    Exact(BigInt, BigInt),
    Float(Real),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(n, _) => n.is_zero(),
            Scalar::Float(x) => x.is_zero(),
        }
    }

    pub fn to_real(&self, prec: u32) -> Real {
        match self {
            Scalar::Exact(n, d) => Real::from_ratio(n, d, prec),
            Scalar::Float(x) => x.with_prec(prec),
        }
    }
}

/// Graded basis of `ker M_0`, highest codimension first.
pub fn kernel_basis(op: &QHOperator) -> Vec<(usize, Vec<BigInt>)> {
    let n = op.size();
    let m0 = op.classical();
    let mut out = Vec::new();
    for g in (0..=op.dim_x).rev() {
        let cols: Vec<usize> = (0..n).filter(|&i| op.grading[i] == g).collect();
        if cols.is_empty() {
            continue;
        }
        let rows: Vec<usize> = (0..n).filter(|&i| op.grading[i] == g + 1).collect();
        let block: Vec<Vec<BigInt>> =
            rows.iter().map(|&r| cols.iter().map(|&c| BigInt::from(m0.get(r, c))).collect()).collect();
        for v in integer_nullspace(block, cols.len()) {
            let mut full = vec![BigInt::zero(); n];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            primitive_part(&mut full);
            out.push((g, full));
        }
    }
    out
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn falling_power(n: usize, d: usize, e: u32) -> BigInt {
    // ((n-1)!/(n-d)!)^e
    let mut p = BigInt::one();
    for j in 1..d {
        p *= BigInt::from(n - j);
    }
    num_traits::pow(p, e as usize)
}

pub fn solve_series(op: &QHOperator, seed: &[BigRational], terms: usize, mode: Mode) -> Result<SolutionSeries> {
    let n = op.size();
    if seed.len() != n {
        return Err(Error::Precondition("seed has the wrong length".into()));
    }
    if terms == 0 {
        return Err(Error::Precondition("at least one term is required".into()));
    }
    if op.classical().apply_rat(seed).iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition("seed is not in the kernel of M_0".into()));
    }
    let k = op.dim_x as u32;
    let big_d = op.max_degree();
    let seed_den = seed.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let n0: Vec<BigInt> = seed.iter().map(|x| x.numer() * (&seed_den / x.denom())).collect();
    let coeffs = match mode {
        Mode::Rational => {
            let mut numer = vec![n0];
            let mut denom = vec![seed_den.clone()];
            for m in 1..=terms {
                let mut acc = vec![BigInt::zero(); n];
                for d in 1..=big_d.min(m) {
                    let prev = &numer[m - d];
                    if prev.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let t = op.matrices[d].apply_int(prev);
                    let f = falling_power(m, d, k + 1);
                    for (a, b) in acc.iter_mut().zip(t) {
                        *a += b * &f;
                    }
                }
                let mut total = vec![BigInt::zero(); n];
                if acc.iter().any(|x| !x.is_zero()) {
                    let mm = BigInt::from(m);
                    let powers: Vec<BigInt> = (0..=k).map(|j| num_traits::pow(mm.clone(), j as usize)).collect();
                    let mut v = acc;
                    for j in 0..=k {
                        let w = &powers[(k - j) as usize];
                        for (t, x) in total.iter_mut().zip(&v) {
                            if !x.is_zero() {
                                *t += x * w;
                            }
                        }
                        v = op.classical().apply_int(&v);
                        if v.iter().all(|x| x.is_zero()) {
                            break;
                        }
                    }
                }
                let dm = &denom[m - 1] * num_traits::pow(BigInt::from(m), (k + 1) as usize);
                numer.push(total);
                denom.push(dm);
            }
            Coeffs::Exact { numer, denom }
        }
        Mode::Float { digits } => {
            let prec = bits_for_digits(digits);
            let first: Vec<Real> = n0.iter().map(|x| Real::from_ratio(x, &seed_den, prec)).collect();
            let mut values = vec![first];
            for m in 1..=terms {
                let mut acc = vec![Real::zero(prec); n];
                for d in 1..=big_d.min(m) {
                    let t = op.matrices[d].apply_real(&values[m - d], prec);
                    for (a, b) in acc.iter_mut().zip(t) {
                        *a = &*a + &b;
                    }
                }
                let mut v: Vec<Real> = acc.iter().map(|x| x.div_i64(m as i64)).collect();
                let mut total = v.clone();
                for _ in 0..k {
                    v = op.classical().apply_real(&v, prec).iter().map(|x| x.div_i64(m as i64)).collect();
                    if v.iter().all(|x| x.is_zero()) {
                        break;
                    }
                    for (t, x) in total.iter_mut().zip(&v) {
                        *t = &*t + x;
                    }
                }
                values.push(total);
            }
            Coeffs::Float { values, prec }
        }
    };
    Ok(SolutionSeries { seed: seed.to_vec(), coeffs, terms, dim_x: op.dim_x })
}

impl SolutionSeries {
    pub fn is_zero_at(&self, m: usize) -> bool {
        match &self.coeffs {
            Coeffs::Exact { numer, .. } => numer[m].iter().all(|x| x.is_zero()),
            Coeffs::Float { values, .. } => values[m].iter().all(|x| x.is_zero()),
        }
    }

    /// Coordinate `i` of `φ^(m)`.
    pub fn coordinate(&self, m: usize, i: usize) -> Scalar {
        match &self.coeffs {
            Coeffs::Exact { numer, denom } => Scalar::Exact(numer[m][i].clone(), denom[m].clone()),
            Coeffs::Float { values, .. } => Scalar::Float(values[m][i].clone()),
        }
    }

    /// `φ^(m)` as exact rationals; exact mode only.
    pub fn exact_vector(&self, m: usize) -> Option<Vec<BigRational>> {
        match &self.coeffs {
            Coeffs::Exact { numer, denom } => {
                Some(numer[m].iter().map(|x| BigRational::new(x.clone(), denom[m].clone())).collect())
            }
            Coeffs::Float { .. } => None,
        }
    }

    pub fn real_vector(&self, m: usize, prec: u32) -> Vec<Real> {
        match &self.coeffs {
            Coeffs::Exact { numer, denom } => numer[m].iter().map(|x| Real::from_ratio(x, &denom[m], prec)).collect(),
            Coeffs::Float { values, .. } => values[m].iter().map(|x| x.with_prec(prec)).collect(),
        }
    }

    pub fn working_prec(&self) -> Option<u32> {
        match &self.coeffs {
            Coeffs::Exact { .. } => None,
            Coeffs::Float { prec, .. } => Some(*prec),
        }
    }
}

/// Codimension-0 coordinate of every `φ^(n)`.
pub fn fundamental_term(s: &SolutionSeries) -> Vec<Scalar> {
    (0..=s.terms).map(|m| s.coordinate(m, 0)).collect()
}

/// Whether all `φ^(n)` vanish beyond some `n0 ≤ N/2`, and the last
/// nonzero index.
pub fn truncation_detect(s: &SolutionSeries) -> (bool, usize) {
    let last = (0..=s.terms).rev().find(|&m| !s.is_zero_at(m)).unwrap_or(0);
    (last <= s.terms / 2, last)
}

/// Largest relative residual of the recursion over all indices.
///
/// Zero in exact mode means the identity holds exactly.
pub fn recursion_residual(op: &QHOperator, s: &SolutionSeries) -> f64 {
    match &s.coeffs {
        Coeffs::Exact { numer, .. } => {
            let k = op.dim_x as u32;
            let mut worst = 0.0f64;
            for m in 1..=s.terms {
                let mut acc = vec![BigInt::zero(); op.size()];
                for d in 1..=op.max_degree().min(m) {
                    let t = op.matrices[d].apply_int(&numer[m - d]);
                    let f = falling_power(m, d, k + 1);
                    for (a, b) in acc.iter_mut().zip(t) {
                        *a += b * &f;
                    }
                }
                let lhs0 = op.classical().apply_int(&numer[m]);
                let mpow = num_traits::pow(BigInt::from(m), (k + 1) as usize);
                for i in 0..op.size() {
                    let lhs = &numer[m][i] * m - &lhs0[i];
                    if lhs != &acc[i] * &mpow {
                        worst = 1.0;
                    }
                }
            }
            worst
        }
        Coeffs::Float { values, prec } => {
            let prec = *prec;
            let mut worst = 0.0f64;
            for m in 1..=s.terms {
                let lhs0 = op.classical().apply_real(&values[m], prec);
                let mut res: Vec<Real> = values[m].iter().zip(&lhs0).map(|(x, y)| &x.mul_i64(m as i64) - y).collect();
                let mut scale = Real::max_abs(res.iter().chain(values[m].iter()), prec);
                for d in 1..=op.max_degree().min(m) {
                    let t = op.matrices[d].apply_real(&values[m - d], prec);
                    scale = Real::max_abs(std::iter::once(&scale).chain(t.iter()), prec);
                    for (a, b) in res.iter_mut().zip(&t) {
                        *a = &*a - b;
                    }
                }
                if scale.is_zero() {
                    continue;
                }
                let r = Real::max_abs(res.iter(), prec);
                if !r.is_zero() {
                    let rel = (r.log2_abs() - scale.log2_abs()).exp2();
                    worst = worst.max(rel);
                }
            }
            worst
        }
    }
}

/// Multiplication by `c_1 = r·H` over the torus `q = t^r`: every `M_d`
/// scaled by `r` and moved to degree `r·d`.
pub fn reindexed(op: &QHOperator, r: usize) -> QHOperator {
    let n = op.size();
    let mut mats = vec![crate::linalg::SparseMat::zeros(n); op.max_degree() * r + 1];
    for (d, m) in op.matrices.iter().enumerate() {
        for (row, col, v) in m.entries() {
            mats[d * r].add(row, col, v * r as i64);
        }
    }
    QHOperator { matrices: mats, fano_index: None, ..op.clone() }
}

/// Bit length of the largest exact numerator, for diagnostics.
pub fn numerator_bits(s: &SolutionSeries) -> u64 {
    match &s.coeffs {
        Coeffs::Exact { numer, .. } => numer.iter().flatten().map(|x| x.bits()).max().unwrap_or(0),
        Coeffs::Float { .. } => 0,
    }
}

/// `φ^(m)_i` as an `f64` if representable.
pub fn coordinate_f64(s: &SolutionSeries, m: usize, i: usize) -> Option<f64> {
    match s.coordinate(m, i) {
        Scalar::Exact(n, d) => {
            let q = BigRational::new(n, d);
            if q.abs() > BigRational::from_integer(BigInt::from(u64::MAX)) {
                None
            } else {
                q.to_f64()
            }
        }
        Scalar::Float(x) => Some(x.to_f64()),
    }
}
