//! Apéry constants: limits of ratios of fundamental terms of kernel-seeded
//! solutions against the solution seeded by the point class.

mod diagnostics;
mod extrapolate;

pub use diagnostics::{
    apery_class, componentwise_check, convergence_diagnostic, strain_compare, AperyClassReport, ComponentReport,
    Diagnostic, StrainMatch, StrainReport,
};
pub use extrapolate::{extrapolate, Limit};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpqh::{typea_partition, OperatorKind, QHOperator, SchubertBasis};
use crate::linalg::{content, solve_rational};
use crate::qde::{fundamental_term, kernel_basis, solve_series, to_rational_vec, truncation_detect, Mode, Scalar};
use crate::real::{bits_for_digits, Real};
use crate::rootsys::{build_root_datum, CartanType, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    LefschetzChern,
    IntegralPrimitive,
}

impl Normalization {
    pub fn parse(s: &str) -> Option<Normalization> {
        match s {
            "lefschetz-chern" => Some(Normalization::LefschetzChern),
            "integral-primitive" => Some(Normalization::IntegralPrimitive),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Normalization::LefschetzChern => "lefschetz-chern",
            Normalization::IntegralPrimitive => "integral-primitive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AperyEstimate {
    pub value: Real,
    pub error_estimate: Real,
    pub seed: Vec<BigInt>,
    pub seed_codim: usize,
    pub primitive_codim: usize,
    pub weight: usize,
    pub terms_used: usize,
    pub oscillation_period: usize,
    pub branches: Vec<Real>,
    pub truncated: bool,
    pub method: &'static str,
}

impl AperyEstimate {
    /// Decimal digits supported by the error estimate.
    pub fn accurate_digits(&self) -> u32 {
        if self.truncated || self.error_estimate.is_zero() {
            return (self.value.prec() as f64 / 3.33) as u32;
        }
        let e = -self.error_estimate.log2_abs() / std::f64::consts::LOG2_10;
        e.max(0.0) as u32
    }
}

/// Solver settings shared by a whole run.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub terms: usize,
    pub digits: u32,
    pub mode: Mode,
    pub normalization: Normalization,
    pub max_order: usize,
}

impl Settings {
    pub fn new(op: &QHOperator, terms: usize, digits: u32, normalization: Normalization) -> Settings {
        Settings { terms, digits, mode: Mode::default_for(op, digits), normalization, max_order: 24 }
    }

    /// Working precision for ratios, with room for extrapolation losses.
    pub fn ratio_prec(&self) -> u32 {
        let base = bits_for_digits(self.digits + 2 * self.max_order as u32 + 40);
        match self.mode {
            Mode::Rational => base,
            Mode::Float { digits } => base.min(bits_for_digits(digits)),
        }
    }
}

/// Seeds of the numerator solutions, each with its codimension.
#[derive(Clone, Debug)]
pub struct SeedSet {
    pub denominator: Vec<BigInt>,
    pub numerators: Vec<(usize, Vec<BigInt>)>,
    pub normalization: Normalization,
}

fn grassmannian_k2(op: &QHOperator) -> Option<usize> {
    match op.kind {
        OperatorKind::Homogeneous { family: Family::A, rank, node: 2 } if rank >= 3 => Some(rank + 1),
        _ => None,
    }
}

/// `M_0^k v` over the rationals.
fn h_power(op: &QHOperator, v: &[BigRational], k: usize) -> Vec<BigRational> {
    let mut w = v.to_vec();
    for _ in 0..k {
        w = op.classical().apply_rat(&w);
    }
    w
}

/// Coprimitive seeds `H^{dim−4k} p_{2k}` on `Gr(2, N)`, where `p_{2k}` is the
/// primitive part of `c_2^k` for the universal quotient bundle `Q`
/// (`c_1(Q) = H`).
///
/// `c_2(Q) = σ_2 ≡ −σ_{1,1}` modulo `H`, and the primitive part of `σ_{1,1}^k`
/// is that of `σ_{k,k}`, so `(−1)^k σ_{k,k}` is used as representative.
fn lefschetz_chern_seeds(op: &QHOperator, n: usize) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let d = build_root_datum(CartanType::new(Family::A, n - 1)?)?;
    let basis = SchubertBasis::new(d, 2)?;
    let parts: Vec<Vec<usize>> = basis.elements.iter().map(|u| typea_partition(u, 2, n)).collect();
    let find = |p: &[usize]| parts.iter().position(|q| q.as_slice() == p);
    let size = op.size();
    let dim = op.dim_x;
    let mut seeds = Vec::new();
    let mut k = 1;
    while 4 * k <= dim {
        let c = 2 * k;
        let mut x = vec![BigRational::zero(); size];
        let Some(i) = find(&[k, k]) else { break };
        x[i] = BigRational::from_integer(BigInt::from(if k % 2 == 0 { 1 } else { -1 }));
        // p = x − H y with H^{dim−2c+1} p = 0.
        let e = dim - 2 * c + 1;
        let lower: Vec<usize> = (0..size).filter(|&i| op.grading[i] == c - 1).collect();
        let target: Vec<usize> = (0..size).filter(|&i| op.grading[i] == dim - c + 1).collect();
        let hx = h_power(op, &x, e);
        let cols: Vec<Vec<BigRational>> = lower
            .iter()
            .map(|&j| {
                let mut v = vec![BigRational::zero(); size];
                v[j] = BigRational::one();
                h_power(op, &v, e + 1)
            })
            .collect();
        let a: Vec<Vec<BigRational>> =
            target.iter().map(|&t| cols.iter().map(|col| col[t].clone()).collect()).collect();
        let b: Vec<BigRational> = target.iter().map(|&t| hx[t].clone()).collect();
        let y = solve_rational(&a, &b).ok_or_else(|| Error::Internal("hard Lefschetz system is singular".into()))?;
        let mut yv = vec![BigRational::zero(); size];
        for (j, &idx) in lower.iter().enumerate() {
            yv[idx] = y[j].clone();
        }
        let hy = h_power(op, &yv, 1);
        let p: Vec<BigRational> = x.iter().zip(&hy).map(|(a, b)| a - b).collect();
        let gamma = h_power(op, &p, dim - 2 * c);
        let den = gamma.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let mut v: Vec<BigInt> = gamma.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let g = content(&v);
        for x in v.iter_mut() {
            *x /= &g;
        }
        seeds.push((dim - c, v));
        k += 1;
    }
    Ok(seeds)
}

fn symplectic_k2(op: &QHOperator) -> Option<usize> {
    match op.kind {
        OperatorKind::Homogeneous { family: Family::C, rank, node: 2 } if rank >= 3 => Some(rank),
        _ => None,
    }
}

/// Basis indices of the linear Schubert varieties `P^0 ⊂ P^1 ⊂ …` through
/// the point class: `chain[c]` has dimension `c`, and `H · chain[c] =
/// chain[c−1]` with a single term. Where two cells qualify, the one starting
/// the longer chain wins.
pub fn linear_chain(op: &QHOperator) -> Vec<usize> {
    let m0 = op.classical();
    let up = |v: usize| -> Vec<usize> {
        (0..op.size()).filter(|&u| m0.column(u) == [(v, 1)]).collect()
    };
    fn depth(v: usize, up: &dyn Fn(usize) -> Vec<usize>) -> usize {
        1 + up(v).into_iter().map(|u| depth(u, up)).max().unwrap_or(0)
    }
    let Some(mut v) = (0..op.size()).find(|&i| op.grading[i] == op.dim_x) else { return Vec::new() };
    let mut chain = vec![v];
    loop {
        let best = up(v).into_iter().map(|u| (depth(u, &up), u)).max();
        match best {
            Some((_, u)) => {
                chain.push(u);
                v = u;
            }
            None => return chain,
        }
    }
}

/// Seeds on `SGr(2, 2n)` pushing forward to the pinned seeds of `Gr(2, 2n)`.
///
/// The linear cell of dimension `c` through the point is a Schubert variety
/// of both spaces, and it is the only cell of the hyperplane section whose
/// pushforward meets the matching cell of the Grassmannian. Pinning that
/// coordinate fixes each one-dimensional kernel slot.
fn symplectic_seeds(op: &QHOperator, n: usize, kernel: &[(usize, Vec<BigInt>)]) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let gr = crate::gpqh::homogeneous_operator(Family::A, 2 * n - 1, 2)?;
    let gr_seeds = lefschetz_chern_seeds(&gr, 2 * n)?;
    let gr_chain = linear_chain(&gr);
    let chain = linear_chain(op);
    let mut out = Vec::new();
    for (gr_codim, sx) in gr_seeds {
        let c = gr.dim_x - gr_codim;
        let codim = op.dim_x - c;
        let slot: Vec<&Vec<BigInt>> = kernel.iter().filter(|(k, _)| *k == codim).map(|(_, v)| v).collect();
        let ([v], Some(&a), Some(&b)) = (slot.as_slice(), gr_chain.get(c), chain.get(c)) else { continue };
        if v[b].is_zero() {
            continue;
        }
        let t = BigRational::new(sx[a].clone(), v[b].clone());
        if !t.is_integer() {
            return Err(Error::Internal(format!("seed transfer in codimension {codim} is not integral")));
        }
        out.push((codim, v.iter().map(|x| x * t.numer()).collect()));
    }
    Ok(out)
}

pub fn choose_seeds(op: &QHOperator, normalization: Normalization) -> Result<SeedSet> {
    let ker = kernel_basis(op);
    let (top, rest) = ker.split_first().ok_or_else(|| Error::Internal("empty kernel".into()))?;
    if top.0 != op.dim_x {
        return Err(Error::Internal("point class missing from the kernel".into()));
    }
    let mut numerators: Vec<(usize, Vec<BigInt>)> = rest.to_vec();
    let mut applied = Normalization::IntegralPrimitive;
    if normalization == Normalization::LefschetzChern {
        let pinned = if let Some(n) = grassmannian_k2(op) {
            Some(lefschetz_chern_seeds(op, n)?)
        } else if let Some(n) = symplectic_k2(op) {
            Some(symplectic_seeds(op, n, rest)?)
        } else {
            None
        };
        if let Some(lc) = pinned {
            for (codim, v) in lc {
                if let Some(slot) = numerators.iter_mut().find(|(c, _)| *c == codim) {
                    slot.1 = v;
                }
            }
            applied = Normalization::LefschetzChern;
        }
    }
    Ok(SeedSet { denominator: top.1.clone(), numerators, normalization: applied })
}

/// `r_n = num_n / den_n` where `den_n ≠ 0`, with the skipped indices.
pub fn ratio_sequence(num: &[Scalar], den: &[Scalar], prec: u32) -> Result<(Vec<(usize, Real)>, Vec<usize>)> {
    if num.len() != den.len() {
        return Err(Error::Precondition("sequences differ in length".into()));
    }
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (n, (a, b)) in num.iter().zip(den).enumerate() {
        if b.is_zero() {
            skipped.push(n);
            continue;
        }
        let v = match (a, b) {
            (Scalar::Exact(an, ad), Scalar::Exact(bn, bd)) => {
                if an.is_zero() {
                    Real::zero(prec)
                } else {
                    Real::from_ratio(&(an * bd), &(ad * bn), prec)
                }
            }
            _ => &a.to_real(prec) / &b.to_real(prec),
        };
        out.push((n, v));
    }
    if out.is_empty() {
        return Err(Error::Numeric("empty ratio: every denominator vanishes".into()));
    }
    Ok((out, skipped))
}

/// Everything computed for one variety.
#[derive(Clone, Debug)]
pub struct ConstantsRun {
    pub seeds: SeedSet,
    pub estimates: Vec<AperyEstimate>,
    pub denominator_fundamental: Vec<Scalar>,
    pub numerator_fundamentals: Vec<Vec<Scalar>>,
}

pub fn apery_constants(op: &QHOperator, terms: usize, digits: u32, normalization: Normalization) -> Result<Vec<AperyEstimate>> {
    let s = Settings::new(op, terms, digits, normalization);
    Ok(run_constants(op, &s)?.estimates)
}

pub fn run_constants(op: &QHOperator, s: &Settings) -> Result<ConstantsRun> {
    let seeds = choose_seeds(op, s.normalization)?;
    let den_series = solve_series(op, &to_rational_vec(&seeds.denominator), s.terms, s.mode)?;
    let den = fundamental_term(&den_series);
    let prec = s.ratio_prec();
    let results: Vec<Result<(AperyEstimate, Vec<Scalar>)>> = seeds
        .numerators
        .par_iter()
        .map(|(codim, seed)| {
            let series = solve_series(op, &to_rational_vec(seed), s.terms, s.mode)?;
            let (truncated, _) = truncation_detect(&series);
            let num = fundamental_term(&series);
            let weight = op.dim_x - codim;
            if truncated {
                return Ok((
                    AperyEstimate {
                        value: Real::zero(prec),
                        error_estimate: Real::zero(prec),
                        seed: seed.clone(),
                        seed_codim: *codim,
                        primitive_codim: weight,
                        weight,
                        terms_used: 0,
                        oscillation_period: 1,
                        branches: Vec::new(),
                        truncated: true,
                        method: "truncated",
                    },
                    num,
                ));
            }
            let (seq, _) = ratio_sequence(&num, &den, prec)?;
            let lim = extrapolate(&seq, s.max_order.min(seq.len() / 5))?;
            Ok((
                AperyEstimate {
                    value: lim.value,
                    error_estimate: lim.error,
                    seed: seed.clone(),
                    seed_codim: *codim,
                    primitive_codim: weight,
                    weight,
                    terms_used: lim.terms_used,
                    oscillation_period: lim.period,
                    branches: lim.branches,
                    truncated: false,
                    method: lim.method,
                },
                num,
            ))
        })
        .collect();
    let mut estimates = Vec::new();
    let mut fundamentals = Vec::new();
    for r in results {
        let (e, f) = r?;
        estimates.push(e);
        fundamentals.push(f);
    }
    Ok(ConstantsRun { seeds, estimates, denominator_fundamental: den, numerator_fundamentals: fundamentals })
}

/// Estimate for an arbitrary seed against the point-class denominator.
pub fn constant_for_seed(op: &QHOperator, seed: &[BigRational], den_seed: &[BigRational], s: &Settings) -> Result<Limit> {
    let den = fundamental_term(&solve_series(op, den_seed, s.terms, s.mode)?);
    let series = solve_series(op, seed, s.terms, s.mode)?;
    let prec = s.ratio_prec();
    if truncation_detect(&series).0 {
        return Ok(Limit {
            value: Real::zero(prec),
            error: Real::zero(prec),
            period: 1,
            branches: Vec::new(),
            terms_used: 0,
            method: "truncated",
        });
    }
    let (seq, _) = ratio_sequence(&fundamental_term(&series), &den, prec)?;
    extrapolate(&seq, s.max_order.min(seq.len() / 5))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_chain_on_grassmannians() {
        for n in 4..=8 {
            let op = crate::gpqh::homogeneous_operator(Family::A, n - 1, 2).unwrap();
            let basis = SchubertBasis::new(build_root_datum(CartanType::new(Family::A, n - 1).unwrap()).unwrap(), 2).unwrap();
            let chain = linear_chain(&op);
            assert_eq!(chain.len(), n - 1);
            for (c, &i) in chain.iter().enumerate() {
                assert_eq!(typea_partition(&basis.elements[i], 2, n), vec![n - 2, n - 2 - c]);
            }
        }
    }
}
