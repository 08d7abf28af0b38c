//! Zeta values, Euler's constant and integer-relation identification of
//! numeric constants as homogeneous zeta polynomials.

mod constants;
mod lll;
mod poly;

pub use constants::{bernoulli, bernoulli_table, euler_gamma, even_zeta_closed_form, even_zeta_discrepancy, even_zeta_ratio, zeta_value};
pub use lll::{is_lll_reduced, lll_reduce, Reduced};
pub use poly::{monomial_basis, ZetaMonomial, ZetaPolynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::real::{bits_for_digits, Real};

/// Parameters of a relation search.
#[derive(Clone, Copy, Debug)]
pub struct IdentifyOptions {
    pub digits: u32,
    pub max_height: u64,
    pub guard: u32,
    pub include_euler: bool,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions { digits: 40, max_height: 100_000_000, guard: 5, include_euler: false }
    }
}

#[derive(Clone, Debug)]
pub enum Identification {
    Identified {
        poly: ZetaPolynomial,
        /// Second-shortest over shortest reduced vector length.
        confidence: f64,
    },
    Unidentified {
        value: Real,
    },
}

impl Identification {
    pub fn poly(&self) -> Option<&ZetaPolynomial> {
        match self {
            Identification::Identified { poly, .. } => Some(poly),
            Identification::Unidentified { .. } => None,
        }
    }
}

fn norm2(v: &[BigInt]) -> f64 {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY).powi(2)).sum::<f64>().sqrt()
}

/// Integer relation `p_0 x + Σ p_i m_i = 0` at `digits`, if an admissible one
/// turns up.
fn relation_at(value: &Real, basis: &[ZetaMonomial], digits: u32, o: &IdentifyOptions) -> Option<(Vec<BigInt>, f64)> {
    let prec = bits_for_digits(digits + 10);
    let mut xs = vec![value.with_prec(prec)];
    xs.extend(basis.iter().map(|m| m.eval(digits + 10)));
    let k = xs.len();
    let rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut r = vec![BigInt::zero(); k + 1];
            r[i] = BigInt::from(1);
            r[k] = xs[i].round_scaled(digits as i64);
            r
        })
        .collect();
    let red = lll_reduce(&rows);
    let mut lens: Vec<f64> = red.basis.iter().map(|r| norm2(r)).collect();
    lens.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let confidence = if k > 1 { lens[1] / lens[0].max(1e-300) } else { f64::INFINITY };
    let tol = Real::one(prec).ldexp(-(((digits - o.guard.min(digits)) as f64) * std::f64::consts::LOG2_10) as i64);
    let height = BigInt::from(o.max_height);
    let mut best: Option<(Vec<BigInt>, f64)> = None;
    for row in &red.basis {
        let p: Vec<BigInt> = row[..k].to_vec();
        if p[0].is_zero() || p.iter().any(|c| c.abs() > height) {
            continue;
        }
        let resid = p.iter().zip(&xs).fold(Real::zero(prec), |acc, (c, x)| &acc + &x.mul_int(c));
        if resid.abs().cmp_abs(&tol).is_gt() {
            continue;
        }
        let n = norm2(&p);
        if best.as_ref().is_none_or(|b| n < norm2(&b.0)) {
            best = Some((p, confidence));
        }
    }
    best
}

fn to_poly(p: &[BigInt], basis: &[ZetaMonomial]) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::zero();
    for (c, m) in p[1..].iter().zip(basis) {
        if !c.is_zero() {
            out = out.add(&ZetaPolynomial::monomial(m.clone(), BigRational::new(-c.clone(), p[0].clone())));
        }
    }
    out
}

/// Identifies `value` as a weight-`weight` polynomial.
///
/// `value` must carry at least `digits + 10` correct digits: the relation
/// found at `digits` has to reappear at `digits + 10`.
pub fn identify(value: &Real, weight: u32, o: &IdentifyOptions) -> Identification {
    let zero_tol = -(((o.digits - o.guard.min(o.digits)) as f64) * std::f64::consts::LOG2_10);
    if value.is_zero() || value.log2_abs() < zero_tol {
        return Identification::Identified { poly: ZetaPolynomial::zero(), confidence: f64::INFINITY };
    }
    let basis = monomial_basis(weight, o.include_euler);
    let Some((p, confidence)) = relation_at(value, &basis, o.digits, o) else {
        return Identification::Unidentified { value: value.clone() };
    };
    let poly = to_poly(&p, &basis);
    match relation_at(value, &basis, o.digits + 10, o) {
        Some((p2, _)) if to_poly(&p2, &basis) == poly => Identification::Identified { poly, confidence },
        _ => Identification::Unidentified { value: value.clone() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_relation() {
        // x = 3/2 against {1}
        let v = Real::from_ratio(&BigInt::from(3), &BigInt::from(2), 300);
        let id = identify(&v, 0, &IdentifyOptions::default());
        assert_eq!(id.poly().unwrap().display_form(), "3/2");
    }

    #[test]
    fn zeta2_identifies() {
        let v = zeta_value(2, 80);
        let id = identify(&v, 2, &IdentifyOptions::default());
        assert_eq!(id.poly().unwrap().display_form(), "ζ(2)");
    }

    #[test]
    fn mixed_weight_six() {
        let p = ZetaPolynomial::parse("-49/2 ζ(3)^2 - 945/16 ζ(6)").unwrap();
        let v = p.eval(80);
        let id = identify(&v, 6, &IdentifyOptions::default());
        assert_eq!(id.poly().unwrap(), &p);
    }
}
