//! Integral LLL reduction with exact Gram–Schmidt data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    /// `basis = transform · input`, unimodular.
    pub transform: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// `round(a / b)` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// LLL with `δ = 3/4` on linearly independent integer rows.
pub fn lll_reduce(input: &[Vec<BigInt>]) -> Reduced {
    let n = input.len();
    let mut b: Vec<Vec<BigInt>> = input.to_vec();
    let mut h: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    if n <= 1 {
        return Reduced { basis: b, transform: h };
    }
    // d[0] = 1, d[i+1] = det of the Gram matrix of the first i+1 rows;
    // lam[i][j] = d[j+1] μ_ij.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    for i in 0..n {
        for j in 0..=i {
            let mut u = dot(&b[i], &b[j]);
            for k in 0..j {
                u = (&d[k + 1] * &u - &lam[i][k] * &lam[j][k]) / &d[k];
            }
            if j < i {
                lam[i][j] = u;
            } else {
                assert!(!u.is_zero(), "LLL input rows are dependent");
                d[i + 1] = u;
            }
        }
    }

    let reduce = |k: usize, l: usize, b: &mut Vec<Vec<BigInt>>, h: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt]| {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l + 1] {
            let q = round_div(&lam[k][l], &d[l + 1]);
            let (bl, hl) = (b[l].clone(), h[l].clone());
            axpy(&mut b[k], &q, &bl);
            axpy(&mut h[k], &q, &hl);
            let dl = d[l + 1].clone();
            lam[k][l] -= &q * dl;
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    let mut k = 1;
    while k < n {
        reduce(k, k - 1, &mut b, &mut h, &mut lam, &d);
        // 4 d_{k+1} d_{k-1} < 3 d_k² − 4 λ²
        let lhs = &d[k + 1] * &d[k - 1] * 4;
        let rhs = &d[k] * &d[k] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
        if lhs < rhs {
            b.swap(k, k - 1);
            h.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let dk = (&d[k + 1] * &d[k - 1] + &l * &l) / &d[k];
            for i in k + 1..n {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&dk * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = dk;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                reduce(k, l, &mut b, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    Reduced { basis: b, transform: h }
}

/// Whether rows satisfy `|μ_ij| ≤ 1/2` and the Lovász condition with
/// `δ = 3/4`, checked in exact arithmetic.
pub fn is_lll_reduced(b: &[Vec<BigInt>]) -> bool {
    use num_rational::BigRational;
    let n = b.len();
    let mut bstar: Vec<Vec<BigRational>> = Vec::new();
    let mut norms: Vec<BigRational> = Vec::new();
    let half = BigRational::new(1.into(), 2.into());
    for i in 0..n {
        let mut v: Vec<BigRational> = b[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut mus = Vec::new();
        for j in 0..i {
            let num: BigRational = b[i].iter().zip(&bstar[j]).map(|(x, y)| BigRational::from_integer(x.clone()) * y).sum();
            let mu = num / &norms[j];
            for (a, s) in v.iter_mut().zip(&bstar[j]) {
                *a -= &mu * s;
            }
            mus.push(mu);
        }
        if mus.iter().any(|m| m.abs() > half) {
            return false;
        }
        let nv: BigRational = v.iter().map(|x| x * x).sum();
        if i > 0 {
            let mu = &mus[i - 1];
            let lhs = &nv + mu * mu * &norms[i - 1];
            if lhs < &norms[i - 1] * BigRational::new(3.into(), 4.into()) {
                return false;
            }
        }
        bstar.push(v);
        norms.push(nv);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn orthogonal_basis_is_fixed() {
        let b = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(lll_reduce(&b).basis, b);
    }

    #[test]
    fn skew_basis_shrinks() {
        let b = m(&[&[1, 1_000_000], &[0, 1]]);
        let r = lll_reduce(&b);
        assert!(is_lll_reduced(&r.basis));
        let n0: BigInt = dot(&r.basis[0], &r.basis[0]);
        assert!(n0 <= BigInt::from(1));
    }

    #[test]
    fn transform_reproduces_basis() {
        let b = m(&[&[12, 7, 3], &[5, 19, 2], &[8, 1, 40]]);
        let r = lll_reduce(&b);
        for (row, t) in r.basis.iter().zip(&r.transform) {
            for c in 0..3 {
                let s: BigInt = (0..3).map(|i| &t[i] * &b[i][c]).sum();
                assert_eq!(s, row[c]);
            }
        }
    }
}
