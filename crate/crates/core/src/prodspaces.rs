//! Products of projective spaces with an arbitrary ample polarization.
//!
//! The quantum differential equation is restricted to the one-parameter
//! torus of the polarization `H = Σ w_i H_i`, so the Novikov variable of
//! the i-th factor becomes `q^{w_i}`.

use crate::error::{Error, Result};
use crate::gpqh::{OperatorKind, QHOperator};
use crate::linalg::SparseMat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub dims: Vec<usize>,
    pub weights: Vec<usize>,
}

impl ProductSpec {
    pub fn new(dims: Vec<usize>, weights: Vec<usize>) -> Result<ProductSpec> {
        if dims.is_empty() || dims.len() != weights.len() {
            return Err(Error::Config("a product needs one weight per factor".into()));
        }
        if dims.iter().chain(&weights).any(|&x| x == 0) {
            return Err(Error::Config("factor dimensions and weights must be positive".into()));
        }
        Ok(ProductSpec { dims, weights })
    }

    /// Polarization by the anticanonical class.
    pub fn anticanonical(dims: Vec<usize>) -> Result<ProductSpec> {
        let w = dims.iter().map(|n| n + 1).collect();
        ProductSpec::new(dims, w)
    }

    /// `O(1, ..., 1)`.
    pub fn unit(dims: Vec<usize>) -> Result<ProductSpec> {
        let w = vec![1; dims.len()];
        ProductSpec::new(dims, w)
    }
}

/// Exponent vectors sorted by total degree, then lexicographically
/// descending.
pub fn monomial_basis(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &n in dims {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..=n).map(move |k| {
                    let mut b = a.clone();
                    b.push(k);
                    b
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

fn index_map(basis: &[Vec<usize>]) -> std::collections::HashMap<Vec<usize>, usize> {
    basis.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect()
}

/// `H_i ⋆` as q-graded matrices, with coefficient `coef`.
fn factor_matrices(spec: &ProductSpec, i: usize, coef: i64, basis: &[Vec<usize>]) -> Vec<SparseMat> {
    let n = basis.len();
    let idx = index_map(basis);
    let mut mats = vec![SparseMat::zeros(n); spec.weights[i] + 1];
    for (c, a) in basis.iter().enumerate() {
        let mut b = a.clone();
        let deg = if a[i] < spec.dims[i] {
            b[i] += 1;
            0
        } else {
            b[i] = 0;
            spec.weights[i]
        };
        mats[deg].add(idx[&b], c, coef);
    }
    mats
}

fn add_into(acc: &mut Vec<SparseMat>, other: &[SparseMat]) {
    let n = other[0].size();
    while acc.len() < other.len() {
        acc.push(SparseMat::zeros(n));
    }
    for (d, m) in other.iter().enumerate() {
        for (r, c, v) in m.entries() {
            acc[d].add(r, c, v);
        }
    }
}

/// Multiplication of q-polynomial matrices.
pub fn poly_matmul(a: &[SparseMat], b: &[SparseMat]) -> Vec<SparseMat> {
    let n = a[0].size();
    let mut out = vec![SparseMat::zeros(n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = x.matmul(y);
            for (r, c, v) in p.entries() {
                out[i + j].add(r, c, v);
            }
        }
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// `H_i ⋆` alone, in the basis of [`monomial_basis`].
pub fn factor_operator(spec: &ProductSpec, i: usize) -> Vec<SparseMat> {
    let basis = monomial_basis(&spec.dims);
    factor_matrices(spec, i, 1, &basis)
}

pub fn product_operator(spec: &ProductSpec) -> Result<QHOperator> {
    let spec = ProductSpec::new(spec.dims.clone(), spec.weights.clone())?;
    let basis = monomial_basis(&spec.dims);
    let n = basis.len();
    let mut mats = vec![SparseMat::zeros(n)];
    for i in 0..spec.dims.len() {
        add_into(&mut mats, &factor_matrices(&spec, i, spec.weights[i] as i64, &basis));
    }
    while mats.len() > 1 && mats.last().unwrap().is_zero() {
        mats.pop();
    }
    let grading: Vec<usize> = basis.iter().map(|a| a.iter().sum()).collect();
    let dim_x: usize = spec.dims.iter().sum();

    let mut r: Option<i64> = None;
    let mut graded = true;
    for (d, m) in mats.iter().enumerate().skip(1) {
        for (row, col, _) in m.entries() {
            let drop = grading[col] as i64 + 1 - grading[row] as i64;
            if drop % d as i64 != 0 {
                graded = false;
                continue;
            }
            match r {
                None => r = Some(drop / d as i64),
                Some(r0) if r0 != drop / d as i64 => graded = false,
                _ => {}
            }
        }
    }
    let fano_index = if graded { r.filter(|&x| x > 0).map(|x| x as u32) } else { None };

    let idx = index_map(&basis);
    let involution = basis
        .iter()
        .map(|a| idx[&a.iter().zip(&spec.dims).map(|(x, n)| n - x).collect::<Vec<_>>()])
        .collect();
    let labels = basis
        .iter()
        .map(|a| format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let op = QHOperator {
        kind: OperatorKind::Product { dims: spec.dims.clone(), weights: spec.weights.clone() },
        matrices: mats,
        fano_index,
        dim_x,
        grading,
        labels,
        involution,
    };
    op.check_invariants()?;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1xp1_anticanonical() {
        let op = product_operator(&ProductSpec::anticanonical(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(op.size(), 4);
        assert_eq!(op.mu(), 2);
        assert_eq!(op.fano_index, Some(1));
    }

    #[test]
    fn p2xp3_unit_weights_have_degree_one() {
        let op = product_operator(&ProductSpec::unit(vec![2, 3]).unwrap()).unwrap();
        assert_eq!(op.max_degree(), 1);
        assert_eq!(op.fano_index, None);
    }

    #[test]
    fn factors_commute() {
        let spec = ProductSpec::new(vec![2, 3], vec![3, 4]).unwrap();
        let a = factor_operator(&spec, 0);
        let b = factor_operator(&spec, 1);
        assert_eq!(poly_matmul(&a, &b), poly_matmul(&b, &a));
    }

    #[test]
    fn basis_order() {
        let b = monomial_basis(&[1, 1]);
        assert_eq!(b, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }
}
