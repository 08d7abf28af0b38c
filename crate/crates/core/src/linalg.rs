//! Sparse integer matrices and exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::real::Real;

/// Column-major sparse matrix with small integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMat {
    pub fn zeros(n: usize) -> SparseMat {
        SparseMat { n, cols: vec![Vec::new(); n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Adds `v` at `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, v: i64) {
        let c = &mut self.cols[col];
        match c.binary_search_by_key(&row, |&(r, _)| r) {
            Ok(i) => {
                c[i].1 += v;
                if c[i].1 == 0 {
                    c.remove(i);
                }
            }
            Err(i) => {
                if v != 0 {
                    c.insert(i, (row, v));
                }
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        let c = &self.cols[col];
        c.binary_search_by_key(&row, |&(r, _)| r).map(|i| c[i].1).unwrap_or(0)
    }

    pub fn column(&self, col: usize) -> &[(usize, i64)] {
        &self.cols[col]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Nonzero entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.n]; self.n];
        for (r, c, v) in self.entries() {
            d[r][c] = v;
        }
        d
    }

    pub fn from_dense(d: &[Vec<i64>]) -> SparseMat {
        let mut m = SparseMat::zeros(d.len());
        for (r, row) in d.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, v);
            }
        }
        m
    }

    pub fn matmul(&self, other: &SparseMat) -> SparseMat {
        let mut out = SparseMat::zeros(self.n);
        for (k, c, v) in other.entries() {
            for &(r, w) in self.column(k) {
                out.add(r, c, w * v);
            }
        }
        out
    }

    pub fn apply_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.n];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for &(r, v) in &self.cols[c] {
                y[r] += xc * v;
            }
        }
        y
    }

    pub fn apply_real(&self, x: &[Real], prec: u32) -> Vec<Real> {
        let mut y = vec![Real::zero(prec); self.n];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for &(r, v) in &self.cols[c] {
                y[r] = &y[r] + &xc.mul_i64(v);
            }
        }
        y
    }

    pub fn apply_rat(&self, x: &[BigRational]) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); self.n];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for &(r, v) in &self.cols[c] {
                y[r] += xc * BigRational::from_integer(BigInt::from(v));
            }
        }
        y
    }
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn primitive_part(v: &mut [BigInt]) {
    let g = content(v);
    if g.is_zero() {
        return;
    }
    let flip = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    for x in v.iter_mut() {
        *x /= &g;
        if flip {
            *x = -&*x;
        }
    }
}

/// Reduced row echelon data from integer elimination: each pivot row keeps
/// integer entries and vanishes on the other pivot columns.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Fraction-free Gauss-Jordan elimination.
pub fn echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let g = a[r][c].gcd(&a[i][c]);
            let fr = &a[i][c] / &g;
            let fi = &a[r][c] / &g;
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &fi - y * &fr;
            }
            primitive_part_keep_sign(&mut a[i]);
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    Echelon { rows: a, pivots, ncols }
}

fn primitive_part_keep_sign(v: &mut [BigInt]) {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

/// Integral basis of the right kernel, one vector per free column in
/// increasing column order.
pub fn integer_nullspace(a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = echelon(a, ncols);
    let mut out = Vec::new();
    for f in ech.free_columns() {
        let l = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(row, _)| !row[f].is_zero())
            .fold(BigInt::one(), |acc, (row, &p)| acc.lcm(&row[p]));
        let mut v = vec![BigInt::zero(); ncols];
        v[f] = l.clone();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if !row[f].is_zero() {
                v[p] = -(&l * &row[f]) / &row[p];
            }
        }
        let g = content(&v);
        for x in v.iter_mut() {
            *x /= &g;
        }
        out.push(v);
    }
    out
}

pub fn rank(a: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    echelon(a, ncols).rank()
}

/// Solves the square system `a x = b` over the rationals.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(pr.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_small_matrix() {
        let ker = integer_nullspace(ints(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(ker, ints(&[&[1, -1, 1]]));
        let ker = integer_nullspace(ints(&[&[2, 4, 6]]), 3);
        assert_eq!(ker, ints(&[&[-2, 1, 0], &[-3, 0, 1]]));
    }

    #[test]
    fn rank_counts_pivots() {
        assert_eq!(rank(ints(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(rank(ints(&[&[1, 2], &[3, 4]]), 2), 2);
    }

    #[test]
    fn rational_solve() {
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve_rational(&a, &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(4, 5), q(7, 5)]);
    }

    #[test]
    fn sparse_ops() {
        let mut m = SparseMat::zeros(3);
        m.add(1, 0, 2);
        m.add(2, 1, 3);
        m.add(2, 1, -3);
        assert_eq!(m.nnz(), 1);
        let y = m.apply_int(&[BigInt::from(5), BigInt::from(1), BigInt::from(0)]);
        assert_eq!(y[1], BigInt::from(10));
        assert!(m.matmul(&m).is_zero());
    }
}
