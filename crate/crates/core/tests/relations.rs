use apery::zetaid::{identify, is_lll_reduced, lll_reduce, monomial_basis, IdentifyOptions, ZetaPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Determinant by rational elimination.
fn det(m: &[Vec<BigInt>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

fn gram(b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    b.iter().map(|x| b.iter().map(|y| x.iter().zip(y).map(|(p, q)| p * q).sum()).collect()).collect()
}

fn independent_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-1000i64..1000, n + 1), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lll_output_is_reduced_and_spans_the_same_lattice(rows in independent_rows()) {
        let b = big(&rows);
        prop_assume!(!det(&gram(&b)).is_zero());
        let r = lll_reduce(&b);
        prop_assert!(is_lll_reduced(&r.basis));
        let n = b.len();
        for i in 0..n {
            let row: Vec<BigInt> = (0..b[0].len())
                .map(|c| (0..n).map(|k| &r.transform[i][k] * &b[k][c]).sum())
                .collect();
            prop_assert_eq!(&row, &r.basis[i]);
        }
        prop_assert_eq!(det(&r.transform).abs(), BigRational::one());
        prop_assert_eq!(det(&gram(&r.basis)), det(&gram(&b)));
    }

    #[test]
    fn identify_round_trips_small_polynomials(
        weight in 2u32..=8,
        coeffs in prop::collection::vec((-30i64..=30, 1i64..=6), 12),
        mask in 1u32..4096,
    ) {
        let basis = monomial_basis(weight, false);
        let mut p = ZetaPolynomial::zero();
        for (i, m) in basis.iter().enumerate() {
            let (a, b) = coeffs[i % coeffs.len()];
            if mask >> (i % 12) & 1 == 1 && a != 0 {
                p = p.add(&ZetaPolynomial::monomial(m.clone(), BigRational::new(a.into(), b.into())));
            }
        }
        prop_assume!(!p.is_zero());
        let v = p.eval(90);
        let o = IdentifyOptions { digits: 60, ..IdentifyOptions::default() };
        let id = identify(&v, weight, &o);
        let back = id.poly().cloned();
        prop_assert_eq!(back.as_ref(), Some(&p), "value {}", v.to_decimal(30));
        let again = back.unwrap().eval(90);
        let d = (&again - &v).abs();
        prop_assert!(d.is_zero() || d.log2_abs() < -250.0);
    }
}

#[test]
fn a_lattice_with_a_short_vector() {
    // integer relations among 1, 1, 4
    let k = BigInt::from(10).pow(12);
    let b = vec![
        vec![BigInt::one(), BigInt::zero(), BigInt::zero(), k.clone()],
        vec![BigInt::zero(), BigInt::one(), BigInt::zero(), k.clone()],
        vec![BigInt::zero(), BigInt::zero(), BigInt::one(), &k * 4],
    ];
    let r = lll_reduce(&b);
    let first = &r.basis[0];
    assert!(first[3].is_zero());
    let norm: BigInt = first.iter().map(|x| x * x).sum();
    assert!(norm <= BigInt::from(18));
}
