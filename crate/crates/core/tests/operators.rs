use std::collections::BTreeMap;

use apery::gpqh::{homogeneous_operator, pieri_oracle_typea, typea_partition, QHOperator, SchubertBasis};
use apery::prodspaces::{factor_operator, poly_matmul, product_operator, ProductSpec};
use apery::rootsys::{build_root_datum, coset_min_reps, CartanType, Family};
use proptest::prelude::*;

fn datum(f: Family, n: usize) -> apery::rootsys::RootDatum {
    build_root_datum(CartanType::new(f, n).unwrap()).unwrap()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn classical_order(f: Family, n: usize) -> u64 {
    let n64 = n as u64;
    match f {
        Family::A => factorial(n64 + 1),
        Family::B | Family::C => (1u64 << n) * factorial(n64),
        Family::D => (1u64 << (n - 1)) * factorial(n64),
        Family::E => [51_840, 2_903_040, 696_729_600][n - 6],
        Family::F => 1152,
        Family::G => 12,
    }
}

/// `|W|` as a product of quotient sizes along a chain of Levi subgroups.
fn order_by_chain(f: Family, n: usize) -> u64 {
    let d = datum(f, n);
    let (node, levi) = match (f, n) {
        (Family::A, 1) => return 2,
        (Family::A, _) => (n, Some((Family::A, n - 1))),
        (Family::B | Family::C, 2) => (1, Some((Family::A, 1))),
        (Family::B | Family::C, _) => (1, Some((f, n - 1))),
        (Family::D, 4) => (1, Some((Family::A, 3))),
        (Family::D, _) => (1, Some((Family::D, n - 1))),
        (Family::E, 6) => (6, Some((Family::D, 5))),
        (Family::E, _) => (n, Some((Family::E, n - 1))),
        (Family::F, _) => (4, Some((Family::B, 3))),
        (Family::G, _) => (1, Some((Family::A, 1))),
    };
    let q = coset_min_reps(&d, node).unwrap().len() as u64;
    q * levi.map_or(1, |(g, m)| order_by_chain(g, m))
}

#[test]
fn weyl_orders_from_parabolic_chains() {
    for (f, n) in [
        (Family::A, 5),
        (Family::B, 4),
        (Family::C, 5),
        (Family::D, 6),
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        assert_eq!(order_by_chain(f, n), classical_order(f, n), "{f}{n}");
    }
}

#[test]
fn quotient_sizes_and_palindromic_betti_numbers() {
    let cases = [
        (Family::A, 6, 3, 35),
        (Family::B, 5, 5, 32),
        (Family::C, 4, 4, 16),
        (Family::B, 4, 1, 8),
        (Family::D, 6, 1, 12),
        (Family::D, 6, 6, 32),
        (Family::E, 6, 1, 27),
        (Family::E, 7, 7, 56),
        (Family::E, 8, 8, 240),
        (Family::F, 4, 1, 24),
        (Family::F, 4, 4, 24),
        (Family::G, 2, 1, 6),
    ];
    for (f, n, node, size) in cases {
        let d = datum(f, n);
        let reps = coset_min_reps(&d, node).unwrap();
        assert_eq!(reps.len(), size, "{f}{n}/P{node}");
        let top = reps.iter().map(|u| u.length()).max().unwrap();
        let mut betti = vec![0usize; top + 1];
        for u in &reps {
            betti[u.length()] += 1;
        }
        let mut rev = betti.clone();
        rev.reverse();
        assert_eq!(betti, rev, "{f}{n}/P{node}");
        for u in &reps {
            for j in (0..n).filter(|&j| j != node - 1) {
                let v = d.mul(u, &d.elem_from_word(&[j as u8]));
                assert!(v.length() > u.length(), "{f}{n}/P{node}: {} s{}", u.word_string(), j + 1);
            }
        }
    }
}

fn all_small_operators() -> Vec<QHOperator> {
    let mut out = Vec::new();
    for (f, n) in [
        (Family::A, 1),
        (Family::A, 4),
        (Family::A, 6),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 3),
        (Family::C, 4),
        (Family::D, 4),
        (Family::D, 5),
        (Family::E, 6),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        for node in 1..=n {
            out.push(homogeneous_operator(f, n, node).unwrap());
        }
    }
    out.push(homogeneous_operator(Family::E, 7, 7).unwrap());
    out.push(homogeneous_operator(Family::E, 7, 1).unwrap());
    for dims in [vec![1, 1], vec![2, 2], vec![2, 3], vec![1, 2, 3]] {
        out.push(product_operator(&ProductSpec::anticanonical(dims.clone()).unwrap()).unwrap());
        out.push(product_operator(&ProductSpec::unit(dims).unwrap()).unwrap());
    }
    out
}

#[test]
fn every_operator_is_graded_self_adjoint_and_nilpotent() {
    for op in all_small_operators() {
        op.check_invariants().unwrap_or_else(|e| panic!("{}: {e}", op.name()));
    }
}

#[test]
fn mu_is_the_peak_betti_number() {
    for op in all_small_operators() {
        let peak = *op.betti().iter().max().unwrap();
        assert_eq!(op.mu(), peak, "{}", op.name());
    }
}

#[test]
fn named_mu_values() {
    for (f, n, node, mu) in [
        (Family::A, 8, 3, 8),
        (Family::B, 5, 3, 8),
        (Family::C, 5, 4, 8),
        (Family::D, 6, 3, 14),
        (Family::E, 6, 6, 3),
        (Family::F, 4, 1, 2),
    ] {
        assert_eq!(homogeneous_operator(f, n, node).unwrap().mu(), mu, "{f}{n}/P{node}");
    }
}

#[test]
fn quantum_pieri_oracle_agrees_for_small_grassmannians() {
    for n in 2..=7 {
        for k in 1..=3.min(n - 1) {
            let op = homogeneous_operator(Family::A, n - 1, k).unwrap();
            let basis = SchubertBasis::new(datum(Family::A, n - 1), k).unwrap();
            let parts: Vec<Vec<usize>> = basis.elements.iter().map(|u| typea_partition(u, k, n)).collect();
            let index: BTreeMap<Vec<usize>, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            for (src, lam) in parts.iter().enumerate() {
                let mut want: BTreeMap<(usize, usize), i64> = BTreeMap::new();
                for (mu, d, c) in pieri_oracle_typea(k, n, lam).unwrap() {
                    *want.entry((d, index[&mu])).or_default() += c;
                }
                let mut got = BTreeMap::new();
                for (d, m) in op.matrices.iter().enumerate() {
                    for &(row, v) in m.column(src) {
                        got.insert((d, row), v);
                    }
                }
                assert_eq!(got, want, "Gr({k},{n}) σ{lam:?}");
            }
        }
    }
}

#[test]
fn weight_one_factor_is_projective_space() {
    for n in 1..=5 {
        let p = product_operator(&ProductSpec::new(vec![n], vec![1]).unwrap()).unwrap();
        let g = homogeneous_operator(Family::A, n, 1).unwrap();
        assert_eq!(p.matrices, g.matrices, "P^{n}");
    }
}

#[test]
fn product_sizes_and_betti_symmetry() {
    for dims in [vec![1, 1], vec![2, 3], vec![1, 2, 3]] {
        let op = product_operator(&ProductSpec::anticanonical(dims.clone()).unwrap()).unwrap();
        assert_eq!(op.size(), dims.iter().map(|n| n + 1).product::<usize>());
        let b = op.betti();
        let mut r = b.clone();
        r.reverse();
        assert_eq!(b, r);
    }
}

proptest! {
    #[test]
    fn product_factors_commute(dims in prop::collection::vec(1usize..4, 2..4), w in prop::collection::vec(1usize..5, 3)) {
        let weights = w[..dims.len()].to_vec();
        let spec = ProductSpec::new(dims.clone(), weights).unwrap();
        for i in 0..dims.len() {
            for j in i + 1..dims.len() {
                let a = factor_operator(&spec, i);
                let b = factor_operator(&spec, j);
                prop_assert_eq!(poly_matmul(&a, &b), poly_matmul(&b, &a));
            }
        }
    }

    #[test]
    fn cached_actions_match_vector_reflections(family in 0usize..4, word in prop::collection::vec(0u8..4, 0..12)) {
        let (f, n) = [(Family::B, 4), (Family::D, 4), (Family::F, 4), (Family::A, 4)][family];
        let d = datum(f, n);
        let p = d.word_perm(&word);
        for k in 0..2 * d.num_positive() {
            let mut v = d.root(k);
            for &i in word.iter().rev() {
                let mut e = vec![0i64; n];
                e[i as usize] = 1;
                let a = d.root_index(&e).unwrap();
                v = d.reflect(a, &v);
            }
            prop_assert_eq!(p[k] as usize, d.root_index(&v).unwrap());
        }
        let (x, y) = word.split_at(word.len() / 2);
        let xy = d.mul(&d.elem_from_word(x), &d.elem_from_word(y));
        prop_assert_eq!(xy.perm, p);
    }
}
