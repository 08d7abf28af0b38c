use apery::apery::{choose_seeds, constant_for_seed, run_constants, Normalization, Settings};
use apery::gpqh::{homogeneous_operator, QHOperator};
use apery::prodspaces::{product_operator, ProductSpec};
use apery::qde::{
    fundamental_term, kernel_basis, recursion_residual, reindexed, solve_series, to_rational_vec, truncation_detect,
    Mode, Scalar,
};
use apery::real::{bits_for_digits, Real};
use apery::rootsys::Family;
use apery::zetaid::{identify, IdentifyOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn exact(s: &Scalar) -> BigRational {
    match s {
        Scalar::Exact(n, d) => BigRational::new(n.clone(), d.clone()),
        Scalar::Float(_) => panic!("expected an exact term"),
    }
}

fn point_seed(op: &QHOperator) -> Vec<BigRational> {
    to_rational_vec(&kernel_basis(op)[0].1)
}

fn close(a: &Real, b: &Real, bits: f64) -> bool {
    let d = (a - b).abs();
    d.is_zero() || d.log2_abs() < -bits
}

#[test]
fn projective_space_fundamental_terms_match_closed_form() {
    // n/(n!)^{k+1}, shifted by D^{k-1}: the point-class solution of P^k
    // has fundamental term n^k/(n!)^{k+1}.
    for k in 1..=3 {
        let op = homogeneous_operator(Family::A, k, 1).unwrap();
        let s = solve_series(&op, &point_seed(&op), 20, Mode::Rational).unwrap();
        let f = fundamental_term(&s);
        let mut fact = BigInt::one();
        for n in 0..=20u32 {
            if n > 0 {
                fact *= n;
            }
            let pattern = BigRational::new(BigInt::from(n), num_traits::pow(fact.clone(), k + 1));
            let want = pattern * num_traits::pow(BigInt::from(n), k - 1);
            assert_eq!(exact(&f[n as usize]), want, "P^{k}, n = {n}");
        }
    }
}

#[test]
fn projective_line_first_vectors() {
    let op = homogeneous_operator(Family::A, 1, 1).unwrap();
    let s = solve_series(&op, &point_seed(&op), 3, Mode::Rational).unwrap();
    assert_eq!(s.exact_vector(1).unwrap(), vec![q(1, 1), q(1, 1)]);
    assert_eq!(s.exact_vector(2).unwrap(), vec![q(1, 2), q(1, 4)]);
    assert_eq!(s.exact_vector(3).unwrap(), vec![q(1, 12), q(1, 36)]);
}

#[test]
fn exact_residuals_vanish() {
    for op in [
        homogeneous_operator(Family::A, 4, 2).unwrap(),
        homogeneous_operator(Family::C, 3, 2).unwrap(),
        homogeneous_operator(Family::G, 2, 1).unwrap(),
        product_operator(&ProductSpec::unit(vec![2, 3]).unwrap()).unwrap(),
    ] {
        for (_, seed) in kernel_basis(&op) {
            let s = solve_series(&op, &to_rational_vec(&seed), 60, Mode::Rational).unwrap();
            assert_eq!(recursion_residual(&op, &s), 0.0, "{}", op.name());
        }
    }
}

#[test]
fn float_mode_agrees_with_rational_mode() {
    let precision = 40;
    for op in [
        homogeneous_operator(Family::A, 4, 2).unwrap(),
        homogeneous_operator(Family::A, 5, 2).unwrap(),
        homogeneous_operator(Family::B, 3, 3).unwrap(),
        homogeneous_operator(Family::D, 5, 4).unwrap(),
        product_operator(&ProductSpec::anticanonical(vec![2, 2]).unwrap()).unwrap(),
    ] {
        assert!(op.size() <= 30);
        let tol = (precision as f64 - 5.0) * std::f64::consts::LOG2_10;
        for (_, seed) in kernel_basis(&op) {
            let seed = to_rational_vec(&seed);
            let a = solve_series(&op, &seed, 150, Mode::Rational).unwrap();
            let b = solve_series(&op, &seed, 150, Mode::Float { digits: precision }).unwrap();
            assert!(recursion_residual(&op, &b) < 1e-30, "{}", op.name());
            let prec = bits_for_digits(precision + 20);
            for m in 0..=150 {
                let x = a.real_vector(m, prec);
                let y = b.real_vector(m, prec);
                let scale = Real::max_abs(x.iter(), prec);
                if scale.is_zero() {
                    assert!(y.iter().all(|v| v.is_zero() || v.log2_abs() < -tol));
                    continue;
                }
                for (u, v) in x.iter().zip(&y) {
                    let d = (u - v).abs();
                    assert!(
                        d.is_zero() || d.log2_abs() - scale.log2_abs() < -tol,
                        "{} term {m}: relative error 2^{}",
                        op.name(),
                        d.log2_abs() - scale.log2_abs()
                    );
                }
            }
        }
    }
}

#[test]
fn truncated_solutions_give_zero() {
    let op = homogeneous_operator(Family::A, 3, 2).unwrap();
    let run = run_constants(&op, &Settings::new(&op, 60, 30, Normalization::LefschetzChern)).unwrap();
    assert_eq!(run.estimates.len(), 1);
    assert!(run.estimates[0].truncated);
    assert!(run.estimates[0].value.is_zero());
    let zero = vec![BigRational::zero(); op.size()];
    let s = solve_series(&op, &zero, 20, Mode::Rational).unwrap();
    assert_eq!(truncation_detect(&s), (true, 0));
}

#[test]
fn seed_outside_the_kernel_is_rejected() {
    let op = homogeneous_operator(Family::A, 4, 2).unwrap();
    let mut v = vec![BigRational::zero(); op.size()];
    v[0] = BigRational::one();
    assert!(solve_series(&op, &v, 10, Mode::Rational).is_err());
}

fn settings(op: &QHOperator, terms: usize) -> Settings {
    let mut s = Settings::new(op, terms, 40, Normalization::IntegralPrimitive);
    s.mode = Mode::Rational;
    s
}

#[test]
fn estimates_are_linear_in_the_seed() {
    let op = homogeneous_operator(Family::A, 5, 2).unwrap();
    let seeds = choose_seeds(&op, Normalization::LefschetzChern).unwrap();
    let den = to_rational_vec(&seeds.denominator);
    let g1 = to_rational_vec(&seeds.numerators[0].1);
    let g2 = to_rational_vec(&seeds.numerators[1].1);
    let s = settings(&op, 200);
    let c1 = constant_for_seed(&op, &g1, &den, &s).unwrap();
    let c2 = constant_for_seed(&op, &g2, &den, &s).unwrap();
    let (a, b) = (q(3, 2), q(-5, 1));
    let mix: Vec<BigRational> = g1.iter().zip(&g2).map(|(x, y)| &a * x + &b * y).collect();
    let c = constant_for_seed(&op, &mix, &den, &s).unwrap();
    let prec = c.value.prec();
    let want = &(&Real::from_rational(&a, prec) * &c1.value) + &(&Real::from_rational(&b, prec) * &c2.value);
    let bound = &(&(&c1.error + &c2.error).mul_i64(5) + &c.error) + &Real::from_i64(1, prec).ldexp(-100);
    assert!((&c.value - &want).abs() <= bound, "{} vs {}", c.value.to_decimal(30), want.to_decimal(30));
}

#[test]
fn scaling_seeds_scales_estimates() {
    let op = homogeneous_operator(Family::A, 4, 2).unwrap();
    let seeds = choose_seeds(&op, Normalization::LefschetzChern).unwrap();
    let den = to_rational_vec(&seeds.denominator);
    let num = to_rational_vec(&seeds.numerators[0].1);
    let s = settings(&op, 200);
    let base = constant_for_seed(&op, &num, &den, &s).unwrap().value;
    let prec = base.prec();
    let t = q(-7, 3);
    let scaled_num: Vec<BigRational> = num.iter().map(|x| x * &t).collect();
    let scaled_den: Vec<BigRational> = den.iter().map(|x| x * &t).collect();
    let a = constant_for_seed(&op, &scaled_num, &den, &s).unwrap().value;
    let b = constant_for_seed(&op, &num, &scaled_den, &s).unwrap().value;
    let tr = Real::from_rational(&t, prec);
    assert!(close(&a, &(&base * &tr), 120.0));
    assert!(close(&b, &(&base / &tr), 120.0));
}

#[test]
fn anticanonical_reindexing_keeps_ratio_limits() {
    for (op, r) in [
        (homogeneous_operator(Family::A, 1, 1).unwrap(), 2),
        (homogeneous_operator(Family::A, 4, 2).unwrap(), 5),
        (homogeneous_operator(Family::A, 3, 2).unwrap(), 4),
    ] {
        let seeds = choose_seeds(&op, Normalization::IntegralPrimitive).unwrap();
        let den = to_rational_vec(&seeds.denominator);
        let mut pairs = vec![den.clone()];
        pairs.extend(seeds.numerators.iter().map(|(_, v)| to_rational_vec(v)));
        let big = reindexed(&op, r);
        for num in pairs {
            let a = solve_series(&op, &num, 60, Mode::Rational).unwrap();
            let b = solve_series(&big, &num, 60 * r, Mode::Rational).unwrap();
            for m in 0..=60 * r {
                let v = b.exact_vector(m).unwrap();
                if m % r == 0 {
                    assert_eq!(v, a.exact_vector(m / r).unwrap(), "{} r = {r}", op.name());
                } else {
                    assert!(v.iter().all(|x| x.is_zero()));
                }
            }
            let x = constant_for_seed(&op, &num, &den, &settings(&op, 120)).unwrap();
            let y = constant_for_seed(&big, &num, &den, &settings(&big, 120 * r)).unwrap();
            assert!(close(&x.value, &y.value, 80.0), "{} r = {r}", op.name());
        }
    }
}

#[test]
fn more_terms_stay_within_the_error_estimate() {
    for (f, n, node) in [(Family::A, 4, 2), (Family::A, 6, 2), (Family::D, 5, 4)] {
        let op = homogeneous_operator(f, n, node).unwrap();
        let a = run_constants(&op, &settings(&op, 200)).unwrap();
        let b = run_constants(&op, &settings(&op, 400)).unwrap();
        for (x, y) in a.estimates.iter().zip(&b.estimates) {
            let d = (&x.value - &y.value).abs();
            assert!(d <= x.error_estimate, "{}: {} vs error {}", op.name(), d.to_decimal(5), x.error_estimate.to_decimal(5));
        }
    }
}

#[test]
fn identifications_survive_more_terms_and_digits() {
    let op = homogeneous_operator(Family::A, 6, 2).unwrap();
    let mut found = Vec::new();
    for (terms, digits) in [(200, 30), (300, 30), (200, 40)] {
        let run = run_constants(&op, &Settings::new(&op, terms, 40, Normalization::LefschetzChern)).unwrap();
        let ids: Vec<String> = run
            .estimates
            .iter()
            .map(|e| {
                let o = IdentifyOptions { digits, ..IdentifyOptions::default() };
                identify(&e.value, e.weight as u32, &o).poly().map(|p| p.display_form()).unwrap_or_default()
            })
            .collect();
        found.push(ids);
    }
    assert_eq!(found[0], vec!["3ζ(2)", "27/4 ζ(4)"]);
    assert_eq!(found[0], found[1]);
    assert_eq!(found[0], found[2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn series_are_linear(a in -20i64..20, b in -20i64..20, n in 3usize..6) {
        let op = homogeneous_operator(Family::A, n, 2).unwrap();
        let ker = kernel_basis(&op);
        let g1 = to_rational_vec(&ker[0].1);
        let g2 = to_rational_vec(&ker[1].1);
        let mix: Vec<BigRational> = g1.iter().zip(&g2).map(|(x, y)| x * q(a, 1) + y * q(b, 1)).collect();
        let s1 = solve_series(&op, &g1, 15, Mode::Rational).unwrap();
        let s2 = solve_series(&op, &g2, 15, Mode::Rational).unwrap();
        let s = solve_series(&op, &mix, 15, Mode::Rational).unwrap();
        for m in 0..=15 {
            let want: Vec<BigRational> = s1
                .exact_vector(m)
                .unwrap()
                .iter()
                .zip(s2.exact_vector(m).unwrap())
                .map(|(x, y)| x * q(a, 1) + y * q(b, 1))
                .collect();
            prop_assert_eq!(s.exact_vector(m).unwrap(), want);
        }
    }
}
