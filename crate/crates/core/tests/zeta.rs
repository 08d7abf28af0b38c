use apery::real::{bits_for_digits, ln2, pi, Real};
use apery::zetaid::{
    bernoulli, euler_gamma, even_zeta_closed_form, even_zeta_discrepancy, even_zeta_ratio, identify, zeta_value,
    IdentifyOptions, ZetaPolynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn reference() -> Vec<(String, String)> {
    include_str!("data/constants.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        })
        .collect()
}

/// Agreement in decimal digits, relative.
fn agreement(x: &Real, reference: &str) -> f64 {
    let r = Real::parse(reference, x.prec()).unwrap();
    let d = (x - &r).abs();
    if d.is_zero() {
        return f64::INFINITY;
    }
    (r.log2_abs() - d.log2_abs()) / std::f64::consts::LOG2_10
}

#[test]
fn constants_match_the_reference_table() {
    let digits = 70;
    let prec = bits_for_digits(digits);
    for (name, value) in reference() {
        let x = match name.as_str() {
            "pi" => pi(prec),
            "euler" => euler_gamma(digits),
            "ln2" => ln2(prec),
            z => zeta_value(z.trim_start_matches("zeta").parse().unwrap(), digits),
        };
        let a = agreement(&x, &value);
        assert!(a > 58.0, "{name}: {a:.1} digits");
    }
}

#[test]
fn even_zetas_agree_with_bernoulli_closed_form() {
    for k in 1..=15 {
        let bits = even_zeta_discrepancy(k, 60);
        assert!(bits < -60.0 * std::f64::consts::LOG2_10, "ζ({}) off by 2^{bits}", 2 * k);
    }
}

#[test]
fn small_bernoulli_numbers() {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    assert_eq!(bernoulli(0), q(1, 1));
    assert_eq!(bernoulli(2), q(1, 6));
    assert_eq!(bernoulli(4), q(-1, 30));
    assert_eq!(bernoulli(12), q(-691, 2730));
    assert_eq!(even_zeta_ratio(2), q(2, 5));
    assert_eq!(even_zeta_ratio(3), q(8, 35));
}

#[test]
fn zeta4_is_pi4_over_90() {
    let prec = bits_for_digits(50);
    let want = pi(prec).powi(4).div_i64(90);
    let d = (&even_zeta_closed_form(2, prec) - &want).abs();
    assert!(d.is_zero() || d.log2_abs() < -160.0);
}

#[test]
fn euler_constant_at_high_precision() {
    // Both internal methods are compared inside euler_gamma.
    let g = euler_gamma(120);
    assert!(g.to_decimal(30).starts_with("0.57721566490153286060651209008"));
}

#[test]
fn identification_is_stable_under_more_digits() {
    let cases = ["2ζ(3)", "27/4ζ(4)", "-24ζ(5)", "3ζ(2)ζ(3) + 21ζ(5)", "12ζ(3)^2 + 275/24ζ(6)"];
    for s in cases {
        let p = ZetaPolynomial::parse(s).unwrap();
        let w = p.weight().unwrap();
        let mut found = Vec::new();
        for digits in [40, 50] {
            let v = p.eval(digits + 20);
            let o = IdentifyOptions { digits, ..IdentifyOptions::default() };
            found.push(identify(&v, w, &o).poly().cloned());
        }
        assert_eq!(found[0].as_ref(), Some(&p), "{s}");
        assert_eq!(found[0], found[1], "{s}");
    }
}

#[test]
fn euler_monomials_are_found_when_enabled() {
    let p = ZetaPolynomial::parse("1/2 C^2 + 7/2 ζ(2)").unwrap();
    let v = p.eval(60);
    let on = IdentifyOptions { digits: 40, include_euler: true, ..IdentifyOptions::default() };
    assert_eq!(identify(&v, 2, &on).poly(), Some(&p));
    let off = IdentifyOptions { digits: 40, ..IdentifyOptions::default() };
    assert_ne!(identify(&v, 2, &off).poly(), Some(&p));
}
