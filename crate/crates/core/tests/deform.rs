use apery::hgdeform::{deform_residual, formal_solution_coeffs, formal_solution_exact, sine_check, wronskian, DeformParams};
use apery::real::{bits_for_digits, Real};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Lanczos approximation, `g = 7`.
fn ln_gamma(x: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return ln_gamma(x + 1.0) - x.ln();
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let mut a = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln c_m` from Γ: `c_m = Π_j Γ(1+a∓u_j)/Γ(1+a+m∓u_j) · (Γ(1+a)/Γ(1+a+m))^{N−2n}`.
fn ln_coefficient_by_gamma(p: &DeformParams, a: f64, m: usize) -> f64 {
    let mf = m as f64;
    let mut s = (p.n - 2 * p.u.len()) as f64 * (ln_gamma(1.0 + a) - ln_gamma(1.0 + a + mf));
    for u in &p.u {
        let u = u.to_f64().unwrap();
        for v in [u, -u] {
            s += ln_gamma(1.0 + a - v) - ln_gamma(1.0 + a + mf - v);
        }
    }
    s
}

fn params() -> impl Strategy<Value = DeformParams> {
    (5usize..=7, 2i64..=6, 2i64..=6, 13i64..=40).prop_filter_map("admissible", |(n, a, b, den)| {
        DeformParams::new(n, vec![q(a, den), q(-b, den + 1)], 30).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn recurrence_matches_gamma_ratios(p in params(), m in 1usize..800, sign in prop::bool::ANY) {
        let a = p.exponent(1, if sign { 1 } else { -1 });
        let exact = formal_solution_exact(&p, &a, m).unwrap();
        let c = Real::from_rational(&exact[m], bits_for_digits(30));
        prop_assert!(c.signum() > 0);
        let ln_c = c.log2_abs() * std::f64::consts::LN_2;
        let want = ln_coefficient_by_gamma(&p, a.to_f64().unwrap(), m);
        prop_assert!((ln_c - want).abs() < 1e-9 * want.abs().max(1.0), "m = {m}: {ln_c} vs {want}");
    }

    #[test]
    fn wronskian_is_antisymmetric(p in params()) {
        let prec = bits_for_digits(60);
        let (a, b) = (p.exponent(1, 1), p.exponent(1, -1));
        let c = formal_solution_coeffs(&p, &a, 40, prec).unwrap();
        let d = formal_solution_coeffs(&p, &b, 40, prec).unwrap();
        let s = wronskian(&a, &c, &b, &d).unwrap();
        let t = wronskian(&b, &d, &a, &c).unwrap();
        for (x, y) in s.iter().zip(&t) {
            let sum = x + y;
            prop_assert!(sum.is_zero() || sum.log2_abs() - x.log2_abs() < -100.0);
        }
    }
}

#[test]
fn residuals_at_fifty_digits() {
    let p = DeformParams::new(6, vec![q(1, 10), q(1, 6), q(-1, 5)], 50).unwrap();
    for i in 1..=3 {
        for sign in [1, -1] {
            let a = p.exponent(i, sign);
            let c = formal_solution_coeffs(&p, &a, 500, bits_for_digits(50)).unwrap();
            assert!(deform_residual(&p, &c, &a) < 1e-30);
        }
    }
}

#[test]
fn wronskian_ratios_follow_sines() {
    let p = DeformParams::new(7, vec![q(1, 9), q(2, 11)], 40).unwrap();
    let rows = sine_check(&p, 300).unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert!(r.deviation < 1e-8, "S{}/S{}: {:e}", r.i, r.j, r.deviation);
    }
}

#[test]
fn exponent_conditions() {
    assert!(DeformParams::new(5, vec![q(1, 3), q(-2, 3)], 30).is_err());
    assert!(DeformParams::new(4, vec![q(1, 5), q(1, 6), q(1, 7)], 30).is_err());
    assert!(DeformParams::new(4, vec![q(0, 1)], 30).is_err());
    let p = DeformParams::new(4, vec![q(1, 5)], 30).unwrap();
    assert!(formal_solution_coeffs(&p, &q(1, 7), 5, 100).is_err());
}
