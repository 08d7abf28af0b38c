// How fast the reduced ratio fractions p_n/q_n approach the constant,
// compared with 1/q_n. Only a negative tail can prove irrationality.

use apery::apery::{convergence_diagnostic, run_constants, Normalization, Settings};
use apery::gpqh::homogeneous_operator;
use apery::qde::Mode;
use apery::rootsys::Family;

pub fn run() -> apery::Result<()> {
    for (name, family, rank, node, norm) in [
        ("Gr(2,5)", Family::A, 4, 2, Normalization::LefschetzChern),
        ("OGr(5,10)", Family::D, 5, 4, Normalization::IntegralPrimitive),
        ("Gr(2,9)", Family::A, 8, 2, Normalization::LefschetzChern),
    ] {
        let op = homogeneous_operator(family, rank, node)?;
        let mut s = Settings::new(&op, 120, 40, norm);
        s.mode = Mode::Rational;
        let run = run_constants(&op, &s)?;
        let (i, e) = run.estimates.iter().enumerate().find(|(_, e)| e.weight <= 3).expect("a low-weight constant");
        let d = convergence_diagnostic(&run.numerator_fundamentals[i], &run.denominator_fundamental, &e.value, 20)?;
        let last: Vec<String> = d.points.iter().rev().take(4).map(|(n, v)| format!("{n}:{v:.3}")).collect();
        println!("{name:<10} alpha {}  tail sign {:+}  last {}", e.value.to_decimal(15), d.tail_sign, last.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
