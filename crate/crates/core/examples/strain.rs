// SGr(2,6) is a hyperplane section of Gr(2,6); their constants agree except
// for the top one of the Grassmannian, which vanishes.

use apery::apery::{run_constants, strain_compare, Normalization, Settings};
use apery::gpqh::homogeneous_operator;
use apery::real::{bits_for_digits, Real};
use apery::rootsys::Family;

pub fn run() -> apery::Result<()> {
    let sgr = homogeneous_operator(Family::C, 3, 2)?;
    let gr = homogeneous_operator(Family::A, 5, 2)?;
    let x = run_constants(&sgr, &Settings::new(&sgr, 200, 40, Normalization::LefschetzChern))?;
    let y = run_constants(&gr, &Settings::new(&gr, 200, 40, Normalization::LefschetzChern))?;
    let tol = Real::from_i64(1, bits_for_digits(40)).ldexp(-60);
    let r = strain_compare(&x.estimates, &y.estimates, &tol);
    for m in &r.matched {
        println!("weight {}  {}  {}  sign {}", m.weight, m.x_value.to_decimal(20), m.y_value.to_decimal(20), m.sign);
    }
    for (w, v) in &r.y_only {
        println!("only on Gr(2,6): weight {w}  {}", v.to_decimal(20));
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
