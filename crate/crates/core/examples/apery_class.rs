// The Apéry class of Gr(2,6): the cohomology class whose pairings with the
// kernel seeds give the constants.

use apery::apery::{apery_class, run_constants, Normalization, Settings};
use apery::gpqh::homogeneous_operator;
use apery::rootsys::Family;

pub fn run() -> apery::Result<()> {
    let op = homogeneous_operator(Family::A, 5, 2)?;
    let s = Settings::new(&op, 200, 40, Normalization::LefschetzChern);
    let run = run_constants(&op, &s)?;
    let report = apery_class(&op, &run.seeds.denominator, &run.estimates)?;
    assert!(report.pairing_is_exact(&op));
    for (i, &b) in report.section.iter().enumerate() {
        println!("{:<10} {}", op.labels[b], report.values[i].to_decimal(25));
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
