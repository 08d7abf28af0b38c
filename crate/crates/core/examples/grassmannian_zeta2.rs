// Apéry constants of Gr(2,N): the codimension-2 constant is (N−4)ζ(2).

use apery::apery::{run_constants, Normalization, Settings};
use apery::gpqh::homogeneous_operator;
use apery::rootsys::Family;
use apery::zetaid::{identify, IdentifyOptions};

pub fn run() -> apery::Result<()> {
    for n in 5..=8 {
        let op = homogeneous_operator(Family::A, n - 1, 2)?;
        let s = Settings::new(&op, 200, 40, Normalization::LefschetzChern);
        let run = run_constants(&op, &s)?;
        println!("Gr(2,{n})");
        for e in &run.estimates {
            let o = IdentifyOptions { digits: 30, ..IdentifyOptions::default() };
            let shown = match identify(&e.value, e.weight as u32, &o).poly() {
                Some(p) => p.display_form(),
                None => "?".into(),
            };
            println!("  weight {:>2}  {}  = {}", e.weight, e.value.to_decimal(25), shown);
        }
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
