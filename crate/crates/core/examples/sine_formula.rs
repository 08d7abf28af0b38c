// Wronskians of the deformed hypergeometric equation of P^{N−1}: their
// coefficient ratios tend to sin(2πu_i)/sin(2πu_j).

use apery::cli::parse_rationals;
use apery::hgdeform::{sine_check, DeformParams};

pub fn run() -> apery::Result<()> {
    for (n, u) in [(5, "1/7,2/7"), (6, "1/10,1/6,-1/5"), (7, "1/9,2/11")] {
        let p = DeformParams::new(n, parse_rationals(u)?, 40)?;
        println!("N = {n}, u = ({u})");
        for r in sine_check(&p, 300)? {
            if r.i < r.j {
                println!(
                    "  S{}/S{}  {}  predicted {}  deviation {:.1e}",
                    r.i,
                    r.j,
                    r.empirical.to_decimal(20),
                    r.predicted.to_decimal(20),
                    r.deviation
                );
            }
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
