// P²×P³ polarized by O(1,1). The two factors have different Fano indices,
// and Euler's constant shows up in the constants.

use apery::apery::{run_constants, Normalization, Settings};
use apery::prodspaces::{product_operator, ProductSpec};
use apery::zetaid::{identify, IdentifyOptions};

pub fn run() -> apery::Result<()> {
    let spec = ProductSpec::new(vec![2, 3], vec![1, 1])?;
    let op = product_operator(&spec)?;
    println!("{}: dim {}, mu {}, {} classes", op.name(), op.dim_x, op.mu(), op.size());
    let s = Settings::new(&op, 200, 40, Normalization::IntegralPrimitive);
    let run = run_constants(&op, &s)?;
    for e in &run.estimates {
        let o = IdentifyOptions { digits: 30, include_euler: true, ..IdentifyOptions::default() };
        let id = identify(&e.value, e.weight as u32, &o);
        let shown = id.poly().map(|p| p.display_form()).unwrap_or_else(|| "?".into());
        println!("  weight {}  {}  = {}", e.weight, e.value.to_decimal(30), shown);
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
