// The orthogonal Grassmannian OGr(5,10): its one nontrivial constant is
// 2ζ(3), and the isomorphic OGr(4,9) gives the same.

use apery::cli::{run_compute, ComputeOptions, OperatorCache, VarietySpec};

pub fn run() -> apery::Result<()> {
    let opts = ComputeOptions { normalization: apery::apery::Normalization::IntegralPrimitive, ..ComputeOptions::default() };
    for name in ["OGr(5,10)", "OGr(4,9)", "OGr(6,12)"] {
        let spec = VarietySpec::parse(name)?;
        let comp = run_compute(name, &spec, &opts, &OperatorCache::disabled())?;
        println!("{name} = {spec}: dim {}, mu {}", comp.operator.dim_x, comp.operator.mu());
        for c in &comp.constants {
            let id = c.identification.as_ref().map(|p| p.display_form()).unwrap_or_else(|| "?".into());
            println!("  weight {}  {}  {}", c.weight(), c.value().to_decimal(30), id);
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
