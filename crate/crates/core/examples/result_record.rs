// The full pipeline behind `apery compute`: operator cache, constants,
// identification and the JSON record.

use apery::cli::{run_compute, ComputeOptions, OperatorCache, OutputFormat, VarietySpec};

pub fn run() -> apery::Result<()> {
    let dir = std::env::temp_dir().join(format!("apery-example-{}", std::process::id()));
    let cache = OperatorCache::new(&dir);
    let spec = VarietySpec::parse("Gr(2,7)")?;
    for _ in 0..2 {
        let comp = run_compute("Gr(2,7)", &spec, &ComputeOptions::default(), &cache)?;
        println!("cache: {:?}", comp.cache_status);
        if comp.cache_status == apery::cli::CacheStatus::Hit {
            print!("{}", comp.record.render(OutputFormat::Json)?);
        }
    }
    cache.clear()?;
    let _ = std::fs::remove_dir(&dir);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
