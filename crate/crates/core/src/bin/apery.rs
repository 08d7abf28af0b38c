use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use apery::apery::Normalization;
use apery::cli::{
    cache_roundtrip, error_json, parse_rationals, run_compute, run_reproduce, ComputeOptions, ModeChoice, OperatorCache,
    OutputFormat, ReproduceOptions, VarietySpec, TABLES,
};
use apery::hgdeform::{sine_check, DeformParams};
use apery::Result;

#[derive(Parser)]
#[command(name = "apery", version, about = "Apéry constants of Fano varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    LefschetzChern,
    IntegralPrimitive,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 200)]
    terms: usize,
    /// Decimal digits.
    #[arg(long, default_value_t = 40)]
    precision: u32,
    /// Default: rational for bases of at most 60 classes, float otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "lefschetz-chern")]
    normalization: NormArg,
    #[arg(long, value_enum, default_value = "json")]
    out: OutArg,
    #[arg(long, env = "APERY_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

impl Common {
    fn mode(&self) -> ModeChoice {
        match self.mode {
            None => ModeChoice::Auto,
            Some(ModeArg::Rational) => ModeChoice::Rational,
            Some(ModeArg::Float) => ModeChoice::Float,
        }
    }

    fn normalization(&self) -> Normalization {
        match self.normalization {
            NormArg::LefschetzChern => Normalization::LefschetzChern,
            NormArg::IntegralPrimitive => Normalization::IntegralPrimitive,
        }
    }

    fn out(&self) -> OutputFormat {
        match self.out {
            OutArg::Json => OutputFormat::Json,
            OutArg::Csv => OutputFormat::Csv,
            OutArg::Md => OutputFormat::Md,
        }
    }

    fn cache(&self) -> OperatorCache {
        OperatorCache::from_env(self.cache_dir.clone())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Constants of one variety, e.g. `Gr(2,5)`, `OGr(5,10)`, `E7/P7`, `product 2,3`.
    Compute {
        variety: Vec<String>,
        /// Polarization weights for a product.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<usize>>,
        /// Also write the record to this file.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare against one of the reference tables.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TABLES))]
        table: String,
        /// Skip varieties with a larger Schubert basis.
        #[arg(long, default_value_t = 512)]
        max_basis: usize,
        /// Also run rows excluded for runtime.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2)]
        workers: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sine formula for the deformed hypergeometric equation of P^{N-1}.
    Sine {
        #[arg(long = "n")]
        n: usize,
        /// Comma-separated rationals, e.g. `1/7,2/7`.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 300)]
        terms: usize,
        #[arg(long, default_value_t = 40)]
        precision: u32,
        #[arg(long, value_enum, default_value = "json")]
        out: OutArg,
    },
    /// Manage the operator cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        #[arg(long, env = "APERY_CACHE_DIR", global = true)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Build (or validate) cached operators.
    Build { varieties: Vec<String> },
    /// Write, re-read and compare an operator.
    Check { variety: String },
    List,
    Clear,
}

fn compute(variety: &[String], weights: Option<Vec<usize>>, output: Option<PathBuf>, c: &Common) -> Result<String> {
    let input = variety.join(" ");
    let mut spec = VarietySpec::parse(&input)?;
    if let Some(w) = weights {
        spec = spec.with_weights(&w)?;
    }
    let o = ComputeOptions { terms: c.terms, precision: c.precision, mode: c.mode(), normalization: c.normalization() };
    let comp = run_compute(&input, &spec, &o, &c.cache())?;
    let text = comp.record.render(c.out())?;
    if let Some(path) = output {
        apery::cli::write_atomic(&path, &text)?;
    }
    Ok(text)
}

fn reproduce(table: &str, max_basis: usize, all: bool, workers: usize, c: &Common) -> Result<(String, bool)> {
    let o = ReproduceOptions {
        terms: c.terms,
        precision: c.precision,
        mode: c.mode(),
        normalization: c.normalization(),
        max_basis,
        include_runtime_excluded: all,
        workers,
    };
    let report = run_reproduce(table, &o, &c.cache())?;
    let text = match c.out() {
        OutputFormat::Md => report.to_markdown(),
        _ => serde_json::to_string_pretty(&report)? + "\n",
    };
    Ok((text, report.passed()))
}

fn sine(n: usize, u: &str, terms: usize, precision: u32, out: OutArg) -> Result<String> {
    let p = DeformParams::new(n, parse_rationals(u)?, precision)?;
    let rows = sine_check(&p, terms)?;
    Ok(match out {
        OutArg::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "i": r.i, "j": r.j,
                        "empirical": r.empirical.to_decimal(precision),
                        "predicted": r.predicted.to_decimal(precision),
                        "deviation": format!("{:.3e}", r.deviation),
                        "error_estimate": format!("{:.3e}", r.error_estimate),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = String::from("i,j,empirical,predicted,deviation\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{:.3e}\n",
                    r.i,
                    r.j,
                    r.empirical.to_decimal(30),
                    r.predicted.to_decimal(30),
                    r.deviation
                ));
            }
            s
        }
    })
}

fn cache_cmd(action: CacheAction, dir: Option<PathBuf>) -> Result<String> {
    let cache = OperatorCache::from_env(dir.clone());
    if cache.dir().is_none() {
        return Err(apery::Error::Config("no cache directory: pass --cache-dir or set APERY_CACHE_DIR".into()));
    }
    Ok(match action {
        CacheAction::Build { varieties } => {
            let mut s = String::new();
            for v in varieties {
                let spec = VarietySpec::parse(&v)?;
                let (op, status) = cache.load_or_build(&spec)?;
                s.push_str(&format!("{}\t{:?}\t{}\n", spec, status, op.hash()));
            }
            s
        }
        CacheAction::Check { variety } => {
            let op = VarietySpec::parse(&variety)?.build()?;
            let ok = cache_roundtrip(&op, cache.dir().unwrap())?;
            format!("{variety}\troundtrip {}\n", if ok { "ok" } else { "FAILED" })
        }
        CacheAction::List => cache.entries()?.iter().map(|p| format!("{}\n", p.display())).collect(),
        CacheAction::Clear => format!("removed {}\n", cache.clear()?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { variety, weights, output, common } => compute(&variety, weights, output, &common).map(|t| (t, true)),
        Command::Reproduce { table, max_basis, all, workers, common } => reproduce(&table, max_basis, all, workers, &common),
        Command::Sine { n, u, terms, precision, out } => sine(n, &u, terms, precision, out).map(|t| (t, true)),
        Command::Cache { action, cache_dir } => cache_cmd(action, cache_dir).map(|t| (t, true)),
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", error_json(&e));
            ExitCode::from(2)
        }
    }
}
