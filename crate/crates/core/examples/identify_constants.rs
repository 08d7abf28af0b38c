// Recognizing numbers as homogeneous polynomials in ζ values and Euler's
// constant with LLL.

use apery::zetaid::{euler_gamma, identify, lll_reduce, zeta_value, IdentifyOptions, ZetaPolynomial};
use num_bigint::BigInt;

pub fn run() -> apery::Result<()> {
    println!("zeta(3) = {}", zeta_value(3, 50).to_decimal(50));
    println!("C       = {}", euler_gamma(50).to_decimal(50));

    for text in ["7/2 ζ(3)", "-45/2 ζ(4)", "12ζ(2)ζ(3) + 84ζ(5)", "1/2 C^2 + 7/2 ζ(2)"] {
        let p = ZetaPolynomial::parse(text)?;
        let w = p.weight().unwrap_or(0);
        let x = p.eval(60);
        let o = IdentifyOptions { digits: 40, include_euler: text.contains('C'), ..IdentifyOptions::default() };
        let back = identify(&x, w, &o);
        println!("{text:<22} weight {w}  -> {}", back.poly().map(|q| q.display_form()).unwrap_or_else(|| "?".into()));
    }

    // A skewed lattice basis and its reduction.
    let b: Vec<Vec<BigInt>> = vec![vec![1.into(), 1_000_000.into()], vec![0.into(), 1.into()]];
    let r = lll_reduce(&b);
    println!("LLL: {:?} -> {:?}", b, r.basis);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
