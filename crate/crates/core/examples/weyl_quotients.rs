// Minimal coset representatives W^P for maximal parabolics, with the
// Betti numbers they give and the number of Lefschetz blocks.

use apery::gpqh::homogeneous_operator;
use apery::rootsys::{build_root_datum, coset_min_reps, CartanType, Family};

pub fn run() -> apery::Result<()> {
    let cases = [
        (Family::A, 4, 2),
        (Family::B, 4, 4),
        (Family::C, 3, 3),
        (Family::D, 5, 5),
        (Family::E, 6, 6),
        (Family::F, 4, 1),
        (Family::G, 2, 1),
    ];
    println!("{:<8} {:>6} {:>4}  betti", "G/P", "|W^P|", "mu");
    for (family, rank, node) in cases {
        let d = build_root_datum(CartanType::new(family, rank)?)?;
        let reps = coset_min_reps(&d, node)?;
        let op = homogeneous_operator(family, rank, node)?;
        assert_eq!(reps.len(), op.size());
        let betti: Vec<String> = op.betti().iter().map(|b| b.to_string()).collect();
        println!("{:<8} {:>6} {:>4}  {}", format!("{family}{rank}/P{node}"), reps.len(), op.mu(), betti.join(" "));
    }

    // The longest representative of Gr(2,5) and a few reduced words.
    let d = build_root_datum(CartanType::new(Family::A, 4)?)?;
    for w in coset_min_reps(&d, 2)?.iter().take(5) {
        println!("length {}  word {}", w.length(), w.word_string());
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
