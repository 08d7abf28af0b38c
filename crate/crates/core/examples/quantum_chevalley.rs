// The quantum multiplication operator of Gr(2,4) from the quantum
// Chevalley formula, checked against the quantum Pieri rule.

use apery::gpqh::{homogeneous_operator, pieri_oracle_typea, typea_partition, SchubertBasis};
use apery::rootsys::{build_root_datum, CartanType, Family};

pub fn run() -> apery::Result<()> {
    let (k, n) = (2, 4);
    let op = homogeneous_operator(Family::A, n - 1, k)?;
    let basis = SchubertBasis::new(build_root_datum(CartanType::new(Family::A, n - 1)?)?, k)?;
    let parts: Vec<Vec<usize>> = basis.elements.iter().map(|u| typea_partition(u, k, n)).collect();

    println!("Gr({k},{n}): dim {}, Fano index {:?}, {} classes", op.dim_x, op.fano_index, op.size());
    for (d, m) in op.matrices.iter().enumerate() {
        println!("q^{d}:");
        for (row, col, v) in m.entries() {
            println!("  H * {:?} contains {v} {:?}", parts[col], parts[row]);
        }
    }

    for (col, p) in parts.iter().enumerate() {
        let mut oracle = pieri_oracle_typea(k, n, p)?;
        oracle.sort();
        let mut ours: Vec<(Vec<usize>, usize, i64)> = Vec::new();
        for (d, m) in op.matrices.iter().enumerate() {
            for &(row, v) in m.column(col) {
                ours.push((parts[row].clone(), d, v));
            }
        }
        ours.sort();
        assert_eq!(ours, oracle, "Pieri mismatch at {p:?}");
    }
    println!("quantum Pieri agrees on all {} classes", parts.len());
    op.check_invariants()
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
