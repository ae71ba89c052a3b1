//! Bose-Hubbard with 3 modes truncated at 4 levels (6 qubits): Pauli
//! groupings against edge coloring (n_c + 1 bases) and the quadrature split
//! (3 bases on any lattice).

use noclid::driver::{evaluate, states_for};
use noclid::encodings::encode_boson_operator;
use noclid::operators::{build_bose_hubbard, Boundary, Lattice};
use noclid::partition::{color_partition_bose_hubbard, qpn_partition, sorted_insertion};
use noclid::Commutation;

/// Mean eps^2 N of (QWC-SI, FC-SI, coloring, QPN).
pub fn run_example() -> noclid::Result<[f64; 4]> {
    let lat = Lattice::chain(3, Boundary::Open)?;
    let b = build_bose_hubbard(&lat, 1.0, 2.0, 4)?;
    let h = encode_boson_operator(&b)?.pauli;
    println!("b3d4 chain: {} qubits, {} Pauli terms", h.n(), h.len());
    let parts = [
        sorted_insertion(&h, Commutation::Qubitwise)?,
        sorted_insertion(&h, Commutation::Full)?,
        color_partition_bose_hubbard(&b, &lat)?,
        qpn_partition(&b, &lat)?,
    ];
    let ev = evaluate(&h, &parts, &states_for(h.n(), 20, 0, None)?)?;
    for s in &ev.summary {
        println!("  {:<8} L={:<2} mean {:.3} (std {:.3})", s.method, s.fragments, s.mean, s.std);
    }
    println!("  lower bound    {:.3}", ev.summary[0].mean_lower_bound);

    let all = Lattice::complete(4)?;
    let b_all = build_bose_hubbard(&all, 1.0, 2.0, 2)?;
    println!(
        "all-to-all 4 sites: coloring {} bases, QPN {} bases",
        color_partition_bose_hubbard(&b_all, &all)?.len(),
        qpn_partition(&b_all, &all)?.len()
    );
    let m: Vec<f64> = ev.summary.iter().map(|s| s.mean).collect();
    Ok([m[0], m[1], m[2], m[3]])
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
