//! Spinless Fermi-Hubbard on an open chain: two 2-qubit bases cover the whole
//! Jordan-Wigner Hamiltonian, against three or more Pauli bases.

use noclid::driver::{evaluate, states_for};
use noclid::encodings::jordan_wigner;
use noclid::operators::{build_fermi_hubbard, Boundary, Lattice};
use noclid::partition::{color_partition_fermi_hubbard_1d, sorted_insertion};
use noclid::validate::validate_partition;
use noclid::Commutation;

/// Mean eps^2 N of (coloring, FC-SI, QWC-SI, lower bound).
pub fn run_example() -> noclid::Result<[f64; 4]> {
    let sites = 4;
    let f = build_fermi_hubbard(&Lattice::chain(sites, Boundary::Open)?, 1.0, 2.0)?;
    let h = jordan_wigner(&f)?;
    println!("{sites}-site chain, t=1, U=2: {} Pauli terms", h.len());
    let coloring = color_partition_fermi_hubbard_1d(&f, sites)?;
    let report = validate_partition(&coloring, &h, 2, 10)?;
    println!("coloring valid: {}", report.passed);
    let fc = sorted_insertion(&h, Commutation::Full)?;
    let qwc = sorted_insertion(&h, Commutation::Qubitwise)?;
    let ev = evaluate(&h, &[coloring, fc, qwc], &states_for(h.n(), 20, 0, None)?)?;
    for s in &ev.summary {
        println!("  {:<14} L={:<2} mean {:.4} (std {:.4})", s.method, s.fragments, s.mean, s.std);
    }
    println!("  lower bound          {:.4}", ev.summary[0].mean_lower_bound);
    Ok([ev.summary[0].mean, ev.summary[1].mean, ev.summary[2].mean, ev.summary[0].mean_lower_bound])
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
