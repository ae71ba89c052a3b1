//! The 4-qubit toy Hamiltonian: five Pauli bases under full commutation
//! versus two bases once 2-qubit blocks are allowed.

use noclid::driver::{evaluate, states_for};
use noclid::instances::{illustrative_decomposition, illustrative_hamiltonian};
use noclid::partition::sorted_insertion;
use noclid::validate::validate_partition;
use noclid::Commutation;

pub struct Outcome {
    pub fc_groups: usize,
    pub qwc_groups: usize,
    pub local_bases: usize,
    pub passed: bool,
}

pub fn run_example() -> noclid::Result<Outcome> {
    let h = illustrative_hamiltonian();
    let fc = sorted_insertion(&h, Commutation::Full)?;
    let qwc = sorted_insertion(&h, Commutation::Qubitwise)?;
    println!("{} terms; FC-SI {} groups, QWC-SI {} groups", h.len(), fc.len(), qwc.len());
    for f in &fc.fragments {
        let labels: Vec<String> = f.to_pauli(h.n())?.iter().map(|(p, _)| p.sparse_label()).collect();
        println!("  {{{}}}", labels.join(", "));
    }

    let local = illustrative_decomposition()?;
    let report = validate_partition(&local, &h, 2, 10)?;
    println!(
        "2-local split: {} bases, reconstruction {:.1e}, widest block {}, commutator {:.1e}",
        local.len(),
        report.reconstruction_error,
        report.locality.max_width,
        report.commutation.worst
    );

    let states = states_for(h.n(), 20, 0, None)?;
    let ev = evaluate(&h, &[qwc, fc.clone(), local], &states)?;
    for s in &ev.summary {
        println!("  {:<8} L={:<2} mean eps^2 N = {:.4}", s.method, s.fragments, s.mean);
    }
    println!("  lower bound       = {:.4}", ev.summary[0].mean_lower_bound);
    Ok(Outcome {
        fc_groups: fc.len(),
        qwc_groups: ev.summary[0].fragments,
        local_bases: ev.summary[2].fragments,
        passed: report.passed,
    })
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
