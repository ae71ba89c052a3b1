//! A 3-mode anharmonic vibrational Hamiltonian measured in two bases: all
//! position-only terms together, all momentum terms together.

use noclid::driver::{evaluate, states_for};
use noclid::encodings::encode_boson_operator;
use noclid::instances::three_mode_vibrational;
use noclid::operators::build_vibrational;
use noclid::partition::{qp_partition_vibrational, sorted_insertion};
use noclid::Commutation;

/// Mean eps^2 N of (QP, FC-SI, QWC-SI, lower bound).
pub fn run_example() -> noclid::Result<[f64; 4]> {
    let model = three_mode_vibrational();
    let v = build_vibrational(&model.omega, &model.coupling_map(), 4)?;
    let h = encode_boson_operator(&v)?.pauli;
    println!("3 modes, d=4: {} qubits, {} Pauli terms", h.n(), h.len());
    let parts = [
        qp_partition_vibrational(&v)?,
        sorted_insertion(&h, Commutation::Full)?,
        sorted_insertion(&h, Commutation::Qubitwise)?,
    ];
    let ev = evaluate(&h, &parts, &states_for(h.n(), 20, 0, None)?)?;
    for s in &ev.summary {
        println!("  {:<6} L={:<2} mean {:.4e}", s.method, s.fragments, s.mean);
    }
    let lb = ev.summary[0].mean_lower_bound;
    println!("  lower bound  {lb:.4e}; QP / bound = {:.3}", ev.summary[0].mean / lb);
    Ok([ev.summary[0].mean, ev.summary[1].mean, ev.summary[2].mean, lb])
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
