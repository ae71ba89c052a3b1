//! Minimal-basis H2: reorder spin orbitals, map to qubits, then sweep the
//! locality bound k for greedy and blocked partitioning against FC-SI.

use noclid::driver::{states_for, sweep_k, SweepMethod};
use noclid::encodings::jordan_wigner;
use noclid::instances::h2_integrals;
use noclid::partition::{ordering_cost, reorder_indices, DEFAULT_HALT_AFTER};

/// `k*` for (greedy, blocking).
pub fn run_example() -> noclid::Result<(Option<usize>, Option<usize>)> {
    let f = h2_integrals().to_fermion_operator()?;
    let identity: Vec<usize> = (0..f.modes).collect();
    let (perm, cost) = reorder_indices(&f, 0, DEFAULT_HALT_AFTER)?;
    println!("ordering cost {} -> {cost} with {perm:?}", ordering_cost(&f, &identity));
    let h = jordan_wigner(&f.permute_modes(&perm)?)?;
    println!("{} qubits, {} Pauli terms, constant {:.6}", h.n(), h.len(), h.constant());
    let states = states_for(h.n(), 20, 0, None)?;
    let mut stars = Vec::new();
    for method in [SweepMethod::Greedy, SweepMethod::Blocking] {
        let sweep = sweep_k(&h, method, 1..=h.n(), &states)?;
        println!("{method:?}");
        for r in &sweep.rows {
            println!("  k={} L={:<2} mean {:.5} (FC-SI {:.5}, bound {:.5})", r.k, r.fragments, r.mean_var, r.fc_si_var, r.lower_bound);
        }
        println!("  k* = {:?}", sweep.k_star);
        stars.push(sweep.k_star);
    }
    Ok((stars[0], stars[1]))
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
