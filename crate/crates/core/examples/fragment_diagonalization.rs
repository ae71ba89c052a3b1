//! Rotating each fragment of the 2-local toy split to a diagonal basis, and
//! checking that the rotated diagonal reproduces the fragment's expectation value.

use noclid::instances::illustrative_decomposition;
use noclid::validate::diagonalize_fragment;
use noclid::variance::random_state;

/// Worst expectation mismatch over fragments and states.
pub fn run_example() -> noclid::Result<f64> {
    let p = illustrative_decomposition()?;
    let mut worst: f64 = 0.0;
    for f in &p.fragments {
        let d = diagonalize_fragment(f, p.n_qubits)?;
        let widths: Vec<usize> = d.clusters.iter().map(|c| c.qubits.len()).collect();
        println!("{}: clusters of width {widths:?}, residual {:.1e}", f.label, d.residual);
        for seed in 0..10 {
            let psi = random_state(p.n_qubits, seed)?;
            let direct: f64 = f
                .apply(&psi.amplitudes)
                .iter()
                .zip(&psi.amplitudes)
                .map(|(v, a)| (a.conj() * v).re)
                .sum();
            worst = worst.max((direct - d.expectation(&psi)).abs());
        }
    }
    println!("worst |<M> - sum_z D(z) |<z|U^dagger psi>|^2| over 10 states: {worst:.1e}");
    Ok(worst)
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
