//! One qubit, two ways to measure H = eta X + sqrt(1 - eta^2) Z: the Pauli
//! bases X and Z separately, or the single eigenbasis of H.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8};

use noclid::variance::{rotated_basis_demo, theorem1_grid};

pub fn run_example() -> noclid::Result<usize> {
    for (eta, alpha, name) in [
        (FRAC_1_SQRT_2, 1.0, "|0>"),
        (FRAC_1_SQRT_2, FRAC_PI_8.cos(), "Ry(pi/4)|0>"),
        (1.0, 0.3, "H = X"),
    ] {
        let (gpb, rb) = rotated_basis_demo(eta, alpha)?;
        println!("eta={eta:.4} alpha={alpha:.4} ({name}): Pauli bases {gpb:.6}, rotated basis {rb:.6}");
    }
    let grid = theorem1_grid(101)?;
    let violations = grid.iter().filter(|r| r.violates(1e-12)).count();
    let gap = grid.iter().map(|r| r.n_gpb - r.n_rb).fold(f64::INFINITY, f64::min);
    println!("{} grid points, {violations} where the rotated basis is worse; min gap {gap:.3e}", grid.len());
    Ok(violations)
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
