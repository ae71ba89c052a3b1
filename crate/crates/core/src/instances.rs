//! Small fixed Hamiltonians used by the examples and the test suites.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::CMatrix;
use crate::operators::{Coupling, FcidumpData, VibrationalModel};
use crate::partition::{Fragment, Partition, Source, TensorFactor, TensorProductTerm};
use crate::pauli::PauliSum;

/// A 4-qubit toy Hamiltonian with 21 Pauli terms and a 2-local two-basis split.
pub const ILLUSTRATIVE_H: &str = "\
1
0.5 X0 X1 X2
1 X0 X2
0.5 Y0 Y1 X2
1 X1
2 X1 X2
1 X1 X2 X3
-1 X1 X2 Z3
-1 X1 Z2
-0.5 X1 Z2 X3
0.5 X1 Z2 Z3
0.5 X1 X3
-0.5 X1 Z3
4 X2
1 X2 X3
-1 X2 Z3
-1 Z2
-0.5 Z2 X3
0.5 Z2 Z3
0.5 X3
-0.5 Z3
";

pub fn illustrative_hamiltonian() -> PauliSum {
    PauliSum::from_text(ILLUSTRATIVE_H).expect("fixed text parses")
}

fn real(rows: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, rows, data.iter().map(|&x| Complex64::new(x, 0.0)))
}

fn product(blocks: [(Vec<usize>, CMatrix); 3]) -> Result<TensorProductTerm> {
    TensorProductTerm::new(
        blocks
            .into_iter()
            .map(|(q, b)| TensorFactor::new(q, b))
            .collect::<Result<_>>()?,
    )
}

/// `M_1 = W_11 + W_12` and `M_2 = W_21`, each `W` a product of blocks on
/// qubits `{0,1}`, `{2}`, `{3}`. The identity term is carried inside the blocks,
/// so the partition constant is zero.
pub fn illustrative_decomposition() -> Result<Partition> {
    let a = real(4, &[1., 0., 1., 0., 0., 1., 0., 1., 1., 0., 1., 0., 0., 1., 0., 1.]);
    let b = real(2, &[0., 1., 1., 1.]);
    let t = real(4, &[2., 1., 0., 0., 1., 2., 1., 0., 0., 1., 2., 1., 0., 0., 1., 2.]);
    let w11 = product([(vec![0, 1], a.clone()), (vec![2], b.clone()), (vec![3], real(2, &[0., 1., 1., 2.]))])?;
    let w12 = product([(vec![0, 1], a), (vec![2], b), (vec![3], real(2, &[1., 0., 0., 1.]))])?;
    let w21 = product([(vec![0, 1], t), (vec![2], real(2, &[0., 1., 1., 0.])), (vec![3], real(2, &[1., 0., 0., 1.]))])?;
    let mut p = Partition::new(4, 0.0, Source::new("hand").with_k(2));
    p.fragments.push(Fragment {
        label: "M1".into(),
        terms: vec![w11, w12],
    });
    p.fragments.push(Fragment {
        label: "M2".into(),
        terms: vec![w21],
    });
    Ok(p)
}

pub const H2_FCIDUMP: &str = include_str!("../fixtures/h2.fcidump");

/// Minimal-basis H2 near equilibrium: 2 spatial orbitals, 4 spin orbitals.
pub fn h2_integrals() -> FcidumpData {
    FcidumpData::parse(H2_FCIDUMP).expect("bundled fixture parses")
}

/// Hartree per wavenumber.
pub const HARTREE_PER_INV_CM: f64 = 4.556_335_252_9e-6;

/// A 3-mode anharmonic model with water-like frequencies, in hartree.
pub fn three_mode_vibrational() -> VibrationalModel {
    let s = HARTREE_PER_INV_CM;
    let coupling = |modes: &[usize], v: f64| Coupling {
        modes: modes.to_vec(),
        value: v * s,
    };
    VibrationalModel {
        omega: vec![1648.5 * s, 3832.2 * s, 3942.5 * s],
        couplings: vec![
            coupling(&[0, 0, 0], -55.0),
            coupling(&[0, 1, 1], -160.0),
            coupling(&[0, 2, 2], -150.0),
            coupling(&[0, 0, 0, 0], 4.0),
            coupling(&[1, 1, 1, 1], 30.0),
        ],
    }
}
