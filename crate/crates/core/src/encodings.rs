//! Fermion-to-qubit (Jordan-Wigner) and boson-to-qubit (Gray code) encodings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_defect, pauli_decompose, CMatrix, ZERO};
use crate::operators::{boson_matrices, BosonOperator, FermionOperator, LadderOp};
use crate::pauli::{ComplexPauliSum, Pauli, PauliString, PauliSum, MAX_QUBITS};

const PROJECTION_TOL: f64 = 1e-14;

/// `a_j = (X_j + i Y_j)/2 Z_0 ... Z_{j-1}`, `a_j^dagger = (X_j - i Y_j)/2 Z_0 ... Z_{j-1}`.
fn ladder_image(n: usize, op: LadderOp) -> ComplexPauliSum {
    let mut x = PauliString::identity(n);
    let mut y = PauliString::identity(n);
    for q in 0..op.mode {
        x.set(q, Pauli::Z);
        y.set(q, Pauli::Z);
    }
    x.set(op.mode, Pauli::X);
    y.set(op.mode, Pauli::Y);
    let mut s = ComplexPauliSum::new(n);
    s.add(Complex64::new(0.5, 0.0), x);
    s.add(Complex64::new(0.0, if op.dagger { -0.5 } else { 0.5 }), y);
    s
}

/// Jordan-Wigner image with complex coefficients (no Hermiticity check).
pub fn jordan_wigner_complex(f: &FermionOperator) -> ComplexPauliSum {
    assert!(f.modes <= MAX_QUBITS, "at most {MAX_QUBITS} modes");
    let n = f.modes;
    let mut out = ComplexPauliSum::identity(n, Complex64::new(f.constant, 0.0));
    for term in &f.terms {
        let mut prod = ComplexPauliSum::identity(n, Complex64::new(term.coefficient, 0.0));
        for &op in &term.ops {
            prod = prod.mul(&ladder_image(n, op));
        }
        out.add_sum(&prod, Complex64::new(1.0, 0.0));
    }
    out.prune(PROJECTION_TOL);
    out
}

/// Jordan-Wigner transform onto `modes` qubits; fails if the image is not Hermitian.
pub fn jordan_wigner(f: &FermionOperator) -> Result<PauliSum> {
    if f.modes > MAX_QUBITS {
        return Err(Error::Resource(format!("{} modes exceeds {MAX_QUBITS}", f.modes)));
    }
    jordan_wigner_complex(f).into_real(1e-10)
}

/// Gray-code assignment of the `d` levels of one mode to `k_mode` qubits.
///
/// Level `l` gets the `l`-th reflected binary Gray code written most
/// significant bit first; character `j` of that code sits on the mode's
/// `j`-th qubit (lowest qubit index first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayMap {
    pub d: usize,
    pub k_mode: usize,
    /// Basis index inside the mode's `2^k_mode` block for each level.
    pub codes: Vec<usize>,
}

pub fn gray_map(d: usize) -> Result<GrayMap> {
    if d < 2 {
        return Err(Error::domain(format!("truncation d = {d} must be at least 2")));
    }
    let k_mode = (usize::BITS - (d - 1).leading_zeros()) as usize;
    let codes = (0..d)
        .map(|l| {
            let g = l ^ (l >> 1);
            // reverse the k_mode-bit code so its first character lands on bit 0
            (0..k_mode).fold(0, |acc, j| acc | (((g >> (k_mode - 1 - j)) & 1) << j))
        })
        .collect();
    Ok(GrayMap { d, k_mode, codes })
}

impl GrayMap {
    pub fn code_string(&self, level: usize) -> String {
        let c = self.codes[level];
        (0..self.k_mode)
            .map(|j| if (c >> j) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Embeds a `d x d` operator into the `2^k_mode`-dimensional block at the
    /// code rows and columns; padding rows and columns are zero.
    pub fn embed(&self, a: &CMatrix) -> Result<CMatrix> {
        if a.nrows() != self.d || a.ncols() != self.d {
            return Err(Error::domain(format!(
                "expected {0}x{0} block, got {1}x{2}",
                self.d,
                a.nrows(),
                a.ncols()
            )));
        }
        let dim = 1usize << self.k_mode;
        let mut out = CMatrix::from_element(dim, dim, ZERO);
        for (r, &cr) in self.codes.iter().enumerate() {
            for (c, &cc) in self.codes.iter().enumerate() {
                out[(cr, cc)] = a[(r, c)];
            }
        }
        Ok(out)
    }
}

/// Encodes one Hermitian `d x d` mode operator as a Pauli sum on `k_mode` qubits.
pub fn encode_boson_block(a: &CMatrix, map: &GrayMap) -> Result<PauliSum> {
    let defect = hermiticity_defect(a);
    if defect > 1e-10 {
        return Err(Error::domain(format!("block is not Hermitian (defect {defect:.3e})")));
    }
    pauli_decompose(&map.embed(a)?, PROJECTION_TOL)?.into_real(1e-10)
}

/// A boson operator mapped to qubits, with the qubits each mode occupies.
#[derive(Debug, Clone)]
pub struct EncodedOperator {
    pub pauli: PauliSum,
    pub mode_qubits: Vec<Vec<usize>>,
    pub gray: GrayMap,
}

pub(crate) fn mode_qubit_sets(modes: usize, k_mode: usize) -> Vec<Vec<usize>> {
    (0..modes)
        .map(|m| (m * k_mode..(m + 1) * k_mode).collect())
        .collect()
}

pub fn encode_boson_complex(b: &BosonOperator) -> Result<(ComplexPauliSum, Vec<Vec<usize>>)> {
    let map = gray_map(b.d)?;
    let n = b.modes * map.k_mode;
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!("{n} qubits exceeds {MAX_QUBITS}")));
    }
    let mats = boson_matrices(b.d)?;
    let mode_qubits = mode_qubit_sets(b.modes, map.k_mode);
    let mut out = ComplexPauliSum::identity(n, Complex64::new(b.constant, 0.0));
    for term in &b.terms {
        let mut prod = ComplexPauliSum::identity(n, Complex64::new(term.coefficient, 0.0));
        for mode in term.modes() {
            let block = map.embed(&term.mode_matrix(mode, &mats))?;
            let local = pauli_decompose(&block, PROJECTION_TOL)?;
            prod = prod.mul(&local.embed(n, &mode_qubits[mode]));
        }
        out.add_sum(&prod, Complex64::new(1.0, 0.0));
    }
    out.prune(PROJECTION_TOL);
    Ok((out, mode_qubits))
}

/// Gray-code encoding of every mode onto `k_mode` contiguous qubits.
pub fn encode_boson_operator(b: &BosonOperator) -> Result<EncodedOperator> {
    let (sum, mode_qubits) = encode_boson_complex(b)?;
    Ok(EncodedOperator {
        pauli: sum.into_real(1e-10)?,
        mode_qubits,
        gray: gray_map(b.d)?,
    })
}
