//! Fragment construction.
//!
//! A [`Partition`] is an ordered list of [`Fragment`]s plus an identity
//! offset. Each fragment is a sum of [`TensorProductTerm`]s, and each term is
//! a tensor product of Hermitian blocks on disjoint qubit sets.

mod blocking;
mod bosonic;
mod coloring;
mod fermionic;
mod greedy;
mod reorder;
mod sorted;

pub use blocking::blocking_noclid;
pub use bosonic::{color_partition_bose_hubbard, qp_partition_vibrational, qpn_partition};
pub use coloring::{edge_coloring, is_proper_edge_coloring};
pub use fermionic::color_partition_fermi_hubbard_1d;
pub use greedy::greedy_noclid;
pub use reorder::{ordering_cost, reorder_indices, DEFAULT_HALT_AFTER};
pub use sorted::sorted_insertion;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{apply_local, embed_factors, hermiticity_defect, pauli_decompose, CMatrix, ZERO};
use crate::pauli::{ComplexPauliSum, PauliString, PauliSum};

/// A Hermitian block acting on `qubits`; bit `j` of a block index is `qubits[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FactorRepr", into = "FactorRepr")]
pub struct TensorFactor {
    pub qubits: Vec<usize>,
    pub block: CMatrix,
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    qubits: Vec<usize>,
    /// Row-major `[re, im]` pairs.
    block: Vec<[f64; 2]>,
}

impl From<TensorFactor> for FactorRepr {
    fn from(f: TensorFactor) -> Self {
        let dim = f.block.nrows();
        let mut block = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = f.block[(r, c)];
                block.push([z.re, z.im]);
            }
        }
        FactorRepr {
            qubits: f.qubits,
            block,
        }
    }
}

impl TryFrom<FactorRepr> for TensorFactor {
    type Error = Error;

    fn try_from(r: FactorRepr) -> Result<Self> {
        let dim = 1usize << r.qubits.len();
        if r.block.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: r.block.len(),
            });
        }
        let block = CMatrix::from_row_iterator(
            dim,
            dim,
            r.block.iter().map(|&[re, im]| Complex64::new(re, im)),
        );
        TensorFactor::new(r.qubits, block)
    }
}

impl TensorFactor {
    /// Checks shape, strictly ascending qubits and Hermiticity to 1e-10.
    pub fn new(qubits: Vec<usize>, block: CMatrix) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::domain("factor with no qubits"));
        }
        if qubits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!("factor qubits {qubits:?} are not strictly ascending")));
        }
        let dim = 1usize << qubits.len();
        if block.nrows() != dim || block.ncols() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: block.nrows(),
            });
        }
        let defect = hermiticity_defect(&block);
        if defect > 1e-10 {
            return Err(Error::domain(format!("factor block is not Hermitian (defect {defect:.3e})")));
        }
        Ok(TensorFactor { qubits, block })
    }

    pub fn support_mask(&self) -> u64 {
        self.qubits.iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }
}

/// A tensor product of blocks on disjoint qubit sets; uncovered qubits carry identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorProductTerm {
    pub factors: Vec<TensorFactor>,
}

impl TensorProductTerm {
    pub fn new(mut factors: Vec<TensorFactor>) -> Result<Self> {
        let mut seen = 0u64;
        for f in &factors {
            if seen & f.support_mask() != 0 {
                return Err(Error::domain("factor supports overlap"));
            }
            seen |= f.support_mask();
        }
        factors.sort_by_key(|f| f.qubits[0]);
        Ok(TensorProductTerm { factors })
    }

    /// `coefficient * P` as a product of one-qubit Pauli factors.
    pub fn from_pauli(coefficient: f64, p: &PauliString) -> Result<Self> {
        let support = p.support();
        if support.is_empty() {
            return Err(Error::domain("identity string is not a fragment term"));
        }
        let factors = support
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                let mut m = p.get(q).matrix();
                if i == 0 {
                    m *= Complex64::new(coefficient, 0.0);
                }
                TensorFactor::new(vec![q], m)
            })
            .collect::<Result<_>>()?;
        TensorProductTerm::new(factors)
    }

    pub fn support_mask(&self) -> u64 {
        self.factors.iter().fold(0, |m, f| m | f.support_mask())
    }

    pub fn support(&self) -> Vec<usize> {
        crate::pauli::bits_of(self.support_mask())
    }

    pub fn max_width(&self) -> usize {
        self.factors.iter().map(TensorFactor::width).max().unwrap_or(0)
    }

    /// Dense matrix on `target` (which must contain the support).
    pub fn to_dense_on(&self, target: &[usize]) -> Result<CMatrix> {
        let f: Vec<(&[usize], &CMatrix)> = self
            .factors
            .iter()
            .map(|f| (f.qubits.as_slice(), &f.block))
            .collect();
        embed_factors(&f, target)
    }

    /// Exact Pauli expansion on `n` qubits.
    pub fn to_pauli(&self, n: usize) -> Result<PauliSum> {
        let mut acc = ComplexPauliSum::identity(n, Complex64::new(1.0, 0.0));
        for f in &self.factors {
            let local = pauli_decompose(&f.block, 1e-15)?;
            acc = acc.mul(&local.embed(n, &f.qubits));
        }
        acc.prune(1e-15);
        acc.into_real(1e-10)
    }

    /// `out += scale * W state`.
    pub fn apply_add(&self, state: &[Complex64], out: &mut [Complex64], scale: Complex64) {
        let mut v = state.to_vec();
        for f in &self.factors {
            v = apply_local(&v, &f.qubits, &f.block);
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += scale * x;
        }
    }
}

/// One measurement basis: a commuting sum of tensor-product terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fragment {
    pub label: String,
    pub terms: Vec<TensorProductTerm>,
}

impl Fragment {
    pub fn new(label: impl Into<String>) -> Self {
        Fragment {
            label: label.into(),
            terms: Vec::new(),
        }
    }

    /// True when every factor is a single-qubit block, as for commuting Pauli groups.
    pub fn is_pauli_group(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.factors.iter().all(|f| f.width() == 1))
    }

    pub fn to_pauli(&self, n: usize) -> Result<PauliSum> {
        let mut s = PauliSum::new(n);
        for t in &self.terms {
            s.add_sum(&t.to_pauli(n)?, 1.0)?;
        }
        s.simplify();
        Ok(s)
    }

    /// `M state` through the factor blocks.
    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; state.len()];
        for t in &self.terms {
            t.apply_add(state, &mut out, Complex64::new(1.0, 0.0));
        }
        out
    }

    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, t| m | t.support_mask())
    }
}

/// Which algorithm produced a partition, with its parameters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Source {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl Source {
    pub fn new(method: impl Into<String>) -> Self {
        Source {
            method: method.into(),
            ..Default::default()
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

/// `H = constant + sum_q M_q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub n_qubits: usize,
    pub constant: f64,
    pub source: Source,
    pub fragments: Vec<Fragment>,
}

impl Partition {
    pub fn new(n_qubits: usize, constant: f64, source: Source) -> Self {
        Partition {
            n_qubits,
            constant,
            source,
            fragments: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.fragments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.fragments.iter().map(|f| f.terms.len()).sum()
    }

    /// Largest factor width anywhere in the partition.
    pub fn max_width(&self) -> usize {
        self.fragments
            .iter()
            .flat_map(|f| f.terms.iter().map(TensorProductTerm::max_width))
            .max()
            .unwrap_or(0)
    }

    /// Pauli expansion of the whole partition, constant included.
    pub fn to_pauli(&self) -> Result<PauliSum> {
        let mut s = PauliSum::new(self.n_qubits);
        s.add_constant(self.constant);
        for f in &self.fragments {
            s.add_sum(&f.to_pauli(self.n_qubits)?, 1.0)?;
        }
        s.simplify();
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("partition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Partition = serde_json::from_str(text)?;
        for frag in &p.fragments {
            for t in &frag.terms {
                if t.factors.iter().any(|f| f.qubits.iter().any(|&q| q >= p.n_qubits)) {
                    return Err(Error::Data(format!(
                        "fragment {:?} references a qubit >= {}",
                        frag.label, p.n_qubits
                    )));
                }
                TensorProductTerm::new(t.factors.clone())?;
            }
        }
        Ok(p)
    }
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::domain(format!("k = {k} outside [1, {n}]")));
    }
    Ok(())
}

/// `sum_i c_i P_i` restricted to `qubits`, as a dense block.
pub(crate) fn pauli_block(members: &[(PauliString, f64)], qubits: &[usize]) -> CMatrix {
    let dim = 1usize << qubits.len();
    let mut block = CMatrix::zeros(dim, dim);
    for (p, c) in members {
        let r = p.restrict(qubits);
        for col in 0..dim {
            let (row, ph) = r.apply_basis(col);
            block[(row, col)] += ph * *c;
        }
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Caps;
    use crate::linalg::max_abs;

    #[test]
    fn pauli_term_matches_dense() {
        let p: PauliString = "XIZY".parse().unwrap();
        let t = TensorProductTerm::from_pauli(-0.75, &p).unwrap();
        assert_eq!(t.factors.len(), 3);
        let want = p.to_dense() * Complex64::new(-0.75, 0.0);
        let got = t.to_dense_on(&[0, 1, 2, 3]).unwrap();
        assert!(max_abs(&(got - want)) < 1e-15);
        let back = t.to_pauli(4).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back.coefficient(&p), -0.75);
    }

    #[test]
    fn apply_matches_dense() {
        let h = PauliSum::from_text("# n_qubits = 3\n0.5 X0 Z2\n-1.25 Y1\n0.3 Z0 Z1 Z2\n").unwrap();
        let mut frag = Fragment::new("f");
        for (p, c) in h.iter() {
            frag.terms.push(TensorProductTerm::from_pauli(c, p).unwrap());
        }
        let psi: Vec<Complex64> = (0..8).map(|i| Complex64::new(i as f64 * 0.1, 1.0 - i as f64 * 0.05)).collect();
        let dense = h.to_dense(&Caps::default()).unwrap();
        let want = &dense * nalgebra::DVector::from_vec(psi.clone());
        let got = frag.apply(&psi);
        for (a, b) in got.iter().zip(want.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!(frag.is_pauli_group());
        assert!(frag.to_pauli(3).unwrap().max_abs_difference(&h) < 1e-15);
    }

    #[test]
    fn factor_validation() {
        assert!(TensorFactor::new(vec![1, 0], CMatrix::identity(4, 4)).is_err());
        assert!(TensorFactor::new(vec![0], CMatrix::identity(4, 4)).is_err());
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(TensorFactor::new(vec![0], m).is_err());
        let f = || TensorFactor::new(vec![0, 1], CMatrix::identity(4, 4)).unwrap();
        let g = TensorFactor::new(vec![1], CMatrix::identity(2, 2)).unwrap();
        assert!(TensorProductTerm::new(vec![f(), g]).is_err());
    }

    #[test]
    fn json_is_bit_exact() {
        let b = CMatrix::from_fn(4, 4, |r, c| {
            let x = (r as f64 + 1.0).sqrt() * (c as f64 + 0.1).ln();
            let y = if r == c { 0.0 } else { 0.1 / 3.0 * (r as f64 - c as f64) };
            Complex64::new(x, y)
        });
        let h = (&b + b.adjoint()) * Complex64::new(0.5, 0.0);
        let term = TensorProductTerm::new(vec![TensorFactor::new(vec![1, 3], h).unwrap()]).unwrap();
        let mut p = Partition::new(4, 1.0 / 3.0, Source::new("test").with_k(2));
        p.fragments.push(Fragment {
            label: "a".into(),
            terms: vec![term],
        });
        let back = Partition::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
