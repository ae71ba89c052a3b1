//! Second-quantized operators and the lattice/vibrational model builders.

mod fcidump;
mod lattice;

pub use fcidump::{load_fcidump, FcidumpData};
pub use lattice::{Boundary, Lattice, LatticeKind};

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// `a_mode` or `a_mode^dagger`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        LadderOp { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        LadderOp { mode, dagger: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionTerm {
    pub coefficient: f64,
    pub ops: Vec<LadderOp>,
}

/// Real-coefficient sum of products of fermionic ladder operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionOperator {
    pub modes: usize,
    pub terms: Vec<FermionTerm>,
    #[serde(default)]
    pub constant: f64,
}

impl FermionOperator {
    pub fn new(modes: usize) -> Self {
        FermionOperator {
            modes,
            terms: Vec::new(),
            constant: 0.0,
        }
    }

    pub fn add_term(&mut self, coefficient: f64, ops: Vec<LadderOp>) -> Result<()> {
        if let Some(op) = ops.iter().find(|o| o.mode >= self.modes) {
            return Err(Error::Data(format!(
                "mode {} out of range for {} modes",
                op.mode, self.modes
            )));
        }
        if coefficient == 0.0 {
            return Ok(());
        }
        if ops.is_empty() {
            self.constant += coefficient;
        } else {
            self.terms.push(FermionTerm { coefficient, ops });
        }
        Ok(())
    }

    /// Hermitian as a whole, checked on its Jordan-Wigner image.
    pub fn is_hermitian(&self) -> bool {
        crate::encodings::jordan_wigner_complex(self)
            .into_real(1e-10)
            .is_ok()
    }

    /// Relabels mode `m` as `perm[m]`.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<FermionOperator> {
        check_permutation(perm, self.modes)?;
        let terms = self
            .terms
            .iter()
            .map(|t| FermionTerm {
                coefficient: t.coefficient,
                ops: t
                    .ops
                    .iter()
                    .map(|o| LadderOp {
                        mode: perm[o.mode],
                        dagger: o.dagger,
                    })
                    .collect(),
            })
            .collect();
        Ok(FermionOperator {
            modes: self.modes,
            terms,
            constant: self.constant,
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::domain(format!("permutation of length {} for {n} modes", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::domain("not a permutation"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BosonSymbol {
    #[serde(rename = "b")]
    Lower,
    #[serde(rename = "bdag")]
    Raise,
    #[serde(rename = "q")]
    Position,
    #[serde(rename = "p")]
    Momentum,
    #[serde(rename = "n")]
    Number,
}

impl BosonSymbol {
    pub fn is_quadrature(self) -> bool {
        matches!(self, BosonSymbol::Position | BosonSymbol::Momentum)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BosonTerm {
    pub coefficient: f64,
    pub factors: Vec<(usize, BosonSymbol)>,
}

impl BosonTerm {
    /// Modes touched, ascending and deduplicated.
    pub fn modes(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.factors.iter().map(|f| f.0).collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    /// The ordered product of this term's symbols on one mode.
    pub fn mode_matrix(&self, mode: usize, mats: &BosonMatrices) -> CMatrix {
        let mut m = CMatrix::identity(mats.d, mats.d);
        for &(md, s) in &self.factors {
            if md == mode {
                m *= mats.get(s);
            }
        }
        m
    }
}

/// Real-coefficient sum of products of single-mode bosonic operators, each
/// mode truncated to `d` levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BosonOperator {
    pub modes: usize,
    pub d: usize,
    pub terms: Vec<BosonTerm>,
    #[serde(default)]
    pub constant: f64,
}

impl BosonOperator {
    pub fn new(modes: usize, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("truncation d = {d} must be at least 2")));
        }
        Ok(BosonOperator {
            modes,
            d,
            terms: Vec::new(),
            constant: 0.0,
        })
    }

    pub fn add_term(&mut self, coefficient: f64, factors: Vec<(usize, BosonSymbol)>) -> Result<()> {
        if let Some(f) = factors.iter().find(|f| f.0 >= self.modes) {
            return Err(Error::Data(format!(
                "mode {} out of range for {} modes",
                f.0, self.modes
            )));
        }
        if coefficient == 0.0 {
            return Ok(());
        }
        if factors.is_empty() {
            self.constant += coefficient;
        } else {
            self.terms.push(BosonTerm {
                coefficient,
                factors,
            });
        }
        Ok(())
    }

    /// Hermitian as a whole, checked on the encoded qubit image.
    pub fn is_hermitian(&self) -> bool {
        match crate::encodings::encode_boson_complex(self) {
            Ok((sum, _)) => sum.into_real(1e-10).is_ok(),
            Err(_) => false,
        }
    }
}

/// Truncated single-mode operators on `d` levels.
#[derive(Debug, Clone)]
pub struct BosonMatrices {
    pub d: usize,
    pub b: CMatrix,
    pub bdag: CMatrix,
    pub q: CMatrix,
    pub p: CMatrix,
    pub n: CMatrix,
}

impl BosonMatrices {
    pub fn get(&self, s: BosonSymbol) -> &CMatrix {
        match s {
            BosonSymbol::Lower => &self.b,
            BosonSymbol::Raise => &self.bdag,
            BosonSymbol::Position => &self.q,
            BosonSymbol::Momentum => &self.p,
            BosonSymbol::Number => &self.n,
        }
    }
}

/// `b[l-1, l] = sqrt(l)`, `q = (b + b^dagger)/sqrt 2`, `p = i(b^dagger - b)/sqrt 2`, `n = b^dagger b`.
pub fn boson_matrices(d: usize) -> Result<BosonMatrices> {
    if d < 2 {
        return Err(Error::domain(format!("truncation d = {d} must be at least 2")));
    }
    let b = DMatrix::from_fn(d, d, |r, c| {
        if c == r + 1 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let bdag = b.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let q = (&b + &bdag) * Complex64::new(s, 0.0);
    let p = (&bdag - &b) * Complex64::new(0.0, s);
    let n = DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            Complex64::new(r as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(BosonMatrices { d, b, bdag, q, p, n })
}

/// `-t sum_<ij> (a_i^dagger a_j + a_j^dagger a_i) + sum_<ij> (U/2) n_i n_j` over the lattice edges.
pub fn build_fermi_hubbard(lat: &Lattice, t: f64, u: f64) -> Result<FermionOperator> {
    let mut f = FermionOperator::new(lat.sites);
    for &(i, j) in &lat.edges {
        f.add_term(-t, vec![LadderOp::create(i), LadderOp::annihilate(j)])?;
        f.add_term(-t, vec![LadderOp::create(j), LadderOp::annihilate(i)])?;
    }
    for &(i, j) in &lat.edges {
        f.add_term(
            u / 2.0,
            vec![
                LadderOp::create(i),
                LadderOp::annihilate(i),
                LadderOp::create(j),
                LadderOp::annihilate(j),
            ],
        )?;
    }
    Ok(f)
}

/// `-t sum_<ij> (b_i^dagger b_j + h.c.) + sum_i (U/2) n_i (n_i - 1)`.
///
/// The on-site part is stored as `(U/2) n_i n_i - (U/2) n_i`.
pub fn build_bose_hubbard(lat: &Lattice, t: f64, u: f64, d: usize) -> Result<BosonOperator> {
    use BosonSymbol::*;
    let mut b = BosonOperator::new(lat.sites, d)?;
    for &(i, j) in &lat.edges {
        b.add_term(-t, vec![(i, Raise), (j, Lower)])?;
        b.add_term(-t, vec![(j, Raise), (i, Lower)])?;
    }
    for i in 0..lat.sites {
        b.add_term(u / 2.0, vec![(i, Number), (i, Number)])?;
        b.add_term(-u / 2.0, vec![(i, Number)])?;
    }
    Ok(b)
}

/// Anharmonic vibrational model: harmonic frequencies plus `q`-string couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VibrationalModel {
    pub omega: Vec<f64>,
    #[serde(default)]
    pub couplings: Vec<Coupling>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub modes: Vec<usize>,
    pub value: f64,
}

impl VibrationalModel {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn coupling_map(&self) -> BTreeMap<Vec<usize>, f64> {
        let mut m = BTreeMap::new();
        for c in &self.couplings {
            *m.entry(c.modes.clone()).or_insert(0.0) += c.value;
        }
        m
    }
}

/// `1/2 sum_i omega_i (q_i^2 + p_i^2) + sum t_{ijk} q_i q_j q_k + ...` to any order.
pub fn build_vibrational(
    omega: &[f64],
    couplings: &BTreeMap<Vec<usize>, f64>,
    d: usize,
) -> Result<BosonOperator> {
    use BosonSymbol::*;
    let mut v = BosonOperator::new(omega.len(), d)?;
    for (i, &w) in omega.iter().enumerate() {
        v.add_term(0.5 * w, vec![(i, Position), (i, Position)])?;
        v.add_term(0.5 * w, vec![(i, Momentum), (i, Momentum)])?;
    }
    for (idx, &c) in couplings {
        if idx.is_empty() {
            return Err(Error::Data("coupling with no mode indices".into()));
        }
        v.add_term(c, idx.iter().map(|&m| (m, Position)).collect())?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{encode_boson_operator, jordan_wigner};
    use crate::error::Caps;
    use crate::linalg::max_abs;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn boson_matrices_small_d() {
        let m = boson_matrices(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let xq = DMatrix::from_row_slice(2, 2, &[c(0.0), c(s), c(s), c(0.0)]);
        assert!(max_abs(&(&m.q - xq)) < 1e-15);
        for d in 2..=8 {
            let m = boson_matrices(d).unwrap();
            for l in 0..d {
                assert_eq!(m.n[(l, l)], c(l as f64));
            }
            assert!(max_abs(&(&m.n - &m.bdag * &m.b)) < 1e-14);
            for h in [&m.q, &m.p, &m.n] {
                assert!(crate::linalg::hermiticity_defect(h) < 1e-15);
            }
        }
        assert!(boson_matrices(1).is_err());
    }

    #[test]
    fn qqpp_identity_holds_as_kron() {
        for d in 2..=8 {
            let m = boson_matrices(d).unwrap();
            let lhs = m.q.kronecker(&m.q) + m.p.kronecker(&m.p);
            let rhs = m.bdag.kronecker(&m.b) + m.b.kronecker(&m.bdag);
            assert!(max_abs(&(lhs - rhs)) < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn fermi_hubbard_term_bookkeeping() {
        let lat2 = Lattice::chain(2, Boundary::Open).unwrap();
        let hop = build_fermi_hubbard(&lat2, 1.0, 0.0).unwrap();
        assert_eq!(hop.terms.len(), 2);
        assert!(hop.terms.iter().all(|t| t.ops.len() == 2 && t.coefficient == -1.0));

        let int = build_fermi_hubbard(&lat2, 0.0, 2.0).unwrap();
        assert_eq!(int.terms.len(), 1);
        assert_eq!(int.terms[0].coefficient, 1.0);
        assert_eq!(
            int.terms[0].ops,
            vec![
                LadderOp::create(0),
                LadderOp::annihilate(0),
                LadderOp::create(1),
                LadderOp::annihilate(1)
            ]
        );

        let lat4 = Lattice::chain(4, Boundary::Open).unwrap();
        let f = build_fermi_hubbard(&lat4, 1.0, 2.0).unwrap();
        let hops = f.terms.iter().filter(|t| t.ops.len() == 2).count();
        let ints = f.terms.iter().filter(|t| t.ops.len() == 4).count();
        assert_eq!((hops, ints), (6, 3));
        assert_eq!(f.terms.len(), 3 * lat4.edges.len());
        assert!(f.is_hermitian());
    }

    #[test]
    fn non_hermitian_fermion_detected() {
        let mut f = FermionOperator::new(2);
        f.add_term(1.0, vec![LadderOp::create(0), LadderOp::annihilate(1)]).unwrap();
        assert!(!f.is_hermitian());
    }

    #[test]
    fn bose_hubbard_onsite_vanishes_at_d2() {
        let caps = Caps::default();
        let lat = Lattice::chain(2, Boundary::Open).unwrap();
        let with_u = build_bose_hubbard(&lat, 1.0, 3.7, 2).unwrap();
        let without = build_bose_hubbard(&lat, 1.0, 0.0, 2).unwrap();
        let a = encode_boson_operator(&with_u).unwrap().pauli.to_dense(&caps).unwrap();
        let b = encode_boson_operator(&without).unwrap().pauli.to_dense(&caps).unwrap();
        assert!(max_abs(&(a - b)) < 1e-14);
        assert!(with_u.is_hermitian());
    }

    #[test]
    fn bose_hubbard_b3d4_shape() {
        let lat = Lattice::chain(3, Boundary::Open).unwrap();
        let b = build_bose_hubbard(&lat, 1.0, 2.0, 4).unwrap();
        assert_eq!((b.modes, b.d), (3, 4));
        let enc = encode_boson_operator(&b).unwrap();
        assert_eq!(enc.pauli.n(), 6);
    }

    #[test]
    fn bose_hubbard_hop_block_is_qq_plus_pp() {
        let caps = Caps::default();
        let lat = Lattice::chain(2, Boundary::Open).unwrap();
        for d in [2, 4] {
            let b = build_bose_hubbard(&lat, 1.0, 0.0, d).unwrap();
            let h = encode_boson_operator(&b).unwrap().pauli.to_dense(&caps).unwrap();
            let m = boson_matrices(d).unwrap();
            let g = crate::encodings::gray_map(d).unwrap();
            let (q, p) = (g.embed(&m.q).unwrap(), g.embed(&m.p).unwrap());
            let want = -(q.kronecker(&q) + p.kronecker(&p));
            assert!(max_abs(&(h - want)) < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn harmonic_oscillator_levels() {
        for d in [2, 3, 4, 6] {
            let v = build_vibrational(&[1.0], &BTreeMap::new(), d).unwrap();
            let m = boson_matrices(d).unwrap();
            let mut h = CMatrix::zeros(d, d);
            for t in &v.terms {
                h += t.mode_matrix(0, &m) * c(t.coefficient);
            }
            for l in 0..d - 1 {
                assert!((h[(l, l)].re - (l as f64 + 0.5)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vibrational_term_bookkeeping() {
        let mut cpl = BTreeMap::new();
        cpl.insert(vec![0, 0, 1], 0.3);
        let v = build_vibrational(&[0.0, 0.0], &cpl, 4).unwrap();
        assert_eq!(v.terms.len(), 1);
        assert_eq!(
            v.terms[0].factors,
            vec![
                (0, BosonSymbol::Position),
                (0, BosonSymbol::Position),
                (1, BosonSymbol::Position)
            ]
        );
        let v = build_vibrational(&[1.0, 2.0, 3.0], &BTreeMap::new(), 3).unwrap();
        assert_eq!(v.terms.len(), 6);
        assert!(v.terms.iter().all(|t| {
            t.factors.len() == 2 && t.factors[0] == t.factors[1] && t.factors[0].1.is_quadrature()
        }));
        assert!(v.is_hermitian());
        let mut bad = BTreeMap::new();
        bad.insert(vec![0, 5], 1.0);
        assert!(build_vibrational(&[1.0], &bad, 2).is_err());
    }

    #[test]
    fn permute_modes_relabels() {
        let lat = Lattice::chain(3, Boundary::Open).unwrap();
        let f = build_fermi_hubbard(&lat, 1.0, 0.0).unwrap();
        let g = f.permute_modes(&[2, 1, 0]).unwrap();
        let hf = jordan_wigner(&f).unwrap();
        let hg = jordan_wigner(&g).unwrap();
        // reversing a symmetric chain maps the Hamiltonian onto itself
        assert!(hf.max_abs_difference(&hg) < 1e-15);
        assert!(f.permute_modes(&[0, 0, 1]).is_err());
    }
}
