//! Checks that a partition meets its contract, and numerical diagonalization
//! of fragments into per-cluster unitaries.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Caps, Error, Result};
use crate::linalg::{
    apply_local, commutator_norm, embed_factors, hermitian_eigen, max_abs, max_abs_offdiag, CMatrix,
};
use crate::partition::{Fragment, Partition, TensorProductTerm};
use crate::pauli::{bits_of, PauliSum};
use crate::variance::StateVector;

pub const RECONSTRUCTION_TOL: f64 = 1e-10;
pub const COMMUTATION_TOL: f64 = 1e-10;
pub const DIAGONALIZATION_TOL: f64 = 1e-9;

/// Largest qubit set on which commutators and cluster unitaries are formed densely.
pub const MAX_LOCAL_QUBITS: usize = 10;

/// Max-entry deviation of `constant + sum of fragments` from `h`.
///
/// Up to the dense cap the fragments are realized directly from their blocks;
/// beyond it both sides go through their Pauli expansions and the sparse
/// difference matrix.
pub fn check_reconstruction(p: &Partition, h: &PauliSum) -> Result<f64> {
    if p.n_qubits != h.n() {
        return Err(Error::Dimension {
            expected: h.n(),
            found: p.n_qubits,
        });
    }
    let n = h.n();
    let caps = Caps::from_env();
    if n <= caps.dense_qubits.min(MAX_LOCAL_QUBITS) {
        let target: Vec<usize> = (0..n).collect();
        let mut m = h.to_dense(&caps)?;
        for d in 0..m.nrows() {
            m[(d, d)] -= Complex64::new(p.constant, 0.0);
        }
        for f in &p.fragments {
            for t in &f.terms {
                m -= t.to_dense_on(&target)?;
            }
        }
        return Ok(max_abs(&m));
    }
    let mut diff = p.to_pauli()?;
    diff.add_sum(h, -1.0)?;
    Ok(diff.to_sparse(&caps)?.max_abs_entry())
}

/// A factor wider than allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityOffender {
    pub fragment: usize,
    pub term: usize,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityCheck {
    pub ok: bool,
    pub max_width: usize,
    pub worst: Option<LocalityOffender>,
}

/// Every factor acts on at most `k` qubits.
pub fn check_locality(p: &Partition, k: usize) -> LocalityCheck {
    let mut worst: Option<LocalityOffender> = None;
    let mut max_width = 0;
    for (fi, f) in p.fragments.iter().enumerate() {
        for (ti, t) in f.terms.iter().enumerate() {
            for fac in &t.factors {
                if fac.width() > max_width {
                    max_width = fac.width();
                    if fac.width() > k {
                        worst = Some(LocalityOffender {
                            fragment: fi,
                            term: ti,
                            qubits: fac.qubits.clone(),
                        });
                    }
                }
            }
        }
    }
    LocalityCheck {
        ok: max_width <= k,
        max_width,
        worst,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutationCheck {
    /// Max over fragments and term pairs of the max-entry norm of `[W, W']`.
    pub worst: f64,
    /// `(fragment, term, term)` attaining `worst`.
    pub location: Option<(usize, usize, usize)>,
    /// Overlapping factors of distinct terms always share the same qubits and commute.
    pub tensor_wise: bool,
}

impl CommutationCheck {
    pub fn ok(&self) -> bool {
        self.worst < COMMUTATION_TOL
    }
}

fn union_support(a: &TensorProductTerm, b: &TensorProductTerm) -> Vec<usize> {
    bits_of(a.support_mask() | b.support_mask())
}

fn tensor_wise_pair(a: &TensorProductTerm, b: &TensorProductTerm) -> bool {
    for fa in &a.factors {
        for fb in &b.factors {
            if fa.support_mask() & fb.support_mask() == 0 {
                continue;
            }
            if fa.qubits != fb.qubits || commutator_norm(&fa.block, &fb.block) >= COMMUTATION_TOL {
                return false;
            }
        }
    }
    true
}

/// Commutators of every term pair within each fragment, formed on the pair's joint support.
pub fn check_commutation(p: &Partition) -> Result<CommutationCheck> {
    let mut out = CommutationCheck {
        worst: 0.0,
        location: None,
        tensor_wise: true,
    };
    for (fi, f) in p.fragments.iter().enumerate() {
        for i in 0..f.terms.len() {
            for j in (i + 1)..f.terms.len() {
                let (a, b) = (&f.terms[i], &f.terms[j]);
                if a.support_mask() & b.support_mask() == 0 {
                    continue;
                }
                if !tensor_wise_pair(a, b) {
                    out.tensor_wise = false;
                }
                let target = union_support(a, b);
                if target.len() > MAX_LOCAL_QUBITS {
                    return Err(Error::Resource(format!(
                        "commutator on {} qubits exceeds cap of {MAX_LOCAL_QUBITS}",
                        target.len()
                    )));
                }
                let norm = commutator_norm(&a.to_dense_on(&target)?, &b.to_dense_on(&target)?);
                if norm > out.worst {
                    out.worst = norm;
                    out.location = Some((fi, i, j));
                }
            }
        }
    }
    Ok(out)
}

/// Unitary acting on one cluster of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterUnitary {
    pub qubits: Vec<usize>,
    pub unitary: CMatrix,
}

/// `M = U diag(D) U^dagger` with `U` a tensor product of cluster unitaries.
#[derive(Debug, Clone)]
pub struct FragmentDiagonalization {
    pub n: usize,
    pub clusters: Vec<ClusterUnitary>,
    /// `D(z)` for every basis index `z`.
    pub diagonal: Vec<f64>,
    /// Upper bound on `max |(U^dagger M U - diag D)_{ab}|`.
    pub residual: f64,
}

impl FragmentDiagonalization {
    /// `U^dagger psi`.
    pub fn rotate(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut v = psi.to_vec();
        for c in &self.clusters {
            v = apply_local(&v, &c.qubits, &c.unitary.adjoint());
        }
        v
    }

    /// `sum_z D(z) |(U^dagger psi)(z)|^2`.
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        self.rotate(&psi.amplitudes)
            .iter()
            .zip(&self.diagonal)
            .map(|(a, d)| d * a.norm_sqr())
            .sum()
    }
}

/// Union-find over qubits.
fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn clusters_of(parent: &mut [usize], covered: u64) -> Vec<Vec<usize>> {
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for q in bits_of(covered) {
        let r = find(parent, q);
        groups.entry(r).or_default().push(q);
    }
    groups.into_values().collect()
}

/// The product of a term's factors that lie in `cluster`, realized on it.
fn restriction(t: &TensorProductTerm, cluster: &[usize]) -> Result<Option<CMatrix>> {
    let cmask = cluster.iter().fold(0u64, |m, &q| m | 1 << q);
    let inside: Vec<(&[usize], &CMatrix)> = t
        .factors
        .iter()
        .filter(|f| f.support_mask() & cmask != 0)
        .map(|f| (f.qubits.as_slice(), &f.block))
        .collect();
    if inside.is_empty() {
        return Ok(None);
    }
    embed_factors(&inside, cluster).map(Some)
}

fn family_commutes(family: &[CMatrix]) -> bool {
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let scale = max_abs(&family[i]).max(max_abs(&family[j])).max(1.0);
            if commutator_norm(&family[i], &family[j]) > COMMUTATION_TOL * scale * scale {
                return false;
            }
        }
    }
    true
}

/// One unitary diagonalizing every member of a commuting family: the
/// eigenvectors of a random real combination, checked and retried once.
fn simultaneous_eigenbasis(family: &[CMatrix], rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    let dim = family[0].nrows();
    if family.iter().all(|m| max_abs_offdiag(m) == 0.0) {
        return Ok(CMatrix::identity(dim, dim));
    }
    if family.len() == 1 {
        return Ok(hermitian_eigen(&family[0])?.vectors);
    }
    let mut worst = f64::INFINITY;
    for _attempt in 0..2 {
        let mut mix = CMatrix::zeros(dim, dim);
        for m in family {
            let scale = max_abs(m);
            if scale > 0.0 {
                let w: f64 = rng.random_range(0.5..1.5);
                mix += m * Complex64::new(w / scale, 0.0);
            }
        }
        let v = hermitian_eigen(&mix)?.vectors;
        worst = family
            .iter()
            .map(|m| max_abs_offdiag(&(v.adjoint() * m * &v)) / max_abs(m).max(1.0))
            .fold(0.0, f64::max);
        if worst < DIAGONALIZATION_TOL * 1e-2 {
            return Ok(v);
        }
    }
    Err(Error::Constraint(format!(
        "no common eigenbasis found (relative off-diagonal residual {worst:.3e})"
    )))
}

/// Diagonalizes a commuting fragment with a tensor product of cluster unitaries.
///
/// Qubits are first grouped into clusters joined by shared factors. When the
/// restrictions of the terms to a cluster fail to commute (the fragment
/// commutes only as a whole, not factor by factor), that cluster is merged
/// with every cluster touched by the offending terms, until all families
/// commute. Each cluster family is then diagonalized simultaneously.
pub fn diagonalize_fragment(m: &Fragment, n: usize) -> Result<FragmentDiagonalization> {
    let mut parent: Vec<usize> = (0..n).collect();
    for t in &m.terms {
        for f in &t.factors {
            for w in f.qubits.windows(2) {
                union(&mut parent, w[0], w[1]);
            }
        }
    }
    let covered = m.support_mask();
    let clusters = loop {
        let clusters = clusters_of(&mut parent, covered);
        let mut merged = false;
        for cluster in &clusters {
            if cluster.len() > MAX_LOCAL_QUBITS {
                return Err(Error::Resource(format!(
                    "cluster of {} qubits exceeds cap of {MAX_LOCAL_QUBITS}",
                    cluster.len()
                )));
            }
            let mut family = Vec::new();
            let mut owners = Vec::new();
            for t in &m.terms {
                if let Some(r) = restriction(t, cluster)? {
                    family.push(r);
                    owners.push(t);
                }
            }
            if !family_commutes(&family) {
                let touched = owners.iter().fold(0u64, |acc, t| acc | t.support_mask());
                let qs = bits_of(touched);
                for w in qs.windows(2) {
                    union(&mut parent, w[0], w[1]);
                }
                let after = clusters_of(&mut parent, covered);
                if after.len() == clusters.len() {
                    return Err(Error::Constraint(format!(
                        "fragment {:?} has non-commuting terms on qubits {cluster:?}",
                        m.label
                    )));
                }
                merged = true;
                break;
            }
        }
        if !merged {
            break clusters;
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut units = Vec::with_capacity(clusters.len());
    for cluster in &clusters {
        let family: Vec<CMatrix> = m
            .terms
            .iter()
            .filter_map(|t| restriction(t, cluster).transpose())
            .collect::<Result<_>>()?;
        let v = simultaneous_eigenbasis(&family, &mut rng)?;
        units.push(ClusterUnitary {
            qubits: cluster.clone(),
            unitary: v,
        });
    }

    // per term, per cluster: rotated restriction; diagonal and off-diagonal bound
    let mut diagonal = vec![0.0; 1usize << n];
    let mut residual = 0.0;
    for t in &m.terms {
        let mut diags: Vec<(&[usize], Vec<f64>)> = Vec::new();
        let mut offs = Vec::new();
        let mut maxes = Vec::new();
        for u in &units {
            if let Some(r) = restriction(t, &u.qubits)? {
                let rot = u.unitary.adjoint() * r * &u.unitary;
                offs.push(max_abs_offdiag(&rot));
                maxes.push(max_abs(&rot));
                diags.push((u.qubits.as_slice(), (0..rot.nrows()).map(|i| rot[(i, i)].re).collect()));
            }
        }
        for c in 0..offs.len() {
            let others: f64 = maxes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != c)
                .map(|(_, m)| *m)
                .product();
            residual += offs[c] * others;
        }
        for (z, d) in diagonal.iter_mut().enumerate() {
            let mut v = 1.0;
            for (qs, dv) in &diags {
                let idx = qs.iter().enumerate().map(|(j, &q)| ((z >> q) & 1) << j).sum::<usize>();
                v *= dv[idx];
            }
            *d += v;
        }
    }
    Ok(FragmentDiagonalization {
        n,
        clusters: units,
        diagonal,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub reconstruction_error: f64,
    pub locality: LocalityCheck,
    pub commutation: CommutationCheck,
    pub diagonalization_residual: f64,
    /// Worst `|<psi|M|psi> - sum_z D(z)|(U^dagger psi)(z)|^2|` over the sampled states.
    pub expectation_error: f64,
    pub passed: bool,
}

/// Every check, with the fragment expectation identity sampled on `states` Haar states.
pub fn validate_partition(p: &Partition, h: &PauliSum, k: usize, states: usize) -> Result<ValidationReport> {
    let reconstruction_error = check_reconstruction(p, h)?;
    let locality = check_locality(p, k);
    let commutation = check_commutation(p)?;
    let mut diagonalization_residual: f64 = 0.0;
    let mut expectation_error: f64 = 0.0;
    let psis = (0..states as u64)
        .map(|s| crate::variance::random_state(p.n_qubits, 1000 + s))
        .collect::<Result<Vec<_>>>()?;
    for f in &p.fragments {
        let d = diagonalize_fragment(f, p.n_qubits)?;
        diagonalization_residual = diagonalization_residual.max(d.residual);
        for psi in &psis {
            let direct: f64 = f
                .apply(&psi.amplitudes)
                .iter()
                .zip(&psi.amplitudes)
                .map(|(v, a)| (a.conj() * v).re)
                .sum();
            expectation_error = expectation_error.max((direct - d.expectation(psi)).abs());
        }
    }
    let passed = reconstruction_error < RECONSTRUCTION_TOL
        && locality.ok
        && commutation.ok()
        && diagonalization_residual < DIAGONALIZATION_TOL
        && expectation_error < DIAGONALIZATION_TOL;
    Ok(ValidationReport {
        reconstruction_error,
        locality,
        commutation,
        diagonalization_residual,
        expectation_error,
        passed,
    })
}
