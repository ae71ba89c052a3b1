//! Small dense complex linear algebra: qubit-indexed tensor products, local
//! operator application, Pauli projection and a Hermitian Jacobi eigensolver.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{ComplexPauliSum, PauliString};

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs_offdiag(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            if r != c {
                worst = worst.max(m[(r, c)].norm());
            }
        }
    }
    worst
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a * b - b * a))
}

/// Scatter offsets: `offsets[s]` is the register index whose bits on `qubits`
/// spell `s` (bit `j` of `s` on `qubits[j]`) and are zero elsewhere.
pub(crate) fn scatter_offsets(qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|s| {
            qubits
                .iter()
                .enumerate()
                .filter(|(j, _)| (s >> j) & 1 == 1)
                .map(|(_, &q)| 1usize << q)
                .sum()
        })
        .collect()
}

/// Tensor product of `factors` (each a block on its own qubit list) realized
/// on `target`, with identity on target qubits no factor covers.
///
/// Within each block, bit `j` of the row/column index refers to the factor's
/// `j`-th qubit. Factor supports must be disjoint subsets of `target`.
pub fn embed_factors(factors: &[(&[usize], &CMatrix)], target: &[usize]) -> Result<CMatrix> {
    let pos = |q: usize| target.iter().position(|&t| t == q);
    let mut covered = 0u64;
    let mut locs: Vec<Vec<usize>> = Vec::with_capacity(factors.len());
    for (qs, block) in factors {
        let dim = 1usize << qs.len();
        if block.nrows() != dim || block.ncols() != dim {
            return Err(Error::domain(format!(
                "block of size {}x{} does not match {} qubits",
                block.nrows(),
                block.ncols(),
                qs.len()
            )));
        }
        let mut l = Vec::with_capacity(qs.len());
        for &q in qs.iter() {
            let p = pos(q).ok_or_else(|| Error::domain(format!("qubit {q} outside target")))?;
            if covered & (1 << p) != 0 {
                return Err(Error::domain(format!("qubit {q} covered by two factors")));
            }
            covered |= 1 << p;
            l.push(p);
        }
        locs.push(l);
    }
    let m = target.len();
    let dim = 1usize << m;
    let free_mask = !covered & crate::pauli::mask(m);
    let extract = |idx: usize, l: &[usize]| -> usize {
        l.iter()
            .enumerate()
            .map(|(j, &p)| ((idx >> p) & 1) << j)
            .sum()
    };
    let mut out = CMatrix::zeros(dim, dim);
    for c in 0..dim {
        for r in 0..dim {
            if (r ^ c) as u64 & free_mask != 0 {
                continue;
            }
            let mut v = ONE;
            for ((_, block), l) in factors.iter().zip(&locs) {
                v *= block[(extract(r, l), extract(c, l))];
                if v == ZERO {
                    break;
                }
            }
            out[(r, c)] = v;
        }
    }
    Ok(out)
}

/// `out = (A on qubits) * state` for an `n`-qubit state vector.
pub fn apply_local(state: &[Complex64], qubits: &[usize], a: &CMatrix) -> Vec<Complex64> {
    let mut out = vec![ZERO; state.len()];
    apply_local_into(state, qubits, a, &mut out, ONE);
    out
}

/// `out += scale * (A on qubits) * state`.
pub fn apply_local_into(
    state: &[Complex64],
    qubits: &[usize],
    a: &CMatrix,
    out: &mut [Complex64],
    scale: Complex64,
) {
    let offsets = scatter_offsets(qubits);
    let qmask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let k = offsets.len();
    let mut sub = vec![ZERO; k];
    for base in 0..state.len() {
        if base & qmask != 0 {
            continue;
        }
        for (s, off) in offsets.iter().enumerate() {
            sub[s] = state[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = ZERO;
            for (c, v) in sub.iter().enumerate() {
                acc += a[(r, c)] * v;
            }
            out[base | off] += scale * acc;
        }
    }
}

/// Projects a `2^k x 2^k` matrix onto the Pauli basis:
/// `A = sum_P Tr(P A) / 2^k * P`. Coefficients with modulus `<= tol` are dropped.
pub fn pauli_decompose(a: &CMatrix, tol: f64) -> Result<ComplexPauliSum> {
    let dim = a.nrows();
    if dim != a.ncols() || !dim.is_power_of_two() {
        return Err(Error::domain(format!(
            "matrix of shape {}x{} is not a qubit operator",
            a.nrows(),
            a.ncols()
        )));
    }
    let k = dim.trailing_zeros() as usize;
    if k > 10 {
        return Err(Error::Resource(format!("Pauli projection of {k} qubits")));
    }
    let mut out = ComplexPauliSum::new(k);
    let norm = 1.0 / dim as f64;
    for x in 0..dim as u64 {
        for z in 0..dim as u64 {
            let p = PauliString::from_bits(k, x, z);
            // Tr(P A) = sum_j P[j^x, j] A[j, j^x]
            let mut tr = ZERO;
            for j in 0..dim {
                let (row, ph) = p.apply_basis(j);
                tr += ph * a[(j, row)];
            }
            let coef = tr * norm;
            if coef.norm() > tol {
                out.add(coef, p);
            }
        }
    }
    Ok(out)
}

/// Hermitian eigendecomposition result: `A = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
    pub off_norm: f64,
}

/// Cyclic complex Jacobi iteration for Hermitian matrices.
///
/// Terminates once the off-diagonal Frobenius norm falls below
/// `1e-12 * max(1, ||A||_F)`. Eigenvalues are returned in ascending order
/// with eigenvectors as the matching columns of `vectors`.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::domain("eigensolver needs a square matrix"));
    }
    let defect = hermiticity_defect(a);
    let scale = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    if defect > 1e-10 * scale {
        return Err(Error::domain(format!("matrix not Hermitian (defect {defect:.3e})")));
    }
    let mut m = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v = CMatrix::identity(n, n);
    let tol = 1e-12 * scale;
    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for c in 0..n {
            for r in 0..n {
                if r != c {
                    s += m[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    let mut off_norm = off(&m);
    while off_norm > tol {
        if sweeps >= 100 {
            return Err(Error::Constraint(format!(
                "Jacobi did not converge (off-diagonal norm {off_norm:.3e})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // phase e^{-i phi} makes the (p, q) entry real and positive
                let w = apq.conj() / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G restricted to (p, q): [[c, s], [-s w, c w]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = w * (-s);
                let g_qq = w * c;
                for r in 0..n {
                    let mp = m[(r, p)];
                    let mq = m[(r, q)];
                    m[(r, p)] = mp * g_pp + mq * g_qp;
                    m[(r, q)] = mp * g_pq + mq * g_qq;
                }
                for col in 0..n {
                    let mp = m[(p, col)];
                    let mq = m[(q, col)];
                    m[(p, col)] = g_pp.conj() * mp + g_qp.conj() * mq;
                    m[(q, col)] = g_pq.conj() * mp + g_qq.conj() * mq;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                for r in 0..n {
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = vp * g_pp + vq * g_qp;
                    v[(r, q)] = vp * g_pq + vq * g_qq;
                }
            }
        }
        off_norm = off(&m);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
        off_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let a = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
    }

    #[test]
    fn jacobi_matches_nalgebra_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 5, 8, 16] {
            let a = random_hermitian(n, &mut rng);
            let e = hermitian_eigen(&a).unwrap();
            let mut reference: Vec<f64> =
                a.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            reference.sort_by(f64::total_cmp);
            for (x, y) in e.values.iter().zip(&reference) {
                assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
            }
            let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                e.values.iter().map(|&x| Complex64::new(x, 0.0)),
            ));
            let recon = &e.vectors * d * e.vectors.adjoint();
            assert!(max_abs(&(recon - &a)) < 1e-10);
            let unit = e.vectors.adjoint() * &e.vectors;
            assert!(max_abs(&(unit - CMatrix::identity(n, n))) < 1e-12);
        }
    }

    #[test]
    fn jacobi_handles_degenerate_and_diagonal_input() {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        let e = hermitian_eigen(&d).unwrap();
        assert_eq!(e.sweeps, 0);
        assert_eq!(e.values, vec![-1.0, 2.0, 2.0]);
        let x = Pauli::X.matrix();
        let e = hermitian_eigen(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        assert!(hermitian_eigen(&m).is_err());
    }

    #[test]
    fn embed_respects_little_endian_blocks() {
        // block on qubits [0, 1] is kron(A_q1, A_q0)
        let x = Pauli::X.matrix();
        let z = Pauli::Z.matrix();
        let xz_on_10 = z.kronecker(&x); // X on qubit 0, Z on qubit 1
        let a = embed_factors(&[(&[0, 1], &xz_on_10)], &[0, 1, 2]).unwrap();
        let p: PauliString = "XZI".parse().unwrap();
        assert!(max_abs(&(a - p.to_dense())) < 1e-15);
        // non-contiguous factors
        let b = embed_factors(&[(&[2], &x), (&[0], &z)], &[0, 1, 2]).unwrap();
        let p: PauliString = "ZIX".parse().unwrap();
        assert!(max_abs(&(b - p.to_dense())) < 1e-15);
    }

    #[test]
    fn apply_local_matches_embedded_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(4, &mut rng);
        let psi: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let qubits = [3, 1];
        let full = embed_factors(&[(&qubits, &a)], &[0, 1, 2, 3]).unwrap();
        let want = &full * nalgebra::DVector::from_vec(psi.clone());
        let got = apply_local(&psi, &qubits, &a);
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).norm() < 1e-13);
        }
    }

    #[test]
    fn pauli_projection_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(8, &mut rng);
        let dec = pauli_decompose(&a, 0.0).unwrap();
        let mut back = CMatrix::zeros(8, 8);
        for (p, c) in dec.iter() {
            assert!(c.im.abs() < 1e-14, "Hermitian input has real coefficients");
            back += p.to_dense() * *c;
        }
        assert!(max_abs(&(back - a)) < 1e-13);
    }
}
