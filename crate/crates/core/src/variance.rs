//! Exact measurement variances on state vectors.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Caps, Error, Result};
use crate::partition::{Fragment, Partition};
use crate::pauli::PauliSum;

/// Variances below zero by at most this much are rounding and clamp to zero.
pub const NEGATIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
    /// How the state was made, e.g. `haar:7` or `basis:0`.
    pub label: String,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on a zero vector or wrong length.
    pub fn from_amplitudes(n: usize, mut amplitudes: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if amplitudes.len() != 1usize << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("state has zero or non-finite norm"));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(StateVector {
            n,
            amplitudes,
            label: label.into(),
        })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn seed(&self) -> Option<u64> {
        self.label.strip_prefix("haar:").and_then(|s| s.parse().ok())
    }
}

/// Haar-random state: independent standard complex Gaussian amplitudes, normalized.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    Caps::from_env().check_sparse(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    StateVector::from_amplitudes(n, amps, format!("haar:{seed}"))
}

/// Computational basis state `|index>` (bit `j` of `index` is qubit `j`).
pub fn basis_state(n: usize, index: usize) -> Result<StateVector> {
    Caps::from_env().check_sparse(n)?;
    if index >= 1usize << n {
        return Err(Error::domain(format!("basis index {index} out of range for {n} qubits")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[index] = Complex64::new(1.0, 0.0);
    StateVector::from_amplitudes(n, amps, format!("basis:{index}"))
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        len if len <= 8 => xs.iter().sum(),
        len => {
            let (a, b) = xs.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// `Var = <psi|M^2|psi> - <psi|M|psi>^2` given `v = M psi`.
///
/// Evaluated as `|| v - <M> psi ||^2`, which equals the above for Hermitian
/// `M` and cannot go negative through cancellation. A non-real expectation
/// value signals a non-Hermitian operator and is an error.
fn variance_from_image(psi: &[Complex64], v: &[Complex64]) -> Result<f64> {
    let mean: Complex64 = psi.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let scale = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    if mean.im.abs() > 1e-9 * scale {
        return Err(Error::Constraint(format!(
            "expectation value has imaginary part {:.3e}; operator is not Hermitian",
            mean.im
        )));
    }
    let m = mean.re;
    let var: f64 = psi.iter().zip(v).map(|(a, b)| (b - a * m).norm_sqr()).sum();
    clamp(var)
}

fn clamp(var: f64) -> Result<f64> {
    if var >= 0.0 {
        Ok(var)
    } else if var >= -NEGATIVE_TOL {
        Ok(0.0)
    } else {
        Err(Error::Constraint(format!("negative variance {var:.3e}")))
    }
}

fn check_n(expected: usize, psi: &StateVector) -> Result<()> {
    if psi.n != expected {
        return Err(Error::domain(format!(
            "operator on {expected} qubits applied to a {}-qubit state",
            psi.n
        )));
    }
    Ok(())
}

/// Var[H] on `psi`, matrix-free through the Pauli terms.
pub fn pauli_sum_variance(h: &PauliSum, psi: &StateVector) -> Result<f64> {
    check_n(h.n(), psi)?;
    let mut centered = h.clone();
    centered.set_constant(0.0);
    let v = centered.apply(&psi.amplitudes)?;
    variance_from_image(&psi.amplitudes, &v)
}

/// How a fragment is applied to a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Pauli expansion for pure Pauli groups, factor blocks otherwise.
    Auto,
    /// Expand into Pauli strings and apply them term by term.
    Pauli,
    /// Apply each tensor factor block on its own qubits.
    Blocks,
}

pub fn fragment_variance_with(m: &Fragment, n: usize, psi: &StateVector, route: Route) -> Result<f64> {
    check_n(n, psi)?;
    let route = match route {
        Route::Auto if m.is_pauli_group() => Route::Pauli,
        Route::Auto => Route::Blocks,
        r => r,
    };
    let v = match route {
        Route::Pauli => m.to_pauli(n)?.apply(&psi.amplitudes)?,
        _ => m.apply(&psi.amplitudes),
    };
    variance_from_image(&psi.amplitudes, &v)
}

/// Var[M] on `psi` for a fragment of an `n`-qubit partition.
pub fn fragment_variance(m: &Fragment, n: usize, psi: &StateVector) -> Result<f64> {
    fragment_variance_with(m, n, psi, Route::Auto)
}

/// Per-fragment variances and `eps^2 N = (sum_q sqrt Var[M_q])^2` for one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub method: String,
    pub state: String,
    pub fragment_count: usize,
    pub per_fragment: Vec<f64>,
    pub total: f64,
}

/// `(sum_q sqrt v_q)^2`.
pub fn shot_total(per_fragment: &[f64]) -> f64 {
    let roots: Vec<f64> = per_fragment.iter().map(|v| v.max(0.0).sqrt()).collect();
    pairwise_sum(&roots).powi(2)
}

pub fn partition_cost(p: &Partition, psi: &StateVector) -> Result<VarianceReport> {
    check_n(p.n_qubits, psi)?;
    let per_fragment = p
        .fragments
        .iter()
        .map(|f| fragment_variance(f, p.n_qubits, psi))
        .collect::<Result<Vec<_>>>()?;
    Ok(VarianceReport {
        method: p.source.method.clone(),
        state: psi.label.clone(),
        fragment_count: p.fragments.len(),
        total: shot_total(&per_fragment),
        per_fragment,
    })
}

/// Var[H]: the single-fragment value, below every partition's total.
pub fn lower_bound(h: &PauliSum, psi: &StateVector) -> Result<f64> {
    pauli_sum_variance(h, psi)
}

/// `eps^2 N` for `H_eta = eta X + sqrt(1 - eta^2) Z` on
/// `|psi_alpha> = alpha|0> + sqrt(1 - alpha^2)|1>`, measured either as two
/// Pauli bases (`X` and `Z`) or in the single eigenbasis of `H_eta`.
///
/// Returns `(N_GPB, N_RB)`.
pub fn rotated_basis_demo(eta: f64, alpha: f64) -> Result<(f64, f64)> {
    for (name, v) in [("eta", eta), ("alpha", alpha)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::domain(format!("{name} = {v} outside [0, 1]")));
        }
    }
    let c = Complex64::new;
    let psi = StateVector::from_amplitudes(
        1,
        vec![c(alpha, 0.0), c((1.0 - alpha * alpha).max(0.0).sqrt(), 0.0)],
        format!("alpha:{alpha}"),
    )?;
    let s = (1.0 - eta * eta).max(0.0).sqrt();
    let x = PauliSum::from_text("# n_qubits = 1\n1 X0\n")?;
    let z = PauliSum::from_text("# n_qubits = 1\n1 Z0\n")?;
    let mut h = x.scaled(eta);
    h.add_sum(&z, s)?;
    let gpb = (eta * pauli_sum_variance(&x, &psi)?.sqrt() + s * pauli_sum_variance(&z, &psi)?.sqrt()).powi(2);
    let rb = pauli_sum_variance(&h, &psi)?;
    Ok((gpb, rb))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Row {
    pub eta: f64,
    pub alpha: f64,
    pub n_gpb: f64,
    pub n_rb: f64,
}

impl Theorem1Row {
    pub fn violates(&self, tol: f64) -> bool {
        self.n_rb > self.n_gpb + tol
    }
}

/// `rotated_basis_demo` on the uniform `resolution x resolution` grid over `[0, 1]^2`.
pub fn theorem1_grid(resolution: usize) -> Result<Vec<Theorem1Row>> {
    if resolution < 2 {
        return Err(Error::domain("grid resolution must be at least 2"));
    }
    let step = |i: usize| i as f64 / (resolution - 1) as f64;
    let mut rows = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            rows.push(theorem1_row(step(i), step(j))?);
        }
    }
    Ok(rows)
}

pub fn theorem1_row(eta: f64, alpha: f64) -> Result<Theorem1Row> {
    let (n_gpb, n_rb) = rotated_basis_demo(eta, alpha)?;
    Ok(Theorem1Row {
        eta,
        alpha,
        n_gpb,
        n_rb,
    })
}
