use super::sorted::{groups_to_fragments, sorted_groups};
use super::{check_k, pauli_block, Fragment, Partition, Source, TensorFactor, TensorProductTerm};
use crate::error::Result;
use crate::pauli::{Commutation, PauliString, PauliSum};

/// Contiguous windows `{o..o+k-1}, {o+k..o+2k-1}, ...` with a short trailing window.
pub(crate) fn windows(n: usize, k: usize, offset: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = offset;
    while start < n {
        let end = (start + k).min(n);
        out.push((start..end).collect());
        start = end;
    }
    out
}

fn window_mask(w: &[usize]) -> u64 {
    w.iter().fold(0, |m, &q| m | 1 << q)
}

/// Blocking with residuals.
///
/// Basis `o` (for `o = 0..k`) tiles the register into contiguous windows
/// starting at qubit `o`. Each term goes to the earliest basis in which its
/// support fits inside one window; each window's terms form one block.
/// Terms that fit nowhere are grouped by full-commutation sorted insertion.
/// Bases that receive no terms are dropped.
pub fn blocking_noclid(h: &PauliSum, k: usize) -> Result<Partition> {
    let n = h.n();
    check_k(k, n)?;
    let bases: Vec<Vec<Vec<usize>>> = (0..k).map(|o| windows(n, k, o)).collect();
    let mut assigned: Vec<Vec<Vec<(PauliString, f64)>>> =
        bases.iter().map(|b| vec![Vec::new(); b.len()]).collect();
    let mut residual = Vec::new();
    'terms: for (p, c) in h.sorted_terms() {
        let s = p.support_mask();
        for (o, basis) in bases.iter().enumerate() {
            if let Some(w) = basis.iter().position(|w| s & !window_mask(w) == 0) {
                assigned[o][w].push((p, c));
                continue 'terms;
            }
        }
        residual.push((p, c));
    }

    let mut out = Partition::new(n, h.constant(), Source::new("blocking").with_k(k));
    for (o, basis) in bases.iter().enumerate() {
        let mut frag = Fragment::new(format!("blocking-{o}"));
        for (w, members) in basis.iter().zip(&assigned[o]) {
            if members.is_empty() {
                continue;
            }
            let factor = TensorFactor::new(w.clone(), pauli_block(members, w))?;
            frag.terms.push(TensorProductTerm::new(vec![factor])?);
        }
        if !frag.terms.is_empty() {
            out.fragments.push(frag);
        }
    }
    let groups = sorted_groups(&residual, Commutation::Full)?;
    out.fragments
        .extend(groups_to_fragments(&groups, "blocking-residual")?);
    Ok(out)
}
