use super::{check_k, pauli_block, Fragment, Partition, Source, TensorFactor, TensorProductTerm};
use crate::error::{Caps, Result};
use crate::pauli::{bits_of, mask, PauliString, PauliSum};

/// Pauli strings sharing letters on every qubit outside a small free set.
#[derive(Debug, Clone)]
struct Matched {
    members: Vec<(PauliString, f64)>,
    /// Union of member supports.
    support: u64,
}

/// Qubits on which the letters of `members` (plus `extra`) are not all identical.
fn free_mask(members: &[(PauliString, f64)], extra: Option<&PauliString>) -> u64 {
    let mut it = members.iter().map(|m| &m.0).chain(extra);
    let first = match it.next() {
        Some(p) => *p,
        None => return 0,
    };
    it.fold(0, |acc, p| {
        acc | (p.x_bits() ^ first.x_bits()) | (p.z_bits() ^ first.z_bits())
    })
}

impl Matched {
    fn new(p: PauliString, c: f64) -> Self {
        Matched {
            members: vec![(p, c)],
            support: p.support_mask(),
        }
    }

    fn free_with(&self, p: &PauliString) -> u64 {
        free_mask(&self.members, Some(p))
    }

    /// Matched non-identity qubits become one-qubit factors; the free qubits
    /// form a single block carrying the coefficients.
    fn to_term(&self, n: usize, caps: &Caps) -> Result<TensorProductTerm> {
        if self.members.len() == 1 {
            let (p, c) = &self.members[0];
            return TensorProductTerm::from_pauli(*c, p);
        }
        let free = free_mask(&self.members, None);
        let free_qubits = bits_of(free);
        caps.check_dense(free_qubits.len())?;
        let reference = self.members[0].0;
        let mut factors = vec![TensorFactor::new(
            free_qubits.clone(),
            pauli_block(&self.members, &free_qubits),
        )?];
        for q in bits_of(reference.support_mask() & !free & mask(n)) {
            factors.push(TensorFactor::new(vec![q], reference.get(q).matrix())?);
        }
        TensorProductTerm::new(factors)
    }
}

/// Greedy k-NoCliD partitioning on the qubit Hamiltonian.
///
/// Terms are visited by descending `|c|`. In fragment order, a term joins the
/// first group whose free-qubit count stays `<= k` (and whose grown support
/// stays disjoint from the fragment's other groups); failing that it starts a
/// new group in that fragment if it is disjoint from all of them; failing
/// every fragment it opens a new one.
pub fn greedy_noclid(h: &PauliSum, k: usize) -> Result<Partition> {
    let n = h.n();
    check_k(k, n)?;
    let caps = Caps::from_env();
    let mut fragments: Vec<Vec<Matched>> = Vec::new();
    'terms: for (p, c) in h.sorted_terms() {
        let ps = p.support_mask();
        for frag in fragments.iter_mut() {
            for r in 0..frag.len() {
                if frag[r].free_with(&p).count_ones() as usize > k {
                    continue;
                }
                let grown = frag[r].support | ps;
                let clash = frag
                    .iter()
                    .enumerate()
                    .any(|(s, w)| s != r && w.support & grown != 0);
                if !clash {
                    frag[r].members.push((p, c));
                    frag[r].support = grown;
                    continue 'terms;
                }
            }
            if frag.iter().all(|w| w.support & ps == 0) {
                frag.push(Matched::new(p, c));
                continue 'terms;
            }
        }
        fragments.push(vec![Matched::new(p, c)]);
    }

    let mut out = Partition::new(n, h.constant(), Source::new("greedy").with_k(k));
    for (i, frag) in fragments.iter().enumerate() {
        out.fragments.push(Fragment {
            label: format!("greedy-{i}"),
            terms: frag.iter().map(|w| w.to_term(n, &caps)).collect::<Result<_>>()?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use num_complex::Complex64;

    fn sum(text: &str) -> PauliSum {
        PauliSum::from_text(text).unwrap()
    }

    #[test]
    fn valid_string_match() {
        // XXZ and XXY differ only on qubit 2
        let h = sum("1.0 X0 X1 Z2\n0.5 X0 X1 Y2\n");
        let p = greedy_noclid(&h, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.fragments[0].terms.len(), 1);
        let term = &p.fragments[0].terms[0];
        let free: Vec<_> = term.factors.iter().filter(|f| f.qubits == vec![2]).collect();
        assert_eq!(free.len(), 1);
        let want = Pauli::Z.matrix() * Complex64::new(1.0, 0.0) + Pauli::Y.matrix() * Complex64::new(0.5, 0.0);
        assert_eq!(free[0].block, want);
        assert!(term.to_pauli(3).unwrap().max_abs_difference(&h) < 1e-15);
    }

    #[test]
    fn invalid_string_match() {
        // IXXZ vs XXXY: mismatched on qubits 0 and 3
        let h = sum("1.0 X1 X2 Z3\n0.5 X0 X1 X2 Y3\n");
        assert_eq!(greedy_noclid(&h, 1).unwrap().len(), 2);
        assert_eq!(greedy_noclid(&h, 2).unwrap().len(), 1);
    }

    #[test]
    fn disjoint_terms_share_a_fragment() {
        let h = sum("1 X0\n0.5 Z1\n0.25 Y2 Y3\n");
        let p = greedy_noclid(&h, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.fragments[0].terms.len(), 3);
    }

    #[test]
    fn growth_may_not_overlap_a_sibling() {
        // X0 and Z1 start two groups; X0 Z1 could join {X0} with one free
        // qubit, but that would overlap {Z1}, so it opens fragment 1.
        let h = sum("1 X0\n0.9 Z1\n0.5 X0 Z1\n");
        let p = greedy_noclid(&h, 1).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn k_equals_n_gives_one_fragment() {
        let h = sum("1 X0 Y1\n-2 Z0 Z2\n0.5 Y1 Y2\n0.25 X0 X1 X2\n3\n");
        let p = greedy_noclid(&h, 3).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.fragments[0].terms.len(), 1);
        assert!(p.to_pauli().unwrap().max_abs_difference(&h) < 1e-14);
    }

    #[test]
    fn k_out_of_range() {
        let h = sum("1 X0 Y1\n");
        assert!(greedy_noclid(&h, 0).is_err());
        assert!(greedy_noclid(&h, 3).is_err());
    }
}
