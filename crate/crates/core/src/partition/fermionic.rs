use super::{pauli_block, Fragment, Partition, Source, TensorFactor, TensorProductTerm};
use crate::encodings::jordan_wigner;
use crate::error::{Error, Result};
use crate::operators::FermionOperator;
use crate::pauli::PauliString;

/// Two 2-local bases for the open-chain spinless Fermi-Hubbard model.
///
/// Fragment 0 holds one block per bond `(0,1), (2,3), ...`, fragment 1 one per
/// bond `(1,2), (3,4), ...`. Every two-qubit piece of the Jordan-Wigner image
/// goes to its bond's block; single-`Z` pieces go to the fragment-0 block
/// covering that qubit (fragment 1 for the last site of an odd chain);
/// the identity goes to the partition constant.
pub fn color_partition_fermi_hubbard_1d(f: &FermionOperator, sites: usize) -> Result<Partition> {
    if f.modes != sites {
        return Err(Error::domain(format!("operator has {} modes, expected {sites}", f.modes)));
    }
    if sites < 2 {
        return Err(Error::domain("a chain needs at least two sites"));
    }
    let h = jordan_wigner(f)?;
    let mut bonds: Vec<Vec<(PauliString, f64)>> = vec![Vec::new(); sites - 1];
    for (p, c) in h.sorted_terms() {
        let s = p.support();
        let bond = match s.as_slice() {
            &[i, j] if j == i + 1 => i,
            &[i] if i % 2 == 0 && i + 1 < sites => i,
            &[i] => i - 1,
            _ => {
                return Err(Error::domain(format!(
                    "term {} is not nearest-neighbour on an open chain",
                    p.sparse_label()
                )))
            }
        };
        bonds[bond].push((p, c));
    }
    let mut out = Partition::new(sites, h.constant(), Source::new("fh1d-coloring").with_k(2));
    let mut frags = [Fragment::new("fh1d-0"), Fragment::new("fh1d-1")];
    for (i, members) in bonds.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let qubits = vec![i, i + 1];
        let factor = TensorFactor::new(qubits.clone(), pauli_block(members, &qubits))?;
        frags[i % 2].terms.push(TensorProductTerm::new(vec![factor])?);
    }
    out.fragments.extend(frags);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Caps;
    use crate::linalg::max_abs;
    use crate::operators::{build_fermi_hubbard, Boundary, Lattice, LadderOp};

    #[test]
    fn any_chain_length_gives_two_bases() {
        let caps = Caps::default();
        for sites in 2..8 {
            let lat = Lattice::chain(sites, Boundary::Open).unwrap();
            let f = build_fermi_hubbard(&lat, 1.0, 2.0).unwrap();
            let p = color_partition_fermi_hubbard_1d(&f, sites).unwrap();
            assert_eq!(p.len(), 2);
            assert_eq!(p.max_width(), 2);
            let h = jordan_wigner(&f).unwrap();
            let err = max_abs(&(p.to_pauli().unwrap().to_dense(&caps).unwrap() - h.to_dense(&caps).unwrap()));
            assert!(err < 1e-12, "{sites}: {err}");
        }
    }

    #[test]
    fn non_chain_rejected() {
        let lat = Lattice::chain(4, Boundary::Periodic).unwrap();
        let f = build_fermi_hubbard(&lat, 1.0, 2.0).unwrap();
        assert!(color_partition_fermi_hubbard_1d(&f, 4).is_err());
        let mut g = FermionOperator::new(3);
        g.add_term(1.0, vec![LadderOp::create(0), LadderOp::annihilate(2)]).unwrap();
        g.add_term(1.0, vec![LadderOp::create(2), LadderOp::annihilate(0)]).unwrap();
        assert!(color_partition_fermi_hubbard_1d(&g, 3).is_err());
        assert!(color_partition_fermi_hubbard_1d(&g, 4).is_err());
    }
}
