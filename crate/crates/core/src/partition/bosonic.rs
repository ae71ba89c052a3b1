use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{edge_coloring, Fragment, Partition, Source, TensorFactor, TensorProductTerm};
use crate::encodings::{gray_map, mode_qubit_sets, GrayMap};
use crate::error::{Error, Result};
use crate::linalg::{embed_factors, max_abs, CMatrix};
use crate::operators::{boson_matrices, BosonMatrices, BosonOperator, BosonSymbol, Lattice};

/// A Bose-Hubbard operator split into hopping amplitudes and on-site terms.
struct HubbardParts {
    /// `(i, j) -> c` for a term `c b_i^dagger b_j`.
    hops: BTreeMap<(usize, usize), f64>,
    /// On-site terms, each a product of `n` symbols on one mode.
    onsite: BTreeMap<usize, Vec<(f64, usize)>>,
}

fn split_hubbard(b: &BosonOperator, lat: &Lattice) -> Result<HubbardParts> {
    use BosonSymbol::*;
    if b.modes != lat.sites {
        return Err(Error::domain(format!(
            "operator has {} modes but the lattice has {} sites",
            b.modes, lat.sites
        )));
    }
    let mut parts = HubbardParts {
        hops: BTreeMap::new(),
        onsite: BTreeMap::new(),
    };
    for term in &b.terms {
        match term.factors.as_slice() {
            &[(i, Raise), (j, Lower)] if i != j => {
                if !lat.has_edge(i, j) {
                    return Err(Error::domain(format!("hopping between {i} and {j} is not a lattice edge")));
                }
                *parts.hops.entry((i, j)).or_insert(0.0) += term.coefficient;
            }
            f if !f.is_empty() && f.iter().all(|&(m, s)| m == f[0].0 && s == Number) => {
                parts
                    .onsite
                    .entry(f[0].0)
                    .or_default()
                    .push((term.coefficient, f.len()));
            }
            _ => {
                return Err(Error::domain(format!(
                    "term {:?} is not of Bose-Hubbard form",
                    term.factors
                )))
            }
        }
    }
    for (&(i, j), &c) in &parts.hops {
        let back = parts.hops.get(&(j, i)).copied().unwrap_or(0.0);
        if (c - back).abs() > 1e-12 * c.abs().max(1.0) {
            return Err(Error::domain(format!("hopping {i}->{j} has no matching conjugate")));
        }
    }
    Ok(parts)
}

fn scaled(m: &CMatrix, c: f64) -> CMatrix {
    m * Complex64::new(c, 0.0)
}

/// One term per site: the encoded on-site polynomial on that mode's qubits.
fn onsite_fragment(
    parts: &HubbardParts,
    mats: &BosonMatrices,
    gray: &GrayMap,
    mode_qubits: &[Vec<usize>],
    label: &str,
) -> Result<Fragment> {
    let mut frag = Fragment::new(label);
    for (&site, pieces) in &parts.onsite {
        let mut local = CMatrix::zeros(mats.d, mats.d);
        for &(c, power) in pieces {
            let mut m = CMatrix::identity(mats.d, mats.d);
            for _ in 0..power {
                m *= &mats.n;
            }
            local += scaled(&m, c);
        }
        if max_abs(&local) == 0.0 {
            continue;
        }
        let block = gray.embed(&local)?;
        frag.terms.push(TensorProductTerm::new(vec![TensorFactor::new(
            mode_qubits[site].clone(),
            block,
        )?])?);
    }
    Ok(frag)
}

/// One fragment per edge color, each holding the encoded two-mode hopping
/// blocks of that color's edges, plus one fragment of on-site terms.
///
/// Always returns `n_c + 1` fragments; the on-site fragment may be empty.
pub fn color_partition_bose_hubbard(b: &BosonOperator, lat: &Lattice) -> Result<Partition> {
    let parts = split_hubbard(b, lat)?;
    let gray = gray_map(b.d)?;
    let mats = boson_matrices(b.d)?;
    let mode_qubits = mode_qubit_sets(b.modes, gray.k_mode);
    let (lo, hi) = (gray.embed(&mats.b)?, gray.embed(&mats.bdag)?);
    let colors = edge_coloring(lat);
    let mut out = Partition::new(
        b.modes * gray.k_mode,
        b.constant,
        Source::new("coloring").with_k(2 * gray.k_mode),
    );
    for (ci, class) in colors.iter().enumerate() {
        let mut frag = Fragment::new(format!("coloring-{ci}"));
        for &(i, j) in class {
            let c_ij = parts.hops.get(&(i, j)).copied().unwrap_or(0.0);
            let c_ji = parts.hops.get(&(j, i)).copied().unwrap_or(0.0);
            if c_ij == 0.0 && c_ji == 0.0 {
                continue;
            }
            let (qi, qj) = (&mode_qubits[i], &mode_qubits[j]);
            let union: Vec<usize> = qi.iter().chain(qj).copied().collect();
            let block = embed_factors(&[(qi, &scaled(&hi, c_ij)), (qj, &lo)], &union)?
                + embed_factors(&[(qj, &scaled(&hi, c_ji)), (qi, &lo)], &union)?;
            frag.terms
                .push(TensorProductTerm::new(vec![TensorFactor::new(union, block)?])?);
        }
        out.fragments.push(frag);
    }
    out.fragments
        .push(onsite_fragment(&parts, &mats, &gray, &mode_qubits, "coloring-onsite")?);
    Ok(out)
}

/// Three bases for Bose-Hubbard on any lattice, using
/// `b_i^dagger b_j + b_j^dagger b_i = q_i q_j + p_i p_j`.
///
/// `M_q` holds every `-t q_i q_j`, `M_p` every `-t p_i p_j`, and `M_n` the
/// diagonal on-site terms. All factors act on a single mode.
pub fn qpn_partition(b: &BosonOperator, lat: &Lattice) -> Result<Partition> {
    let parts = split_hubbard(b, lat)?;
    let gray = gray_map(b.d)?;
    let mats = boson_matrices(b.d)?;
    let mode_qubits = mode_qubit_sets(b.modes, gray.k_mode);
    let (q, p) = (gray.embed(&mats.q)?, gray.embed(&mats.p)?);
    let mut out = Partition::new(
        b.modes * gray.k_mode,
        b.constant,
        Source::new("qpn").with_k(gray.k_mode),
    );
    let mut mq = Fragment::new("qpn-q");
    let mut mp = Fragment::new("qpn-p");
    for (&(i, j), &c) in &parts.hops {
        if i > j || c == 0.0 {
            continue;
        }
        for (frag, m) in [(&mut mq, &q), (&mut mp, &p)] {
            frag.terms.push(TensorProductTerm::new(vec![
                TensorFactor::new(mode_qubits[i].clone(), scaled(m, c))?,
                TensorFactor::new(mode_qubits[j].clone(), m.clone())?,
            ])?);
        }
    }
    out.fragments.push(mq);
    out.fragments.push(mp);
    out.fragments
        .push(onsite_fragment(&parts, &mats, &gray, &mode_qubits, "qpn-n")?);
    Ok(out)
}

/// Two bases for vibrational Hamiltonians: every `q`-only term in `M_q`, every
/// `p`-only term in `M_p`. Each term is a product of one-mode blocks.
pub fn qp_partition_vibrational(v: &BosonOperator) -> Result<Partition> {
    use BosonSymbol::*;
    let gray = gray_map(v.d)?;
    let mats = boson_matrices(v.d)?;
    let mode_qubits = mode_qubit_sets(v.modes, gray.k_mode);
    let mut out = Partition::new(
        v.modes * gray.k_mode,
        v.constant,
        Source::new("qp").with_k(gray.k_mode),
    );
    let mut mq = Fragment::new("qp-q");
    let mut mp = Fragment::new("qp-p");
    for term in &v.terms {
        let frag = if term.factors.iter().all(|f| f.1 == Position) {
            &mut mq
        } else if term.factors.iter().all(|f| f.1 == Momentum) {
            &mut mp
        } else {
            return Err(Error::domain(format!(
                "term {:?} mixes symbols; only pure q or pure p products are allowed",
                term.factors
            )));
        };
        let factors = term
            .modes()
            .iter()
            .enumerate()
            .map(|(idx, &m)| {
                let local = term.mode_matrix(m, &mats);
                let c = if idx == 0 { term.coefficient } else { 1.0 };
                TensorFactor::new(mode_qubits[m].clone(), gray.embed(&scaled(&local, c))?)
            })
            .collect::<Result<_>>()?;
        frag.terms.push(TensorProductTerm::new(factors)?);
    }
    out.fragments.push(mq);
    out.fragments.push(mp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::encode_boson_operator;
    use crate::error::Caps;
    use crate::operators::{build_bose_hubbard, build_vibrational, Boundary};
    use crate::pauli::PauliString;

    fn reconstruction(p: &Partition, b: &BosonOperator) -> f64 {
        let h = encode_boson_operator(b).unwrap().pauli;
        let caps = Caps::default();
        let got = p.to_pauli().unwrap().to_dense(&caps).unwrap();
        max_abs(&(got - h.to_dense(&caps).unwrap()))
    }

    #[test]
    fn bose_hubbard_coloring_counts() {
        let lat = Lattice::chain(2, Boundary::Open).unwrap();
        let b = build_bose_hubbard(&lat, 1.0, 2.0, 4).unwrap();
        let p = color_partition_bose_hubbard(&b, &lat).unwrap();
        assert_eq!(p.len(), 2);
        assert!(reconstruction(&p, &b) < 1e-12);

        let lat = Lattice::chain(4, Boundary::Open).unwrap();
        let b = build_bose_hubbard(&lat, 1.0, 2.0, 2).unwrap();
        let p = color_partition_bose_hubbard(&b, &lat).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.max_width(), 2);
        assert!(reconstruction(&p, &b) < 1e-12);
    }

    #[test]
    fn qpn_on_all_to_all() {
        let lat = Lattice::complete(4).unwrap();
        let b = build_bose_hubbard(&lat, 0.7, 1.3, 3).unwrap();
        let p = qpn_partition(&b, &lat).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.max_width(), 2);
        assert!(reconstruction(&p, &b) < 1e-12);
    }

    #[test]
    fn qpn_single_edge_d2_is_xx() {
        let lat = Lattice::chain(2, Boundary::Open).unwrap();
        let b = build_bose_hubbard(&lat, 1.0, 0.0, 2).unwrap();
        let p = qpn_partition(&b, &lat).unwrap();
        let mq = p.fragments[0].to_pauli(2).unwrap();
        assert_eq!(mq.len(), 1);
        let xx: PauliString = "XX".parse().unwrap();
        assert!((mq.coefficient(&xx) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn mismatched_lattice_rejected() {
        let lat = Lattice::chain(3, Boundary::Open).unwrap();
        let b = build_bose_hubbard(&lat, 1.0, 1.0, 2).unwrap();
        let other = Lattice::chain(4, Boundary::Open).unwrap();
        assert!(qpn_partition(&b, &other).is_err());
        let tri = Lattice::new(crate::operators::LatticeKind::Custom, 3, [(0, 2)], Boundary::Open).unwrap();
        assert!(color_partition_bose_hubbard(&b, &tri).is_err());
    }

    #[test]
    fn vibrational_two_bases() {
        let mut couplings = BTreeMap::new();
        couplings.insert(vec![0, 0, 1], 0.1);
        couplings.insert(vec![0, 1, 2, 2], -0.05);
        let v = build_vibrational(&[1.0, 1.5, 2.0], &couplings, 4).unwrap();
        let p = qp_partition_vibrational(&v).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.fragments[0].terms.len(), 5);
        assert_eq!(p.fragments[1].terms.len(), 3);
        assert_eq!(p.max_width(), 2);
        assert!(reconstruction(&p, &v) < 1e-12);

        let harmonic = build_vibrational(&[1.0, 2.0, 3.0], &BTreeMap::new(), 3).unwrap();
        let p = qp_partition_vibrational(&harmonic).unwrap();
        assert_eq!((p.fragments[0].terms.len(), p.fragments[1].terms.len()), (3, 3));
    }

    #[test]
    fn vibrational_rejects_mixed_terms() {
        let mut v = BosonOperator::new(2, 2).unwrap();
        v.add_term(1.0, vec![(0, BosonSymbol::Position), (1, BosonSymbol::Momentum)]).unwrap();
        assert!(qp_partition_vibrational(&v).is_err());
    }
}
