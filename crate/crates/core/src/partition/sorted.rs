use super::{Fragment, Partition, Source, TensorProductTerm};
use crate::error::Result;
use crate::pauli::{Commutation, PauliString, PauliSum};

/// Commuting-group baseline: visit terms by descending `|c|` and insert each
/// into the first group it commutes with (under `kind`), else open a new group.
pub fn sorted_insertion(h: &PauliSum, kind: Commutation) -> Result<Partition> {
    let groups = sorted_groups(&h.sorted_terms(), kind)?;
    let method = match kind {
        Commutation::Qubitwise => "qwc-si",
        Commutation::Full => "fc-si",
    };
    let mut p = Partition::new(h.n(), h.constant(), Source::new(method));
    p.fragments = groups_to_fragments(&groups, method)?;
    Ok(p)
}

pub(crate) fn sorted_groups(
    terms: &[(PauliString, f64)],
    kind: Commutation,
) -> Result<Vec<Vec<(PauliString, f64)>>> {
    let mut groups: Vec<Vec<(PauliString, f64)>> = Vec::new();
    'terms: for (p, c) in terms {
        for g in groups.iter_mut() {
            let mut ok = true;
            for (q, _) in g.iter() {
                if !p.commutes(q, kind)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                g.push((*p, *c));
                continue 'terms;
            }
        }
        groups.push(vec![(*p, *c)]);
    }
    Ok(groups)
}

pub(crate) fn groups_to_fragments(
    groups: &[Vec<(PauliString, f64)>],
    prefix: &str,
) -> Result<Vec<Fragment>> {
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            Ok(Fragment {
                label: format!("{prefix}-{i}"),
                terms: g
                    .iter()
                    .map(|(p, c)| TensorProductTerm::from_pauli(*c, p))
                    .collect::<Result<_>>()?,
            })
        })
        .collect()
}
