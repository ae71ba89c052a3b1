use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operators::FermionOperator;

/// Consecutive rejected swaps before the search stops.
pub const DEFAULT_HALT_AFTER: usize = 5000;

/// `sum |t| (max index - min index)` over every term, with mode `m` relabelled `perm[m]`.
///
/// For one-body terms this is `|t_pq| |p - q|`.
pub fn ordering_cost(f: &FermionOperator, perm: &[usize]) -> f64 {
    f.terms
        .iter()
        .map(|t| {
            let (lo, hi) = t.ops.iter().fold((usize::MAX, 0), |(lo, hi), o| {
                let m = perm[o.mode];
                (lo.min(m), hi.max(m))
            });
            t.coefficient.abs() * (hi - lo) as f64
        })
        .sum()
}

/// Random pairwise swaps of mode labels, each kept only if the ordering cost
/// strictly decreases; stops after `halt_after` consecutive rejections.
///
/// Returns `(perm, cost)` where mode `m` should be relabelled `perm[m]`.
pub fn reorder_indices(f: &FermionOperator, seed: u64, halt_after: usize) -> Result<(Vec<usize>, f64)> {
    if halt_after == 0 {
        return Err(Error::domain("halt_after must be at least 1"));
    }
    let n = f.modes;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut cost = ordering_cost(f, &perm);
    if n < 2 {
        return Ok((perm, cost));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    while failures < halt_after {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        perm.swap(a, b);
        let trial = ordering_cost(f, &perm);
        if trial < cost {
            cost = trial;
            failures = 0;
        } else {
            perm.swap(a, b);
            failures += 1;
        }
    }
    Ok((perm, cost))
}
