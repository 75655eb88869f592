//! Projections, partial sums and the thresholding greedy algorithm.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::norms::NormOracle;
use crate::{Error, Index, IndexSet, Result, SparseVector};

/// Largest support accepted by [`sigma_tilde`].
pub const SIGMA_TILDE_CAP: usize = 20;

/// `Lambda_m(x)` together with the threshold modulus and whether a tie had to be broken.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub greedy_set: IndexSet,
    /// The `m`-th largest modulus (`+inf` for `m = 0`).
    pub threshold: f64,
    /// Some index outside the greedy set has modulus equal to the threshold.
    pub tie_broken: bool,
}

/// What to do when `m` exceeds the support size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Padding {
    #[default]
    Off,
    /// Extend with the smallest indices outside the support (zero coefficients).
    Zero,
}

/// `P_A(x)`.
pub fn project(x: &SparseVector, a: &IndexSet) -> SparseVector {
    SparseVector::from_pairs(x.iter().filter(|&(n, _)| a.contains(n)))
}

/// `P_{A^c}(x) = x - P_A(x)`, built by filtering so no subtraction happens.
pub fn project_complement(x: &SparseVector, a: &IndexSet) -> SparseVector {
    SparseVector::from_pairs(x.iter().filter(|&(n, _)| !a.contains(n)))
}

/// `S_m(x) = P_{{1..m}}(x)`.
pub fn partial_sum(x: &SparseVector, m: Index) -> SparseVector {
    SparseVector::from_pairs(x.iter().take_while(|&(n, _)| n <= m))
}

pub fn greedy_set(x: &SparseVector, m: usize) -> Result<GreedyOutcome> {
    greedy_set_with(x, m, Padding::Off)
}

/// Moduli sorted decreasingly, ties toward the smaller index.
fn greedy_order(x: &SparseVector) -> Vec<(Index, f64)> {
    let mut entries: Vec<(Index, f64)> = x.iter().map(|(n, v)| (n, v.abs())).collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    entries
}

pub fn greedy_set_with(x: &SparseVector, m: usize, padding: Padding) -> Result<GreedyOutcome> {
    let support = x.len();
    if m > support && padding == Padding::Off {
        return Err(Error::InsufficientSupport { requested: m, support });
    }
    if m == 0 {
        return Ok(GreedyOutcome { greedy_set: IndexSet::empty(), threshold: f64::INFINITY, tie_broken: false });
    }
    let order = greedy_order(x);
    if m > support {
        let mut chosen: Vec<Index> = order.iter().map(|e| e.0).collect();
        let mut n = Index::ONE;
        while chosen.len() < m {
            if x.coefficient(n) == 0.0 {
                chosen.push(n);
            }
            n = n + Index::ONE;
        }
        // Any unused index could have been padded in instead.
        return Ok(GreedyOutcome { greedy_set: IndexSet::from_indices(chosen), threshold: 0.0, tie_broken: true });
    }
    let threshold = order[m - 1].1;
    let tie_broken = order.get(m).is_some_and(|e| e.1 == threshold);
    let greedy_set = IndexSet::from_indices(order[..m].iter().map(|e| e.0).collect());
    Ok(GreedyOutcome { greedy_set, threshold, tie_broken })
}

/// `G_m(x) = P_{Lambda_m(x)}(x)`.
pub fn greedy_approximant(x: &SparseVector, m: usize) -> Result<SparseVector> {
    Ok(project(x, &greedy_set(x, m)?.greedy_set))
}

/// `||x - G_m(x)||`.
pub fn greedy_residual(x: &SparseVector, m: usize, norm: &dyn NormOracle) -> Result<f64> {
    let g = greedy_set(x, m)?;
    norm.eval(&project_complement(x, &g.greedy_set))
}

/// `sigma~_m(x) = min { ||x - P_A(x)|| : A subset of supp x, |A| <= m }` with a minimizer.
///
/// Sets are scanned by size and then lexicographically; the first strict minimum wins.
pub fn sigma_tilde(x: &SparseVector, m: usize, norm: &dyn NormOracle) -> Result<(f64, IndexSet)> {
    let support = x.support();
    if support.len() > SIGMA_TILDE_CAP {
        return Err(Error::BruteForceCapExceeded { size: support.len(), cap: SIGMA_TILDE_CAP });
    }
    let mut best = (norm.eval(x)?, IndexSet::empty());
    for size in 1..=m.min(support.len()) {
        for combo in support.iter().combinations(size) {
            let a = IndexSet::from_indices(combo);
            let v = norm.eval(&project_complement(x, &a))?;
            if v < best.0 {
                best = (v, a);
            }
        }
    }
    Ok(best)
}
