use std::collections::BTreeMap;
use std::sync::Arc;

use crate::constructions::Lemma510Construction;
use crate::families::GapSequence;
use crate::greedy::project;
use crate::norms::{l2, linf, NormOracle};
use crate::{Error, Index, IndexSet, Result, SparseVector};

/// Max of four seminorm families:
///
/// 1. `||x||_inf`;
/// 2. `sup { ||P_A x||_2 : |A|^2 < min A }`;
/// 3. `sup_m max_{k<=m} |sum_{n<=k} x_{m^2+n} / n^{1/2}|`;
/// 4. `sup_{j,l} ||P_{(j + I_{r_l}) \ F_{j,l}} x||_2`.
#[derive(Clone, Debug)]
pub struct Lemma510Norm {
    c: Arc<Lemma510Construction>,
}

impl Lemma510Norm {
    pub fn new(c: Arc<Lemma510Construction>) -> Self {
        Lemma510Norm { c }
    }

    pub fn construction(&self) -> &Lemma510Construction {
        &self.c
    }

    /// All four branch values, in order.
    pub fn branches(&self, x: &SparseVector) -> Result<[f64; 4]> {
        Ok([
            linf(x),
            branch_sparse_sets(x),
            branch_coefficient_blocks(x),
            branch_gap_complements(x, self.c.gap())?,
        ])
    }
}

impl NormOracle for Lemma510Norm {
    fn name(&self) -> String {
        "lemma510".into()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        Ok(self.branches(x)?.into_iter().fold(0.0, f64::max))
    }
}

/// Branch 2. For each `k`, the best admissible `A` of size `k` is the `k` largest moduli
/// among indices above `k^2`, since the constraint only binds `min A`.
pub fn branch_sparse_sets(x: &SparseVector) -> f64 {
    let mut by_modulus: Vec<(Index, f64)> = x.iter().collect();
    // Stable sort keeps the smaller index first among equal moduli.
    by_modulus.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    let mut best = 0.0f64;
    for k in 1..=by_modulus.len() as u64 {
        let floor = Index::new(k).checked_mul(Index::new(k)).expect("k^2 fits");
        let chosen: Vec<Index> =
            by_modulus.iter().filter(|(n, _)| *n > floor).take(k as usize).map(|&(n, _)| n).collect();
        if chosen.is_empty() {
            break;
        }
        let exhausted = (chosen.len() as u64) < k;
        best = best.max(l2(&project(x, &IndexSet::from_indices(chosen))));
        // Past this point every candidate is a subset of the one just measured.
        if exhausted {
            break;
        }
    }
    best
}

/// Branch 3. Index `s` lies in block `m = isqrt(s - 1)` at position `n = s - m^2` when `n <= m`.
pub fn branch_coefficient_blocks(x: &SparseVector) -> f64 {
    let mut best = 0.0f64;
    let mut current: Option<Index> = None;
    let mut sum = 0.0f64;
    for (s, v) in x.iter() {
        let m = (s - Index::ONE).isqrt();
        let n = s - m * m;
        if n > m {
            continue;
        }
        if current != Some(m) {
            current = Some(m);
            sum = 0.0;
        }
        sum += v / n.to_f64().sqrt();
        best = best.max(sum.abs());
    }
    best
}

/// Branch 4. As `l` grows, `(j + I_{r_l}) \ F_{j,l}` increases to `j + G`, where `G` is the set
/// of positive integers that are not partial sums, so the supremum over `l` is attained there.
/// Squares are accumulated per shift `j` with `s` ascending.
pub fn branch_gap_complements(x: &SparseVector, gap: &GapSequence) -> Result<f64> {
    let Some(max) = x.max_index() else { return Ok(0.0) };
    let limit = max.to_u64().ok_or(Error::IndexTooLarge(max))?;
    let holes = gap.non_partial_sums_up_to(limit);
    let mut per_shift: BTreeMap<u64, f64> = BTreeMap::new();
    for (s, v) in x.iter() {
        let s = s.to_u64().expect("bounded by max");
        for &g in holes.iter().take_while(|&&g| g <= s) {
            *per_shift.entry(s - g).or_insert(0.0) += v * v;
        }
    }
    Ok(per_shift.values().fold(0.0f64, |acc, &q| acc.max(q.sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::GapSequence;
    use crate::norms::testing;
    use crate::vector::{indicator, indicator_plus};
    use crate::SignPattern;
    use proptest::prelude::*;

    fn norm() -> Lemma510Norm {
        let c = Lemma510Construction::build(&GapSequence::fourth_power_marked(), 1.0, 100_000).unwrap();
        Lemma510Norm::new(Arc::new(c))
    }

    fn xv(pairs: &[(u64, f64)]) -> SparseVector {
        SparseVector::from_u64_pairs(pairs.iter().copied())
    }

    #[test]
    fn unit_vectors() {
        let t = norm();
        for n in [1u64, 2, 5, 17, 83, 1000] {
            assert_eq!(t.eval(&xv(&[(n, 1.0)])).unwrap(), 1.0);
        }
        assert_eq!(branch_sparse_sets(&xv(&[(1, 1.0)])), 0.0);
        assert_eq!(branch_sparse_sets(&xv(&[(5, 1.0)])), 1.0);
    }

    #[test]
    fn sparse_sets_respect_the_size_constraint() {
        // {2, 3} is inadmissible (4 >= 2); {5, 6} is admissible.
        assert_eq!(branch_sparse_sets(&xv(&[(2, 1.0), (3, 1.0)])), 1.0);
        assert_eq!(branch_sparse_sets(&xv(&[(5, 1.0), (6, 1.0)])), 2f64.sqrt());
        // k = 2 must skip index 4 and take the two largest above it.
        assert_eq!(branch_sparse_sets(&xv(&[(4, 9.0), (7, 3.0), (8, 4.0)])), 9.0);
        assert_eq!(branch_sparse_sets(&xv(&[(4, 1.0), (7, 3.0), (8, 4.0)])), 5.0);
    }

    #[test]
    fn block_branch_on_a_full_block() {
        for m0 in [1u64, 4, 16, 64] {
            let block = IndexSet::from_u64s((1..=m0).map(|n| m0 * m0 + n));
            let v = branch_coefficient_blocks(&indicator_plus(&block));
            let expected: f64 = (1..=m0).map(|n| 1.0 / (n as f64).sqrt()).sum();
            assert!((v - expected).abs() < 1e-12);
            assert!(norm().eval(&indicator_plus(&block)).unwrap() >= (m0 as f64).sqrt());
        }
        // m^2 + m + 1 .. (m+1)^2 lie outside every block.
        assert_eq!(branch_coefficient_blocks(&xv(&[(7, 1.0), (8, 1.0), (9, 1.0)])), 0.0);
    }

    #[test]
    fn gap_complement_branch() {
        let g = GapSequence::fourth_power_marked();
        // Holes are 1, 17, 83, ...; 1 and 17 share the shift j = 0.
        assert_eq!(branch_gap_complements(&xv(&[(1, 1.0), (17, 1.0)]), &g).unwrap(), 2f64.sqrt());
        assert_eq!(branch_gap_complements(&xv(&[(1, 1.0), (2, 1.0)]), &g).unwrap(), 1.0);
        assert_eq!(branch_gap_complements(&xv(&[(3, 1.0), (19, -2.0)]), &g).unwrap(), 5f64.sqrt());
        assert_eq!(branch_gap_complements(&xv(&[(9, 1.0)]), &GapSequence::constant(1)).unwrap(), 0.0);
    }

    #[test]
    fn huge_indices_are_reported() {
        let x = SparseVector::from_pairs([(Index::pow2(70).unwrap(), 1.0)]);
        assert!(matches!(norm().eval(&x), Err(Error::IndexTooLarge(_))));
    }

    proptest! {
        #[test]
        fn norm_axioms(
            x in testing::vector_on((1..120).collect()),
            y in testing::vector_on((1..120).collect()),
            lambda in -3.0f64..3.0,
        ) {
            testing::assert_norm_axioms(&norm(), &x, &y, lambda);
        }

        #[test]
        fn signed_indicator_window(
            a in proptest::collection::btree_set(1u64..5000, 4..200),
            seed in any::<u64>(),
        ) {
            let a = IndexSet::from_u64s(a);
            let signs: Vec<f64> = (0..a.len()).map(|i| if (seed >> (i % 64)) & 1 == 1 { 1.0 } else { -1.0 }).collect();
            let eps = SignPattern::from_values(&a, &signs).unwrap();
            let v = norm().eval(&indicator(&a, &eps).unwrap()).unwrap();
            let size = a.len() as f64;
            prop_assert!(v >= 0.5 * size.powf(0.25));
            prop_assert!(v <= 2.0 * size.sqrt() + 1e-9);
        }
    }
}
