//! Norm oracles on finitely supported vectors.
//!
//! Every oracle dominates `l_inf` and sends each unit vector `e_n` to 1, so the
//! semi-normalization constants `c_1 = c_2 = 1` throughout.

mod lemma510;
mod lemma58;
mod thm43;

use std::sync::Arc;

pub use lemma510::{branch_coefficient_blocks, branch_gap_complements, branch_sparse_sets, Lemma510Norm};
pub use lemma58::Lemma58Norm;
pub use thm43::Thm43Norm;

use crate::{Error, Result, SparseVector};

/// A named, immutable quasi-norm evaluator.
pub trait NormOracle: Send + Sync {
    fn name(&self) -> String;

    /// The `p` in `||x + y||^p <= ||x||^p + ||y||^p`.
    fn p_convexity(&self) -> f64 {
        1.0
    }

    fn eval(&self, x: &SparseVector) -> Result<f64>;
}

impl<T: NormOracle + ?Sized> NormOracle for Arc<T> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn p_convexity(&self) -> f64 {
        (**self).p_convexity()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        (**self).eval(x)
    }
}

/// `(sum |x_n|^2)^{1/2}`, summed in index order.
pub fn l2(x: &SparseVector) -> f64 {
    x.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
}

/// `max |x_n|`.
pub fn linf(x: &SparseVector) -> f64 {
    x.sup_modulus()
}

/// `(sum |x_n|^p)^{1/p}`; a quasi-norm for `0 < p < 1`.
pub fn lp(x: &SparseVector, p: f64) -> f64 {
    if p == 2.0 {
        l2(x)
    } else if p == 1.0 {
        x.iter().fold(0.0, |acc, (_, v)| acc + v.abs())
    } else {
        x.iter().fold(0.0, |acc, (_, v)| acc + v.abs().powf(p)).powf(1.0 / p)
    }
}

/// `sup_m |sum_{n <= m} c_n / sqrt(n)|` for coefficients `c_n` given at increasing `n >= 1`.
pub fn sqrt_weighted_prefix_sup<I: IntoIterator<Item = (f64, f64)>>(entries: I) -> f64 {
    let mut sum = 0.0f64;
    let mut best = 0.0f64;
    for (n, c) in entries {
        sum += c / n.sqrt();
        best = best.max(sum.abs());
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpNorm {
    p: f64,
}

impl LpNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 {
            Ok(LpNorm { p })
        } else {
            Err(Error::InvalidParameter(format!("l_p needs 0 < p < inf, got {p}")))
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl NormOracle for LpNorm {
    fn name(&self) -> String {
        format!("l{}", self.p)
    }

    fn p_convexity(&self) -> f64 {
        self.p.min(1.0)
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        Ok(lp(x, self.p))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LinfNorm;

impl NormOracle for LinfNorm {
    fn name(&self) -> String {
        "linf".into()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        Ok(linf(x))
    }
}

/// `max{ ||x||_2, sup_m |sum_{n <= m} x_n / n^{1/2}| }`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KtNorm;

impl KtNorm {
    /// The partial-sum term alone.
    pub fn prefix_term(x: &SparseVector) -> f64 {
        sqrt_weighted_prefix_sup(x.iter().map(|(n, v)| (n.to_f64(), v)))
    }
}

impl NormOracle for KtNorm {
    fn name(&self) -> String {
        "kt".into()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        Ok(l2(x).max(Self::prefix_term(x)))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::{indicator, indicator_plus};
    use crate::{Index, IndexSet, SignPattern};
    use proptest::prelude::*;

    fn xv(pairs: &[(u64, f64)]) -> SparseVector {
        SparseVector::from_u64_pairs(pairs.iter().copied())
    }

    #[test]
    fn lp_examples() {
        assert_eq!(LpNorm::new(2.0).unwrap().eval(&xv(&[(1, 3.0), (2, 4.0)])).unwrap(), 5.0);
        assert_eq!(LpNorm::new(0.5).unwrap().eval(&xv(&[(1, 1.0), (2, 1.0)])).unwrap(), 4.0);
        assert_eq!(LinfNorm.eval(&xv(&[(7, -2.0)])).unwrap(), 2.0);
        assert!(LpNorm::new(0.0).is_err());
        assert_eq!(LpNorm::new(0.5).unwrap().p_convexity(), 0.5);
    }

    #[test]
    fn kt_examples() {
        assert_eq!(KtNorm.eval(&xv(&[(1, 1.0)])).unwrap(), 1.0);
        let v = KtNorm.eval(&indicator_plus(&IndexSet::initial(4))).unwrap();
        let expected = 1.0 + 2f64.powf(-0.5) + 3f64.powf(-0.5) + 0.5;
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 2.784457050376173).abs() < 1e-12);
    }

    #[test]
    fn unit_vectors_have_norm_one() {
        for n in [1u64, 2, 17, 1 << 40] {
            let e = xv(&[(n, 1.0)]);
            assert_eq!(KtNorm.eval(&e).unwrap(), 1.0);
            assert_eq!(LinfNorm.eval(&e).unwrap(), 1.0);
            assert_eq!(LpNorm::new(0.7).unwrap().eval(&e).unwrap(), 1.0);
        }
    }

    proptest! {
        #[test]
        fn classical_norm_axioms(
            x in testing::vector_on((1..40).collect()),
            y in testing::vector_on((1..40).collect()),
            lambda in -5.0f64..5.0,
        ) {
            for p in [0.5, 1.0, 2.0, 4.0] {
                testing::assert_norm_axioms(&LpNorm::new(p).unwrap(), &x, &y, lambda);
            }
            testing::assert_norm_axioms(&LinfNorm, &x, &y, lambda);
            testing::assert_norm_axioms(&KtNorm, &x, &y, lambda);
        }

        #[test]
        fn kt_signed_indicator_window(
            a in proptest::collection::btree_set(1u64..4096, 1..256),
            seed in any::<u64>(),
        ) {
            let a = IndexSet::from_u64s(a);
            let signs: Vec<f64> = (0..a.len()).map(|i| if (seed >> (i % 64)) & 1 == 1 { 1.0 } else { -1.0 }).collect();
            let eps = SignPattern::from_values(&a, &signs).unwrap();
            let r = KtNorm.eval(&indicator(&a, &eps).unwrap()).unwrap() / (a.len() as f64).sqrt();
            prop_assert!(r >= 1.0 - 1e-9 && r <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn prefix_sup_ignores_trailing_zeros() {
        let x = xv(&[(3, 1.0), (5, -1.0)]);
        let mut y = x.clone();
        y.set(Index::new(1000), 0.0);
        assert_eq!(KtNorm.eval(&x).unwrap(), KtNorm.eval(&y).unwrap());
    }
}
