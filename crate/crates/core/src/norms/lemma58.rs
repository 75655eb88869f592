use std::sync::Arc;

use crate::constructions::Lemma58Construction;
use crate::norms::{linf, lp, NormOracle};
use crate::{Error, Result, SparseVector};

/// `max{ ||x||_inf, max_j ||(x_n)_{n > a_1 + n_j}||_{p_j} }`.
#[derive(Clone, Debug)]
pub struct Lemma58Norm {
    c: Arc<Lemma58Construction>,
}

impl Lemma58Norm {
    pub fn new(c: Arc<Lemma58Construction>) -> Self {
        Lemma58Norm { c }
    }

    pub fn construction(&self) -> &Lemma58Construction {
        &self.c
    }

    /// Seminorm `j` (1-based): the `l_{p_j}` norm of the tail beyond `a_1 + n_j`.
    pub fn tail(&self, x: &SparseVector, j: usize) -> f64 {
        let start = self.c.tail_start(j);
        let tail = SparseVector::from_pairs(x.iter().filter(|&(n, _)| n > start));
        lp(&tail, self.c.p()[j - 1])
    }
}

impl NormOracle for Lemma58Norm {
    fn name(&self) -> String {
        "lemma58".into()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        let limit = self.c.built_limit();
        if let Some(n) = x.max_index().filter(|&n| n > limit) {
            return Err(Error::ConstructionDepthExceeded { index: n, limit });
        }
        Ok((1..=self.c.depth()).map(|j| self.tail(x, j)).fold(linf(x), f64::max))
    }
}
