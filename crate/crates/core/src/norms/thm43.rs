use std::sync::Arc;

use crate::constructions::Thm43Construction;
use crate::norms::{l2, KtNorm, NormOracle};
use crate::{Error, Result, SparseVector};

/// `max{ ||x||_∘, ||x||_◁, ||x||_2 }` where
/// `||x||_∘ = sum_k sum_{j<=k} |x_{c_{k,j}}| (k(k-1)/2 + j)^{-1/q}` over the blocks `A_k`
/// and `||x||_◁ = sup_n |sum_{k<=n} x_k / k^{1/2}|`.
#[derive(Clone, Debug)]
pub struct Thm43Norm {
    c: Arc<Thm43Construction>,
}

impl Thm43Norm {
    pub fn new(c: Arc<Thm43Construction>) -> Self {
        Thm43Norm { c }
    }

    pub fn construction(&self) -> &Thm43Construction {
        &self.c
    }

    fn check_range(&self, x: &SparseVector) -> Result<()> {
        let limit = self.c.built_limit();
        match x.max_index() {
            Some(n) if n > limit => Err(Error::ConstructionDepthExceeded { index: n, limit }),
            _ => Ok(()),
        }
    }

    /// `||x||_∘`.
    pub fn circ(&self, x: &SparseVector) -> Result<f64> {
        self.check_range(x)?;
        let exponent = -1.0 / self.c.q();
        Ok(x
            .iter()
            .filter_map(|(n, v)| self.c.position(n).map(|(k, j)| v.abs() * ((k * (k - 1) / 2 + j) as f64).powf(exponent)))
            .fold(0.0, |acc, t| acc + t))
    }

    /// `||x||_◁`.
    pub fn triangle(&self, x: &SparseVector) -> f64 {
        KtNorm::prefix_term(x)
    }
}

impl NormOracle for Thm43Norm {
    fn name(&self) -> String {
        "thm43".into()
    }

    fn eval(&self, x: &SparseVector) -> Result<f64> {
        Ok(self.circ(x)?.max(self.triangle(x)).max(l2(x)))
    }
}
