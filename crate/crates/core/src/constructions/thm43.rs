use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::families::GapSequence;
use crate::{Error, Index, IndexSet, Result};

/// Parameters for the conditional, non-democratic basis built from an unbounded gap sequence.
///
/// `n_0 = 1` and `n_k` is the least index above `n_{k-1}` with
/// `a_{n_k + 1} > 2k^6 + b_{n_{k-1}+1}`. Block `A_k` is the interval
/// `{b_{n_k} + b_{n_{k-1}+1} + k + 1, ..., b_{n_k} + b_{n_{k-1}+1} + 2k}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm43Construction {
    gap: GapSequence,
    depth: usize,
    /// The dual exponent `q`; the primal one is `p = q / (q - 1)`.
    q: f64,
    n: Vec<Index>,
    blocks: Vec<IndexSet>,
    #[serde(skip)]
    positions: BTreeMap<Index, (u64, u64)>,
}

/// `2k^6 + b_{n_{k-1}+1}`, the size the gap after `n_k` has to beat.
fn gap_target(gap: &GapSequence, k: u64, n_prev: Index) -> Result<Index> {
    let k6 = Index::new(k).try_mul(Index::new(k))?.try_mul(Index::new(k))?;
    let k6 = k6.try_mul(k6)?;
    k6.try_add(k6)?.try_add(gap.try_b(n_prev.try_add(Index::ONE)?)?)
}

impl Thm43Construction {
    pub const DEFAULT_Q: f64 = 4.0;

    /// Builds depth `K` with the minimal admissible `n_k`.
    pub fn build(gap: &GapSequence, depth: usize, q: f64, horizon: u64) -> Result<Self> {
        check_q(q)?;
        let mut n = vec![Index::ONE];
        let mut blocks = Vec::with_capacity(depth);
        for k in 1..=depth as u64 {
            let prev = *n.last().unwrap();
            let target = gap_target(gap, k, prev)?;
            let nk = gap.first_gap_above(prev.try_add(Index::ONE)?, target, horizon)?;
            let base = gap.try_b(nk)?.try_add(gap.try_b(prev + Index::ONE)?)?.try_add(Index::new(k))?;
            blocks.push(IndexSet::interval(base + Index::ONE, base.try_add(Index::new(k))?));
            n.push(nk);
        }
        // The built range must itself be representable.
        gap.try_b(n.last().unwrap().try_add(Index::ONE)?)?.try_mul(Index::new(2))?;
        Ok(Self::assemble(gap.clone(), depth, q, n, blocks))
    }

    fn assemble(gap: GapSequence, depth: usize, q: f64, n: Vec<Index>, blocks: Vec<IndexSet>) -> Self {
        let mut c = Thm43Construction { gap, depth, q, n, blocks, positions: BTreeMap::new() };
        c.index_positions();
        c
    }

    fn index_positions(&mut self) {
        self.positions = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(k, a)| a.iter().enumerate().map(move |(j, c)| (c, (k as u64 + 1, j as u64 + 1))))
            .collect();
    }

    /// Re-checks every defining inequality from scratch.
    pub fn verify_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConstruction(msg));
        check_q(self.q)?;
        if self.n.len() != self.depth + 1 || self.blocks.len() != self.depth {
            return bad("depth does not match the number of recorded indices".into());
        }
        if self.n[0] != Index::ONE {
            return bad("n_0 must be 1".into());
        }
        let g = &self.gap;
        for k in 1..=self.depth {
            let (prev, nk) = (self.n[k - 1], self.n[k]);
            if nk <= prev {
                return bad(format!("n_{k} = {nk} does not exceed n_{} = {prev}", k - 1));
            }
            let target = gap_target(g, k as u64, prev)?;
            if g.a(nk + Index::ONE) <= target {
                return bad(format!("a_(n_{k}+1) does not exceed 2k^6 + b_(n_{}+1)", k - 1));
            }
            if g.try_b(nk + Index::ONE)? - g.try_b(nk)? <= target {
                return bad(format!("gap after b_(n_{k}) too small"));
            }
            let a = &self.blocks[k - 1];
            if a.len() != k {
                return bad(format!("|A_{k}| = {} instead of {k}", a.len()));
            }
            if a.max().unwrap() - a.min().unwrap() + Index::ONE != Index::from(k) {
                return bad(format!("A_{k} is not an interval"));
            }
            let floor = g.try_b(nk)?.try_add(g.try_b(prev + Index::ONE)?)?.try_add(Index::from(k))?;
            if a.min().unwrap() <= floor || a.max().unwrap() >= g.try_b(nk + Index::ONE)? {
                return bad(format!("A_{k} is not separated as required"));
            }
        }
        Ok(())
    }

    pub fn gap(&self) -> &GapSequence {
        &self.gap
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.q / (self.q - 1.0)
    }

    /// `n_0, ..., n_K`.
    pub fn n(&self) -> &[Index] {
        &self.n
    }

    /// `A_1, ..., A_K`.
    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    /// `D_s = A_1 ∪ ... ∪ A_s`.
    pub fn d_set(&self, s: usize) -> Result<IndexSet> {
        if s > self.depth {
            return Err(Error::InvalidParameter(format!("D_{s} needs depth {s}, built {}", self.depth)));
        }
        Ok(self.blocks[..s].iter().fold(IndexSet::empty(), |acc, a| acc.union(a)))
    }

    /// `B_m = D_s ⊔ B` with `s = max{k : k(k+1)/2 <= m}` and `B` the smallest indices outside
    /// `D_s`, so that `|B_m| = m`.
    pub fn padded_block_union(&self, m: u64) -> Result<IndexSet> {
        let s = (0..=self.depth as u64).take_while(|k| k * (k + 1) / 2 <= m).last().unwrap_or(0);
        if s == self.depth as u64 && (s + 1) * (s + 2) / 2 <= m {
            return Err(Error::InvalidParameter(format!("B_{m} needs depth {}, built {}", s + 1, self.depth)));
        }
        let d = self.d_set(s as usize)?;
        let pad: Vec<Index> = (1..).map(Index::new).filter(|n| !d.contains(*n)).take((m as usize) - d.len()).collect();
        Ok(d.union(&IndexSet::from_indices(pad)))
    }

    /// `(k, j)` when `n = c_{k,j}`, the `j`-th element of `A_k`.
    pub fn position(&self, n: Index) -> Option<(u64, u64)> {
        self.positions.get(&n).copied()
    }

    /// Largest index whose coefficient functional is unaffected by unbuilt blocks:
    /// `min A_{K+1} > b_{n_{K+1}} + b_{n_K+1} + K + 1 >= 2 b_{n_K+1} + K + 1`.
    pub fn built_limit(&self) -> Index {
        let nk = *self.n.last().unwrap();
        let b = self.gap.b(nk + Index::ONE);
        b + b + Index::from(self.depth + 1)
    }

    /// `|{k : A_k ∩ A != ∅}|`.
    pub fn blocks_met(&self, a: &IndexSet) -> usize {
        self.blocks.iter().filter(|blk| !blk.is_disjoint(a)).count()
    }

    pub(crate) fn rebuild_positions(mut self) -> Self {
        self.index_positions();
        self
    }
}

fn check_q(q: f64) -> Result<()> {
    // 1 < p < 2 and 1/p - 1/q <= 1/2  <=>  2 < q <= 4.
    if q.is_finite() && q > 2.0 && q <= 4.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q = {q} must lie in (2, 4]")))
    }
}
