use serde::{Deserialize, Serialize};

use crate::families::GapSequence;
use crate::{Error, Index, IndexSet, Result};

/// Parameters for the strong partially greedy basis that is not minimum partially greedy.
///
/// For each `j`, `k_j` is minimal with `k_j > k_{j-1}` and `k_j^{1/p_j} > j k_j^{1/p_{j-1}}`
/// (`k_1 = 2`), and `n_j` is minimal with `n_j > max F_{1,n_{j-1}}` (`n_1 > 1`) and
/// `m_j = |F_{1,n_j} \ (a_1 + I_{n_j})| >= k_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma58Construction {
    gap: GapSequence,
    p: Vec<f64>,
    k: Vec<u64>,
    n: Vec<u64>,
    m: Vec<u64>,
}

/// `|F_{1,n} \ (a_1 + I_n)|`: the points `1 + b_i` (`i <= n`) beyond `a_1 + n`.
pub fn escaped_count(gap: &GapSequence, n: u64) -> u64 {
    let a1 = gap.a(Index::ONE);
    let inside = gap.partial_sum_count(a1 + Index::new(n) - Index::ONE).to_u64().unwrap_or(u64::MAX);
    n - n.min(inside)
}

fn check_p(p: &[f64]) -> Result<()> {
    let ok = !p.is_empty() && p.iter().all(|&v| v.is_finite() && v > 1.0) && p.windows(2).all(|w| w[0] > w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::PSequenceNotDecreasing)
    }
}

impl Lemma58Construction {
    pub const DEFAULT_P: [f64; 3] = [2.0, 1.35, 1.02];

    pub fn build(gap: &GapSequence, p: &[f64], horizon: u64) -> Result<Self> {
        check_p(p)?;
        let mut k = vec![2u64];
        for j in 2..=p.len() {
            let (pj, pprev) = (p[j - 1], p[j - 2]);
            let start = k[j - 2] + 1;
            let kj = (start..start.saturating_add(horizon))
                .find(|&c| (c as f64).powf(1.0 / pj) > j as f64 * (c as f64).powf(1.0 / pprev))
                .ok_or_else(|| Error::HorizonExhausted(format!("no k_{j} below {}", start.saturating_add(horizon))))?;
            k.push(kj);
        }
        let mut n = Vec::with_capacity(p.len());
        let mut m = Vec::with_capacity(p.len());
        let mut lower = 2u64;
        for (j, &kj) in k.iter().enumerate() {
            let nj = (lower..lower.saturating_add(horizon))
                .find(|&c| escaped_count(gap, c) >= kj)
                .ok_or_else(|| {
                    Error::HorizonExhausted(format!(
                        "no n_{} in [{lower}, {}) with |F_(1,n) \\ (a_1 + I_n)| >= {kj}",
                        j + 1,
                        lower.saturating_add(horizon)
                    ))
                })?;
            m.push(escaped_count(gap, nj));
            n.push(nj);
            // n_{j+1} > max F_{1,n_j} = 1 + b_{n_j}.
            lower = gap.b_u64(nj).try_u64()? + 2;
        }
        Ok(Lemma58Construction { gap: gap.clone(), p: p.to_vec(), k, n, m })
    }

    pub fn verify_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConstruction(msg));
        check_p(&self.p)?;
        let depth = self.p.len();
        if self.k.len() != depth || self.n.len() != depth || self.m.len() != depth {
            return bad("parameter lists differ in length".into());
        }
        if self.k[0] < 2 || self.n[0] < 2 {
            return bad("k_1 and n_1 must exceed 1".into());
        }
        for j in 0..depth {
            let m = escaped_count(&self.gap, self.n[j]);
            if m != self.m[j] {
                return bad(format!("m_{} recorded as {} but equals {m}", j + 1, self.m[j]));
            }
            if m < self.k[j] {
                return bad(format!("m_{} < k_{}", j + 1, j + 1));
            }
            if j > 0 {
                let (pj, pprev, kj) = (self.p[j], self.p[j - 1], self.k[j] as f64);
                if self.k[j] <= self.k[j - 1] {
                    return bad(format!("k_{} is not increasing", j + 1));
                }
                if kj.powf(1.0 / pj) <= (j + 1) as f64 * kj.powf(1.0 / pprev) {
                    return bad(format!("k_{} fails the growth condition", j + 1));
                }
                if Index::new(self.n[j]) <= Index::ONE + self.gap.b_u64(self.n[j - 1]) {
                    return bad(format!("n_{} does not exceed max F_(1,n_{})", j + 1, j));
                }
            }
        }
        Ok(())
    }

    pub fn gap(&self) -> &GapSequence {
        &self.gap
    }

    pub fn depth(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn k(&self) -> &[u64] {
        &self.k
    }

    pub fn n(&self) -> &[u64] {
        &self.n
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    /// Seminorm `j` (1-based) sees the indices above `a_1 + n_j`.
    pub fn tail_start(&self, j: usize) -> Index {
        self.gap.a(Index::ONE) + Index::new(self.n[j - 1])
    }

    /// Indices up to `a_1 + 1 + b_{n_J} + 1 <= a_1 + n_{J+1}` are untouched by seminorm `J + 1`.
    pub fn built_limit(&self) -> Index {
        self.gap.a(Index::ONE) + self.gap.b_u64(*self.n.last().unwrap()) + Index::new(2)
    }

    /// `F_{1,n_j} \ (a_1 + I_{n_j})`.
    pub fn escaped_set(&self, j: usize) -> IndexSet {
        let (f, block) = self.pieces(j);
        f.difference(&block)
    }

    /// `(a_1 + I_{n_j}) \ F_{1,n_j}`.
    pub fn vacated_set(&self, j: usize) -> IndexSet {
        let (f, block) = self.pieces(j);
        block.difference(&f)
    }

    /// `F_{1,n_j}` and `a_1 + I_{n_j}`.
    pub fn pieces(&self, j: usize) -> (IndexSet, IndexSet) {
        let nj = self.n[j - 1];
        let a1 = self.gap.a(Index::ONE);
        (self.gap.f_set(Index::ONE, nj), IndexSet::initial(nj).shifted(a1))
    }

    /// `m_j^{1/p_j - 1/p_{j-1}}`, the quantity forced below any minimum-partially-greedy constant.
    pub fn blowup(&self, j: usize) -> f64 {
        let m = self.m[j - 1] as f64;
        m.powf(1.0 / self.p[j - 1] - 1.0 / self.p[j - 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::DEFAULT_HORIZON;

    #[test]
    fn default_identity_construction() {
        let c = Lemma58Construction::build(&GapSequence::identity(), &Lemma58Construction::DEFAULT_P, DEFAULT_HORIZON).unwrap();
        c.verify_invariants().unwrap();
        assert_eq!(c.k(), &[2, 18, 98]);
        assert_eq!(c.n(), &[4, 24, 302]);
        assert_eq!(c.m(), &[2, 18, 278]);
        assert!(c.blowup(2) > 2.0);
        assert!(c.blowup(3) > 3.0);
    }

    #[test]
    fn escaped_count_matches_set_difference() {
        for g in [GapSequence::identity(), GapSequence::constant(2), GapSequence::fourth_power_marked()] {
            for n in 1..80u64 {
                let f = g.f_set(Index::ONE, n);
                let block = IndexSet::initial(n).shifted(g.a(Index::ONE));
                assert_eq!(f.difference(&block).len() as u64, escaped_count(&g, n));
                assert_eq!(block.difference(&f).len() as u64, escaped_count(&g, n));
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = GapSequence::identity();
        assert_eq!(Lemma58Construction::build(&g, &[1.5, 1.5], 100), Err(Error::PSequenceNotDecreasing));
        assert_eq!(Lemma58Construction::build(&g, &[2.0, 0.9], 100), Err(Error::PSequenceNotDecreasing));
        let err = Lemma58Construction::build(&GapSequence::constant(1), &[2.0, 1.5], 10_000).unwrap_err();
        assert!(matches!(err, Error::HorizonExhausted(_)));
    }
}
