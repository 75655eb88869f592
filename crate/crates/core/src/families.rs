//! Gap sequences `(a_n)`, the families `F_(a_n)` they generate, hereditary closures,
//! and the covering / sliding machinery.
//!
//! `F_(a_n) = {∅} ∪ { j + {b_1, ..., b_l} : j >= 0, l >= 1 }` with `b_n = a_1 + ... + a_n`.
//! We write `F_{j,l}` for `j + {b_1, ..., b_l}` and `r_l = b_l = max F_{0,l}`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::{Error, Index, IndexSet, Result};

/// Default cap on linear scans performed by builders.
pub const DEFAULT_HORIZON: u64 = 1_000_000;

/// Generator for the gap sequence `a_n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GapRule {
    /// `a_n = d`.
    Constant { d: u64 },
    /// `a_n = values[(n - 1) mod len]`.
    Periodic { values: Vec<u64> },
    /// `a_n = n`.
    Identity,
    /// `a_n = 2` if `n = k^4`, else `1`.
    FourthPowerMarked,
    /// `a_n = n` if `n` is a power of two, else `1`.
    PowerOfTwoSpikes,
}

impl fmt::Display for GapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapRule::Constant { d } => write!(f, "constant:{d}"),
            GapRule::Periodic { values } => write!(f, "periodic:{}", values.iter().join(",")),
            GapRule::Identity => f.write_str("identity"),
            GapRule::FourthPowerMarked => f.write_str("fourth-power-marked"),
            GapRule::PowerOfTwoSpikes => f.write_str("power-of-two-spikes"),
        }
    }
}

impl FromStr for GapRule {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) forms, e.g. `constant:2`, `periodic:1,2`, `identity`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown gap rule `{s}`"));
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h.trim(), Some(t.trim())),
            None => (s.trim(), None),
        };
        let rule = match (head, tail) {
            ("constant", Some(d)) => GapRule::Constant { d: d.parse().map_err(|_| bad())? },
            ("periodic", Some(v)) => GapRule::Periodic {
                values: v.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?,
            },
            ("identity", None) => GapRule::Identity,
            ("fourth-power-marked", None) => GapRule::FourthPowerMarked,
            ("power-of-two-spikes", None) => GapRule::PowerOfTwoSpikes,
            _ => return Err(bad()),
        };
        GapSequence::new(rule.clone())?;
        Ok(rule)
    }
}

/// A validated gap sequence. Partial sums are closed-form for every rule, so there is
/// no cache and concurrent readers always agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GapRule", into = "GapRule")]
pub struct GapSequence {
    rule: GapRule,
    /// Running sums of one period (periodic rule only), starting with 0.
    #[serde(skip)]
    period_prefix: Vec<u64>,
}

impl TryFrom<GapRule> for GapSequence {
    type Error = Error;

    fn try_from(rule: GapRule) -> Result<Self> {
        GapSequence::new(rule)
    }
}

impl From<GapSequence> for GapRule {
    fn from(g: GapSequence) -> Self {
        g.rule
    }
}

impl GapSequence {
    pub fn new(rule: GapRule) -> Result<Self> {
        let mut period_prefix: Vec<u64> = Vec::new();
        match &rule {
            GapRule::Constant { d } if *d == 0 => {
                return Err(Error::InvalidParameter("gaps must be positive".into()));
            }
            GapRule::Periodic { values } => {
                if values.is_empty() || values.contains(&0) {
                    return Err(Error::InvalidParameter("periodic gaps must be a nonempty list of positive integers".into()));
                }
                period_prefix.push(0);
                for v in values {
                    let last = *period_prefix.last().unwrap();
                    period_prefix.push(last.checked_add(*v).ok_or(Error::IndexOverflow)?);
                }
            }
            _ => {}
        }
        Ok(GapSequence { rule, period_prefix })
    }

    pub fn constant(d: u64) -> Self {
        Self::new(GapRule::Constant { d }).expect("positive constant gap")
    }

    pub fn identity() -> Self {
        Self::new(GapRule::Identity).unwrap()
    }

    pub fn fourth_power_marked() -> Self {
        Self::new(GapRule::FourthPowerMarked).unwrap()
    }

    pub fn power_of_two_spikes() -> Self {
        Self::new(GapRule::PowerOfTwoSpikes).unwrap()
    }

    pub fn periodic(values: Vec<u64>) -> Result<Self> {
        Self::new(GapRule::Periodic { values })
    }

    pub fn rule(&self) -> &GapRule {
        &self.rule
    }

    /// `M = max a_n` for bounded rules.
    pub fn bound(&self) -> Option<u64> {
        match &self.rule {
            GapRule::Constant { d } => Some(*d),
            GapRule::Periodic { values } => values.iter().copied().max(),
            GapRule::FourthPowerMarked => Some(2),
            GapRule::Identity | GapRule::PowerOfTwoSpikes => None,
        }
    }

    /// Whether `a_n` never decreases.
    fn is_nondecreasing(&self) -> bool {
        matches!(self.rule, GapRule::Constant { .. } | GapRule::Identity)
    }

    /// `a_n` for `n >= 1`.
    pub fn a(&self, n: Index) -> Index {
        debug_assert!(!n.is_zero());
        match &self.rule {
            GapRule::Constant { d } => Index::new(*d),
            GapRule::Periodic { values } => Index::new(values[((n - Index::ONE).rem_u64(values.len() as u64)) as usize]),
            GapRule::Identity => n,
            GapRule::FourthPowerMarked => {
                let k = n.iroot4();
                if k * k * k * k == n {
                    Index::new(2)
                } else {
                    Index::ONE
                }
            }
            GapRule::PowerOfTwoSpikes => {
                if n.is_power_of_two() {
                    n
                } else {
                    Index::ONE
                }
            }
        }
    }

    pub fn a_u64(&self, n: u64) -> Index {
        Index::new(self.a_small(n))
    }

    /// `a_n` computed in machine integers.
    pub fn a_small(&self, n: u64) -> u64 {
        match &self.rule {
            GapRule::Constant { d } => *d,
            GapRule::Periodic { values } => values[((n - 1) % values.len() as u64) as usize],
            GapRule::Identity => n,
            GapRule::FourthPowerMarked => {
                let k = iroot4_u64(n) as u128;
                if k * k * k * k == n as u128 {
                    2
                } else {
                    1
                }
            }
            GapRule::PowerOfTwoSpikes => {
                if n.is_power_of_two() {
                    n
                } else {
                    1
                }
            }
        }
    }

    /// `b_n = a_1 + ... + a_n` (`b_0 = 0`), or an overflow error.
    pub fn try_b(&self, n: Index) -> Result<Index> {
        let two = Index::new(2);
        match &self.rule {
            GapRule::Constant { d } => n.try_mul(Index::new(*d)),
            GapRule::Periodic { values } => {
                let p = values.len() as u64;
                let full = n.div_u64(p);
                let rest = n.rem_u64(p) as usize;
                full.try_mul(Index::new(self.period_prefix[values.len()]))?.try_add(Index::new(self.period_prefix[rest]))
            }
            GapRule::Identity => {
                // n(n+1)/2 with the even factor halved first.
                let m = n.try_add(Index::ONE)?;
                if n.rem_u64(2) == 0 {
                    n.div_u64(2).try_mul(m)
                } else {
                    n.try_mul(m.div_u64(2))
                }
            }
            GapRule::FourthPowerMarked => n.try_add(n.iroot4()),
            GapRule::PowerOfTwoSpikes => {
                if n.is_zero() {
                    return Ok(Index::ZERO);
                }
                // Powers 2^0..2^t contribute 2^(t+1) - 1 instead of t + 1 ones.
                let t = n.ilog2();
                let spikes = Index::pow2(t + 1).ok_or(Error::IndexOverflow)?;
                n.try_add(spikes)?.checked_sub(two + Index::from(t)).ok_or(Error::IndexOverflow)
            }
        }
    }

    pub fn b(&self, n: Index) -> Index {
        self.try_b(n).expect("partial sum overflows 256 bits")
    }

    pub fn b_u64(&self, n: u64) -> Index {
        self.b(Index::new(n))
    }

    fn b_saturating(&self, n: Index) -> Index {
        self.try_b(n).unwrap_or(Index::MAX)
    }

    /// `r_l = max F_{0,l} = b_l`.
    pub fn r(&self, l: Index) -> Index {
        self.b(l)
    }

    /// `#{i >= 1 : b_i <= v}`.
    pub fn partial_sum_count(&self, v: Index) -> Index {
        // b_i >= i, so the answer lies in [0, v].
        let mut lo = Index::ZERO;
        let mut hi = v.checked_add(Index::ONE).unwrap_or(Index::MAX);
        while hi.checked_sub(lo).is_some_and(|d| d > Index::ONE) {
            let mid = lo + (hi - lo).div_u64(2);
            if self.b_saturating(mid) <= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `Some(k)` with `b_k = v`, if `v` is a partial sum.
    pub fn partial_sum_index(&self, v: Index) -> Option<Index> {
        let k = self.partial_sum_count(v);
        (!k.is_zero() && self.b(k) == v).then_some(k)
    }

    pub fn is_partial_sum(&self, v: Index) -> bool {
        self.partial_sum_index(v).is_some()
    }

    /// `F_{j,l} = j + {b_1, ..., b_l}`.
    pub fn f_set(&self, j: Index, l: u64) -> IndexSet {
        let mut v = Vec::with_capacity(l as usize);
        // Plain u64 sums until they would overflow.
        let mut small = j.to_u64();
        let mut cur = j;
        for n in 1..=l {
            let a = self.a_small(n);
            if let Some(s) = small {
                if let Some(t) = s.checked_add(a) {
                    small = Some(t);
                    v.push(Index::new(t));
                    continue;
                }
                cur = Index::new(s);
                small = None;
            }
            cur = cur + Index::new(a);
            v.push(cur);
        }
        IndexSet::from_sorted_unchecked(v)
    }

    /// Smallest `n >= start` with `a_{n+1} > threshold`.
    ///
    /// Rules with a closed form jump straight to the answer; the others scan at most
    /// `horizon` indices.
    pub fn first_gap_above(&self, start: Index, threshold: Index, horizon: u64) -> Result<Index> {
        let exhausted = || {
            Error::HorizonExhausted(format!(
                "no n >= {start} with a_(n+1) > {threshold} for rule {}",
                self.rule
            ))
        };
        if let Some(m) = self.bound() {
            if Index::new(m) <= threshold {
                return Err(exhausted());
            }
        }
        match &self.rule {
            GapRule::Constant { .. } => Ok(start),
            GapRule::Identity => Ok(start.max(threshold)),
            GapRule::PowerOfTwoSpikes => {
                if threshold.is_zero() {
                    return Ok(start);
                }
                // Need n + 1 = 2^e with 2^e > threshold and n >= start.
                let floor = (threshold + Index::ONE).max(start + Index::ONE);
                let p = floor.next_power_of_two().ok_or(Error::IndexOverflow)?;
                Ok(p - Index::ONE)
            }
            GapRule::Periodic { .. } | GapRule::FourthPowerMarked => {
                let mut n = start;
                for _ in 0..horizon {
                    if self.a(n + Index::ONE) > threshold {
                        return Ok(n);
                    }
                    n = n + Index::ONE;
                }
                Err(exhausted())
            }
        }
    }

    /// The positive integers `<= limit` that are not partial sums (the complement `N \ {b_n}`).
    pub fn non_partial_sums_up_to(&self, limit: u64) -> Vec<u64> {
        match &self.rule {
            GapRule::Constant { d: 1 } => Vec::new(),
            // b_{k^4} = k^4 + k skips exactly k^4 + k - 1.
            GapRule::FourthPowerMarked => (1u64..)
                .map(|k| k.pow(4) + k - 1)
                .take_while(|&g| g <= limit)
                .collect(),
            _ => {
                let mut out = Vec::new();
                let mut prev = 0u64;
                let mut n = 1u64;
                while prev < limit {
                    let b = self.b_u64(n).to_u64().unwrap_or(u64::MAX);
                    out.extend((prev + 1..b).take_while(|&g| g <= limit));
                    prev = b;
                    n += 1;
                }
                out
            }
        }
    }
}

fn iroot4_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt().sqrt() as u64;
    let pow4 = |r: u64| (r as u128).pow(4);
    while pow4(r) > n as u128 {
        r -= 1;
    }
    while pow4(r + 1) <= n as u128 {
        r += 1;
    }
    r
}

/// Which family of index sets is meant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyHandle {
    /// `F_(a_n)`.
    Gap(GapSequence),
    /// `F_0`: the empty set and all `{1, ..., k}`.
    InitialSegments,
    /// Every finite subset of `N`.
    AllFinite,
}

/// Witness that `S ⊆ F_{j,l}`: `embedding[i] = k` means the `i`-th element of `S` is `j + b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfWitness {
    pub j: Index,
    pub ell: Index,
    pub embedding: Vec<Index>,
}

/// One smallest member of the family containing a given set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Container {
    /// `F_{j,l}` of a gap family.
    Gap { j: Index, ell: Index },
    /// An explicit set.
    Explicit(IndexSet),
}

impl FamilyHandle {
    pub fn gap(g: GapSequence) -> Self {
        FamilyHandle::Gap(g)
    }

    /// `S ∈ F` (the empty set always is).
    pub fn member(&self, s: &IndexSet) -> bool {
        let Some(s0) = s.min() else { return true };
        match self {
            FamilyHandle::AllFinite => true,
            FamilyHandle::InitialSegments => s0 == Index::ONE && s.max() == Some(Index::from(s.len())),
            FamilyHandle::Gap(g) => {
                let b1 = g.b(Index::ONE);
                let Some(j) = s0.checked_sub(b1) else { return false };
                let mut b = Index::ZERO;
                s.iter().enumerate().all(|(i, x)| {
                    b = b + g.a(Index::from(i + 1));
                    x == j + b
                })
            }
        }
    }

    /// `S ∈ PF`, with a witness.
    pub fn pf_member(&self, s: &IndexSet) -> Option<PfWitness> {
        let Some(max) = s.max() else {
            return Some(PfWitness { j: Index::ZERO, ell: Index::ONE, embedding: Vec::new() });
        };
        match self {
            FamilyHandle::AllFinite | FamilyHandle::InitialSegments => {
                Some(PfWitness { j: Index::ZERO, ell: max, embedding: s.iter().collect() })
            }
            FamilyHandle::Gap(g) => gap_embeddings(g, s, true).into_iter().next(),
        }
    }

    /// Every minimal member containing `S` (one per anchor for gap families).
    pub fn minimal_containers(&self, s: &IndexSet) -> Vec<Container> {
        let Some(max) = s.max() else { return vec![Container::Explicit(IndexSet::empty())] };
        match self {
            FamilyHandle::AllFinite => vec![Container::Explicit(s.clone())],
            FamilyHandle::InitialSegments => vec![Container::Explicit(IndexSet::interval(Index::ONE, max))],
            FamilyHandle::Gap(g) => gap_embeddings(g, s, false)
                .into_iter()
                .map(|w| Container::Gap { j: w.j, ell: w.ell })
                .collect(),
        }
    }

    /// Is there `F ∈ F` with `A ⊆ F` and `F ∩ B = ∅` (and, if asked, `min F < min B`)?
    pub fn has_disjoint_container(&self, a: &IndexSet, b: &IndexSet, min_before: bool) -> bool {
        self.minimal_containers(a).into_iter().any(|c| self.container_avoids(&c, b, min_before))
    }

    fn container_avoids(&self, c: &Container, b: &IndexSet, min_before: bool) -> bool {
        match (c, self) {
            (Container::Explicit(f), _) => {
                f.is_disjoint(b) && (!min_before || matches!((f.min(), b.min()), (Some(x), Some(y)) if x < y) || b.is_empty())
            }
            (Container::Gap { j, ell }, FamilyHandle::Gap(g)) => {
                let min_f = *j + g.b(Index::ONE);
                if min_before && b.min().is_some_and(|y| y <= min_f) {
                    return false;
                }
                b.iter().all(|y| match y.checked_sub(*j).and_then(|t| g.partial_sum_index(t)) {
                    Some(k) => k > *ell,
                    None => true,
                })
            }
            (Container::Gap { .. }, _) => unreachable!("gap container outside a gap family"),
        }
    }

    /// `min F := min |F|` over nonempty members.
    pub fn min_cardinality(&self) -> usize {
        1
    }

    /// A member `F` with `|F| >= M` and `|F ∩ {1..M}| <= N`, if this family provides one.
    pub fn sliding_witness(&self, m: u64, n: u64) -> Option<IndexSet> {
        match self {
            FamilyHandle::Gap(g) => Some(g.f_set(Index::new(m), m)),
            FamilyHandle::InitialSegments => (m <= n).then(|| IndexSet::initial(m)),
            FamilyHandle::AllFinite => Some(IndexSet::interval(Index::new(m + 1), Index::new(2 * m + 1))),
        }
    }

    /// Candidate members for covering `B`: each is stored through its trace on `B`.
    fn covering_candidates(&self, b: &IndexSet) -> Vec<IndexSet> {
        let Some(hi) = b.max() else { return Vec::new() };
        match self {
            FamilyHandle::AllFinite => vec![b.clone()],
            FamilyHandle::InitialSegments => vec![b.clone()],
            FamilyHandle::Gap(g) => {
                // One set per shift j, run until it passes max B; shorter sets are subsets.
                let b1 = g.b(Index::ONE);
                let mut traces: Vec<IndexSet> = Vec::new();
                let mut j = Index::ZERO;
                while j + b1 <= hi {
                    let trace: IndexSet = b
                        .iter()
                        .filter(|&y| y.checked_sub(j).is_some_and(|t| g.is_partial_sum(t)))
                        .collect();
                    if !trace.is_empty() {
                        traces.push(trace);
                    }
                    j = j + Index::ONE;
                }
                traces.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
                traces.dedup();
                // Drop traces strictly contained in another one.
                let kept: Vec<IndexSet> = traces
                    .iter()
                    .filter(|t| !traces.iter().any(|u| u != *t && t.is_subset(u)))
                    .cloned()
                    .collect();
                kept
            }
        }
    }
}

/// Embeddings of `S` into some `F_{j,l}`, one per anchor `i` with `j + b_i = min S`.
/// With `first_only` the search stops at the first hit and periodic rules test one period.
fn gap_embeddings(g: &GapSequence, s: &IndexSet, first_only: bool) -> Vec<PfWitness> {
    let mut out = Vec::new();
    let (Some(s0), Some(max)) = (s.min(), s.max()) else { return out };
    let span = max - s0;
    let mut anchors = g.partial_sum_count(s0);
    if first_only {
        if let GapRule::Periodic { values } = g.rule() {
            anchors = anchors.min(Index::from(values.len()));
        }
    }
    let mut i = Index::ONE;
    let mut b_i = Index::ZERO;
    while i <= anchors {
        b_i = b_i + g.a(i);
        if s.len() >= 2 && g.a(i + Index::ONE) > span {
            if g.is_nondecreasing() {
                break;
            }
            i = i + Index::ONE;
            continue;
        }
        if let Some(w) = embed_at_anchor(g, s, s0 - b_i, i) {
            out.push(w);
            if first_only {
                break;
            }
        }
        i = i + Index::ONE;
    }
    out
}

fn embed_at_anchor(g: &GapSequence, s: &IndexSet, j: Index, anchor: Index) -> Option<PfWitness> {
    let mut embedding = Vec::with_capacity(s.len());
    embedding.push(anchor);
    for y in s.iter().skip(1) {
        embedding.push(g.partial_sum_index(y - j)?);
    }
    let ell = *embedding.last().unwrap();
    Some(PfWitness { j, ell, embedding })
}

/// The sets `S_1, ..., S_M` covering all of `B_2 = {n in B : n >= M}`:
/// `S_i = (min B_2 - a_1 + (i - 1)) + {b_1, ..., b_{max B_2}}`.
///
/// When `B_2` is empty any `M` members do; we return `F_{i-1,1}`.
pub fn construct_cover(g: &GapSequence, b: &IndexSet) -> Result<Vec<IndexSet>> {
    let m = g.bound().ok_or(Error::UnboundedGap)?;
    let b2: Vec<Index> = b.iter().filter(|&n| n >= Index::new(m)).collect();
    let a1 = g.a(Index::ONE);
    match (b2.first(), b2.last()) {
        (Some(&lo), Some(&hi)) => {
            let ell = hi.try_u64()?;
            let base = g.f_set(Index::ZERO, ell);
            Ok((0..m).map(|i| base.shifted(lo - a1 + Index::new(i))).collect())
        }
        _ => Ok((0..m).map(|i| g.f_set(Index::new(i), 1)).collect()),
    }
}

/// `|B \ (S_1 ∪ ... ∪ S_k)|`.
pub fn cover_leftover(b: &IndexSet, sets: &[IndexSet]) -> usize {
    b.iter().filter(|&n| !sets.iter().any(|s| s.contains(n))).count()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CoverVerdict {
    /// Sets whose traces on `B` leave at most `N` points uncovered.
    Found { traces: Vec<IndexSet>, leftover: usize },
    /// Every choice of `N` members was examined; none works.
    Refuted { best_leftover: usize },
    /// The budget ran out first.
    Inconclusive { best_leftover: usize, examined: u64 },
}

/// Looks for `N` members of the family with `|B \ ∪F_i| <= N`.
///
/// A greedy pass runs first; then all `N`-subsets of the (dominance-pruned) candidate
/// traces are tried, at most `budget` of them. Repeating a member never helps, so only
/// distinct members are combined.
pub fn covering_search(family: &FamilyHandle, b: &IndexSet, n: usize, budget: u64) -> CoverVerdict {
    let candidates = family.covering_candidates(b);
    let leftover_of = |chosen: &[&IndexSet]| b.iter().filter(|&y| !chosen.iter().any(|t| t.contains(y))).count();

    let mut chosen: Vec<&IndexSet> = Vec::new();
    for _ in 0..n.min(candidates.len()) {
        let best = candidates
            .iter()
            .filter(|c| !chosen.contains(c))
            .max_by_key(|c| (c.iter().filter(|&y| !chosen.iter().any(|t| t.contains(y))).count(), std::cmp::Reverse(c.as_slice())));
        match best {
            Some(c) => chosen.push(c),
            None => break,
        }
    }
    let greedy_left = leftover_of(&chosen);
    if greedy_left <= n {
        return CoverVerdict::Found { traces: chosen.into_iter().cloned().collect(), leftover: greedy_left };
    }

    let k = n.min(candidates.len());
    let mut best = greedy_left;
    let mut examined = 0u64;
    for combo in candidates.iter().combinations(k) {
        if examined >= budget {
            return CoverVerdict::Inconclusive { best_leftover: best, examined };
        }
        examined += 1;
        let left = leftover_of(&combo);
        if left <= n {
            return CoverVerdict::Found { traces: combo.into_iter().cloned().collect(), leftover: left };
        }
        best = best.min(left);
    }
    CoverVerdict::Refuted { best_leftover: best }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> IndexSet {
        IndexSet::from_u64s(v.iter().copied())
    }

    fn all_rules() -> Vec<GapSequence> {
        vec![
            GapSequence::constant(1),
            GapSequence::constant(3),
            GapSequence::periodic(vec![1, 2, 5]).unwrap(),
            GapSequence::identity(),
            GapSequence::fourth_power_marked(),
            GapSequence::power_of_two_spikes(),
        ]
    }

    #[test]
    fn closed_form_partial_sums_match_running_sums() {
        for g in all_rules() {
            let mut b = Index::ZERO;
            for n in 1..2000u64 {
                b = b + g.a_u64(n);
                assert_eq!(g.b_u64(n), b, "rule {} n {n}", g.rule());
            }
        }
    }

    #[test]
    fn f_set_examples() {
        assert_eq!(GapSequence::constant(1).f_set(Index::new(2), 3), set(&[3, 4, 5]));
        assert_eq!(GapSequence::constant(2).f_set(Index::ZERO, 3), set(&[2, 4, 6]));
        assert_eq!(GapSequence::identity().f_set(Index::ZERO, 4), set(&[1, 3, 6, 10]));
    }

    #[test]
    fn member_examples() {
        let f0 = FamilyHandle::InitialSegments;
        assert!(f0.member(&set(&[1, 2, 3])));
        assert!(!f0.member(&set(&[2, 3])));
        assert!(f0.member(&IndexSet::empty()));
        let ap = FamilyHandle::Gap(GapSequence::constant(2));
        assert!(ap.member(&set(&[5, 7, 9])));
        assert!(!ap.member(&set(&[5, 9])));
        assert!(ap.member(&IndexSet::empty()));
    }

    #[test]
    fn pf_member_examples() {
        let ap = FamilyHandle::Gap(GapSequence::constant(2));
        assert!(ap.pf_member(&IndexSet::empty()).is_some());
        let w = ap.pf_member(&set(&[2, 6])).unwrap();
        assert_eq!(w.embedding.len(), 2);
        assert!(ap.pf_member(&set(&[1, 2])).is_none());
        // Every set is a subset of an initial segment.
        assert!(FamilyHandle::InitialSegments.pf_member(&set(&[4, 17, 30])).is_some());
    }

    #[test]
    fn pf_witness_reconstructs_the_set() {
        let g = GapSequence::identity();
        let fam = FamilyHandle::Gap(g.clone());
        let s = set(&[4, 9, 13]); // 3 + {1, 6, 10}
        for w in gap_embeddings(&g, &s, false) {
            let rebuilt: IndexSet = w.embedding.iter().map(|&k| w.j + g.b(k)).collect();
            assert_eq!(rebuilt, s);
        }
        let t = set(&[11, 13, 16]); // 10 + {1, 3, 6}
        let w = fam.pf_member(&t).unwrap();
        assert_eq!(w.j, Index::new(10));
        assert_eq!(w.ell, Index::new(3));
    }

    #[test]
    fn construct_cover_examples() {
        let g = GapSequence::constant(1);
        let cover = construct_cover(&g, &set(&[3, 7])).unwrap();
        assert_eq!(cover, vec![IndexSet::interval(Index::new(3), Index::new(9))]);
        assert_eq!(cover_leftover(&set(&[3, 7]), &cover), 0);

        let g = GapSequence::periodic(vec![1, 2]).unwrap();
        let b = set(&[4, 9]);
        let cover = construct_cover(&g, &b).unwrap();
        assert_eq!(cover.len(), 2);
        assert!(cover_leftover(&b, &cover) <= 1);

        assert_eq!(construct_cover(&GapSequence::identity(), &b), Err(Error::UnboundedGap));
    }

    #[test]
    fn covering_search_examples() {
        let b = set(&[2, 5, 11, 40]);
        match covering_search(&FamilyHandle::InitialSegments, &b, 1, 100) {
            CoverVerdict::Found { leftover, .. } => assert_eq!(leftover, 0),
            v => panic!("{v:?}"),
        }
        let interval = IndexSet::initial(20);
        let v = covering_search(&FamilyHandle::Gap(GapSequence::identity()), &interval, 2, 1_000_000);
        assert!(matches!(v, CoverVerdict::Refuted { .. }), "{v:?}");
        let v = covering_search(&FamilyHandle::Gap(GapSequence::identity()), &interval, 2, 3);
        assert!(matches!(v, CoverVerdict::Inconclusive { .. }), "{v:?}");
    }

    #[test]
    fn sliding_witness_examples() {
        let g = GapSequence::identity();
        let w = FamilyHandle::Gap(g.clone()).sliding_witness(100, 0).unwrap();
        assert_eq!(w, g.f_set(Index::new(100), 100));
        assert!(w.min().unwrap() > Index::new(100));
        assert_eq!(FamilyHandle::InitialSegments.sliding_witness(5, 3), None);
        assert_eq!(
            FamilyHandle::AllFinite.sliding_witness(7, 0).unwrap(),
            IndexSet::interval(Index::new(8), Index::new(15))
        );
    }

    #[test]
    fn min_cardinality_is_one() {
        assert_eq!(FamilyHandle::Gap(GapSequence::identity()).min_cardinality(), 1);
        assert_eq!(FamilyHandle::InitialSegments.min_cardinality(), 1);
        assert_eq!(FamilyHandle::AllFinite.min_cardinality(), 1);
    }

    #[test]
    fn first_gap_above_closed_forms() {
        let id = GapSequence::identity();
        assert_eq!(id.first_gap_above(Index::new(2), Index::new(5), 10).unwrap(), Index::new(5));
        let sp = GapSequence::power_of_two_spikes();
        let n = sp.first_gap_above(Index::new(2), Index::new(5), 10).unwrap();
        assert_eq!(n, Index::new(7));
        assert!(GapSequence::constant(3).first_gap_above(Index::ONE, Index::new(3), 10).is_err());
        let fp = GapSequence::fourth_power_marked();
        assert_eq!(fp.first_gap_above(Index::new(2), Index::ONE, 100).unwrap(), Index::new(15));
    }

    #[test]
    fn non_partial_sums_match_scan() {
        let fp = GapSequence::fourth_power_marked();
        let fast = fp.non_partial_sums_up_to(5000);
        let mut slow = Vec::new();
        for v in 1..=5000u64 {
            if !fp.is_partial_sum(Index::new(v)) {
                slow.push(v);
            }
        }
        assert_eq!(fast, slow);
        assert_eq!(fast[..3], [1, 17, 83]);
        let c = GapSequence::constant(2).non_partial_sums_up_to(9);
        assert_eq!(c, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn disjoint_container_respects_minimum_rule() {
        let fam = FamilyHandle::Gap(GapSequence::constant(2));
        let a = set(&[3, 5]);
        // Minimal container j + {2,4} = {3,5}; B = {4} avoids it and min F = 3 < 4.
        assert!(fam.has_disjoint_container(&a, &set(&[4]), true));
        assert!(!fam.has_disjoint_container(&a, &set(&[5]), false));
        assert!(!fam.has_disjoint_container(&a, &set(&[2]), true));
        assert!(fam.has_disjoint_container(&a, &set(&[2]), false));
    }

    #[test]
    fn rule_parse_round_trip() {
        for g in all_rules() {
            let s = g.rule().to_string();
            assert_eq!(&s.parse::<GapRule>().unwrap(), g.rule());
        }
        assert!("constant:0".parse::<GapRule>().is_err());
        assert!("banana".parse::<GapRule>().is_err());
    }

    proptest! {
        #[test]
        fn unit_gaps_give_intervals(v in proptest::collection::btree_set(1u64..40, 1..8)) {
            let s = IndexSet::from_u64s(v);
            let is_interval = s.max().unwrap() - s.min().unwrap() + Index::ONE == Index::from(s.len());
            prop_assert_eq!(FamilyHandle::Gap(GapSequence::constant(1)).member(&s), is_interval);
        }

        #[test]
        fn initial_segment_closure_is_everything(v in proptest::collection::btree_set(1u64..500, 0..20)) {
            prop_assert!(FamilyHandle::InitialSegments.pf_member(&IndexSet::from_u64s(v)).is_some());
        }

        #[test]
        fn cover_leaves_at_most_m_minus_one(
            values in proptest::collection::vec(1u64..=5, 1..6),
            b in proptest::collection::btree_set(1u64..500, 2..40),
        ) {
            let g = GapSequence::periodic(values).unwrap();
            let m = g.bound().unwrap();
            let b = IndexSet::from_u64s(b);
            let cover = construct_cover(&g, &b).unwrap();
            prop_assert_eq!(cover.len() as u64, m);
            let b2 = b.iter().filter(|&n| n >= Index::new(m)).count();
            let left = cover_leftover(&b, &cover) as u64;
            if b2 >= 2 {
                prop_assert!(left < m);
            } else {
                prop_assert!(left <= m);
            }
        }

        #[test]
        fn sliding_witness_avoids_initial_block(m in 1u64..3000) {
            for g in [GapSequence::constant(1), GapSequence::identity()] {
                let w = FamilyHandle::Gap(g).sliding_witness(m, 0).unwrap();
                prop_assert!(w.len() as u64 >= m);
                prop_assert!(w.min().unwrap() > Index::new(m));
            }
        }
    }
}
