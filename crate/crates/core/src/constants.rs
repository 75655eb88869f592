//! Witness-bearing lower bounds for greedy-type constants, and per-instance ratio checks
//! for the `F`-greedy-type definitions.
//!
//! Every estimate is a supremum over a finite search space, hence a lower bound. Ratios use
//! `0/0 = 1` and `t/0 = inf` for `t > 0`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::families::FamilyHandle;
use crate::greedy::{greedy_set, project_complement};
use crate::norms::NormOracle;
use crate::vector::{indicator, indicator_plus};
use crate::{Error, Index, IndexSet, Result, Sign, SignPattern, SparseVector};

/// Coordinate-ascent restarts from random signs, on top of the all-plus start.
pub const DEFAULT_RESTARTS: usize = 3;

/// Largest ground set exact enumeration accepts.
pub const EXACT_MAX_INDEX: u64 = 24;

/// `num / den` under the conventions above.
pub fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exact,
    Structured,
    Random,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exact => "exact",
            SearchMode::Structured => "structured",
            SearchMode::Random => "random",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SearchMode::Exact),
            "structured" => Ok(SearchMode::Structured),
            "random" => Ok(SearchMode::Random),
            _ => Err(Error::InvalidParameter(format!("unknown search mode `{s}`"))),
        }
    }
}

/// Side condition on a pair `(A, B)` with `|A| <= |B|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    None,
    /// `A ∩ B = ∅`.
    Disjoint,
    /// `A < B`.
    Conservative,
    /// Some `F ∈ F` has `A ⊆ F` and `F ∩ B = ∅`.
    StrongDisjoint,
    /// As `StrongDisjoint`, and `A < B`.
    StrongDisjointConservative,
    /// Some `F ∈ F` has `A ⊆ F`, `F ∩ B = ∅` and `min F < B`.
    MinimumDisjointConservative,
}

impl Constraint {
    pub const ALL: [Constraint; 6] = [
        Constraint::None,
        Constraint::Disjoint,
        Constraint::Conservative,
        Constraint::StrongDisjoint,
        Constraint::StrongDisjointConservative,
        Constraint::MinimumDisjointConservative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Constraint::None => "none",
            Constraint::Disjoint => "disjoint",
            Constraint::Conservative => "conservative",
            Constraint::StrongDisjoint => "strong-disjoint",
            Constraint::StrongDisjointConservative => "strong-disjoint-conservative",
            Constraint::MinimumDisjointConservative => "minimum-disjoint-conservative",
        }
    }

    pub fn needs_family(self) -> bool {
        matches!(
            self,
            Constraint::StrongDisjoint | Constraint::StrongDisjointConservative | Constraint::MinimumDisjointConservative
        )
    }

    /// Whether `(A, B)` satisfies the side condition. `family` is required by the strong variants.
    pub fn admits(self, a: &IndexSet, b: &IndexSet, family: Option<&FamilyHandle>) -> Result<bool> {
        if a.len() > b.len() {
            return Ok(false);
        }
        let family = || family.ok_or_else(|| Error::InvalidParameter(format!("constraint `{self}` needs a family")));
        Ok(match self {
            Constraint::None => true,
            Constraint::Disjoint => a.is_disjoint(b),
            Constraint::Conservative => a.precedes(b),
            Constraint::StrongDisjoint => family()?.has_disjoint_container(a, b, false),
            Constraint::StrongDisjointConservative => a.precedes(b) && family()?.has_disjoint_container(a, b, false),
            Constraint::MinimumDisjointConservative => family()?.has_disjoint_container(a, b, true),
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Constraint::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownConstraint(s.to_string()))
    }
}

/// The instance an estimate was attained at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `||1_{eps,A}|| / ||1_{delta,B}||`.
    Democracy { a: IndexSet, eps: SignPattern, b: IndexSet, delta: SignPattern },
    /// `||x - G_m(x)|| / ||x - P_F(x)||`; `F = ∅` gives the suppression ratio.
    Greedy { x: SparseVector, m: usize, f: IndexSet },
}

impl Witness {
    pub fn replay(&self, norm: &dyn NormOracle) -> Result<f64> {
        match self {
            Witness::Democracy { a, eps, b, delta } => democracy_ratio(a, eps, b, delta, norm),
            Witness::Greedy { x, m, f } => check_f_almost_greedy_ratio(x, *m, f, norm),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub witness: Option<Witness>,
    pub mode: SearchMode,
    /// Instances evaluated.
    pub budget_used: u64,
}

impl ConstantEstimate {
    /// Recomputes the ratio at the witness; `None` when nothing was admissible.
    pub fn replay(&self, norm: &dyn NormOracle) -> Result<Option<f64>> {
        self.witness.as_ref().map(|w| w.replay(norm)).transpose()
    }
}

/// `||1_{eps,A}|| / ||1_{delta,B}||` for `|A| <= |B|`.
pub fn democracy_ratio(a: &IndexSet, eps: &SignPattern, b: &IndexSet, delta: &SignPattern, norm: &dyn NormOracle) -> Result<f64> {
    if a.len() > b.len() {
        return Err(Error::SizeMismatch { a: a.len(), b: b.len() });
    }
    Ok(ratio(norm.eval(&indicator(a, eps)?)?, norm.eval(&indicator(b, delta)?)?))
}

/// Search space and strategy for [`estimate_superdemocracy`].
#[derive(Clone, Debug, PartialEq)]
pub struct DemocracySearch {
    pub constraint: Constraint,
    /// Family for the strong constraints and for `require_pf`.
    pub family: Option<FamilyHandle>,
    /// Only count `A ∈ PF`.
    pub require_pf: bool,
    /// Search over signs (superdemocracy) or use all-plus indicators only.
    pub signs: bool,
    /// Bound on `|A|, |B|`.
    pub size_cap: usize,
    /// Ground set `{1, ..., max_index}`.
    pub max_index: u64,
    pub mode: SearchMode,
    /// Pairs examined in structured and random modes.
    pub budget: u64,
    pub seed: u64,
    pub restarts: usize,
    /// Additional sets for the structured catalog.
    pub extra_sets: Vec<IndexSet>,
}

impl Default for DemocracySearch {
    fn default() -> Self {
        DemocracySearch {
            constraint: Constraint::None,
            family: None,
            require_pf: false,
            signs: true,
            size_cap: 4,
            max_index: 12,
            mode: SearchMode::Exact,
            budget: 10_000,
            seed: 0,
            restarts: DEFAULT_RESTARTS,
            extra_sets: Vec::new(),
        }
    }
}

/// Extreme signed norms of one set: the largest (with its signs) and the smallest.
#[derive(Clone, Debug)]
struct SignedExtremes {
    set: IndexSet,
    max: (f64, SignPattern),
    min: (f64, SignPattern),
}

fn signed_norm(a: &IndexSet, eps: &SignPattern, norm: &dyn NormOracle) -> Result<f64> {
    norm.eval(&indicator(a, eps)?)
}

/// Every sign pattern, in binary order with all-plus first.
fn exact_extremes(a: &IndexSet, signs: bool, norm: &dyn NormOracle) -> Result<SignedExtremes> {
    let plus = SignPattern::all_plus(a);
    let v = signed_norm(a, &plus, norm)?;
    let mut out = SignedExtremes { set: a.clone(), max: (v, plus.clone()), min: (v, plus) };
    if signs {
        for mask in 1u64..(1u64 << a.len()) {
            let s: Vec<Sign> = (0..a.len()).map(|i| if (mask >> i) & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
            let eps = SignPattern::new(a, s)?;
            let v = signed_norm(a, &eps, norm)?;
            if v > out.max.0 {
                out.max = (v, eps.clone());
            }
            if v < out.min.0 {
                out.min = (v, eps);
            }
        }
    }
    Ok(out)
}

/// Single-flip hill climbing; `sense = 1` maximizes, `-1` minimizes.
fn coordinate_ascent(a: &IndexSet, start: SignPattern, sense: f64, norm: &dyn NormOracle) -> Result<(f64, SignPattern)> {
    let mut best = (signed_norm(a, &start, norm)?, start);
    loop {
        let mut improved = false;
        for i in 0..a.len() {
            let cand = best.1.with_flipped(i);
            let v = signed_norm(a, &cand, norm)?;
            if sense * (v - best.0) > 0.0 {
                best = (v, cand);
                improved = true;
            }
        }
        if !improved {
            return Ok(best);
        }
    }
}

fn heuristic_extremes(a: &IndexSet, signs: bool, restarts: usize, seed: u64, norm: &dyn NormOracle) -> Result<SignedExtremes> {
    if !signs || a.len() <= 10 {
        return exact_extremes(a, signs, norm);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![SignPattern::all_plus(a)];
    for _ in 0..restarts {
        let s = (0..a.len()).map(|_| if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus }).collect();
        starts.push(SignPattern::new(a, s)?);
    }
    let mut out: Option<SignedExtremes> = None;
    for s in starts {
        let hi = coordinate_ascent(a, s.clone(), 1.0, norm)?;
        let lo = coordinate_ascent(a, s, -1.0, norm)?;
        out = Some(match out {
            None => SignedExtremes { set: a.clone(), max: hi, min: lo },
            Some(mut o) => {
                if hi.0 > o.max.0 {
                    o.max = hi;
                }
                if lo.0 < o.min.0 {
                    o.min = lo;
                }
                o
            }
        });
    }
    Ok(out.expect("at least one start"))
}

/// Keeps the larger value; on ties the earlier key wins, so parallel and sequential
/// reductions agree.
fn better<K: Ord + Copy>(x: Option<(f64, K)>, y: Option<(f64, K)>) -> Option<(f64, K)> {
    match (x, y) {
        (None, y) => y,
        (x, None) => x,
        (Some(x), Some(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

/// Lower bound for the (super)democracy-type constant selected by `search.constraint`.
pub fn estimate_superdemocracy(norm: &dyn NormOracle, search: &DemocracySearch) -> Result<ConstantEstimate> {
    if search.constraint.needs_family() || search.require_pf {
        search.family.as_ref().ok_or_else(|| Error::InvalidParameter("this search needs a family".into()))?;
    }
    let sets: Vec<IndexSet> = match search.mode {
        SearchMode::Exact => {
            if search.max_index > EXACT_MAX_INDEX {
                return Err(Error::BruteForceCapExceeded { size: search.max_index as usize, cap: EXACT_MAX_INDEX as usize });
            }
            (1..=search.size_cap.min(search.max_index as usize))
                .flat_map(|k| (1..=search.max_index).combinations(k))
                .map(IndexSet::from_u64s)
                .collect()
        }
        SearchMode::Structured => structured_catalog(search),
        SearchMode::Random => random_sets(search),
    };
    let extremes: Vec<SignedExtremes> = sets
        .par_iter()
        .enumerate()
        .map(|(i, a)| match search.mode {
            SearchMode::Exact => exact_extremes(a, search.signs, norm),
            _ => heuristic_extremes(a, search.signs, search.restarts, search.seed ^ i as u64, norm),
        })
        .collect::<Result<_>>()?;
    let family = search.family.as_ref();
    let a_ok: Vec<bool> = extremes.iter().map(|e| !search.require_pf || family.unwrap().pf_member(&e.set).is_some()).collect();

    let pairs: Vec<(usize, usize)> = match search.mode {
        SearchMode::Exact | SearchMode::Structured => {
            let all = (0..extremes.len()).filter(|&i| a_ok[i]).flat_map(|i| (0..extremes.len()).map(move |j| (i, j)));
            match search.mode {
                SearchMode::Exact => all.collect(),
                _ => all.take(search.budget as usize).collect(),
            }
        }
        // Random sets come in (A, B) pairs.
        SearchMode::Random => (0..extremes.len() / 2).map(|t| (2 * t, 2 * t + 1)).filter(|&(i, _)| a_ok[i]).collect(),
    };
    let best = pairs
        .par_iter()
        .enumerate()
        .map(|(t, &(i, j))| -> Result<Option<(f64, usize)>> {
            let (a, b) = (&extremes[i], &extremes[j]);
            if !search.constraint.admits(&a.set, &b.set, family)? {
                return Ok(None);
            }
            Ok(Some((ratio(a.max.0, b.min.0), t)))
        })
        .try_reduce(|| None, |x, y| Ok(better(x, y)))?;
    let witness = best.map(|(_, t)| {
        let (a, b) = (&extremes[pairs[t].0], &extremes[pairs[t].1]);
        Witness::Democracy { a: a.set.clone(), eps: a.max.1.clone(), b: b.set.clone(), delta: b.min.1.clone() }
    });
    Ok(ConstantEstimate { value: best.map_or(0.0, |b| b.0), witness, mode: search.mode, budget_used: pairs.len() as u64 })
}

/// Intervals, initial and final segments, family members and caller-supplied sets.
fn structured_catalog(search: &DemocracySearch) -> Vec<IndexSet> {
    let top = search.max_index;
    let cap = search.size_cap as u64;
    let mut out: Vec<IndexSet> = Vec::new();
    for len in 1..=cap.min(top) {
        let step = ((top - len + 1) / 16).max(1);
        for lo in (1..=top - len + 1).step_by(step as usize) {
            out.push(IndexSet::interval(Index::new(lo), Index::new(lo + len - 1)));
        }
        out.push(IndexSet::interval(Index::new(top - len + 1), Index::new(top)));
        if let Some(FamilyHandle::Gap(g)) = &search.family {
            let step = (top / 16).max(1);
            for j in (0..top).step_by(step as usize) {
                let f = g.f_set(Index::new(j), len);
                if f.max().is_some_and(|m| m <= Index::new(top)) {
                    out.push(f);
                }
            }
        }
    }
    out.extend(search.extra_sets.iter().filter(|s| !s.is_empty() && s.len() <= search.size_cap).cloned());
    let mut seen = std::collections::HashSet::new();
    out.retain(|s| seen.insert(s.clone()));
    out
}

/// `budget` pairs `(A, B)` with `1 <= |A| <= |B| <= size_cap`, flattened.
fn random_sets(search: &DemocracySearch) -> Vec<IndexSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let top = search.max_index as usize;
    let cap = search.size_cap.min(top).max(1);
    let mut out = Vec::with_capacity(2 * search.budget as usize);
    let draw = |k: usize, rng: &mut ChaCha8Rng| IndexSet::from_u64s(sample(rng, top, k).into_iter().map(|i| i as u64 + 1));
    for _ in 0..search.budget {
        let kb = rng.gen_range(1..=cap);
        let ka = rng.gen_range(1..=kb);
        out.push(draw(ka, &mut rng));
        out.push(draw(kb, &mut rng));
    }
    out
}

/// Candidate vectors for [`estimate_suppression_qg`].
#[derive(Clone, Debug, PartialEq)]
pub struct QgSearch {
    /// Supports lie in `{1, ..., dim}`.
    pub dim: u64,
    /// Random vectors on top of the structured ones.
    pub budget: u64,
    pub seed: u64,
}

/// The structured vectors: two-level indicator mixes, `1/n`, `1/sqrt n` and the alternating
/// `(-1)^n / sqrt n`, each on `{1, ..., k}` for `k` a power of two up to `dim`.
pub fn structured_qg_vectors(dim: u64) -> Vec<SparseVector> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k <= dim {
        out.push(indicator_plus(&IndexSet::initial(k)));
        out.push(SparseVector::from_u64_pairs((1..=k).map(|n| (n, 1.0 / n as f64))));
        out.push(SparseVector::from_u64_pairs((1..=k).map(|n| (n, 1.0 / (n as f64).sqrt()))));
        out.push(SparseVector::from_u64_pairs((1..=k).map(|n| (n, if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64).sqrt()))));
        if 2 * k <= dim {
            out.push(SparseVector::from_u64_pairs((1..=2 * k).map(|n| (n, if n <= k { 1.0 } else { 2.0 }))));
            out.push(SparseVector::from_u64_pairs((1..=2 * k).map(|n| (n, if n <= k { 2.0 } else { -1.0 }))));
        }
        k *= 2;
    }
    out
}

/// Values of `m` tried for a vector with `len` nonzero coefficients.
fn m_grid(len: usize) -> Vec<usize> {
    if len <= 64 {
        return (0..=len).collect();
    }
    let step = len / 64;
    (0..=64).chain((64..=len).step_by(step)).chain([len]).dedup().collect()
}

/// Lower bound for the suppression quasi-greedy constant `sup ||x - G_m(x)|| / ||x||`.
pub fn estimate_suppression_qg(norm: &dyn NormOracle, search: &QgSearch) -> Result<ConstantEstimate> {
    let mut candidates = structured_qg_vectors(search.dim);
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let top = search.dim.max(1) as usize;
    for _ in 0..search.budget {
        let k = rng.gen_range(1..=top.min(64));
        let idx = sample(&mut rng, top, k);
        candidates.push(SparseVector::from_u64_pairs(idx.into_iter().map(|i| (i as u64 + 1, rng.gen_range(-1.0..1.0)))));
    }
    let instances: Vec<(usize, usize)> = candidates.iter().enumerate().flat_map(|(c, x)| m_grid(x.len()).into_iter().map(move |m| (c, m))).collect();
    let empty = IndexSet::empty();
    let best = instances
        .par_iter()
        .enumerate()
        .map(|(t, &(c, m))| Ok(Some((check_f_almost_greedy_ratio(&candidates[c], m, &empty, norm)?, t))))
        .try_reduce(|| None, |x, y| Ok(better(x, y)))?;
    let witness = best.map(|(_, t)| Witness::Greedy { x: candidates[instances[t].0].clone(), m: instances[t].1, f: IndexSet::empty() });
    Ok(ConstantEstimate { value: best.map_or(0.0, |b| b.0), witness, mode: SearchMode::Structured, budget_used: instances.len() as u64 })
}

/// `||x - G_m(x)|| / ||x - P_F(x)||` for `|F| <= m`.
pub fn check_f_almost_greedy_ratio(x: &SparseVector, m: usize, f: &IndexSet, norm: &dyn NormOracle) -> Result<f64> {
    Ok(greedy_ratio(x, m, f, norm)?.0)
}

fn greedy_ratio(x: &SparseVector, m: usize, f: &IndexSet, norm: &dyn NormOracle) -> Result<(f64, IndexSet)> {
    if f.len() > m {
        return Err(Error::ProjectionTooLarge { size: f.len(), m });
    }
    let lambda = greedy_set(x, m)?.greedy_set;
    let num = norm.eval(&project_complement(x, &lambda))?;
    let den = norm.eval(&project_complement(x, f))?;
    Ok((ratio(num, den), lambda))
}

/// A ratio together with whether its side condition admits it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRatio {
    pub ratio: f64,
    pub admissible: bool,
}

/// `F \ Λ < Λ \ F`.
pub fn spg_admissible(f: &IndexSet, lambda: &IndexSet) -> bool {
    f.difference(lambda).precedes(&lambda.difference(f))
}

/// `F = ∅` or `min F <= min Λ`.
pub fn mpg_admissible(f: &IndexSet, lambda: &IndexSet) -> bool {
    match (f.min(), lambda.min()) {
        (None, _) | (_, None) => true,
        (Some(a), Some(b)) => a <= b,
    }
}

/// The strong partially greedy ratio, admissible when `F \ Λ_m(x) < Λ_m(x) \ F`.
pub fn check_f_spg_ratio(x: &SparseVector, m: usize, f: &IndexSet, norm: &dyn NormOracle) -> Result<AdmissibleRatio> {
    let (r, lambda) = greedy_ratio(x, m, f, norm)?;
    Ok(AdmissibleRatio { ratio: r, admissible: spg_admissible(f, &lambda) })
}

/// The minimum partially greedy ratio, admissible when `F = ∅` or `min F <= Λ_m(x)`.
pub fn check_f_mpg_ratio(x: &SparseVector, m: usize, f: &IndexSet, norm: &dyn NormOracle) -> Result<AdmissibleRatio> {
    let (r, lambda) = greedy_ratio(x, m, f, norm)?;
    Ok(AdmissibleRatio { ratio: r, admissible: mpg_admissible(f, &lambda) })
}

/// `min_{n in Λ} |x_n| * ||1_{eps(x), Λ}|| / ||x||` with `Λ = Λ_m(x)`.
pub fn truncation_qg_check(x: &SparseVector, m: usize, norm: &dyn NormOracle) -> Result<f64> {
    let g = greedy_set(x, m)?;
    let lambda = g.greedy_set;
    let min_modulus = lambda.iter().map(|n| x.coefficient(n).abs()).fold(f64::INFINITY, f64::min);
    let min_modulus = if lambda.is_empty() { 0.0 } else { min_modulus };
    let eps = SignPattern::of_vector(x, &lambda);
    Ok(ratio(min_modulus * norm.eval(&indicator(&lambda, &eps)?)?, norm.eval(x)?))
}

/// Smallest singleton member `{g}` of the family.
pub fn smallest_singleton(family: &FamilyHandle) -> Index {
    match family {
        FamilyHandle::Gap(g) => g.b(Index::ONE),
        FamilyHandle::InitialSegments | FamilyHandle::AllFinite => Index::ONE,
    }
}

/// Cap on the `F ∪ {∅}`-almost greedy constant given a measured `F`-almost greedy constant
/// `delta`, when the measured set holds the companion instance `(x, m, {g})` of each `(x, m)`,
/// `m >= 1`: `||x - P_{g} x||^p <= 2 ||x||^p`, so the ratio grows by at most `2^{1/p}`.
pub fn emptyset_companion_cap(delta: f64, p: f64) -> f64 {
    2f64.powf(1.0 / p) * delta.max(1.0)
}

/// Suppression quasi-greedy cap from the strong partially greedy empty-set lemma, with `c_2 = 1`:
/// `max{(1 + 2 max G)^{1/p}, Δ (1 + |G|)^{1/p} (1 + max G)^{1/p}}`.
pub fn appendix_spg_qg_cap(delta: f64, p: f64, max_g: f64, size_g: f64) -> f64 {
    let r = 1.0 / p;
    (1.0 + 2.0 * max_g).powf(r).max(delta * (1.0 + size_g).powf(r) * (1.0 + max_g).powf(r))
}

/// Suppression quasi-greedy cap from the minimum partially greedy empty-set lemma, with `c_2 = 1`
/// and `s = min G`: `(Δ^p (1 + min F)(1 + (s - 1)) + 2(s - 1))^{1/p}`, and at least
/// `(1 + min F)^{1/p}` for `m <= min F`.
pub fn appendix_mpg_qg_cap(delta: f64, p: f64, min_card: f64, s: f64) -> f64 {
    let body = delta.powf(p) * (1.0 + min_card) * s + 2.0 * (s - 1.0);
    body.powf(1.0 / p).max((1.0 + min_card).powf(1.0 / p))
}
