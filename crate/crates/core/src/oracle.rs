//! Brute-force reference implementations. Slow on purpose, and capped: inputs beyond a cap
//! are errors, never silently truncated.

use crate::constants::{ratio, Constraint};
use crate::families::{FamilyHandle, GapSequence};
use crate::greedy::project;
use crate::norms::{l2, NormOracle};
use crate::vector::indicator;
use crate::{Error, Index, IndexSet, Result, Sign, SignPattern, SparseVector};

pub const BF_SIGMA_CAP: usize = 20;
pub const BF_PF_CAP: u64 = 200;
pub const BF_BRANCH_CAP: usize = 12;
pub const BF_DEMOCRACY_CAP: u64 = 12;

fn subset_of(elements: &[Index], mask: u64) -> IndexSet {
    IndexSet::from_indices(elements.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &n)| n).collect())
}

/// `min ||x - P_A x||` over every `A ⊆ supp x` with `|A| <= m`, scanning bitmasks in
/// increasing order; the first strict minimum wins.
pub fn bf_sigma_tilde(x: &SparseVector, m: usize, norm: &dyn NormOracle) -> Result<(f64, IndexSet)> {
    let support: Vec<Index> = x.iter().map(|(n, _)| n).collect();
    if support.len() > BF_SIGMA_CAP {
        return Err(Error::BruteForceCapExceeded { size: support.len(), cap: BF_SIGMA_CAP });
    }
    let mut best: Option<(f64, IndexSet)> = None;
    for mask in 0u64..(1u64 << support.len()) {
        if mask.count_ones() as usize > m {
            continue;
        }
        let a = subset_of(&support, mask);
        let rest = SparseVector::from_pairs(x.iter().filter(|(n, _)| !a.contains(*n)));
        let v = norm.eval(&rest)?;
        if best.as_ref().map_or(true, |b| v < b.0) {
            best = Some((v, a));
        }
    }
    Ok(best.expect("the empty set is always a candidate"))
}

fn partial_sums_up_to(g: &GapSequence, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut b = 0u64;
    for n in 1.. {
        b += g.a_small(n);
        if b > limit {
            break;
        }
        out.push(b);
    }
    out
}

/// `S ∈ PF_(a_n)` by testing every `F_{j,l}` with `j <= max S` and `r_l <= 2 max S`.
pub fn bf_pf_member(g: &GapSequence, s: &IndexSet) -> Result<bool> {
    let Some(max) = s.max() else { return Ok(true) };
    let max = max.to_u64().filter(|&m| m <= BF_PF_CAP).ok_or(Error::BruteForceCapExceeded {
        size: max.to_u64().unwrap_or(u64::MAX) as usize,
        cap: BF_PF_CAP as usize,
    })?;
    let b = partial_sums_up_to(g, 2 * max);
    let wanted: Vec<u64> = s.iter().map(|n| n.to_u64().unwrap()).collect();
    for j in 0..=max {
        for l in 1..=b.len() {
            let f: Vec<u64> = b[..l].iter().map(|&v| j + v).collect();
            if wanted.iter().all(|w| f.contains(w)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `sup ||P_A x||_2` over every `A ⊆ supp x` with `|A|^2 < min A`.
pub fn bf_branch2(x: &SparseVector) -> Result<f64> {
    let support: Vec<Index> = x.iter().map(|(n, _)| n).collect();
    if support.len() > BF_BRANCH_CAP {
        return Err(Error::BruteForceCapExceeded { size: support.len(), cap: BF_BRANCH_CAP });
    }
    let mut best = 0.0f64;
    for mask in 1u64..(1u64 << support.len()) {
        let a = subset_of(&support, mask);
        let k = Index::from(a.len());
        if k * k < a.min().unwrap() {
            best = best.max(l2(&project(x, &a)));
        }
    }
    Ok(best)
}

/// `sup_{j,l} ||P_{(j + I_{r_l}) \ F_{j,l}} x||_2`, enumerating `j < max supp x` and stopping
/// `l` once `j + r_l >= max supp x`.
pub fn bf_branch4(x: &SparseVector, g: &GapSequence) -> Result<f64> {
    let Some(max) = x.max_index() else { return Ok(0.0) };
    let max = max.to_u64().filter(|&m| m <= 1 << 20).ok_or(Error::IndexTooLarge(max))?;
    let b = partial_sums_up_to(g, max + g.bound().unwrap_or(max) + 1);
    let mut best = 0.0f64;
    for j in 0..max {
        for l in 1..=b.len() {
            let f = &b[..l];
            let sq: f64 =
                x.iter().map(|(n, v)| (n.to_u64().unwrap(), v)).filter(|&(n, _)| n > j && n <= j + b[l - 1] && !f.contains(&(n - j))).map(|(_, v)| v * v).sum();
            best = best.max(sq.sqrt());
            if j + b[l - 1] >= max {
                break;
            }
        }
    }
    Ok(best)
}

fn bf_family_sets(family: &FamilyHandle, reach: u64) -> Vec<IndexSet> {
    match family {
        FamilyHandle::Gap(g) => {
            let b = partial_sums_up_to(g, reach + g.bound().unwrap_or(reach) + 1);
            let mut out = Vec::new();
            for j in 0..=reach {
                for l in 1..=b.len() {
                    out.push(IndexSet::from_u64s(b[..l].iter().map(|v| j + v)));
                    if j + b[l - 1] >= reach {
                        break;
                    }
                }
            }
            out
        }
        FamilyHandle::InitialSegments => (1..=reach).map(IndexSet::initial).collect(),
        FamilyHandle::AllFinite => Vec::new(),
    }
}

fn bf_admits(c: Constraint, a: &IndexSet, b: &IndexSet, members: &[IndexSet], all_finite: bool) -> bool {
    let container = |min_before: bool| {
        let fits = |f: &IndexSet| {
            a.is_subset(f) && f.is_disjoint(b) && (!min_before || f.min().zip(b.min()).is_some_and(|(x, y)| x < y))
        };
        if all_finite {
            fits(a)
        } else {
            members.iter().any(fits)
        }
    };
    a.len() <= b.len()
        && match c {
            Constraint::None => true,
            Constraint::Disjoint => a.iter().all(|n| !b.contains(n)),
            Constraint::Conservative => a.max().zip(b.min()).map_or(true, |(x, y)| x < y),
            Constraint::StrongDisjoint => container(false),
            Constraint::StrongDisjointConservative => a.max().zip(b.min()).map_or(true, |(x, y)| x < y) && container(false),
            Constraint::MinimumDisjointConservative => container(true),
        }
}

fn sign_patterns(a: &IndexSet, signs: bool) -> Vec<SignPattern> {
    let count = if signs { 1u64 << a.len() } else { 1 };
    (0..count)
        .map(|mask| {
            let s = (0..a.len()).map(|i| if (mask >> i) & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
            SignPattern::new(a, s).expect("matching length")
        })
        .collect()
}

/// `max ||1_{eps,A}|| / ||1_{delta,B}||` over every admissible `(A, eps, B, delta)` with
/// nonempty `A, B ⊆ {1, ..., max_index}` of size at most `size_cap`.
pub fn bf_superdemocracy(
    norm: &dyn NormOracle,
    constraint: Constraint,
    family: Option<&FamilyHandle>,
    require_pf: bool,
    signs: bool,
    size_cap: usize,
    max_index: u64,
) -> Result<f64> {
    if max_index > BF_DEMOCRACY_CAP {
        return Err(Error::BruteForceCapExceeded { size: max_index as usize, cap: BF_DEMOCRACY_CAP as usize });
    }
    if (constraint.needs_family() || require_pf) && family.is_none() {
        return Err(Error::InvalidParameter("this search needs a family".into()));
    }
    let members = family.map(|f| bf_family_sets(f, max_index)).unwrap_or_default();
    let all_finite = matches!(family, Some(FamilyHandle::AllFinite));
    let ground: Vec<Index> = (1..=max_index).map(Index::new).collect();
    let sets: Vec<IndexSet> =
        (1u64..(1u64 << max_index)).filter(|m| m.count_ones() as usize <= size_cap).map(|m| subset_of(&ground, m)).collect();
    let in_pf = |a: &IndexSet| all_finite || members.iter().any(|f| a.is_subset(f));
    let mut best = 0.0f64;
    for a in &sets {
        if require_pf && !in_pf(a) {
            continue;
        }
        for b in &sets {
            if !bf_admits(constraint, a, b, &members, all_finite) {
                continue;
            }
            for eps in sign_patterns(a, signs) {
                let na = norm.eval(&indicator(a, &eps)?)?;
                for delta in sign_patterns(b, signs) {
                    best = best.max(ratio(na, norm.eval(&indicator(b, &delta)?)?));
                }
            }
        }
    }
    Ok(best)
}
