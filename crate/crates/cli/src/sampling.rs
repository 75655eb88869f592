//! Seeded samplers shared by several experiments.

use std::collections::BTreeSet;

use gapgreedy::constructions::Thm43Construction;
use gapgreedy::{Index, IndexSet};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect()
}

/// Random signs or all `+1`, with equal odds.
pub fn mixed_signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    if rng.gen_bool(0.5) {
        random_signs(rng, n)
    } else {
        vec![1.0; n]
    }
}

/// `size` distinct indices from `{1, ..., max}`.
pub fn random_set(rng: &mut ChaCha8Rng, max: u64, size: usize) -> IndexSet {
    let size = size.min(max as usize);
    IndexSet::from_u64s(sample(rng, max as usize, size).into_iter().map(|i| i as u64 + 1))
}

/// A member of `PF` for a conditional-basis construction. Two thirds of the samples contain
/// an element of some block `A_k`; half of those also take the partial sums closest to
/// `A_{k+1}`.
pub fn pf_set(c: &Thm43Construction, rng: &mut ChaCha8Rng) -> IndexSet {
    let g = c.gap();
    let kind = if c.depth() == 0 { 0 } else { rng.gen_range(0..3) };
    if kind == 0 {
        let j = Index::new(if rng.gen_bool(0.5) { rng.gen_range(0..4) } else { rng.gen_range(0..2000) });
        let ell = rng.gen_range(1..=80u64);
        let f = g.f_set(j, ell);
        let keep = rng.gen_range(1..=f.len().min(40));
        return f.iter().take(keep).filter(|&n| n <= c.built_limit()).collect();
    }
    let k = rng.gen_range(0..c.depth());
    let block = &c.blocks()[k];
    let hit = block.as_slice()[rng.gen_range(0..block.len())];
    let anchors = g.partial_sum_count(hit);
    let i = if rng.gen_bool(0.5) {
        anchors
    } else {
        Index::new(rng.gen_range(1..=anchors.to_u64().unwrap_or(u64::MAX).min(1_000_000)))
    };
    let j = hit - g.b(i);
    let mut positions = BTreeSet::from([i]);
    let lo = i.saturating_sub(Index::new(40)).max(Index::ONE);
    for _ in 0..rng.gen_range(0..30) {
        positions.insert(lo + Index::new(rng.gen_range(0..=80u64)));
    }
    if kind == 2 && k + 1 < c.depth() {
        let target = c.blocks()[k + 1].min().unwrap();
        if let Some(t) = target.checked_sub(j + Index::ONE) {
            let next = g.partial_sum_count(t) + Index::ONE;
            positions.extend([next - Index::ONE, next, next + Index::ONE]);
        }
    }
    positions.into_iter().filter(|p| !p.is_zero()).map(|p| j + g.b(p)).filter(|&n| n <= c.built_limit()).collect()
}

/// Arbitrary sets for the same construction: parts of the blocks, small indices, and
/// indices just around the blocks.
pub fn any_set(c: &Thm43Construction, rng: &mut ChaCha8Rng) -> IndexSet {
    let mut picked: Vec<Index> = c.blocks().iter().flat_map(|b| b.iter()).filter(|_| rng.gen_bool(0.4)).collect();
    for _ in 0..rng.gen_range(0..40) {
        picked.push(Index::new(rng.gen_range(1..100_000)));
    }
    if c.depth() > 0 {
        for _ in 0..rng.gen_range(0..5) {
            let block = &c.blocks()[rng.gen_range(0..c.depth())];
            let near = (block.min().unwrap() + Index::new(rng.gen_range(0..200))).saturating_sub(Index::new(100)).max(Index::ONE);
            picked.push(near);
        }
    }
    if picked.is_empty() {
        picked.push(Index::ONE);
    }
    IndexSet::from_indices(picked)
}
