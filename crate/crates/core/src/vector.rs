//! Finitely supported real sequences, finite index sets and sign patterns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Index, Result};

/// A finitely supported sequence `x = sum x_n e_n`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    entries: BTreeMap<Index, f64>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Index, f64)>>(pairs: I) -> Self {
        let mut x = Self::zero();
        for (n, v) in pairs {
            x.set(n, v);
        }
        x
    }

    pub fn from_u64_pairs<I: IntoIterator<Item = (u64, f64)>>(pairs: I) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(n, v)| (Index::new(n), v)))
    }

    /// `sum v_i e_{i+1}`, i.e. coefficients listed from index 1 on.
    pub fn from_dense(values: &[f64]) -> Self {
        Self::from_pairs(values.iter().enumerate().map(|(i, &v)| (Index::from(i + 1), v)))
    }

    /// Sets `e_n^*(x) = v`; writing zero removes `n` from the support.
    ///
    /// # Panics
    /// If `n = 0`: coordinates start at 1.
    pub fn set(&mut self, n: Index, v: f64) {
        assert!(!n.is_zero(), "coordinate 0 does not exist");
        if v == 0.0 {
            self.entries.remove(&n);
        } else {
            self.entries.insert(n, v);
        }
    }

    pub fn coefficient(&self, n: Index) -> f64 {
        self.entries.get(&n).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> IndexSet {
        IndexSet::from_sorted_unchecked(self.entries.keys().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in increasing index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Index, f64)> + ExactSizeIterator + '_ {
        self.entries.iter().map(|(&n, &v)| (n, v))
    }

    pub fn max_index(&self) -> Option<Index> {
        self.entries.keys().next_back().copied()
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self::from_pairs(self.iter().map(|(n, v)| (n, lambda * v)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, v) in other.iter() {
            out.set(n, out.coefficient(n) + v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Largest coefficient modulus (zero for the zero vector).
    pub fn sup_modulus(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A finite set of positive integers, kept strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Index>", into = "Vec<Index>")]
pub struct IndexSet {
    elements: Vec<Index>,
}

impl From<Vec<Index>> for IndexSet {
    fn from(v: Vec<Index>) -> Self {
        IndexSet::from_indices(v)
    }
}

impl From<IndexSet> for Vec<Index> {
    fn from(s: IndexSet) -> Self {
        s.elements
    }
}

impl FromIterator<Index> for IndexSet {
    fn from_iter<I: IntoIterator<Item = Index>>(iter: I) -> Self {
        IndexSet::from_indices(iter.into_iter().collect())
    }
}

impl IndexSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(mut v: Vec<Index>) -> Self {
        v.sort_unstable();
        v.dedup();
        IndexSet { elements: v }
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(it: I) -> Self {
        Self::from_indices(it.into_iter().map(Index::new).collect())
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<Index>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        IndexSet { elements: v }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: Index, hi: Index) -> Self {
        let mut v = Vec::new();
        let mut n = lo;
        while n <= hi {
            v.push(n);
            n = n + Index::ONE;
        }
        IndexSet { elements: v }
    }

    /// `I_m = {1, ..., m}`.
    pub fn initial(m: u64) -> Self {
        Self::interval(Index::ONE, Index::new(m))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<Index> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<Index> {
        self.elements.last().copied()
    }

    pub fn as_slice(&self) -> &[Index] {
        &self.elements
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Index> + ExactSizeIterator + '_ {
        self.elements.iter().copied()
    }

    pub fn contains(&self, n: Index) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.elements.clone();
        v.extend_from_slice(&other.elements);
        Self::from_indices(v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_sorted_unchecked(self.iter().filter(|&n| other.contains(n)).collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self::from_sorted_unchecked(self.iter().filter(|&n| !other.contains(n)).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|n| other.contains(n))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|n| !other.contains(n))
    }

    /// `A < B`, i.e. `max A < min B`; vacuously true if either set is empty.
    pub fn precedes(&self, other: &Self) -> bool {
        match (self.max(), other.min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    /// `j + A`.
    pub fn shifted(&self, j: Index) -> Self {
        Self::from_sorted_unchecked(self.iter().map(|n| n + j).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a real number, with `sgn(0) = +1`.
    pub fn of(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Signs `(eps_n)_{n in A}` attached to a stated domain `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern {
    domain: IndexSet,
    signs: Vec<Sign>,
}

impl SignPattern {
    pub fn all_plus(domain: &IndexSet) -> Self {
        SignPattern { domain: domain.clone(), signs: vec![Sign::Plus; domain.len()] }
    }

    /// Signs listed in increasing order of the domain.
    pub fn new(domain: &IndexSet, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != domain.len() {
            return Err(Error::SignDomainMismatch);
        }
        Ok(SignPattern { domain: domain.clone(), signs })
    }

    /// Signs from real values, each of which must be exactly `+1` or `-1`.
    pub fn from_values(domain: &IndexSet, values: &[f64]) -> Result<Self> {
        let signs = values
            .iter()
            .map(|&v| match v {
                v if v == 1.0 => Ok(Sign::Plus),
                v if v == -1.0 => Ok(Sign::Minus),
                v => Err(Error::InvalidSign(v)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, signs)
    }

    /// `eps_n = sgn(e_n^*(x))` on the given domain.
    pub fn of_vector(x: &SparseVector, domain: &IndexSet) -> Self {
        let signs = domain.iter().map(|n| Sign::of(x.coefficient(n))).collect();
        SignPattern { domain: domain.clone(), signs }
    }

    pub fn domain(&self) -> &IndexSet {
        &self.domain
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn with_flipped(&self, position: usize) -> Self {
        let mut out = self.clone();
        out.signs[position] = out.signs[position].flip();
        out
    }
}

/// `1_{eps,A} = sum_{n in A} eps_n e_n`.
pub fn indicator(a: &IndexSet, eps: &SignPattern) -> Result<SparseVector> {
    if eps.domain() != a {
        return Err(Error::SignDomainMismatch);
    }
    Ok(SparseVector::from_pairs(a.iter().zip(eps.signs()).map(|(n, s)| (n, s.value()))))
}

/// `1_A` with all signs positive.
pub fn indicator_plus(a: &IndexSet) -> SparseVector {
    SparseVector::from_pairs(a.iter().map(|n| (n, 1.0)))
}
