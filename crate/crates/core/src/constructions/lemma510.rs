use serde::{Deserialize, Serialize};

use crate::families::GapSequence;
use crate::{Error, Result};

/// Parameters for the minimum partially greedy basis that is not democratic.
///
/// The gap sequence must satisfy `|{n <= m : a_n >= 2}| <= alpha m^{1/4}` for every `m`;
/// the builder verifies this up to its horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma510Construction {
    gap: GapSequence,
    alpha: f64,
    horizon: u64,
    /// `M = max a_n`.
    big_m: u64,
    /// `M_1 = max{M, ceil(alpha)}`.
    big_m1: u64,
    /// Marked indices (`a_n >= 2`) up to the horizon.
    marked: u64,
}

/// Smallest `m <= horizon` where the density cap fails, with the count there.
fn first_cap_violation(gap: &GapSequence, alpha: f64, horizon: u64) -> Option<(u64, u64)> {
    let a4 = alpha.powi(4);
    let mut count = 0u64;
    for m in 1..=horizon {
        if gap.a_small(m) >= 2 {
            count += 1;
        }
        // count <= alpha m^{1/4}  <=>  count^4 <= alpha^4 m, compared without roots.
        if (count as f64).powi(4) > a4 * m as f64 {
            return Some((m, count));
        }
    }
    None
}

fn marked_up_to(gap: &GapSequence, horizon: u64) -> u64 {
    (1..=horizon).filter(|&n| gap.a_small(n) >= 2).count() as u64
}

impl Lemma510Construction {
    pub fn build(gap: &GapSequence, alpha: f64, horizon: u64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
        }
        let big_m = gap.bound().ok_or(Error::UnboundedGap)?;
        if let Some((m, count)) = first_cap_violation(gap, alpha, horizon) {
            return Err(Error::DensityCapViolated { m, count });
        }
        let big_m1 = big_m.max(alpha.ceil() as u64);
        let marked = marked_up_to(gap, horizon);
        Ok(Lemma510Construction { gap: gap.clone(), alpha, horizon, big_m, big_m1, marked })
    }

    pub fn verify_invariants(&self) -> Result<()> {
        let rebuilt = Self::build(&self.gap, self.alpha, self.horizon)?;
        if rebuilt != *self {
            return Err(Error::InvalidConstruction("recorded M, M_1 or marked count disagree with the gap rule".into()));
        }
        Ok(())
    }

    pub fn gap(&self) -> &GapSequence {
        &self.gap
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn big_m(&self) -> u64 {
        self.big_m
    }

    pub fn big_m1(&self) -> u64 {
        self.big_m1
    }

    pub fn marked(&self) -> u64 {
        self.marked
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourth_power_marks_satisfy_the_cap() {
        let c = Lemma510Construction::build(&GapSequence::fourth_power_marked(), 1.0, 100_000).unwrap();
        assert_eq!((c.big_m(), c.big_m1()), (2, 2));
        // Fourth powers up to 10^5: 1, 16, ..., 17^4 = 83521.
        assert_eq!(c.marked(), 17);
        c.verify_invariants().unwrap();
    }

    #[test]
    fn constant_two_fails_at_the_first_violation() {
        // count = m for a_n = 2; m^4 > m first at m = 2.
        let err = Lemma510Construction::build(&GapSequence::constant(2), 1.0, 1000).unwrap_err();
        assert_eq!(err, Error::DensityCapViolated { m: 2, count: 2 });
    }

    #[test]
    fn unit_gaps_have_no_marks() {
        let c = Lemma510Construction::build(&GapSequence::constant(1), 1.0, 1000).unwrap();
        assert_eq!(c.marked(), 0);
        assert_eq!(c.big_m1(), 1);
    }

    #[test]
    fn unbounded_gaps_are_rejected() {
        assert_eq!(Lemma510Construction::build(&GapSequence::identity(), 1.0, 10), Err(Error::UnboundedGap));
    }
}
