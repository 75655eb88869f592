//! Recursive parameter builders behind the counterexample norms, and a JSON file format
//! for reproducible reruns.
//!
//! File schema (indices are decimal strings so values past `2^53` survive):
//!
//! ```json
//! { "construction": "thm43",
//!   "gap": { "kind": "identity" }, "depth": 2, "q": 4.0,
//!   "n": ["1", "5", "149"], "blocks": [["20"], ["11199", "11200"]] }
//! { "construction": "lemma58",
//!   "gap": { "kind": "identity" }, "p": [2.0, 1.35, 1.02],
//!   "k": [2, 18, 98], "n": [4, 24, 302], "m": [2, 18, 278] }
//! { "construction": "lemma510",
//!   "gap": { "kind": "fourth-power-marked" }, "alpha": 1.0, "horizon": 100000,
//!   "big_m": 2, "big_m1": 2, "marked": 17 }
//! ```
//!
//! Loading re-verifies every invariant.

mod lemma510;
mod lemma58;
mod thm43;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use lemma510::Lemma510Construction;
pub use lemma58::{escaped_count, Lemma58Construction};
pub use thm43::Thm43Construction;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum Construction {
    Thm43(Thm43Construction),
    Lemma58(Lemma58Construction),
    Lemma510(Lemma510Construction),
}

impl Construction {
    pub fn verify_invariants(&self) -> Result<()> {
        match self {
            Construction::Thm43(c) => c.verify_invariants(),
            Construction::Lemma58(c) => c.verify_invariants(),
            Construction::Lemma510(c) => c.verify_invariants(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("constructions serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Construction = serde_json::from_str(text).map_err(|e| Error::InvalidConstruction(e.to_string()))?;
        let c = match c {
            Construction::Thm43(t) => Construction::Thm43(t.rebuild_positions()),
            other => other,
        };
        c.verify_invariants()?;
        Ok(c)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::InvalidConstruction(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidConstruction(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
