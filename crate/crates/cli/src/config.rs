//! Experiment configuration: a flat TOML file, overridden by command-line flags, resolved
//! against per-experiment defaults.
//!
//! ```toml
//! experiment = "thm43-nondemocracy"
//! seed = 7
//! dim = 256              # experiment-specific size: max index, max m, or max M
//! budget = 200           # samples or random instances
//! out = "reports"
//! gap = "power-of-two-spikes"
//! norm = "thm43"
//! depth = 22
//! size_cap = 4
//! p = [2.0, 1.35, 1.02]
//! alpha = 1.0
//! horizon = 1000000
//! construction = "spikes22.json"
//! ```
//!
//! Unknown keys are rejected. Every key is optional except `experiment`, which may come
//! from `--experiment` instead.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gapgreedy::constructions::Lemma58Construction;
use gapgreedy::families::{GapRule, DEFAULT_HORIZON};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The experiment catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    CoveringAudit,
    SlidingAudit,
    PfClosureAudit,
    KtDemocracy,
    Thm43DemocracyWindow,
    Thm43Nondemocracy,
    Thm43Conditionality,
    #[serde(rename = "thm43-claim-NA")]
    Thm43ClaimNa,
    Lemma58Blowup,
    Lemma510Bounds,
    DefinitionOrdering,
    AppendixEmptyset,
    OracleCrosscheck,
}

impl Experiment {
    pub const ALL: [Experiment; 13] = [
        Experiment::CoveringAudit,
        Experiment::SlidingAudit,
        Experiment::PfClosureAudit,
        Experiment::KtDemocracy,
        Experiment::Thm43DemocracyWindow,
        Experiment::Thm43Nondemocracy,
        Experiment::Thm43Conditionality,
        Experiment::Thm43ClaimNa,
        Experiment::Lemma58Blowup,
        Experiment::Lemma510Bounds,
        Experiment::DefinitionOrdering,
        Experiment::AppendixEmptyset,
        Experiment::OracleCrosscheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::CoveringAudit => "covering-audit",
            Experiment::SlidingAudit => "sliding-audit",
            Experiment::PfClosureAudit => "pf-closure-audit",
            Experiment::KtDemocracy => "kt-democracy",
            Experiment::Thm43DemocracyWindow => "thm43-democracy-window",
            Experiment::Thm43Nondemocracy => "thm43-nondemocracy",
            Experiment::Thm43Conditionality => "thm43-conditionality",
            Experiment::Thm43ClaimNa => "thm43-claim-NA",
            Experiment::Lemma58Blowup => "lemma58-blowup",
            Experiment::Lemma510Bounds => "lemma510-bounds",
            Experiment::DefinitionOrdering => "definition-ordering",
            Experiment::AppendixEmptyset => "appendix-emptyset",
            Experiment::OracleCrosscheck => "oracle-crosscheck",
        }
    }

    fn defaults(self) -> Defaults {
        let d = Defaults::base();
        match self {
            Experiment::CoveringAudit => Defaults { gap: "constant:2", dim: 500, budget: 1000, ..d },
            Experiment::SlidingAudit => Defaults { dim: 10_000, ..d },
            Experiment::PfClosureAudit => Defaults { norm: "thm43", dim: 24, budget: 2000, ..d },
            Experiment::KtDemocracy => Defaults { dim: 4096, budget: 200, ..d },
            Experiment::Thm43DemocracyWindow => Defaults { norm: "thm43", budget: 200, ..d },
            Experiment::Thm43Nondemocracy => Defaults { gap: "power-of-two-spikes", norm: "thm43", depth: 22, dim: 256, ..d },
            Experiment::Thm43Conditionality => Defaults { norm: "thm43", dim: 256, ..d },
            Experiment::Thm43ClaimNa => Defaults { budget: 1000, ..d },
            Experiment::Lemma58Blowup => Defaults { norm: "lemma58", ..d },
            Experiment::Lemma510Bounds => Defaults { gap: "fourth-power-marked", norm: "lemma510", dim: 100_000, budget: 200, horizon: 100_000, ..d },
            Experiment::DefinitionOrdering => Defaults { dim: 30, budget: 1000, ..d },
            Experiment::AppendixEmptyset => Defaults { dim: 12, budget: 200, ..d },
            Experiment::OracleCrosscheck => Defaults { dim: 60, budget: 1000, ..d },
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| CliError::Config(format!("unknown experiment `{s}`; known: {}", Experiment::ALL.map(|e| e.as_str()).join(", "))))
    }
}

struct Defaults {
    gap: &'static str,
    norm: &'static str,
    depth: usize,
    dim: u64,
    budget: u64,
    horizon: u64,
}

impl Defaults {
    fn base() -> Self {
        Defaults { gap: "identity", norm: "kt", depth: 6, dim: 64, budget: 100, horizon: DEFAULT_HORIZON }
    }
}

/// The file layer. Every field is optional so flags and defaults can fill the rest.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub dim: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub gap: Option<String>,
    pub norm: Option<String>,
    pub depth: Option<usize>,
    pub size_cap: Option<usize>,
    pub p: Option<Vec<f64>>,
    pub alpha: Option<f64>,
    pub horizon: Option<u64>,
    pub construction: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Fields set in `other` win.
    pub fn overridden_by(self, other: ConfigFile) -> ConfigFile {
        ConfigFile {
            experiment: other.experiment.or(self.experiment),
            seed: other.seed.or(self.seed),
            dim: other.dim.or(self.dim),
            budget: other.budget.or(self.budget),
            out: other.out.or(self.out),
            gap: other.gap.or(self.gap),
            norm: other.norm.or(self.norm),
            depth: other.depth.or(self.depth),
            size_cap: other.size_cap.or(self.size_cap),
            p: other.p.or(self.p),
            alpha: other.alpha.or(self.alpha),
            horizon: other.horizon.or(self.horizon),
            construction: other.construction.or(self.construction),
        }
    }

    pub fn resolve(self) -> Result<ExperimentConfig, CliError> {
        let name = self.experiment.ok_or_else(|| CliError::Config("no experiment given (use --experiment or `experiment = ...`)".into()))?;
        let experiment: Experiment = name.parse()?;
        let d = experiment.defaults();
        let gap = self.gap.unwrap_or_else(|| d.gap.to_string());
        gap.parse::<GapRule>().map_err(|e| CliError::Config(e.to_string()))?;
        let cfg = ExperimentConfig {
            experiment,
            seed: self.seed.unwrap_or(0),
            dim: self.dim.unwrap_or(d.dim),
            budget: self.budget.unwrap_or(d.budget),
            out: self.out.unwrap_or_else(|| PathBuf::from("reports")),
            gap,
            norm: self.norm.unwrap_or_else(|| d.norm.to_string()),
            depth: self.depth.unwrap_or(d.depth),
            size_cap: self.size_cap.unwrap_or(4),
            p: self.p.unwrap_or_else(|| Lemma58Construction::DEFAULT_P.to_vec()),
            alpha: self.alpha.unwrap_or(1.0),
            horizon: self.horizon.unwrap_or(d.horizon),
            construction: self.construction,
        };
        if cfg.dim == 0 {
            return Err(CliError::Config("dim must be positive".into()));
        }
        Ok(cfg)
    }
}

/// A fully resolved configuration; echoed verbatim into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub dim: u64,
    pub budget: u64,
    #[serde(skip)]
    pub out: PathBuf,
    pub gap: String,
    pub norm: String,
    pub depth: usize,
    pub size_cap: usize,
    pub p: Vec<f64>,
    pub alpha: f64,
    pub horizon: u64,
    pub construction: Option<PathBuf>,
}
