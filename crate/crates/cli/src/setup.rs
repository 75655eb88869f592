//! Builds gap sequences, constructions and norms from a resolved configuration. A
//! `--construction` file replaces the built construction of the matching kind.

use std::sync::Arc;

use gapgreedy::constructions::{Construction, Lemma510Construction, Lemma58Construction, Thm43Construction};
use gapgreedy::families::{FamilyHandle, GapRule, GapSequence};
use gapgreedy::norms::{KtNorm, Lemma510Norm, Lemma58Norm, LinfNorm, LpNorm, NormOracle, Thm43Norm};

use crate::config::ExperimentConfig;
use crate::CliError;

pub fn gap(cfg: &ExperimentConfig) -> Result<GapSequence, CliError> {
    let rule: GapRule = cfg.gap.parse().map_err(|e: gapgreedy::Error| CliError::Config(e.to_string()))?;
    Ok(GapSequence::new(rule)?)
}

pub fn family(cfg: &ExperimentConfig) -> Result<FamilyHandle, CliError> {
    Ok(FamilyHandle::gap(gap(cfg)?))
}

fn loaded(cfg: &ExperimentConfig) -> Result<Option<Construction>, CliError> {
    cfg.construction.as_deref().map(Construction::load).transpose().map_err(|e| CliError::Config(e.to_string()))
}

fn wrong_kind(cfg: &ExperimentConfig, wanted: &str) -> CliError {
    CliError::Config(format!("{} does not hold a {wanted} construction", cfg.construction.as_ref().unwrap().display()))
}

pub fn thm43(cfg: &ExperimentConfig) -> Result<Arc<Thm43Construction>, CliError> {
    match loaded(cfg)? {
        Some(Construction::Thm43(c)) => Ok(Arc::new(c)),
        Some(_) => Err(wrong_kind(cfg, "thm43")),
        None => Ok(Arc::new(Thm43Construction::build(&gap(cfg)?, cfg.depth, Thm43Construction::DEFAULT_Q, cfg.horizon)?)),
    }
}

pub fn lemma58(cfg: &ExperimentConfig) -> Result<Arc<Lemma58Construction>, CliError> {
    match loaded(cfg)? {
        Some(Construction::Lemma58(c)) => Ok(Arc::new(c)),
        Some(_) => Err(wrong_kind(cfg, "lemma58")),
        None => Ok(Arc::new(Lemma58Construction::build(&gap(cfg)?, &cfg.p, cfg.horizon)?)),
    }
}

pub fn lemma510(cfg: &ExperimentConfig) -> Result<Arc<Lemma510Construction>, CliError> {
    match loaded(cfg)? {
        Some(Construction::Lemma510(c)) => Ok(Arc::new(c)),
        Some(_) => Err(wrong_kind(cfg, "lemma510")),
        None => Ok(Arc::new(Lemma510Construction::build(&gap(cfg)?, cfg.alpha, cfg.horizon)?)),
    }
}

/// `kt`, `l1`, `l2`, `linf`, `lp:<p>`, `thm43`, `lemma58` or `lemma510`.
pub fn norm(cfg: &ExperimentConfig) -> Result<Box<dyn NormOracle>, CliError> {
    let bad = |msg: String| CliError::Config(msg);
    Ok(match cfg.norm.as_str() {
        "kt" => Box::new(KtNorm),
        "linf" => Box::new(LinfNorm),
        "l1" => Box::new(LpNorm::new(1.0)?),
        "l2" => Box::new(LpNorm::new(2.0)?),
        "thm43" => Box::new(Thm43Norm::new(thm43(cfg)?)),
        "lemma58" => Box::new(Lemma58Norm::new(lemma58(cfg)?)),
        "lemma510" => Box::new(Lemma510Norm::new(lemma510(cfg)?)),
        other => match other.strip_prefix("lp:") {
            Some(p) => {
                let p: f64 = p.parse().map_err(|_| bad(format!("bad exponent in norm `{other}`")))?;
                Box::new(LpNorm::new(p).map_err(|e| bad(e.to_string()))?)
            }
            None => return Err(bad(format!("unknown norm `{other}`; known: kt, l1, l2, linf, lp:<p>, thm43, lemma58, lemma510"))),
        },
    })
}

/// Serializes the construction an experiment would use, for later `--construction` reruns.
pub fn save_construction(cfg: &ExperimentConfig, path: &std::path::Path) -> Result<(), CliError> {
    use crate::config::Experiment as E;
    let kind = match cfg.experiment {
        E::Thm43DemocracyWindow | E::Thm43Nondemocracy | E::Thm43Conditionality | E::Thm43ClaimNa => "thm43",
        E::Lemma58Blowup => "lemma58",
        E::Lemma510Bounds => "lemma510",
        _ => cfg.norm.as_str(),
    };
    let c = match kind {
        "thm43" => Construction::Thm43((*thm43(cfg)?).clone()),
        "lemma58" => Construction::Lemma58((*lemma58(cfg)?).clone()),
        "lemma510" => Construction::Lemma510((*lemma510(cfg)?).clone()),
        _ => return Err(CliError::Config(format!("{} with norm {} uses no construction", cfg.experiment, cfg.norm))),
    };
    c.save(path).map_err(|e| CliError::Io(e.to_string()))
}
