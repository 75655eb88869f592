use gapgreedy::constants::{estimate_superdemocracy, Constraint, DemocracySearch, SearchMode, EXACT_MAX_INDEX};
use gapgreedy::families::{construct_cover, cover_leftover, FamilyHandle};
use gapgreedy::oracle::{bf_pf_member, BF_PF_CAP};
use gapgreedy::{Index, IndexSet};
use rand::Rng;

use super::rng;
use crate::config::ExperimentConfig;
use crate::report::{Report, Status};
use crate::sampling::random_set;
use crate::{setup, CliError};

pub fn covering_audit(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let g = setup::gap(cfg)?;
    let m = g.bound().ok_or_else(|| CliError::Config(format!("covering-audit needs a bounded gap rule, got {}", cfg.gap)))?;
    if cfg.dim < m + 1 {
        return Err(CliError::Config(format!("dim = {} leaves no room for two points >= M = {m}", cfg.dim)));
    }
    let mut report = Report::new(cfg, &["case", "max_gap", "size_b", "size_b2", "leftover", "cap"]);
    let mut rng = rng(cfg);
    let mut worst: Option<(usize, IndexSet, Vec<IndexSet>)> = None;
    for case in 0..cfg.budget {
        let size = rng.gen_range(2..=cfg.dim.min(80) as usize);
        let mut b = random_set(&mut rng, cfg.dim, size);
        if b.iter().filter(|&n| n >= Index::new(m)).count() < 2 {
            b = b.union(&IndexSet::from_u64s([cfg.dim - 1, cfg.dim]));
        }
        let size_b2 = b.iter().filter(|&n| n >= Index::new(m)).count();
        let sets = construct_cover(&g, &b)?;
        let leftover = cover_leftover(&b, &sets);
        let ok = sets.len() as u64 == m && sets.iter().all(|s| FamilyHandle::gap(g.clone()).member(s)) && leftover as u64 <= m - 1;
        if worst.as_ref().map_or(true, |w| leftover > w.0) {
            worst = Some((leftover, b.clone(), sets));
        }
        report.push(
            vec![case.into(), m.into(), b.len().into(), size_b2.into(), leftover.into(), (m - 1).into()],
            Status::from_bool(ok),
            "M members of the gap family leave |B \\ (S_1 u ... u S_M)| <= M - 1 when |B_2| >= 2",
        );
    }
    if let Some((leftover, b, sets)) = worst {
        report.witness("largest leftover", serde_json::json!({ "leftover": leftover, "b": b, "cover": sets }));
    }
    Ok(report)
}

/// Checks every `M <= dim`; records a decade grid plus every failure.
pub fn sliding_audit(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let family = setup::family(cfg)?;
    let mut report = Report::new(cfg, &["m", "witness_min", "witness_size", "intersection"]);
    let anchor = "the gap family is 0-sliding: |F| >= M and F avoids {1, ..., M}";
    let on_grid = |m: u64| {
        let p = 10u64.pow(m.ilog10());
        m == cfg.dim || (m % p == 0 && [1, 2, 5].contains(&(m / p)))
    };
    let mut failures = 0u64;
    for m in 1..=cfg.dim {
        let f = family.sliding_witness(m, 0).ok_or_else(|| CliError::Config("family has no sliding witness".into()))?;
        let intersection = f.iter().take_while(|&n| n <= Index::new(m)).count();
        let ok = intersection == 0 && f.len() as u64 >= m && family.member(&f);
        failures += u64::from(!ok);
        if !ok || on_grid(m) {
            report.push(
                vec![m.into(), f.min().map(|n| n.to_string()).into(), f.len().into(), intersection.into()],
                Status::from_bool(ok),
                anchor,
            );
        }
    }
    report.push(
        vec![format!("1..{}", cfg.dim).into(), None::<String>.into(), None::<u64>.into(), failures.into()],
        Status::from_bool(failures == 0),
        "every M in range has a witness avoiding {1, ..., M} (last column: failures)",
    );
    Ok(report)
}

/// The largest democracy ratio a PF-superdemocratic norm can show on `{1..dim}`, from its
/// signed-indicator window `[|A|^{1/2}, c |A|^{1/2}]`.
fn pf_ratio_cap(norm: &str) -> Option<f64> {
    match norm {
        "thm43" => Some(4.0),
        "kt" => Some(2.0),
        "l1" | "l2" | "linf" => Some(1.0),
        n if n.starts_with("lp:") => Some(1.0),
        _ => None,
    }
}

pub fn pf_closure_audit(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let cap = pf_ratio_cap(&cfg.norm).ok_or_else(|| CliError::Config(format!("pf-closure-audit has no cap for norm {}", cfg.norm)))?;
    if cfg.dim > EXACT_MAX_INDEX {
        return Err(CliError::Config(format!("pf-closure-audit enumerates exactly; dim must be <= {EXACT_MAX_INDEX}")));
    }
    let norm = setup::norm(cfg)?;
    let family = setup::family(cfg)?;
    let g = setup::gap(cfg)?;
    let mut report = Report::new(cfg, &["check", "cases", "measured", "cap"]);

    let search = DemocracySearch {
        constraint: Constraint::None,
        family: Some(family.clone()),
        require_pf: true,
        signs: true,
        size_cap: cfg.size_cap,
        max_index: cfg.dim,
        mode: SearchMode::Exact,
        budget: cfg.budget,
        seed: cfg.seed,
        ..DemocracySearch::default()
    };
    let est = estimate_superdemocracy(norm.as_ref(), &search)?;
    report.push(
        vec!["pf-superdemocracy".into(), est.budget_used.into(), est.value.into(), cap.into()],
        Status::from_bool(est.value <= cap + super::BOUND_TOL),
        format!("||1_(eps,A)|| <= {cap} ||1_(delta,B)|| for A in PF, |A| <= |B|"),
    );
    if let Some(w) = &est.witness {
        report.witness("pf-superdemocracy", w);
    }

    let mut rng = rng(cfg);
    let max_s = cfg.dim.max(2).min(BF_PF_CAP);
    let (mut mismatches, mut bad_witnesses, mut members) = (0u64, 0u64, 0u64);
    for _ in 0..cfg.budget {
        let s = if rng.gen_bool(0.5) {
            let f = g.f_set(Index::new(rng.gen_range(0..max_s)), rng.gen_range(1..=8));
            f.iter().filter(|&n| n <= Index::new(max_s) && rng.gen_bool(0.7)).collect()
        } else {
            let size = rng.gen_range(1..=6);
            random_set(&mut rng, max_s, size)
        };
        let fast = family.pf_member(&s);
        mismatches += u64::from(fast.is_some() != bf_pf_member(&g, &s)?);
        if let Some(w) = fast {
            members += 1;
            let rebuilt: IndexSet = w.embedding.iter().map(|&k| w.j + g.b(k)).collect();
            bad_witnesses += u64::from(rebuilt != s || w.embedding.last().is_some_and(|&k| k > w.ell));
        }
    }
    report.push(
        vec!["pf-member-vs-brute-force".into(), cfg.budget.into(), (mismatches as f64).into(), 0.0.into()],
        Status::from_bool(mismatches == 0),
        "membership in PF agrees with enumeration of F_(j,l), j <= max S",
    );
    report.push(
        vec!["pf-witness-replay".into(), members.into(), (bad_witnesses as f64).into(), 0.0.into()],
        Status::from_bool(bad_witnesses == 0),
        "each PF witness embeds S as j + b_k with k <= l",
    );
    Ok(report)
}
