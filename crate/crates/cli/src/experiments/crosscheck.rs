use gapgreedy::constants::{estimate_superdemocracy, Constraint, DemocracySearch, SearchMode};
use gapgreedy::families::{FamilyHandle, GapSequence};
use gapgreedy::greedy::{project_complement, sigma_tilde};
use gapgreedy::norms::{branch_gap_complements, branch_sparse_sets};
use gapgreedy::oracle::{bf_branch2, bf_branch4, bf_pf_member, bf_sigma_tilde, bf_superdemocracy};
use gapgreedy::{Index, IndexSet, SparseVector};
use rand::Rng;

use super::rng;
use crate::config::ExperimentConfig;
use crate::report::{Report, Status};
use crate::sampling::random_set;
use crate::{setup, CliError};

/// Largest ground set enumerated exhaustively for the membership check.
const PF_EXHAUSTIVE: u64 = 12;
const SUPERDEMOCRACY_MAX: u64 = 7;
const SUPERDEMOCRACY_CAP: usize = 3;

pub fn oracle_crosscheck(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let norm = setup::norm(cfg)?;
    let mut rng = rng(cfg);
    let mut report = Report::new(cfg, &["check", "cases", "mismatches"]);
    let row = |report: &mut Report, check: String, cases: usize, bad: usize, anchor: &str| {
        report.push(vec![check.into(), cases.into(), bad.into()], Status::from_bool(bad == 0), anchor);
    };

    let mut bad = 0;
    for _ in 0..cfg.budget {
        let size = rng.gen_range(0..=12);
        let support = random_set(&mut rng, cfg.dim.max(12), size);
        let x = SparseVector::from_pairs(support.iter().map(|n| (n, f64::from(rng.gen_range(-4i32..=4)) / 2.0 + 0.01)));
        let m = rng.gen_range(0..=x.len());
        let (fast, _) = sigma_tilde(&x, m, norm.as_ref())?;
        let (slow, witness) = bf_sigma_tilde(&x, m, norm.as_ref())?;
        let replay = norm.eval(&project_complement(&x, &witness))?;
        bad += usize::from(fast != slow || replay != slow || witness.len() > m);
    }
    row(&mut report, format!("sigma-tilde ({})", cfg.norm), cfg.budget as usize, bad, "pruned search equals exhaustive search over |F| <= m");

    let ground = cfg.dim.min(PF_EXHAUSTIVE);
    for (name, g) in [("identity", GapSequence::identity()), ("constant:2", GapSequence::constant(2)), ("fourth-power-marked", GapSequence::fourth_power_marked())] {
        let family = FamilyHandle::gap(g.clone());
        let (mut cases, mut bad) = (0, 0);
        let mut check = |s: &IndexSet| -> Result<(), CliError> {
            cases += 1;
            bad += usize::from(family.pf_member(s).is_some() != bf_pf_member(&g, s)?);
            Ok(())
        };
        for mask in 0u64..(1 << ground) {
            check(&IndexSet::from_u64s((0..ground).filter(|i| (mask >> i) & 1 == 1).map(|i| i + 1)))?;
        }
        for _ in 0..cfg.budget {
            let s = if rng.gen_bool(0.5) {
                let f = g.f_set(Index::new(rng.gen_range(0..cfg.dim)), rng.gen_range(1..=12));
                f.iter().filter(|&n| n <= Index::new(cfg.dim) && rng.gen_bool(0.7)).collect()
            } else {
                let size = rng.gen_range(1..=10);
                random_set(&mut rng, cfg.dim, size)
            };
            check(&s)?;
        }
        row(&mut report, format!("pf-member ({name})"), cases, bad, "subset-of-member test equals exhaustive embedding search");
    }

    let fourth = GapSequence::fourth_power_marked();
    let (mut bad2, mut bad4) = (0, 0);
    for _ in 0..cfg.budget {
        let size = rng.gen_range(0..=12);
        let support = random_set(&mut rng, cfg.dim.max(12) * 5, size);
        let x = SparseVector::from_pairs(support.iter().map(|n| (n, rng.gen_range(-3.0..3.0))));
        bad2 += usize::from(branch_sparse_sets(&x) != bf_branch2(&x)?);
        bad4 += usize::from(branch_gap_complements(&x, &fourth)? != bf_branch4(&x, &fourth)?);
    }
    row(&mut report, "branch-sparse-sets".into(), cfg.budget as usize, bad2, "sup ||P_A x||_2 over |A|^2 < min A, sorted scan vs all subsets");
    row(&mut report, "branch-gap-complements".into(), cfg.budget as usize, bad4, "sup ||P_((j + I_r) \\ F_(j,l)) x||_2, windowed scan vs all (j, l)");

    let family = setup::family(cfg)?;
    let mut bad = 0;
    for constraint in Constraint::ALL {
        let search = DemocracySearch {
            constraint,
            family: Some(family.clone()),
            size_cap: SUPERDEMOCRACY_CAP,
            max_index: SUPERDEMOCRACY_MAX,
            mode: SearchMode::Exact,
            ..DemocracySearch::default()
        };
        let est = estimate_superdemocracy(norm.as_ref(), &search)?;
        let bf = bf_superdemocracy(norm.as_ref(), constraint, Some(&family), false, true, SUPERDEMOCRACY_CAP, SUPERDEMOCRACY_MAX)?;
        bad += usize::from(est.value != bf);
    }
    row(&mut report, "superdemocracy".into(), Constraint::ALL.len(), bad, "exact enumeration equals brute force for every constraint");
    Ok(report)
}
