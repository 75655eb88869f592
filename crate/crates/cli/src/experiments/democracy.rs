use gapgreedy::norms::{KtNorm, NormOracle, Thm43Norm};
use gapgreedy::{Index, IndexSet, SparseVector};
use rand::Rng;

use super::{rng, within, BOUND_TOL};
use crate::config::ExperimentConfig;
use crate::report::{Report, Status};
use crate::sampling::{any_set, mixed_signs, pf_set, random_set};
use crate::{setup, CliError};

fn signed(a: &IndexSet, eps: &[f64]) -> SparseVector {
    SparseVector::from_pairs(a.iter().zip(eps.iter().copied()))
}

fn ones(a: &IndexSet) -> SparseVector {
    SparseVector::from_pairs(a.iter().map(|n| (n, 1.0)))
}

pub fn kt_democracy(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let mut report = Report::new(cfg, &["case", "size", "max_index", "norm", "ratio", "floor", "cap"]);
    let mut rng = rng(cfg);
    let mut best: Option<(f64, SparseVector)> = None;
    for case in 0..cfg.budget {
        let size = rng.gen_range(1..=cfg.dim.min(256) as usize);
        // Sets packed near 1 with equal signs push the weighted partial sums up.
        let spread = if rng.gen_bool(0.5) { cfg.dim } else { (2 * size as u64).min(cfg.dim) };
        let a = random_set(&mut rng, spread, size);
        let eps = mixed_signs(&mut rng, a.len());
        let x = signed(&a, &eps);
        let v = KtNorm.eval(&x)?;
        let r = v / (a.len() as f64).sqrt();
        report.push(
            vec![case.into(), a.len().into(), a.max().map(|n| n.to_string()).into(), v.into(), r.into(), 1.0.into(), 2.0.into()],
            Status::from_bool(within(r, 1.0, 2.0)),
            "|A|^(1/2) <= ||1_(eps,A)||_KT <= 2 |A|^(1/2)",
        );
        if best.as_ref().map_or(true, |b| r > b.0) {
            best = Some((r, x));
        }
    }
    if let Some((r, x)) = best {
        report.witness("largest ratio", serde_json::json!({ "ratio": r, "x": x }));
    }
    Ok(report)
}

pub fn thm43_window(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let c = setup::thm43(cfg)?;
    let norm = Thm43Norm::new(c.clone());
    let mut report = Report::new(cfg, &["case", "kind", "size", "norm", "ratio", "floor", "cap"]);
    let mut rng = rng(cfg);
    for case in 0..cfg.budget {
        let a = pf_set(&c, &mut rng);
        if a.is_empty() {
            continue;
        }
        let eps = mixed_signs(&mut rng, a.len());
        let v = norm.eval(&signed(&a, &eps))?;
        let r = v / (a.len() as f64).sqrt();
        report.push(
            vec![case.into(), "pf".into(), a.len().into(), v.into(), r.into(), 1.0.into(), 4.0.into()],
            Status::from_bool(within(r, 1.0, 4.0)),
            "|A|^(1/2) <= ||1_(eps,A)|| <= 4 |A|^(1/2) for A in PF",
        );
    }
    for case in 0..cfg.budget {
        let a = any_set(&c, &mut rng);
        let eps = mixed_signs(&mut rng, a.len());
        let v = norm.eval(&signed(&a, &eps))?;
        let r = v / (a.len() as f64).sqrt();
        report.push(
            vec![case.into(), "any".into(), a.len().into(), v.into(), r.into(), 1.0.into(), None::<f64>.into()],
            Status::from_bool(r >= 1.0 - BOUND_TOL),
            "||1_(eps,A)|| >= |A|^(1/2) for every A",
        );
    }
    Ok(report)
}

/// `m = 32, 64, ...` up to `dim`.
fn doubling_series(start: u64, factor: u64, dim: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(start), |m| m.checked_mul(factor)).take_while(|&m| m <= dim).collect();
    if out.is_empty() {
        out.push(dim);
    }
    out
}

pub fn thm43_nondemocracy(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let c = setup::thm43(cfg)?;
    let norm = Thm43Norm::new(c.clone());
    let mut report = Report::new(cfg, &["m", "norm_Bm", "norm_Em", "ratio", "floor"]);
    let mut series = Vec::new();
    for m in doubling_series(32, 2, cfg.dim) {
        let b = c.padded_block_union(m)?;
        let e = c.gap().f_set(Index::ZERO, m);
        let (nb, ne) = (norm.eval(&ones(&b))?, norm.eval(&ones(&e))?);
        let r = nb / ne;
        let floor = (m as f64).powf(0.25) / 24.0;
        report.push(
            vec![m.into(), nb.into(), ne.into(), r.into(), floor.into()],
            Status::from_bool(r >= floor - BOUND_TOL),
            "||1_(B_m)|| / ||1_(F_(0,m))|| >= m^(1/4) / 24, B_m = D_s plus padding, |B_m| = m",
        );
        series.push(r);
        if m == cfg.dim || series.len() == 1 {
            report.witness(format!("B_{m}"), &b);
        }
    }
    let increasing = series.windows(2).all(|w| w[1] > w[0]);
    report.push(
        vec!["series".into(), None::<f64>.into(), None::<f64>.into(), None::<f64>.into(), None::<f64>.into()],
        Status::from_bool(increasing),
        "the ratio strictly increases along the series",
    );
    Ok(report)
}

pub fn thm43_conditionality(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let c = setup::thm43(cfg)?;
    let norm = Thm43Norm::new(c.clone());
    let b2 = c.gap().b_u64(2).to_f64();
    let circ_cap = 1.0 / b2.sqrt() + (1..=c.depth()).map(|k| (k as f64 + 1.0) / (2f64.sqrt() * (k as f64).powi(3))).sum::<f64>();
    let mut report = Report::new(cfg, &["m", "norm_z", "norm_u", "ratio", "floor", "circ_u", "circ_cap"]);
    for m in doubling_series(16, 4, cfg.dim) {
        let z = SparseVector::from_u64_pairs((1..=m).map(|j| (j, 1.0 / (j as f64).sqrt())));
        let u = SparseVector::from_u64_pairs((1..=m).map(|j| (j, if j % 2 == 0 { 1.0 } else { -1.0 } / (j as f64).sqrt())));
        let (nz, nu) = (norm.eval(&z)?, norm.eval(&u)?);
        let harmonic: f64 = (1..=m).map(|j| 1.0 / j as f64).sum();
        let floor = 0.5 * harmonic.sqrt();
        let circ = norm.circ(&u)?;
        report.push(
            vec![m.into(), nz.into(), nu.into(), (nz / nu).into(), floor.into(), circ.into(), circ_cap.into()],
            Status::from_bool(nz / nu >= floor - BOUND_TOL && circ <= circ_cap + BOUND_TOL),
            "||z_m|| / ||u_m|| >= H_m^(1/2) / 2 and ||u_m||_circ <= b_2^(-1/2) + sum_(k<=K) (k+1) / (2^(1/2) k^3)",
        );
    }
    Ok(report)
}

pub fn thm43_claim_na(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let c = setup::thm43(cfg)?;
    let mut report = Report::new(cfg, &["case", "size", "blocks_met", "cap"]);
    let mut rng = rng(cfg);
    let mut kept_witness = false;
    for case in 0..cfg.budget {
        let a = pf_set(&c, &mut rng);
        let met = c.blocks_met(&a);
        report.push(vec![case.into(), a.len().into(), met.into(), 1u64.into()], Status::from_bool(met <= 1), "every A in PF meets at most one block A_k");
        if met > 1 || (!kept_witness && met == 1 && a.len() > 1) {
            report.witness(format!("case {case}"), &a);
            kept_witness = true;
        }
    }
    Ok(report)
}
