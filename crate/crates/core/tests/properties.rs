use std::sync::Arc;

use gapgreedy::constants::{
    check_f_almost_greedy_ratio, democracy_ratio, estimate_superdemocracy, estimate_suppression_qg, Constraint, DemocracySearch, QgSearch,
    SearchMode, Witness,
};
use gapgreedy::constructions::{Construction, Lemma510Construction, Lemma58Construction, Thm43Construction};
use gapgreedy::families::{FamilyHandle, GapSequence, DEFAULT_HORIZON};
use gapgreedy::greedy::{greedy_residual, greedy_set, project_complement, sigma_tilde};
use gapgreedy::norms::{KtNorm, Lemma510Norm, LpNorm, NormOracle, Thm43Norm};
use gapgreedy::oracle::bf_superdemocracy;
use gapgreedy::vector::indicator_plus;
use gapgreedy::{Error, Index, IndexSet, SignPattern, SparseVector};
use proptest::prelude::*;

fn vector(max_index: u64, max_len: usize) -> impl Strategy<Value = SparseVector> {
    proptest::collection::btree_map(1..=max_index, -5.0f64..5.0, 0..=max_len).prop_map(SparseVector::from_u64_pairs)
}

fn gap_rules() -> Vec<GapSequence> {
    vec![
        GapSequence::identity(),
        GapSequence::constant(1),
        GapSequence::constant(3),
        GapSequence::fourth_power_marked(),
        GapSequence::power_of_two_spikes(),
        GapSequence::periodic(vec![1, 2, 2]).unwrap(),
    ]
}

#[test]
fn constructions_survive_a_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("gapgreedy-props-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let all = [
        Construction::Thm43(Thm43Construction::build(&GapSequence::identity(), 6, 4.0, DEFAULT_HORIZON).unwrap()),
        Construction::Lemma58(Lemma58Construction::build(&GapSequence::identity(), &Lemma58Construction::DEFAULT_P, DEFAULT_HORIZON).unwrap()),
        Construction::Lemma510(Lemma510Construction::build(&GapSequence::fourth_power_marked(), 1.0, 100_000).unwrap()),
    ];
    for (i, c) in all.iter().enumerate() {
        let path = dir.join(format!("c{i}.json"));
        c.save(&path).unwrap();
        assert_eq!(&Construction::load(&path).unwrap(), c);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn a_loaded_construction_drives_the_same_norm() {
    let built = Thm43Construction::build(&GapSequence::identity(), 4, 4.0, DEFAULT_HORIZON).unwrap();
    let Construction::Thm43(loaded) = Construction::from_json(&Construction::Thm43(built.clone()).to_json()).unwrap() else {
        panic!("wrong variant");
    };
    let x = indicator_plus(&built.d_set(4).unwrap().union(&IndexSet::initial(9)));
    let a = Thm43Norm::new(Arc::new(built)).eval(&x).unwrap();
    let b = Thm43Norm::new(Arc::new(loaded)).eval(&x).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corrupted_construction_files_are_rejected() {
    let c = Construction::Lemma58(Lemma58Construction::build(&GapSequence::identity(), &Lemma58Construction::DEFAULT_P, DEFAULT_HORIZON).unwrap());
    let text = c.to_json().replace("302", "303");
    assert!(matches!(Construction::from_json(&text), Err(Error::InvalidConstruction(_))));
    assert!(Construction::from_json("{\"construction\": \"nope\"}").is_err());
}

#[test]
fn exact_superdemocracy_matches_brute_force_for_the_kt_norm() {
    let family = FamilyHandle::gap(GapSequence::constant(2));
    for constraint in [Constraint::None, Constraint::Disjoint, Constraint::StrongDisjointConservative] {
        let search = DemocracySearch {
            constraint,
            family: Some(family.clone()),
            size_cap: 3,
            max_index: 8,
            mode: SearchMode::Exact,
            ..DemocracySearch::default()
        };
        let est = estimate_superdemocracy(&KtNorm, &search).unwrap();
        let bf = bf_superdemocracy(&KtNorm, constraint, Some(&family), false, true, 3, 8).unwrap();
        assert_eq!(est.value, bf, "{constraint:?}");
        assert_eq!(est.replay(&KtNorm).unwrap(), Some(est.value));
    }
}

#[test]
fn suppression_estimate_for_lp_is_one() {
    let est = estimate_suppression_qg(&LpNorm::new(2.0).unwrap(), &QgSearch { dim: 32, budget: 50, seed: 4 }).unwrap();
    assert_eq!(est.value, 1.0);
}

#[test]
fn greedy_witness_replays_through_serde() {
    let w = Witness::Greedy { x: SparseVector::from_u64_pairs([(1, 1.0), (2, -0.5), (9, 2.0)]), m: 1, f: IndexSet::from_u64s([1]) };
    let back: Witness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(back.replay(&KtNorm).unwrap(), w.replay(&KtNorm).unwrap());
}

#[test]
fn size_and_projection_errors() {
    let a = IndexSet::from_u64s([1, 2]);
    let b = IndexSet::from_u64s([3]);
    let err = democracy_ratio(&a, &SignPattern::all_plus(&a), &b, &SignPattern::all_plus(&b), &KtNorm).unwrap_err();
    assert_eq!(err, Error::SizeMismatch { a: 2, b: 1 });
    let x = SparseVector::from_u64_pairs([(1, 1.0), (2, 1.0)]);
    assert_eq!(check_f_almost_greedy_ratio(&x, 1, &a, &KtNorm).unwrap_err(), Error::ProjectionTooLarge { size: 2, m: 1 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn greedy_residual_never_beats_the_best_projection(x in vector(40, 10), m in 0usize..=10) {
        let m = m.min(x.len());
        let lemma510 = Lemma510Norm::new(Arc::new(Lemma510Construction::build(&GapSequence::fourth_power_marked(), 1.0, 1000).unwrap()));
        let norms: [&dyn NormOracle; 3] = [&KtNorm, &lemma510, &LpNorm::new(0.5).unwrap()];
        for norm in norms {
            let (best, witness) = sigma_tilde(&x, m, norm).unwrap();
            prop_assert!(greedy_residual(&x, m, norm).unwrap() >= best);
            prop_assert!(witness.len() <= m);
            prop_assert_eq!(norm.eval(&project_complement(&x, &witness)).unwrap(), best);
        }
    }

    #[test]
    fn greedy_sets_dominate_the_rest(x in vector(60, 20), m in 0usize..=20) {
        let m = m.min(x.len());
        let g = greedy_set(&x, m).unwrap();
        prop_assert_eq!(g.greedy_set.len(), m);
        let inside = g.greedy_set.iter().map(|n| x.coefficient(n).abs()).fold(f64::INFINITY, f64::min);
        for (n, v) in x.iter() {
            if !g.greedy_set.contains(n) {
                prop_assert!(v.abs() <= inside);
            }
        }
    }

    #[test]
    fn gap_family_members_and_their_subsets(rule in 0usize..6, j in 0u64..500, ell in 1u64..40, mask in any::<u64>()) {
        let g = gap_rules().swap_remove(rule);
        let family = FamilyHandle::gap(g.clone());
        let f = g.f_set(Index::new(j), ell);
        prop_assert!(family.member(&f));
        let sub: IndexSet = f.iter().enumerate().filter(|(i, _)| (mask >> (i % 64)) & 1 == 1).map(|(_, n)| n).collect();
        let w = family.pf_member(&sub);
        prop_assert!(w.is_some());
        // The witness embedding reproduces the subset.
        let w = w.unwrap();
        let rebuilt: IndexSet = w.embedding.iter().map(|&k| w.j + g.b(k)).collect();
        prop_assert_eq!(rebuilt, sub);
    }

    #[test]
    fn sliding_witnesses_avoid_the_initial_segment(rule in 0usize..6, m in 1u64..3000) {
        let g = gap_rules().swap_remove(rule);
        let f = FamilyHandle::gap(g).sliding_witness(m, 0).unwrap();
        prop_assert!(f.len() as u64 >= m);
        prop_assert!(f.min().unwrap() > Index::new(m));
    }

    #[test]
    fn lp_norms_obey_their_triangle_inequality(x in vector(30, 8), y in vector(30, 8), p in 0.25f64..4.0) {
        let norm = LpNorm::new(p).unwrap();
        let r = norm.p_convexity();
        let lhs = norm.eval(&x.add(&y)).unwrap().powf(r);
        let rhs = norm.eval(&x).unwrap().powf(r) + norm.eval(&y).unwrap().powf(r);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }
}
