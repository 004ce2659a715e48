//! Randomised invariants. Instances are drawn from a seeded generator so a
//! failing case is reproduced by its seed alone.

use std::sync::Arc;

use morseposet::homology::{self, AdmissibilityMode, Coefficients};
use morseposet::matching::{self, Matching, RegularityMode};
use morseposet::morse::{self, EventKind, MorseFunction};
use morseposet::poset::Poset;
use morseposet::random;
use morseposet::rational::{self, int};
use morseposet::reduction::{self, Tri};
use morseposet::verify::{self, ReportData, Verdict};
use morseposet::{io, SimplicialComplex};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_poset(seed: u64) -> Poset {
    let mut r = rng(seed);
    let n = r.gen_range(0..=12);
    let d = r.gen_range(0.1..0.6);
    random::random_poset(&mut r, n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transitive_reduction_is_idempotent(seed in any::<u64>()) {
        let p = small_poset(seed);
        let again = Poset::new(p.ids().to_vec(), p.cover_ids()).unwrap();
        prop_assert_eq!(&again, &p);
        // adding every comparable pair changes nothing
        let mut all = Vec::new();
        for y in 0..p.len() {
            for x in p.down_set(y).ones().filter(|&x| x != y) {
                all.push((p.id(x).to_string(), p.id(y).to_string()));
            }
        }
        prop_assert_eq!(Poset::new(p.ids().to_vec(), all).unwrap(), p);
    }

    #[test]
    fn interval_criterion_matches_two_wide_on_graded(seed in any::<u64>()) {
        let p = random::random_graded_poset(&mut rng(seed), 20);
        prop_assert_eq!(p.is_two_wide().0, p.satisfies_interval_criterion());
        let q = small_poset(seed);
        if q.is_two_wide().0 {
            prop_assert!(q.satisfies_interval_criterion());
        }
    }

    #[test]
    fn key_lemma_on_two_wide(seed in any::<u64>()) {
        let p = random::random_two_wide_poset(&mut rng(seed), 25);
        for y in 0..p.len() {
            for w in p.down_set(y).ones() {
                if w == y || p.is_cover(w, y) {
                    continue;
                }
                let (a, b) = p.key_lemma_witness(p.id(w), p.id(y)).unwrap();
                prop_assert_ne!(&a, &b);
                let (ai, bi) = (p.index_of(&a).unwrap(), p.index_of(&b).unwrap());
                prop_assert!(p.is_cover(w, ai) && p.is_cover(w, bi) && p.lt(ai, y) && p.lt(bi, y));
            }
        }
    }

    #[test]
    fn core_has_the_same_homology(seed in any::<u64>()) {
        let p = small_poset(seed);
        let c = reduction::core(&p).to_poset();
        prop_assert!(homology::poset_homology(&c, false).same_groups(&homology::poset_homology(&p, false)));
    }

    #[test]
    fn beat_points_are_gamma_points(seed in any::<u64>()) {
        let p = small_poset(seed);
        let b = reduction::beat_points(&p);
        for x in b.down.iter().chain(&b.up) {
            prop_assert_ne!(reduction::is_gamma_point(&p, x).unwrap().value, Tri::No);
        }
    }

    #[test]
    fn field_betti_numbers_follow_universal_coefficients(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random::random_complex(&mut r, 6, 5, 3, false);
        let z = homology::homology(&k, Coefficients::Integers, false).unwrap();
        for q in [2u64, 3] {
            let f = homology::homology(&k, Coefficients::PrimeField(q), false).unwrap();
            let t = |i: usize| z.torsion(i).iter().filter(|d| (*d % q).is_zero()).count();
            for i in 0..f.groups.len() {
                let below = if i == 0 { 0 } else { t(i - 1) };
                prop_assert_eq!(f.betti(i), z.betti(i) + t(i) + below);
            }
        }
    }

    #[test]
    fn admissible_posets_are_down_and_two_wide(seed in any::<u64>()) {
        let p = small_poset(seed);
        if homology::admissibility(&p, AdmissibilityMode::Homological).aggregate.is_yes() {
            prop_assert!(p.is_down_wide().0);
            prop_assert!(p.is_two_wide().0);
        }
    }

    #[test]
    fn exclusion_holds_on_two_wide_posets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_two_wide_poset(&mut r, 25));
        let f = random::random_morse_function(&mut r, p);
        prop_assert_eq!(morse::satisfies_exclusion(&f).unwrap(), (true, None));
    }

    #[test]
    fn matching_function_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_graded_poset(&mut r, 25));
        let m = random::random_morse_matching(&mut r, p, 0.8);
        let f = morse::function_from_matching(&m).unwrap();
        prop_assert!(f.is_order_preserving());
        prop_assert_eq!(morse::satisfies_exclusion(&f).unwrap().0, true);
        prop_assert_eq!(morse::critical_points(&f).unwrap(), matching::critical_set(&m));
        for &(a, b) in m.pairs() {
            prop_assert_eq!(f.value(a), f.value(b));
        }
        let back = morse::matching_from_function(&f).unwrap();
        prop_assert_eq!(matching::critical_set(&back), morse::critical_points(&f).unwrap());
        prop_assert_eq!(back, m);
    }

    #[test]
    fn sublevels_are_monotone_and_open(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_two_wide_poset(&mut r, 25));
        let f = random::random_morse_function(&mut r, p);
        let vals = f.distinct_values();
        let mut prev = morse::sublevel(&f, &int(-100)).unwrap();
        prop_assert!(prev.is_empty());
        for v in &vals {
            let s = morse::sublevel(&f, v).unwrap();
            prop_assert!(s.is_open());
            prop_assert!(prev.is_subset(&s));
            prev = s;
        }
    }

    #[test]
    fn doubling_keeps_the_matching(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_two_wide_poset(&mut r, 25));
        let f = random::random_morse_function(&mut r, p);
        let g = f.scaled(&int(2));
        prop_assert_eq!(morse::matching_from_function(&g).unwrap(), morse::matching_from_function(&f).unwrap());
    }

    #[test]
    fn injective_refinement_contract(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_two_wide_poset(&mut r, 25));
        let f = random::random_morse_function(&mut r, p.clone());
        let g = morse::make_injective(&f).unwrap();
        prop_assert!(g.is_injective());
        prop_assert!(morse::is_morse(&g).0);
        prop_assert_eq!(morse::critical_points(&g).unwrap(), morse::critical_points(&f).unwrap());
        prop_assert_eq!(morse::matching_from_function(&g).unwrap(), morse::matching_from_function(&f).unwrap());
        for a in f.distinct_values() {
            let a2 = (0..p.len()).filter(|&x| f.value(x) <= &a).map(|x| g.value(x).clone()).max().unwrap();
            prop_assert_eq!(morse::sublevel(&g, &a2).unwrap().ids(), morse::sublevel(&f, &a).unwrap().ids());
        }
    }

    #[test]
    fn regular_steps_keep_components(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_face_poset(&mut r, 30, false));
        let f = random::random_morse_function(&mut r, p);
        for e in morse::filtration_events(&f).unwrap() {
            prop_assert!(!matches!(e.kind, EventKind::Anomaly { .. }), "{:?}", e);
            if matches!(e.kind, EventKind::BeatPair { .. }) {
                prop_assert!(e.b0_after <= e.b0_before);
            }
        }
    }

    #[test]
    fn cancellation_is_local_and_shrinks_crit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_face_poset(&mut r, 30, true));
        let m = random::random_morse_matching(&mut r, p.clone(), 0.5);
        let crit = m.critical_indices();
        for &z in &crit {
            for &x in &crit {
                if p.height_of(z) != p.height_of(x) + 1 {
                    continue;
                }
                let Ok(out) = matching::cancel_pair(&m, p.id(z), p.id(x)) else { continue };
                prop_assert!(matching::is_morse_matching(&out).0);
                let mut expected: Vec<usize> = crit.iter().copied().filter(|&c| c != x && c != z).collect();
                expected.sort_unstable();
                prop_assert_eq!(out.critical_indices(), expected);
                let paths = matching::enumerate_m_paths(&m, p.lower_covers(z).iter().map(|&w| p.id(w)), p.id(x)).unwrap();
                prop_assert_eq!(paths.len(), 1);
                let on_path: Vec<usize> = paths[0].elements.iter().map(|s| p.index_of(s).unwrap()).collect();
                for &(a, b) in m.pairs() {
                    if !on_path.contains(&a) && !on_path.contains(&b) {
                        prop_assert!(out.contains(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn path_counts_survive_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::random_face_poset(&mut r, 25, true);
        let q = Arc::new(p.relabeled(|s| format!("~{}", s.chars().rev().collect::<String>())).unwrap());
        let p = Arc::new(p);
        let m = random::random_morse_matching(&mut r, p.clone(), 0.6);
        let renamed: Vec<(String, String)> = m
            .pair_ids()
            .into_iter()
            .map(|(a, b)| (format!("~{}", a.chars().rev().collect::<String>()), format!("~{}", b.chars().rev().collect::<String>())))
            .collect();
        let mq = Matching::new(q.clone(), renamed).unwrap();
        let rename = |s: &str| format!("~{}", s.chars().rev().collect::<String>());
        for z in 0..p.len() {
            for x in 0..p.len() {
                if p.height_of(z) != p.height_of(x) + 1 {
                    continue;
                }
                let from: Vec<&str> = p.lower_covers(z).iter().map(|&w| p.id(w)).collect();
                let a = matching::enumerate_m_paths(&m, from.iter().copied(), p.id(x)).unwrap().len();
                let from_q: Vec<String> = from.iter().map(|s| rename(s)).collect();
                let b = matching::enumerate_m_paths(&mq, from_q, &rename(p.id(x))).unwrap().len();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn optimize_respects_inequalities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_face_poset(&mut r, 30, true));
        let start = random::random_morse_matching(&mut r, p.clone(), 0.3);
        let (m, log) = matching::optimize(&start).unwrap();
        prop_assert!(matching::is_morse_matching(&m).0);
        let mut count = start.critical_indices().len();
        for step in &log {
            prop_assert_eq!(step.critical_after + 2, count);
            count = step.critical_after;
        }
        prop_assert_eq!(m.critical_indices().len(), count);
        let report = verify::morse_inequalities(&m);
        prop_assert_ne!(report.verdict, Verdict::Violated);
        if matching::regularity(&m, RegularityMode::Homology).unwrap().is_yes() {
            let h = homology::poset_homology(&p, false);
            for i in 0..h.groups.len() {
                let mi = m.critical_indices().iter().filter(|&&x| p.height_of(x) == i).count();
                prop_assert!(mi >= h.betti(i));
            }
        }
    }

    #[test]
    fn pitcher_implies_morse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_face_poset(&mut r, 30, true));
        let m = random::random_morse_matching(&mut r, p, 0.5);
        let pitcher = verify::pitcher_inequalities(&m);
        let plain = verify::morse_inequalities(&m);
        prop_assert_ne!(pitcher.verdict, Verdict::Violated);
        prop_assert_ne!(plain.verdict, Verdict::Violated);
        if pitcher.conclusions_hold() {
            prop_assert!(plain.conclusions.iter().filter(|c| c.name.starts_with("strong")).all(|c| c.passed));
        }
    }

    #[test]
    fn collapse_steps_match_filtration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Arc::new(random::random_face_poset(&mut r, 30, true));
        let m = random::random_morse_matching(&mut r, p, 0.7);
        let f = morse::function_from_matching(&m).unwrap();
        let events = morse::filtration_events(&f).unwrap();
        let vals = f.distinct_values();
        for w in vals.windows(2) {
            let rep = verify::check_collapse_interval(&f, &w[0], &w[1]).unwrap();
            prop_assert_ne!(rep.verdict, Verdict::Violated, "{:#?}", rep);
            let ReportData::Collapse { steps } = rep.data else { continue };
            let expected: Vec<_> = events.iter().filter(|e| e.value > w[0] && e.value <= w[1]).cloned().collect();
            prop_assert_eq!(steps, expected);
        }
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_poset(seed);
        prop_assert_eq!(io::parse_poset(&io::write_poset(&p)).unwrap(), p.clone());
        prop_assert_eq!(io::parse_poset(&io::poset_to_json(&p)).unwrap(), p);
        let q = Arc::new(random::random_two_wide_poset(&mut r, 20));
        let f = random::random_morse_function(&mut r, q.clone());
        let f = f.scaled(&rational::ratio(r.gen_range(1..7), r.gen_range(1..7)));
        prop_assert_eq!(io::parse_function(q.clone(), &io::write_function(&f)).unwrap(), f.clone());
        prop_assert_eq!(io::parse_function(q.clone(), &io::function_to_json(&f).to_string()).unwrap(), f);
        let m = random::random_morse_matching(&mut r, q.clone(), 0.5);
        prop_assert_eq!(io::parse_matching(q.clone(), &io::write_matching(&m)).unwrap(), m);
        let k = random::random_complex(&mut r, 6, 4, 3, false);
        let back: SimplicialComplex = io::parse_complex(&io::write_complex(&k)).unwrap();
        prop_assert_eq!(back, k);
    }
}

#[test]
fn height_function_is_morse_and_all_critical() {
    let mut r = rng(11);
    for _ in 0..20 {
        let p = Arc::new(small_poset(r.gen()));
        let f = MorseFunction::height(p.clone());
        assert!(morse::is_morse(&f).0);
        assert_eq!(morse::critical_indices(&f).unwrap().len(), p.len());
    }
}
