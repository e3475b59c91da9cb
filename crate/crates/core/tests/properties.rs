use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stitresp::harness::{gen_random_kripke, gen_random_tree, random_formula, GenParams, PROPS};
use stitresp::kripke::{unravel, KripkeEvaluator, KripkeModel};
use stitresp::responsibility::{classify, Degree};
use stitresp::{
    validate_frame, AgentId, Condition, Evaluator, Formula, IndexId, KiobtModel, MomentId,
    ValueMode,
};

fn mode(seed: u64) -> ValueMode {
    if seed.is_multiple_of(2) {
        ValueMode::Single
    } else {
        ValueMode::Dual
    }
}

fn kripke(seed: u64) -> KripkeModel {
    gen_random_kripke(&GenParams::for_seed(seed, mode(seed), 2))
}

/// A generated tree, or the unraveling of a generated Kripke model.
fn tree(seed: u64) -> KiobtModel {
    if seed.is_multiple_of(3) {
        gen_random_tree(seed, mode(seed / 3))
    } else {
        unravel(&kripke(seed)).unwrap().model
    }
}

fn agents(model: &KiobtModel) -> Vec<&str> {
    model.agents().iter().map(String::as_str).collect()
}

fn formulas(model: &KiobtModel, seed: u64, n: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ags = agents(model);
    (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=3);
            random_formula(&mut rng, d, &PROPS, &ags)
        })
        .collect()
}

fn indices(model: &KiobtModel) -> impl Iterator<Item = IndexId> {
    (0..model.num_indices()).map(IndexId)
}

fn agent_ids(model: &KiobtModel) -> impl Iterator<Item = AgentId> {
    (0..model.agents().len()).map(AgentId)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_models_are_valid(seed in any::<u64>()) {
        let m = tree(seed);
        let r = validate_frame(&m);
        prop_assert!(r.is_valid(), "{}", r);
    }

    #[test]
    fn epistemic_closure_is_an_equivalence(seed in any::<u64>()) {
        let m = tree(seed);
        for a in agent_ids(&m) {
            for i in indices(&m) {
                prop_assert!(m.related(a, i, i));
                for j in indices(&m) {
                    prop_assert_eq!(m.related(a, i, j), m.related(a, j, i));
                    if m.related(a, i, j) {
                        for k in indices(&m) {
                            prop_assert!(!m.related(a, j, k) || m.related(a, i, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn own_action_lies_in_one_class(seed in any::<u64>()) {
        let m = tree(seed);
        for a in agent_ids(&m) {
            for mo in (0..m.moments().len()).map(MomentId) {
                for cell in &m.choice(a, mo).cells {
                    let first = m.index_id(mo, cell[0]).unwrap();
                    for &h in cell {
                        prop_assert!(m.related(a, first, m.index_id(mo, h).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn ex_ante_sets_are_class_invariant_unions_of_slices(seed in any::<u64>()) {
        let m = tree(seed);
        for a in agent_ids(&m) {
            for i in indices(&m) {
                let info = m.ex_ante_info_set(a, i);
                for j in info.ones().map(IndexId) {
                    let mo = m.index(j).moment;
                    prop_assert!(m.slice(mo).iter().all(|k| info.contains(k.0)));
                }
                for j in indices(&m).filter(|&j| m.related(a, i, j)) {
                    prop_assert_eq!(&m.ex_ante_info_set(a, j), &info);
                }
            }
        }
    }

    #[test]
    fn choices_partition_each_moment(seed in any::<u64>()) {
        let m = tree(seed);
        for a in agent_ids(&m) {
            for mo in (0..m.moments().len()).map(MomentId) {
                let mut seen: Vec<_> = m.choice(a, mo).cells.iter().flatten().copied().collect();
                seen.sort();
                let n = seen.len();
                seen.dedup();
                prop_assert_eq!(seen.len(), n);
                let mut through = m.histories_through(mo).to_vec();
                through.sort();
                prop_assert_eq!(seen, through);
            }
        }
    }

    #[test]
    fn minimal_opens_decide_ci(seed in any::<u64>()) {
        let m = tree(seed);
        let ci_ok = validate_frame(&m).of(Condition::CI).next().is_none();
        let pairwise = m.topologies().iter().all(|t| {
            let mins = t.minimal_opens();
            mins.iter().all(|u| mins.iter().all(|v| u.intersection(v).next().is_some()))
        });
        prop_assert_eq!(ci_ok, pairwise);
    }

    #[test]
    fn subformulas_list_children_first(depth in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, depth, &PROPS, &["a", "b"]);
        let subs = f.subformulas();
        prop_assert_eq!(subs.last(), Some(&f));
        for (n, s) in subs.iter().enumerate() {
            for c in s.children() {
                let pos = subs.iter().position(|x| x == c);
                prop_assert!(pos.is_some_and(|p| p < n));
            }
        }
    }

    #[test]
    fn moment_determined_operators(seed in any::<u64>()) {
        let m = tree(seed);
        let ev = Evaluator::new(&m);
        for phi in formulas(&m, seed, 6) {
            let a = agents(&m)[0];
            for f in [
                Formula::settled(phi.clone()),
                Formula::ought(a, phi.clone()),
                Formula::subj_ought(a, phi.clone()),
                Formula::intend(a, phi.clone()),
            ] {
                let ext = ev.set(&f).unwrap();
                for i in indices(&m) {
                    let slice = m.slice(m.index(i).moment);
                    prop_assert!(slice.iter().all(|j| ext.contains(j.0) == ext.contains(i.0)), "{}", f);
                }
            }
        }
    }

    #[test]
    fn valid_schemata_hold_everywhere(seed in any::<u64>()) {
        let m = tree(seed);
        let ev = Evaluator::new(&m);
        let fs = formulas(&m, seed ^ 1, 4);
        for a in agents(&m) {
            for (phi, psi) in fs.iter().zip(fs.iter().rev()) {
                let k = |f: Formula| Formula::know(a, f);
                let stit = |f: Formula| Formula::stit(a, f);
                let int = |f: Formula| Formula::intend(a, f);
                let not = Formula::not;
                let checks = [
                    Formula::implies(k(phi.clone()), stit(phi.clone())),
                    Formula::implies(Formula::possible(k(phi.clone())), k(Formula::possible(phi.clone()))),
                    Formula::implies(
                        Formula::and(int(phi.clone()), int(psi.clone())),
                        not(int(not(Formula::and(phi.clone(), psi.clone())))),
                    ),
                    Formula::implies(Formula::ought(a, phi.clone()), Formula::possible(stit(phi.clone()))),
                    Formula::implies(Formula::subj_ought(a, phi.clone()), Formula::possible(k(phi.clone()))),
                    Formula::implies(phi.clone(), not(stit(not(phi.clone())))),
                ];
                for f in checks {
                    let ext = ev.set(&f).unwrap();
                    prop_assert_eq!(ext.count_ones(..), m.num_indices(), "{}", f);
                }
                if m.mode() == ValueMode::Single {
                    let conso = Formula::implies(
                        Formula::subj_ought(a, phi.clone()),
                        not(Formula::ought(a, not(phi.clone()))),
                    );
                    prop_assert_eq!(ev.set(&conso).unwrap().count_ones(..), m.num_indices());
                }
            }
        }
    }

    #[test]
    fn eval_agrees_with_extension(seed in any::<u64>()) {
        let m = tree(seed);
        let ev = Evaluator::new(&m);
        for f in formulas(&m, seed, 5) {
            let ext = ev.extension(&f).unwrap();
            for i in indices(&m) {
                prop_assert_eq!(ev.eval(i, &f).unwrap(), ext.contains(i));
                prop_assert_eq!(stitresp::semantics::eval(&m, i, &f).unwrap(), ext.contains(i));
            }
        }
    }

    #[test]
    fn degrees_match_holding_sets(seed in any::<u64>()) {
        use stitresp::responsibility::{Category, Form, SubCategory};
        let m = tree(seed);
        let ev = Evaluator::new(&m);
        for phi in formulas(&m, seed, 3) {
            for a in agents(&m) {
                for i in indices(&m) {
                    let v = classify(&ev, i, a, &phi).unwrap();
                    for side in [&v.praise, &v.blame] {
                        for (form, degree) in [(Form::Active, side.degree_active), (Form::Passive, side.degree_passive)] {
                            let has = |c| side.holds(SubCategory::new(c, form));
                            let expected = match (has(Category::Causal), has(Category::Informational), has(Category::Motivational)) {
                                (true, true, true) => Some(Degree::High),
                                (true, true, false) => Some(Degree::Middle),
                                (true, false, _) => Some(Degree::Low),
                                _ => None,
                            };
                            prop_assert_eq!(degree, expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn box_commutes_with_knowledge(seed in any::<u64>()) {
        let k = kripke(seed);
        let n = k.num_worlds();
        for a in (0..k.agents().len()).map(AgentId) {
            let rbox = |v: usize, u: usize| k.class_of(v) == k.class_of(u);
            let know = |v: usize, u: usize| k.related(a, v, u);
            for v in 0..n {
                for u in 0..n {
                    let box_then_know = (0..n).any(|z| rbox(v, z) && know(z, u));
                    let know_then_box = (0..n).any(|z| know(v, z) && rbox(z, u));
                    prop_assert_eq!(box_then_know, know_then_box);
                }
            }
        }
    }

    #[test]
    fn intention_three_ways(seed in any::<u64>()) {
        let k = kripke(seed);
        let u = unravel(&k).unwrap();
        let tree_ev = Evaluator::new(&u.model);
        let mut kev = KripkeEvaluator::new(&k);
        let ags: Vec<&str> = k.agents().iter().map(String::as_str).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..6 {
            let phi = random_formula(&mut rng, 2, &PROPS, &ags);
            let phi_tree = tree_ev.set(&phi).unwrap();
            let phi_k = kev.extension(&phi).unwrap();
            for (a_idx, &a) in ags.iter().enumerate() {
                let a_id = AgentId(a_idx);
                let f = Formula::intend(a, phi.clone());
                let via_opens = tree_ev.set(&f).unwrap();
                let via_kripke = kev.extension(&f).unwrap();
                for (w, &i) in u.embedding.iter().enumerate() {
                    let top = u.model.topology_for(a_id, i).unwrap();
                    let any_open = top.opens.iter().any(|o| o.count_ones(..) > 0 && o.is_subset(&phi_tree));
                    let any_up_set = k.ex_ante(a_id, w).into_iter().any(|x| k.up_set(a_id, x).iter().all(|&y| phi_k.contains(y)));
                    prop_assert_eq!(any_open, via_opens.contains(i.0));
                    prop_assert_eq!(any_up_set, via_opens.contains(i.0));
                    prop_assert_eq!(via_kripke.contains(w), via_opens.contains(i.0));
                }
            }
        }
    }
}

#[test]
fn generation_is_deterministic() {
    for seed in 0..20 {
        let a = kripke(seed).to_doc().to_toml();
        assert_eq!(a, kripke(seed).to_doc().to_toml());
        assert_eq!(tree(seed).to_doc().to_toml(), tree(seed).to_doc().to_toml());
    }
}
