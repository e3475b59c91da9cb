//! Acceptance run: one PASS/FAIL line per criterion.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use stitresp::fixtures;
use stitresp::harness::{
    conso_countermodel_search, gen_random_kripke, random_formula, schema, soundness_suite,
    GenParams, Oracle, SoundnessConfig, PROPS,
};
use stitresp::kripke::{
    correspondence_check, unravel, validate_kripke, KripkeEvaluator, KripkeModel,
};
use stitresp::responsibility::{classify, deontic_context, Category, Form, Level, SubCategory};
use stitresp::{
    parse, validate_frame, Condition, Evaluator, Formula, IndexId, KiobtModel, OughtRoute,
    ValueMode,
};

type Outcome = Result<String, String>;

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

/// The 200 random Kripke models shared by several criteria.
fn random_models() -> Vec<KripkeModel> {
    (0..200u64)
        .map(|s| {
            let mode = if s % 2 == 0 {
                ValueMode::Single
            } else {
                ValueMode::Dual
            };
            gen_random_kripke(&GenParams::for_seed(5_000 + s, mode, 3))
        })
        .collect()
}

fn agents_of(k: &KripkeModel) -> Vec<&str> {
    k.agents().iter().map(String::as_str).collect()
}

fn frame_validation() -> Outcome {
    for (name, k) in [("M1", fixtures::m1()), ("M2", fixtures::m2())] {
        let r = validate_frame(&k);
        if !r.is_valid() {
            return Err(format!("{name}: {r}"));
        }
    }
    let r = validate_kripke(&fixtures::k1());
    if !r.is_valid() {
        return Err(format!("K1: {r}"));
    }

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/broken");
    let cases: &[(&str, Condition, &[&str])] = &[
        ("nc.model", Condition::NC, &["m0", "h1", "h2", "m1"]),
        ("ia.model", Condition::IA, &["m0", "a:{h1}", "b:{h2}"]),
        ("oac.model", Condition::OAC, &["m0:h3", "m0:h4"]),
        (
            "unif_h.model",
            Condition::UnifH,
            &["m1:g1", "m2:g3", "m1:g2", "m2"],
        ),
        ("topology.model", Condition::Topology, &["m0:h1"]),
        ("ci.model", Condition::CI, &["m0:h1", "{m0:h1}", "{m0:h2}"]),
        (
            "ki.model",
            Condition::KI,
            &["m1:g1", "{m1:g1,m1:g2,m2:g3,m2:g4}"],
        ),
        ("box.kripke", Condition::BoxClasses, &["w2"]),
        (
            "ia_k.kripke",
            Condition::IAK,
            &["{w1,w2}", "a:{w1}", "b:{w2}"],
        ),
        ("oac_k.kripke", Condition::OACK, &["w1", "w2"]),
        ("unif_h_k.kripke", Condition::UnifHK, &["w2", "{w3,w4}"]),
        ("serial.kripke", Condition::IntentionSerial, &["w2"]),
        (
            "transitive.kripke",
            Condition::IntentionTransitive,
            &["w2", "w1", "w2"],
        ),
        (
            "euclidean.kripke",
            Condition::IntentionEuclidean,
            &["w1", "w2", "w1"],
        ),
        (
            "inclusion.kripke",
            Condition::IntentionInclusion,
            &["w1", "w3"],
        ),
        ("den.kripke", Condition::DenK, &["w1", "w2"]),
    ];
    for (file, condition, witness) in cases {
        let text = fs::read_to_string(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let report = if file.ends_with(".model") {
            validate_frame(&KiobtModel::from_toml(&text).map_err(|e| format!("{file}: {e}"))?)
        } else {
            validate_kripke(&KripkeModel::from_toml(&text).map_err(|e| format!("{file}: {e}"))?)
        };
        if !report.of(*condition).any(|v| v.witness == *witness) {
            return Err(format!(
                "{file}: expected {condition} with witness {witness:?}, got {report}"
            ));
        }
    }
    Ok(format!(
        "M1, M2, K1 clean; {} broken fixtures rejected with the expected witness",
        cases.len()
    ))
}

fn soundness(mode: ValueMode) -> Outcome {
    let cfg = SoundnessConfig {
        seed: if mode == ValueMode::Single { 11 } else { 12 },
        trials: 500,
        instances: 20,
        depth: 2,
        mode,
        trees: true,
        exclude: Vec::new(),
    };
    let report = soundness_suite(&cfg);
    let exempt: &[&str] = if mode == ValueMode::Dual {
        &["ConSO"]
    } else {
        &[]
    };
    let bad: Vec<_> = report
        .schemas
        .iter()
        .filter(|s| !s.valid() && !exempt.contains(&s.name.as_str()))
        .collect();
    let checks: usize = report.schemas.iter().map(|s| s.checks).sum();
    if let Some(s) = bad.first() {
        return Err(format!("{} falsified: {:?}", s.name, s.first));
    }
    let mut line = format!(
        "{} schemas, {} models, {} point checks, 0 counterexamples",
        report.schemas.len(),
        report.models,
        checks
    );
    if mode == ValueMode::Dual {
        let w = conso_countermodel_search(3, 500).ok_or("ConSO search found no countermodel")?;
        let k1 = fixtures::k1();
        let inst = schema("ConSO")
            .unwrap()
            .with(f("~p"), Formula::top(), "a", "a");
        let w1 = k1.world_id("w1").unwrap();
        if KripkeEvaluator::new(&k1).eval(w1, &inst).unwrap() {
            return Err("K1 satisfies ConSO at w1 with phi = ~p".into());
        }
        let u = unravel(&k1).unwrap();
        if Evaluator::new(&u.model)
            .eval(u.embedding[w1], &inst)
            .unwrap()
        {
            return Err("the unraveled K1 satisfies ConSO at the image of w1".into());
        }
        let conso = report.result("ConSO").unwrap();
        line += &format!(
            " outside ConSO; ConSO countermodel (seed {}, {}, phi = {}); K1 falsifies ConSO at w1 with ~p; ConSO failed {} random checks",
            w.trial_seed, w.world, w.phi, conso.failures
        );
    }
    Ok(line)
}

fn correspondence(models: &[KripkeModel]) -> Outcome {
    let results: Vec<Result<usize, String>> = models
        .par_iter()
        .enumerate()
        .map(|(n, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(900 + n as u64);
            let agents = agents_of(k);
            let fs: Vec<Formula> = (0..50)
                .map(|_| random_formula(&mut rng, 3, &PROPS, &agents))
                .collect();
            let r = correspondence_check(k, &fs).map_err(|e| e.to_string())?;
            match r.divergences.first() {
                Some(d) => Err(format!("model {n}: {d:?}")),
                None => Ok(r.checked),
            }
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    Ok(format!(
        "{} models x 50 formulas, {checked} world checks, 0 divergences",
        models.len()
    ))
}

fn responsibility_structure(models: &[KripkeModel]) -> Outcome {
    let results: Vec<Result<usize, String>> = models
        .par_iter()
        .enumerate()
        .map(|(n, k)| {
            let u = unravel(k).map_err(|e| e.to_string())?;
            let ev = Evaluator::new(&u.model);
            let mut rng = ChaCha8Rng::seed_from_u64(7_000 + n as u64);
            let agents = agents_of(k);
            let mut checked = 0;
            for _ in 0..10 {
                let depth = rng.gen_range(0..=2);
                let phi = random_formula(&mut rng, depth, &PROPS, &agents);
                for &a in &agents {
                    for i in (0..u.model.num_indices()).map(IndexId) {
                        let v = classify(&ev, i, a, &phi).map_err(|e| e.to_string())?;
                        for side in [&v.praise, &v.blame] {
                            for form in [Form::Active, Form::Passive] {
                                let has = |c| side.holds(SubCategory::new(c, form));
                                if has(Category::Motivational) && !has(Category::Informational)
                                    || has(Category::Informational) && !has(Category::Causal)
                                {
                                    return Err(format!("model {n}: hierarchy fails: {v}"));
                                }
                            }
                            for c in [
                                Category::Causal,
                                Category::Informational,
                                Category::Motivational,
                            ] {
                                if side.holds(SubCategory::new(c, Form::Active))
                                    && !side.holds(SubCategory::new(c, Form::Passive))
                                {
                                    return Err(format!("model {n}: active without passive: {v}"));
                                }
                            }
                        }
                        checked += 1;
                    }
                }
            }
            Ok(checked)
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r?;
    }

    let m1 = fixtures::m1();
    let ev = Evaluator::new(&m1);
    let h1 = m1.parse_index("m0:h1").unwrap();
    let v = classify(&ev, h1, "a", &f("p")).unwrap();
    let middle = v.praise.degree_active == Some(stitresp::responsibility::Degree::Middle)
        && !v
            .praise
            .holds(SubCategory::new(Category::Motivational, Form::Active));
    if !middle {
        return Err(format!("M1 at m0:h1 is not Middle-not-High: {v}"));
    }
    let h3 = m1.parse_index("m0:h3").unwrap();
    let v = classify(&ev, h3, "a", &f("q")).unwrap();
    if !(v
        .praise
        .holds(SubCategory::new(Category::Causal, Form::Passive))
        && !v
            .praise
            .holds(SubCategory::new(Category::Causal, Form::Active)))
    {
        return Err(format!("m0:h3 is not passive-not-active for q: {v}"));
    }
    Ok(format!("{checked} (index, agent, phi) verdicts obey the hierarchy; M1 Middle-not-High; m0:h3 passive-not-active for q"))
}

fn deontic_levels() -> Outcome {
    let m1 = fixtures::m1();
    let ev = Evaluator::new(&m1);
    let m0 = m1.moment_id("m0").unwrap();
    for &i in m1.slice(m0) {
        let c = deontic_context(&ev, i, "a", &f("p")).unwrap();
        if c.level != Level::L1 {
            return Err(format!(
                "M1 {} has level {:?} for p",
                m1.index_name(i),
                c.level
            ));
        }
    }
    let m2 = fixtures::m2();
    let ev = Evaluator::new(&m2);
    for name in ["m1:g1", "m1:g2"] {
        let c = deontic_context(&ev, m2.parse_index(name).unwrap(), "a", &f("p")).unwrap();
        if c.level != Level::L3 {
            return Err(format!("M2 {name} has level {:?} for p", c.level));
        }
    }
    let k1 = unravel(&fixtures::k1()).unwrap().model;
    let mut count = 0;
    for model in [&m1, &m2, &k1] {
        let ev = Evaluator::new(model);
        for a in model.agents() {
            for i in (0..model.num_indices()).map(IndexId) {
                let v = classify(&ev, i, a, &Formula::top()).unwrap();
                if v.context.level != Level::L1 || v.blame.any() {
                    return Err(format!("top at {}: {v}", model.index_name(i)));
                }
                count += 1;
            }
        }
    }
    Ok(format!("M1 Level 1 for p at m0; M2 Level 3 for p at m1; top Level 1 without blame at {count} indices"))
}

fn oracle(models: &[KripkeModel]) -> Outcome {
    let mut trees: Vec<(String, KiobtModel)> = vec![
        ("M1".into(), fixtures::m1()),
        ("M2".into(), fixtures::m2()),
        ("K1".into(), unravel(&fixtures::k1()).unwrap().model),
    ];
    trees.extend(
        models
            .iter()
            .enumerate()
            .map(|(n, k)| (format!("model {n}"), unravel(k).unwrap().model)),
    );
    let results: Vec<Result<usize, String>> = trees
        .par_iter()
        .enumerate()
        .map(|(n, (name, model))| {
            let agents: Vec<&str> = model.agents().iter().map(String::as_str).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(31_000 + n as u64);
            let mut fs: Vec<Formula> = (0..20)
                .map(|_| random_formula(&mut rng, 3, &PROPS, &agents))
                .collect();
            for &a in &agents {
                fs.extend(
                    [
                        format!("Ob {a}.p"),
                        format!("Os {a}.p"),
                        format!("Os {a}.K {a}.q"),
                        format!("Ob {a}.(p | q)"),
                    ]
                    .iter()
                    .map(|s| f(s)),
                );
            }
            let ev = Evaluator::new(model);
            let dom = Evaluator::with_route(model, OughtRoute::Dominance);
            let naive = Oracle::new(model);
            let mut checked = 0;
            for phi in &fs {
                let fast = ev.set(phi).unwrap();
                let alt = dom.set(phi).unwrap();
                if fast != alt {
                    return Err(format!("{name}: ought routes disagree on {phi}"));
                }
                for i in (0..model.num_indices()).map(IndexId) {
                    if naive.eval(i, phi) != fast.contains(i.0) {
                        return Err(format!(
                            "{name}: oracle disagrees on {phi} at {}",
                            model.index_name(i)
                        ));
                    }
                    checked += 1;
                }
            }
            Ok(checked)
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    Ok(format!(
        "{} models, {checked} index checks, 0 disagreements; Optimal and dominance routes agree",
        trees.len()
    ))
}

fn parser() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let atoms = ["p", "q", "r", "p1", "rain2"];
    let agents = ["a", "b", "alice"];
    for n in 0..10_000 {
        let depth = rng.gen_range(0..=6);
        let ast = random_formula(&mut rng, depth, &atoms, &agents);
        let printed = ast.to_string();
        match parse(&printed) {
            Ok(back) if back == ast => {}
            Ok(back) => return Err(format!("AST {n}: {printed} reparsed as {back}")),
            Err(e) => return Err(format!("AST {n}: {printed}: {e}")),
        }
    }
    Ok("10000 random ASTs of depth <= 6 roundtrip".into())
}

fn main() -> ExitCode {
    let models = random_models();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + Sync + '_>)> = vec![
        ("frame validation", Box::new(frame_validation)),
        (
            "soundness, single-valued",
            Box::new(|| soundness(ValueMode::Single)),
        ),
        (
            "soundness, bi-valued",
            Box::new(|| soundness(ValueMode::Dual)),
        ),
        ("correspondence", Box::new(|| correspondence(&models))),
        (
            "responsibility structure",
            Box::new(|| responsibility_structure(&models)),
        ),
        ("deontic levels", Box::new(deontic_levels)),
        ("evaluator oracle", Box::new(|| oracle(&models))),
        ("parser roundtrip", Box::new(parser)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}) [{secs:.1}s]", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
