//! Randomized validity testing of the axiom schemata.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::{gen_random_kripke, gen_random_tree, pool_formula, GenParams, PROPS};
use super::schema::{all_schemas, schema, Schema};
use super::thread_pool;
use crate::formula::Formula;
use crate::kripke::{unravel, KripkeEvaluator, KripkeModel};
use crate::model::{IndexId, KiobtModel, ValueMode};
use crate::semantics::Evaluator;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessConfig {
    pub seed: u64,
    /// Number of random Kripke models.
    pub trials: usize,
    /// Instances per schema per model.
    pub instances: usize,
    /// Highest modal stratum of metavariable fillers.
    pub depth: usize,
    pub mode: ValueMode,
    /// Also test directly generated trees, one per trial.
    pub trees: bool,
    /// Schema names to skip.
    pub exclude: Vec<String>,
}

impl Default for SoundnessConfig {
    fn default() -> Self {
        SoundnessConfig {
            seed: 0,
            trials: 500,
            instances: 20,
            depth: 2,
            mode: ValueMode::Single,
            trees: true,
            exclude: Vec::new(),
        }
    }
}

/// A falsified instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub schema: String,
    pub trial_seed: u64,
    /// `kripke` or `tree`.
    pub source: String,
    /// World name for Kripke models, index name for trees.
    pub point: String,
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaResult {
    pub name: String,
    pub instances: usize,
    /// Point evaluations performed.
    pub checks: usize,
    pub failures: usize,
    /// First counterexample in seed order.
    pub first: Option<Counterexample>,
}

impl SchemaResult {
    pub fn valid(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub config: SoundnessConfig,
    pub models: usize,
    pub schemas: Vec<SchemaResult>,
}

impl SoundnessReport {
    pub fn all_valid(&self) -> bool {
        self.schemas.iter().all(SchemaResult::valid)
    }

    pub fn result(&self, name: &str) -> Option<&SchemaResult> {
        self.schemas.iter().find(|s| s.name == name)
    }

    /// Schemas with at least one counterexample.
    pub fn falsified(&self) -> Vec<&str> {
        self.schemas
            .iter()
            .filter(|s| !s.valid())
            .map(|s| s.name.as_str())
            .collect()
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.schemas {
            write!(
                f,
                "{:<8} instances={:<5} checks={:<7} failures={}",
                s.name, s.instances, s.checks, s.failures
            )?;
            if let Some(c) = &s.first {
                write!(
                    f,
                    "  first: seed={} {} {} {}",
                    c.trial_seed, c.source, c.point, c.instance
                )?;
            }
            writeln!(f)?;
        }
        let bad = self.falsified();
        write!(
            f,
            "soundness: {} schemas, {} models, {} falsified{}",
            self.schemas.len(),
            self.models,
            bad.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!(" ({})", bad.join(", "))
            }
        )
    }
}

/// Per-trial tallies, indexed like `all_schemas()`.
type Tally = Vec<(usize, usize, usize, Option<Counterexample>)>;

fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(t as u64)
}

fn instances_for(
    schemas: &[Schema],
    seed: u64,
    count: usize,
    depth: usize,
    agents: &[&str],
) -> Vec<Option<Vec<Formula>>> {
    schemas
        .iter()
        .enumerate()
        .map(|(s, schema)| {
            if !schema.applies_to(agents.len()) {
                return None;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((s as u64 + 1) << 40));
            Some(
                (0..count)
                    .map(|_| schema.instantiate(&mut rng, depth, &PROPS, agents))
                    .collect(),
            )
        })
        .collect()
}

fn check_kripke(
    k: &KripkeModel,
    schemas: &[Schema],
    cfg: &SoundnessConfig,
    ts: u64,
    tally: &mut Tally,
) {
    let unraveled = unravel(k).expect("generated Kripke models unravel");
    let tree = Evaluator::new(&unraveled.model);
    let mut kev = KripkeEvaluator::new(k);
    let agents: Vec<&str> = k.agents().iter().map(String::as_str).collect();
    let insts = instances_for(schemas, ts, cfg.instances, cfg.depth, &agents);
    for (s, list) in insts.iter().enumerate() {
        let Some(list) = list else { continue };
        let entry = &mut tally[s];
        for f in list {
            entry.0 += 1;
            let on_worlds = kev.extension(f).expect("instances use model agents");
            for w in 0..k.num_worlds() {
                entry.1 += 1;
                if !on_worlds.contains(w) {
                    entry.2 += 1;
                    entry.3.get_or_insert_with(|| Counterexample {
                        schema: schemas[s].name.to_string(),
                        trial_seed: ts,
                        source: "kripke".into(),
                        point: k.world_name(w).to_string(),
                        instance: f.to_string(),
                    });
                }
            }
            record_tree(
                &unraveled.model,
                &tree,
                f,
                &schemas[s],
                ts,
                "kripke-tree",
                entry,
            );
        }
    }
}

fn record_tree(
    model: &KiobtModel,
    ev: &Evaluator<'_>,
    f: &Formula,
    schema: &Schema,
    ts: u64,
    source: &str,
    entry: &mut (usize, usize, usize, Option<Counterexample>),
) {
    let ext = ev.set(f).expect("instances use model agents");
    for i in 0..model.num_indices() {
        entry.1 += 1;
        if !ext.contains(i) {
            entry.2 += 1;
            entry.3.get_or_insert_with(|| Counterexample {
                schema: schema.name.to_string(),
                trial_seed: ts,
                source: source.into(),
                point: model.index_name(IndexId(i)),
                instance: f.to_string(),
            });
        }
    }
}

fn check_tree(
    model: &KiobtModel,
    schemas: &[Schema],
    cfg: &SoundnessConfig,
    ts: u64,
    tally: &mut Tally,
) {
    let ev = Evaluator::new(model);
    let agents: Vec<&str> = model.agents().iter().map(String::as_str).collect();
    let insts = instances_for(
        schemas,
        ts.rotate_left(17),
        cfg.instances,
        cfg.depth,
        &agents,
    );
    for (s, list) in insts.iter().enumerate() {
        let Some(list) = list else { continue };
        for f in list {
            tally[s].0 += 1;
            record_tree(model, &ev, f, &schemas[s], ts, "tree", &mut tally[s]);
        }
    }
}

/// Instantiates every schema on random models and evaluates each instance
/// at every world of the Kripke model and every index of its unraveling,
/// plus every index of a directly generated tree when `cfg.trees` is set.
/// Results do not depend on the thread count.
pub fn soundness_suite(cfg: &SoundnessConfig) -> SoundnessReport {
    let schemas: Vec<Schema> = all_schemas()
        .into_iter()
        .filter(|s| !cfg.exclude.iter().any(|e| e == s.name))
        .collect();
    let run = |t: usize| -> Tally {
        let ts = trial_seed(cfg.seed, t);
        let mut tally: Tally = vec![(0, 0, 0, None); schemas.len()];
        let k = gen_random_kripke(&GenParams::for_seed(ts, cfg.mode, cfg.depth));
        check_kripke(&k, &schemas, cfg, ts, &mut tally);
        if cfg.trees {
            check_tree(
                &gen_random_tree(ts, cfg.mode),
                &schemas,
                cfg,
                ts,
                &mut tally,
            );
        }
        tally
    };
    let per_trial: Vec<Tally> =
        thread_pool().install(|| (0..cfg.trials).into_par_iter().map(run).collect());

    let mut results: Vec<SchemaResult> = schemas
        .iter()
        .map(|s| SchemaResult {
            name: s.name.to_string(),
            instances: 0,
            checks: 0,
            failures: 0,
            first: None,
        })
        .collect();
    for tally in per_trial {
        for (r, (n, c, fl, first)) in results.iter_mut().zip(tally) {
            r.instances += n;
            r.checks += c;
            r.failures += fl;
            if r.first.is_none() {
                r.first = first;
            }
        }
    }
    SoundnessReport {
        config: cfg.clone(),
        models: cfg.trials * if cfg.trees { 3 } else { 2 },
        schemas: results,
    }
}

/// A dual-valued model falsifying an instance of the subjective/objective
/// consistency schema, confirmed on both the Kripke model and its tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsoWitness {
    pub trial_seed: u64,
    pub world: String,
    pub index: String,
    pub agent: String,
    pub phi: String,
    pub instance: String,
    /// The Kripke model as TOML.
    pub model: String,
}

/// Searches up to `budget` random dual-valued Kripke models for a
/// counterexample to `Os a.φ -> ~Ob a.~φ`.
pub fn conso_countermodel_search(seed: u64, budget: usize) -> Option<ConsoWitness> {
    let conso = schema("ConSO").expect("ConSO is listed");
    for t in 0..budget {
        let ts = trial_seed(seed ^ 0xC0_5E, t);
        let k = gen_random_kripke(&GenParams::for_seed(ts, ValueMode::Dual, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let agents: Vec<&str> = k.agents().iter().map(String::as_str).collect();
        let mut kev = KripkeEvaluator::new(&k);
        let mut candidates: Vec<Formula> = PROPS
            .iter()
            .flat_map(|p| [Formula::atom(*p), Formula::not(Formula::atom(*p))])
            .collect();
        candidates.extend((0..6).map(|_| {
            let stratum = rng.gen_range(0..=1);
            pool_formula(&mut rng, stratum, &PROPS, &agents)
        }));
        for phi in candidates {
            for &a in &agents {
                let inst = conso.with(phi.clone(), Formula::top(), a, a);
                let ext = kev.extension(&inst).expect("model agents");
                let Some(w) = (0..k.num_worlds()).find(|&w| !ext.contains(w)) else {
                    continue;
                };
                let unraveled = unravel(&k).expect("generated Kripke models unravel");
                let i = unraveled.embedding[w];
                let tree = Evaluator::new(&unraveled.model);
                if tree.eval(i, &inst).expect("model agents") {
                    continue;
                }
                return Some(ConsoWitness {
                    trial_seed: ts,
                    world: k.world_name(w).to_string(),
                    index: unraveled.model.index_name(i),
                    agent: a.to_string(),
                    phi: phi.to_string(),
                    instance: inst.to_string(),
                    model: k.to_doc().to_toml(),
                });
            }
        }
    }
    None
}
