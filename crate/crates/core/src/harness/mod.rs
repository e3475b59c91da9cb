//! Random model generation, axiom schemata, randomized soundness runs and
//! a naive reference evaluator.
//!
//! Parallel work runs on a pool sized by `STITRESP_THREADS` when set.

pub mod generate;
pub mod oracle;
pub mod schema;
pub mod soundness;

pub use generate::{
    gen_random_kripke, gen_random_tree, pool_formula, random_formula, GenParams, PROPS,
};
pub use oracle::{naive_eval, Oracle};
pub use schema::{all_schemas, schema, Schema};
pub use soundness::{
    conso_countermodel_search, soundness_suite, ConsoWitness, Counterexample, SchemaResult,
    SoundnessConfig, SoundnessReport,
};

pub(crate) fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("STITRESP_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}
