use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use stitresp::harness::{random_formula, soundness_suite, SoundnessConfig, PROPS};
use stitresp::kripke::{correspondence_check, unravel, validate_kripke, KripkeModel};
use stitresp::responsibility::{classify, Attitude, ResponsibilityVerdict};
use stitresp::{
    parse, validate_frame, Evaluator, Formula, IndexId, KiobtModel, ValidationReport, ValueMode,
};

#[derive(Parser)]
#[command(
    name = "stitresp",
    version,
    about = "Model checking and responsibility verdicts for epistemic stit models"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the frame conditions of a .model or .kripke file.
    Validate { model: PathBuf },
    /// Evaluate a formula at an index `moment:leaf`.
    Check {
        model: PathBuf,
        index: String,
        formula: String,
    },
    /// Responsibility verdicts for an agent and formula, at one index or all.
    Classify {
        model: PathBuf,
        agent: String,
        formula: String,
        index: Option<String>,
    },
    /// Randomized validity check of the axiom schemata.
    Soundness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Highest modal stratum of metavariable fillers.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Mode::Single)]
        mode: Mode,
        /// Instances per schema per model.
        #[arg(long, default_value_t = 20)]
        instances: usize,
        /// Skip a schema by name, e.g. ConSO. Repeatable.
        #[arg(long)]
        exclude: Vec<String>,
        /// Only test unraveled Kripke models.
        #[arg(long)]
        no_trees: bool,
    },
    /// Write the kiobt-model associated with a Kripke model, plus the
    /// world-to-index embedding next to it.
    Unravel {
        kripke: PathBuf,
        out: PathBuf,
        /// Defaults to `<out>.embedding.toml`.
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Compare Kripke truth with truth on the unraveled tree.
    Correspond {
        kripke: PathBuf,
        /// Formulas to compare; random ones are drawn when none are given.
        formulas: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random formulas.
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Single,
    Dual,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_model(path: &Path) -> Result<KiobtModel> {
    KiobtModel::from_toml(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_kripke(path: &Path) -> Result<KripkeModel> {
    KripkeModel::from_toml(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("formula `{text}`"))
}

fn is_kripke(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "kripke")
}

fn warn_if_invalid(report: &ValidationReport, path: &Path) {
    if !report.is_valid() {
        eprintln!(
            "warning: {} violates frame conditions; run `validate` for details",
            path.display()
        );
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text());
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    index: &'a str,
    formula: String,
    value: bool,
}

#[derive(Serialize)]
struct ClassifyOutput {
    verdicts: Vec<ResponsibilityVerdict>,
    praiseworthy: usize,
    blameworthy: usize,
    neutral: usize,
}

#[derive(Serialize)]
struct UnravelOutput {
    moments: usize,
    histories: usize,
    model: String,
    embedding: String,
}

/// Runs the command; `Ok(false)` means violations or counterexamples.
fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Validate { model } => {
            let report = if is_kripke(&model) {
                validate_kripke(&load_kripke(&model)?)
            } else {
                validate_frame(&load_model(&model)?)
            };
            emit(json, &report, || report.to_string())?;
            Ok(report.is_valid())
        }
        Command::Check {
            model,
            index,
            formula: text,
        } => {
            let m = load_model(&model)?;
            warn_if_invalid(&validate_frame(&m), &model);
            let f = formula(&text)?;
            let i = m.parse_index(&index)?;
            let value = Evaluator::new(&m).eval(i, &f)?;
            let out = CheckOutput {
                index: &index,
                formula: f.to_string(),
                value,
            };
            emit(json, &out, || value.to_string())?;
            Ok(true)
        }
        Command::Classify {
            model,
            agent,
            formula: text,
            index,
        } => {
            let m = load_model(&model)?;
            warn_if_invalid(&validate_frame(&m), &model);
            let f = formula(&text)?;
            m.agent_id(&agent)?;
            let ev = Evaluator::new(&m);
            let indices: Vec<IndexId> = match &index {
                Some(i) => vec![m.parse_index(i)?],
                None => (0..m.num_indices()).map(IndexId).collect(),
            };
            let verdicts = indices
                .into_iter()
                .map(|i| classify(&ev, i, &agent, &f))
                .collect::<Result<Vec<_>, _>>()?;
            let count = |a: Attitude| verdicts.iter().filter(|v| v.attitude == a).count();
            let out = ClassifyOutput {
                praiseworthy: count(Attitude::Praiseworthy),
                blameworthy: count(Attitude::Blameworthy),
                neutral: count(Attitude::Neutral),
                verdicts,
            };
            emit(json, &out, || {
                let mut s: String = out.verdicts.iter().map(|v| format!("{v}\n")).collect();
                s += &format!(
                    "classified {} index(es): {} praiseworthy, {} blameworthy, {} neutral",
                    out.verdicts.len(),
                    out.praiseworthy,
                    out.blameworthy,
                    out.neutral
                );
                s
            })?;
            Ok(true)
        }
        Command::Soundness {
            seed,
            trials,
            depth,
            mode,
            instances,
            exclude,
            no_trees,
        } => {
            let cfg = SoundnessConfig {
                seed,
                trials,
                instances,
                depth,
                mode: match mode {
                    Mode::Single => ValueMode::Single,
                    Mode::Dual => ValueMode::Dual,
                },
                trees: !no_trees,
                exclude,
            };
            let report = soundness_suite(&cfg);
            emit(json, &report, || report.to_string())?;
            Ok(report.all_valid())
        }
        Command::Unravel {
            kripke,
            out,
            embedding,
        } => {
            let k = load_kripke(&kripke)?;
            warn_if_invalid(&validate_kripke(&k), &kripke);
            let u = unravel(&k)?;
            let embedding = embedding.unwrap_or_else(|| {
                let mut p = out.clone().into_os_string();
                p.push(".embedding.toml");
                PathBuf::from(p)
            });
            fs::write(&out, u.model.to_doc().to_toml())
                .with_context(|| format!("cannot write {}", out.display()))?;
            let map: String = u
                .embedding
                .iter()
                .enumerate()
                .map(|(w, &i)| format!("{} = \"{}\"\n", k.world_name(w), u.model.index_name(i)))
                .collect();
            fs::write(&embedding, map)
                .with_context(|| format!("cannot write {}", embedding.display()))?;
            let report = UnravelOutput {
                moments: u.model.moments().len(),
                histories: u.model.histories().len(),
                model: out.display().to_string(),
                embedding: embedding.display().to_string(),
            };
            emit(json, &report, || {
                format!(
                    "unraveled {} world(s) into {} moments and {} histories: wrote {} and {}",
                    k.num_worlds(),
                    report.moments,
                    report.histories,
                    report.model,
                    report.embedding
                )
            })?;
            Ok(true)
        }
        Command::Correspond {
            kripke,
            formulas,
            seed,
            count,
            depth,
        } => {
            let k = load_kripke(&kripke)?;
            warn_if_invalid(&validate_kripke(&k), &kripke);
            let fs: Vec<Formula> = if formulas.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let agents: Vec<&str> = k.agents().iter().map(String::as_str).collect();
                (0..count)
                    .map(|_| random_formula(&mut rng, depth, &PROPS, &agents))
                    .collect()
            } else {
                formulas.iter().map(|t| formula(t)).collect::<Result<_>>()?
            };
            let report = correspondence_check(&k, &fs)?;
            emit(json, &report, || {
                let mut s: String = report
                    .divergences
                    .iter()
                    .map(|d| {
                        format!(
                            "{} {}: kripke={} tree={}\n",
                            d.world, d.formula, d.kripke, d.tree
                        )
                    })
                    .collect();
                s += &format!(
                    "correspondence: {} checks, {} divergence(s)",
                    report.checked,
                    report.divergences.len()
                );
                s
            })?;
            Ok(report.divergences.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
