//! Model checking and responsibility classification for intentional
//! epistemic act-utilitarian stit theory.
//!
//! The crate covers finite kiobt-models ([`model`]), the modal language
//! ([`formula`]), its evaluation ([`semantics`]), responsibility verdicts
//! ([`responsibility`]), bi-valued Kripke models and their unraveling into
//! trees ([`kripke`]), and randomized soundness testing ([`harness`]).

pub mod fixtures;
pub mod formula;
pub mod harness;
pub mod kripke;
pub mod model;
pub mod responsibility;
pub mod semantics;

pub use formula::{parse, Formula, ParseError};
pub use model::{
    validate_frame, AgentId, Condition, HistoryId, Index, IndexId, IndexSet, KiobtModel, LoadError,
    ModelDoc, ModelError, MomentId, ValidationReport, ValueMode, Violation,
};
pub use semantics::{EvalError, Evaluator, Extension, OughtRoute};
