//! Truth of formulas at the indices of a kiobt-model.
//!
//! [`Evaluator`] computes extensions bottom-up and memoizes them per
//! formula, so checking many formulas with shared subformulas against one
//! model stays cheap.

pub mod deontic;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

pub use deontic::{epistemic_cluster, optimal, soptimal, states_for, DeonticFrame};

use crate::formula::Formula;
use crate::model::{AgentId, IndexId, IndexSet, KiobtModel, MomentId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("agent `{0}` does not occur in the model")]
    UnknownAgent(String),
}

/// Which formulation of the two ought clauses to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OughtRoute {
    /// `φ` holds throughout every (subjectively) optimal action.
    #[default]
    Optimal,
    /// Every action not guaranteeing `φ` is strictly dominated by one
    /// whose weak dominators all guarantee `φ`.
    Dominance,
}

/// `‖φ‖`: the indices where a formula holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub formula: Formula,
    pub indices: IndexSet,
}

impl Extension {
    pub fn contains(&self, i: IndexId) -> bool {
        self.indices.contains(i.0)
    }

    pub fn names(&self, model: &KiobtModel) -> Vec<String> {
        model.index_names(&self.indices)
    }
}

pub struct Evaluator<'m> {
    model: &'m KiobtModel,
    route: OughtRoute,
    frames: Vec<Vec<DeonticFrame>>,
    moment_blocks: Vec<IndexSet>,
    know_blocks: Vec<Vec<IndexSet>>,
    /// Per agent, per topology: members and inclusion-minimal non-empty opens.
    intention: Vec<Vec<(IndexSet, Vec<IndexSet>)>>,
    cache: Mutex<HashMap<Formula, Arc<IndexSet>>>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m KiobtModel) -> Self {
        Self::with_route(model, OughtRoute::Optimal)
    }

    pub fn with_route(model: &'m KiobtModel, route: OughtRoute) -> Self {
        let n_agents = model.agents().len();
        let n_moments = model.moments().len();
        let frames = (0..n_agents)
            .map(|a| {
                (0..n_moments)
                    .map(|m| DeonticFrame::new(model, AgentId(a), MomentId(m)))
                    .collect()
            })
            .collect();
        let moment_blocks = (0..n_moments)
            .map(|m| {
                let mut s = model.empty_set();
                for i in model.slice(MomentId(m)) {
                    s.insert(i.0);
                }
                s
            })
            .collect();

        let mut know_blocks = Vec::with_capacity(n_agents);
        let mut intention = Vec::with_capacity(n_agents);
        for a in (0..n_agents).map(AgentId) {
            let mut by_label: HashMap<usize, IndexSet> = HashMap::new();
            for i in (0..model.num_indices()).map(IndexId) {
                by_label
                    .entry(model.epistemic_class(a, i))
                    .or_insert_with(|| model.empty_set())
                    .insert(i.0);
            }
            let mut blocks: Vec<(usize, IndexSet)> = by_label.into_iter().collect();
            blocks.sort_by_key(|(label, _)| *label);
            know_blocks.push(blocks.into_iter().map(|(_, s)| s).collect());

            let topologies: Vec<_> = model.topologies().iter().filter(|t| t.agent == a).collect();
            let mut members = vec![model.empty_set(); topologies.len()];
            for i in (0..model.num_indices()).map(IndexId) {
                if let Some(t) = model.topology_for(a, i) {
                    let k = topologies
                        .iter()
                        .position(|u| std::ptr::eq(*u, t))
                        .expect("own topology");
                    members[k].insert(i.0);
                }
            }
            intention.push(
                topologies
                    .iter()
                    .zip(members)
                    .map(|(t, m)| (m, t.minimal_opens().into_iter().cloned().collect()))
                    .collect(),
            );
        }

        Evaluator {
            model,
            route,
            frames,
            moment_blocks,
            know_blocks,
            intention,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &'m KiobtModel {
        self.model
    }

    pub fn route(&self) -> OughtRoute {
        self.route
    }

    pub fn frame(&self, agent: AgentId, m: MomentId) -> &DeonticFrame {
        &self.frames[agent.0][m.0]
    }

    pub fn eval(&self, i: IndexId, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.set(f)?.contains(i.0))
    }

    pub fn extension(&self, f: &Formula) -> Result<Extension, EvalError> {
        Ok(Extension {
            formula: f.clone(),
            indices: (*self.set(f)?).clone(),
        })
    }

    /// Shared handle on the memoized extension of `f`.
    pub fn set(&self, f: &Formula) -> Result<Arc<IndexSet>, EvalError> {
        for a in f.agents() {
            self.model
                .agent_id(a)
                .map_err(|_| EvalError::UnknownAgent(a.to_string()))?;
        }
        Ok(self.fill(f))
    }

    fn fill(&self, f: &Formula) -> Arc<IndexSet> {
        if let Some(s) = self.cached(f) {
            return s;
        }
        for c in f.children() {
            self.fill(c);
        }
        let s = Arc::new(self.compute(f));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(f.clone())
            .or_insert(s)
            .clone()
    }

    fn cached(&self, f: &Formula) -> Option<Arc<IndexSet>> {
        self.cache.lock().expect("cache lock").get(f).cloned()
    }

    fn child(&self, f: &Formula) -> Arc<IndexSet> {
        self.cached(f).expect("children are computed first")
    }

    fn agent(&self, name: &str) -> AgentId {
        self.model.agent_id(name).expect("agents checked up front")
    }

    fn compute(&self, f: &Formula) -> IndexSet {
        let model = self.model;
        match f {
            Formula::Atom(p) => model
                .valuation(p)
                .cloned()
                .unwrap_or_else(|| model.empty_set()),
            Formula::Not(g) => {
                let mut s = (*self.child(g)).clone();
                s.toggle_range(..);
                s
            }
            Formula::And(l, r) => {
                let mut s = (*self.child(l)).clone();
                s.intersect_with(&self.child(r));
                s
            }
            Formula::Settled(g) => saturate(model, &self.moment_blocks, &self.child(g)),
            Formula::Stit(a, g) => {
                let a = self.agent(a);
                let ext = self.child(g);
                let mut out = model.empty_set();
                for frame in &self.frames[a.0] {
                    for cell in &frame.footprint {
                        if cell.is_subset(&ext) {
                            out.union_with(cell);
                        }
                    }
                }
                out
            }
            Formula::Know(a, g) => {
                saturate(model, &self.know_blocks[self.agent(a).0], &self.child(g))
            }
            Formula::Intend(a, g) => {
                let ext = self.child(g);
                let mut out = model.empty_set();
                for (members, minimal) in &self.intention[self.agent(a).0] {
                    if minimal.iter().any(|u| u.is_subset(&ext)) {
                        out.union_with(members);
                    }
                }
                out
            }
            Formula::Ought(a, g) | Formula::SubjOught(a, g) => {
                let subjective = matches!(f, Formula::SubjOught(..));
                let ext = self.child(g);
                let mut out = model.empty_set();
                for (m, frame) in self.frames[self.agent(a).0].iter().enumerate() {
                    let holds = match self.route {
                        OughtRoute::Optimal => ought_optimal(frame, &ext, subjective),
                        OughtRoute::Dominance => ought_dominance(frame, &ext, subjective),
                    };
                    if holds {
                        out.union_with(&self.moment_blocks[m]);
                    }
                }
                out
            }
        }
    }
}

/// Union of the blocks lying entirely inside `ext`.
fn saturate(model: &KiobtModel, blocks: &[IndexSet], ext: &IndexSet) -> IndexSet {
    let mut out = model.empty_set();
    for b in blocks {
        if b.is_subset(ext) {
            out.union_with(b);
        }
    }
    out
}

fn ought_optimal(frame: &DeonticFrame, ext: &IndexSet, subjective: bool) -> bool {
    if subjective {
        frame
            .soptimal()
            .into_iter()
            .all(|c| frame.cluster_footprint[c].is_subset(ext))
    } else {
        frame
            .optimal()
            .into_iter()
            .all(|c| frame.footprint[c].is_subset(ext))
    }
}

fn ought_dominance(frame: &DeonticFrame, ext: &IndexSet, subjective: bool) -> bool {
    let (sets, leq) = if subjective {
        (&frame.cluster_footprint, &frame.subjective)
    } else {
        (&frame.footprint, &frame.objective)
    };
    let n = sets.len();
    let strictly = |i: usize, j: usize| leq[i][j] && !leq[j][i];
    (0..n).filter(|&l| !sets[l].is_subset(ext)).all(|l| {
        (0..n).any(|l1| {
            strictly(l, l1)
                && (0..n)
                    .filter(|&l2| l2 == l1 || leq[l1][l2])
                    .all(|l2| sets[l2].is_subset(ext))
        })
    })
}

/// One-off evaluation. Prefer an [`Evaluator`] for repeated queries.
pub fn eval(model: &KiobtModel, i: IndexId, f: &Formula) -> Result<bool, EvalError> {
    Evaluator::new(model).eval(i, f)
}

pub fn extension(model: &KiobtModel, f: &Formula) -> Result<Extension, EvalError> {
    Evaluator::new(model).extension(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn m1_examples() {
        let m = fixtures::m1();
        let ev = Evaluator::new(&m);
        let h1 = m.parse_index("m0:h1").unwrap();
        assert!(ev.eval(h1, &f("[a]p & <>[a]~p")).unwrap());
        assert_eq!(ev.extension(&f("p")).unwrap().names(&m), ["m0:h1", "m0:h2"]);
        assert!(ev.extension(&f("box p")).unwrap().indices.is_clear());
        for i in 0..m.num_indices() {
            assert!(ev.eval(IndexId(i), &f("box p -> p")).unwrap());
        }
    }

    #[test]
    fn m2_oughts_diverge() {
        let m = fixtures::m2();
        let ev = Evaluator::new(&m);
        let g1 = m.parse_index("m1:g1").unwrap();
        assert!(ev.eval(g1, &f("Ob a. p")).unwrap());
        assert!(!ev.eval(g1, &f("Os a. p")).unwrap());
    }

    #[test]
    fn intention_needs_a_nonempty_open_inside() {
        let m = fixtures::m2();
        let ev = Evaluator::new(&m);
        // U also covers m2:g4, where p is false
        assert!(ev.extension(&f("I a. p")).unwrap().indices.is_clear());
        assert!(ev
            .extension(&f("I a. (p & ~p)"))
            .unwrap()
            .indices
            .is_clear());

        let mut doc = crate::model::ModelDoc::from_toml(fixtures::M2_TOML).unwrap();
        doc.valuation
            .insert("p".into(), vec!["m1:g2".into(), "m2:g4".into()]);
        let m = KiobtModel::from_doc(&doc).unwrap();
        let ext = extension(&m, &f("I a. p")).unwrap();
        assert_eq!(ext.names(&m), ["m1:g1", "m1:g2", "m2:g3", "m2:g4"]);
    }

    #[test]
    fn unknown_agent_is_an_error() {
        let m = fixtures::m1();
        assert_eq!(
            eval(&m, IndexId(0), &f("[b]p")),
            Err(EvalError::UnknownAgent("b".into()))
        );
    }

    #[test]
    fn routes_agree_on_fixtures() {
        for m in [fixtures::m1(), fixtures::m2()] {
            let a = Evaluator::new(&m);
            let b = Evaluator::with_route(&m, OughtRoute::Dominance);
            for s in [
                "Ob a. p",
                "Os a. p",
                "Ob a. ~p",
                "Os a. ~p",
                "Ob a. q",
                "Os a. K a. p",
                "Ob a. (p | ~p)",
            ] {
                assert_eq!(
                    a.extension(&f(s)).unwrap(),
                    b.extension(&f(s)).unwrap(),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn unknown_atoms_are_false() {
        let m = fixtures::m1();
        assert!(extension(&m, &f("zz")).unwrap().indices.is_clear());
    }
}
