//! Finite kiobt-models: a moment tree whose root-to-leaf branches are the
//! histories, per-agent choice partitions, epistemic indistinguishability,
//! intention topologies, history values and a valuation over indices.

pub mod doc;
pub(crate) mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use doc::{ModelDoc, ValueMode};
pub use validate::{validate_frame, Condition, ValidationReport, Violation};

use crate::formula::KEYWORDS;

/// Set of indices of one model, addressed by [`IndexId`].
pub type IndexSet = FixedBitSet;

macro_rules! id_type {
    ($($(#[$m:meta])* $name:ident),*) => {$(
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub usize);
    )*};
}

id_type!(
    MomentId,
    /// Histories are named after their leaf moment.
    HistoryId,
    AgentId,
    /// Dense numbering of the model's indices.
    IndexId
);

/// A moment paired with a history passing through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index {
    pub moment: MomentId,
    pub history: HistoryId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Moment {
    pub name: String,
    pub parent: Option<MomentId>,
    pub children: Vec<MomentId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct History {
    pub leaf: MomentId,
    /// Root first.
    pub path: Vec<MomentId>,
}

/// One agent's available actions at one moment.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoicePartition {
    pub cells: Vec<Vec<HistoryId>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntentionTopology {
    pub agent: AgentId,
    pub representative: IndexId,
    /// The ex ante information set of the representative.
    pub info_set: IndexSet,
    pub opens: Vec<IndexSet>,
}

impl IntentionTopology {
    /// Inclusion-minimal non-empty opens.
    pub fn minimal_opens(&self) -> Vec<&IndexSet> {
        let nonempty: Vec<&IndexSet> = self.opens.iter().filter(|u| !u.is_clear()).collect();
        nonempty
            .iter()
            .copied()
            .filter(|u| !nonempty.iter().any(|v| v.is_subset(u) && v != u))
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown moment `{0}`")]
    UnknownMoment(String),
    #[error("unknown history `{0}`")]
    UnknownHistory(String),
    #[error("malformed index `{0}` (expected moment:leaf)")]
    MalformedIndex(String),
    #[error("moment `{moment}` does not lie on history `{history}`")]
    IndexNotOnHistory { moment: String, history: String },
    #[error("duplicate {what} `{name}`")]
    Duplicate { what: &'static str, name: String },
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("moment tree: {0}")]
    NotATree(String),
    #[error("agent `{agent}` has no choice partition at moment `{moment}`")]
    MissingChoice { agent: String, moment: String },
    #[error("history `{history}` does not pass through moment `{moment}`")]
    CellOutsideMoment { moment: String, history: String },
    #[error("value for history `{0}`: {1}")]
    Value(String, String),
    #[error("no agents declared")]
    NoAgents,
}

/// A finite (possibly bi-valued) kiobt-model.
#[derive(Debug, Clone)]
pub struct KiobtModel {
    mode: ValueMode,
    agents: Vec<String>,
    moments: Vec<Moment>,
    histories: Vec<History>,
    indices: Vec<Index>,
    index_ids: HashMap<Index, IndexId>,
    slices: Vec<Vec<IndexId>>,
    through: Vec<Vec<HistoryId>>,
    choices: Vec<Vec<ChoicePartition>>,
    /// `[agent][moment][history]`, `None` for histories not covered.
    cell_of: Vec<Vec<Vec<Option<usize>>>>,
    generators: Vec<Vec<(IndexId, IndexId)>>,
    classes: Vec<Vec<usize>>,
    topologies: Vec<IntentionTopology>,
    value_obj: Vec<f64>,
    value_subj: Vec<f64>,
    valuation: BTreeMap<String, IndexSet>,
}

/// Formula-level identifier: ASCII letter followed by letters or digits.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
        && !KEYWORDS.contains(&name)
}

pub(crate) fn is_node_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(':') && !name.chars().any(char::is_whitespace)
}

impl KiobtModel {
    pub fn from_doc(doc: &ModelDoc) -> Result<Self, ModelError> {
        let mode = doc.mode;
        if doc.agents.is_empty() {
            return Err(ModelError::NoAgents);
        }
        let mut agent_ids = HashMap::new();
        for (i, a) in doc.agents.iter().enumerate() {
            if !is_identifier(a) {
                return Err(ModelError::InvalidName(a.clone()));
            }
            if agent_ids.insert(a.as_str(), AgentId(i)).is_some() {
                return Err(ModelError::Duplicate {
                    what: "agent",
                    name: a.clone(),
                });
            }
        }

        // moment tree
        let mut moment_ids = HashMap::new();
        for (i, m) in doc.moments.iter().enumerate() {
            if !is_node_name(&m.id) {
                return Err(ModelError::InvalidName(m.id.clone()));
            }
            if moment_ids.insert(m.id.as_str(), MomentId(i)).is_some() {
                return Err(ModelError::Duplicate {
                    what: "moment",
                    name: m.id.clone(),
                });
            }
        }
        if doc.moments.is_empty() {
            return Err(ModelError::NotATree("no moments".into()));
        }
        let mut moments: Vec<Moment> = doc
            .moments
            .iter()
            .map(|m| Moment {
                name: m.id.clone(),
                parent: None,
                children: vec![],
            })
            .collect();
        for (i, m) in doc.moments.iter().enumerate() {
            if let Some(p) = &m.parent {
                let pid = *moment_ids
                    .get(p.as_str())
                    .ok_or_else(|| ModelError::UnknownMoment(p.clone()))?;
                moments[i].parent = Some(pid);
                moments[pid.0].children.push(MomentId(i));
            }
        }
        let roots: Vec<usize> = (0..moments.len())
            .filter(|&i| moments[i].parent.is_none())
            .collect();
        if roots.len() != 1 {
            let names: Vec<&str> = roots.iter().map(|&i| moments[i].name.as_str()).collect();
            return Err(ModelError::NotATree(format!(
                "expected exactly one root, found {} ({})",
                roots.len(),
                names.join(", ")
            )));
        }
        // every moment must reach the root without revisiting itself
        for start in 0..moments.len() {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = moments[cur].parent {
                cur = p.0;
                steps += 1;
                if steps > moments.len() {
                    return Err(ModelError::NotATree(format!(
                        "cycle through moment `{}`",
                        moments[start].name
                    )));
                }
            }
        }

        let mut histories = Vec::new();
        let mut history_ids = HashMap::new();
        for (i, m) in moments.iter().enumerate() {
            if m.children.is_empty() {
                let mut path = vec![MomentId(i)];
                let mut cur = i;
                while let Some(p) = moments[cur].parent {
                    path.push(p);
                    cur = p.0;
                }
                path.reverse();
                history_ids.insert(m.name.clone(), HistoryId(histories.len()));
                histories.push(History {
                    leaf: MomentId(i),
                    path,
                });
            }
        }

        let mut through = vec![Vec::new(); moments.len()];
        let mut indices = Vec::new();
        let mut index_ids = HashMap::new();
        let mut slices = vec![Vec::new(); moments.len()];
        for (h, hist) in histories.iter().enumerate() {
            for &m in &hist.path {
                through[m.0].push(HistoryId(h));
            }
        }
        for (m, hs) in through.iter().enumerate() {
            for &h in hs {
                let idx = Index {
                    moment: MomentId(m),
                    history: h,
                };
                let id = IndexId(indices.len());
                indices.push(idx);
                index_ids.insert(idx, id);
                slices[m].push(id);
            }
        }

        let lookup_index = |text: &str| -> Result<IndexId, ModelError> {
            let (m, h) = text
                .split_once(':')
                .ok_or_else(|| ModelError::MalformedIndex(text.to_string()))?;
            let mid = *moment_ids
                .get(m.trim())
                .ok_or_else(|| ModelError::UnknownMoment(m.to_string()))?;
            let hid = *history_ids
                .get(h.trim())
                .ok_or_else(|| ModelError::UnknownHistory(h.to_string()))?;
            index_ids
                .get(&Index {
                    moment: mid,
                    history: hid,
                })
                .copied()
                .ok_or_else(|| ModelError::IndexNotOnHistory {
                    moment: m.to_string(),
                    history: h.to_string(),
                })
        };
        let lookup_agent = |a: &str| {
            agent_ids
                .get(a)
                .copied()
                .ok_or_else(|| ModelError::UnknownAgent(a.to_string()))
        };

        // choices
        let n_agents = doc.agents.len();
        let mut given: Vec<Vec<Option<ChoicePartition>>> =
            vec![vec![None; moments.len()]; n_agents];
        for c in &doc.choices {
            let a = lookup_agent(&c.agent)?;
            let m = *moment_ids
                .get(c.moment.as_str())
                .ok_or_else(|| ModelError::UnknownMoment(c.moment.clone()))?;
            let mut cells = Vec::new();
            for cell in &c.cells {
                let mut ids = Vec::new();
                for h in cell {
                    let hid = *history_ids
                        .get(h.as_str())
                        .ok_or_else(|| ModelError::UnknownHistory(h.clone()))?;
                    if !through[m.0].contains(&hid) {
                        return Err(ModelError::CellOutsideMoment {
                            moment: c.moment.clone(),
                            history: h.clone(),
                        });
                    }
                    ids.push(hid);
                }
                cells.push(ids);
            }
            let slot = &mut given[a.0][m.0];
            if slot.is_some() {
                return Err(ModelError::Duplicate {
                    what: "choice partition",
                    name: format!("{}@{}", c.agent, c.moment),
                });
            }
            *slot = Some(ChoicePartition { cells });
        }
        let mut choices = Vec::with_capacity(n_agents);
        for (a, row) in given.into_iter().enumerate() {
            let mut per_moment = Vec::with_capacity(moments.len());
            for (m, slot) in row.into_iter().enumerate() {
                match slot {
                    Some(p) => per_moment.push(p),
                    // a single history admits exactly one partition
                    None if through[m].len() == 1 => per_moment.push(ChoicePartition {
                        cells: vec![through[m].clone()],
                    }),
                    None => {
                        return Err(ModelError::MissingChoice {
                            agent: doc.agents[a].clone(),
                            moment: moments[m].name.clone(),
                        })
                    }
                }
            }
            choices.push(per_moment);
        }
        let cell_of = choices
            .iter()
            .map(|per_moment| {
                per_moment
                    .iter()
                    .map(|p| {
                        let mut v = vec![None; histories.len()];
                        for (ci, cell) in p.cells.iter().enumerate() {
                            for h in cell {
                                v[h.0].get_or_insert(ci);
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();

        // epistemic generators and their equivalence closure
        let mut generators = vec![Vec::new(); n_agents];
        for e in &doc.epistemic {
            let a = lookup_agent(&e.agent)?;
            for [x, y] in &e.pairs {
                generators[a.0].push((lookup_index(x)?, lookup_index(y)?));
            }
        }
        let classes = generators
            .iter()
            .map(|g| close_equivalence(indices.len(), g.iter().map(|&(a, b)| (a.0, b.0))))
            .collect();

        // values
        let mut value_obj = vec![0.0; histories.len()];
        let mut value_subj = vec![0.0; histories.len()];
        let mut seen = vec![false; histories.len()];
        for (name, v) in &doc.values {
            let h = *history_ids
                .get(name.as_str())
                .ok_or_else(|| ModelError::UnknownHistory(name.clone()))?;
            let (o, s) = match (mode, v) {
                (ValueMode::Single, doc::ValueDoc::Single(x)) => (*x, *x),
                (ValueMode::Dual, doc::ValueDoc::Dual([o, s])) => (*o, *s),
                (ValueMode::Single, _) => {
                    return Err(ModelError::Value(
                        name.clone(),
                        "single mode expects one number".into(),
                    ))
                }
                (ValueMode::Dual, _) => {
                    return Err(ModelError::Value(
                        name.clone(),
                        "dual mode expects a pair [objective, subjective]".into(),
                    ))
                }
            };
            if !o.is_finite() || !s.is_finite() {
                return Err(ModelError::Value(
                    name.clone(),
                    "values must be finite".into(),
                ));
            }
            value_obj[h.0] = o;
            value_subj[h.0] = s;
            seen[h.0] = true;
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            let name = moments[histories[h].leaf.0].name.clone();
            return Err(ModelError::Value(name, "missing".into()));
        }

        // valuation
        let mut valuation = BTreeMap::new();
        for (p, list) in &doc.valuation {
            if !is_identifier(p) {
                return Err(ModelError::InvalidName(p.clone()));
            }
            let mut set = IndexSet::with_capacity(indices.len());
            for i in list {
                set.insert(lookup_index(i)?.0);
            }
            valuation.insert(p.clone(), set);
        }

        let mut model = KiobtModel {
            mode,
            agents: doc.agents.clone(),
            moments,
            histories,
            indices,
            index_ids: index_ids.clone(),
            slices,
            through,
            choices,
            cell_of,
            generators,
            classes,
            topologies: Vec::new(),
            value_obj,
            value_subj,
            valuation,
        };

        // topologies, keyed to the ex ante information set of their representative
        let mut topologies = Vec::new();
        for t in &doc.topology {
            let agent = lookup_agent(&t.agent)?;
            let representative = lookup_index(&t.index)?;
            let info_set = model.ex_ante_info_set(agent, representative);
            let mut opens = Vec::new();
            for open in &t.opens {
                let mut set = IndexSet::with_capacity(model.indices.len());
                for i in open {
                    set.insert(lookup_index(i)?.0);
                }
                opens.push(set);
            }
            topologies.push(IntentionTopology {
                agent,
                representative,
                info_set,
                opens,
            });
        }
        // a singleton information set carries exactly one topology
        for a in 0..n_agents {
            for i in 0..model.indices.len() {
                let info = model.ex_ante_info_set(AgentId(a), IndexId(i));
                if info.count_ones(..) == 1
                    && !topologies
                        .iter()
                        .any(|t| t.agent.0 == a && t.info_set == info)
                {
                    let empty = IndexSet::with_capacity(model.indices.len());
                    topologies.push(IntentionTopology {
                        agent: AgentId(a),
                        representative: IndexId(i),
                        info_set: info.clone(),
                        opens: vec![empty, info],
                    });
                }
            }
        }
        model.topologies = topologies;
        Ok(model)
    }

    pub fn from_toml(text: &str) -> Result<Self, LoadError> {
        let doc = ModelDoc::from_toml(text)?;
        Ok(Self::from_doc(&doc)?)
    }

    /// Inverse of [`KiobtModel::from_doc`] up to ordering. Forced choice
    /// partitions and forced singleton topologies are omitted.
    pub fn to_doc(&self) -> ModelDoc {
        let moments = self
            .moments
            .iter()
            .map(|m| doc::MomentDoc {
                id: m.name.clone(),
                parent: m.parent.map(|p| self.moments[p.0].name.clone()),
            })
            .collect();
        let mut choices = Vec::new();
        for (a, per_moment) in self.choices.iter().enumerate() {
            for (m, p) in per_moment.iter().enumerate() {
                if self.through[m].len() > 1 {
                    choices.push(doc::ChoiceDoc {
                        agent: self.agents[a].clone(),
                        moment: self.moments[m].name.clone(),
                        cells: p
                            .cells
                            .iter()
                            .map(|c| {
                                c.iter()
                                    .map(|&h| self.history_name(h).to_string())
                                    .collect()
                            })
                            .collect(),
                    });
                }
            }
        }
        let epistemic = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_empty())
            .map(|(a, g)| doc::EpistemicDoc {
                agent: self.agents[a].clone(),
                pairs: g
                    .iter()
                    .map(|&(x, y)| [self.index_name(x), self.index_name(y)])
                    .collect(),
            })
            .collect();
        let topology = self
            .topologies
            .iter()
            .filter(|t| t.info_set.count_ones(..) > 1)
            .map(|t| doc::TopologyDoc {
                agent: self.agents[t.agent.0].clone(),
                index: self.index_name(t.representative),
                opens: t.opens.iter().map(|u| self.index_names(u)).collect(),
            })
            .collect();
        let values = (0..self.histories.len())
            .map(|h| {
                let v = match self.mode {
                    ValueMode::Single => doc::ValueDoc::Single(self.value_obj[h]),
                    ValueMode::Dual => doc::ValueDoc::Dual([self.value_obj[h], self.value_subj[h]]),
                };
                (self.history_name(HistoryId(h)).to_string(), v)
            })
            .collect();
        let valuation = self
            .valuation
            .iter()
            .map(|(p, set)| (p.clone(), self.index_names(set)))
            .collect();
        ModelDoc {
            mode: self.mode,
            agents: self.agents.clone(),
            moments,
            choices,
            epistemic,
            topology,
            values,
            valuation,
        }
    }

    pub fn mode(&self) -> ValueMode {
        self.mode
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn agent_id(&self, name: &str) -> Result<AgentId, ModelError> {
        self.agents
            .iter()
            .position(|a| a == name)
            .map(AgentId)
            .ok_or_else(|| ModelError::UnknownAgent(name.to_string()))
    }

    pub fn agent_name(&self, a: AgentId) -> &str {
        &self.agents[a.0]
    }

    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }

    pub fn moment_id(&self, name: &str) -> Result<MomentId, ModelError> {
        self.moments
            .iter()
            .position(|m| m.name == name)
            .map(MomentId)
            .ok_or_else(|| ModelError::UnknownMoment(name.to_string()))
    }

    pub fn moment_name(&self, m: MomentId) -> &str {
        &self.moments[m.0].name
    }

    pub fn root(&self) -> MomentId {
        self.histories[0].path[0]
    }

    pub fn histories(&self) -> &[History] {
        &self.histories
    }

    pub fn history_id(&self, name: &str) -> Result<HistoryId, ModelError> {
        self.histories
            .iter()
            .position(|h| self.moments[h.leaf.0].name == name)
            .map(HistoryId)
            .ok_or_else(|| ModelError::UnknownHistory(name.to_string()))
    }

    pub fn history_name(&self, h: HistoryId) -> &str {
        &self.moments[self.histories[h.0].leaf.0].name
    }

    /// `H_m`: the histories passing through `m`.
    pub fn histories_through(&self, m: MomentId) -> &[HistoryId] {
        &self.through[m.0]
    }

    pub fn num_indices(&self) -> usize {
        self.indices.len()
    }

    pub fn index(&self, id: IndexId) -> Index {
        self.indices[id.0]
    }

    pub fn index_id(&self, moment: MomentId, history: HistoryId) -> Option<IndexId> {
        self.index_ids.get(&Index { moment, history }).copied()
    }

    /// Resolves `moment:leaf`.
    pub fn parse_index(&self, text: &str) -> Result<IndexId, ModelError> {
        let (m, h) = text
            .split_once(':')
            .ok_or_else(|| ModelError::MalformedIndex(text.to_string()))?;
        let mid = self.moment_id(m.trim())?;
        let hid = self.history_id(h.trim())?;
        self.index_id(mid, hid)
            .ok_or_else(|| ModelError::IndexNotOnHistory {
                moment: m.to_string(),
                history: h.to_string(),
            })
    }

    pub fn index_name(&self, id: IndexId) -> String {
        let i = self.indices[id.0];
        format!(
            "{}:{}",
            self.moment_name(i.moment),
            self.history_name(i.history)
        )
    }

    pub fn index_names(&self, set: &IndexSet) -> Vec<String> {
        set.ones().map(|i| self.index_name(IndexId(i))).collect()
    }

    /// The indices `<m, h>` for `h` in `H_m`.
    pub fn slice(&self, m: MomentId) -> &[IndexId] {
        &self.slices[m.0]
    }

    pub fn empty_set(&self) -> IndexSet {
        IndexSet::with_capacity(self.indices.len())
    }

    pub fn full_set(&self) -> IndexSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn choice(&self, agent: AgentId, m: MomentId) -> &ChoicePartition {
        &self.choices[agent.0][m.0]
    }

    /// Position of `Choice^m_agent(h)` within [`KiobtModel::choice`].
    pub fn cell_of(&self, agent: AgentId, m: MomentId, h: HistoryId) -> Option<usize> {
        self.cell_of[agent.0][m.0][h.0]
    }

    pub fn epistemic_generators(&self, agent: AgentId) -> &[(IndexId, IndexId)] {
        &self.generators[agent.0]
    }

    /// Class label of `i` under the closed relation `~_agent`.
    pub fn epistemic_class(&self, agent: AgentId, i: IndexId) -> usize {
        self.classes[agent.0][i.0]
    }

    pub fn related(&self, agent: AgentId, i: IndexId, j: IndexId) -> bool {
        self.classes[agent.0][i.0] == self.classes[agent.0][j.0]
    }

    /// The `~_agent` class of `i`.
    pub fn epistemic_class_set(&self, agent: AgentId, i: IndexId) -> IndexSet {
        let c = self.classes[agent.0][i.0];
        let mut s = self.empty_set();
        for (j, &cj) in self.classes[agent.0].iter().enumerate() {
            if cj == c {
                s.insert(j);
            }
        }
        s
    }

    /// `pi^box_agent[i]`: every index at a moment holding some index
    /// epistemically related to `i`.
    pub fn ex_ante_info_set(&self, agent: AgentId, i: IndexId) -> IndexSet {
        let c = self.classes[agent.0][i.0];
        let mut s = self.empty_set();
        for (m, slice) in self.slices.iter().enumerate() {
            if slice.iter().any(|j| self.classes[agent.0][j.0] == c) {
                for j in &self.slices[m] {
                    s.insert(j.0);
                }
            }
        }
        s
    }

    pub fn topologies(&self) -> &[IntentionTopology] {
        &self.topologies
    }

    /// The topology keyed to the ex ante information set of `i`.
    pub fn topology_for(&self, agent: AgentId, i: IndexId) -> Option<&IntentionTopology> {
        let info = self.ex_ante_info_set(agent, i);
        self.topologies
            .iter()
            .find(|t| t.agent == agent && t.info_set == info)
    }

    pub fn value_obj(&self, h: HistoryId) -> f64 {
        self.value_obj[h.0]
    }

    pub fn value_subj(&self, h: HistoryId) -> f64 {
        self.value_subj[h.0]
    }

    pub fn valuation(&self, prop: &str) -> Option<&IndexSet> {
        self.valuation.get(prop)
    }

    pub fn propositions(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }
}

/// Class labels of the reflexive-symmetric-transitive closure of `pairs`
/// over `n` elements. Labels are the smallest member of each class.
pub(crate) fn close_equivalence(
    n: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<usize> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Syntax(#[from] toml::de::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<m{}, h{}>", self.moment.0, self.history.0)
    }
}
