//! Bi-valued Kripke models: worlds grouped into `R_box` classes, per-class
//! choice partitions, epistemic equivalences, intention relations and two
//! value functions. They can be unraveled into kiobt-models.

pub mod doc;
mod eval;
mod unravel;
mod validate;

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use doc::KripkeDoc;
pub use eval::{eval_kripke, extension_kripke, KripkeEvaluator};
pub use unravel::{correspondence_check, unravel, Correspondence, Divergence, Unraveled};
pub use validate::validate_kripke;

use crate::model::{close_equivalence, is_node_name, AgentId};

/// Set of worlds of one Kripke model.
pub type WorldSet = FixedBitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KripkeError {
    #[error("model declares no agents")]
    NoAgents,
    #[error("model declares no worlds")]
    NoWorlds,
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate {what} `{name}`")]
    Duplicate { what: &'static str, name: String },
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("agent `{agent}` has no choice partition for the class of `{class}`")]
    MissingChoice { agent: String, class: String },
    #[error("world `{world}` is not in the class of `{class}`")]
    CellOutsideClass { class: String, world: String },
    #[error("value of world `{0}`: {1}")]
    Value(String, String),
}

#[derive(Debug, Error)]
pub enum KripkeLoadError {
    #[error(transparent)]
    Syntax(#[from] toml::de::Error),
    #[error(transparent)]
    Model(#[from] KripkeError),
}

#[derive(Debug, Clone)]
pub struct KripkeModel {
    agents: Vec<String>,
    worlds: Vec<String>,
    world_ids: HashMap<String, usize>,
    /// `rbox` as written, for the partition check.
    box_lists: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// `[agent][class]`
    choices: Vec<Vec<Vec<Vec<usize>>>>,
    /// `[agent][world]`
    cell_of: Vec<Vec<Option<usize>>>,
    generators: Vec<Vec<(usize, usize)>>,
    epistemic: Vec<Vec<usize>>,
    /// `[agent][world]`, sorted successors under `R^I`.
    intention: Vec<Vec<Vec<usize>>>,
    value_o: Vec<f64>,
    value_s: Vec<f64>,
    valuation: BTreeMap<String, WorldSet>,
}

impl KripkeModel {
    pub fn from_doc(doc: &KripkeDoc) -> Result<Self, KripkeError> {
        if doc.agents.is_empty() {
            return Err(KripkeError::NoAgents);
        }
        if doc.worlds.is_empty() {
            return Err(KripkeError::NoWorlds);
        }
        let mut agent_ids = HashMap::new();
        for (i, a) in doc.agents.iter().enumerate() {
            if !crate::model::is_identifier(a) {
                return Err(KripkeError::InvalidName(a.clone()));
            }
            if agent_ids.insert(a.as_str(), i).is_some() {
                return Err(KripkeError::Duplicate {
                    what: "agent",
                    name: a.clone(),
                });
            }
        }
        let mut world_ids = HashMap::new();
        for (i, w) in doc.worlds.iter().enumerate() {
            if !is_node_name(w) {
                return Err(KripkeError::InvalidName(w.clone()));
            }
            if world_ids.insert(w.clone(), i).is_some() {
                return Err(KripkeError::Duplicate {
                    what: "world",
                    name: w.clone(),
                });
            }
        }
        let world = |w: &str| {
            world_ids
                .get(w)
                .copied()
                .ok_or_else(|| KripkeError::UnknownWorld(w.to_string()))
        };
        let agent = |a: &str| {
            agent_ids
                .get(a)
                .copied()
                .ok_or_else(|| KripkeError::UnknownAgent(a.to_string()))
        };
        let n = doc.worlds.len();
        let n_agents = doc.agents.len();

        let mut box_lists = Vec::new();
        let mut box_pairs = Vec::new();
        for list in &doc.rbox {
            let ids = list
                .iter()
                .map(|w| world(w))
                .collect::<Result<Vec<_>, _>>()?;
            box_pairs.extend(ids.windows(2).map(|p| (p[0], p[1])));
            box_lists.push(ids);
        }
        let labels = close_equivalence(n, box_pairs);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        let mut label_to_class = HashMap::new();
        for w in 0..n {
            let c = *label_to_class.entry(labels[w]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(w);
            class_of[w] = c;
        }

        let mut given: Vec<Vec<Option<Vec<Vec<usize>>>>> =
            vec![vec![None; classes.len()]; n_agents];
        for c in &doc.choices {
            let a = agent(&c.agent)?;
            let class = class_of[world(&c.class)?];
            let mut cells = Vec::new();
            for cell in &c.cells {
                let mut ids = Vec::new();
                for w in cell {
                    let id = world(w)?;
                    if class_of[id] != class {
                        return Err(KripkeError::CellOutsideClass {
                            class: c.class.clone(),
                            world: w.clone(),
                        });
                    }
                    ids.push(id);
                }
                cells.push(ids);
            }
            let slot = &mut given[a][class];
            if slot.is_some() {
                return Err(KripkeError::Duplicate {
                    what: "choice partition",
                    name: format!("{}@{}", c.agent, c.class),
                });
            }
            *slot = Some(cells);
        }
        let mut choices = Vec::with_capacity(n_agents);
        for (a, row) in given.into_iter().enumerate() {
            let mut per_class = Vec::with_capacity(classes.len());
            for (c, slot) in row.into_iter().enumerate() {
                match slot {
                    Some(cells) => per_class.push(cells),
                    None if classes[c].len() == 1 => per_class.push(vec![classes[c].clone()]),
                    None => {
                        return Err(KripkeError::MissingChoice {
                            agent: doc.agents[a].clone(),
                            class: doc.worlds[classes[c][0]].clone(),
                        })
                    }
                }
            }
            choices.push(per_class);
        }
        let cell_of = choices
            .iter()
            .map(|per_class| {
                let mut v = vec![None; n];
                for cells in per_class {
                    for (ci, cell) in cells.iter().enumerate() {
                        for &w in cell {
                            v[w].get_or_insert(ci);
                        }
                    }
                }
                v
            })
            .collect();

        let mut generators = vec![Vec::new(); n_agents];
        for e in &doc.epistemic {
            let a = agent(&e.agent)?;
            for [x, y] in &e.pairs {
                generators[a].push((world(x)?, world(y)?));
            }
        }
        let epistemic = generators
            .iter()
            .map(|g| close_equivalence(n, g.iter().copied()))
            .collect();

        let mut intention = vec![vec![Vec::new(); n]; n_agents];
        for e in &doc.intention {
            let a = agent(&e.agent)?;
            for [x, y] in &e.pairs {
                let (x, y) = (world(x)?, world(y)?);
                if !intention[a][x].contains(&y) {
                    intention[a][x].push(y);
                }
            }
        }
        for per_world in &mut intention {
            for succ in per_world.iter_mut() {
                succ.sort_unstable();
            }
        }

        let values = |map: &BTreeMap<String, f64>, which: &str| -> Result<Vec<f64>, KripkeError> {
            let mut out = vec![None; n];
            for (w, &v) in map {
                if !v.is_finite() {
                    return Err(KripkeError::Value(
                        w.clone(),
                        "values must be finite".into(),
                    ));
                }
                out[world(w)?] = Some(v);
            }
            out.into_iter()
                .enumerate()
                .map(|(w, v)| {
                    v.ok_or_else(|| {
                        KripkeError::Value(doc.worlds[w].clone(), format!("missing {which}"))
                    })
                })
                .collect()
        };
        let value_o = values(&doc.value_o, "valueO")?;
        let value_s = values(&doc.value_s, "valueS")?;

        let mut valuation = BTreeMap::new();
        for (p, list) in &doc.valuation {
            if !crate::model::is_identifier(p) {
                return Err(KripkeError::InvalidName(p.clone()));
            }
            let mut set = WorldSet::with_capacity(n);
            for w in list {
                set.insert(world(w)?);
            }
            valuation.insert(p.clone(), set);
        }

        Ok(KripkeModel {
            agents: doc.agents.clone(),
            worlds: doc.worlds.clone(),
            world_ids: world_ids.clone(),
            box_lists,
            classes,
            class_of,
            choices,
            cell_of,
            generators,
            epistemic,
            intention,
            value_o,
            value_s,
            valuation,
        })
    }

    pub fn from_toml(text: &str) -> Result<Self, KripkeLoadError> {
        Ok(Self::from_doc(&KripkeDoc::from_toml(text)?)?)
    }

    pub fn to_doc(&self) -> KripkeDoc {
        let name = |w: usize| self.worlds[w].clone();
        let names = |ws: &[usize]| ws.iter().map(|&w| name(w)).collect::<Vec<_>>();
        let mut choices = Vec::new();
        for (a, per_class) in self.choices.iter().enumerate() {
            for (c, cells) in per_class.iter().enumerate() {
                if self.classes[c].len() > 1 {
                    choices.push(doc::KripkeChoiceDoc {
                        agent: self.agents[a].clone(),
                        class: name(self.classes[c][0]),
                        cells: cells.iter().map(|cell| names(cell)).collect(),
                    });
                }
            }
        }
        let pairs = |a: usize, ps: Vec<(usize, usize)>| doc::PairsDoc {
            agent: self.agents[a].clone(),
            pairs: ps.into_iter().map(|(x, y)| [name(x), name(y)]).collect(),
        };
        KripkeDoc {
            agents: self.agents.clone(),
            worlds: self.worlds.clone(),
            rbox: self.box_lists.iter().map(|l| names(l)).collect(),
            choices,
            epistemic: (0..self.agents.len())
                .map(|a| pairs(a, self.generators[a].clone()))
                .collect(),
            intention: (0..self.agents.len())
                .map(|a| {
                    let ps = (0..self.worlds.len())
                        .flat_map(|x| self.intention[a][x].iter().map(move |&y| (x, y)))
                        .collect();
                    pairs(a, ps)
                })
                .collect(),
            value_o: (0..self.worlds.len())
                .map(|w| (name(w), self.value_o[w]))
                .collect(),
            value_s: (0..self.worlds.len())
                .map(|w| (name(w), self.value_s[w]))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, s)| (p.clone(), s.ones().map(name).collect()))
                .collect(),
        }
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|a| a == name).map(AgentId)
    }

    pub fn num_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_id(&self, name: &str) -> Option<usize> {
        self.world_ids.get(name).copied()
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub(crate) fn box_lists(&self) -> &[Vec<usize>] {
        &self.box_lists
    }

    /// The `R_box` classes, each listed in world order.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    pub fn choice(&self, agent: AgentId, class: usize) -> &[Vec<usize>] {
        &self.choices[agent.0][class]
    }

    pub fn cell_of(&self, agent: AgentId, w: usize) -> Option<usize> {
        self.cell_of[agent.0][w]
    }

    pub fn epistemic_class(&self, agent: AgentId, w: usize) -> usize {
        self.epistemic[agent.0][w]
    }

    pub fn related(&self, agent: AgentId, v: usize, u: usize) -> bool {
        self.epistemic[agent.0][v] == self.epistemic[agent.0][u]
    }

    /// Classes holding some world indistinguishable from a world of `class`.
    pub fn related_classes(&self, agent: AgentId, class: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&d| {
                self.classes[class]
                    .iter()
                    .any(|&v| self.classes[d].iter().any(|&u| self.related(agent, v, u)))
            })
            .collect()
    }

    pub fn successors(&self, agent: AgentId, w: usize) -> &[usize] {
        &self.intention[agent.0][w]
    }

    pub fn value_o(&self, w: usize) -> f64 {
        self.value_o[w]
    }

    pub fn value_s(&self, w: usize) -> f64 {
        self.value_s[w]
    }

    pub fn is_single_valued(&self) -> bool {
        self.value_o == self.value_s
    }

    pub fn valuation(&self, p: &str) -> Option<&WorldSet> {
        self.valuation.get(p)
    }

    pub fn propositions(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    /// `pi^box_agent[w]`: the `R_box` classes of worlds indistinguishable from `w`.
    pub fn ex_ante(&self, agent: AgentId, w: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.worlds.len())
            .filter(|&v| self.related(agent, w, v))
            .flat_map(|v| self.classes[self.class_of[v]].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `{x} ∪ R^I(x)`.
    pub fn up_set(&self, agent: AgentId, x: usize) -> Vec<usize> {
        let mut out = self.intention[agent.0][x].clone();
        if !out.contains(&x) {
            out.push(x);
            out.sort_unstable();
        }
        out
    }

    pub fn empty_set(&self) -> WorldSet {
        WorldSet::with_capacity(self.worlds.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k1_structure() {
        let k = fixtures::k1();
        assert_eq!(k.num_worlds(), 2);
        assert_eq!(k.classes(), [vec![0, 1]]);
        let a = AgentId(0);
        assert_eq!(k.choice(a, 0), [vec![0], vec![1]]);
        assert!(!k.related(a, 0, 1));
        assert_eq!(k.ex_ante(a, 0), [0, 1]);
        assert_eq!(k.up_set(a, 0), [0, 1]);
        assert_eq!(k.up_set(a, 1), [1]);
        assert!(!k.is_single_valued());
    }

    #[test]
    fn roundtrips_through_its_document() {
        let k = fixtures::k1();
        let again = KripkeModel::from_toml(&k.to_doc().to_toml()).unwrap();
        assert_eq!(again.to_doc(), k.to_doc());
    }

    #[test]
    fn structural_errors() {
        let mut doc = KripkeDoc::from_toml(fixtures::K1_TOML).unwrap();
        doc.choices.clear();
        assert!(matches!(
            KripkeModel::from_doc(&doc),
            Err(KripkeError::MissingChoice { .. })
        ));
        let mut doc = KripkeDoc::from_toml(fixtures::K1_TOML).unwrap();
        doc.value_s.remove("w2");
        assert!(matches!(
            KripkeModel::from_doc(&doc),
            Err(KripkeError::Value(..))
        ));
        let mut doc = KripkeDoc::from_toml(fixtures::K1_TOML).unwrap();
        doc.valuation.insert("p".into(), vec!["w9".into()]);
        assert_eq!(
            KripkeModel::from_doc(&doc).unwrap_err(),
            KripkeError::UnknownWorld("w9".into())
        );
    }
}
