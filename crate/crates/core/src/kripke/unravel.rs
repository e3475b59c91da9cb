use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::{KripkeEvaluator, KripkeModel};
use crate::formula::Formula;
use crate::model::doc::{ChoiceDoc, EpistemicDoc, MomentDoc, TopologyDoc, ValueDoc};
use crate::model::{AgentId, IndexId, KiobtModel, ModelDoc, ModelError, ValueMode};
use crate::semantics::{EvalError, Evaluator};

/// A kiobt-model built from a Kripke model, with the index standing in for
/// each world.
#[derive(Debug, Clone)]
pub struct Unraveled {
    pub model: KiobtModel,
    /// `embedding[w]` is the index `<class moment of w, h_w>`.
    pub embedding: Vec<IndexId>,
}

/// Builds a three-layer tree: a root, one moment per `R_box` class and one
/// leaf per world. The history through leaf `w` is named `w`.
pub fn unravel(k: &KripkeModel) -> Result<Unraveled, ModelError> {
    let mut used: HashSet<String> = (0..k.num_worlds())
        .map(|w| k.world_name(w).to_string())
        .collect();
    let mut fresh = |base: String| {
        let mut name = base;
        while used.contains(&name) {
            name.push('_');
        }
        used.insert(name.clone());
        name
    };
    let root = fresh("root".to_string());
    let class_moment: Vec<String> = k
        .classes()
        .iter()
        .map(|members| fresh(format!("box_{}", k.world_name(members[0]))))
        .collect();

    let world = |w: usize| k.world_name(w).to_string();
    let all_worlds: Vec<usize> = (0..k.num_worlds()).collect();
    let mid = |w: usize| format!("{}:{}", class_moment[k.class_of(w)], world(w));
    let top = |w: usize| format!("{root}:{}", world(w));
    let leaf = |w: usize| format!("{0}:{0}", world(w));

    let mut moments = vec![MomentDoc {
        id: root.clone(),
        parent: None,
    }];
    for (c, members) in k.classes().iter().enumerate() {
        moments.push(MomentDoc {
            id: class_moment[c].clone(),
            parent: Some(root.clone()),
        });
        for &w in members {
            moments.push(MomentDoc {
                id: world(w),
                parent: Some(class_moment[c].clone()),
            });
        }
    }

    let mut choices = Vec::new();
    let mut epistemic = Vec::new();
    let mut topology = Vec::new();
    for (a, agent) in k.agents().iter().enumerate() {
        let a_id = AgentId(a);
        choices.push(ChoiceDoc {
            agent: agent.clone(),
            moment: root.clone(),
            cells: vec![all_worlds.iter().map(|&w| world(w)).collect()],
        });
        for (c, _) in k.classes().iter().enumerate() {
            choices.push(ChoiceDoc {
                agent: agent.clone(),
                moment: class_moment[c].clone(),
                cells: k
                    .choice(a_id, c)
                    .iter()
                    .map(|cell| cell.iter().map(|&w| world(w)).collect())
                    .collect(),
            });
        }

        let mut pairs: Vec<[String; 2]> = all_worlds
            .windows(2)
            .map(|p| [top(p[0]), top(p[1])])
            .collect();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &w in &all_worlds {
            groups
                .entry(k.epistemic_class(a_id, w))
                .or_default()
                .push(w);
        }
        for members in groups.values() {
            for p in members.windows(2) {
                pairs.push([mid(p[0]), mid(p[1])]);
                pairs.push([leaf(p[0]), leaf(p[1])]);
            }
        }
        epistemic.push(EpistemicDoc {
            agent: agent.clone(),
            pairs,
        });

        topology.push(TopologyDoc {
            agent: agent.clone(),
            index: top(0),
            opens: vec![vec![], all_worlds.iter().map(|&w| top(w)).collect()],
        });
        for members in groups.values() {
            topology.push(TopologyDoc {
                agent: agent.clone(),
                index: leaf(members[0]),
                opens: vec![vec![], members.iter().map(|&w| leaf(w)).collect()],
            });
        }
        let mut seen = BTreeSet::new();
        for &w in &all_worlds {
            let info = k.ex_ante(a_id, w);
            if !seen.insert(info.clone()) {
                continue;
            }
            let opens = close_opens(&info, info.iter().map(|&x| k.up_set(a_id, x)).collect());
            topology.push(TopologyDoc {
                agent: agent.clone(),
                index: mid(info[0]),
                opens: opens
                    .into_iter()
                    .map(|u| u.into_iter().map(mid).collect())
                    .collect(),
            });
        }
    }

    let single = k.is_single_valued();
    let values = all_worlds
        .iter()
        .map(|&w| {
            let v = if single {
                ValueDoc::Single(k.value_o(w))
            } else {
                ValueDoc::Dual([k.value_o(w), k.value_s(w)])
            };
            (world(w), v)
        })
        .collect();
    let valuation = k
        .propositions()
        .map(|p| {
            (
                p.to_string(),
                k.valuation(p).expect("listed").ones().map(mid).collect(),
            )
        })
        .collect();

    let doc = ModelDoc {
        mode: if single {
            ValueMode::Single
        } else {
            ValueMode::Dual
        },
        agents: k.agents().to_vec(),
        moments,
        choices,
        epistemic,
        topology,
        values,
        valuation,
    };
    let model = KiobtModel::from_doc(&doc)?;
    let embedding = all_worlds
        .iter()
        .map(|&w| model.parse_index(&mid(w)))
        .collect::<Result<_, _>>()?;
    Ok(Unraveled { model, embedding })
}

/// The topology generated by `base` on `info`: the empty set, `info`, and
/// every union and intersection of base sets.
fn close_opens(info: &[usize], base: Vec<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let mut opens: BTreeSet<Vec<usize>> = base.into_iter().collect();
    opens.insert(Vec::new());
    opens.insert(info.to_vec());
    loop {
        let list: Vec<&Vec<usize>> = opens.iter().collect();
        let mut added = Vec::new();
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                let union: BTreeSet<usize> = x.iter().chain(y.iter()).copied().collect();
                let inter: Vec<usize> = x.iter().copied().filter(|w| y.contains(w)).collect();
                for s in [union.into_iter().collect::<Vec<_>>(), inter] {
                    if !opens.contains(&s) {
                        added.push(s);
                    }
                }
            }
        }
        if added.is_empty() {
            return opens;
        }
        opens.extend(added);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub world: String,
    pub formula: String,
    pub kripke: bool,
    pub tree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    /// Number of (world, formula) pairs compared.
    pub checked: usize,
    pub divergences: Vec<Divergence>,
}

/// Compares truth at each world with truth at its embedded index.
pub fn correspondence_check(
    k: &KripkeModel,
    formulas: &[Formula],
) -> Result<Correspondence, EvalError> {
    let unraveled = unravel(k).expect("unraveling a loaded Kripke model yields a well-formed tree");
    let tree = Evaluator::new(&unraveled.model);
    let mut kev = KripkeEvaluator::new(k);
    let mut report = Correspondence::default();
    for f in formulas {
        let on_worlds = kev.extension(f)?;
        let on_tree = tree.set(f)?;
        for (w, i) in unraveled.embedding.iter().enumerate() {
            report.checked += 1;
            let (kv, tv) = (on_worlds.contains(w), on_tree.contains(i.0));
            if kv != tv {
                report.divergences.push(Divergence {
                    world: k.world_name(w).to_string(),
                    formula: f.to_string(),
                    kripke: kv,
                    tree: tv,
                });
            }
        }
    }
    Ok(report)
}
