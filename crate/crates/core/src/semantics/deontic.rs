//! States, epistemic clusters and the two dominance orderings over an
//! agent's choice cells at a moment.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::validate::selections;
use crate::model::{AgentId, HistoryId, IndexSet, KiobtModel, MomentId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("history `{history}` does not pass through moment `{moment}`")]
    NotInMoment { moment: String, history: String },
}

/// `State^m_agent`: the non-empty intersections of one cell per other
/// agent. A lone agent faces the single state `H_m`.
pub fn states_for(model: &KiobtModel, agent: AgentId, m: MomentId) -> Vec<Vec<HistoryId>> {
    let others: Vec<AgentId> = (0..model.agents().len())
        .map(AgentId)
        .filter(|&b| b != agent)
        .collect();
    let counts: Vec<usize> = others
        .iter()
        .map(|&b| model.choice(b, m).cells.len())
        .collect();
    let mut out: Vec<Vec<HistoryId>> = Vec::new();
    for sel in selections(&counts) {
        let mut s: BTreeSet<HistoryId> = model.histories_through(m).iter().copied().collect();
        for (&b, &c) in others.iter().zip(&sel) {
            let cell: BTreeSet<HistoryId> = model.choice(b, m).cells[c].iter().copied().collect();
            s = s.intersection(&cell).copied().collect();
        }
        let s: Vec<HistoryId> = s.into_iter().collect();
        if !s.is_empty() && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// `[L]^m_agent` for a set `cell` of histories through `from`: the
/// histories `h` through `to` such that `<to, h>` is indistinguishable from
/// `<from, h*>` for some `h*` in `cell`.
pub fn epistemic_cluster(
    model: &KiobtModel,
    agent: AgentId,
    cell: &[HistoryId],
    from: MomentId,
    to: MomentId,
) -> Result<Vec<HistoryId>, ClusterError> {
    let mut classes = BTreeSet::new();
    for &h in cell {
        let i = model
            .index_id(from, h)
            .ok_or_else(|| ClusterError::NotInMoment {
                moment: model.moment_name(from).to_string(),
                history: model.history_name(h).to_string(),
            })?;
        classes.insert(model.epistemic_class(agent, i));
    }
    Ok(model
        .histories_through(to)
        .iter()
        .copied()
        .filter(|&h| {
            let i = model.index_id(to, h).expect("h passes through `to`");
            classes.contains(&model.epistemic_class(agent, i))
        })
        .collect())
}

/// Moments `m'` with some index of `m` indistinguishable from some index
/// of `m'`. Always contains `m`.
pub fn related_moments(model: &KiobtModel, agent: AgentId, m: MomentId) -> Vec<MomentId> {
    let here: BTreeSet<usize> = model
        .slice(m)
        .iter()
        .map(|&i| model.epistemic_class(agent, i))
        .collect();
    (0..model.moments().len())
        .map(MomentId)
        .filter(|&o| {
            model
                .slice(o)
                .iter()
                .any(|&i| here.contains(&model.epistemic_class(agent, i)))
        })
        .collect()
}

/// `X <= Y`: every value in `X` is at most every value in `Y`. Vacuously
/// true when either side is empty.
pub fn set_leq(value: impl Fn(HistoryId) -> f64, x: &[HistoryId], y: &[HistoryId]) -> bool {
    let max_x = x
        .iter()
        .map(|&h| value(h))
        .fold(f64::NEG_INFINITY, f64::max);
    let min_y = y.iter().map(|&h| value(h)).fold(f64::INFINITY, f64::min);
    x.is_empty() || y.is_empty() || max_x <= min_y
}

fn intersect(a: &[HistoryId], b: &[HistoryId]) -> Vec<HistoryId> {
    a.iter().copied().filter(|h| b.contains(h)).collect()
}

/// Everything the deontic clauses need about one agent at one moment.
#[derive(Debug, Clone)]
pub struct DeonticFrame {
    pub agent: AgentId,
    pub moment: MomentId,
    pub cells: Vec<Vec<HistoryId>>,
    pub states: Vec<Vec<HistoryId>>,
    pub related: Vec<MomentId>,
    /// `objective[i][j]` iff cell `i` ⪯ cell `j`.
    pub objective: Vec<Vec<bool>>,
    /// `subjective[i][j]` iff cell `i` ⪯_s cell `j`.
    pub subjective: Vec<Vec<bool>>,
    /// Indices `<m, h>` for `h` in each cell.
    pub footprint: Vec<IndexSet>,
    /// Indices `<m', h'>` for every related `m'` and `h'` in the cell's
    /// epistemic cluster at `m'`.
    pub cluster_footprint: Vec<IndexSet>,
}

impl DeonticFrame {
    pub fn new(model: &KiobtModel, agent: AgentId, m: MomentId) -> Self {
        let cells = model.choice(agent, m).cells.clone();
        let states = states_for(model, agent, m);
        let related = related_moments(model, agent, m);
        let n = cells.len();

        let vo = |h: HistoryId| model.value_obj(h);
        let vs = |h: HistoryId| model.value_subj(h);

        let mut objective = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                objective[i][j] = states
                    .iter()
                    .all(|s| set_leq(vo, &intersect(&cells[i], s), &intersect(&cells[j], s)));
            }
        }

        // clusters[c][r]: cluster of cell c at related moment r
        let clusters: Vec<Vec<Vec<HistoryId>>> = cells
            .iter()
            .map(|cell| {
                related
                    .iter()
                    .map(|&o| {
                        epistemic_cluster(model, agent, cell, m, o).expect("cells lie in H_m")
                    })
                    .collect()
            })
            .collect();
        let related_states: Vec<Vec<Vec<HistoryId>>> = related
            .iter()
            .map(|&o| states_for(model, agent, o))
            .collect();
        let mut subjective = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                subjective[i][j] = related.iter().enumerate().all(|(r, _)| {
                    related_states[r].iter().all(|s| {
                        set_leq(
                            vs,
                            &intersect(&clusters[i][r], s),
                            &intersect(&clusters[j][r], s),
                        )
                    })
                });
            }
        }

        let footprint = cells
            .iter()
            .map(|cell| {
                let mut set = model.empty_set();
                for &h in cell {
                    set.insert(model.index_id(m, h).expect("cells lie in H_m").0);
                }
                set
            })
            .collect();
        let cluster_footprint = clusters
            .iter()
            .map(|per_related| {
                let mut set = model.empty_set();
                for (r, hs) in per_related.iter().enumerate() {
                    for &h in hs {
                        set.insert(
                            model
                                .index_id(related[r], h)
                                .expect("cluster lies in H_m'")
                                .0,
                        );
                    }
                }
                set
            })
            .collect();

        DeonticFrame {
            agent,
            moment: m,
            cells,
            states,
            related,
            objective,
            subjective,
            footprint,
            cluster_footprint,
        }
    }

    pub fn strictly_below(&self, i: usize, j: usize) -> bool {
        self.objective[i][j] && !self.objective[j][i]
    }

    pub fn strictly_below_subj(&self, i: usize, j: usize) -> bool {
        self.subjective[i][j] && !self.subjective[j][i]
    }

    /// Cells not strictly dominated under ⪯.
    pub fn optimal(&self) -> Vec<usize> {
        let n = self.cells.len();
        (0..n)
            .filter(|&i| !(0..n).any(|j| self.strictly_below(i, j)))
            .collect()
    }

    /// Cells not strictly dominated under ⪯_s.
    pub fn soptimal(&self) -> Vec<usize> {
        let n = self.cells.len();
        (0..n)
            .filter(|&i| !(0..n).any(|j| self.strictly_below_subj(i, j)))
            .collect()
    }
}

/// `Optimal^m_agent` as lists of histories.
pub fn optimal(model: &KiobtModel, agent: AgentId, m: MomentId) -> Vec<Vec<HistoryId>> {
    let f = DeonticFrame::new(model, agent, m);
    f.optimal()
        .into_iter()
        .map(|i| f.cells[i].clone())
        .collect()
}

/// `SOptimal^m_agent` as lists of histories.
pub fn soptimal(model: &KiobtModel, agent: AgentId, m: MomentId) -> Vec<Vec<HistoryId>> {
    let f = DeonticFrame::new(model, agent, m);
    f.soptimal()
        .into_iter()
        .map(|i| f.cells[i].clone())
        .collect()
}
