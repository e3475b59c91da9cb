//! A deliberately naive evaluator: one recursive call per subformula and
//! index, read directly off the truth clauses. Slow, and meant to be.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::formula::Formula;
use crate::model::{AgentId, HistoryId, IndexId, KiobtModel, MomentId};

fn agent(model: &KiobtModel, name: &str) -> AgentId {
    model
        .agent_id(name)
        .unwrap_or_else(|_| panic!("unknown agent `{name}`"))
}

fn at(model: &KiobtModel, m: MomentId, h: HistoryId) -> IndexId {
    model.index_id(m, h).expect("history passes through moment")
}

/// Truth of `f` at `i`. Panics on agents the model does not declare.
pub fn naive_eval(model: &KiobtModel, i: IndexId, f: &Formula) -> bool {
    Oracle::new(model).eval(i, f)
}

/// The naive evaluator with a memo of answered (index, formula) queries.
pub struct Oracle<'m> {
    model: &'m KiobtModel,
    memo: RefCell<HashMap<(IndexId, Formula), bool>>,
}

impl<'m> Oracle<'m> {
    pub fn new(model: &'m KiobtModel) -> Self {
        Oracle {
            model,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn eval(&self, i: IndexId, f: &Formula) -> bool {
        if let Some(&b) = self.memo.borrow().get(&(i, f.clone())) {
            return b;
        }
        let b = self.clause(i, f);
        self.memo.borrow_mut().insert((i, f.clone()), b);
        b
    }

    fn clause(&self, i: IndexId, f: &Formula) -> bool {
        let model = self.model;
        let idx = model.index(i);
        let (m, h) = (idx.moment, idx.history);
        match f {
            Formula::Atom(p) => model.valuation(p).is_some_and(|s| s.contains(i.0)),
            Formula::Not(g) => !self.eval(i, g),
            Formula::And(l, r) => self.eval(i, l) && self.eval(i, r),
            Formula::Settled(g) => model
                .histories_through(m)
                .iter()
                .all(|&h2| self.eval(at(model, m, h2), g)),
            Formula::Stit(a, g) => {
                let cells = &model.choice(agent(model, a), m).cells;
                let cell = cells
                    .iter()
                    .find(|c| c.contains(&h))
                    .expect("choice covers H_m");
                cell.iter().all(|&h2| self.eval(at(model, m, h2), g))
            }
            Formula::Know(a, g) => {
                let a = agent(model, a);
                (0..model.num_indices())
                    .map(IndexId)
                    .filter(|&j| model.related(a, i, j))
                    .all(|j| self.eval(j, g))
            }
            Formula::Intend(a, g) => {
                let a = agent(model, a);
                let Some(top) = model.topology_for(a, i) else {
                    return false;
                };
                top.opens
                    .iter()
                    .filter(|u| u.count_ones(..) > 0)
                    .any(|u| u.ones().all(|j| self.eval(IndexId(j), g)))
            }
            Formula::Ought(a, g) => {
                let a = agent(model, a);
                let cells = &model.choice(a, m).cells;
                best(cells.len(), |x, y| {
                    dominated(model, a, m, &cells[x], &cells[y], false)
                })
                .into_iter()
                .all(|c| cells[c].iter().all(|&h2| self.eval(at(model, m, h2), g)))
            }
            Formula::SubjOught(a, g) => {
                let a = agent(model, a);
                let cells = &model.choice(a, m).cells;
                best(cells.len(), |x, y| {
                    dominated(model, a, m, &cells[x], &cells[y], true)
                })
                .into_iter()
                .all(|c| {
                    (0..model.num_indices())
                        .map(IndexId)
                        .filter(|&j| in_cluster(model, a, m, &cells[c], j))
                        .all(|j| self.eval(j, g))
                })
            }
        }
    }
}

/// Cells `c` with no `d` such that `c ⪯ d` and not `d ⪯ c`.
fn best(n: usize, le: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    (0..n)
        .filter(|&c| !(0..n).any(|d| le(c, d) && !le(d, c)))
        .collect()
}

/// Whether index `j` is indistinguishable from `<m, h*>` for some `h*` in `cell`.
fn in_cluster(model: &KiobtModel, a: AgentId, m: MomentId, cell: &[HistoryId], j: IndexId) -> bool {
    cell.iter().any(|&h| model.related(a, at(model, m, h), j))
}

/// States at `m` for `a`: intersections of one cell per other agent.
fn states(model: &KiobtModel, a: AgentId, m: MomentId) -> Vec<Vec<HistoryId>> {
    let mut out = vec![model.histories_through(m).to_vec()];
    for b in (0..model.agents().len()).map(AgentId).filter(|&b| b != a) {
        let mut next = Vec::new();
        for s in &out {
            for cell in &model.choice(b, m).cells {
                let meet: Vec<HistoryId> = s.iter().copied().filter(|h| cell.contains(h)).collect();
                if !meet.is_empty() {
                    next.push(meet);
                }
            }
        }
        out = next;
    }
    out
}

fn all_leq(value: &dyn Fn(HistoryId) -> f64, x: &[HistoryId], y: &[HistoryId]) -> bool {
    x.iter().all(|&u| y.iter().all(|&v| value(u) <= value(v)))
}

/// `x ⪯ y` (objective) or `x ⪯_s y` (subjective) for cells at `m`.
fn dominated(
    model: &KiobtModel,
    a: AgentId,
    m: MomentId,
    x: &[HistoryId],
    y: &[HistoryId],
    subjective: bool,
) -> bool {
    if !subjective {
        let vo = |h: HistoryId| model.value_obj(h);
        return states(model, a, m).iter().all(|s| {
            let xs: Vec<HistoryId> = x.iter().copied().filter(|h| s.contains(h)).collect();
            let ys: Vec<HistoryId> = y.iter().copied().filter(|h| s.contains(h)).collect();
            all_leq(&vo, &xs, &ys)
        });
    }
    let vs = |h: HistoryId| model.value_subj(h);
    (0..model.moments().len()).map(MomentId).all(|m2| {
        let linked = model.histories_through(m).iter().any(|&h| {
            model
                .histories_through(m2)
                .iter()
                .any(|&h2| model.related(a, at(model, m, h), at(model, m2, h2)))
        });
        if !linked {
            return true;
        }
        let cluster = |cell: &[HistoryId]| -> Vec<HistoryId> {
            model
                .histories_through(m2)
                .iter()
                .copied()
                .filter(|&h2| in_cluster(model, a, m, cell, at(model, m2, h2)))
                .collect()
        };
        let (cx, cy) = (cluster(x), cluster(y));
        states(model, a, m2).iter().all(|s| {
            let xs: Vec<HistoryId> = cx.iter().copied().filter(|h| s.contains(h)).collect();
            let ys: Vec<HistoryId> = cy.iter().copied().filter(|h| s.contains(h)).collect();
            all_leq(&vs, &xs, &ys)
        })
    })
}
