use std::collections::HashMap;

use super::{KripkeModel, WorldSet};
use crate::formula::Formula;
use crate::model::AgentId;
use crate::semantics::EvalError;

/// `X <= Y` over worlds: vacuous when a side is empty.
fn leq(value: &dyn Fn(usize) -> f64, x: &[usize], y: &[usize]) -> bool {
    x.iter().all(|&a| y.iter().all(|&b| value(a) <= value(b)))
}

fn meet(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().copied().filter(|w| y.contains(w)).collect()
}

/// Dominance data for one agent at one `R_box` class.
struct ClassOrders {
    /// Cells as world lists.
    cells: Vec<Vec<usize>>,
    objective: Vec<Vec<bool>>,
    subjective: Vec<Vec<bool>>,
    /// Union of each cell's epistemic clusters over related classes.
    clusters: Vec<Vec<usize>>,
}

fn states(k: &KripkeModel, agent: AgentId, class: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![k.classes()[class].clone()];
    for b in (0..k.agents().len()).map(AgentId).filter(|&b| b != agent) {
        out = out
            .iter()
            .flat_map(|s| k.choice(b, class).iter().map(move |cell| meet(s, cell)))
            .filter(|s| !s.is_empty())
            .collect();
        out.sort();
        out.dedup();
    }
    out
}

fn cluster(k: &KripkeModel, agent: AgentId, cell: &[usize], class: usize) -> Vec<usize> {
    k.classes()[class]
        .iter()
        .copied()
        .filter(|&u| cell.iter().any(|&o| k.related(agent, o, u)))
        .collect()
}

impl ClassOrders {
    fn new(k: &KripkeModel, agent: AgentId, class: usize) -> Self {
        let cells = k.choice(agent, class).to_vec();
        let n = cells.len();
        let vo = |w: usize| k.value_o(w);
        let vs = |w: usize| k.value_s(w);
        let here = states(k, agent, class);
        let objective = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        here.iter()
                            .all(|s| leq(&vo, &meet(&cells[i], s), &meet(&cells[j], s)))
                    })
                    .collect()
            })
            .collect();
        let related = k.related_classes(agent, class);
        let per_related: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = related
            .iter()
            .map(|&d| {
                (
                    cells.iter().map(|c| cluster(k, agent, c, d)).collect(),
                    states(k, agent, d),
                )
            })
            .collect();
        let subjective = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        per_related.iter().all(|(cl, st)| {
                            st.iter()
                                .all(|s| leq(&vs, &meet(&cl[i], s), &meet(&cl[j], s)))
                        })
                    })
                    .collect()
            })
            .collect();
        let clusters = (0..n)
            .map(|i| {
                let mut all: Vec<usize> = per_related
                    .iter()
                    .flat_map(|(cl, _)| cl[i].clone())
                    .collect();
                all.sort_unstable();
                all
            })
            .collect();
        ClassOrders {
            cells,
            objective,
            subjective,
            clusters,
        }
    }

    /// The dominated-action clause: every action failing `φ` is strictly
    /// beaten by an action all of whose weak improvements satisfy `φ`.
    fn ought(&self, ext: &WorldSet, subjective: bool) -> bool {
        let (sets, le) = if subjective {
            (&self.clusters, &self.subjective)
        } else {
            (&self.cells, &self.objective)
        };
        let inside = |s: &Vec<usize>| s.iter().all(|&w| ext.contains(w));
        let n = sets.len();
        (0..n).filter(|&l| !inside(&sets[l])).all(|l| {
            (0..n).any(|l1| {
                le[l][l1]
                    && !le[l1][l]
                    && (0..n)
                        .filter(|&l2| l2 == l1 || le[l1][l2])
                        .all(|l2| inside(&sets[l2]))
            })
        })
    }
}

/// Extensions over the worlds of a Kripke model, memoized per formula.
pub struct KripkeEvaluator<'k> {
    model: &'k KripkeModel,
    orders: Vec<Vec<ClassOrders>>,
    cache: HashMap<Formula, WorldSet>,
}

impl<'k> KripkeEvaluator<'k> {
    pub fn new(model: &'k KripkeModel) -> Self {
        let orders = (0..model.agents().len())
            .map(|a| {
                (0..model.classes().len())
                    .map(|c| ClassOrders::new(model, AgentId(a), c))
                    .collect()
            })
            .collect();
        KripkeEvaluator {
            model,
            orders,
            cache: HashMap::new(),
        }
    }

    pub fn eval(&mut self, w: usize, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.extension(f)?.contains(w))
    }

    pub fn extension(&mut self, f: &Formula) -> Result<WorldSet, EvalError> {
        for a in f.agents() {
            if self.model.agent_id(a).is_none() {
                return Err(EvalError::UnknownAgent(a.to_string()));
            }
        }
        self.fill(f);
        Ok(self.cache[f].clone())
    }

    fn fill(&mut self, f: &Formula) {
        if self.cache.contains_key(f) {
            return;
        }
        for c in f.children() {
            self.fill(c);
        }
        let s = self.compute(f);
        self.cache.insert(f.clone(), s);
    }

    fn compute(&self, f: &Formula) -> WorldSet {
        let k = self.model;
        let n = k.num_worlds();
        let get = |g: &Formula| &self.cache[g];
        let agent = |a: &str| k.agent_id(a).expect("agents checked up front");
        let all = |ws: &[usize], ext: &WorldSet| ws.iter().all(|&w| ext.contains(w));
        let mut out = k.empty_set();
        match f {
            Formula::Atom(p) => {
                if let Some(s) = k.valuation(p) {
                    out = s.clone();
                }
            }
            Formula::Not(g) => {
                out = get(g).clone();
                out.toggle_range(..);
            }
            Formula::And(l, r) => {
                out = get(l).clone();
                out.intersect_with(get(r));
            }
            Formula::Settled(g) => {
                let ext = get(g);
                for w in 0..n {
                    out.set(w, all(&k.classes()[k.class_of(w)], ext));
                }
            }
            Formula::Stit(a, g) => {
                let (a, ext) = (agent(a), get(g));
                for w in 0..n {
                    let cell = k.cell_of(a, w).map(|c| &k.choice(a, k.class_of(w))[c]);
                    out.set(w, cell.is_some_and(|c| all(c, ext)));
                }
            }
            Formula::Know(a, g) => {
                let (a, ext) = (agent(a), get(g));
                for w in 0..n {
                    out.set(
                        w,
                        (0..n)
                            .filter(|&v| k.related(a, w, v))
                            .all(|v| ext.contains(v)),
                    );
                }
            }
            Formula::Intend(a, g) => {
                let (a, ext) = (agent(a), get(g));
                for w in 0..n {
                    out.set(
                        w,
                        k.ex_ante(a, w)
                            .into_iter()
                            .any(|x| all(&k.up_set(a, x), ext)),
                    );
                }
            }
            Formula::Ought(a, g) | Formula::SubjOught(a, g) => {
                let subjective = matches!(f, Formula::SubjOught(..));
                let (a, ext) = (agent(a), get(g));
                for w in 0..n {
                    out.set(w, self.orders[a.0][k.class_of(w)].ought(ext, subjective));
                }
            }
        }
        out
    }
}

pub fn eval_kripke(k: &KripkeModel, w: usize, f: &Formula) -> Result<bool, EvalError> {
    KripkeEvaluator::new(k).eval(w, f)
}

pub fn extension_kripke(k: &KripkeModel, f: &Formula) -> Result<WorldSet, EvalError> {
    KripkeEvaluator::new(k).extension(f)
}
