//! Seeded generators for valid models and random formulas.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formula::Formula;
use crate::kripke::doc::{KripkeChoiceDoc, PairsDoc};
use crate::kripke::{KripkeDoc, KripkeModel};
use crate::model::doc::{ChoiceDoc, EpistemicDoc, MomentDoc, TopologyDoc, ValueDoc};
use crate::model::{KiobtModel, ModelDoc, ValueMode};

pub const PROPS: [&str; 3] = ["p", "q", "r"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub seed: u64,
    pub classes: usize,
    pub worlds_per_class: usize,
    pub agents: usize,
    pub mode: ValueMode,
    pub depth: usize,
}

impl GenParams {
    /// Small random shape derived from `seed`: up to three classes of up to
    /// three worlds and up to two agents.
    pub fn for_seed(seed: u64, mode: ValueMode, depth: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        GenParams {
            seed,
            classes: rng.gen_range(1..=3),
            worlds_per_class: rng.gen_range(1..=3),
            agents: rng.gen_range(1..=2),
            mode,
            depth,
        }
    }
}

fn agent_names(n: usize) -> Vec<String> {
    ["a", "b", "c", "d"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .chain((4..n).map(|i| format!("a{i}")))
        .collect()
}

/// Factor sizes per agent whose product fits in `n` worlds.
fn factor_sizes(rng: &mut ChaCha8Rng, agents: usize, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..agents).collect();
    order.shuffle(rng);
    let mut sizes = vec![1; agents];
    let mut budget = n;
    for a in order {
        let k = rng.gen_range(1..=budget.max(1));
        sizes[a] = k;
        budget /= k;
    }
    sizes
}

/// Assigns each world a tuple of cell numbers, using every tuple at least
/// once, so that any selection of one cell per agent meets.
fn tuples(rng: &mut ChaCha8Rng, sizes: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for &k in sizes {
        all = all
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..k).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    while all.len() < n {
        let t = sizes.iter().map(|&k| rng.gen_range(0..k)).collect();
        all.push(t);
    }
    all.shuffle(rng);
    all
}

/// Surjection from `0..n` onto `0..k` (`k <= n`).
fn surject(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..k).chain((k..n).map(|_| rng.gen_range(0..k))).collect();
    labels.shuffle(rng);
    labels
}

/// A random bi-valued Kripke model that satisfies every frame condition by
/// construction. The same parameters always give the same model.
pub fn gen_random_kripke(params: &GenParams) -> KripkeModel {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n_classes = params.classes.max(1);
    let per = params.worlds_per_class.max(1);
    let agents = agent_names(params.agents.max(1));
    let n = n_classes * per;
    let worlds: Vec<String> = (0..n).map(|w| format!("w{w}")).collect();
    let class: Vec<Vec<usize>> = (0..n_classes)
        .map(|c| (c * per..(c + 1) * per).collect())
        .collect();

    // choices: cells[agent][class] = list of cells
    let mut cells: Vec<Vec<Vec<Vec<usize>>>> = vec![Vec::new(); agents.len()];
    for members in &class {
        let sizes = factor_sizes(&mut rng, agents.len(), per);
        let ts = tuples(&mut rng, &sizes, per);
        for (a, &k) in sizes.iter().enumerate() {
            let mut cs = vec![Vec::new(); k];
            for (i, &w) in members.iter().enumerate() {
                cs[ts[i][a]].push(w);
            }
            cells[a].push(cs);
        }
    }

    // classes grouped into ex ante information sets
    let mut order: Vec<usize> = (0..n_classes).collect();
    order.shuffle(&mut rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in order {
        match groups.last_mut() {
            Some(g) if rng.gen_bool(0.5) => g.push(c),
            _ => groups.push(vec![c]),
        }
    }

    let mut epistemic = Vec::new();
    let mut intention = Vec::new();
    for (a, agent) in agents.iter().enumerate() {
        let mut label = vec![(0usize, 0usize); n];
        for (g, group) in groups.iter().enumerate() {
            let k_max = group
                .iter()
                .map(|&c| cells[a][c].len())
                .min()
                .expect("non-empty group");
            let k = rng.gen_range(1..=k_max);
            for &c in group {
                let map = surject(&mut rng, cells[a][c].len(), k);
                for (ci, cell) in cells[a][c].iter().enumerate() {
                    for &w in cell {
                        label[w] = (g, map[ci]);
                    }
                }
            }
        }
        let mut by_label: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (w, &l) in label.iter().enumerate() {
            by_label.entry(l).or_default().push(w);
        }
        let pairs = by_label
            .values()
            .flat_map(|ws| {
                ws.windows(2)
                    .map(|p| [worlds[p[0]].clone(), worlds[p[1]].clone()])
                    .collect::<Vec<_>>()
            })
            .collect();
        epistemic.push(PairsDoc {
            agent: agent.clone(),
            pairs,
        });

        let mut edges = Vec::new();
        for group in &groups {
            let members: Vec<usize> = group
                .iter()
                .flat_map(|&c| class[c].iter().copied())
                .collect();
            let size = rng.gen_range(1..=members.len().min(2));
            let core: Vec<usize> = members.choose_multiple(&mut rng, size).copied().collect();
            for &v in &members {
                for &z in &core {
                    edges.push([worlds[v].clone(), worlds[z].clone()]);
                }
            }
        }
        intention.push(PairsDoc {
            agent: agent.clone(),
            pairs: edges,
        });
    }

    let mut choices = Vec::new();
    for (a, agent) in agents.iter().enumerate() {
        for (c, members) in class.iter().enumerate() {
            choices.push(KripkeChoiceDoc {
                agent: agent.clone(),
                class: worlds[members[0]].clone(),
                cells: cells[a][c]
                    .iter()
                    .map(|cell| cell.iter().map(|&w| worlds[w].clone()).collect())
                    .collect(),
            });
        }
    }

    let mut value_o = BTreeMap::new();
    let mut value_s = BTreeMap::new();
    for w in &worlds {
        let o = f64::from(rng.gen_range(0..4u8));
        let s = match params.mode {
            ValueMode::Single => o,
            ValueMode::Dual => f64::from(rng.gen_range(0..4u8)),
        };
        value_o.insert(w.clone(), o);
        value_s.insert(w.clone(), s);
    }
    let valuation = PROPS
        .iter()
        .map(|p| {
            (
                p.to_string(),
                worlds
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .cloned()
                    .collect(),
            )
        })
        .collect();

    let doc = KripkeDoc {
        agents,
        worlds: worlds.clone(),
        rbox: class
            .iter()
            .map(|m| m.iter().map(|&w| worlds[w].clone()).collect())
            .collect(),
        choices,
        epistemic,
        intention,
        value_o,
        value_s,
        valuation,
    };
    KripkeModel::from_doc(&doc).expect("generated documents are well-formed")
}

/// A random kiobt-model built directly as a tree of depth two or three,
/// with nested choices. Epistemic relations stay within moments and
/// intention topologies are generated from a random dense core.
pub fn gen_random_tree(seed: u64, mode: ValueMode) -> KiobtModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let agents = agent_names(rng.gen_range(1..=2));
    let mut moments = vec![MomentDoc {
        id: "m".into(),
        parent: None,
    }];
    let mut frontier = vec!["m".to_string()];
    let levels = rng.gen_range(2..=3);
    for level in 0..levels {
        let mut next = Vec::new();
        for parent in &frontier {
            let k = if level + 1 == levels {
                rng.gen_range(1..=3)
            } else {
                rng.gen_range(1..=2)
            };
            for i in 0..k {
                let id = format!("{parent}{i}");
                moments.push(MomentDoc {
                    id: id.clone(),
                    parent: Some(parent.clone()),
                });
                next.push(id);
            }
        }
        frontier = next;
    }
    let children = |m: &str| -> Vec<String> {
        moments
            .iter()
            .filter(|x| x.parent.as_deref() == Some(m))
            .map(|x| x.id.clone())
            .collect()
    };
    let leaves_under = |m: &str| -> Vec<String> {
        moments
            .iter()
            .filter(|x| x.id.starts_with(m) && children(&x.id).is_empty())
            .map(|x| x.id.clone())
            .collect()
    };

    let mut choices = Vec::new();
    let mut epistemic: Vec<EpistemicDoc> = agents
        .iter()
        .map(|a| EpistemicDoc {
            agent: a.clone(),
            pairs: Vec::new(),
        })
        .collect();
    let mut topology = Vec::new();
    for m in moments.iter().map(|x| x.id.clone()).collect::<Vec<_>>() {
        let kids = children(&m);
        if kids.is_empty() {
            continue;
        }
        // histories through one child stay together (no choice between undivided histories)
        let sizes = factor_sizes(&mut rng, agents.len(), kids.len());
        let ts = tuples(&mut rng, &sizes, kids.len());
        let hs = leaves_under(&m);
        for (a, agent) in agents.iter().enumerate() {
            let mut cs: Vec<Vec<String>> = vec![Vec::new(); sizes[a]];
            for (i, kid) in kids.iter().enumerate() {
                cs[ts[i][a]].extend(leaves_under(kid));
            }
            for cell in &cs {
                for p in cell.windows(2) {
                    epistemic[a]
                        .pairs
                        .push([format!("{m}:{}", p[0]), format!("{m}:{}", p[1])]);
                }
            }
            choices.push(ChoiceDoc {
                agent: agent.clone(),
                moment: m.clone(),
                cells: cs,
            });

            let slice: Vec<String> = hs.iter().map(|h| format!("{m}:{h}")).collect();
            let size = rng.gen_range(1..=slice.len().min(2));
            let core: Vec<String> = slice.choose_multiple(&mut rng, size).cloned().collect();
            let mut base: Vec<Vec<String>> = slice
                .iter()
                .map(|x| {
                    let mut u = core.clone();
                    if !u.contains(x) {
                        u.push(x.clone());
                    }
                    u.sort();
                    u
                })
                .collect();
            base.push(Vec::new());
            base.push(slice.clone());
            topology.push(TopologyDoc {
                agent: agent.clone(),
                index: slice[0].clone(),
                opens: close_named(base),
            });
        }
    }

    let leaves: Vec<String> = moments
        .iter()
        .filter(|x| children(&x.id).is_empty())
        .map(|x| x.id.clone())
        .collect();
    let values = leaves
        .iter()
        .map(|h| {
            let o = f64::from(rng.gen_range(0..4u8));
            let v = match mode {
                ValueMode::Single => ValueDoc::Single(o),
                ValueMode::Dual => ValueDoc::Dual([o, f64::from(rng.gen_range(0..4u8))]),
            };
            (h.clone(), v)
        })
        .collect();
    let all_indices: Vec<String> = moments
        .iter()
        .flat_map(|m| {
            leaves_under(&m.id)
                .into_iter()
                .map(move |h| format!("{}:{h}", m.id))
        })
        .collect();
    let valuation = PROPS
        .iter()
        .map(|p| {
            (
                p.to_string(),
                all_indices
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .cloned()
                    .collect(),
            )
        })
        .collect();

    let doc = ModelDoc {
        mode,
        agents,
        moments,
        choices,
        epistemic,
        topology,
        values,
        valuation,
    };
    KiobtModel::from_doc(&doc).expect("generated trees are well-formed")
}

fn close_named(base: Vec<Vec<String>>) -> Vec<Vec<String>> {
    let mut opens: std::collections::BTreeSet<Vec<String>> = base.into_iter().collect();
    loop {
        let list: Vec<Vec<String>> = opens.iter().cloned().collect();
        let before = opens.len();
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                let mut u: Vec<String> = x.iter().chain(y).cloned().collect();
                u.sort();
                u.dedup();
                let n: Vec<String> = x.iter().filter(|s| y.contains(s)).cloned().collect();
                opens.insert(u);
                opens.insert(n);
            }
        }
        if opens.len() == before {
            return opens.into_iter().collect();
        }
    }
}

/// A uniformly shaped random formula of depth at most `depth`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    atoms: &[&str],
    agents: &[&str],
) -> Formula {
    if depth == 0 || rng.gen_bool(0.15) {
        return Formula::atom(*atoms.choose(rng).expect("some atom"));
    }
    let agent = agents.choose(rng).expect("some agent").to_string();
    let sub = |rng: &mut R| random_formula(rng, depth - 1, atoms, agents);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => {
            let l = sub(rng);
            Formula::and(l, sub(rng))
        }
        2 => Formula::settled(sub(rng)),
        3 => Formula::stit(agent, sub(rng)),
        4 => Formula::know(agent, sub(rng)),
        5 => Formula::intend(agent, sub(rng)),
        6 => Formula::ought(agent, sub(rng)),
        _ => Formula::subj_ought(agent, sub(rng)),
    }
}

fn literal(rng: &mut impl Rng, atoms: &[&str]) -> Formula {
    let p = Formula::atom(*atoms.choose(rng).expect("some atom"));
    if rng.gen_bool(0.5) {
        Formula::not(p)
    } else {
        p
    }
}

/// Metavariable fillers by stratum: 0 is propositional, 1 adds one modal
/// layer, 2 adds two.
pub fn pool_formula(
    rng: &mut impl Rng,
    stratum: usize,
    atoms: &[&str],
    agents: &[&str],
) -> Formula {
    if stratum == 0 {
        let l = literal(rng, atoms);
        return match rng.gen_range(0..3) {
            0 => l,
            1 => Formula::and(l, literal(rng, atoms)),
            _ => Formula::or(l, literal(rng, atoms)),
        };
    }
    let inner = pool_formula(rng, stratum - 1, atoms, agents);
    let agent = agents.choose(rng).expect("some agent").to_string();
    let modal = match rng.gen_range(0..7) {
        0 => Formula::settled(inner),
        1 => Formula::stit(agent, inner),
        2 => Formula::know(agent, inner),
        3 => Formula::intend(agent, inner),
        4 => Formula::ought(agent, inner),
        5 => Formula::subj_ought(agent, inner),
        _ => Formula::possible(inner),
    };
    match rng.gen_range(0..4) {
        0 => Formula::not(modal),
        1 => Formula::and(modal, literal(rng, atoms)),
        2 => Formula::or(modal, literal(rng, atoms)),
        _ => modal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::validate_kripke;
    use crate::model::validate_frame;

    #[test]
    fn generated_kripke_models_are_valid() {
        for seed in 0..200 {
            for mode in [ValueMode::Single, ValueMode::Dual] {
                let k = gen_random_kripke(&GenParams::for_seed(seed, mode, 2));
                let r = validate_kripke(&k);
                assert!(r.is_valid(), "seed {seed}: {r}");
            }
        }
    }

    #[test]
    fn fixed_example_shape() {
        let p = GenParams {
            seed: 1,
            classes: 2,
            worlds_per_class: 2,
            agents: 1,
            mode: ValueMode::Dual,
            depth: 2,
        };
        let k = gen_random_kripke(&p);
        assert_eq!(k.num_worlds(), 4);
        assert!(validate_kripke(&k).is_valid());
        let one = GenParams {
            worlds_per_class: 1,
            classes: 3,
            agents: 2,
            ..p
        };
        assert!(validate_kripke(&gen_random_kripke(&one)).is_valid());
    }

    #[test]
    fn deterministic() {
        let p = GenParams::for_seed(7, ValueMode::Dual, 2);
        assert_eq!(
            gen_random_kripke(&p).to_doc(),
            gen_random_kripke(&p).to_doc()
        );
        assert_eq!(
            gen_random_tree(7, ValueMode::Single).to_doc(),
            gen_random_tree(7, ValueMode::Single).to_doc()
        );
    }

    #[test]
    fn generated_trees_are_valid() {
        for seed in 0..200 {
            let m = gen_random_tree(seed, ValueMode::Dual);
            let r = validate_frame(&m);
            assert!(r.is_valid(), "seed {seed}: {r}");
        }
    }

    #[test]
    fn formula_depth_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let f = random_formula(&mut rng, 3, &PROPS, &["a", "b"]);
            assert!(f.depth() <= 3);
        }
    }
}
