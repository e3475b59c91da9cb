use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{AgentId, HistoryId, IndexId, IndexSet, KiobtModel, MomentId};

/// Frame conditions checked by the two validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Choice cells must partition `H_m`.
    Partition,
    /// No choice between undivided histories.
    NC,
    /// Independence of agency.
    IA,
    /// Own action condition.
    OAC,
    /// Uniformity of historical possibility.
    UnifH,
    /// Intention topologies: contain the empty set and the information
    /// set, stay inside it, and are closed under union and intersection.
    Topology,
    /// Consistency of intention.
    CI,
    /// Knowledge of intention: one topology per ex ante information set.
    KI,
    /// `R_box` must partition the worlds.
    BoxClasses,
    IAK,
    OACK,
    UnifHK,
    IntentionSerial,
    IntentionTransitive,
    IntentionEuclidean,
    /// `R^I` must stay inside the ex ante information set.
    IntentionInclusion,
    DenK,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Partition => "Partition",
            Condition::NC => "NC",
            Condition::IA => "IA",
            Condition::OAC => "OAC",
            Condition::UnifH => "Unif-H",
            Condition::Topology => "Topology",
            Condition::CI => "CI",
            Condition::KI => "KI",
            Condition::BoxClasses => "Box-classes",
            Condition::IAK => "IA_K",
            Condition::OACK => "OAC_K",
            Condition::UnifHK => "Unif-H_K",
            Condition::IntentionSerial => "Serial_I",
            Condition::IntentionTransitive => "Transitive_I",
            Condition::IntentionEuclidean => "Euclidean_I",
            Condition::IntentionInclusion => "Inclusion_I",
            Condition::DenK => "Den_K",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agent: Option<String>,
    /// Moments, histories, indices, worlds or sets involved, rendered by name.
    pub witness: Vec<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.condition)?;
        if let Some(a) = &self.agent {
            write!(f, " agent {a}:")?;
        }
        write!(
            f,
            " {} (witness: {})",
            self.message,
            self.witness.join(", ")
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn conditions(&self) -> BTreeSet<Condition> {
        self.violations.iter().map(|v| v.condition).collect()
    }

    pub fn of(&self, c: Condition) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition == c)
    }

    pub(crate) fn push(
        &mut self,
        condition: Condition,
        agent: Option<&str>,
        witness: Vec<String>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation {
            condition,
            agent: agent.map(str::to_string),
            witness,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        if self.is_valid() {
            write!(f, "OK")
        } else {
            write!(f, "INVALID: {} violation(s)", self.violations.len())
        }
    }
}

fn set_name(model: &KiobtModel, hs: &[HistoryId]) -> String {
    let names: Vec<&str> = hs.iter().map(|&h| model.history_name(h)).collect();
    format!("{{{}}}", names.join(","))
}

/// Checks every frame condition and reports each violation with a witness.
/// Structural problems (dangling names, non-tree moments) are rejected
/// earlier, when the model is built.
pub fn validate_frame(model: &KiobtModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n_agents = model.agents().len();
    let n_moments = model.moments().len();

    for a in (0..n_agents).map(AgentId) {
        let agent = model.agent_name(a);
        for m in (0..n_moments).map(MomentId) {
            check_partition(model, a, m, &mut report);
            // NC: histories sharing a later moment, i.e. running through the
            // same child, share a cell
            for &child in &model.moments()[m.0].children {
                let hs = model.histories_through(child);
                let first = model.cell_of(a, m, hs[0]);
                if let Some(&h) = hs.iter().find(|&&h| model.cell_of(a, m, h) != first) {
                    report.push(
                        Condition::NC,
                        Some(agent),
                        vec![
                            model.moment_name(m).into(),
                            model.history_name(hs[0]).into(),
                            model.history_name(h).into(),
                            model.moment_name(child).into(),
                        ],
                        format!(
                            "histories {} and {} both pass through {} but are split at {}",
                            model.history_name(hs[0]),
                            model.history_name(h),
                            model.moment_name(child),
                            model.moment_name(m)
                        ),
                    );
                }
            }
        }
    }

    for m in (0..n_moments).map(MomentId) {
        check_independence(model, m, &mut report);
    }

    for a in (0..n_agents).map(AgentId) {
        check_own_action(model, a, &mut report);
        check_uniformity(model, a, &mut report);
    }

    check_topologies(model, &mut report);
    report
}

fn check_partition(model: &KiobtModel, a: AgentId, m: MomentId, report: &mut ValidationReport) {
    let agent = model.agent_name(a);
    let p = model.choice(a, m);
    let mut count: HashMap<HistoryId, usize> = HashMap::new();
    for cell in &p.cells {
        if cell.is_empty() {
            report.push(
                Condition::Partition,
                Some(agent),
                vec![model.moment_name(m).into()],
                "empty choice cell",
            );
        }
        for &h in cell {
            *count.entry(h).or_default() += 1;
        }
    }
    for &h in model.histories_through(m) {
        match count.get(&h).copied().unwrap_or(0) {
            1 => {}
            0 => report.push(
                Condition::Partition,
                Some(agent),
                vec![model.moment_name(m).into(), model.history_name(h).into()],
                format!(
                    "history {} is in no cell at {}",
                    model.history_name(h),
                    model.moment_name(m)
                ),
            ),
            _ => report.push(
                Condition::Partition,
                Some(agent),
                vec![model.moment_name(m).into(), model.history_name(h).into()],
                format!(
                    "history {} is in several cells at {}",
                    model.history_name(h),
                    model.moment_name(m)
                ),
            ),
        }
    }
}

/// Every selection of one cell per agent at `m`.
pub(crate) fn selections(cell_counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &k in cell_counts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

fn check_independence(model: &KiobtModel, m: MomentId, report: &mut ValidationReport) {
    let n_agents = model.agents().len();
    let counts: Vec<usize> = (0..n_agents)
        .map(|a| model.choice(AgentId(a), m).cells.len())
        .collect();
    for sel in selections(&counts) {
        let mut common: Option<BTreeSet<HistoryId>> = None;
        for (a, &c) in sel.iter().enumerate() {
            let cell: BTreeSet<HistoryId> = model.choice(AgentId(a), m).cells[c]
                .iter()
                .copied()
                .collect();
            common = Some(match common {
                None => cell,
                Some(x) => x.intersection(&cell).copied().collect(),
            });
        }
        if common.is_some_and(|c| c.is_empty()) {
            let mut witness = vec![model.moment_name(m).to_string()];
            for (a, &c) in sel.iter().enumerate() {
                let cell = &model.choice(AgentId(a), m).cells[c];
                witness.push(format!(
                    "{}:{}",
                    model.agent_name(AgentId(a)),
                    set_name(model, cell)
                ));
            }
            report.push(
                Condition::IA,
                None,
                witness,
                format!(
                    "selected cells at {} have empty intersection",
                    model.moment_name(m)
                ),
            );
        }
    }
}

fn check_own_action(model: &KiobtModel, a: AgentId, report: &mut ValidationReport) {
    let agent = model.agent_name(a);
    for m in (0..model.moments().len()).map(MomentId) {
        for cell in &model.choice(a, m).cells {
            let Some(&h0) = cell.first() else { continue };
            let i0 = model.index_id(m, h0).expect("cells lie in H_m");
            for &h in &cell[1..] {
                let i = model.index_id(m, h).expect("cells lie in H_m");
                if !model.related(a, i0, i) {
                    report.push(
                        Condition::OAC,
                        Some(agent),
                        vec![model.index_name(i0), model.index_name(i)],
                        format!(
                            "{} and {} share a choice cell but are distinguishable",
                            model.index_name(i0),
                            model.index_name(i)
                        ),
                    );
                }
            }
        }
    }
}

fn check_uniformity(model: &KiobtModel, a: AgentId, report: &mut ValidationReport) {
    let agent = model.agent_name(a);
    let n_moments = model.moments().len();
    let classes_at: Vec<BTreeSet<usize>> = (0..n_moments)
        .map(|m| {
            model
                .slice(MomentId(m))
                .iter()
                .map(|&i| model.epistemic_class(a, i))
                .collect()
        })
        .collect();
    for ms in 0..n_moments {
        for m in 0..n_moments {
            if ms == m || classes_at[ms].is_disjoint(&classes_at[m]) {
                continue;
            }
            for &i in model.slice(MomentId(ms)) {
                let c = model.epistemic_class(a, i);
                if !classes_at[m].contains(&c) {
                    let shared = *classes_at[ms]
                        .intersection(&classes_at[m])
                        .next()
                        .expect("non-empty");
                    let link_from = find_in_class(model, a, MomentId(ms), shared);
                    let link_to = find_in_class(model, a, MomentId(m), shared);
                    report.push(
                        Condition::UnifH,
                        Some(agent),
                        vec![
                            model.index_name(link_from),
                            model.index_name(link_to),
                            model.index_name(i),
                            model.moment_name(MomentId(m)).into(),
                        ],
                        format!(
                            "{} ~ {} but {} has no indistinguishable index at {}",
                            model.index_name(link_from),
                            model.index_name(link_to),
                            model.index_name(i),
                            model.moment_name(MomentId(m))
                        ),
                    );
                }
            }
        }
    }
}

fn find_in_class(model: &KiobtModel, a: AgentId, m: MomentId, class: usize) -> IndexId {
    *model
        .slice(m)
        .iter()
        .find(|&&i| model.epistemic_class(a, i) == class)
        .expect("class meets moment")
}

fn check_topologies(model: &KiobtModel, report: &mut ValidationReport) {
    for t in model.topologies() {
        let agent = model.agent_name(t.agent);
        let rep = model.index_name(t.representative);
        let info = &t.info_set;
        let has = |s: &IndexSet| t.opens.iter().any(|u| u == s);
        if !has(&model.empty_set()) {
            report.push(
                Condition::Topology,
                Some(agent),
                vec![rep.clone()],
                "the empty set is not open",
            );
        }
        if !has(info) {
            report.push(
                Condition::Topology,
                Some(agent),
                vec![rep.clone()],
                "the information set itself is not open",
            );
        }
        for u in &t.opens {
            if !u.is_subset(info) {
                let mut outside = u.clone();
                outside.difference_with(info);
                let mut w = vec![rep.clone()];
                w.extend(model.index_names(&outside));
                report.push(
                    Condition::Topology,
                    Some(agent),
                    w,
                    "an open set leaves the ex ante information set",
                );
            }
        }
        for (x, u) in t.opens.iter().enumerate() {
            for v in &t.opens[x + 1..] {
                let mut cup = u.clone();
                cup.union_with(v);
                let mut cap = u.clone();
                cap.intersect_with(v);
                for (op, s) in [("union", &cup), ("intersection", &cap)] {
                    if !has(s) {
                        report.push(
                            Condition::Topology,
                            Some(agent),
                            vec![rep.clone(), fmt_set(model, u), fmt_set(model, v)],
                            format!("not closed under {op}"),
                        );
                    }
                }
                if !u.is_clear() && !v.is_clear() && cap.is_clear() {
                    report.push(
                        Condition::CI,
                        Some(agent),
                        vec![rep.clone(), fmt_set(model, u), fmt_set(model, v)],
                        "two non-empty intentions are disjoint",
                    );
                }
            }
        }
    }

    // KI: every ex ante information set carries exactly one topology
    for a in (0..model.agents().len()).map(AgentId) {
        let agent = model.agent_name(a);
        let mut seen: Vec<IndexSet> = Vec::new();
        for i in (0..model.num_indices()).map(IndexId) {
            let info = model.ex_ante_info_set(a, i);
            if seen.contains(&info) {
                continue;
            }
            let keyed: Vec<_> = model
                .topologies()
                .iter()
                .filter(|t| t.agent == a && t.info_set == info)
                .collect();
            if keyed.is_empty() {
                report.push(
                    Condition::KI,
                    Some(agent),
                    vec![model.index_name(i), fmt_set(model, &info)],
                    format!(
                        "no intention topology for the information set of {}",
                        model.index_name(i)
                    ),
                );
            } else {
                let norm = |t: &super::IntentionTopology| {
                    let mut v: Vec<Vec<usize>> =
                        t.opens.iter().map(|u| u.ones().collect()).collect();
                    v.sort();
                    v.dedup();
                    v
                };
                let first = norm(keyed[0]);
                if let Some(other) = keyed[1..].iter().find(|t| norm(t) != first) {
                    report.push(
                        Condition::KI,
                        Some(agent),
                        vec![
                            model.index_name(keyed[0].representative),
                            model.index_name(other.representative),
                        ],
                        "indices with the same information set carry different topologies",
                    );
                }
            }
            seen.push(info);
        }
    }
}

fn fmt_set(model: &KiobtModel, s: &IndexSet) -> String {
    format!("{{{}}}", model.index_names(s).join(","))
}
