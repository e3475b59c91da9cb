use std::collections::BTreeSet;

use super::KripkeModel;
use crate::model::validate::selections;
use crate::model::{AgentId, Condition, ValidationReport};

fn set_name(k: &KripkeModel, ws: &[usize]) -> String {
    let names: Vec<&str> = ws.iter().map(|&w| k.world_name(w)).collect();
    format!("{{{}}}", names.join(","))
}

/// Checks every Kripke frame condition and reports each violation with a
/// witness.
pub fn validate_kripke(k: &KripkeModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_box(k, &mut report);
    for a in (0..k.agents().len()).map(AgentId) {
        check_choices(k, a, &mut report);
    }
    for c in 0..k.classes().len() {
        check_independence(k, c, &mut report);
    }
    for a in (0..k.agents().len()).map(AgentId) {
        check_epistemic(k, a, &mut report);
        check_intention(k, a, &mut report);
    }
    report
}

fn check_box(k: &KripkeModel, report: &mut ValidationReport) {
    let mut seen = vec![0usize; k.num_worlds()];
    for list in k.box_lists() {
        for &w in list.iter().collect::<BTreeSet<_>>() {
            seen[w] += 1;
        }
    }
    for (w, &n) in seen.iter().enumerate() {
        if n != 1 {
            report.push(
                Condition::BoxClasses,
                None,
                vec![k.world_name(w).to_string()],
                format!("world {} appears in {n} rbox classes", k.world_name(w)),
            );
        }
    }
}

fn check_choices(k: &KripkeModel, a: AgentId, report: &mut ValidationReport) {
    let agent = k.agents()[a.0].as_str();
    for (c, members) in k.classes().iter().enumerate() {
        let cells = k.choice(a, c);
        let mut count = vec![0usize; k.num_worlds()];
        for cell in cells {
            if cell.is_empty() {
                report.push(
                    Condition::Partition,
                    Some(agent),
                    vec![set_name(k, members)],
                    "empty cell",
                );
            }
            for &w in cell {
                count[w] += 1;
            }
        }
        for &w in members {
            if count[w] != 1 {
                report.push(
                    Condition::Partition,
                    Some(agent),
                    vec![k.world_name(w).to_string(), set_name(k, members)],
                    format!(
                        "world {} lies in {} cells of its class",
                        k.world_name(w),
                        count[w]
                    ),
                );
            }
        }
    }
}

fn check_independence(k: &KripkeModel, c: usize, report: &mut ValidationReport) {
    let n_agents = k.agents().len();
    let counts: Vec<usize> = (0..n_agents)
        .map(|a| k.choice(AgentId(a), c).len())
        .collect();
    for sel in selections(&counts) {
        let mut common: BTreeSet<usize> = k.classes()[c].iter().copied().collect();
        for (a, &i) in sel.iter().enumerate() {
            let cell: BTreeSet<usize> = k.choice(AgentId(a), c)[i].iter().copied().collect();
            common = common.intersection(&cell).copied().collect();
        }
        if common.is_empty() {
            let mut witness = vec![set_name(k, &k.classes()[c])];
            for (a, &i) in sel.iter().enumerate() {
                witness.push(format!(
                    "{}:{}",
                    k.agents()[a],
                    set_name(k, &k.choice(AgentId(a), c)[i])
                ));
            }
            report.push(
                Condition::IAK,
                None,
                witness,
                "selected cells have empty intersection",
            );
        }
    }
}

fn check_epistemic(k: &KripkeModel, a: AgentId, report: &mut ValidationReport) {
    let agent = k.agents()[a.0].as_str();
    for c in 0..k.classes().len() {
        for cell in k.choice(a, c) {
            for &v in cell {
                for &u in cell {
                    if v < u && !k.related(a, v, u) {
                        report.push(
                            Condition::OACK,
                            Some(agent),
                            vec![k.world_name(v).to_string(), k.world_name(u).to_string()],
                            format!(
                                "{} and {} share a cell but are distinguishable",
                                k.world_name(v),
                                k.world_name(u)
                            ),
                        );
                    }
                }
            }
        }
    }
    let n = k.num_worlds();
    let mut reported = BTreeSet::new();
    for v in 0..n {
        for u in 0..n {
            if !k.related(a, v, u) {
                continue;
            }
            let (cv, cu) = (k.class_of(v), k.class_of(u));
            for &v2 in &k.classes()[cv] {
                let matched = k.classes()[cu].iter().any(|&u2| k.related(a, v2, u2));
                if !matched && reported.insert((v2, cu)) {
                    report.push(
                        Condition::UnifHK,
                        Some(agent),
                        vec![k.world_name(v2).to_string(), set_name(k, &k.classes()[cu])],
                        format!(
                            "{} ~ {} but {} has no counterpart in the class of {}",
                            k.world_name(v),
                            k.world_name(u),
                            k.world_name(v2),
                            k.world_name(u)
                        ),
                    );
                }
            }
        }
    }
}

fn check_intention(k: &KripkeModel, a: AgentId, report: &mut ValidationReport) {
    let agent = k.agents()[a.0].as_str();
    let n = k.num_worlds();
    let name = |w: usize| k.world_name(w).to_string();
    let r = |x: usize, y: usize| k.successors(a, x).contains(&y);
    for v in 0..n {
        if k.successors(a, v).is_empty() {
            report.push(
                Condition::IntentionSerial,
                Some(agent),
                vec![name(v)],
                format!("{} has no successor", name(v)),
            );
        }
        let info = k.ex_ante(a, v);
        for &u in k.successors(a, v) {
            if !info.contains(&u) {
                report.push(
                    Condition::IntentionInclusion,
                    Some(agent),
                    vec![name(v), name(u)],
                    format!(
                        "{} -> {} leaves the ex ante information set",
                        name(v),
                        name(u)
                    ),
                );
            }
            for &z in k.successors(a, u) {
                if !r(v, z) {
                    report.push(
                        Condition::IntentionTransitive,
                        Some(agent),
                        vec![name(v), name(u), name(z)],
                        format!(
                            "{} -> {} -> {} but not {} -> {}",
                            name(v),
                            name(u),
                            name(z),
                            name(v),
                            name(z)
                        ),
                    );
                }
            }
            for &z in k.successors(a, v) {
                if !r(u, z) {
                    report.push(
                        Condition::IntentionEuclidean,
                        Some(agent),
                        vec![name(v), name(u), name(z)],
                        format!(
                            "{} -> {} and {} -> {} but not {} -> {}",
                            name(v),
                            name(u),
                            name(v),
                            name(z),
                            name(u),
                            name(z)
                        ),
                    );
                }
            }
        }
        for &u in &info {
            if u > v && !(0..n).any(|z| r(v, z) && r(u, z)) {
                report.push(
                    Condition::DenK,
                    Some(agent),
                    vec![name(v), name(u)],
                    format!(
                        "{} and {} share an information set but no common successor",
                        name(v),
                        name(u)
                    ),
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kripke::KripkeDoc;

    fn load(edit: impl FnOnce(&mut KripkeDoc)) -> KripkeModel {
        let mut doc = KripkeDoc::from_toml(fixtures::K1_TOML).unwrap();
        edit(&mut doc);
        KripkeModel::from_doc(&doc).unwrap()
    }

    #[test]
    fn k1_is_valid() {
        assert!(validate_kripke(&fixtures::k1()).is_valid());
    }

    #[test]
    fn non_serial_intention() {
        let k = load(|d| d.intention[0].pairs.retain(|[x, _]| x != "w2"));
        let r = validate_kripke(&k);
        let v: Vec<_> = r.of(Condition::IntentionSerial).collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].witness, ["w2"]);
    }

    #[test]
    fn broken_uniformity_names_world_and_class() {
        // two classes {w1,w2} and {w3,w4}; w1 ~ w3 and w2 ~ w4 until one pair is dropped
        let text = r#"
            agents = ["a"]
            worlds = ["w1", "w2", "w3", "w4"]
            rbox = [["w1", "w2"], ["w3", "w4"]]
            [[choices]]
            agent = "a"
            class = "w1"
            cells = [["w1"], ["w2"]]
            [[choices]]
            agent = "a"
            class = "w3"
            cells = [["w3"], ["w4"]]
            [[epistemic]]
            agent = "a"
            pairs = [["w1", "w3"], ["w2", "w4"]]
            [[intention]]
            agent = "a"
            pairs = [["w1", "w1"], ["w2", "w1"], ["w3", "w1"], ["w4", "w1"]]
            [valueO]
            w1 = 0.0
            w2 = 0.0
            w3 = 0.0
            w4 = 0.0
            [valueS]
            w1 = 0.0
            w2 = 0.0
            w3 = 0.0
            w4 = 0.0
        "#;
        assert!(validate_kripke(&KripkeModel::from_toml(text).unwrap()).is_valid());
        let broken = text.replace(r#", ["w2", "w4"]"#, "");
        let r = validate_kripke(&KripkeModel::from_toml(&broken).unwrap());
        assert!(r
            .of(Condition::UnifHK)
            .any(|v| v.witness == ["w2", "{w3,w4}"]));
    }

    #[test]
    fn independence_and_own_action() {
        let k = load(|d| {
            d.agents.push("b".into());
            d.choices.push(crate::kripke::doc::KripkeChoiceDoc {
                agent: "b".into(),
                class: "w1".into(),
                cells: vec![vec!["w1".into()], vec!["w2".into()]],
            });
            d.intention.push(crate::kripke::doc::PairsDoc {
                agent: "b".into(),
                pairs: vec![["w1".into(), "w1".into()], ["w2".into(), "w1".into()]],
            });
            d.choices[0].cells = vec![vec!["w1".into(), "w2".into()]];
        });
        let r = validate_kripke(&k);
        assert!(r.of(Condition::OACK).any(|v| v.witness == ["w1", "w2"]));
        let k = load(|d| {
            d.agents.push("b".into());
            d.choices.push(crate::kripke::doc::KripkeChoiceDoc {
                agent: "b".into(),
                class: "w1".into(),
                cells: vec![vec!["w1".into()], vec!["w2".into()]],
            });
            d.intention.push(crate::kripke::doc::PairsDoc {
                agent: "b".into(),
                pairs: vec![["w1".into(), "w1".into()], ["w2".into(), "w1".into()]],
            });
        });
        let r = validate_kripke(&k);
        assert!(r
            .of(Condition::IAK)
            .any(|v| v.witness == ["{w1,w2}", "a:{w1}", "b:{w2}"]));
    }

    #[test]
    fn intention_conditions() {
        let k = load(|d| {
            d.intention[0].pairs = vec![["w1".into(), "w1".into()], ["w2".into(), "w2".into()]]
        });
        let r = validate_kripke(&k);
        assert!(r.of(Condition::DenK).any(|v| v.witness == ["w1", "w2"]));
        let k = load(|d| {
            d.intention[0].pairs = vec![
                ["w1".into(), "w2".into()],
                ["w2".into(), "w1".into()],
                ["w1".into(), "w1".into()],
            ]
        });
        let r = validate_kripke(&k);
        assert!(r
            .of(Condition::IntentionTransitive)
            .any(|v| v.witness == ["w2", "w1", "w2"]));
        assert!(r.of(Condition::IntentionEuclidean).count() > 0);
    }
}
