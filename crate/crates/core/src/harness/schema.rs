//! Axiom schemata as formula templates. `PHI` and `PSI` stand for formulas,
//! `A` and `B` for distinct agents.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::generate::pool_formula;
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub template: Formula,
}

const TEMPLATES: &[(&str, &str)] = &[
    ("box-K", "box (PHI -> PSI) -> (box PHI -> box PSI)"),
    ("box-T", "box PHI -> PHI"),
    ("box-4", "box PHI -> box box PHI"),
    ("box-5", "<>PHI -> box <>PHI"),
    ("stit-K", "[A](PHI -> PSI) -> ([A]PHI -> [A]PSI)"),
    ("stit-T", "[A]PHI -> PHI"),
    ("stit-4", "[A]PHI -> [A][A]PHI"),
    ("stit-5", "~[A]PHI -> [A]~[A]PHI"),
    ("know-K", "K A.(PHI -> PSI) -> (K A.PHI -> K A.PSI)"),
    ("know-T", "K A.PHI -> PHI"),
    ("know-4", "K A.PHI -> K A.K A.PHI"),
    ("know-5", "~K A.PHI -> K A.~K A.PHI"),
    ("int-K", "I A.(PHI -> PSI) -> (I A.PHI -> I A.PSI)"),
    ("int-D", "I A.PHI -> ~I A.~PHI"),
    ("SET", "box PHI -> [A]PHI"),
    ("IA", "<>[A]PHI & <>[B]PSI -> <>([A]PHI & [B]PSI)"),
    ("OAC", "K A.PHI -> [A]PHI"),
    ("Unif-H", "<>K A.PHI -> K A.<>PHI"),
    ("A1", "Ob A.(PHI -> PSI) -> (Ob A.PHI -> Ob A.PSI)"),
    ("A2", "box PHI -> Ob A.PHI"),
    ("A3", "Ob A.PHI -> box Ob A.PHI"),
    ("A4", "Ob A.PHI -> Ob A.[A]PHI"),
    ("Oic", "Ob A.PHI -> <>[A]PHI"),
    ("A5", "Os A.(PHI -> PSI) -> (Os A.PHI -> Os A.PSI)"),
    ("A6", "Os A.PHI -> Os A.K A.PHI"),
    ("SuN", "K A.box PHI -> Os A.PHI"),
    ("s.Oic", "Os A.PHI -> <>K A.PHI"),
    ("s.Cl", "Os A.PHI -> K A.box Os A.PHI"),
    ("ConSO", "Os A.PHI -> ~Ob A.~PHI"),
    ("InN", "box K A.PHI -> I A.PHI"),
    ("KI", "I A.PHI -> box K A.I A.PHI"),
];

impl Schema {
    /// Agent variables the template uses.
    pub fn agent_vars(&self) -> usize {
        let agents = self.template.agents();
        usize::from(agents.contains("A")) + usize::from(agents.contains("B"))
    }

    /// Whether the schema has instances over `agents` distinct agents.
    pub fn applies_to(&self, agents: usize) -> bool {
        self.agent_vars() <= agents
    }

    /// Fills `PHI`/`PSI` from the stratified pool and `A`/`B` with distinct
    /// agents drawn from `agents`.
    pub fn instantiate(
        &self,
        rng: &mut impl Rng,
        max_stratum: usize,
        atoms: &[&str],
        agents: &[&str],
    ) -> Formula {
        let mut metas = HashMap::new();
        for var in ["PHI", "PSI"] {
            let stratum = rng.gen_range(0..=max_stratum);
            metas.insert(var.to_string(), pool_formula(rng, stratum, atoms, agents));
        }
        let mut picked: Vec<&str> = agents.to_vec();
        picked.shuffle(rng);
        let mut names = HashMap::new();
        names.insert("A".to_string(), picked[0].to_string());
        if let Some(b) = picked.get(1) {
            names.insert("B".to_string(), b.to_string());
        }
        self.template.substitute(&metas, &names)
    }

    /// Instance with the given formulas and agents.
    pub fn with(&self, phi: Formula, psi: Formula, a: &str, b: &str) -> Formula {
        let metas = HashMap::from([("PHI".to_string(), phi), ("PSI".to_string(), psi)]);
        let names = HashMap::from([
            ("A".to_string(), a.to_string()),
            ("B".to_string(), b.to_string()),
        ]);
        self.template.substitute(&metas, &names)
    }
}

/// Every schema of the sound system, in a fixed order.
pub fn all_schemas() -> Vec<Schema> {
    TEMPLATES
        .iter()
        .map(|(name, text)| Schema {
            name,
            template: text.parse().expect("templates parse"),
        })
        .collect()
}

pub fn schema(name: &str) -> Option<Schema> {
    all_schemas().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let s = all_schemas();
        let mut names: Vec<_> = s.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), s.len());
        assert_eq!(s.len(), 31);
    }

    #[test]
    fn agent_variables() {
        for s in all_schemas() {
            let expected = match s.name {
                "IA" => 2,
                n if n.starts_with("box") => 0,
                _ => 1,
            };
            assert_eq!(s.agent_vars(), expected, "{}", s.name);
        }
    }

    #[test]
    fn substitution() {
        let s = schema("A2").unwrap();
        let f = s.with("p & q".parse().unwrap(), Formula::top(), "a", "b");
        assert_eq!(f, "box (p & q) -> Ob a.(p & q)".parse().unwrap());
    }
}
