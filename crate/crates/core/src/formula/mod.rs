//! Formulas of the responsibility language: atoms, Boolean connectives,
//! historical necessity, agency, knowledge, intention and the two oughts.
//!
//! Disjunction, implication and possibility are not part of the AST. The
//! parser and the smart constructors expand them into the primitive
//! connectives, so two formulas that mean the same thing through sugar are
//! structurally equal.

mod parse;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub use parse::{parse, ParseError};

/// Operator words that can never be used as atom or agent names.
pub const KEYWORDS: [&str; 5] = ["box", "K", "I", "Ob", "Os"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Historical necessity, `box`.
    Settled(Box<Formula>),
    /// `[a]`: the agent has seen to it that.
    Stit(String, Box<Formula>),
    /// `K a.`
    Know(String, Box<Formula>),
    /// `I a.`: present-directed intention.
    Intend(String, Box<Formula>),
    /// `Ob a.`: objective ought-to-do.
    Ought(String, Box<Formula>),
    /// `Os a.`: subjective ought-to-do.
    SubjOught(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    /// `l | r`, stored as `~(~l & ~r)`.
    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    /// `l -> r`, stored as `~(l & ~r)`.
    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    pub fn settled(f: Formula) -> Self {
        Formula::Settled(Box::new(f))
    }

    /// `<>f`, stored as `~box ~f`.
    pub fn possible(f: Formula) -> Self {
        Formula::not(Formula::settled(Formula::not(f)))
    }

    pub fn stit(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Stit(agent.into(), Box::new(f))
    }

    pub fn know(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Know(agent.into(), Box::new(f))
    }

    pub fn intend(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Intend(agent.into(), Box::new(f))
    }

    pub fn ought(agent: impl Into<String>, f: Formula) -> Self {
        Formula::Ought(agent.into(), Box::new(f))
    }

    pub fn subj_ought(agent: impl Into<String>, f: Formula) -> Self {
        Formula::SubjOught(agent.into(), Box::new(f))
    }

    /// A fixed tautology, `~(tt & ~tt)`.
    pub fn top() -> Self {
        let t = Formula::atom("tt");
        Formula::not(Formula::and(t.clone(), Formula::not(t)))
    }

    /// The negation of [`Formula::top`].
    pub fn bottom() -> Self {
        Formula::not(Formula::top())
    }

    /// Conjunction of a non-empty list, associated to the left.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::And(l, r) => vec![l, r],
            Formula::Not(f)
            | Formula::Settled(f)
            | Formula::Stit(_, f)
            | Formula::Know(_, f)
            | Formula::Intend(_, f)
            | Formula::Ought(_, f)
            | Formula::SubjOught(_, f) => vec![f],
        }
    }

    /// The agent named by the outermost operator, if any.
    pub fn agent(&self) -> Option<&str> {
        match self {
            Formula::Stit(a, _)
            | Formula::Know(a, _)
            | Formula::Intend(a, _)
            | Formula::Ought(a, _)
            | Formula::SubjOught(a, _) => Some(a),
            _ => None,
        }
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    /// Distinct subformulas in post-order: every entry comes after all of
    /// its children, and the formula itself comes last.
    pub fn subformulas(&self) -> Vec<Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            for c in f.children() {
                walk(c, seen, out);
            }
            seen.insert(f);
            out.push(f);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out.into_iter().cloned().collect()
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.as_str());
            }
        });
        out
    }

    pub fn agents(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Some(a) = f.agent() {
                out.insert(a);
            }
        });
        out
    }

    fn visit<'a>(&'a self, g: &mut impl FnMut(&'a Formula)) {
        g(self);
        for c in self.children() {
            c.visit(g);
        }
    }

    /// Replaces atoms and agent names. Atoms without an entry in `atoms` and
    /// agents without an entry in `agents` are kept as they are.
    pub fn substitute(
        &self,
        atoms: &HashMap<String, Formula>,
        agents: &HashMap<String, String>,
    ) -> Formula {
        let ag = |a: &String| agents.get(a).cloned().unwrap_or_else(|| a.clone());
        let sub = |f: &Formula| Box::new(f.substitute(atoms, agents));
        match self {
            Formula::Atom(p) => atoms.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Not(f) => Formula::Not(sub(f)),
            Formula::And(l, r) => Formula::And(sub(l), sub(r)),
            Formula::Settled(f) => Formula::Settled(sub(f)),
            Formula::Stit(a, f) => Formula::Stit(ag(a), sub(f)),
            Formula::Know(a, f) => Formula::Know(ag(a), sub(f)),
            Formula::Intend(a, f) => Formula::Intend(ag(a), sub(f)),
            Formula::Ought(a, f) => Formula::Ought(ag(a), sub(f)),
            Formula::SubjOught(a, f) => Formula::SubjOught(ag(a), sub(f)),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Canonical rendering. Conjunctions are always parenthesized, `~box ~f`
/// prints as `<>f`, and a negated modal formula is wrapped in parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Settled(x) if matches!(x.as_ref(), Formula::Not(_)) => {
                    let Formula::Not(y) = x.as_ref() else {
                        unreachable!()
                    };
                    write!(f, "<>{y}")
                }
                Formula::Atom(_) | Formula::And(..) | Formula::Not(_) => write!(f, "~{inner}"),
                _ => write!(f, "~({inner})"),
            },
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Settled(x) => write!(f, "box {x}"),
            Formula::Stit(a, x) => write!(f, "[{a}]{x}"),
            Formula::Know(a, x) => write!(f, "K {a}.{x}"),
            Formula::Intend(a, x) => write!(f, "I {a}.{x}"),
            Formula::Ought(a, x) => write!(f, "Ob {a}.{x}"),
            Formula::SubjOught(a, x) => write!(f, "Os {a}.{x}"),
        }
    }
}
