//! Backward-looking responsibility: the six sub-category formulas, the
//! deontic context of an index, and the resulting verdict.

use std::fmt;

use serde::Serialize;

use crate::formula::Formula;
use crate::model::{IndexId, KiobtModel};
use crate::semantics::{EvalError, Evaluator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Causal,
    Informational,
    Motivational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubCategory {
    pub category: Category,
    pub form: Form,
}

impl SubCategory {
    pub const ALL: [SubCategory; 6] = [
        SubCategory::new(Category::Causal, Form::Active),
        SubCategory::new(Category::Causal, Form::Passive),
        SubCategory::new(Category::Informational, Form::Active),
        SubCategory::new(Category::Informational, Form::Passive),
        SubCategory::new(Category::Motivational, Form::Active),
        SubCategory::new(Category::Motivational, Form::Passive),
    ];

    pub const fn new(category: Category, form: Form) -> Self {
        SubCategory { category, form }
    }
}

impl fmt::Display for SubCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.category {
            Category::Causal => "causal",
            Category::Informational => "informational",
            Category::Motivational => "motivational",
        };
        let m = match self.form {
            Form::Active => "active",
            Form::Passive => "passive",
        };
        write!(f, "{c}-{m}")
    }
}

/// The sub-category formula for `agent` and `phi`.
pub fn subcategory_formula(agent: &str, phi: &Formula, sub: SubCategory) -> Formula {
    let stit = |f: Formula| Formula::stit(agent, f);
    let know = |f: Formula| Formula::know(agent, f);
    let intend = |f: Formula| Formula::intend(agent, f);
    let not = Formula::not;

    let does = stit(phi.clone());
    let prevents = stit(not(phi.clone()));
    let allows = not(prevents.clone());

    let parts = match (sub.category, sub.form) {
        (Category::Causal, Form::Active) => vec![does, Formula::possible(prevents.clone())],
        (Category::Causal, Form::Passive) => vec![phi.clone(), Formula::possible(prevents.clone())],
        (Category::Informational, Form::Active) => {
            vec![know(does), Formula::possible(know(prevents.clone()))]
        }
        (Category::Informational, Form::Passive) => vec![
            phi.clone(),
            know(allows),
            Formula::possible(know(prevents.clone())),
        ],
        (Category::Motivational, Form::Active) => vec![
            know(does.clone()),
            intend(does),
            Formula::possible(know(prevents.clone())),
        ],
        (Category::Motivational, Form::Passive) => vec![
            phi.clone(),
            know(allows.clone()),
            intend(allows),
            Formula::possible(know(prevents.clone())),
        ],
    };
    Formula::conj(parts).expect("at least two conjuncts")
}

pub fn check_subcategory(
    ev: &Evaluator,
    i: IndexId,
    agent: &str,
    phi: &Formula,
    sub: SubCategory,
) -> Result<bool, EvalError> {
    ev.eval(i, &subcategory_formula(agent, phi, sub))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Level {
    /// Objective and subjective ought.
    L1 = 1,
    /// Subjective ought only.
    L2 = 2,
    /// Objective ought only.
    L3 = 3,
    L4 = 4,
}

impl Level {
    pub fn number(self) -> u8 {
        self as u8
    }

    fn from_oughts(objective: bool, subjective: bool) -> Self {
        match (objective, subjective) {
            (true, true) => Level::L1,
            (false, true) => Level::L2,
            (true, false) => Level::L3,
            (false, false) => Level::L4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeonticContext {
    pub level: Level,
    /// Some ought, objective or subjective, demands `~phi`.
    pub obligates_negation: bool,
}

pub fn deontic_context(
    ev: &Evaluator,
    i: IndexId,
    agent: &str,
    phi: &Formula,
) -> Result<DeonticContext, EvalError> {
    let neg = Formula::not(phi.clone());
    let level = Level::from_oughts(
        ev.eval(i, &Formula::ought(agent, phi.clone()))?,
        ev.eval(i, &Formula::subj_ought(agent, phi.clone()))?,
    );
    let obligates_negation = ev.eval(i, &Formula::ought(agent, neg.clone()))?
        || ev.eval(i, &Formula::subj_ought(agent, neg))?;
    Ok(DeonticContext {
        level,
        obligates_negation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Degree {
    /// Causal only.
    Low,
    /// Causal and informational.
    Middle,
    /// Causal, informational and motivational.
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Attitude {
    Praiseworthy,
    Blameworthy,
    Neutral,
}

/// Which sub-categories hold for one polarity, with the derived degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Side {
    pub holding: Vec<SubCategory>,
    pub degree_active: Option<Degree>,
    pub degree_passive: Option<Degree>,
}

impl Side {
    fn new(holding: Vec<SubCategory>) -> Self {
        let degree = |form| {
            let has = |c| holding.contains(&SubCategory::new(c, form));
            match (
                has(Category::Causal),
                has(Category::Informational),
                has(Category::Motivational),
            ) {
                (true, true, true) => Some(Degree::High),
                (true, true, false) => Some(Degree::Middle),
                (true, false, _) => Some(Degree::Low),
                _ => None,
            }
        };
        Side {
            degree_active: degree(Form::Active),
            degree_passive: degree(Form::Passive),
            holding,
        }
    }

    pub fn holds(&self, sub: SubCategory) -> bool {
        self.holding.contains(&sub)
    }

    pub fn any(&self) -> bool {
        !self.holding.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResponsibilityVerdict {
    pub agent: String,
    pub formula: String,
    pub index: String,
    /// Sub-categories for `phi`.
    pub praise: Side,
    /// Sub-categories for `~phi`.
    pub blame: Side,
    pub context: DeonticContext,
    pub attitude: Attitude,
}

impl fmt::Display for ResponsibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &Side| {
            if s.holding.is_empty() {
                "-".to_string()
            } else {
                s.holding
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        let deg = |d: Option<Degree>| d.map_or("-".to_string(), |d| format!("{d:?}"));
        write!(
            f,
            "{} agent={} formula=\"{}\" level={} attitude={:?} praise=[{}] active={} passive={} blame=[{}] active={} passive={}",
            self.index,
            self.agent,
            self.formula,
            self.context.level.number(),
            self.attitude,
            list(&self.praise),
            deg(self.praise.degree_active),
            deg(self.praise.degree_passive),
            list(&self.blame),
            deg(self.blame.degree_active),
            deg(self.blame.degree_passive),
        )
    }
}

fn side(ev: &Evaluator, i: IndexId, agent: &str, phi: &Formula) -> Result<Side, EvalError> {
    let mut holding = Vec::new();
    for sub in SubCategory::ALL {
        if check_subcategory(ev, i, agent, phi, sub)? {
            holding.push(sub);
        }
    }
    Ok(Side::new(holding))
}

pub fn classify(
    ev: &Evaluator,
    i: IndexId,
    agent: &str,
    phi: &Formula,
) -> Result<ResponsibilityVerdict, EvalError> {
    let praise = side(ev, i, agent, phi)?;
    let blame = side(ev, i, agent, &Formula::not(phi.clone()))?;
    let context = deontic_context(ev, i, agent, phi)?;
    let attitude = if context.level != Level::L4 {
        if praise.any() {
            Attitude::Praiseworthy
        } else if blame.any() {
            Attitude::Blameworthy
        } else {
            Attitude::Neutral
        }
    } else if context.obligates_negation {
        // the ought now points at ~phi: bringing it about earns praise
        if blame.any() {
            Attitude::Praiseworthy
        } else if praise.any() {
            Attitude::Blameworthy
        } else {
            Attitude::Neutral
        }
    } else {
        Attitude::Neutral
    };
    Ok(ResponsibilityVerdict {
        agent: agent.to_string(),
        formula: phi.to_string(),
        index: ev.model().index_name(i),
        praise,
        blame,
        context,
        attitude,
    })
}

/// Verdicts at every index of the model, in index order.
pub fn classify_all(
    ev: &Evaluator,
    agent: &str,
    phi: &Formula,
) -> Result<Vec<ResponsibilityVerdict>, EvalError> {
    let model: &KiobtModel = ev.model();
    (0..model.num_indices())
        .map(|i| classify(ev, IndexId(i), agent, phi))
        .collect()
}
