//! On-disk layout of a kiobt model (TOML).
//!
//! ```toml
//! mode = "single"            # or "dual"
//! agents = ["a"]
//!
//! [[moments]]
//! id = "m0"                  # root: no parent
//! [[moments]]
//! id = "h1"
//! parent = "m0"
//!
//! [[choices]]
//! agent = "a"
//! moment = "m0"
//! cells = [["h1", "h2"], ["h3", "h4"]]   # histories named by their leaf
//!
//! [[epistemic]]
//! agent = "a"
//! pairs = [["m0:h1", "m0:h2"]]           # generators, closed automatically
//!
//! [[topology]]
//! agent = "a"
//! index = "m0:h1"                        # any index of the information set
//! opens = [[], ["m0:h1", "m0:h2", "m0:h3", "m0:h4"]]
//!
//! [values]
//! h1 = 1.0                               # dual mode: h1 = [1.0, 0.0]
//!
//! [valuation]
//! p = ["m0:h1", "m0:h2"]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ValueMode {
    /// One value per history, inducing both orderings.
    #[default]
    Single,
    /// Independent objective and subjective values.
    Dual,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub mode: ValueMode,
    pub agents: Vec<String>,
    pub moments: Vec<MomentDoc>,
    #[serde(default)]
    pub choices: Vec<ChoiceDoc>,
    #[serde(default)]
    pub epistemic: Vec<EpistemicDoc>,
    #[serde(default)]
    pub topology: Vec<TopologyDoc>,
    pub values: BTreeMap<String, ValueDoc>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoiceDoc {
    pub agent: String,
    pub moment: String,
    pub cells: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpistemicDoc {
    pub agent: String,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDoc {
    pub agent: String,
    pub index: String,
    pub opens: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Single(f64),
    Dual([f64; 2]),
}

impl ModelDoc {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model documents always serialize")
    }
}
