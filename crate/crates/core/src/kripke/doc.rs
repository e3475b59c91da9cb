//! On-disk layout of a bi-valued Kripke model (TOML).
//!
//! ```toml
//! agents = ["a"]
//! worlds = ["w1", "w2"]
//! rbox = [["w1", "w2"]]                  # the R_box classes
//!
//! [[choices]]
//! agent = "a"
//! class = "w1"                           # any member of the class
//! cells = [["w1"], ["w2"]]
//!
//! [[epistemic]]
//! agent = "a"
//! pairs = []                             # generators, closed automatically
//!
//! [[intention]]
//! agent = "a"
//! pairs = [["w1", "w2"], ["w2", "w2"]]   # R^I, taken literally
//!
//! [valueO]
//! w1 = 0.0
//! [valueS]
//! w1 = 1.0
//!
//! [valuation]
//! p = ["w2"]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KripkeDoc {
    pub agents: Vec<String>,
    pub worlds: Vec<String>,
    pub rbox: Vec<Vec<String>>,
    #[serde(default)]
    pub choices: Vec<KripkeChoiceDoc>,
    #[serde(default)]
    pub epistemic: Vec<PairsDoc>,
    #[serde(default)]
    pub intention: Vec<PairsDoc>,
    #[serde(rename = "valueO")]
    pub value_o: BTreeMap<String, f64>,
    #[serde(rename = "valueS")]
    pub value_s: BTreeMap<String, f64>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KripkeChoiceDoc {
    pub agent: String,
    pub class: String,
    pub cells: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsDoc {
    pub agent: String,
    pub pairs: Vec<[String; 2]>,
}

impl KripkeDoc {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("kripke documents always serialize")
    }
}
