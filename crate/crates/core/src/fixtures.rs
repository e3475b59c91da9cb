//! Small hand-built models used in examples, tests and benchmarks.

use crate::kripke::KripkeModel;
use crate::model::KiobtModel;

/// One moment, one agent, four histories; the agent knows its own action.
pub const M1_TOML: &str = include_str!("../fixtures/m1.model");
/// Two indistinguishable sibling moments where the two oughts come apart.
pub const M2_TOML: &str = include_str!("../fixtures/m2.model");

pub fn m1() -> KiobtModel {
    KiobtModel::from_toml(M1_TOML).expect("fixture m1 loads")
}

pub fn m2() -> KiobtModel {
    KiobtModel::from_toml(M2_TOML).expect("fixture m2 loads")
}

/// Two worlds whose objective and subjective values pull in opposite
/// directions.
pub const K1_TOML: &str = include_str!("../fixtures/k1.kripke");

pub fn k1() -> KripkeModel {
    KripkeModel::from_toml(K1_TOML).expect("fixture k1 loads")
}
