//! Report shapes shared by all subcommands. Identical inputs must produce
//! byte-identical output, so everything here is ordered: BTreeMap inputs,
//! fixed struct field order, no timestamps.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::NotApplicable => write!(f, "not-applicable"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<R: Serialize> {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: R,
    pub status: Status,
}

impl<R: Serialize> Report<R> {
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            Status::Pass | Status::NotApplicable => 0,
        }
    }
}

pub fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
