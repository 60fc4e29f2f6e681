use serde::{Deserialize, Serialize};

use hecke_lab::{build_root_datum, Family, LatticeChoice, RootDataError, RootDatum};

/// One case of a config or suite file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    /// By class `S_1, S_2(, S_3)` or by node (node 0 first).
    pub decoration: Vec<u32>,
    #[serde(default = "default_lattice")]
    pub lattice: LatticeChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

fn default_lattice() -> LatticeChoice {
    LatticeChoice::Coweight
}

/// Expected outcomes checked by `verify`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SuiteRepr {
    Bare(Vec<CaseSpec>),
    Wrapped { cases: Vec<CaseSpec> },
}

pub fn parse_case(text: &str) -> Result<CaseSpec, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn parse_suite(text: &str) -> Result<Vec<CaseSpec>, serde_json::Error> {
    Ok(match serde_json::from_str(text)? {
        SuiteRepr::Bare(c) => c,
        SuiteRepr::Wrapped { cases } => cases,
    })
}

pub const DEFAULT_SUITE: &str = include_str!("../suites/default.json");

impl CaseSpec {
    pub fn build(&self) -> Result<RootDatum, RootDataError> {
        let family: Family = self.family.parse()?;
        build_root_datum(family, self.rank, &self.decoration, self.lattice.clone())
    }

    pub fn label(&self) -> String {
        let d: Vec<String> = self.decoration.iter().map(u32::to_string).collect();
        format!("{}{} ({})", self.family, self.rank, d.join(","))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}
