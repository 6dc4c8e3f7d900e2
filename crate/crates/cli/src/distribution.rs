//! JSON form of a cumulant table:
//! `{"trunc": N, "kappa": [{"n": 1, "m": 1, "value": "3/2"}, ...]}`.
//! Entries that are not listed are 0 and `κ_{0,0}` is always 1.

use std::collections::BTreeMap;
use std::path::Path;

use bifree_core::bicum::PairDistribution;
use bifree_core::scalar::parse_rational;
use bifree_core::series::Series2;
use bifree_core::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct DistributionFile {
    trunc: usize,
    #[serde(default)]
    kappa: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    n: usize,
    m: usize,
    value: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Value {
    Text(String),
    Integer(i64),
}

pub fn parse(text: &str) -> Result<PairDistribution, CliError> {
    let file: DistributionFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("distribution JSON: {e}")))?;
    let mut values = BTreeMap::new();
    for entry in file.kappa {
        if entry.n + entry.m > file.trunc {
            return Err(CliError::Input(format!(
                "entry κ_{{{},{}}} lies beyond trunc {}",
                entry.n, entry.m, file.trunc
            )));
        }
        let value = match entry.value {
            Value::Text(s) => parse_rational(&s)?,
            Value::Integer(k) => Rational::from_integer(k.into()),
        };
        if values.insert((entry.n, entry.m), value).is_some() {
            return Err(CliError::Input(format!(
                "entry κ_{{{},{}}} given twice",
                entry.n, entry.m
            )));
        }
    }
    Ok(PairDistribution::from_fn(file.trunc, |n, m| {
        values.remove(&(n, m)).unwrap_or_default()
    }))
}

pub fn read(path: &Path) -> Result<PairDistribution, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

#[derive(Debug, Serialize)]
pub struct Coefficient {
    pub n: usize,
    pub m: usize,
    pub value: String,
}

/// Nonzero coefficients in graded order.
pub fn coefficients(s: &Series2) -> Vec<Coefficient> {
    let mut out: Vec<_> = s
        .terms()
        .filter(|(_, _, c)| **c != Rational::default())
        .map(|(n, m, c)| Coefficient {
            n,
            m,
            value: c.to_string(),
        })
        .collect();
    out.sort_by_key(|c| (c.n + c.m, std::cmp::Reverse(c.n)));
    out
}
