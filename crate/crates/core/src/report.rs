//! Line-oriented `key=value` serialization of distance reports and
//! scenarios.
//!
//! Every record starts with `format=1` and `type=<kind>`. Arrays are written
//! as `name.len=N` followed by `name[k].field=value` lines in index order.
//! Genomes are written in cycle notation.
//!
//! ```text
//! format=1
//! type=distance
//! total=3
//! lt=5
//! nc=1
//! components.len=2
//! components[0].id=0
//! components[0].min=1
//! components[0].size=6
//! components[0].kind=conjugate
//! components[0].distance=2
//! ...
//! ```
//!
//! A scenario has `n`, `origin`, `steps.len` and per step `i`, `j`, `mode`
//! and `genome`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dcj::{
    ComponentDistance, ComponentKind, DcjMode, DcjOperation, DistanceReport, Scenario, ScenarioStep,
};
use crate::genome::Genome;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("line {0}: expected key=value")]
    Syntax(usize),
    #[error("unsupported format version {0:?}")]
    Version(String),
    #[error("expected record type {expected}, found {found:?}")]
    Kind {
        expected: &'static str,
        found: String,
    },
    #[error("missing key {0}")]
    Missing(String),
    #[error("bad value for {key}: {value:?}")]
    Value { key: String, value: String },
}

/// An ordered list of `key=value` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        let mut r = Record {
            entries: Vec::new(),
        };
        r.push("format", FORMAT_VERSION).push("type", kind);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn kind(&self) -> Option<&str> {
        self.get("type")
    }

    fn require(&self, key: &str) -> Result<&str, ReportError> {
        self.get(key)
            .ok_or_else(|| ReportError::Missing(key.to_string()))
    }

    fn value<T: FromStr>(&self, key: &str) -> Result<T, ReportError> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| ReportError::Value {
            key: key.to_string(),
            value: raw.to_string(),
        })
    }

    fn expect_kind(&self, expected: &'static str) -> Result<(), ReportError> {
        match self.kind() {
            Some(k) if k == expected => Ok(()),
            other => Err(ReportError::Kind {
                expected,
                found: other.unwrap_or("").to_string(),
            }),
        }
    }

    /// Parses and checks the format header. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut entries = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ReportError::Syntax(k + 1))?;
            entries.push((key.trim().to_string(), value.trim().to_string()));
        }
        let r = Record { entries };
        let version = r.require("format")?;
        if version != FORMAT_VERSION.to_string() {
            return Err(ReportError::Version(version.to_string()));
        }
        Ok(r)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn distance_record(r: &DistanceReport) -> Record {
    let mut rec = Record::new("distance");
    rec.push("total", r.total)
        .push("lt", r.lt)
        .push("nc", r.nc)
        .push("components.len", r.components.len());
    for (k, c) in r.components.iter().enumerate() {
        rec.push(format!("components[{k}].id"), c.id)
            .push(format!("components[{k}].min"), c.min_point)
            .push(format!("components[{k}].size"), c.size)
            .push(format!("components[{k}].kind"), c.kind)
            .push(format!("components[{k}].distance"), c.distance);
    }
    rec
}

pub fn distance_from_record(rec: &Record) -> Result<DistanceReport, ReportError> {
    rec.expect_kind("distance")?;
    let len: usize = rec.value("components.len")?;
    let components = (0..len)
        .map(|k| {
            let key = format!("components[{k}].kind");
            let raw = rec.require(&key)?;
            let kind = ComponentKind::parse(raw).ok_or_else(|| ReportError::Value {
                key: key.clone(),
                value: raw.to_string(),
            })?;
            Ok(ComponentDistance {
                id: rec.value(&format!("components[{k}].id"))?,
                min_point: rec.value(&format!("components[{k}].min"))?,
                size: rec.value(&format!("components[{k}].size"))?,
                kind,
                distance: rec.value(&format!("components[{k}].distance"))?,
            })
        })
        .collect::<Result<_, ReportError>>()?;
    Ok(DistanceReport {
        total: rec.value("total")?,
        lt: rec.value("lt")?,
        nc: rec.value("nc")?,
        components,
    })
}

pub fn scenario_record(s: &Scenario) -> Record {
    let mut rec = Record::new("scenario");
    rec.push("n", s.origin().n())
        .push("origin", s.origin())
        .push("steps.len", s.len());
    for (k, step) in s.steps().iter().enumerate() {
        rec.push(format!("steps[{k}].i"), step.op.i)
            .push(format!("steps[{k}].j"), step.op.j)
            .push(format!("steps[{k}].mode"), step.op.mode)
            .push(format!("steps[{k}].genome"), &step.genome);
    }
    rec
}

/// Rebuilds a scenario as written; use [`Scenario::replays`] to check it.
pub fn scenario_from_record(rec: &Record) -> Result<Scenario, ReportError> {
    rec.expect_kind("scenario")?;
    let n: usize = rec.value("n")?;
    let genome = |key: &str| {
        let raw = rec.require(key)?;
        Genome::parse(raw, n).map_err(|_| ReportError::Value {
            key: key.to_string(),
            value: raw.to_string(),
        })
    };
    let origin = genome("origin")?;
    let len: usize = rec.value("steps.len")?;
    let steps = (0..len)
        .map(|k| {
            let key = format!("steps[{k}].mode");
            let raw = rec.require(&key)?;
            let mode = DcjMode::parse(raw).ok_or_else(|| ReportError::Value {
                key: key.clone(),
                value: raw.to_string(),
            })?;
            Ok(ScenarioStep {
                op: DcjOperation {
                    i: rec.value(&format!("steps[{k}].i"))?,
                    j: rec.value(&format!("steps[{k}].j"))?,
                    mode,
                },
                genome: genome(&format!("steps[{k}].genome"))?,
            })
        })
        .collect::<Result<_, ReportError>>()?;
    Ok(Scenario::from_parts(origin, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcj::{distance, optimal_scenario};

    fn pair() -> (Genome, Genome) {
        (
            Genome::parse("(1,6)(2,3)(4,5)(7,8)", 4).unwrap(),
            Genome::parse("(1,2)(3,4)(5,6)", 4).unwrap(),
        )
    }

    #[test]
    fn distance_round_trip() {
        let (a, b) = pair();
        let r = distance(&a, &b).unwrap();
        let text = distance_record(&r).to_string();
        assert!(
            text.starts_with("format=1\ntype=distance\ntotal=3\nlt=5\nnc=1\ncomponents.len=2\n")
        );
        assert!(text.contains("components[1].kind=non_conjugate\n"));
        let back = distance_from_record(&Record::parse(&text).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn scenario_round_trip() {
        let (a, b) = pair();
        let s = optimal_scenario(&a, &b).unwrap();
        let text = scenario_record(&s).to_string();
        assert!(text.contains("steps.len=3\n"));
        let back = scenario_from_record(&Record::parse(&text).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(back.replays());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Record::parse("format=1\nnonsense"),
            Err(ReportError::Syntax(2))
        );
        assert_eq!(
            Record::parse("format=2\n"),
            Err(ReportError::Version("2".into()))
        );
        assert_eq!(
            Record::parse("type=x\n"),
            Err(ReportError::Missing("format".into()))
        );
        let rec = Record::parse("format=1\ntype=scenario\n").unwrap();
        assert!(matches!(
            distance_from_record(&rec),
            Err(ReportError::Kind { .. })
        ));
        let rec = Record::parse("format=1\ntype=distance\ntotal=x\nlt=0\nnc=0\ncomponents.len=0\n")
            .unwrap();
        assert!(matches!(
            distance_from_record(&rec),
            Err(ReportError::Value { .. })
        ));
    }
}
