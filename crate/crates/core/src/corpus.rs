//! The bundled fixture corpus and its golden comparison.
//!
//! Each non-comment line of the fixture file reads
//! `polynomial | ring | status | injective | criterion | source`.

use std::fmt;

use thiserror::Error;

use crate::classifier::{classify_in, Injective, Ring, Status, Theorem, Verdict};
use crate::poly::{PolyError, Polynomial};

pub const BUNDLED: &str = include_str!("../fixtures/corpus.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: expected 6 `|`-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: unknown {field} `{value}`")]
    UnknownValue {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: {source}")]
    Polynomial { line: usize, source: PolyError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub line: usize,
    pub polynomial: Polynomial,
    pub text: String,
    pub ring: Ring,
    pub status: Status,
    pub injective: Injective,
    pub theorem: Option<Theorem>,
    pub source: String,
}

pub fn parse_corpus(text: &str) -> Result<Vec<Fixture>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(CorpusError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let unknown = |field, value: &str| CorpusError::UnknownValue {
            line,
            field,
            value: value.to_string(),
        };
        let polynomial = fields[0]
            .parse()
            .map_err(|source| CorpusError::Polynomial { line, source })?;
        let ring = Ring::from_code(fields[1]).ok_or_else(|| unknown("ring", fields[1]))?;
        let status = Status::from_code(fields[2]).ok_or_else(|| unknown("status", fields[2]))?;
        let injective =
            Injective::from_code(fields[3]).ok_or_else(|| unknown("injective flag", fields[3]))?;
        let theorem = match fields[4] {
            "none" => None,
            name => Some(Theorem::from_name(name).ok_or_else(|| unknown("criterion", name))?),
        };
        out.push(Fixture {
            line,
            polynomial,
            text: fields[0].to_string(),
            ring,
            status,
            injective,
            theorem,
            source: fields[5].to_string(),
        });
    }
    Ok(out)
}

pub fn bundled() -> Vec<Fixture> {
    parse_corpus(BUNDLED).expect("bundled corpus is well formed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub fixture: Fixture,
    pub verdict: Verdict,
    /// Human-readable differences from the expectation; empty on a match.
    pub mismatches: Vec<String>,
}

impl FixtureResult {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for FixtureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fx = &self.fixture;
        write!(
            f,
            "line {}: {} [{}]: ",
            fx.line,
            fx.polynomial,
            fx.ring.code()
        )?;
        if self.matches() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.mismatches.join("; "))
        }
    }
}

pub fn check(fixture: &Fixture) -> FixtureResult {
    let verdict = classify_in(&fixture.polynomial, fixture.ring);
    let mut mismatches = Vec::new();
    if verdict.status != fixture.status {
        mismatches.push(format!(
            "status: expected {}, got {}",
            fixture.status.code(),
            verdict.status.code()
        ));
    }
    if verdict.injective != fixture.injective {
        mismatches.push(format!(
            "injective: expected {}, got {}",
            fixture.injective.code(),
            verdict.injective.code()
        ));
    }
    if verdict.theorem() != fixture.theorem {
        mismatches.push(format!(
            "criterion: expected {}, got {}",
            fixture.theorem.map_or("none", Theorem::name),
            verdict.theorem().map_or("none", Theorem::name)
        ));
    }
    FixtureResult {
        fixture: fixture.clone(),
        verdict,
        mismatches,
    }
}

pub fn run(fixtures: &[Fixture]) -> Vec<FixtureResult> {
    fixtures.iter().map(check).collect()
}

/// One line per mismatching fixture.
pub fn diff(results: &[FixtureResult]) -> Vec<String> {
    results
        .iter()
        .filter(|r| !r.matches())
        .map(ToString::to_string)
        .collect()
}
