//! Solution files.
//!
//! ```text
//! # optional comments
//! instance = example
//! kind = cfp
//! sequence = 5 3 4 2 1
//! objective = 161
//! ```
//!
//! `kind` is `cfp` (the job at each position, i.e. a tour) or `pfc` (the
//! position of each job). `sequence` may also be split over several lines
//! or use commas. `instance`, `S`, `M`, `L`, `N` and `objective` are
//! optional; claimed costs are only compared, never trusted.

use std::fmt;
use std::str::FromStr;

use ctw_core::{CostBreakdown, Permutation, PermutationError};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Cfp,
    Pfc,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::Cfp => "cfp",
            SequenceKind::Pfc => "pfc",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClaimedCosts {
    pub s: Option<u64>,
    pub m: Option<u64>,
    pub l: Option<u64>,
    pub n: Option<u64>,
    pub objective: Option<u64>,
}

impl ClaimedCosts {
    pub fn is_empty(&self) -> bool {
        *self == ClaimedCosts::default()
    }

    /// Names of the claimed values that differ from `actual`.
    pub fn mismatches(&self, actual: &CostBreakdown) -> Vec<&'static str> {
        [
            ("S", self.s, actual.s),
            ("M", self.m, actual.m),
            ("L", self.l, actual.l),
            ("N", self.n, actual.n),
            ("objective", self.objective, actual.objective),
        ]
        .into_iter()
        .filter(|&(_, claimed, real)| claimed.is_some_and(|c| c != real))
        .map(|(name, _, _)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub instance_id: Option<String>,
    pub kind: SequenceKind,
    pub sequence: Vec<usize>,
    pub claimed: ClaimedCosts,
}

impl SolutionFile {
    pub fn from_permutation(perm: &Permutation, claimed: Option<&CostBreakdown>) -> Self {
        SolutionFile {
            instance_id: None,
            kind: SequenceKind::Cfp,
            sequence: perm.tour(),
            claimed: claimed.map_or_else(ClaimedCosts::default, |c| ClaimedCosts {
                s: Some(c.s),
                m: Some(c.m),
                l: Some(c.l),
                n: Some(c.n),
                objective: Some(c.objective),
            }),
        }
    }

    pub fn to_permutation(&self) -> Result<Permutation, PermutationError> {
        match self.kind {
            SequenceKind::Cfp => Permutation::from_cfp(&self.sequence),
            SequenceKind::Pfc => Permutation::from_pfc(&self.sequence),
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        if let Some(id) = &self.instance_id {
            out += &format!("instance = {id}\n");
        }
        let seq: Vec<String> = self.sequence.iter().map(usize::to_string).collect();
        out += &format!("kind = {}\nsequence = {}\n", self.kind, seq.join(" "));
        for (name, value) in [
            ("S", self.claimed.s),
            ("M", self.claimed.m),
            ("L", self.claimed.l),
            ("N", self.claimed.n),
            ("objective", self.claimed.objective),
        ] {
            if let Some(v) = value {
                out += &format!("{name} = {v}\n");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SolutionError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> SolutionError {
    SolutionError {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, SolutionError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| err(line, format!("`{t}` is not a job number"))))
        .collect()
}

impl FromStr for SolutionFile {
    type Err = SolutionError;

    fn from_str(text: &str) -> Result<Self, SolutionError> {
        parse_solution(text)
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, SolutionError> {
    let mut instance_id = None;
    let mut kind = None;
    let mut sequence: Option<Vec<usize>> = None;
    let mut claimed = ClaimedCosts::default();
    let mut in_sequence = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            // Continuation of a multi-line sequence.
            if in_sequence {
                sequence.as_mut().expect("set when in_sequence").extend(numbers(line, body)?);
                continue;
            }
            return Err(err(line, "expected `key = value`"));
        };
        in_sequence = false;
        let (key, value) = (key.trim(), value.trim());
        let once = |present: bool| {
            if present {
                Err(err(line, format!("`{key}` given twice")))
            } else {
                Ok(())
            }
        };
        let cost = |slot: Option<u64>| -> Result<Option<u64>, SolutionError> {
            once(slot.is_some())?;
            value
                .parse()
                .map(Some)
                .map_err(|_| err(line, format!("`{value}` is not a non-negative integer")))
        };
        match key {
            "instance" => {
                once(instance_id.is_some())?;
                instance_id = Some(value.to_string());
            }
            "kind" => {
                once(kind.is_some())?;
                kind = Some(match value {
                    "cfp" | "tour" => SequenceKind::Cfp,
                    "pfc" => SequenceKind::Pfc,
                    other => return Err(err(line, format!("unknown kind `{other}`, expected cfp or pfc"))),
                });
            }
            "sequence" => {
                once(sequence.is_some())?;
                sequence = Some(numbers(line, value)?);
                in_sequence = true;
            }
            "S" => claimed.s = cost(claimed.s)?,
            "M" => claimed.m = cost(claimed.m)?,
            "L" => claimed.l = cost(claimed.l)?,
            "N" => claimed.n = cost(claimed.n)?,
            "objective" => claimed.objective = cost(claimed.objective)?,
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    Ok(SolutionFile {
        instance_id,
        kind: kind.ok_or_else(|| err(last, "missing `kind`"))?,
        sequence: sequence.ok_or_else(|| err(last, "missing `sequence`"))?,
        claimed,
    })
}
