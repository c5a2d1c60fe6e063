//! Rendering of results.
//!
//! Machine output is one `key=value` per line with exact rational strings,
//! and parses back to the same [`Output`].

use std::fmt::{self, Write as _};
use std::str::FromStr;

use haar_core::{BigRational, Group, RationalFunction};
use haar_mc::VerificationReport;

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub group: Group,
    pub value: RationalFunction,
    pub validity_floor: usize,
    /// Why the integral is zero, when a balance or parity condition fails.
    pub vanishing: Option<String>,
    pub factored: Option<String>,
    pub evaluation: Option<(i64, BigRational)>,
    pub verification: Option<VerificationReport>,
}

/// One reason per group.
pub fn vanishing_reason(group: Group) -> &'static str {
    match group {
        Group::Orthogonal => "odd row or column sum",
        Group::Unitary => "row/column sum mismatch",
        Group::Symplectic => "block row/column sum mismatch",
    }
}

const REPORT_PREFIX: &str = "verify.";

impl Output {
    pub fn render_human(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.value).unwrap();
        if let Some(reason) = &self.vanishing {
            writeln!(s, "reason: {reason}").unwrap();
        }
        if let Some(f) = &self.factored {
            writeln!(s, "factored: {f}").unwrap();
        }
        writeln!(s, "valid for d ≥ {}", self.validity_floor).unwrap();
        if let Some((d, v)) = &self.evaluation {
            writeln!(s, "at d = {d}: {v}").unwrap();
            if (*d as u64) < self.validity_floor as u64 {
                writeln!(s, "note: d = {d} is below the validity floor").unwrap();
            }
        }
        if let Some(r) = &self.verification {
            writeln!(s).unwrap();
            write!(s, "{r}").unwrap();
        }
        s
    }

    pub fn render_machine(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group={}", self.group.name())?;
        writeln!(f, "value={}", self.value)?;
        writeln!(f, "validity_floor={}", self.validity_floor)?;
        if let Some(reason) = &self.vanishing {
            writeln!(f, "vanishing={reason}")?;
        }
        if let Some(fac) = &self.factored {
            writeln!(f, "factored={fac}")?;
        }
        if let Some((d, v)) = &self.evaluation {
            writeln!(f, "eval_d={d}")?;
            writeln!(f, "eval_value={v}")?;
        }
        if let Some(r) = &self.verification {
            for line in r.to_string().lines() {
                writeln!(f, "{REPORT_PREFIX}{line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed output: {0}")]
pub struct OutputParseError(pub String);

fn parse_group(s: &str) -> Result<Group, OutputParseError> {
    match s {
        "orthogonal" => Ok(Group::Orthogonal),
        "unitary" => Ok(Group::Unitary),
        "symplectic" => Ok(Group::Symplectic),
        other => Err(OutputParseError(format!("bad group: {other}"))),
    }
}

impl FromStr for Output {
    type Err = OutputParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut group = None;
        let mut value = None;
        let mut floor = None;
        let mut vanishing = None;
        let mut factored = None;
        let mut eval_d = None;
        let mut eval_value = None;
        let mut report = String::new();
        for line in s.lines() {
            let (k, v) = line.split_once('=').ok_or_else(|| OutputParseError(line.to_string()))?;
            let bad = |what: &str| OutputParseError(format!("bad {what}: {v}"));
            match k {
                "group" => group = Some(parse_group(v)?),
                "value" => value = Some(v.parse::<RationalFunction>().map_err(|_| bad("value"))?),
                "validity_floor" => floor = Some(v.parse::<usize>().map_err(|_| bad("validity_floor"))?),
                "vanishing" => vanishing = Some(v.to_string()),
                "factored" => factored = Some(v.to_string()),
                "eval_d" => eval_d = Some(v.parse::<i64>().map_err(|_| bad("eval_d"))?),
                "eval_value" => eval_value = Some(v.parse::<BigRational>().map_err(|_| bad("eval_value"))?),
                _ if k.starts_with(REPORT_PREFIX) => {
                    report.push_str(&line[REPORT_PREFIX.len()..]);
                    report.push('\n');
                }
                _ => return Err(OutputParseError(format!("unknown key: {k}"))),
            }
        }
        let missing = |k: &str| OutputParseError(format!("missing {k}"));
        let evaluation = match (eval_d, eval_value) {
            (Some(d), Some(v)) => Some((d, v)),
            (None, None) => None,
            _ => return Err(OutputParseError("eval_d and eval_value must appear together".into())),
        };
        let verification = if report.is_empty() {
            None
        } else {
            Some(report.parse::<VerificationReport>().map_err(|e| OutputParseError(e.to_string()))?)
        };
        Ok(Self {
            group: group.ok_or_else(|| missing("group"))?,
            value: value.ok_or_else(|| missing("value"))?,
            validity_floor: floor.ok_or_else(|| missing("validity_floor"))?,
            vanishing,
            factored,
            evaluation,
            verification,
        })
    }
}
