//! Flag and input-document parsing.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use haar_core::{ExponentMatrix, ExponentSpec, Group, OrthogonalSpec, SymplecticSpec, UnitarySpec};

use crate::CliError;

/// Samples drawn by `--verify` when `--samples` is absent.
pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupArg {
    Orthogonal,
    Unitary,
    Symplectic,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Orthogonal => Group::Orthogonal,
            GroupArg::Unitary => Group::Unitary,
            GroupArg::Symplectic => Group::Symplectic,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Human,
    Machine,
}

/// Exact Haar averages of monomials in the entries of O(d), U(d) and Sp(2d).
///
/// Matrix literals are nested brackets of non-negative integers, such as
/// "[[2,0],[0,2]]". Symplectic monomials take the four blocks: --m for w,
/// --mp for z, --n for w* and --np for z*.
#[derive(Debug, Parser)]
#[command(name = "haar", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
    /// Exponents of w.
    #[arg(long, value_name = "MATRIX")]
    pub m: Option<String>,
    /// Exponents of w* (unitary, symplectic).
    #[arg(long, value_name = "MATRIX")]
    pub n: Option<String>,
    /// Exponents of z (symplectic).
    #[arg(long, value_name = "MATRIX")]
    pub mp: Option<String>,
    /// Exponents of z* (symplectic).
    #[arg(long, value_name = "MATRIX")]
    pub np: Option<String>,
    /// JSON document with any of the fields above; flags take precedence.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Evaluate the result at this dimension.
    #[arg(long = "eval-at", value_name = "D")]
    pub eval_at: Option<i64>,
    /// Compare with a Monte Carlo estimate at this dimension.
    #[arg(long, value_name = "D")]
    pub verify: Option<i64>,
    /// Monte Carlo sample count [default: 100000]
    #[arg(long, value_name = "N")]
    pub samples: Option<u64>,
    /// Sampler seed [default: 0]
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,
    /// Sampling threads; defaults to the available parallelism, capped at 8.
    #[arg(long, value_name = "K")]
    pub workers: Option<usize>,
    /// Also print the result with factored numerator and denominator.
    #[arg(long)]
    pub factored: bool,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MatrixField {
    Rows(Vec<Vec<u32>>),
    Literal(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct InputDocument {
    group: Option<GroupArg>,
    m: Option<MatrixField>,
    n: Option<MatrixField>,
    mp: Option<MatrixField>,
    np: Option<MatrixField>,
    eval_at: Option<i64>,
    verify: Option<i64>,
    samples: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    factored: Option<bool>,
    output: Option<OutputFormat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRequest {
    pub d: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub spec: ExponentSpec,
    pub eval_at: Option<i64>,
    pub verify: Option<VerifyRequest>,
    pub factored: bool,
    pub output: OutputFormat,
}

/// Parses a matrix literal such as `[[1, 0], [0, 1]]`.
pub fn parse_matrix(flag: &str, text: &str) -> Result<ExponentMatrix, CliError> {
    let rows: Vec<Vec<u32>> = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("--{flag}: expected rows of non-negative integers like [[1,0],[0,2]] ({e})")))?;
    matrix_from_rows(flag, &rows)
}

fn matrix_from_rows(flag: &str, rows: &[Vec<u32>]) -> Result<ExponentMatrix, CliError> {
    ExponentMatrix::from_rows(rows).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn resolve_matrix(flag: &str, cli: Option<&String>, doc: Option<MatrixField>) -> Result<Option<ExponentMatrix>, CliError> {
    if let Some(text) = cli {
        return parse_matrix(flag, text).map(Some);
    }
    match doc {
        None => Ok(None),
        Some(MatrixField::Literal(text)) => parse_matrix(flag, &text).map(Some),
        Some(MatrixField::Rows(rows)) => matrix_from_rows(flag, &rows).map(Some),
    }
}

fn positive_dimension(flag: &str, d: i64) -> Result<i64, CliError> {
    if d < 1 {
        return Err(CliError::Usage(format!("--{flag}: dimension must be at least 1, got {d}")));
    }
    Ok(d)
}

impl Request {
    /// Merges flags over the optional input document and validates.
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let doc = match &args.input {
            None => InputDocument::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("--input: cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--input: {e}")))?
            }
        };
        let group: Group = args
            .group
            .or(doc.group)
            .ok_or_else(|| CliError::Usage("--group: required (orthogonal, unitary or symplectic)".into()))?
            .into();
        let m = resolve_matrix("m", args.m.as_ref(), doc.m)?;
        let n = resolve_matrix("n", args.n.as_ref(), doc.n)?;
        let mp = resolve_matrix("mp", args.mp.as_ref(), doc.mp)?;
        let np = resolve_matrix("np", args.np.as_ref(), doc.np)?;
        let spec = build_spec(group, m, n, mp, np)?;

        let eval_at = args.eval_at.or(doc.eval_at).map(|d| positive_dimension("eval-at", d)).transpose()?;
        let samples = args.samples.or(doc.samples);
        let seed = args.seed.or(doc.seed);
        let workers = args.workers.or(doc.workers);
        let verify = match args.verify.or(doc.verify) {
            Some(d) => Some(VerifyRequest {
                d: positive_dimension("verify", d)? as usize,
                samples: samples.unwrap_or(DEFAULT_SAMPLES),
                seed: seed.unwrap_or(0),
                workers,
            }),
            None => {
                for (flag, set) in [("samples", samples.is_some()), ("seed", seed.is_some()), ("workers", workers.is_some())] {
                    if set {
                        return Err(CliError::Usage(format!("--{flag}: only meaningful with --verify")));
                    }
                }
                None
            }
        };
        if let Some(v) = &verify {
            if v.samples < 2 {
                return Err(CliError::Usage(format!("--samples: need at least 2, got {}", v.samples)));
            }
            if v.workers == Some(0) {
                return Err(CliError::Usage("--workers: need at least 1".into()));
            }
        }
        Ok(Self {
            spec,
            eval_at,
            verify,
            factored: args.factored || doc.factored.unwrap_or(false),
            output: args.output.or(doc.output).unwrap_or_default(),
        })
    }

    /// Parses `argv` (including the program name).
    pub fn parse_from<I, T>(argv: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(argv).map_err(CliError::Clap)?;
        Self::from_args(args)
    }
}

fn reject(flag: &str, group: Group, block: Option<ExponentMatrix>) -> Result<(), CliError> {
    if block.is_some() {
        return Err(CliError::Usage(format!("--{flag}: not used by {group} integrals")));
    }
    Ok(())
}

fn build_spec(
    group: Group,
    m: Option<ExponentMatrix>,
    n: Option<ExponentMatrix>,
    mp: Option<ExponentMatrix>,
    np: Option<ExponentMatrix>,
) -> Result<ExponentSpec, CliError> {
    match group {
        Group::Orthogonal => {
            reject("n", group, n)?;
            reject("mp", group, mp)?;
            reject("np", group, np)?;
            let m = m.ok_or_else(|| CliError::Usage("--m: required".into()))?;
            Ok(OrthogonalSpec::new(m).into())
        }
        Group::Unitary => {
            reject("mp", group, mp)?;
            reject("np", group, np)?;
            match (m, n) {
                (None, None) => Err(CliError::Usage("--m: at least one of --m and --n is required".into())),
                (m, n) => {
                    let shape = m.as_ref().or(n.as_ref()).map(ExponentMatrix::shape).unwrap();
                    let zero = || ExponentMatrix::zeros(shape.0, shape.1);
                    Ok(UnitarySpec::new(m.unwrap_or_else(zero), n.unwrap_or_else(zero)).into())
                }
            }
        }
        Group::Symplectic => {
            let blocks = [m, mp, n, np];
            let shape = blocks
                .iter()
                .flatten()
                .map(ExponentMatrix::shape)
                .next()
                .ok_or_else(|| CliError::Usage("--m: at least one of --m, --mp, --n, --np is required".into()))?;
            let [m, mp, n, np] = blocks.map(|b| b.unwrap_or_else(|| ExponentMatrix::zeros(shape.0, shape.1)));
            SymplecticSpec::new(m, mp, n, np)
                .map(Into::into)
                .map_err(|e| CliError::DimensionMismatch(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Request, CliError> {
        Request::parse_from(std::iter::once("haar").chain(args.iter().copied()))
    }

    #[test]
    fn orthogonal_symbolic_only() {
        let r = parse(&["--group", "orthogonal", "--m", "[[2,0],[0,2]]"]).unwrap();
        assert_eq!(r.spec, OrthogonalSpec::from_rows(&[[2, 0], [0, 2]]).unwrap().into());
        assert_eq!((r.eval_at, r.verify, r.factored, r.output), (None, None, false, OutputFormat::Human));
    }

    #[test]
    fn unitary_with_evaluation() {
        let r = parse(&["--group", "unitary", "--m", "[[1]]", "--n", "[[1]]", "--eval-at", "4"]).unwrap();
        assert_eq!(r.eval_at, Some(4));
    }

    #[test]
    fn whitespace_is_ignored() {
        let r = parse(&["--group", "orthogonal", "--m", " [ [2 , 0 ],\n[0,2] ] "]).unwrap();
        assert_eq!(r.spec, OrthogonalSpec::from_rows(&[[2, 0], [0, 2]]).unwrap().into());
    }

    #[test]
    fn symplectic_shape_mismatch() {
        let err = parse(&["--group", "symplectic", "--m", "[[1,0],[0,1]]", "--mp", "[[0,0,0],[0,0,0],[0,0,0]]"]).unwrap_err();
        assert!(matches!(err, CliError::DimensionMismatch(_)), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn usage_errors_name_the_flag() {
        for (args, flag) in [
            (&["--group", "orthogonal", "--m", "[[1,-1]]"][..], "--m"),
            (&["--group", "orthogonal", "--m", "[[1],[1,2]]"][..], "--m"),
            (&["--group", "orthogonal", "--m", "[[2]]", "--n", "[[1]]"][..], "--n"),
            (&["--m", "[[2]]"][..], "--group"),
            (&["--group", "orthogonal", "--m", "[[2]]", "--eval-at", "0"][..], "--eval-at"),
            (&["--group", "orthogonal", "--m", "[[2]]", "--seed", "3"][..], "--seed"),
        ] {
            let err = parse(args).unwrap_err();
            assert!(err.to_string().contains(flag), "{args:?}: {err}");
            assert_eq!(err.exit_code(), 1);
        }
    }

    #[test]
    fn input_document_with_flag_override() {
        let dir = std::env::temp_dir().join(format!("haar-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("req.json");
        std::fs::write(&path, r#"{"group": "unitary", "m": [[1, 0], [0, 1]], "n": "[[0,1],[1,0]]", "eval-at": 3}"#).unwrap();
        let r = parse(&["--input", path.to_str().unwrap(), "--eval-at", "5"]).unwrap();
        assert_eq!(r.spec, UnitarySpec::from_rows(&[[1, 0], [0, 1]], &[[0, 1], [1, 0]]).unwrap().into());
        assert_eq!(r.eval_at, Some(5));
        std::fs::write(&path, r#"{"group": "unitary", "bogus": 1}"#).unwrap();
        assert!(parse(&["--input", path.to_str().unwrap()]).unwrap_err().to_string().contains("--input"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn verify_defaults() {
        let r = parse(&["--group", "orthogonal", "--m", "[[2]]", "--verify", "3"]).unwrap();
        assert_eq!(r.verify, Some(VerifyRequest { d: 3, samples: DEFAULT_SAMPLES, seed: 0, workers: None }));
    }
}
