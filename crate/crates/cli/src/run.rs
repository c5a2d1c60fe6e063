//! Executes a [`Request`].

use haar_core::monomial::vanishes_trivially;
use haar_core::integrate;
use haar_mc::{verify_with, McError, VerifyConfig};

use crate::output::{vanishing_reason, Output};
use crate::request::{OutputFormat, Request};
use crate::CliError;

/// Rendered streams and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code for a failed Monte Carlo comparison.
pub const EXIT_VERIFY_FAIL: i32 = 3;

fn compute(req: &Request) -> (Output, Option<CliError>) {
    let result = integrate(&req.spec);
    let group = req.spec.group();
    let mut out = Output {
        group,
        vanishing: (result.value.is_zero() && vanishes_trivially(&req.spec))
            .then(|| vanishing_reason(group).to_string()),
        factored: req.factored.then(|| result.value.to_factored_string()),
        validity_floor: result.validity_floor.max(1),
        value: result.value,
        evaluation: None,
        verification: None,
    };
    if let Some(d) = req.eval_at {
        match out.value.evaluate_at(d) {
            Ok(v) => out.evaluation = Some((d, v)),
            Err(e) => return (out, Some(CliError::Pole(e))),
        }
    }
    if let Some(v) = &req.verify {
        let mut cfg = VerifyConfig::new(v.d, v.samples, v.seed);
        if let Some(w) = v.workers {
            cfg = cfg.with_workers(w);
        }
        match verify_with(&req.spec, &cfg) {
            Ok(report) => out.verification = Some(report),
            Err(McError::Pole(e)) => return (out, Some(CliError::Pole(e))),
            Err(e) => return (out, Some(CliError::Mc(e))),
        }
    }
    (out, None)
}

pub fn run(req: &Request) -> Outcome {
    let (out, err) = compute(req);
    let stdout = match req.output {
        OutputFormat::Human => out.render_human(),
        OutputFormat::Machine => out.render_machine(),
    };
    if let Some(e) = err {
        return Outcome { stdout, stderr: format!("error: {e}\n"), code: e.exit_code() };
    }
    let failed = out.verification.as_ref().is_some_and(|r| !r.pass);
    Outcome { stdout, stderr: String::new(), code: if failed { EXIT_VERIFY_FAIL } else { 0 } }
}

/// Parses `argv` and runs it.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Request::parse_from(argv) {
        Ok(req) => run(&req),
        Err(CliError::Clap(e)) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pole(_) | CliError::Mc(McError::Pole(_)) => 2,
            _ => 1,
        }
    }
}

