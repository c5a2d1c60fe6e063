//! Symbolic-versus-Monte-Carlo comparison and its text report.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use haar_core::arith::to_f64;
use haar_core::{integrate, BigRational, ExponentSpec, Group, MemoKey};

use crate::estimate::{default_workers, estimate_monomial, SamplerConfig, RNG_NAME};
use crate::McError;

/// Largest admissible `|z|`.
pub const Z_THRESHOLD: f64 = 4.0;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub d: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl VerifyConfig {
    pub fn new(d: usize, samples: u64, seed: u64) -> Self {
        Self { d, samples, seed, workers: default_workers() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub group: Group,
    /// First 8 bytes of SHA-256 over the spec's binary encoding, as hex.
    pub spec_digest: String,
    pub d: usize,
    pub samples: u64,
    pub seed: u64,
    pub rng: String,
    pub workers: usize,
    pub symbolic: BigRational,
    pub mean: Complex64,
    pub std_error: f64,
    pub std_error_imag: f64,
    pub z: f64,
    pub z_imag: f64,
    pub pass: bool,
}

/// Hex digest identifying `spec` in reports.
pub fn spec_digest(spec: &ExponentSpec) -> String {
    let hash = Sha256::digest(MemoKey::of(spec).as_bytes());
    hash[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn z_score(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / se
    }
}

/// Verification with [`default_workers`].
pub fn verify(spec: &ExponentSpec, d: usize, samples: u64, seed: u64) -> Result<VerificationReport, McError> {
    verify_with(spec, &VerifyConfig::new(d, samples, seed))
}

/// Evaluates the symbolic integral at `d`, estimates it by sampling, and
/// scores the difference.
pub fn verify_with(spec: &ExponentSpec, config: &VerifyConfig) -> Result<VerificationReport, McError> {
    let result = integrate(spec);
    if config.d < result.validity_floor {
        return Err(McError::BelowValidityFloor { floor: result.validity_floor, d: config.d });
    }
    let symbolic = result.value.evaluate_at(config.d as i64)?;
    let sampler = SamplerConfig {
        group: spec.group(),
        d: config.d,
        seed: config.seed,
        samples: config.samples,
        workers: config.workers,
    };
    let est = estimate_monomial(spec, &sampler)?;
    let exact = to_f64(&symbolic);
    let z = z_score(est.mean.re - exact, est.std_error);
    let z_imag = z_score(est.mean.im, est.std_error_imag);
    let both_zero = exact == 0.0 && est.mean.re == 0.0;
    let pass = (z.abs() <= Z_THRESHOLD || both_zero) && z_imag.abs() <= Z_THRESHOLD;
    Ok(VerificationReport {
        group: spec.group(),
        spec_digest: spec_digest(spec),
        d: config.d,
        samples: est.samples,
        seed: config.seed,
        rng: RNG_NAME.to_string(),
        workers: sampler.workers.max(1).min(config.samples as usize),
        symbolic,
        mean: est.mean,
        std_error: est.std_error,
        std_error_imag: est.std_error_imag,
        z,
        z_imag,
        pass,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group={}", self.group.name())?;
        writeln!(f, "spec={}", self.spec_digest)?;
        writeln!(f, "d={}", self.d)?;
        writeln!(f, "samples={}", self.samples)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "rng={}", self.rng)?;
        writeln!(f, "workers={}", self.workers)?;
        writeln!(f, "symbolic={}", self.symbolic)?;
        writeln!(f, "mean={:?}", self.mean.re)?;
        writeln!(f, "mean_imag={:?}", self.mean.im)?;
        writeln!(f, "std_error={:?}", self.std_error)?;
        writeln!(f, "std_error_imag={:?}", self.std_error_imag)?;
        writeln!(f, "z={:?}", self.z)?;
        writeln!(f, "z_imag={:?}", self.z_imag)?;
        writeln!(f, "result={}", if self.pass { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed report: {0}")]
pub struct ReportParseError(pub String);

impl FromStr for VerificationReport {
    type Err = ReportParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut fields = std::collections::HashMap::new();
        for line in s.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| ReportParseError(line.to_string()))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| ReportParseError(format!("missing {k}")));
        fn num<T: FromStr>(k: &str, v: &str) -> Result<T, ReportParseError> {
            v.parse().map_err(|_| ReportParseError(format!("bad {k}: {v}")))
        }
        let group = match get("group")? {
            "orthogonal" => Group::Orthogonal,
            "unitary" => Group::Unitary,
            "symplectic" => Group::Symplectic,
            other => return Err(ReportParseError(format!("bad group: {other}"))),
        };
        let pass = match get("result")? {
            "PASS" => true,
            "FAIL" => false,
            other => return Err(ReportParseError(format!("bad result: {other}"))),
        };
        Ok(Self {
            group,
            spec_digest: get("spec")?.to_string(),
            d: num("d", get("d")?)?,
            samples: num("samples", get("samples")?)?,
            seed: num("seed", get("seed")?)?,
            rng: get("rng")?.to_string(),
            workers: num("workers", get("workers")?)?,
            symbolic: num("symbolic", get("symbolic")?)?,
            mean: Complex64::new(num("mean", get("mean")?)?, num("mean_imag", get("mean_imag")?)?),
            std_error: num("std_error", get("std_error")?)?,
            std_error_imag: num("std_error_imag", get("std_error_imag")?)?,
            z: num("z", get("z")?)?,
            z_imag: num("z_imag", get("z_imag")?)?,
            pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use haar_core::{OrthogonalSpec, UnitarySpec};

    #[test]
    fn orthogonal_second_moment_passes() {
        let spec: ExponentSpec = OrthogonalSpec::from_rows(&[[2]]).unwrap().into();
        let r = verify(&spec, 3, 100_000, 42).unwrap();
        assert_eq!(r.symbolic.to_string(), "1/3");
        assert!(r.pass, "{r}");
    }

    #[test]
    fn unitary_cross_moment_passes() {
        let spec: ExponentSpec = UnitarySpec::from_rows(&[[1, 0], [0, 1]], &[[0, 1], [1, 0]]).unwrap().into();
        let r = verify(&spec, 3, 1_000_000, 7).unwrap();
        assert_eq!(r.symbolic.to_string(), "-1/24");
        assert!(r.pass, "{r}");
    }

    #[test]
    fn tiny_sample_still_reports() {
        let spec: ExponentSpec = OrthogonalSpec::from_rows(&[[2]]).unwrap().into();
        let r = verify(&spec, 50, 4, 1).unwrap();
        assert_eq!(r.pass, r.z.abs() <= Z_THRESHOLD && r.z_imag.abs() <= Z_THRESHOLD);
    }

    #[test]
    fn report_round_trips() {
        let spec: ExponentSpec = OrthogonalSpec::from_rows(&[[2, 0], [0, 2]]).unwrap().into();
        let r = verify_with(&spec, &VerifyConfig::new(3, 2000, 9).with_workers(2)).unwrap();
        let text = r.to_string();
        let back: VerificationReport = text.parse().unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn below_floor_is_rejected() {
        let spec: ExponentSpec = OrthogonalSpec::from_rows(&[[1, 1], [1, 1]]).unwrap().into();
        assert!(matches!(verify(&spec, 1, 100, 0), Err(McError::BelowValidityFloor { floor: 2, d: 1 })));
    }
}
