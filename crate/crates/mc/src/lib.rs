//! Monte Carlo cross-checks for exact Haar monomial integrals.
//!
//! O(d) and U(d) are sampled by QR of a Gaussian matrix with the diagonal
//! of `R` normalized to be positive. Sp(2d) is sampled by Gram-Schmidt over
//! column pairs `(v, Jv)` with `J(a; b) = (b*; -a*)`, giving the block form
//! `(z* w; -w* z)`.
//!
//! ```
//! use haar_core::{ExponentSpec, OrthogonalSpec};
//! let spec: ExponentSpec = OrthogonalSpec::from_rows(&[[2]]).unwrap().into();
//! let report = haar_mc::verify(&spec, 3, 20_000, 1).unwrap();
//! assert_eq!(report.symbolic.to_string(), "1/3");
//! ```

mod estimate;
mod sampling;
mod verify;

pub use estimate::{
    default_workers, estimate_monomial, estimate_monomials, estimate_monomials_with, MomentEstimate, SamplerConfig,
    RNG_NAME,
};
pub use sampling::{
    sample_haar_orthogonal, sample_haar_symplectic, sample_haar_unitary, CompiledMonomial, GroupSample,
};
pub use verify::{spec_digest, verify, verify_with, ReportParseError, VerificationReport, VerifyConfig, Z_THRESHOLD};

use haar_core::{ArithError, Group};

#[derive(Debug, thiserror::Error)]
pub enum McError {
    #[error("spec needs dimension {needed} but d = {d}")]
    DimensionMismatch { needed: usize, d: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(u64),
    #[error("{spec} spec sampled with a {config} config")]
    GroupMismatch { spec: Group, config: Group },
    #[error("symbolic result is only valid for d >= {floor}, got d = {d}")]
    BelowValidityFloor { floor: usize, d: usize },
    #[error(transparent)]
    Pole(#[from] ArithError),
    #[error("sample residual {0:e} exceeds tolerance")]
    Residual(f64),
}
