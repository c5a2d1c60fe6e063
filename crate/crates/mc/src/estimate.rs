//! Moment estimation over independent Haar draws.
//!
//! Samples are split across workers. Worker `k` draws from ChaCha20 seeded
//! with `seed` on stream `k`, and partial statistics are merged in worker
//! order, so an estimate depends only on `(seed, samples, workers)`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use haar_core::{ExponentSpec, Group};

use crate::sampling::{CompiledMonomial, GroupSample};
use crate::McError;

/// Name of the generator, as recorded in reports.
pub const RNG_NAME: &str = "ChaCha20";

/// Every this many draws a worker checks the sample residual.
const RESIDUAL_STRIDE: u64 = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub group: Group,
    pub d: usize,
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
}

impl SamplerConfig {
    /// Uses [`default_workers`].
    pub fn new(group: Group, d: usize, seed: u64, samples: u64) -> Self {
        Self { group, d, seed, samples, workers: default_workers() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// Available parallelism capped at 8.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: Complex64,
    /// Standard error of the real part.
    pub std_error: f64,
    pub std_error_imag: f64,
    pub samples: u64,
}

/// Running mean and second central moment, real and imaginary parts kept
/// separately.
#[derive(Clone, Copy, Debug, Default)]
struct Welford {
    n: u64,
    mean_re: f64,
    m2_re: f64,
    mean_im: f64,
    m2_im: f64,
}

impl Welford {
    fn push(&mut self, x: Complex64) {
        self.n += 1;
        let n = self.n as f64;
        let dr = x.re - self.mean_re;
        self.mean_re += dr / n;
        self.m2_re += dr * (x.re - self.mean_re);
        let di = x.im - self.mean_im;
        self.mean_im += di / n;
        self.m2_im += di * (x.im - self.mean_im);
    }

    fn merge(&mut self, other: &Welford) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let dr = other.mean_re - self.mean_re;
        let di = other.mean_im - self.mean_im;
        self.mean_re += dr * nb / n;
        self.mean_im += di * nb / n;
        self.m2_re += other.m2_re + dr * dr * na * nb / n;
        self.m2_im += other.m2_im + di * di * na * nb / n;
        self.n += other.n;
    }

    fn finish(&self) -> MomentEstimate {
        let n = self.n as f64;
        let se = |m2: f64| (m2.max(0.0) / (n - 1.0)).sqrt() / n.sqrt();
        MomentEstimate {
            mean: Complex64::new(self.mean_re, self.mean_im),
            std_error: se(self.m2_re),
            std_error_imag: se(self.m2_im),
            samples: self.n,
        }
    }
}

fn check_config(specs: &[ExponentSpec], config: &SamplerConfig) -> Result<(), McError> {
    if config.d == 0 {
        return Err(McError::ZeroDimension);
    }
    if config.samples < 2 {
        return Err(McError::TooFewSamples(config.samples));
    }
    for spec in specs {
        if spec.group() != config.group {
            return Err(McError::GroupMismatch { spec: spec.group(), config: config.group });
        }
        let (rows, cols) = spec.occupied_extent();
        let needed = rows.max(cols);
        if needed > config.d {
            return Err(McError::DimensionMismatch { needed, d: config.d });
        }
    }
    Ok(())
}

/// Haar average of one monomial.
pub fn estimate_monomial(spec: &ExponentSpec, config: &SamplerConfig) -> Result<MomentEstimate, McError> {
    Ok(estimate_monomials(std::slice::from_ref(spec), config)?.remove(0))
}

/// Haar averages of several monomials of one group, all evaluated on the
/// same draws.
pub fn estimate_monomials(specs: &[ExponentSpec], config: &SamplerConfig) -> Result<Vec<MomentEstimate>, McError> {
    estimate_monomials_with(specs, config, |s| s)
}

/// As [`estimate_monomials`], with `transform` applied to every draw before
/// evaluation.
pub fn estimate_monomials_with<F>(
    specs: &[ExponentSpec],
    config: &SamplerConfig,
    transform: F,
) -> Result<Vec<MomentEstimate>, McError>
where
    F: Fn(GroupSample) -> GroupSample + Sync,
{
    check_config(specs, config)?;
    let compiled: Vec<CompiledMonomial> = specs.iter().map(CompiledMonomial::new).collect();
    let workers = config.workers.max(1).min(config.samples as usize);
    let base = config.samples / workers as u64;
    let extra = config.samples % workers as u64;

    let partials: Vec<Result<Vec<Welford>, McError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let count = base + u64::from((k as u64) < extra);
                let compiled = &compiled;
                let transform = &transform;
                scope.spawn(move || {
                    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
                    rng.set_stream(k as u64);
                    let mut acc = vec![Welford::default(); compiled.len()];
                    for i in 0..count {
                        let sample = transform(GroupSample::draw(config.group, config.d, &mut rng));
                        if i % RESIDUAL_STRIDE == 0 {
                            let r = sample.residual();
                            let tol = if config.group == Group::Symplectic { 1e-10 } else { 1e-12 };
                            if r.is_nan() || r >= tol * config.d as f64 {
                                return Err(McError::Residual(r));
                            }
                        }
                        for (a, c) in acc.iter_mut().zip(compiled) {
                            a.push(c.evaluate(&sample));
                        }
                    }
                    Ok(acc)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
    });

    let mut total = vec![Welford::default(); specs.len()];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part?) {
            t.merge(&p);
        }
    }
    Ok(total.iter().map(Welford::finish).collect())
}
