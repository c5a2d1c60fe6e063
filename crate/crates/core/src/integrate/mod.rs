//! Recursive column-by-column evaluation of monomial Haar integrals.
//!
//! Each recursion step integrates out the last occupied column of the
//! canonical spec and expresses the integral as a linear combination of
//! integrals with one column fewer. Sub-integrals are deduplicated through
//! their [`MemoKey`].

mod orthogonal;
mod symplectic;
mod unitary;

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::RationalFunction;
use crate::monomial::{
    strip_zero_columns, vanishes_trivially, ExponentSpec, MemoKey, OrthogonalSpec, SymplecticSpec,
    UnitarySpec,
};

pub use orthogonal::one_vector_orthogonal;
pub use symplectic::one_vector_symplectic;
pub use unitary::{one_vector_unitary, weingarten_balance_check};

/// Exact value of a monomial integral.
///
/// `validity_floor` is the number `R` of occupied columns of the canonical
/// spec; the derivation assumes `d >= R` and the rational function may be
/// wrong or singular below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralResult {
    pub value: RationalFunction,
    pub validity_floor: usize,
}

pub type OrthogonalResult = IntegralResult;
pub type UnitaryResult = IntegralResult;
pub type SymplecticResult = IntegralResult;

/// Shared table of sub-integral values.
///
/// Concurrent writers may race on one key; both compute the same value, so
/// the second insert is a no-op.
#[derive(Debug, Default)]
pub struct MemoCache {
    map: RwLock<HashMap<MemoKey, RationalFunction>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &MemoKey) -> Option<RationalFunction> {
        let found = self.map.read().expect("memo cache poisoned").get(key).cloned();
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn insert(&self, key: MemoKey, value: RationalFunction) {
        self.map
            .write()
            .expect("memo cache poisoned")
            .entry(key)
            .or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn clear(&self) {
        self.map.write().expect("memo cache poisoned").clear();
    }
}

/// Entry point for all three groups.
#[derive(Clone, Debug)]
pub struct Integrator {
    cache: Option<Arc<MemoCache>>,
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new()
    }
}

impl Integrator {
    /// An integrator with its own empty cache.
    pub fn new() -> Self {
        Self::with_cache(Arc::new(MemoCache::new()))
    }

    pub fn with_cache(cache: Arc<MemoCache>) -> Self {
        Self { cache: Some(cache) }
    }

    /// Recomputes every sub-integral, including repeats within one
    /// recursion step; the baseline for measuring the cache.
    pub fn uncached() -> Self {
        Self { cache: None }
    }

    pub fn cache(&self) -> Option<&Arc<MemoCache>> {
        self.cache.as_ref()
    }

    pub fn integrate(&self, spec: &ExponentSpec) -> IntegralResult {
        let canonical = spec.canonical();
        let (_, r) = strip_zero_columns(&canonical);
        IntegralResult {
            value: self.value_of_canonical(&canonical),
            validity_floor: r,
        }
    }

    pub fn integrate_orthogonal(&self, spec: &OrthogonalSpec) -> OrthogonalResult {
        self.integrate(&ExponentSpec::Orthogonal(spec.clone()))
    }

    pub fn integrate_unitary(&self, spec: &UnitarySpec) -> UnitaryResult {
        self.integrate(&ExponentSpec::Unitary(spec.clone()))
    }

    pub fn integrate_symplectic(&self, spec: &SymplecticSpec) -> SymplecticResult {
        self.integrate(&ExponentSpec::Symplectic(spec.clone()))
    }

    /// Value of an already canonical spec, through the cache.
    fn value_of_canonical(&self, spec: &ExponentSpec) -> RationalFunction {
        if vanishes_trivially(spec) {
            return RationalFunction::zero();
        }
        let r = spec.occupied_columns();
        if r == 0 {
            return RationalFunction::one();
        }
        let key = MemoKey::of(spec);
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.get(&key) {
                return v;
            }
        }
        let value = match spec {
            ExponentSpec::Orthogonal(s) => orthogonal::recurse(self, s),
            ExponentSpec::Unitary(s) => unitary::recurse(self, s),
            ExponentSpec::Symplectic(s) => symplectic::recurse(self, s),
        };
        debug_assert!(value.is_reduced());
        if let Some(cache) = &self.cache {
            cache.insert(key, value.clone());
        }
        value
    }
}

/// Collects `coefficient * <sub-spec>` terms. With a cache, terms with one
/// canonical sub-spec are merged so each distinct sub-integral is looked up
/// once; without one, every term is evaluated on its own.
pub(crate) struct TermSum {
    merged: Option<BTreeMap<MemoKey, (BigRational, ExponentSpec)>>,
    separate: Vec<(BigRational, ExponentSpec)>,
}

impl TermSum {
    pub(crate) fn new(integrator: &Integrator) -> Self {
        Self {
            merged: integrator.cache.is_some().then(BTreeMap::new),
            separate: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, coefficient: BigRational, sub: ExponentSpec) {
        if coefficient.is_zero() {
            return;
        }
        let canonical = sub.canonical();
        if vanishes_trivially(&canonical) {
            return;
        }
        let Some(merged) = &mut self.merged else {
            self.separate.push((coefficient, canonical));
            return;
        };
        let key = MemoKey::of(&canonical);
        match merged.get_mut(&key) {
            Some((c, _)) => *c += coefficient,
            None => {
                merged.insert(key, (coefficient, canonical));
            }
        }
    }

    /// `sum_k c_k <sub_k>`, evaluated through `integrator`.
    pub(crate) fn evaluate(self, integrator: &Integrator) -> RationalFunction {
        let terms = self.merged.map(|m| m.into_values().collect()).unwrap_or(self.separate);
        let mut acc = RationalFunction::zero();
        for (c, spec) in terms {
            if c.is_zero() {
                continue;
            }
            let v = integrator.value_of_canonical(&spec);
            acc = &acc + &v.scale(&c);
        }
        acc
    }
}

fn default_integrator() -> &'static Integrator {
    static DEFAULT: OnceLock<Integrator> = OnceLock::new();
    DEFAULT.get_or_init(Integrator::new)
}

/// `<M>` over O(d), through the process-wide cache.
pub fn integrate_orthogonal(spec: &OrthogonalSpec) -> OrthogonalResult {
    default_integrator().integrate_orthogonal(spec)
}

/// `<N|M>` over U(d), through the process-wide cache.
pub fn integrate_unitary(spec: &UnitarySpec) -> UnitaryResult {
    default_integrator().integrate_unitary(spec)
}

/// The Sp(2d) integral, `d` being the half-dimension, through the
/// process-wide cache.
pub fn integrate_symplectic(spec: &SymplecticSpec) -> SymplecticResult {
    default_integrator().integrate_symplectic(spec)
}

/// Dispatches on the group of `spec`, through the process-wide cache.
pub fn integrate(spec: &ExponentSpec) -> IntegralResult {
    default_integrator().integrate(spec)
}
