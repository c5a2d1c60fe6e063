//! The complex-plane Gaussian integral
//!
//! ```text
//! f(m, n, a) = ∫∫ dx dy  u^m (u*)^n exp(-u* u) exp(a u - a* u*),   u = x + iy
//! ```
//!
//! which equals `pi * P(a*, a) * exp(-a* a)` for a polynomial `P` whose
//! every term has `(power of a*) - (power of a) = m - n`. Only the
//! polynomial part is stored; the factor `pi` and the Gaussian are implicit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{binomial, factorial, to_f64};

/// `f(m, n, a) / (pi exp(-a* a))` as a map from `(power of a*, power of a)`
/// to rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianPolynomial {
    pub m: u32,
    pub n: u32,
    /// Always true: coefficients are rational multiples of `pi`.
    pub times_pi: bool,
    pub terms: BTreeMap<(u32, u32), BigRational>,
}

impl GaussianPolynomial {
    fn new(m: u32, n: u32, terms: BTreeMap<(u32, u32), BigRational>) -> Self {
        let p = Self {
            m,
            n,
            times_pi: true,
            terms,
        };
        p.assert_homogeneous();
        p
    }

    /// Every term has power difference `m - n` and there are `min(m,n)+1`.
    fn assert_homogeneous(&self) {
        let diff = i64::from(self.m) - i64::from(self.n);
        for (&(a, b), c) in &self.terms {
            assert_eq!(i64::from(a) - i64::from(b), diff, "term ({a},{b}) breaks homogeneity");
            assert!(!c.is_zero(), "stored zero coefficient");
        }
        assert_eq!(self.terms.len() as u32, self.m.min(self.n) + 1);
    }

    pub fn coefficient(&self, conj_power: u32, power: u32) -> BigRational {
        self.terms.get(&(conj_power, power)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Value of the polynomial part at `a = 0`, in units of `pi`.
    pub fn at_zero(&self) -> BigRational {
        self.coefficient(0, 0)
    }

    /// Image under `a -> -a` followed by complex conjugation; the result
    /// describes `f(m,n,-a)*`, i.e. it has the roles of `m` and `n` swapped.
    pub fn conjugate_reflected(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let c = if (a + b) % 2 == 1 { -c.clone() } else { c.clone() };
                ((b, a), c)
            })
            .collect();
        Self::new(self.n, self.m, terms)
    }

    /// `f(m, n, a)` including `pi` and the Gaussian factor.
    pub fn evaluate(&self, a: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(p, q), c) in &self.terms {
            acc += a.conj().powu(p) * a.powu(q) * to_f64(c);
        }
        acc * std::f64::consts::PI * (-a.norm_sqr()).exp()
    }
}

/// `(-1)^(m+k) k! C(m,k) C(n,k)` on `(a*)^(m-k) a^(n-k)`, `0 <= k <= min(m,n)`.
pub fn gaussian_f_closed_form(m: u32, n: u32) -> GaussianPolynomial {
    let mut terms = BTreeMap::new();
    for k in 0..=m.min(n) {
        let mut c = factorial(u64::from(k))
            * binomial(u64::from(m), i64::from(k))
            * binomial(u64::from(n), i64::from(k));
        if (m + k) % 2 == 1 {
            c = -c;
        }
        terms.insert((m - k, n - k), BigRational::from_integer(c));
    }
    GaussianPolynomial::new(m, n, terms)
}

/// Builds `P(m, n)` from `P(m, 0) = 1` by the coefficient recursion for
/// `m >= n`, and uses `f(m,n,a) = f(n,m,-a)*` otherwise.
pub fn gaussian_f_by_recursion(m: u32, n: u32) -> GaussianPolynomial {
    if m < n {
        return gaussian_f_by_recursion(n, m).conjugate_reflected();
    }
    // c[k] multiplies (a*)^(m-j+k) a^k at stage j
    let mut c: Vec<BigInt> = vec![BigInt::from(1)];
    for j in 0..n {
        let offset = BigInt::from(m - j);
        let mut next = vec![BigInt::zero(); c.len() + 1];
        next[0] = &offset * &c[0];
        for k in 1..c.len() {
            next[k] = (&offset + BigInt::from(k)) * &c[k] - &c[k - 1];
        }
        next[c.len()] = -c[c.len() - 1].clone();
        c = next;
    }
    let negative = (m + n) % 2 == 1;
    let terms = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let k = k as u32;
            let v = if negative { -v } else { v };
            ((m - n + k, k), BigRational::from_integer(v))
        })
        .collect();
    GaussianPolynomial::new(m, n, terms)
}

/// `f(m, n, 0) / pi = delta_mn n!`.
pub fn gaussian_f_at_zero(m: u32, n: u32) -> BigRational {
    if m == n {
        BigRational::from_integer(factorial(u64::from(n)))
    } else {
        BigRational::zero()
    }
}

/// Trapezoidal quadrature of the defining integral over `[-L, L]^2`.
///
/// The integrand decays like `exp(-|u|^2)`, so with `L = 9` the truncation
/// error is far below double precision.
pub fn gaussian_f_quadrature(m: u32, n: u32, a: Complex64, step: f64) -> Complex64 {
    let half_width = 9.0;
    let count = (2.0 * half_width / step).round().to_usize().unwrap_or(0);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=count {
        let x = -half_width + step * i as f64;
        for j in 0..=count {
            let y = -half_width + step * j as f64;
            let u = Complex64::new(x, y);
            let phase = a * u - (a * u).conj();
            acc += u.powu(m) * u.conj().powu(n) * (-u.norm_sqr()).exp() * phase.exp();
        }
    }
    acc * step * step
}
