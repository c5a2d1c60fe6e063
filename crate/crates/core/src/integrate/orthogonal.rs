//! O(d): one-vector formula and the column recursion.
//!
//! In the recursion the product of the two one-vector averages and the
//! coefficient `B(m/2, k/2; d/2, (R-1)/2)` collapses: the `(d/2)` Pochhammer
//! factors cancel, leaving the rational scalar
//! `(-1)^((m-k)/2) prod (1/2)_(k_i/2) prod (1/2)_(c_j/2)` over the common
//! denominator `((d-R+1)/2)_(m/2)`. The inner sum is therefore accumulated in
//! exact rationals and divided once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Integrator, TermSum};
use crate::arith::{pochhammer, rising, Affine, PolyD, RationalFunction};
use crate::combinatorics::{enumerate_bounded_vectors, enumerate_row_composition_matrices, vector_binomial};
use crate::monomial::{ExponentSpec, OrthogonalSpec};

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `prod_i (1/2)_(v_i/2)` for even entries.
fn half_rising_product<I: IntoIterator<Item = u64>>(v: I) -> BigRational {
    v.into_iter().fold(BigRational::one(), |acc, x| acc * rising(&half(), x / 2))
}

/// `<m>` for a single column: zero unless every entry is even, otherwise
/// `prod_i (1/2)_(m_i/2) / (d/2)_(|m|/2)`.
pub fn one_vector_orthogonal(m: &[u32]) -> RationalFunction {
    if m.iter().any(|x| x % 2 == 1) {
        return RationalFunction::zero();
    }
    let total: u64 = m.iter().map(|&x| u64::from(x)).sum();
    let num = PolyD::constant(half_rising_product(m.iter().map(|&x| u64::from(x))));
    let den = pochhammer(&Affine::ratio(1, 2, 0, 1), total / 2);
    RationalFunction::new(num, den).expect("non-zero Pochhammer")
}

/// Recursion step on a canonical spec with `R >= 1` occupied columns.
pub(super) fn recurse(integrator: &Integrator, spec: &OrthogonalSpec) -> RationalFunction {
    let m = &spec.m;
    let (rows, r) = m.shape();
    let last = m.column(r - 1);
    if r == 1 {
        return one_vector_orthogonal(&last);
    }
    let total: u64 = last.iter().map(|&x| u64::from(x)).sum();
    if total % 2 == 1 {
        return RationalFunction::zero();
    }
    let all_rows: Vec<usize> = (0..rows).collect();
    let prefix = m.select(&all_rows, &(0..r - 1).collect::<Vec<_>>());

    let mut terms = TermSum::new(integrator);
    for kappa in enumerate_bounded_vectors(&last, true) {
        let kbar: u64 = kappa.iter().map(|&x| u64::from(x)).sum();
        let mut outer = BigRational::from_integer(vector_binomial(&last, &kappa))
            * half_rising_product(kappa.iter().map(|&x| u64::from(x)));
        if ((total - kbar) / 2) % 2 == 1 {
            outer = -outer;
        }
        let rest: Vec<u64> = last.iter().zip(&kappa).map(|(&a, &b)| u64::from(a - b)).collect();
        for k in enumerate_row_composition_matrices(&rest, r - 1, true) {
            let inner = BigRational::from_integer(k.row_multinomial())
                * half_rising_product(k.col_sums.iter().copied());
            let sub = prefix.add(&k.entries);
            terms.add(&outer * inner, ExponentSpec::Orthogonal(OrthogonalSpec::new(sub)));
        }
    }
    // ((d - R + 1)/2)_(m/2)
    let base = Affine::new(half(), BigRational::new(BigInt::from(1 - r as i64), 2.into()));
    let den = RationalFunction::reciprocal_of(pochhammer(&base, total / 2)).expect("non-zero Pochhammer");
    &terms.evaluate(integrator) * &den
}
