//! U(d): one-vector formula and the column recursion.
//!
//! As for O(d), the one-vector factors and `B(m, k; d, R-1)` reduce to the
//! scalar `(-1)^(m-k) prod k_i! prod c_j!` over the common denominator
//! `(d-R+1)_m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Integrator, TermSum};
use crate::arith::{factorial, pochhammer, Affine, PolyD, RationalFunction};
use crate::combinatorics::{enumerate_bounded_vectors, enumerate_matrix_pairs_matched_columns, vector_binomial};
use crate::monomial::{weingarten_balance, ExponentSpec, UnitarySpec};

pub(crate) fn factorial_product<I: IntoIterator<Item = u64>>(v: I) -> BigInt {
    v.into_iter().map(factorial).product()
}

/// `<n|m>` for a single column: `prod m_i! / (d)_|m|` when `m = n`, else 0.
pub fn one_vector_unitary(m: &[u32], n: &[u32]) -> RationalFunction {
    if m != n {
        return RationalFunction::zero();
    }
    let total: u64 = m.iter().map(|&x| u64::from(x)).sum();
    let num = factorial_product(m.iter().map(|&x| u64::from(x)));
    RationalFunction::new(
        PolyD::constant(BigRational::from_integer(num)),
        pochhammer(&Affine::d(), total),
    )
    .expect("non-zero Pochhammer")
}

/// Row and column sums of `M` and `N` agree; necessary for a non-zero
/// integral.
pub fn weingarten_balance_check(spec: &UnitarySpec) -> bool {
    weingarten_balance(spec)
}

pub(super) fn recurse(integrator: &Integrator, spec: &UnitarySpec) -> RationalFunction {
    let (rows, r) = spec.m().shape();
    let m = spec.m().column(r - 1);
    let n = spec.n().column(r - 1);
    if r == 1 {
        return one_vector_unitary(&m, &n);
    }
    let total: u64 = m.iter().map(|&x| u64::from(x)).sum();
    if total != n.iter().map(|&x| u64::from(x)).sum::<u64>() {
        return RationalFunction::zero();
    }
    let all_rows: Vec<usize> = (0..rows).collect();
    let head: Vec<usize> = (0..r - 1).collect();
    let pm = spec.m().select(&all_rows, &head);
    let pn = spec.n().select(&all_rows, &head);
    let p: Vec<u32> = m.iter().zip(&n).map(|(&a, &b)| a.min(b)).collect();

    let mut terms = TermSum::new(integrator);
    for kappa in enumerate_bounded_vectors(&p, false) {
        let kbar: u64 = kappa.iter().map(|&x| u64::from(x)).sum();
        let mut outer = vector_binomial(&m, &kappa)
            * vector_binomial(&n, &kappa)
            * factorial_product(kappa.iter().map(|&x| u64::from(x)));
        if (total - kbar) % 2 == 1 {
            outer = -outer;
        }
        let rm: Vec<u64> = m.iter().zip(&kappa).map(|(&a, &b)| u64::from(a - b)).collect();
        let rn: Vec<u64> = n.iter().zip(&kappa).map(|(&a, &b)| u64::from(a - b)).collect();
        for (k, l) in enumerate_matrix_pairs_matched_columns(&rm, &rn, r - 1) {
            let inner = k.row_multinomial()
                * l.row_multinomial()
                * factorial_product(k.col_sums.iter().copied());
            let sub = UnitarySpec::new(pm.add(&k.entries), pn.add(&l.entries));
            terms.add(BigRational::from_integer(&outer * inner), ExponentSpec::Unitary(sub));
        }
    }
    // (d - R + 1)_m
    let base = Affine::new(BigRational::one(), BigRational::from_integer(BigInt::from(1 - r as i64)));
    let den = RationalFunction::reciprocal_of(pochhammer(&base, total)).expect("non-zero Pochhammer");
    &terms.evaluate(integrator) * &den
}
