//! Sp(2d): one-vector formula and the block recursion. Here `d` is the
//! half-dimension.
//!
//! The sub-integrals are indexed by two block matrices applied to the four
//! exponent blocks of the remaining `R-1` columns:
//!
//! ```text
//!   A  = [L2p K1 ; L2 K1p]   rows: (m - k ; mp - kp)
//!   Bt = [K2p L1 ; K2 L1p]   rows: (n - k ; np - kp)
//! ```
//!
//! Equal column sums of `A` and `Bt` are exactly the matched-column
//! condition `colsum(K1 + K1p) = colsum(L1 + L1p)`,
//! `colsum(K2 + K2p) = colsum(L2 + L2p)` forced by the one-vector factor.
//! The sub-spec adds `K1 + K2` to `m`, `K1p + K2p` to `mp`, `L1 + L2` to `n`
//! and `L1p + L2p` to `np`.
//!
//! Expanding `f(mp, np, beta - eps)` produces the sign
//! `(-1)^(|mp| + |np| + |K1p| + |L1p|)`, with `mp`, `np` the last columns of
//! the `z` and `z*` blocks. The global part `(-1)^(|mp| + |np|)` is kept.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::unitary::factorial_product;
use super::{Integrator, TermSum};
use crate::arith::{pochhammer, Affine, PolyD, RationalFunction};
use crate::combinatorics::{enumerate_bounded_vectors, enumerate_matrix_pairs_matched_columns, vector_binomial};
use crate::monomial::{ExponentMatrix, ExponentSpec, SymplecticSpec};

/// Single-column integral: the U(2d) one-vector average of the
/// concatenations `(m, mp)` and `(n, np)`.
pub fn one_vector_symplectic(m: &[u32], mp: &[u32], n: &[u32], np: &[u32]) -> RationalFunction {
    if m != n || mp != np {
        return RationalFunction::zero();
    }
    let total: u64 = m.iter().chain(mp).map(|&x| u64::from(x)).sum();
    let num = factorial_product(m.iter().chain(mp).map(|&x| u64::from(x)));
    RationalFunction::new(
        PolyD::constant(BigRational::from_integer(num)),
        pochhammer(&Affine::ratio(2, 1, 0, 1), total),
    )
    .expect("non-zero Pochhammer")
}

fn sum(v: &[u32]) -> u64 {
    v.iter().map(|&x| u64::from(x)).sum()
}

/// Sub-block `rows[r0..r0+nr] x cols[c0..c0+nc]`.
fn block(m: &ExponentMatrix, r0: usize, nr: usize, c0: usize, nc: usize) -> ExponentMatrix {
    let rows: Vec<usize> = (r0..r0 + nr).collect();
    let cols: Vec<usize> = (c0..c0 + nc).collect();
    m.select(&rows, &cols)
}

pub(super) fn recurse(integrator: &Integrator, spec: &SymplecticSpec) -> RationalFunction {
    let (rows, r) = spec.shape();
    let m = spec.m().column(r - 1);
    let mp = spec.mp().column(r - 1);
    let n = spec.n().column(r - 1);
    let np = spec.np().column(r - 1);
    if r == 1 {
        return one_vector_symplectic(&m, &mp, &n, &np);
    }
    let total = sum(&m) + sum(&mp);
    if total != sum(&n) + sum(&np) {
        return RationalFunction::zero();
    }
    let all_rows: Vec<usize> = (0..rows).collect();
    let head: Vec<usize> = (0..r - 1).collect();
    let pm = spec.m().select(&all_rows, &head);
    let pmp = spec.mp().select(&all_rows, &head);
    let pn = spec.n().select(&all_rows, &head);
    let pnp = spec.np().select(&all_rows, &head);
    let p: Vec<u32> = m.iter().zip(&n).map(|(&a, &b)| a.min(b)).collect();
    let pp: Vec<u32> = mp.iter().zip(&np).map(|(&a, &b)| a.min(b)).collect();
    let h = r - 1;
    let global_negative = (sum(&mp) + sum(&np)) % 2 == 1;

    let mut terms = TermSum::new(integrator);
    let kappas: Vec<Vec<u32>> = enumerate_bounded_vectors(&p, false).collect();
    for kappa in &kappas {
        let kbar = sum(kappa);
        let cm = vector_binomial(&m, kappa) * vector_binomial(&n, kappa);
        for kappa_p in enumerate_bounded_vectors(&pp, false) {
            let b = kbar + sum(&kappa_p);
            let mut outer = &cm
                * vector_binomial(&mp, &kappa_p)
                * vector_binomial(&np, &kappa_p)
                * factorial_product(kappa.iter().chain(&kappa_p).map(|&x| u64::from(x)));
            if ((total - b) % 2 == 1) != global_negative {
                outer = -outer;
            }
            let rows_a: Vec<u64> = m
                .iter()
                .zip(kappa)
                .chain(mp.iter().zip(&kappa_p))
                .map(|(&x, &k)| u64::from(x - k))
                .collect();
            let rows_b: Vec<u64> = n
                .iter()
                .zip(kappa)
                .chain(np.iter().zip(&kappa_p))
                .map(|(&x, &k)| u64::from(x - k))
                .collect();
            for (a, bt) in enumerate_matrix_pairs_matched_columns(&rows_a, &rows_b, 2 * h) {
                let l2p = block(&a.entries, 0, rows, 0, h);
                let k1 = block(&a.entries, 0, rows, h, h);
                let l2 = block(&a.entries, rows, rows, 0, h);
                let k1p = block(&a.entries, rows, rows, h, h);
                let k2p = block(&bt.entries, 0, rows, 0, h);
                let l1 = block(&bt.entries, 0, rows, h, h);
                let k2 = block(&bt.entries, rows, rows, 0, h);
                let l1p = block(&bt.entries, rows, rows, h, h);
                let mut coeff = &outer
                    * a.row_multinomial()
                    * bt.row_multinomial()
                    * factorial_product(a.col_sums.iter().copied());
                if (k1p.total() + l1p.total()) % 2 == 1 {
                    coeff = -coeff;
                }
                let sub = SymplecticSpec::new(
                    pm.add(&k1).add(&k2),
                    pmp.add(&k1p).add(&k2p),
                    pn.add(&l1).add(&l2),
                    pnp.add(&l1p).add(&l2p),
                )
                .expect("blocks share the prefix shape");
                terms.add(BigRational::from_integer(coeff), ExponentSpec::Symplectic(sub));
            }
        }
    }
    // (2d - 2R + 2)_(|m| + |mp|)
    let base = Affine::new(
        BigRational::from_integer(BigInt::from(2)),
        BigRational::from_integer(BigInt::from(2 - 2 * r as i64)),
    );
    let den = RationalFunction::reciprocal_of(pochhammer(&base, total)).expect("non-zero Pochhammer");
    &terms.evaluate(integrator) * &den
}
