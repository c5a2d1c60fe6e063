//! Enumerators for the summation sets of the recursions: bounded vectors,
//! non-negative integer matrices with fixed row sums, and pairs of such
//! matrices with equal column sums.
//!
//! All streams are lazy depth-first walks over cells in row-major order, so
//! the output is lexicographic in the row-major entries.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{binomial, multinomial};
use crate::monomial::ExponentMatrix;

/// Every vector `v` with `0 <= v_i <= bounds_i`, optionally restricted to
/// even components, in lexicographic order.
pub fn enumerate_bounded_vectors(bounds: &[u32], even_only: bool) -> BoundedVectorIter {
    BoundedVectorIter {
        bounds: bounds.to_vec(),
        step: if even_only { 2 } else { 1 },
        next: Some(vec![0; bounds.len()]),
    }
}

#[derive(Clone, Debug)]
pub struct BoundedVectorIter {
    bounds: Vec<u32>,
    step: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for BoundedVectorIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.next.take()?;
        let mut succ = out.clone();
        for i in (0..succ.len()).rev() {
            if succ[i] + self.step <= self.bounds[i] {
                succ[i] += self.step;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(out)
    }
}

/// A matrix with prescribed row sums together with its column sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionMatrix {
    pub entries: ExponentMatrix,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
}

impl CompositionMatrix {
    /// Product over rows of `(row_sum_i | row_i)`.
    pub fn row_multinomial(&self) -> BigInt {
        (0..self.entries.rows()).fold(BigInt::one(), |acc, i| {
            let parts: Vec<u64> = self.entries.row(i).iter().map(|&x| u64::from(x)).collect();
            acc * multinomial(self.row_sums[i], &parts)
        })
    }

    pub fn total(&self) -> u64 {
        self.row_sums.iter().sum()
    }
}

/// `prod_i C(m_i, k_i)`.
pub fn vector_binomial(m: &[u32], k: &[u32]) -> BigInt {
    m.iter()
        .zip(k)
        .fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(u64::from(a), i64::from(b)))
}

/// `prod_i (row_sums_i | row i of k)`; zero on any mismatched row.
pub fn vector_multinomial(row_sums: &[u64], k: &ExponentMatrix) -> BigInt {
    (0..k.rows()).fold(BigInt::one(), |acc, i| {
        let parts: Vec<u64> = k.row(i).iter().map(|&x| u64::from(x)).collect();
        acc * multinomial(row_sums[i], &parts)
    })
}

#[derive(Clone, Debug)]
enum ColumnRule {
    Free,
    Even,
    Exact(Vec<u64>),
}

/// Every non-negative integer `rows x num_cols` matrix whose row `i` sums
/// to `row_sums[i]`, optionally only those with all column sums even.
pub fn enumerate_row_composition_matrices(
    row_sums: &[u64],
    num_cols: usize,
    column_parity_even: bool,
) -> CompositionIter {
    let rule = if column_parity_even {
        ColumnRule::Even
    } else {
        ColumnRule::Free
    };
    CompositionIter::new(row_sums, num_cols, rule)
}

/// Every matrix with the given row sums and exactly the given column sums.
pub fn enumerate_with_column_sums(row_sums: &[u64], col_sums: &[u64]) -> CompositionIter {
    CompositionIter::new(row_sums, col_sums.len(), ColumnRule::Exact(col_sums.to_vec()))
}

/// Depth-first walk over the cells of a table with fixed row sums.
#[derive(Clone, Debug)]
pub struct CompositionIter {
    rows: usize,
    cols: usize,
    row_sums: Vec<u64>,
    rule: ColumnRule,
    values: Vec<u64>,
    row_rem: Vec<u64>,
    col_acc: Vec<u64>,
    /// sum of row sums strictly below each row
    mass_below: Vec<u64>,
    pos: usize,
    state: WalkState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WalkState {
    Fresh,
    Running,
    Done,
}

impl CompositionIter {
    fn new(row_sums: &[u64], cols: usize, rule: ColumnRule) -> Self {
        let rows = row_sums.len();
        let mut mass_below = vec![0; rows];
        for i in (0..rows.saturating_sub(1)).rev() {
            mass_below[i] = mass_below[i + 1] + row_sums[i + 1];
        }
        let total: u64 = row_sums.iter().sum();
        let feasible = match &rule {
            ColumnRule::Free => cols > 0 || total == 0,
            ColumnRule::Even => (cols > 0 || total == 0) && total.is_multiple_of(2),
            ColumnRule::Exact(t) => t.iter().sum::<u64>() == total,
        };
        Self {
            rows,
            cols,
            row_sums: row_sums.to_vec(),
            rule,
            values: vec![0; rows * cols],
            row_rem: row_sums.to_vec(),
            col_acc: vec![0; cols],
            mass_below,
            pos: 0,
            state: if feasible {
                WalkState::Fresh
            } else {
                WalkState::Done
            },
        }
    }

    /// Admissible range for the cell at `self.pos` given the cells before it.
    fn bounds(&self) -> Option<(u64, u64)> {
        let (i, j) = (self.pos / self.cols, self.pos % self.cols);
        let rem = self.row_rem[i];
        let mut lo = if j + 1 == self.cols { rem } else { 0 };
        let mut hi = rem;
        if let ColumnRule::Exact(t) = &self.rule {
            let col_rem = t[j] - self.col_acc[j];
            hi = hi.min(col_rem);
            let capacity: u64 = (j + 1..self.cols).map(|k| t[k] - self.col_acc[k]).sum();
            lo = lo.max(rem.saturating_sub(capacity));
            if i + 1 == self.rows {
                lo = lo.max(col_rem);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn place(&mut self, v: u64) {
        let (i, j) = (self.pos / self.cols, self.pos % self.cols);
        self.values[self.pos] = v;
        self.row_rem[i] -= v;
        self.col_acc[j] += v;
    }

    fn unplace(&mut self) -> u64 {
        let (i, j) = (self.pos / self.cols, self.pos % self.cols);
        let v = self.values[self.pos];
        self.row_rem[i] += v;
        self.col_acc[j] -= v;
        v
    }

    /// Parity feasibility once a row is complete: the remaining mass must
    /// be able to make every odd column even.
    fn row_complete_ok(&self) -> bool {
        let (i, j) = (self.pos / self.cols, self.pos % self.cols);
        if j + 1 != self.cols {
            return true;
        }
        match self.rule {
            ColumnRule::Even => {
                let odd = self.col_acc.iter().filter(|&&x| x % 2 == 1).count() as u64;
                let rest = self.mass_below[i];
                odd <= rest && (rest - odd).is_multiple_of(2)
            }
            _ => true,
        }
    }

    fn emit(&self) -> CompositionMatrix {
        let data: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                self.values[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(|&v| v as u32)
                    .collect()
            })
            .collect();
        let entries = if self.cols == 0 || self.rows == 0 {
            ExponentMatrix::zeros(self.rows, self.cols)
        } else {
            ExponentMatrix::from_rows(&data).expect("rectangular by construction")
        };
        CompositionMatrix {
            entries,
            row_sums: self.row_sums.clone(),
            col_sums: self.col_acc.clone(),
        }
    }

    /// Tries values for the current cell starting at `from`; on success
    /// the cell is placed and `true` is returned.
    fn try_from(&mut self, from: u64) -> bool {
        let Some((lo, hi)) = self.bounds() else {
            return false;
        };
        let mut v = from.max(lo);
        while v <= hi {
            self.place(v);
            if self.row_complete_ok() {
                return true;
            }
            self.unplace();
            v += 1;
        }
        false
    }
}

impl Iterator for CompositionIter {
    type Item = CompositionMatrix;

    fn next(&mut self) -> Option<CompositionMatrix> {
        let n = self.values.len();
        let mut descending = match self.state {
            WalkState::Done => return None,
            WalkState::Fresh => {
                self.state = WalkState::Running;
                if n == 0 {
                    self.state = WalkState::Done;
                    return Some(self.emit());
                }
                true
            }
            WalkState::Running => {
                self.pos = n - 1;
                false
            }
        };
        loop {
            if descending {
                if self.try_from(0) {
                    if self.pos + 1 == n {
                        return Some(self.emit());
                    }
                    self.pos += 1;
                    continue;
                }
                descending = false;
                if self.pos == 0 {
                    self.state = WalkState::Done;
                    return None;
                }
                self.pos -= 1;
            } else {
                let v = self.unplace();
                if self.try_from(v + 1) {
                    if self.pos + 1 == n {
                        return Some(self.emit());
                    }
                    self.pos += 1;
                    descending = true;
                    continue;
                }
                if self.pos == 0 {
                    self.state = WalkState::Done;
                    return None;
                }
                self.pos -= 1;
            }
        }
    }
}

/// Every pair `(K, L)` with the given row sums and identical column sums.
pub fn enumerate_matrix_pairs_matched_columns(
    row_sums_k: &[u64],
    row_sums_l: &[u64],
    num_cols: usize,
) -> MatchedPairIter {
    let balanced = row_sums_k.iter().sum::<u64>() == row_sums_l.iter().sum::<u64>();
    let mut outer = enumerate_row_composition_matrices(row_sums_k, num_cols, false);
    if !balanced {
        outer.state = WalkState::Done;
    }
    MatchedPairIter {
        outer,
        row_sums_l: row_sums_l.to_vec(),
        current: None,
    }
}

#[derive(Clone, Debug)]
pub struct MatchedPairIter {
    outer: CompositionIter,
    row_sums_l: Vec<u64>,
    current: Option<(CompositionMatrix, CompositionIter)>,
}

impl Iterator for MatchedPairIter {
    type Item = (CompositionMatrix, CompositionMatrix);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some((k, inner)) = &mut self.current {
                if let Some(l) = inner.next() {
                    return Some((k.clone(), l));
                }
            }
            let k = self.outer.next()?;
            let inner = enumerate_with_column_sums(&self.row_sums_l, &k.col_sums);
            self.current = Some((k, inner));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn rows(c: &CompositionMatrix) -> Vec<Vec<u32>> {
        c.entries.to_rows()
    }

    #[test]
    fn bounded_vector_examples() {
        let v: Vec<_> = enumerate_bounded_vectors(&[2, 1], true).collect();
        assert_eq!(v, vec![vec![0, 0], vec![2, 0]]);
        let v: Vec<_> = enumerate_bounded_vectors(&[1, 1], false).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let v: Vec<_> = enumerate_bounded_vectors(&[], true).collect();
        assert_eq!(v, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn composition_examples() {
        let v: Vec<_> = enumerate_row_composition_matrices(&[2], 2, true).map(|c| rows(&c)).collect();
        assert_eq!(v, vec![vec![vec![0, 2]], vec![vec![2, 0]]]);
        let v: Vec<_> = enumerate_row_composition_matrices(&[1, 1], 1, false).map(|c| rows(&c)).collect();
        assert_eq!(v, vec![vec![vec![1], vec![1]]]);
        let v: Vec<_> = enumerate_row_composition_matrices(&[0, 0], 3, true).collect();
        assert_eq!(v.len(), 1);
        assert!(v[0].entries.is_zero());
        assert_eq!(enumerate_row_composition_matrices(&[1], 0, false).count(), 0);
        assert_eq!(enumerate_row_composition_matrices(&[0], 0, false).count(), 1);
        assert_eq!(enumerate_row_composition_matrices(&[1, 1], 2, true).count(), 2);
        assert_eq!(enumerate_row_composition_matrices(&[1, 2], 2, true).count(), 0);
    }

    #[test]
    fn matched_pair_examples() {
        let v: Vec<_> = enumerate_matrix_pairs_matched_columns(&[1], &[1], 2)
            .map(|(k, l)| (rows(&k), rows(&l)))
            .collect();
        assert_eq!(
            v,
            vec![
                (vec![vec![0, 1]], vec![vec![0, 1]]),
                (vec![vec![1, 0]], vec![vec![1, 0]])
            ]
        );
        assert_eq!(enumerate_matrix_pairs_matched_columns(&[2], &[1], 3).count(), 0);
        let v: Vec<_> = enumerate_matrix_pairs_matched_columns(&[1, 1], &[2, 0], 1)
            .map(|(k, l)| (rows(&k), rows(&l)))
            .collect();
        assert_eq!(v, vec![(vec![vec![1], vec![1]], vec![vec![2], vec![0]])]);
    }

    #[test]
    fn vector_products() {
        assert_eq!(vector_binomial(&[4, 2], &[2, 1]), BigInt::from(12));
        let k = ExponentMatrix::from_rows(&[[1u32, 1], [2, 0]]).unwrap();
        assert_eq!(vector_multinomial(&[2, 2], &k), BigInt::from(2));
        assert_eq!(vector_multinomial(&[3, 2], &k), BigInt::from(0));
    }

    fn stars_and_bars(row_sums: &[u64], c: usize) -> u64 {
        row_sums
            .iter()
            .map(|&s| {
                let v = binomial(s + c as u64 - 1, c as i64 - 1);
                u64::try_from(v).unwrap()
            })
            .product()
    }

    proptest! {
        #[test]
        fn counts_match_stars_and_bars(row_sums in proptest::collection::vec(0u64..4, 0..4), c in 1usize..4) {
            let all: Vec<_> = enumerate_row_composition_matrices(&row_sums, c, false).collect();
            prop_assert_eq!(all.len() as u64, stars_and_bars(&row_sums, c));
            let set: HashSet<_> = all.iter().map(|m| m.entries.clone()).collect();
            prop_assert_eq!(set.len(), all.len());
            for m in &all {
                prop_assert_eq!(m.entries.row_sums(), row_sums.clone());
                prop_assert_eq!(m.entries.col_sums(), m.col_sums.clone());
            }
        }

        #[test]
        fn parity_filter_partitions(row_sums in proptest::collection::vec(0u64..4, 0..4), c in 1usize..4) {
            let all: HashSet<_> = enumerate_row_composition_matrices(&row_sums, c, false).map(|m| m.entries).collect();
            let even: Vec<_> = enumerate_row_composition_matrices(&row_sums, c, true).collect();
            for m in &even {
                prop_assert!(m.col_sums.iter().all(|x| x % 2 == 0));
            }
            let even_set: HashSet<_> = even.iter().map(|m| m.entries.clone()).collect();
            prop_assert_eq!(even_set.len(), even.len());
            let expected: HashSet<_> = all.into_iter().filter(|m| m.col_sums().iter().all(|x| x % 2 == 0)).collect();
            prop_assert_eq!(even_set, expected);
        }

        #[test]
        fn matched_pairs_equal_filtered_product(rk in proptest::collection::vec(0u64..3, 1..3), rl in proptest::collection::vec(0u64..3, 1..3), c in 1usize..3) {
            let pairs: Vec<_> = enumerate_matrix_pairs_matched_columns(&rk, &rl, c).map(|(k, l)| (k.entries, l.entries)).collect();
            let ks: Vec<_> = enumerate_row_composition_matrices(&rk, c, false).collect();
            let ls: Vec<_> = enumerate_row_composition_matrices(&rl, c, false).collect();
            let mut expected = HashSet::new();
            for k in &ks {
                for l in &ls {
                    if k.col_sums == l.col_sums {
                        expected.insert((k.entries.clone(), l.entries.clone()));
                    }
                }
            }
            let got: HashSet<_> = pairs.iter().cloned().collect();
            prop_assert_eq!(got.len(), pairs.len());
            prop_assert_eq!(got, expected);
        }
    }
}
