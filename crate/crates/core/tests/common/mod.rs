//! Random exponent specs and independently derived Haar symmetries.

#![allow(dead_code)]

use haar_core::{ExponentMatrix, ExponentSpec, Group, OrthogonalSpec, SymplecticSpec, UnitarySpec};
use proptest::prelude::*;

pub fn make(group: Group, blocks: Vec<ExponentMatrix>) -> ExponentSpec {
    let mut b = blocks.into_iter();
    match group {
        Group::Orthogonal => OrthogonalSpec::new(b.next().unwrap()).into(),
        Group::Unitary => UnitarySpec::new(b.next().unwrap(), b.next().unwrap()).into(),
        Group::Symplectic => {
            let (m, mp, n, np) = (b.next().unwrap(), b.next().unwrap(), b.next().unwrap(), b.next().unwrap());
            SymplecticSpec::new(m, mp, n, np).unwrap().into()
        }
    }
}

pub fn owned_blocks(spec: &ExponentSpec) -> Vec<ExponentMatrix> {
    spec.blocks().into_iter().cloned().collect()
}

pub fn bump(m: &mut ExponentMatrix, i: usize, j: usize) {
    let v = m.get(i, j);
    m.set(i, j, v + 1);
}

pub fn block_count(group: Group) -> usize {
    match group {
        Group::Orthogonal => 1,
        Group::Unitary => 2,
        Group::Symplectic => 4,
    }
}

/// Unconstrained entries, mostly vanishing.
fn random_spec(group: Group, max_degree: u64) -> impl Strategy<Value = ExponentSpec> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(move |(r, c)| prop::collection::vec(0u32..=2, block_count(group) * r * c).prop_map(move |e| (r, c, e)))
        .prop_filter("degree cap", move |(_, _, e)| e.iter().map(|&x| u64::from(x)).sum::<u64>() <= max_degree)
        .prop_map(move |(r, c, e)| {
            let blocks = e
                .chunks(r * c)
                .map(|ch| ExponentMatrix::from_rows(&ch.chunks(c).collect::<Vec<_>>()).unwrap())
                .collect();
            make(group, blocks)
        })
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

/// Even row and column sums: doubled entries plus rectangles.
fn balanced_orthogonal() -> impl Strategy<Value = ExponentSpec> {
    shape().prop_flat_map(|(r, c)| {
        let piece = (any::<bool>(), 0..r, 0..r, 0..c, 0..c);
        prop::collection::vec(piece, 0..=3).prop_map(move |pieces| {
            let mut m = ExponentMatrix::zeros(r, c);
            let mut bump = |i: usize, j: usize, k: u32| m.set(i, j, m.get(i, j) + k);
            for (double, i1, i2, j1, j2) in pieces {
                if double {
                    bump(i1, j1, 2);
                } else {
                    bump(i1, j1, 1);
                    bump(i1, j2, 1);
                    bump(i2, j1, 1);
                    bump(i2, j2, 1);
                }
            }
            make(Group::Orthogonal, vec![m])
        })
    })
}

/// Tokens `(a, b)` placed in `M` and again in `N` with columns permuted.
fn balanced_unitary() -> impl Strategy<Value = ExponentSpec> {
    shape()
        .prop_flat_map(|(r, c)| (Just((r, c)), prop::collection::vec((0..r, 0..c), 0..=4)))
        .prop_flat_map(|(rc, tokens)| {
            let idx: Vec<usize> = (0..tokens.len()).collect();
            (Just(rc), Just(tokens), Just(idx).prop_shuffle())
        })
        .prop_map(|((r, c), tokens, perm)| {
            let mut m = ExponentMatrix::zeros(r, c);
            let mut n = ExponentMatrix::zeros(r, c);
            for (k, &(a, b)) in tokens.iter().enumerate() {
                m.set(a, b, m.get(a, b) + 1);
                let b2 = tokens[perm[k]].1;
                n.set(a, b2, n.get(a, b2) + 1);
            }
            make(Group::Unitary, vec![m, n])
        })
}

/// A `w` (or `z`) token is matched by a `w*` (or `z*`) in the same row and
/// a permuted column, which balances both torus charges.
fn balanced_symplectic() -> impl Strategy<Value = ExponentSpec> {
    shape()
        .prop_flat_map(|(r, c)| (Just((r, c)), prop::collection::vec((any::<bool>(), 0..r, 0..c), 0..=3)))
        .prop_flat_map(|(rc, tokens)| {
            let idx: Vec<usize> = (0..tokens.len()).collect();
            (Just(rc), Just(tokens), Just(idx).prop_shuffle())
        })
        .prop_map(|((r, c), tokens, perm)| {
            let mut b = vec![ExponentMatrix::zeros(r, c); 4];
            for (k, &(is_z, a, col)) in tokens.iter().enumerate() {
                let (plain, conj) = if is_z { (1, 3) } else { (0, 2) };
                bump(&mut b[plain], a, col);
                let col2 = tokens[perm[k]].2;
                bump(&mut b[conj], a, col2);
            }
            make(Group::Symplectic, b)
        })
}

/// Small specs, about half of them balanced by construction.
pub fn spec(group: Group) -> BoxedStrategy<ExponentSpec> {
    match group {
        Group::Orthogonal => prop_oneof![balanced_orthogonal(), random_spec(group, 6)].boxed(),
        Group::Unitary => prop_oneof![balanced_unitary(), random_spec(group, 6)].boxed(),
        Group::Symplectic => prop_oneof![balanced_symplectic(), random_spec(group, 4)].boxed(),
    }
}

/// A Haar-preserving relabelling, drawn at random.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub flags: [bool; 3],
}

pub fn symmetry() -> impl Strategy<Value = Symmetry> {
    (
        Just((0..3).collect::<Vec<usize>>()).prop_shuffle(),
        Just((0..3).collect::<Vec<usize>>()).prop_shuffle(),
        any::<[bool; 3]>(),
    )
        .prop_map(|(row_perm, col_perm, flags)| Symmetry { row_perm, col_perm, flags })
}

fn permute(m: &ExponentMatrix, s: &Symmetry) -> ExponentMatrix {
    let rows: Vec<usize> = s.row_perm.iter().copied().filter(|&i| i < m.rows()).collect();
    let cols: Vec<usize> = s.col_perm.iter().copied().filter(|&j| j < m.cols()).collect();
    m.select(&rows, &cols)
}

/// Applies `s`. Row and column permutations come from left and right
/// multiplication by permutation matrices. The discrete moves are:
///
/// * O: `w -> w^T`.
/// * U: `w -> w^T` and `w -> w*`.
/// * Sp: `w -> w*` swaps `(M, M', N, N')` to `(N, N', M, M')`; left
///   multiplication by the symplectic form sends `(w, z)` to `(z, -w)`,
///   giving `(M', M, N', N)`; transposition of the full matrix sends `w` to
///   `-w^dagger` and `z` to `z^T`, giving `(N^T, M'^T, M^T, N'^T)`. The signs
///   are `+1` on every non-vanishing monomial.
pub fn apply(spec: &ExponentSpec, s: &Symmetry) -> ExponentSpec {
    let mut b: Vec<ExponentMatrix> = spec.blocks().into_iter().map(|m| permute(m, s)).collect();
    match spec.group() {
        Group::Orthogonal => {
            if s.flags[0] {
                b[0] = b[0].transpose();
            }
        }
        Group::Unitary => {
            if s.flags[0] {
                b = b.iter().map(ExponentMatrix::transpose).collect();
            }
            if s.flags[1] {
                b.swap(0, 1);
            }
        }
        Group::Symplectic => {
            if s.flags[0] {
                b = vec![b[2].clone(), b[3].clone(), b[0].clone(), b[1].clone()];
            }
            if s.flags[1] {
                b = vec![b[1].clone(), b[0].clone(), b[3].clone(), b[2].clone()];
            }
            if s.flags[2] {
                b = vec![b[2].transpose(), b[1].transpose(), b[0].transpose(), b[3].transpose()];
            }
        }
    }
    make(spec.group(), b)
}
