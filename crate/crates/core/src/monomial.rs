//! Exponent matrices for monomials over O(d), U(d) and Sp(2d), their
//! canonical forms under Haar-invariance transformations, and the cheap
//! vanishing tests.
//!
//! A spec stores only the occupied block of each exponent matrix. Entry
//! `(i, j)` is the power of matrix element `w_ij`.
//!
//! Symplectic specs hold four blocks addressed by what they exponentiate:
//! `m` for `w`, `mp` for `z`, `n` for `w*` and `np` for `z*`, where the
//! group element is `(z* w; -w* z)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("block {block} is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    ShapeMismatch {
        block: &'static str,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
}

/// Dense non-negative integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ExponentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self, SpecError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(SpecError::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        // a list of empty rows is the empty matrix
        let rows = if cols == 0 { 0 } else { rows.len() };
        Ok(Self { rows, cols, data })
    }

    /// A single column.
    pub fn column_vector(entries: &[u32]) -> Self {
        Self {
            rows: entries.len(),
            cols: usize::from(!entries.is_empty()),
            data: entries.to_vec(),
        }
    }

    /// `E_ij` scaled by `power`, in a `rows x cols` block.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize, power: u32) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, power);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.row(i).iter().map(|&x| u64::from(x)).sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        (0..self.rows).map(|i| u64::from(self.get(i, j))).sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row_sum(i)).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.col_sum(j)).collect()
    }

    pub fn total(&self) -> u64 {
        self.data.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Row `k` of the result is row `order[k]` of `self`; likewise columns.
    pub fn select(&self, row_order: &[usize], col_order: &[usize]) -> Self {
        let mut out = Self::zeros(row_order.len(), col_order.len());
        for (a, &i) in row_order.iter().enumerate() {
            for (b, &j) in col_order.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Zero-pads (or truncates) to `rows x cols`.
    pub fn resized(&self, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows.min(self.rows) {
            for j in 0..cols.min(self.cols) {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Entry-wise sum; shapes must agree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Largest row and column index with a non-zero entry, plus one.
    pub fn occupied_extent(&self) -> (usize, usize) {
        let mut r = 0;
        let mut c = 0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != 0 {
                    r = r.max(i + 1);
                    c = c.max(j + 1);
                }
            }
        }
        (r, c)
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExponentMatrix {
    /// Nested-bracket literal, e.g. `[[2,0],[0,2]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Orthogonal,
    Unitary,
    Symplectic,
}

impl Group {
    pub fn tag(self) -> u8 {
        match self {
            Group::Orthogonal => 0,
            Group::Unitary => 1,
            Group::Symplectic => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::Orthogonal => "orthogonal",
            Group::Unitary => "unitary",
            Group::Symplectic => "symplectic",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalSpec {
    pub m: ExponentMatrix,
}

impl OrthogonalSpec {
    pub fn new(m: ExponentMatrix) -> Self {
        Self { m }
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self, SpecError> {
        Ok(Self::new(ExponentMatrix::from_rows(rows)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitarySpec {
    m: ExponentMatrix,
    n: ExponentMatrix,
}

impl UnitarySpec {
    /// Blocks of different shape are zero-padded to a common shape.
    pub fn new(m: ExponentMatrix, n: ExponentMatrix) -> Self {
        let rows = m.rows().max(n.rows());
        let cols = m.cols().max(n.cols());
        Self {
            m: m.resized(rows, cols),
            n: n.resized(rows, cols),
        }
    }

    pub fn from_rows<R: AsRef<[u32]>, S: AsRef<[u32]>>(m: &[R], n: &[S]) -> Result<Self, SpecError> {
        Ok(Self::new(ExponentMatrix::from_rows(m)?, ExponentMatrix::from_rows(n)?))
    }

    /// Exponents of `w`.
    pub fn m(&self) -> &ExponentMatrix {
        &self.m
    }

    /// Exponents of `w*`.
    pub fn n(&self) -> &ExponentMatrix {
        &self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpec {
    m: ExponentMatrix,
    mp: ExponentMatrix,
    n: ExponentMatrix,
    np: ExponentMatrix,
}

impl SymplecticSpec {
    /// All four blocks must share one shape.
    pub fn new(
        m: ExponentMatrix,
        mp: ExponentMatrix,
        n: ExponentMatrix,
        np: ExponentMatrix,
    ) -> Result<Self, SpecError> {
        let (rows, cols) = m.shape();
        for (block, b) in [("mp", &mp), ("n", &n), ("np", &np)] {
            if b.shape() != (rows, cols) {
                return Err(SpecError::ShapeMismatch {
                    block,
                    rows,
                    cols,
                    found_rows: b.rows(),
                    found_cols: b.cols(),
                });
            }
        }
        Ok(Self { m, mp, n, np })
    }

    /// Pads all four blocks to their common bounding shape.
    pub fn padded(
        m: ExponentMatrix,
        mp: ExponentMatrix,
        n: ExponentMatrix,
        np: ExponentMatrix,
    ) -> Self {
        let rows = [&m, &mp, &n, &np].iter().map(|b| b.rows()).max().unwrap();
        let cols = [&m, &mp, &n, &np].iter().map(|b| b.cols()).max().unwrap();
        Self {
            m: m.resized(rows, cols),
            mp: mp.resized(rows, cols),
            n: n.resized(rows, cols),
            np: np.resized(rows, cols),
        }
    }

    /// Exponents of `w`.
    pub fn m(&self) -> &ExponentMatrix {
        &self.m
    }

    /// Exponents of `z`.
    pub fn mp(&self) -> &ExponentMatrix {
        &self.mp
    }

    /// Exponents of `w*`.
    pub fn n(&self) -> &ExponentMatrix {
        &self.n
    }

    /// Exponents of `z*`.
    pub fn np(&self) -> &ExponentMatrix {
        &self.np
    }

    pub fn shape(&self) -> (usize, usize) {
        self.m.shape()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExponentSpec {
    Orthogonal(OrthogonalSpec),
    Unitary(UnitarySpec),
    Symplectic(SymplecticSpec),
}

impl ExponentSpec {
    pub fn group(&self) -> Group {
        match self {
            ExponentSpec::Orthogonal(_) => Group::Orthogonal,
            ExponentSpec::Unitary(_) => Group::Unitary,
            ExponentSpec::Symplectic(_) => Group::Symplectic,
        }
    }

    /// Blocks in storage order: `[m]`, `[m, n]` or `[m, mp, n, np]`.
    pub fn blocks(&self) -> Vec<&ExponentMatrix> {
        match self {
            ExponentSpec::Orthogonal(s) => vec![&s.m],
            ExponentSpec::Unitary(s) => vec![&s.m, &s.n],
            ExponentSpec::Symplectic(s) => vec![&s.m, &s.mp, &s.n, &s.np],
        }
    }

    fn from_blocks(group: Group, mut b: Vec<ExponentMatrix>) -> Self {
        match group {
            Group::Orthogonal => ExponentSpec::Orthogonal(OrthogonalSpec { m: b.remove(0) }),
            Group::Unitary => {
                let n = b.pop().unwrap();
                let m = b.pop().unwrap();
                ExponentSpec::Unitary(UnitarySpec { m, n })
            }
            Group::Symplectic => {
                let np = b.pop().unwrap();
                let n = b.pop().unwrap();
                let mp = b.pop().unwrap();
                let m = b.pop().unwrap();
                ExponentSpec::Symplectic(SymplecticSpec { m, mp, n, np })
            }
        }
    }

    /// Total degree of the monomial.
    pub fn degree(&self) -> u64 {
        self.blocks().iter().map(|b| b.total()).sum()
    }

    /// Rows and columns spanned by non-zero entries of any block.
    pub fn occupied_extent(&self) -> (usize, usize) {
        self.blocks()
            .iter()
            .map(|b| b.occupied_extent())
            .fold((0, 0), |(r, c), (a, b)| (r.max(a), c.max(b)))
    }

    /// Number of column indices carrying a non-zero entry in any block.
    pub fn occupied_columns(&self) -> usize {
        let blocks = self.blocks();
        let cols = blocks[0].cols();
        (0..cols)
            .filter(|&j| blocks.iter().any(|b| b.col_sum(j) > 0))
            .count()
    }

    pub fn canonical(&self) -> ExponentSpec {
        match self {
            ExponentSpec::Orthogonal(s) => ExponentSpec::Orthogonal(canonicalize_orthogonal(s)),
            ExponentSpec::Unitary(s) => ExponentSpec::Unitary(canonicalize_unitary(s)),
            ExponentSpec::Symplectic(s) => ExponentSpec::Symplectic(canonicalize_symplectic(s)),
        }
    }

    pub fn memo_key(&self) -> MemoKey {
        MemoKey::of(&self.canonical())
    }
}

impl From<OrthogonalSpec> for ExponentSpec {
    fn from(s: OrthogonalSpec) -> Self {
        ExponentSpec::Orthogonal(s)
    }
}

impl From<UnitarySpec> for ExponentSpec {
    fn from(s: UnitarySpec) -> Self {
        ExponentSpec::Unitary(s)
    }
}

impl From<SymplecticSpec> for ExponentSpec {
    fn from(s: SymplecticSpec) -> Self {
        ExponentSpec::Symplectic(s)
    }
}

/// Canonical byte encoding of a canonicalized spec.
///
/// Layout: group tag byte, then LEB128 row count, column count, and the
/// row-major entries of each block in storage order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey(Vec<u8>);

impl MemoKey {
    /// Encodes `spec` as given; callers pass a canonical spec.
    pub fn of(spec: &ExponentSpec) -> Self {
        let blocks = spec.blocks();
        let (rows, cols) = blocks[0].shape();
        let mut out = vec![spec.group().tag()];
        write_varint(&mut out, rows as u64);
        write_varint(&mut out, cols as u64);
        for b in blocks {
            for &x in b.entries() {
                write_varint(&mut out, u64::from(x));
            }
        }
        Self(out)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Removes all-zero columns (jointly over blocks); returns the reduced spec
/// and the number `R` of remaining columns.
pub fn strip_zero_columns(spec: &ExponentSpec) -> (ExponentSpec, usize) {
    let blocks = spec.blocks();
    let (rows, cols) = blocks[0].shape();
    let keep: Vec<usize> = (0..cols)
        .filter(|&j| blocks.iter().any(|b| b.col_sum(j) > 0))
        .collect();
    let all_rows: Vec<usize> = (0..rows).collect();
    let reduced = blocks.iter().map(|b| b.select(&all_rows, &keep)).collect();
    let r = keep.len();
    (ExponentSpec::from_blocks(spec.group(), reduced), r)
}

/// True when a necessary condition for a non-zero integral fails.
pub fn vanishes_trivially(spec: &ExponentSpec) -> bool {
    match spec {
        ExponentSpec::Orthogonal(s) => {
            s.m.row_sums().iter().chain(&s.m.col_sums()).any(|x| x % 2 == 1)
        }
        ExponentSpec::Unitary(s) => !weingarten_balance(s),
        ExponentSpec::Symplectic(s) => !symplectic_balance(s),
    }
}

/// Row and column sums of `m` and `n` agree.
pub(crate) fn weingarten_balance(s: &UnitarySpec) -> bool {
    s.m.row_sums() == s.n.row_sums() && s.m.col_sums() == s.n.col_sums()
}

/// Phase balance under the diagonal torus of Sp(2d), acting from the left
/// and from the right.
pub(crate) fn symplectic_balance(s: &SymplecticSpec) -> bool {
    let (rows, cols) = s.shape();
    let cols_ok = (0..cols)
        .all(|j| s.m.col_sum(j) + s.mp.col_sum(j) == s.n.col_sum(j) + s.np.col_sum(j));
    let rows_ok = (0..rows)
        .all(|i| s.m.row_sum(i) + s.np.row_sum(i) == s.n.row_sum(i) + s.mp.row_sum(i));
    cols_ok && rows_ok
}

/// Beyond this many tied row orders the canonical form falls back to a
/// greedy order, which is value-preserving but may separate orbit members.
const MAX_ROW_ORDERS: usize = 2000;

/// Canonical representative under simultaneous row and column permutations
/// of all blocks. Zero rows and columns are dropped, columns are ordered by
/// descending total degree, so the lightest column comes last.
fn canonical_blocks(blocks: &[ExponentMatrix]) -> Vec<ExponentMatrix> {
    let (rows, cols) = blocks[0].shape();
    let weight = |i: usize, j: usize| blocks.iter().map(|b| b.get(i, j)).sum::<u32>();
    let live_rows: Vec<usize> = (0..rows).filter(|&i| (0..cols).any(|j| weight(i, j) > 0)).collect();
    let live_cols: Vec<usize> = (0..cols).filter(|&j| (0..rows).any(|i| weight(i, j) > 0)).collect();
    let blocks: Vec<ExponentMatrix> = blocks.iter().map(|b| b.select(&live_rows, &live_cols)).collect();
    let (rows, cols) = (live_rows.len(), live_cols.len());
    if rows == 0 {
        return blocks;
    }
    let weight = |i: usize, j: usize| blocks.iter().map(|b| b.get(i, j)).sum::<u32>();

    let cell = |i: usize, j: usize| -> Vec<u32> { blocks.iter().map(|b| b.get(i, j)).collect() };
    let (row_class, _) = refine(rows, cols, &cell);

    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by_key(|&i| row_class[i]);
    let groups: Vec<(usize, usize)> = class_runs(&order, &row_class);
    let orders = count_orders(&groups);

    let col_sum = |j: usize| -> u64 { (0..rows).map(|i| u64::from(weight(i, j))).sum() };
    let arrange = |row_order: &[usize]| -> Vec<ExponentMatrix> {
        let mut col_order: Vec<usize> = (0..cols).collect();
        let content = |j: usize| -> Vec<u32> { row_order.iter().flat_map(|&i| cell(i, j)).collect() };
        col_order.sort_by(|&a, &b| {
            col_sum(b)
                .cmp(&col_sum(a))
                .then_with(|| content(b).cmp(&content(a)))
        });
        blocks.iter().map(|b| b.select(row_order, &col_order)).collect()
    };

    match orders {
        Some(n) if n <= MAX_ROW_ORDERS => {
            let mut best: Option<Vec<ExponentMatrix>> = None;
            let mut current = order.clone();
            loop {
                let candidate = arrange(&current);
                if best.as_ref().is_none_or(|b| encoding_cmp(&candidate, b).is_lt()) {
                    best = Some(candidate);
                }
                if !next_grouped_permutation(&mut current, &groups) {
                    break;
                }
            }
            best.unwrap()
        }
        _ => {
            // greedy: heavier rows first, then by content
            let row_key = |i: usize| -> (u64, Vec<u32>) {
                let s = (0..cols).map(|j| u64::from(weight(i, j))).sum();
                let mut c: Vec<Vec<u32>> = (0..cols).map(|j| cell(i, j)).collect();
                c.sort_unstable_by(|a, b| b.cmp(a));
                (s, c.concat())
            };
            order.sort_by(|&a, &b| {
                row_class[a]
                    .cmp(&row_class[b])
                    .then_with(|| row_key(b).cmp(&row_key(a)))
            });
            arrange(&order)
        }
    }
}

/// A line's current class with the sorted multiset of (neighbour class, cell) pairs.
type Signature = (usize, Vec<(usize, Vec<u32>)>);

/// Colour refinement on the bipartite row/column incidence structure.
/// Class ranks come from sorted signatures, so they do not depend on the
/// input labelling.
fn refine(rows: usize, cols: usize, cell: &dyn Fn(usize, usize) -> Vec<u32>) -> (Vec<usize>, Vec<usize>) {
    let mut row_class = vec![0usize; rows];
    let mut col_class = vec![0usize; cols];
    let mut classes = (1, 1);
    loop {
        let row_sig: Vec<Signature> = (0..rows)
            .map(|i| {
                let mut v: Vec<(usize, Vec<u32>)> = (0..cols).map(|j| (col_class[j], cell(i, j))).collect();
                v.sort_unstable();
                (row_class[i], v)
            })
            .collect();
        let col_sig: Vec<Signature> = (0..cols)
            .map(|j| {
                let mut v: Vec<(usize, Vec<u32>)> = (0..rows).map(|i| (row_class[i], cell(i, j))).collect();
                v.sort_unstable();
                (col_class[j], v)
            })
            .collect();
        let (nr, kr) = rank(&row_sig);
        let (nc, kc) = rank(&col_sig);
        row_class = nr;
        col_class = nc;
        if (kr, kc) == classes {
            return (row_class, col_class);
        }
        classes = (kr, kc);
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> (Vec<usize>, usize) {
    let mut uniq: Vec<T> = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    let ranks = sigs
        .iter()
        .map(|s| uniq.binary_search(s).unwrap())
        .collect();
    (ranks, uniq.len())
}

/// Maximal runs `[start, end)` of equal class in `order`.
fn class_runs(order: &[usize], class: &[usize]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = 0;
    for k in 1..=order.len() {
        if k == order.len() || class[order[k]] != class[order[start]] {
            runs.push((start, k));
            start = k;
        }
    }
    runs
}

fn count_orders(groups: &[(usize, usize)]) -> Option<usize> {
    let mut total: usize = 1;
    for &(a, b) in groups {
        for k in 2..=(b - a) {
            total = total.checked_mul(k)?;
            if total > MAX_ROW_ORDERS {
                return None;
            }
        }
    }
    Some(total)
}

/// Advances to the next arrangement permuting only within each run; the
/// runs start sorted, so this visits every arrangement once.
fn next_grouped_permutation(order: &mut [usize], groups: &[(usize, usize)]) -> bool {
    for &(a, b) in groups.iter().rev() {
        if next_permutation(&mut order[a..b]) {
            return true;
        }
        // wrapped around to sorted; carry into the previous run
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Ordering used to pick one representative: fewer columns, then fewer
/// rows, then lexicographic entries block by block.
fn encoding_cmp(a: &[ExponentMatrix], b: &[ExponentMatrix]) -> std::cmp::Ordering {
    a[0].cols()
        .cmp(&b[0].cols())
        .then_with(|| a[0].rows().cmp(&b[0].rows()))
        .then_with(|| {
            a.iter()
                .map(|m| m.entries())
                .cmp(b.iter().map(|m| m.entries()))
        })
}

fn minimal_image(images: Vec<Vec<ExponentMatrix>>) -> Vec<ExponentMatrix> {
    images
        .into_iter()
        .map(|b| canonical_blocks(&b))
        .min_by(|a, b| encoding_cmp(a, b))
        .unwrap()
}

/// Canonical form over column and row permutations and transposition.
pub fn canonicalize_orthogonal(spec: &OrthogonalSpec) -> OrthogonalSpec {
    let m = &spec.m;
    let mut best = minimal_image(vec![vec![m.clone()], vec![m.transpose()]]);
    OrthogonalSpec { m: best.remove(0) }
}

/// Canonical form over simultaneous permutations, transposition, and
/// conjugation `(M, N) -> (N, M)`; conjugate transposition is their
/// composite.
pub fn canonicalize_unitary(spec: &UnitarySpec) -> UnitarySpec {
    let (m, n) = (&spec.m, &spec.n);
    let mut best = minimal_image(vec![
        vec![m.clone(), n.clone()],
        vec![n.clone(), m.clone()],
        vec![m.transpose(), n.transpose()],
        vec![n.transpose(), m.transpose()],
    ]);
    let n = best.pop().unwrap();
    let m = best.pop().unwrap();
    UnitarySpec { m, n }
}

type SpBlocks = [ExponentMatrix; 4];

fn sp_swap_a(b: &SpBlocks) -> SpBlocks {
    let [m, mp, n, np] = b.clone();
    [np, n, mp, m]
}

fn sp_swap_b(b: &SpBlocks) -> SpBlocks {
    let [m, mp, n, np] = b.clone();
    [mp, m, np, n]
}

fn sp_ctrans(b: &SpBlocks) -> SpBlocks {
    let [m, mp, n, np] = b;
    [m.transpose(), np.transpose(), n.transpose(), mp.transpose()]
}

/// All images of `b` under the group generated by the two block swaps and
/// conjugate transposition, signs dropped.
pub(crate) fn symplectic_discrete_orbit(b: &SymplecticSpec) -> Vec<SymplecticSpec> {
    let start: SpBlocks = [b.m.clone(), b.mp.clone(), b.n.clone(), b.np.clone()];
    let mut seen: Vec<SpBlocks> = vec![start];
    let mut k = 0;
    while k < seen.len() {
        let cur = seen[k].clone();
        for img in [sp_swap_a(&cur), sp_swap_b(&cur), sp_ctrans(&cur)] {
            if !seen.contains(&img) {
                seen.push(img);
            }
        }
        k += 1;
    }
    seen.into_iter()
        .map(|[m, mp, n, np]| SymplecticSpec { m, mp, n, np })
        .collect()
}

/// Canonical form over synchronous permutations of the four blocks, the two
/// block swaps and sign-free conjugate transposition.
///
/// The dropped signs are `+1` whenever the phase-balance conditions hold;
/// specs violating them integrate to zero, so the representative is only
/// meaningful for balanced input.
pub fn canonicalize_symplectic(spec: &SymplecticSpec) -> SymplecticSpec {
    let images = symplectic_discrete_orbit(spec)
        .into_iter()
        .map(|s| vec![s.m, s.mp, s.n, s.np])
        .collect();
    let mut best = minimal_image(images);
    let np = best.pop().unwrap();
    let n = best.pop().unwrap();
    let mp = best.pop().unwrap();
    let m = best.pop().unwrap();
    SymplecticSpec { m, mp, n, np }
}
