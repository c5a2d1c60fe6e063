//! Haar-distributed samples of O(d), U(d) and Sp(2d).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use haar_core::{ExponentSpec, Group};

/// Standard-Gaussian QR with the sign of each diagonal entry of `R` moved
/// into `Q`, which makes the factorization unique and `Q` Haar.
pub fn sample_haar_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(rng.sample::<f64, _>(StandardNormal) * s, rng.sample::<f64, _>(StandardNormal) * s)
}

/// Complex Ginibre QR with the phase of each diagonal entry of `R` moved
/// into `Q`.
pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let (mut q, r) = g.qr().unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        if norm > 0.0 {
            let phase = rjj / norm;
            for i in 0..d {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `(a; b) -> (b*; -a*)`, the antiunitary map pairing the columns of a
/// symplectic unitary.
fn partner(v: &[Complex64]) -> Vec<Complex64> {
    let d = v.len() / 2;
    let mut out = Vec::with_capacity(v.len());
    out.extend(v[d..].iter().map(|x| x.conj()));
    out.extend(v[..d].iter().map(|x| -x.conj()));
    out
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `(z* w; -w* z)` built by symplectic Gram-Schmidt: column `d+mu` is a
/// Gaussian vector orthogonalized against every earlier column and its
/// partner, and column `mu` is its partner.
pub fn sample_haar_symplectic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(2 * d);
    let mut out = DMatrix::from_element(2 * d, 2 * d, Complex64::new(0.0, 0.0));
    for mu in 0..d {
        let mut v: Vec<Complex64> = (0..2 * d).map(|_| complex_gaussian(rng)).collect();
        // two passes keep the residual at rounding level
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        let p = partner(&v);
        for i in 0..2 * d {
            out[(i, d + mu)] = v[i];
            out[(i, mu)] = p[i];
        }
        basis.push(v);
        basis.push(p);
    }
    out
}

/// One Haar draw.
#[derive(Clone, Debug)]
pub enum GroupSample {
    Orthogonal(DMatrix<f64>),
    Unitary(DMatrix<Complex64>),
    /// The full `2d x 2d` matrix `(z* w; -w* z)`.
    Symplectic(DMatrix<Complex64>),
}

impl GroupSample {
    pub fn draw<R: Rng + ?Sized>(group: Group, d: usize, rng: &mut R) -> Self {
        match group {
            Group::Orthogonal => GroupSample::Orthogonal(sample_haar_orthogonal(d, rng)),
            Group::Unitary => GroupSample::Unitary(sample_haar_unitary(d, rng)),
            Group::Symplectic => GroupSample::Symplectic(sample_haar_symplectic(d, rng)),
        }
    }

    pub fn group(&self) -> Group {
        match self {
            GroupSample::Orthogonal(_) => Group::Orthogonal,
            GroupSample::Unitary(_) => Group::Unitary,
            GroupSample::Symplectic(_) => Group::Symplectic,
        }
    }

    /// `d` (the half-dimension for Sp).
    pub fn dimension(&self) -> usize {
        match self {
            GroupSample::Orthogonal(m) => m.nrows(),
            GroupSample::Unitary(m) => m.nrows(),
            GroupSample::Symplectic(m) => m.nrows() / 2,
        }
    }

    /// `w_ij`; for Sp the top-right block.
    pub fn w(&self, i: usize, j: usize) -> Complex64 {
        match self {
            GroupSample::Orthogonal(m) => Complex64::new(m[(i, j)], 0.0),
            GroupSample::Unitary(m) => m[(i, j)],
            GroupSample::Symplectic(m) => m[(i, m.nrows() / 2 + j)],
        }
    }

    /// `z_ij`, the bottom-right block of an Sp sample.
    pub fn z(&self, i: usize, j: usize) -> Complex64 {
        match self {
            GroupSample::Symplectic(m) => {
                let d = m.nrows() / 2;
                m[(d + i, d + j)]
            }
            _ => panic!("z block only exists for symplectic samples"),
        }
    }

    /// Left multiplication by a fixed element of the same group.
    pub fn left_multiplied(&self, g: &GroupSample) -> GroupSample {
        match (g, self) {
            (GroupSample::Orthogonal(a), GroupSample::Orthogonal(b)) => GroupSample::Orthogonal(a * b),
            (GroupSample::Unitary(a), GroupSample::Unitary(b)) => GroupSample::Unitary(a * b),
            (GroupSample::Symplectic(a), GroupSample::Symplectic(b)) => GroupSample::Symplectic(a * b),
            _ => panic!("left multiplication across groups"),
        }
    }

    /// Max-norm distance from the defining relations: `w w^T = 1`,
    /// `w w^dagger = 1`, or both `w^dagger w = 1` and `w^T J w = J`.
    pub fn residual(&self) -> f64 {
        match self {
            GroupSample::Orthogonal(m) => {
                let e = m * m.transpose() - DMatrix::identity(m.nrows(), m.nrows());
                e.amax()
            }
            GroupSample::Unitary(m) => unitary_residual(m),
            GroupSample::Symplectic(m) => {
                let n = m.nrows();
                let d = n / 2;
                let mut j = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
                for i in 0..d {
                    j[(i, d + i)] = Complex64::new(1.0, 0.0);
                    j[(d + i, i)] = Complex64::new(-1.0, 0.0);
                }
                let s = m.transpose() * &j * m - &j;
                let sym = s.iter().map(|x| x.norm()).fold(0.0, f64::max);
                sym.max(unitary_residual(m))
            }
        }
    }

    /// Value of the monomial described by `spec` on this sample.
    pub fn evaluate(&self, spec: &ExponentSpec) -> Complex64 {
        CompiledMonomial::new(spec).evaluate(self)
    }
}

fn unitary_residual(m: &DMatrix<Complex64>) -> f64 {
    let e = m.adjoint() * m - DMatrix::identity(m.ncols(), m.ncols());
    e.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    W,
    Z,
    WConj,
    ZConj,
}

/// A monomial flattened to its non-zero factors.
#[derive(Clone, Debug)]
pub struct CompiledMonomial {
    factors: Vec<(Entry, usize, usize, u32)>,
}

impl CompiledMonomial {
    pub fn new(spec: &ExponentSpec) -> Self {
        let kinds: &[Entry] = match spec.group() {
            Group::Orthogonal => &[Entry::W],
            Group::Unitary => &[Entry::W, Entry::WConj],
            Group::Symplectic => &[Entry::W, Entry::Z, Entry::WConj, Entry::ZConj],
        };
        let mut factors = Vec::new();
        for (block, &kind) in spec.blocks().into_iter().zip(kinds) {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let p = block.get(i, j);
                    if p > 0 {
                        factors.push((kind, i, j, p));
                    }
                }
            }
        }
        Self { factors }
    }

    pub fn evaluate(&self, s: &GroupSample) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &(kind, i, j, p) in &self.factors {
            let x = match kind {
                Entry::W => s.w(i, j),
                Entry::Z => s.z(i, j),
                Entry::WConj => s.w(i, j).conj(),
                Entry::ZConj => s.z(i, j).conj(),
            };
            acc *= x.powu(p);
        }
        acc
    }
}
