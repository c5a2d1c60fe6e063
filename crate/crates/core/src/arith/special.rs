//! Factorials, binomials, multinomials and Pochhammer symbols over affine
//! bases in `d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::PolyD;
use super::rational_function::RationalFunction;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / prod(parts_j!)`; zero when the parts do not sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> BigInt {
    if parts.iter().sum::<u64>() != n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut filled = 0u64;
    for &p in parts {
        filled += p;
        acc *= binomial(filled, p as i64);
    }
    acc
}

/// The affine expression `slope * d + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: BigRational,
    pub offset: BigRational,
}

impl Affine {
    pub fn new(slope: BigRational, offset: BigRational) -> Self {
        Self { slope, offset }
    }

    /// `d`.
    pub fn d() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// `(num/den) * d + (onum/oden)`.
    pub fn ratio(num: i64, den: i64, onum: i64, oden: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::new(onum.into(), oden.into()),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(BigRational::zero(), c)
    }

    pub fn shifted(&self, by: &BigRational) -> Self {
        Self::new(self.slope.clone(), &self.offset + by)
    }

    pub fn to_poly(&self) -> PolyD {
        PolyD::linear(self.slope.clone(), self.offset.clone())
    }
}

/// Rising factorial `base (base+1) ... (base+count-1)`; 1 for `count = 0`.
pub fn pochhammer(base: &Affine, count: u64) -> PolyD {
    let mut acc = PolyD::one();
    let mut factor = base.clone();
    for _ in 0..count {
        acc = &acc * &factor.to_poly();
        factor.offset += BigRational::one();
    }
    acc
}

/// Rising factorial of a rational constant.
pub fn rising(base: &BigRational, count: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = base.clone();
    for _ in 0..count {
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

/// `(-1)^(a-b) (z1)_b (z1)_(a-b) / (z1 - z2)_a`.
///
/// Panics if `b > a` or if the denominator is identically zero, which needs
/// a constant `z1`.
pub fn coefficient_b(a: u64, b: u64, z1: &Affine, z2: &BigRational) -> RationalFunction {
    assert!(b <= a, "coefficient_b requires b <= a (got a={a}, b={b})");
    let mut num = &pochhammer(z1, b) * &pochhammer(z1, a - b);
    if (a - b) % 2 == 1 {
        num = -num;
    }
    let den = pochhammer(&z1.shifted(&-z2), a);
    RationalFunction::new(num, den).expect("coefficient_b denominator vanishes identically")
}
