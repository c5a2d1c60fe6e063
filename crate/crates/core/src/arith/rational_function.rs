//! Reduced ratios of polynomials in `d`.
//!
//! Every value is kept in a unique normal form: numerator and denominator
//! are coprime polynomials with integer coefficients, the combined content
//! of their coefficients is 1, and the denominator has a positive leading
//! coefficient. Zero is `0/1`. Structural equality is therefore value
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{ratio_to_f64, PolyD};
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: PolyD,
    den: PolyD,
}

impl RationalFunction {
    pub fn new(num: PolyD, den: PolyD) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: PolyD::zero(),
            den: PolyD::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyD::one())
    }

    pub fn from_poly(p: PolyD) -> Self {
        Self::normalize_coprime(p, PolyD::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(PolyD::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(PolyD::from_int(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::constant(BigRational::from_integer(c))
    }

    /// `1 / p`.
    pub fn reciprocal_of(p: PolyD) -> Result<Self, ArithError> {
        Self::new(PolyD::one(), p)
    }

    pub fn numerator(&self) -> &PolyD {
        &self.num
    }

    pub fn denominator(&self) -> &PolyD {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    /// True when the value is a polynomial (denominator is a constant).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::normalize_coprime(self.num.scale(factor), self.den.clone())
    }

    pub fn scale_int(&self, factor: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(factor.clone()))
    }

    /// Exact value at an integer dimension.
    pub fn evaluate_at(&self, d: i64) -> Result<BigRational, ArithError> {
        let at = BigRational::from_integer(BigInt::from(d));
        let den = self.den.eval(&at);
        if den.is_zero() {
            return Err(ArithError::Pole { d });
        }
        Ok(self.num.eval(&at) / den)
    }

    pub fn evaluate_f64(&self, d: f64) -> f64 {
        self.num.eval_f64(d) / self.den.eval_f64(d)
    }

    /// Checks the normal-form invariants.
    pub fn is_reduced(&self) -> bool {
        if self.den.is_zero() || !self.num.has_integer_coeffs() || !self.den.has_integer_coeffs()
        {
            return false;
        }
        if self.num.is_zero() {
            return self.den == PolyD::one();
        }
        if !self.den.leading().is_some_and(|c| c.is_positive()) {
            return false;
        }
        let content = self.num.numerator_gcd().gcd(&self.den.numerator_gcd());
        content.is_one() && PolyD::gcd(&self.num, &self.den) == PolyD::one()
    }

    fn reduce(num: PolyD, den: PolyD) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if num.is_constant() || den.is_constant() {
            return Self::normalize_coprime(num, den);
        }
        let g = PolyD::gcd(&num, &den);
        if g.is_constant() {
            Self::normalize_coprime(num, den)
        } else {
            let (n, _) = num.div_rem(&g);
            let (m, _) = den.div_rem(&g);
            Self::normalize_coprime(n, m)
        }
    }

    /// Normalizes content and sign only; callers guarantee coprimality.
    fn normalize_coprime(num: PolyD, den: PolyD) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lcm = num.denominator_lcm().lcm(&den.denominator_lcm());
        let (mut num, mut den) = if lcm.is_one() {
            (num, den)
        } else {
            let l = BigRational::from_integer(lcm);
            (num.scale(&l), den.scale(&l))
        };
        let mut content = num.numerator_gcd().gcd(&den.numerator_gcd());
        if den.leading().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        if !content.is_one() {
            let c = BigRational::from_integer(content).recip();
            num = num.scale(&c);
            den = den.scale(&c);
        }
        Self { num, den }
    }

    /// Expanded rendering, e.g. `(2)/(d^2 + d)` or `1/d`.
    ///
    /// Both sides are parenthesized unless each is a bare constant or a
    /// unit-coefficient power of `d`. A constant denominator of 1 is omitted.
    pub fn to_expanded_string(&self) -> String {
        if self.den == PolyD::one() {
            return self.num.to_string();
        }
        let atomic = |p: &PolyD| {
            p.term_count() == 1 && (p.is_constant() || p.leading().is_some_and(One::is_one))
        };
        if atomic(&self.num) && atomic(&self.den) {
            format!("{}/{}", self.num, self.den)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }

    /// Rendering with numerator and denominator split into linear factors
    /// over the integers where possible, e.g. `3/(d*(d + 2))`.
    pub fn to_factored_string(&self) -> String {
        let num = FactoredPoly::of(&self.num);
        let den = FactoredPoly::of(&self.den);
        if self.den == PolyD::one() {
            return num.render();
        }
        let n = num.render();
        let dn = den.render();
        if den.is_atomic() {
            format!("{n}/{dn}")
        } else {
            format!("{n}/({dn})")
        }
    }

    /// Parses the expanded rendering produced by [`to_expanded_string`].
    ///
    /// [`to_expanded_string`]: RationalFunction::to_expanded_string
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expanded_string())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = PolyD::gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::reduce(num, &self.den * &rhs.den);
        }
        let (a_cof, _) = self.den.div_rem(&g);
        let (b_cof, _) = rhs.den.div_rem(&g);
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        RationalFunction::reduce(num, &self.den * &b_cof)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // both operands are reduced, so cross-cancelling leaves a coprime pair
        let (an, bd) = cancel(&self.num, &rhs.den);
        let (bn, ad) = cancel(&rhs.num, &self.den);
        RationalFunction::normalize_coprime(&an * &bn, &ad * &bd)
    }
}

fn cancel(a: &PolyD, b: &PolyD) -> (PolyD, PolyD) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = PolyD::gcd(a, b);
    if g.is_constant() {
        (a.clone(), b.clone())
    } else {
        (a.div_rem(&g).0, b.div_rem(&g).0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl FromStr for RationalFunction {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ArithError::Parse("empty input".into()));
        }
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in compact.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(ArithError::Parse(format!("more than one '/' in {s:?}")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        match split {
            None => Ok(Self::from_poly(parse_side(&compact)?)),
            Some(i) => Self::new(parse_side(&compact[..i])?, parse_side(&compact[i + 1..])?),
        }
    }
}

fn parse_side(s: &str) -> Result<PolyD, ArithError> {
    let inner = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(t) if balanced(t) => t,
        _ => s,
    };
    parse_poly(inner)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Parses whitespace-free `PolyD` renderings such as `-2*d^2+d-(1/2)`.
fn parse_poly(s: &str) -> Result<PolyD, ArithError> {
    let err = |msg: &str| ArithError::Parse(format!("{msg} in polynomial {s:?}"));
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' if !first => pos += 1,
            b'-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err("expected '+' or '-'")),
        }
        first = false;
        let mut coeff: Option<BigRational> = None;
        if pos < bytes.len() && bytes[pos] == b'(' {
            let close = s[pos..].find(')').ok_or_else(|| err("unclosed '('"))? + pos;
            let (n, d) = s[pos + 1..close]
                .split_once('/')
                .ok_or_else(|| err("expected a fraction"))?;
            let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            coeff = Some(BigRational::new(n, d));
            pos = close + 1;
        } else {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos > start {
                let n: BigInt = s[start..pos].parse().map_err(|_| err("bad integer"))?;
                coeff = Some(BigRational::from_integer(n));
            }
        }
        let mut power = 0usize;
        if pos < bytes.len() && bytes[pos] == b'*' {
            if coeff.is_none() {
                return Err(err("dangling '*'"));
            }
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'd' {
                return Err(err("expected 'd' after '*'"));
            }
        }
        if pos < bytes.len() && bytes[pos] == b'd' {
            pos += 1;
            power = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                power = s[start..pos].parse().map_err(|_| err("bad exponent"))?;
            }
        } else if coeff.is_none() {
            return Err(err("expected a term"));
        }
        let mut c = coeff.unwrap_or_else(BigRational::one);
        if negative {
            c = -c;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        coeffs[power] += c;
    }
    if first {
        return Err(err("empty"));
    }
    Ok(PolyD::from_coeffs(coeffs))
}

/// A polynomial split as `content * prod (linear factor)^mult * rest`.
struct FactoredPoly {
    content: BigInt,
    linear: Vec<(PolyD, usize)>,
    rest: PolyD,
}

/// Above this size the rational-root search is skipped.
const MAX_ROOT_SEARCH: u64 = 1 << 40;

impl FactoredPoly {
    fn of(p: &PolyD) -> Self {
        let zero_or_const = p.is_constant();
        let content_sign = if p.leading().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let content = if zero_or_const {
            p.coeff(0).to_integer()
        } else {
            p.numerator_gcd() * &content_sign
        };
        if zero_or_const {
            return Self {
                content,
                linear: Vec::new(),
                rest: PolyD::one(),
            };
        }
        let mut rest = p.scale(&BigRational::from_integer(content.clone()).recip());
        let mut linear: Vec<(PolyD, usize)> = Vec::new();
        let push = |f: PolyD, linear: &mut Vec<(PolyD, usize)>| {
            if let Some(entry) = linear.iter_mut().find(|(g, _)| *g == f) {
                entry.1 += 1;
            } else {
                linear.push((f, 1));
            }
        };
        // factors of d first
        while !rest.is_constant() && rest.coeff(0).is_zero() {
            rest = rest.div_rem(&PolyD::symbol()).0;
            push(PolyD::symbol(), &mut linear);
        }
        'search: while rest.degree().unwrap_or(0) >= 1 {
            let lc = rest.leading().unwrap().to_integer().abs();
            let c0 = rest.coeff(0).to_integer().abs();
            let (Some(lc), Some(c0)) = (lc.to_u64(), c0.to_u64()) else {
                break;
            };
            if lc > MAX_ROOT_SEARCH || c0 > MAX_ROOT_SEARCH {
                break;
            }
            for v in divisors(lc) {
                for u in divisors(c0) {
                    if u.gcd(&v) != 1 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let root = BigRational::new(
                            BigInt::from(u) * BigInt::from(sign),
                            BigInt::from(v),
                        );
                        if rest.eval(&root).is_zero() {
                            // v*d - sign*u, primitive with positive leading coefficient
                            let factor = PolyD::linear(
                                BigRational::from_integer(BigInt::from(v)),
                                -BigRational::from_integer(BigInt::from(u) * BigInt::from(sign)),
                            );
                            rest = rest.div_rem(&factor).0;
                            push(factor, &mut linear);
                            continue 'search;
                        }
                    }
                }
            }
            break;
        }
        linear.sort_by(|(a, _), (b, _)| linear_order(a, b));
        Self {
            content,
            linear,
            rest,
        }
    }

    fn pieces(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (f, mult) in &self.linear {
            let base = if *f == PolyD::symbol() {
                "d".to_string()
            } else {
                format!("({f})")
            };
            out.push(if *mult > 1 {
                format!("{base}^{mult}")
            } else {
                base
            });
        }
        if !self.rest.is_constant() {
            out.push(format!("({})", self.rest));
        }
        out
    }

    fn is_atomic(&self) -> bool {
        let pieces = self.pieces();
        if pieces.is_empty() {
            return true;
        }
        self.content.is_one() && pieces.len() == 1 && !pieces[0].ends_with(|c: char| c.is_ascii_digit())
    }

    fn render(&self) -> String {
        let pieces = self.pieces();
        if pieces.is_empty() {
            return self.content.to_string();
        }
        let body = pieces.join("*");
        if self.content.is_one() {
            body
        } else if self.content == -BigInt::one() {
            format!("-{body}")
        } else {
            format!("{}*{body}", self.content)
        }
    }
}

/// Orders linear factors `a*d + b` by `b/a`, so `(d - 1)*d*(d + 2)`.
fn linear_order(a: &PolyD, b: &PolyD) -> std::cmp::Ordering {
    let root = |p: &PolyD| p.coeff(0) / p.coeff(1);
    root(a).cmp(&root(b))
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Convenience used by tests and report printing.
pub fn to_f64(c: &BigRational) -> f64 {
    ratio_to_f64(c)
}
